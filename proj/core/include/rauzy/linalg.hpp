#pragma once

// 3x3 matrix arithmetic for the Rauzy semigroup: exact/float/log-scaled
// representations, closed-form singular values, Cartan projection and frames,
// and the chordal metric on projective space.
//
// All logarithms are natural logarithms.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace rauzy {

using Vec3 = std::array<double, 3>;
using Entries = std::array<double, 9>;  // row-major
using ExactInt = unsigned __int128;

enum class Repr { Exact, Float, LogScaled };

std::string to_string(Repr r);

// Element of SL_3(R). Products of semigroup generators stay in exact integer
// form until an entry would overflow 128 bits (or a caller-requested length
// limit is reached); after that the matrix is stored as a mantissa with a
// separate additive log-scale so arbitrarily long products stay finite.
//
// Every Mat3 also carries its second exterior power (the cofactor matrix,
// i.e. the action on wedge^2 R^3 in the basis e2^e3, e3^e1, e1^e2) updated
// multiplicatively. This keeps log(s1*s2) accurate for long products where
// recomputing 2x2 minors from the entries would cancel catastrophically.
class Mat3 {
 public:
  Mat3();  // identity, exact

  static Mat3 identity() { return Mat3(); }

  // Nonnegative integer matrix with determinant 1 (checked).
  static Mat3 exact(const std::array<std::uint64_t, 9>& rows);

  // Float matrix; |det - 1| must be <= 1e-9 (relative to the entry scale).
  static Mat3 from_doubles(const Entries& rows);

  // Rescales an invertible matrix by |det|^{-1/3} so that it lies in SL_3(R)
  // (a negative determinant is fixed by negating the last row).
  static Mat3 normalized(const Entries& rows);

  Repr repr() const noexcept { return repr_; }
  bool promoted() const noexcept { return promoted_; }

  // True value = mantissa * exp(log_scale).
  const Entries& mantissa() const noexcept { return m_; }
  double log_scale() const noexcept { return log_scale_; }

  const Entries& wedge_mantissa() const noexcept { return w_; }
  double wedge_log_scale() const noexcept { return wedge_log_scale_; }

  // Exact entry, only in Exact repr.
  std::optional<ExactInt> exact_at(int row, int col) const;

  // Entry as a double (may overflow to inf for log-scaled matrices).
  double operator()(int row, int col) const;

  // Column j as a double vector scaled by exp(-log_scale()).
  Vec3 scaled_column(int col) const;

  Mat3 transpose() const;

  // Same matrix in LogScaled repr with the promotion flag set.
  Mat3 promote() const;

  // Determinant of the true matrix (computed from the mantissa).
  double det() const;

  friend Mat3 multiply(const Mat3& a, const Mat3& b);
  friend bool operator==(const Mat3& a, const Mat3& b);

  std::string str() const;

 private:
  void renormalize();

  Repr repr_ = Repr::Exact;
  bool promoted_ = false;
  std::array<ExactInt, 9> q_{};
  Entries m_{};
  double log_scale_ = 0.0;
  Entries w_{};
  double wedge_log_scale_ = 0.0;
};

Mat3 multiply(const Mat3& a, const Mat3& b);
inline Mat3 operator*(const Mat3& a, const Mat3& b) { return multiply(a, b); }

// The Rauzy generators A_1, A_2, A_3 and their transposes; i in {1,2,3}.
Mat3 generator(int i);
Mat3 generator_transpose(int i);

struct SingularValues {
  double s1 = 1.0, s2 = 1.0, s3 = 1.0;
};

// (log s1, log s2, log s3), nonincreasing, summing to zero.
struct CartanVec {
  double k1 = 0.0, k2 = 0.0, k3 = 0.0;

  double operator[](int i) const { return i == 0 ? k1 : (i == 1 ? k2 : k3); }
  double norm() const;
  CartanVec operator+(const CartanVec& o) const { return {k1 + o.k1, k2 + o.k2, k3 + o.k3}; }
  CartanVec operator-(const CartanVec& o) const { return {k1 - o.k1, k2 - o.k2, k3 - o.k3}; }
  CartanVec operator*(double a) const { return {a * k1, a * k2, a * k3}; }
};

// Largest eigenvalue of the symmetric matrix
//   [[a00, a01, a02], [a01, a11, a12], [a02, a12, a22]]
// via the trigonometric solution of the characteristic cubic.
double top_symmetric_eigenvalue(double a00, double a01, double a02, double a11,
                                double a12, double a22);

// Largest singular value of a 3x3 row-major matrix (closed form).
double top_singular_value(const Entries& m);

// Cartan projection from a mantissa/wedge pair; the hot enumeration loops call
// this directly with integer-valued doubles.
CartanVec cartan_from_parts(const Entries& m, double log_scale, const Entries& w,
                            double wedge_log_scale);

CartanVec cartan(const Mat3& g);
SingularValues singular_values(const Mat3& g);

// Cofactor matrix, which is the matrix of wedge^2 g in the basis
// (e2^e3, e3^e1, e1^e2).
Entries cofactor(const Entries& m);

// Unit vector in R^2 or R^3 representing a line; the first nonzero
// coordinate is positive.
struct ProjPoint {
  Vec3 v{1.0, 0.0, 0.0};
  int dim = 3;

  static ProjPoint from(const Vec3& x, int dim = 3);
  static ProjPoint from2(double x, double y) { return from({x, y, 0.0}, 2); }
  static ProjPoint basis(int i, int dim = 3);
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
};

// d(Rv, Rw) = |v ^ w| / (|v| |w|), the chordal metric; in [0, 1].
double proj_distance(const ProjPoint& p, const ProjPoint& q);

// Distance from a point to the projective hyperplane with the given unit
// normal: |<v, n>|.
double hyperplane_distance(const ProjPoint& p, const ProjPoint& normal);

Vec3 apply(const Mat3& g, const Vec3& v);  // g v with the log-scale dropped

struct CartanFrames {
  ProjPoint attracting;          // V_g^+: top left-singular vector
  ProjPoint repelling_normal;    // unit normal of H_g^-: top right-singular vector
  ProjPoint wedge_attracting;    // V^+ of wedge^2 g
  ProjPoint wedge_repelling_normal;
};

struct FrameOptions {
  double relative_gap = 1e-8;
};

// Throws GapError naming "s1>s2" or "s2>s3" when a gap is below tolerance.
CartanFrames cartan_frames(const Mat3& g, FrameOptions opts = {});

// Top left/right singular vectors of an arbitrary mantissa; exposed for the
// wedge representation and for tests.
struct TopSingularPair {
  Vec3 left;
  Vec3 right;
};
TopSingularPair top_singular_vectors(const Entries& m);

}  // namespace rauzy
