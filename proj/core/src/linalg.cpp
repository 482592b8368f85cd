#include "rauzy/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rauzy/error.hpp"

namespace rauzy {

namespace {

using Signed128 = __int128;

constexpr ExactInt kSmallBound = ExactInt{1} << 62;

double to_double(ExactInt x) { return static_cast<double>(x); }

Entries mul(const Entries& a, const Entries& b) {
  Entries r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[i * 3 + j] = a[i * 3] * b[j] + a[i * 3 + 1] * b[3 + j] + a[i * 3 + 2] * b[6 + j];
  return r;
}

double max_abs(const Entries& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

void check_finite(const Entries& a) {
  for (double x : a)
    if (!std::isfinite(x)) throw NumericError("matrix has non-finite entries");
}

double det3(const Entries& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

// Rescales `a` so its largest entry has magnitude 1, accumulating the log.
void rescale(Entries& a, double& log_scale) {
  const double s = max_abs(a);
  if (s == 0.0 || !std::isfinite(s)) throw NumericError("cannot rescale a zero or non-finite matrix");
  // Scale by a power of two so the mantissa picks up no rounding.
  int e = 0;
  (void)std::frexp(s, &e);
  if (e == 0) return;
  for (double& x : a) x = std::ldexp(x, -e);
  log_scale += e * std::numbers::ln2;
}

bool mul_add_overflows(ExactInt a, ExactInt b, ExactInt& acc) {
  ExactInt p;
  if (__builtin_mul_overflow(a, b, &p)) return true;
  return __builtin_add_overflow(acc, p, &acc);
}

bool exact_product(const std::array<ExactInt, 9>& a, const std::array<ExactInt, 9>& b,
                   std::array<ExactInt, 9>& out) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ExactInt acc = 0;
      for (int k = 0; k < 3; ++k)
        if (mul_add_overflows(a[i * 3 + k], b[k * 3 + j], acc)) return false;
      out[i * 3 + j] = acc;
    }
  return true;
}

// Exact cofactors when every entry is below 2^62.
std::optional<Entries> exact_cofactor(const std::array<ExactInt, 9>& q) {
  for (ExactInt x : q)
    if (x >= kSmallBound) return std::nullopt;
  auto at = [&](int r, int c) { return static_cast<Signed128>(q[r * 3 + c]); };
  Entries out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      const int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      // Cyclic index order absorbs the (-1)^{i+j} sign.
      const Signed128 v = at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
      out[i * 3 + j] = static_cast<double>(v);
    }
  return out;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 normalized_vec(const Vec3& a) {
  const double n = norm(a);
  return {a[0] / n, a[1] / n, a[2] / n};
}

// Null vector of the rank-2 symmetric matrix S - lambda I.
Vec3 top_eigenvector(const Entries& s, double lambda) {
  const Vec3 r0{s[0] - lambda, s[1], s[2]};
  const Vec3 r1{s[3], s[4] - lambda, s[5]};
  const Vec3 r2{s[6], s[7], s[8] - lambda};
  const std::array<Vec3, 3> c{cross(r0, r1), cross(r0, r2), cross(r1, r2)};
  std::size_t best = 0;
  double best_norm = -1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double n = norm(c[i]);
    if (n > best_norm) {
      best_norm = n;
      best = i;
    }
  }
  if (best_norm <= 0.0) return {1.0, 0.0, 0.0};
  return normalized_vec(c[best]);
}

Entries gram(const Entries& m) {
  Entries b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      b[i * 3 + j] = m[i] * m[j] + m[3 + i] * m[3 + j] + m[6 + i] * m[6 + j];
  return b;
}

}  // namespace

std::string to_string(Repr r) {
  switch (r) {
    case Repr::Exact: return "exact";
    case Repr::Float: return "float";
    case Repr::LogScaled: return "log-scaled";
  }
  return "?";
}

Mat3::Mat3() {
  for (int i = 0; i < 3; ++i) {
    q_[i * 4] = 1;
    m_[i * 4] = 1.0;
    w_[i * 4] = 1.0;
  }
}

Mat3 Mat3::exact(const std::array<std::uint64_t, 9>& rows) {
  Mat3 g;
  for (std::size_t i = 0; i < 9; ++i) {
    g.q_[i] = rows[i];
    g.m_[i] = static_cast<double>(rows[i]);
  }
  for (std::uint64_t x : rows)
    if (x >= (std::uint64_t{1} << 40)) throw InputError("exact matrix entries must be below 2^40");
  g.w_ = *exact_cofactor(g.q_);
  Signed128 det = 0;
  for (int j = 0; j < 3; ++j) {
    const int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
    const auto a = [&](int r, int c) { return static_cast<Signed128>(rows[r * 3 + c]); };
    det += a(0, j) * (a(1, c0) * a(2, c1) - a(1, c1) * a(2, c0));
  }
  if (det != 1) throw InputError("exact matrix must have determinant 1");
  return g;
}

Mat3 Mat3::from_doubles(const Entries& rows) {
  check_finite(rows);
  const double scale = std::max(1.0, max_abs(rows));
  const double d = det3(rows);
  if (std::abs(d - 1.0) > 1e-9 * scale * scale * scale)
    throw InputError("float matrix must have determinant 1 (got " + std::to_string(d) + ")");
  Mat3 g;
  g.repr_ = Repr::Float;
  g.q_ = {};
  g.m_ = rows;
  g.w_ = cofactor(rows);
  return g;
}

Mat3 Mat3::normalized(const Entries& rows) {
  check_finite(rows);
  Entries a = rows;
  double d = det3(a);
  if (d == 0.0) throw NumericError("cannot normalize a singular matrix");
  if (d < 0.0) {
    for (int j = 0; j < 3; ++j) a[6 + j] = -a[6 + j];
    d = -d;
  }
  const double c = std::cbrt(1.0 / d);
  for (double& x : a) x *= c;
  Mat3 g;
  g.repr_ = Repr::Float;
  g.q_ = {};
  g.m_ = a;
  g.w_ = cofactor(a);
  return g;
}

std::optional<ExactInt> Mat3::exact_at(int row, int col) const {
  if (repr_ != Repr::Exact) return std::nullopt;
  return q_[static_cast<std::size_t>(row * 3 + col)];
}

double Mat3::operator()(int row, int col) const {
  const double v = m_[static_cast<std::size_t>(row * 3 + col)];
  return log_scale_ == 0.0 ? v : v * std::exp(log_scale_);
}

Vec3 Mat3::scaled_column(int col) const {
  return {m_[static_cast<std::size_t>(col)], m_[static_cast<std::size_t>(3 + col)],
          m_[static_cast<std::size_t>(6 + col)]};
}

Mat3 Mat3::transpose() const {
  Mat3 t = *this;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      t.q_[i * 3 + j] = q_[j * 3 + i];
      t.m_[i * 3 + j] = m_[j * 3 + i];
      t.w_[i * 3 + j] = w_[j * 3 + i];
    }
  return t;
}

Mat3 Mat3::promote() const {
  Mat3 r = *this;
  r.q_ = {};
  r.repr_ = Repr::LogScaled;
  r.promoted_ = true;
  r.renormalize();
  return r;
}

double Mat3::det() const { return det3(m_) * std::exp(3.0 * log_scale_); }

void Mat3::renormalize() {
  rescale(m_, log_scale_);
  rescale(w_, wedge_log_scale_);
}

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 r;
  if (a.repr_ == Repr::Exact && b.repr_ == Repr::Exact) {
    if (exact_product(a.q_, b.q_, r.q_)) {
      r.repr_ = Repr::Exact;
      r.promoted_ = false;
      for (std::size_t i = 0; i < 9; ++i) r.m_[i] = to_double(r.q_[i]);
      if (auto w = exact_cofactor(r.q_)) {
        r.w_ = *w;
      } else {
        r.w_ = mul(a.w_, b.w_);
        r.wedge_log_scale_ = a.wedge_log_scale_ + b.wedge_log_scale_;
        rescale(r.w_, r.wedge_log_scale_);
      }
      return r;
    }
    r.promoted_ = true;
  } else {
    r.promoted_ = a.promoted_ || b.promoted_;
  }
  r.q_ = {};
  r.m_ = mul(a.m_, b.m_);
  r.log_scale_ = a.log_scale_ + b.log_scale_;
  r.w_ = mul(a.w_, b.w_);
  r.wedge_log_scale_ = a.wedge_log_scale_ + b.wedge_log_scale_;
  const bool keep_float = !r.promoted_ && a.repr_ != Repr::LogScaled &&
                          b.repr_ != Repr::LogScaled &&
                          !(a.repr_ == Repr::Exact && b.repr_ == Repr::Exact) &&
                          max_abs(r.m_) < 1e150 && max_abs(r.w_) < 1e150;
  if (keep_float) {
    r.repr_ = Repr::Float;
  } else {
    r.repr_ = Repr::LogScaled;
    r.renormalize();
  }
  return r;
}

bool operator==(const Mat3& a, const Mat3& b) {
  if (a.repr_ != b.repr_) return false;
  if (a.repr_ == Repr::Exact) return a.q_ == b.q_;
  return a.m_ == b.m_ && a.log_scale_ == b.log_scale_;
}

std::string Mat3::str() const {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (int i = 0; i < 3; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < 3; ++j) {
      if (j) os << ", ";
      if (repr_ == Repr::Exact) {
        // 128-bit values are printed via double when they exceed 2^64.
        const ExactInt v = q_[i * 3 + j];
        if (v <= ExactInt{UINT64_MAX})
          os << static_cast<std::uint64_t>(v);
        else
          os << static_cast<double>(v);
      } else {
        os << (*this)(i, j);
      }
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

Mat3 generator(int i) {
  switch (i) {
    case 1: return Mat3::exact({1, 1, 1, 0, 1, 0, 0, 0, 1});
    case 2: return Mat3::exact({1, 0, 0, 1, 1, 1, 0, 0, 1});
    case 3: return Mat3::exact({1, 0, 0, 0, 1, 0, 1, 1, 1});
    default: throw InputError("generator symbol must be 1, 2 or 3 (got " + std::to_string(i) + ")");
  }
}

Mat3 generator_transpose(int i) {
  switch (i) {
    case 1: return Mat3::exact({1, 0, 0, 1, 1, 0, 1, 0, 1});
    case 2: return Mat3::exact({1, 1, 0, 0, 1, 0, 0, 1, 1});
    case 3: return Mat3::exact({1, 0, 1, 0, 1, 1, 0, 0, 1});
    default: throw InputError("generator symbol must be 1, 2 or 3 (got " + std::to_string(i) + ")");
  }
}

double CartanVec::norm() const { return std::sqrt(k1 * k1 + k2 * k2 + k3 * k3); }

double top_symmetric_eigenvalue(double a00, double a01, double a02, double a11, double a12,
                                double a22) {
  const double p1 = a01 * a01 + a02 * a02 + a12 * a12;
  const double q = (a00 + a11 + a22) / 3.0;
  const double d0 = a00 - q, d1 = a11 - q, d2 = a22 - q;
  const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
  if (p2 <= 0.0) return q;
  const double p = std::sqrt(p2 / 6.0);
  const double b00 = d0 / p, b11 = d1 / p, b22 = d2 / p;
  const double b01 = a01 / p, b02 = a02 / p, b12 = a12 / p;
  const double det_b = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) +
                       b02 * (b01 * b12 - b11 * b02);
  const double r = std::clamp(det_b / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  return q + 2.0 * p * std::cos(phi);
}

double top_singular_value(const Entries& m) {
  check_finite(m);
  const double s = max_abs(m);
  if (s == 0.0) return 0.0;
  Entries a = m;
  for (double& x : a) x /= s;
  const Entries b = gram(a);
  const double lambda = top_symmetric_eigenvalue(b[0], b[1], b[2], b[4], b[5], b[8]);
  return s * std::sqrt(std::max(lambda, 0.0));
}

CartanVec cartan_from_parts(const Entries& m, double log_scale, const Entries& w,
                            double wedge_log_scale) {
  const double s1 = top_singular_value(m);
  const double s12 = top_singular_value(w);
  if (s1 <= 0.0 || s12 <= 0.0) throw NumericError("degenerate matrix in Cartan projection");
  const double k1 = std::log(s1) + log_scale;
  const double k12 = std::log(s12) + wedge_log_scale;
  const double k2 = std::clamp(k12 - k1, -0.5 * k1, k1);
  return {k1, k2, -k1 - k2};
}

CartanVec cartan(const Mat3& g) {
  return cartan_from_parts(g.mantissa(), g.log_scale(), g.wedge_mantissa(), g.wedge_log_scale());
}

SingularValues singular_values(const Mat3& g) {
  const CartanVec k = cartan(g);
  return {std::exp(k.k1), std::exp(k.k2), std::exp(k.k3)};
}

Entries cofactor(const Entries& m) {
  Entries out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      const int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      out[i * 3 + j] = m[r0 * 3 + c0] * m[r1 * 3 + c1] - m[r0 * 3 + c1] * m[r1 * 3 + c0];
    }
  return out;
}

ProjPoint ProjPoint::from(const Vec3& x, int dim) {
  if (dim != 2 && dim != 3) throw InputError("projective points live in R^2 or R^3");
  Vec3 v = x;
  if (dim == 2) v[2] = 0.0;
  for (double c : v)
    if (!std::isfinite(c)) throw NumericError("non-finite projective representative");
  const double n = norm(v);
  if (n == 0.0) throw InputError("zero vector does not define a projective point");
  for (double& c : v) c /= n;
  for (int i = 0; i < dim; ++i) {
    if (v[static_cast<std::size_t>(i)] == 0.0) continue;
    if (v[static_cast<std::size_t>(i)] < 0.0)
      for (double& c : v) c = -c;
    break;
  }
  for (double& c : v)
    if (c == 0.0) c = 0.0;  // normalize -0.0
  return {v, dim};
}

ProjPoint ProjPoint::basis(int i, int dim) {
  Vec3 v{0.0, 0.0, 0.0};
  v[static_cast<std::size_t>(i)] = 1.0;
  return from(v, dim);
}

double proj_distance(const ProjPoint& p, const ProjPoint& q) {
  if (p.dim != q.dim) throw InputError("projective points of different ambient dimension");
  double d;
  if (p.dim == 2) {
    d = std::abs(p.v[0] * q.v[1] - p.v[1] * q.v[0]);
  } else {
    d = norm(cross(p.v, q.v));
  }
  return std::min(d, 1.0);
}

double hyperplane_distance(const ProjPoint& p, const ProjPoint& normal) {
  if (p.dim != normal.dim) throw InputError("projective points of different ambient dimension");
  return std::min(std::abs(dot(p.v, normal.v)), 1.0);
}

Vec3 apply(const Mat3& g, const Vec3& v) {
  const Entries& m = g.mantissa();
  return {m[0] * v[0] + m[1] * v[1] + m[2] * v[2], m[3] * v[0] + m[4] * v[1] + m[5] * v[2],
          m[6] * v[0] + m[7] * v[1] + m[8] * v[2]};
}

TopSingularPair top_singular_vectors(const Entries& m) {
  check_finite(m);
  const double s = max_abs(m);
  if (s == 0.0) throw NumericError("zero matrix has no singular frame");
  Entries a = m;
  for (double& x : a) x /= s;
  const Entries b = gram(a);
  const double lambda = top_symmetric_eigenvalue(b[0], b[1], b[2], b[4], b[5], b[8]);
  const Vec3 right = top_eigenvector(b, lambda);
  const Vec3 left{a[0] * right[0] + a[1] * right[1] + a[2] * right[2],
                  a[3] * right[0] + a[4] * right[1] + a[5] * right[2],
                  a[6] * right[0] + a[7] * right[1] + a[8] * right[2]};
  return {normalized_vec(left), right};
}

CartanFrames cartan_frames(const Mat3& g, FrameOptions opts) {
  const CartanVec k = cartan(g);
  const double min_log_gap = -std::log1p(-opts.relative_gap);
  if (k.k1 - k.k2 < min_log_gap)
    throw GapError("s1>s2", "singular gap s1>s2 below tolerance; V+ and H- undefined");
  if (k.k2 - k.k3 < min_log_gap)
    throw GapError("s2>s3", "singular gap s2>s3 below tolerance; wedge frames undefined");
  const TopSingularPair base = top_singular_vectors(g.mantissa());
  const TopSingularPair wedge = top_singular_vectors(g.wedge_mantissa());
  return {ProjPoint::from(base.left), ProjPoint::from(base.right), ProjPoint::from(wedge.left),
          ProjPoint::from(wedge.right)};
}

}  // namespace rauzy
