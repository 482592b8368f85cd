#pragma once

// Certificates for (r, eps)-loxodromic elements, Schottky families and
// narrowness, plus Cartan-projection additivity defects. Strict inequalities
// are decided with an additive margin; values inside the margin are reported
// as inconclusive.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rauzy/linalg.hpp"
#include "rauzy/words.hpp"

namespace rauzy {

enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(Verdict v);

inline constexpr double kCertMargin = 1e-10;

// Pass when value - threshold > margin, fail when < -margin.
Verdict compare_strict(double value, double threshold, double margin = kCertMargin);

// Pass only when every input passes; any fail makes a fail.
Verdict combine(std::initializer_list<Verdict> vs);

struct LoxodromyCert {
  double r = 0.0;
  double eps = 0.0;
  double gap12 = 0.0;  // s1 / s2
  double gap23 = 0.0;  // s2 / s3
  double dist = 0.0;        // d(V+, H-) in P(R^3)
  double wedge_dist = 0.0;  // same for wedge^2
  Verdict gap12_ok = Verdict::Fail;
  Verdict gap23_ok = Verdict::Fail;
  Verdict dist_ok = Verdict::Fail;
  Verdict wedge_dist_ok = Verdict::Fail;
  Verdict verdict = Verdict::Fail;
  std::string reason;
};

LoxodromyCert certify_loxodromic(const Mat3& g, double r, double eps);

struct SchottkyCert {
  double r = 0.0;
  double eps = 0.0;
  std::vector<LoxodromyCert> members;
  // dist[i][j] = d(V_i^+, H_j^-); same for the wedge representation.
  std::vector<std::vector<double>> dist;
  std::vector<std::vector<double>> wedge_dist;
  double min_pair_dist = 0.0;
  double min_slack = 0.0;  // min over pairs of dist - 6r, both representations
  Verdict verdict = Verdict::Fail;
  std::string reason;
};

SchottkyCert certify_schottky(const std::vector<Mat3>& family, double r, double eps);

struct NarrowCert {
  double eta = 0.0;
  double attracting_diam = 0.0;
  double repelling_diam = 0.0;
  double wedge_attracting_diam = 0.0;
  double wedge_repelling_diam = 0.0;
  bool narrow = false;
  std::string reason;

  double max_diam() const;
};

// Attracting points and repelling hyperplanes (compared through their unit
// normals) lie within eta of each other, or of those of `around`.
NarrowCert certify_narrow(const std::vector<Mat3>& family, double eta,
                          const std::optional<Mat3>& around = std::nullopt);

// |kappa(g_1 ... g_l) - sum kappa(g_i)|.
double cartan_additivity_defect(const std::vector<Mat3>& gs);

struct ParameterGrid {
  double r_min = 1e-6;
  double r_max = 1.0;
  double eps_min = 1e-14;
  double eps_max = 1.0;
  int per_decade = 10;
};

struct SchottkyParameters {
  double r = 0.0;
  double eps = 0.0;
  SchottkyCert cert;
};

// Largest certified r on the grid, with the smallest certified eps for it,
// among pairs satisfying r > ratio * eps.
std::optional<SchottkyParameters> find_schottky_parameters(const std::vector<Mat3>& family,
                                                           double ratio = 4.0,
                                                           const ParameterGrid& grid = {});

// First word f (shortlex order, length <= max_length) with f g (r, eps)-loxodromic.
std::optional<Word> find_loxodromic_multiplier(const Mat3& g, double r, double eps, int max_length);

}  // namespace rauzy
