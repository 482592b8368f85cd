#pragma once

// Singular-value weights phi_s / psi_s, truncated Poincare sums, the pressure
// slope diagnostic and the affinity-exponent bisection.

#include <cstdint>
#include <vector>

#include "rauzy/linalg.hpp"
#include "rauzy/stats.hpp"
#include "rauzy/words.hpp"

namespace rauzy {

// psi_s(k) = s (k1 - k2) for s <= 1, (k1 - k2) + (s - 1)(k1 - k3) for 1 < s <= 2.
// Throws DomainError outside [0, 2].
double psi_s(const CartanVec& k, double s);

// phi_s = exp(-psi_s), i.e. (s2/s1)^s or (s2/s1)(s3/s1)^{s-1}; s in (0, 2].
double phi_s(const CartanVec& k, double s);

struct PoincareSum {
  double sum = 0.0;
  std::uint64_t count = 0;
};

// Sum of phi_s over the words accepted by `filter`, with compensated
// summation per shard.
PoincareSum partial_poincare_sum(const EnumFilter& filter, double s, EnumOptions opts = {});

// Z_n(s) = sum over words of length exactly n, for n = 0..n_max and every s
// in `s_values`, from a single traversal. Result is indexed [s][n].
std::vector<std::vector<double>> level_sums(const std::vector<double>& s_values, int n_max,
                                            EnumOptions opts = {});

enum class SlopeFit {
  Linear,        // log Z_n ~ a + P n
  LogCorrected,  // log Z_n ~ a + P n + b log n (absorbs parabolic prefactors)
};

const char* to_string(SlopeFit f);

struct PressureOptions {
  double discard_fraction = 0.25;  // smallest depths dropped from the fit
  SlopeFit fit = SlopeFit::LogCorrected;
  double max_nodes = 3.5e9;        // ~3^20
  EnumOptions enumeration;
};

struct PressureReport {
  double s = 0.0;
  std::vector<int> depths;
  std::vector<double> log_sums;
  std::vector<int> fit_depths;
  double slope = 0.0;
  double slope_stderr = 0.0;
  SlopeFit fit = SlopeFit::LogCorrected;
};

// Fits the growth rate of log Z_n(s) for n in [n_min, n_max]. A positive slope
// signals divergence of the Poincare series (s below the exponent), a negative
// slope convergence.
PressureReport pressure_slope(double s, int n_min, int n_max, const PressureOptions& opts = {});

// Fit a report from precomputed level sums (log Z_n for n = 0..).
PressureReport pressure_from_levels(double s, const std::vector<double>& z_by_level, int n_min,
                                    int n_max, const PressureOptions& opts);

struct ExponentOptions {
  int n_min = 4;
  double lo = 1.0;
  double hi = 2.0;
  PressureOptions pressure;
};

struct ExponentEstimate {
  double s_hat = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int n_min = 0;
  int n_max = 0;
  std::vector<PressureReport> evaluations;  // in evaluation order
};

// Bisection on the sign of the pressure slope until hi - lo <= tol.
// Invariant: slope(lo) > 0 > slope(hi).
ExponentEstimate estimate_affinity_exponent(int n_max, double tol, const ExponentOptions& opts = {});

}  // namespace rauzy
