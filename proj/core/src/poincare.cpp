#include "rauzy/poincare.hpp"

#include <cmath>
#include <string>

namespace rauzy {

double psi_s(const CartanVec& k, double s) {
  if (!(s >= 0.0 && s <= 2.0)) throw DomainError("psi_s needs s in [0, 2], got " + std::to_string(s));
  const double g12 = k.k1 - k.k2;
  if (s <= 1.0) return s * g12;
  return g12 + (s - 1.0) * (k.k1 - k.k3);
}

double phi_s(const CartanVec& k, double s) {
  if (!(s > 0.0 && s <= 2.0)) throw DomainError("phi_s needs s in (0, 2], got " + std::to_string(s));
  return std::exp(-psi_s(k, s));
}

namespace {

struct SumAcc {
  KahanSum sum;
  std::uint64_t count = 0;
  void merge(const SumAcc& o) {
    sum.merge(o.sum);
    count += o.count;
  }
};

struct LevelAcc {
  std::vector<std::vector<KahanSum>> z;  // [s][n]
  void merge(const LevelAcc& o) {
    for (std::size_t i = 0; i < z.size(); ++i)
      for (std::size_t n = 0; n < z[i].size(); ++n) z[i][n].merge(o.z[i][n]);
  }
};

void check_s(double s) {
  if (!(s > 0.0 && s <= 2.0)) throw DomainError("s must lie in (0, 2], got " + std::to_string(s));
}

}  // namespace

PoincareSum partial_poincare_sum(const EnumFilter& filter, double s, EnumOptions opts) {
  check_s(s);
  const SumAcc acc = enumerate(
      filter, SumAcc{},
      [s](SumAcc& a, const Node& node) {
        a.sum.add(std::exp(-psi_s(node.cartan(), s)));
        ++a.count;
      },
      opts);
  return {acc.sum.value(), acc.count};
}

std::vector<std::vector<double>> level_sums(const std::vector<double>& s_values, int n_max,
                                            EnumOptions opts) {
  for (double s : s_values) check_s(s);
  if (n_max < 0) throw InputError("n_max must be nonnegative");
  EnumFilter f;
  f.max_length = n_max;
  LevelAcc init;
  init.z.assign(s_values.size(), std::vector<KahanSum>(static_cast<std::size_t>(n_max) + 1));
  const LevelAcc acc = enumerate(
      f, init,
      [&s_values](LevelAcc& a, const Node& node) {
        const CartanVec k = node.cartan();
        const auto n = static_cast<std::size_t>(node.length());
        for (std::size_t i = 0; i < s_values.size(); ++i)
          a.z[i][n].add(std::exp(-psi_s(k, s_values[i])));
      },
      opts);
  std::vector<std::vector<double>> out(s_values.size());
  for (std::size_t i = 0; i < s_values.size(); ++i)
    for (const KahanSum& z : acc.z[i]) out[i].push_back(z.value());
  return out;
}

const char* to_string(SlopeFit f) { return f == SlopeFit::Linear ? "linear" : "log-corrected"; }

PressureReport pressure_from_levels(double s, const std::vector<double>& z_by_level, int n_min,
                                    int n_max, const PressureOptions& opts) {
  PressureReport rep;
  rep.s = s;
  rep.fit = opts.fit;
  for (int n = n_min; n <= n_max; ++n) {
    rep.depths.push_back(n);
    rep.log_sums.push_back(std::log(z_by_level.at(static_cast<std::size_t>(n))));
  }
  const auto total = rep.depths.size();
  const auto drop = static_cast<std::size_t>(std::floor(opts.discard_fraction * static_cast<double>(total)));
  std::vector<double> x, y;
  for (std::size_t i = drop; i < total; ++i) {
    rep.fit_depths.push_back(rep.depths[i]);
    x.push_back(rep.depths[i]);
    y.push_back(rep.log_sums[i]);
  }
  if (opts.fit == SlopeFit::Linear) {
    const LineFit f = fit_line(x, y);
    rep.slope = f.slope;
    rep.slope_stderr = f.slope_stderr;
  } else {
    const LogCorrectedFit f = fit_line_with_log(x, y);
    rep.slope = f.slope;
    rep.slope_stderr = f.slope_stderr;
  }
  if (!std::isfinite(rep.slope)) throw NumericError("pressure slope is not finite");
  return rep;
}

namespace {

void check_depths(int n_min, int n_max, const PressureOptions& opts) {
  if (n_min < 4) throw InputError("pressure_slope needs n_min >= 4");
  if (n_max < n_min + 4) throw InputError("pressure_slope needs n_max >= n_min + 4");
  if (!(opts.discard_fraction >= 0.0 && opts.discard_fraction < 1.0))
    throw InputError("discard_fraction must lie in [0, 1)");
  const double nodes = (std::pow(3.0, n_max + 1) - 1.0) / 2.0;
  if (nodes > opts.max_nodes)
    throw ResourceError("depth " + std::to_string(n_max) + " needs about " +
                            std::to_string(nodes) + " matrix evaluations (cap " +
                            std::to_string(opts.max_nodes) + ")",
                        nodes);
}

}  // namespace

PressureReport pressure_slope(double s, int n_min, int n_max, const PressureOptions& opts) {
  check_s(s);
  check_depths(n_min, n_max, opts);
  const auto z = level_sums({s}, n_max, opts.enumeration);
  return pressure_from_levels(s, z[0], n_min, n_max, opts);
}

ExponentEstimate estimate_affinity_exponent(int n_max, double tol, const ExponentOptions& opts) {
  if (!(tol >= 1e-3)) throw InputError("tolerance must be at least 1e-3");
  check_s(opts.lo);
  check_s(opts.hi);
  if (!(opts.lo < opts.hi)) throw InputError("initial bracket must satisfy lo < hi");
  check_depths(opts.n_min, n_max, opts.pressure);

  ExponentEstimate est;
  est.n_min = opts.n_min;
  est.n_max = n_max;
  auto eval = [&](double s) {
    est.evaluations.push_back(pressure_slope(s, opts.n_min, n_max, opts.pressure));
    return est.evaluations.back().slope;
  };
  double lo = opts.lo, hi = opts.hi;
  const double slo = eval(lo), shi = eval(hi);
  if (!(slo > 0.0 && shi < 0.0))
    throw LogicError("initial interval does not bracket the exponent: slope(" + std::to_string(lo) +
                     ")=" + std::to_string(slo) + ", slope(" + std::to_string(hi) +
                     ")=" + std::to_string(shi));
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (eval(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  est.lo = lo;
  est.hi = hi;
  est.s_hat = 0.5 * (lo + hi);
  return est;
}

}  // namespace rauzy
