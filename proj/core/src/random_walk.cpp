#include "rauzy/random_walk.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <unordered_map>

#include "rauzy/error.hpp"
#include "rauzy/parallel.hpp"
#include "rauzy/poincare.hpp"
#include "rauzy/stats.hpp"

namespace rauzy {

const char* to_string(Provenance p) {
  return p == Provenance::Manual ? "manual" : "variational-search";
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "manual") return Provenance::Manual;
  if (s == "variational-search") return Provenance::VariationalSearch;
  throw InputError("unknown provenance '" + s + "'");
}

const char* to_string(EntropyBranch b) { return b == EntropyBranch::Free ? "free" : "convolution"; }

MeasureSpec MeasureSpec::uniform(const std::vector<Word>& words, Provenance p) {
  MeasureSpec m;
  m.provenance = p;
  for (const Word& w : words) m.support.push_back({w, 1.0 / static_cast<double>(words.size())});
  m.validate();
  return m;
}

MeasureSpec MeasureSpec::dirac(const Word& w) {
  MeasureSpec m;
  m.support.push_back({w, 1.0});
  m.validate();
  return m;
}

void MeasureSpec::validate() const {
  if (support.empty()) throw InputError("measure has empty support");
  KahanSum total;
  std::vector<Word> seen;
  for (const Atom& a : support) {
    if (a.word.empty()) throw InputError("measure atoms must be nonempty words");
    if (!(a.weight > 0.0)) throw InputError("measure weights must be positive");
    total.add(a.weight);
    seen.push_back(a.word);
  }
  if (std::abs(total.value() - 1.0) > 1e-12)
    throw InputError("measure weights must sum to 1 (got " + std::to_string(total.value()) + ")");
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw InputError("measure support words must be distinct");
}

double MeasureSpec::shannon_entropy() const {
  // Uniform weights: log n exactly, free of summation rounding.
  const bool uniform = std::all_of(support.begin(), support.end(),
                                   [&](const Atom& a) { return a.weight == support.front().weight; });
  if (uniform && !support.empty()) return std::log(static_cast<double>(support.size()));
  KahanSum h;
  for (const Atom& a : support) h.add(-a.weight * std::log(a.weight));
  return h.value();
}

std::vector<Word> MeasureSpec::words() const {
  std::vector<Word> out;
  for (const Atom& a : support) out.push_back(a.word);
  return out;
}

MeasureSpec mix(const MeasureSpec& a, const MeasureSpec& b, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw InputError("mixing weight must lie in [0, 1]");
  std::map<Word, double> w;
  if (beta < 1.0)
    for (const Atom& x : a.support) w[x.word] += (1.0 - beta) * x.weight;
  if (beta > 0.0)
    for (const Atom& x : b.support) w[x.word] += beta * x.weight;
  MeasureSpec m;
  m.provenance = a.provenance;
  for (auto& [word, weight] : w) m.support.push_back({word, weight});
  return m;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return splitmix(seed ^ splitmix(trial + 0x632be59bd9b4e019ULL));
}

namespace {

// Gram-Schmidt on the two tracked columns (with one reorthogonalization
// pass); returns log |R_11|, log |R_22| and leaves the columns orthonormal.
std::array<double, 2> orthonormalize(Vec3& a, Vec3& b) {
  auto dot = [](const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; };
  const double na = std::sqrt(dot(a, a));
  if (!(na > 0.0) || !std::isfinite(na)) throw NumericError("degenerate frame in Lyapunov product");
  for (double& x : a) x /= na;
  for (int pass = 0; pass < 2; ++pass) {
    const double d = dot(a, b);
    for (int i = 0; i < 3; ++i) b[static_cast<std::size_t>(i)] -= d * a[static_cast<std::size_t>(i)];
  }
  const double nb = std::sqrt(dot(b, b));
  if (!(nb > 0.0) || !std::isfinite(nb)) throw NumericError("degenerate frame in Lyapunov product");
  for (double& x : b) x /= nb;
  return {std::log(na), std::log(nb)};
}

struct Sampler {
  std::vector<double> cumulative;
  std::size_t draw(std::mt19937_64& rng) const {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
  }
};

}  // namespace

LyapunovEstimate lyapunov_spectrum(const MeasureSpec& nu, long steps, int trials,
                                   std::optional<std::uint64_t> seed, const LyapunovOptions& opts) {
  if (!seed) throw InputError("a seed is required for Monte-Carlo estimates");
  if (steps < 1000) throw InputError("lyapunov_spectrum needs steps >= 1000");
  if (trials < 8) throw InputError("lyapunov_spectrum needs trials >= 8");
  if (opts.renorm_period < 1) throw InputError("renormalization period must be positive");
  nu.validate();

  std::vector<Entries> mats;
  std::vector<double> log_scales;
  Sampler sampler;
  KahanSum c;
  for (const Atom& a : nu.support) {
    const Mat3 g = word_to_matrix(a.word);
    mats.push_back(g.mantissa());
    log_scales.push_back(g.log_scale());
    c.add(a.weight);
    sampler.cumulative.push_back(c.value());
  }

  LyapunovEstimate est;
  est.steps = steps;
  est.trials = trials;
  est.seed = *seed;
  est.per_trial.resize(static_cast<std::size_t>(trials));

  // The renormalization period shrinks for supports whose elements expand a
  // lot per step, so that orthogonalization never works on columns that have
  // collapsed to within rounding of each other.
  double max_gap = 0.0;
  for (const Atom& a : nu.support) {
    const CartanVec k = cartan(word_to_matrix(a.word));
    max_gap = std::max(max_gap, k.k1 - k.k3);
  }
  const int period = std::clamp(max_gap > 0.0 ? static_cast<int>(std::floor(kMaxLogGapPerPeriod / max_gap)) : opts.renorm_period,
                                1, opts.renorm_period);
  est.renorm_period = period;

  parallel_for(static_cast<std::size_t>(trials), resolve_threads(opts.threads), [&](std::size_t t) {
    std::mt19937_64 rng(trial_seed(*seed, t));
    // Two tracked columns suffice: det = 1 fixes the third exponent.
    Vec3 a{1.0, 0.0, 0.0}, b{0.0, 1.0, 0.0};
    std::array<KahanSum, 2> acc;
    KahanSum scale;
    auto apply_to = [](const Entries& g, const Vec3& v) {
      return Vec3{g[0] * v[0] + g[1] * v[1] + g[2] * v[2], g[3] * v[0] + g[4] * v[1] + g[5] * v[2],
                  g[6] * v[0] + g[7] * v[1] + g[8] * v[2]};
    };
    for (long step = 1; step <= steps; ++step) {
      const std::size_t k = sampler.draw(rng);
      scale.add(log_scales[k]);
      a = apply_to(mats[k], a);
      b = apply_to(mats[k], b);
      if (step % period == 0 || step == steps) {
        const auto logs = orthonormalize(a, b);
        acc[0].add(logs[0]);
        acc[1].add(logs[1]);
      }
    }
    // Log-scales of the support matrices multiply every singular value alike.
    const double per_step_scale = scale.value() / static_cast<double>(steps);
    std::array<double, 3> lam{acc[0].value() / static_cast<double>(steps) + per_step_scale,
                              acc[1].value() / static_cast<double>(steps) + per_step_scale, 0.0};
    lam[2] = -lam[0] - lam[1];
    std::sort(lam.begin(), lam.end(), std::greater<>());
    est.per_trial[t] = lam;
  });

  for (int i = 0; i < 3; ++i) {
    std::vector<double> v;
    for (const auto& lam : est.per_trial) v.push_back(lam[static_cast<std::size_t>(i)]);
    const MeanStderr ms = mean_stderr(v);
    est.lambda[static_cast<std::size_t>(i)] = ms.mean;
    est.stderr_[static_cast<std::size_t>(i)] = ms.stderr_;
  }
  for (const auto& lam : est.per_trial)
    est.max_trial_sum = std::max(est.max_trial_sum, std::abs(lam[0] + lam[1] + lam[2]));
  return est;
}

namespace {

double entropy_of(std::vector<double> p) {
  std::sort(p.begin(), p.end());
  KahanSum h;
  for (double x : p)
    if (x > 0.0) h.add(-x * std::log(x));
  return h.value();
}

}  // namespace

double convolution_entropy(const MeasureSpec& nu, int k, double cap) {
  nu.validate();
  if (k < 1) throw InputError("convolution power must be at least 1");
  const double size = std::pow(static_cast<double>(nu.support.size()), k);
  if (size > cap)
    throw ResourceError("convolution power " + std::to_string(k) + " has up to " + std::to_string(size) +
                            " words (cap " + std::to_string(cap) + ")",
                        size);
  std::unordered_map<Word, double, WordHash> dist{{Word{}, 1.0}};
  for (int step = 0; step < k; ++step) {
    std::unordered_map<Word, double, WordHash> next;
    next.reserve(dist.size() * nu.support.size());
    for (const auto& [w, p] : dist)
      for (const Atom& a : nu.support) next[w + a.word] += p * a.weight;
    dist = std::move(next);
  }
  std::vector<double> p;
  p.reserve(dist.size());
  for (const auto& [w, x] : dist) p.push_back(x);
  return entropy_of(std::move(p));
}

EntropyReport rw_entropy(const MeasureSpec& nu, int k_max, double cap) {
  nu.validate();
  if (k_max < 1) throw InputError("k_max must be at least 1");
  EntropyReport r;
  if (is_prefix_free(nu.words())) {
    r.branch = EntropyBranch::Free;
    r.h = nu.shannon_entropy();
    return r;
  }
  r.branch = EntropyBranch::Convolution;
  const double size = std::pow(static_cast<double>(nu.support.size()), k_max);
  if (size > cap)
    throw ResourceError("entropy convolution to k=" + std::to_string(k_max) + " needs up to " +
                            std::to_string(size) + " words (cap " + std::to_string(cap) + ")",
                        size);
  for (int k = 1; k <= k_max; ++k) r.per_k.push_back(convolution_entropy(nu, k, cap) / k);
  for (std::size_t i = 1; i < r.per_k.size(); ++i)
    if (r.per_k[i] > r.per_k[i - 1] * (1.0 + 1e-12) + 1e-15) r.nonincreasing = false;
  r.h = r.per_k.back();
  return r;
}

DimReport lyapunov_dimension(double h, double chi1, double chi2) {
  if (!(chi1 > 0.0) || !(chi2 >= chi1))
    throw DomainError("Lyapunov dimension needs chi2 >= chi1 > 0");
  if (!(h >= 0.0)) throw DomainError("entropy must be nonnegative");
  DimReport r;
  r.h = h;
  r.chi1 = chi1;
  r.chi2 = chi2;
  if (h < chi1) {
    r.d = 0;
    r.dim = h / chi1;
  } else {
    r.d = 1;
    r.dim = 1.0 + (h - chi1) / chi2;
  }
  if (r.dim > 2.0) {
    r.dim = 2.0;
    r.clamped = true;
  }
  return r;
}

MixingCheck entropy_mixing_check(const MeasureSpec& nu1, const MeasureSpec& nu2, double beta, int k,
                                 double cap) {
  nu1.validate();
  nu2.validate();
  if (!is_prefix_free(nu1.words())) throw InputError("the first measure must have prefix-free support");
  if (k < 1) throw InputError("k must be at least 1");
  const MeasureSpec m = mix(nu1, nu2, beta);
  MixingCheck c;
  c.lhs = convolution_entropy(m, k, cap) / k;
  c.rhs = (1.0 - beta) * nu1.shannon_entropy();
  const double support = static_cast<double>(std::max(nu1.support.size(), nu2.support.size()));
  c.tolerance = 2.0 * std::log(support) / k;
  c.pass = c.lhs >= c.rhs - c.tolerance;
  return c;
}

namespace {

struct WindowWord {
  std::vector<std::uint8_t> symbols;
  double x1 = 0.0, x2 = 0.0;  // kappa / n
};

struct WindowAcc {
  std::vector<WindowWord> words;
  void merge(const WindowAcc& o) { words.insert(words.end(), o.words.begin(), o.words.end()); }
};

}  // namespace

SearchResult variational_search(double s, double beta, int n, const SearchBudget& budget) {
  if (!(s > 0.0 && s <= 2.0)) throw DomainError("s must lie in (0, 2]");
  if (!(beta > 0.0 && beta <= 0.2)) throw InputError("beta must lie in (0, 0.2]");
  if (n < 1) throw InputError("n must be positive");
  if (budget.max_length < 1 || budget.max_length > 22) throw InputError("max_length must lie in [1, 22]");
  if (budget.max_candidates < 1) throw InputError("max_candidates must be positive");

  const double lo = (1.0 - beta) * n, hi = (1.0 + beta) * n;
  EnumFilter f;
  f.max_length = budget.max_length;
  f.include_identity = false;
  // For s > 1, psi_s >= (s - 1)(k1 - k3) >= 1.5 (s - 1) k1, which caps sigma1 on the window.
  const double c = s <= 1.0 ? 0.0 : 1.5 * (s - 1.0);
  if (c > 0.0) f.sigma1_ceiling = std::exp(hi / c);
  EnumOptions eo;
  eo.threads = budget.threads;
  const WindowAcc acc = enumerate(
      f, WindowAcc{},
      [&](WindowAcc& a, const Node& node) {
        const CartanVec k = node.cartan();
        const double p = psi_s(k, s);
        if (p < lo || p > hi) return;
        a.words.push_back({{node.symbols.begin(), node.symbols.end()}, k.k1 / n, k.k2 / n});
      },
      eo);
  if (acc.words.empty())
    throw DomainError("no word has psi_s in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "] up to length " + std::to_string(budget.max_length) +
                      "; try a larger beta, a different n or a larger max_length");

  // Grid cells of side beta in kappa/n space.
  std::map<std::pair<long, long>, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < acc.words.size(); ++i) {
    const auto& w = acc.words[i];
    cells[{static_cast<long>(std::floor(w.x1 / beta)), static_cast<long>(std::floor(w.x2 / beta))}].push_back(i);
  }
  std::vector<std::pair<std::pair<long, long>, std::vector<std::size_t>>> order(cells.begin(), cells.end());
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.second.size() > b.second.size(); });
  if (order.size() > static_cast<std::size_t>(budget.max_candidates))
    order.resize(static_cast<std::size_t>(budget.max_candidates));

  SearchResult res;
  res.window_words = acc.words.size();
  res.candidates.resize(order.size());
  std::vector<MeasureSpec> measures(order.size());
  // Candidates run one after another; each Monte-Carlo estimate is itself
  // parallel over trials.
  for (std::size_t ci = 0; ci < order.size(); ++ci) {
    SearchCandidate& cand = res.candidates[ci];
    cand.center = {(static_cast<double>(order[ci].first.first) + 0.5) * beta,
                   (static_cast<double>(order[ci].first.second) + 0.5) * beta};
    cand.cluster_size = order[ci].second.size();
    std::vector<Word> ws;
    for (std::size_t idx : order[ci].second) ws.push_back(Word::from_symbols(acc.words[idx].symbols));
    ws = minimal_subset(std::move(ws));
    cand.support_size = ws.size();
    measures[ci] = MeasureSpec::uniform(ws, Provenance::VariationalSearch);
    LyapunovOptions lo_opts;
    lo_opts.threads = budget.threads;
    cand.lyapunov = lyapunov_spectrum(measures[ci], budget.steps, budget.trials, budget.seed, lo_opts);
    const auto& L = cand.lyapunov;
    const double g12 = L.lambda[0] - L.lambda[1], g23 = L.lambda[1] - L.lambda[2];
    cand.simple_spectrum = g12 > 3.0 * (L.stderr_[0] + L.stderr_[1]) && g23 > 3.0 * (L.stderr_[1] + L.stderr_[2]);
    if (!cand.simple_spectrum) continue;
    cand.report = lyapunov_dimension(std::log(static_cast<double>(ws.size())), g12, L.lambda[0] - L.lambda[2]);
    cand.report.entropy_branch = to_string(EntropyBranch::Free);
    cand.report.chi_stderr = {L.stderr_[0] + L.stderr_[1], L.stderr_[0] + L.stderr_[2]};
    if (!budget.boosters.empty()) {
      const MeasureSpec mixed = mix(measures[ci], MeasureSpec::uniform(budget.boosters), beta);
      LyapunovEstimate ml = lyapunov_spectrum(mixed, budget.steps, budget.trials, budget.seed, lo_opts);
      int k = 1;
      while (std::pow(static_cast<double>(mixed.support.size()), k + 1) <= 1e6 && k < 4) ++k;
      const EntropyReport er = rw_entropy(mixed, k);
      const double m12 = ml.lambda[0] - ml.lambda[1], m13 = ml.lambda[0] - ml.lambda[2];
      if (m12 > 0.0 && m13 >= m12) {
        DimReport dr = lyapunov_dimension(er.h, m12, m13);
        dr.entropy_branch = to_string(er.branch);
        dr.chi_stderr = {ml.stderr_[0] + ml.stderr_[1], ml.stderr_[0] + ml.stderr_[2]};
        cand.mixed = dr;
      }
    }
  }

  std::optional<std::size_t> best;
  for (std::size_t ci = 0; ci < res.candidates.size(); ++ci) {
    const auto& cand = res.candidates[ci];
    if (!cand.simple_spectrum) continue;
    if (!best) {
      best = ci;
      continue;
    }
    const auto& b = res.candidates[*best];
    if (cand.report.dim > b.report.dim || (cand.report.dim == b.report.dim && cand.center < b.center)) best = ci;
  }
  if (!best) throw DomainError("no candidate measure has a simple Lyapunov spectrum; try a larger n");
  res.best = measures[*best];
  res.report = res.candidates[*best].report;
  res.lyapunov = res.candidates[*best].lyapunov;
  res.center = res.candidates[*best].center;
  res.mixed = res.candidates[*best].mixed;
  return res;
}

}  // namespace rauzy
