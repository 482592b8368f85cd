#include "rauzy/schottky.hpp"

#include <algorithm>
#include <cmath>

#include "rauzy/error.hpp"

namespace rauzy {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict compare_strict(double value, double threshold, double margin) {
  if (!std::isfinite(value)) return Verdict::Fail;
  const double d = value - threshold;
  if (d > margin) return Verdict::Pass;
  if (d < -margin) return Verdict::Fail;
  return Verdict::Inconclusive;
}

Verdict combine(std::initializer_list<Verdict> vs) {
  Verdict out = Verdict::Pass;
  for (Verdict v : vs) {
    if (v == Verdict::Fail) return Verdict::Fail;
    if (v == Verdict::Inconclusive) out = Verdict::Inconclusive;
  }
  return out;
}

namespace {

void check_params(double r, double eps) {
  if (!(r > 0.0) || !(eps > 0.0)) throw InputError("r and eps must be positive");
}

Verdict fold(Verdict acc, Verdict v) { return combine({acc, v}); }

}  // namespace

LoxodromyCert certify_loxodromic(const Mat3& g, double r, double eps) {
  check_params(r, eps);
  LoxodromyCert c;
  c.r = r;
  c.eps = eps;
  const CartanVec k = cartan(g);
  c.gap12 = std::exp(k.k1 - k.k2);
  c.gap23 = std::exp(k.k2 - k.k3);
  // Gap ratios are compared on the log scale: log(s_i/s_{i+1}) vs -log eps.
  c.gap12_ok = compare_strict(k.k1 - k.k2, -std::log(eps));
  c.gap23_ok = compare_strict(k.k2 - k.k3, -std::log(eps));
  try {
    const CartanFrames f = cartan_frames(g);
    c.dist = hyperplane_distance(f.attracting, f.repelling_normal);
    c.wedge_dist = hyperplane_distance(f.wedge_attracting, f.wedge_repelling_normal);
    c.dist_ok = compare_strict(c.dist, r);
    c.wedge_dist_ok = compare_strict(c.wedge_dist, r);
  } catch (const GapError& e) {
    c.dist_ok = c.wedge_dist_ok = Verdict::Fail;
    c.reason = std::string("frame undefined: ") + e.what();
  }
  c.verdict = combine({c.gap12_ok, c.gap23_ok, c.dist_ok, c.wedge_dist_ok});
  if (c.reason.empty() && c.verdict != Verdict::Pass) {
    if (c.gap12_ok != Verdict::Pass) c.reason = "s1/s2 below 1/eps";
    else if (c.gap23_ok != Verdict::Pass) c.reason = "s2/s3 below 1/eps";
    else if (c.dist_ok != Verdict::Pass) c.reason = "d(V+, H-) not above r";
    else c.reason = "wedge d(V+, H-) not above r";
  }
  return c;
}

SchottkyCert certify_schottky(const std::vector<Mat3>& family, double r, double eps) {
  check_params(r, eps);
  if (family.empty()) throw InputError("Schottky family must be nonempty");
  SchottkyCert c;
  c.r = r;
  c.eps = eps;
  const std::size_t n = family.size();
  std::vector<CartanFrames> frames(n);
  Verdict v = Verdict::Pass;
  bool frames_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    c.members.push_back(certify_loxodromic(family[i], r, eps));
    v = fold(v, c.members.back().verdict);
    if (c.reason.empty() && c.members.back().verdict != Verdict::Pass)
      c.reason = "member " + std::to_string(i) + ": " + c.members.back().reason;
    try {
      frames[i] = cartan_frames(family[i]);
    } catch (const GapError&) {
      frames_ok = false;
    }
  }
  if (!frames_ok) {
    c.verdict = Verdict::Fail;
    return c;
  }
  c.dist.assign(n, std::vector<double>(n));
  c.wedge_dist.assign(n, std::vector<double>(n));
  c.min_pair_dist = INFINITY;
  c.min_slack = INFINITY;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = hyperplane_distance(frames[i].attracting, frames[j].repelling_normal);
      const double w = hyperplane_distance(frames[i].wedge_attracting, frames[j].wedge_repelling_normal);
      c.dist[i][j] = d;
      c.wedge_dist[i][j] = w;
      c.min_pair_dist = std::min({c.min_pair_dist, d, w});
      c.min_slack = std::min({c.min_slack, d - 6.0 * r, w - 6.0 * r});
      const Verdict pv = combine({compare_strict(d, 6.0 * r), compare_strict(w, 6.0 * r)});
      if (c.reason.empty() && pv != Verdict::Pass)
        c.reason = "pair (" + std::to_string(i) + ", " + std::to_string(j) + ") not above 6r";
      v = fold(v, pv);
    }
  c.verdict = v;
  return c;
}

double NarrowCert::max_diam() const {
  return std::max({attracting_diam, repelling_diam, wedge_attracting_diam, wedge_repelling_diam});
}

NarrowCert certify_narrow(const std::vector<Mat3>& family, double eta, const std::optional<Mat3>& around) {
  if (!(eta > 0.0)) throw InputError("eta must be positive");
  if (family.empty()) throw InputError("family must be nonempty");
  NarrowCert c;
  c.eta = eta;
  std::vector<CartanFrames> frames;
  std::optional<CartanFrames> anchor;
  try {
    for (const Mat3& g : family) frames.push_back(cartan_frames(g));
    if (around) anchor = cartan_frames(*around);
  } catch (const GapError& e) {
    c.reason = std::string("frame undefined: ") + e.what();
    return c;
  }
  auto update = [&](const CartanFrames& a, const CartanFrames& b) {
    c.attracting_diam = std::max(c.attracting_diam, proj_distance(a.attracting, b.attracting));
    c.repelling_diam = std::max(c.repelling_diam, proj_distance(a.repelling_normal, b.repelling_normal));
    c.wedge_attracting_diam =
        std::max(c.wedge_attracting_diam, proj_distance(a.wedge_attracting, b.wedge_attracting));
    c.wedge_repelling_diam =
        std::max(c.wedge_repelling_diam, proj_distance(a.wedge_repelling_normal, b.wedge_repelling_normal));
  };
  if (anchor) {
    for (const auto& f : frames) update(f, *anchor);
  } else {
    for (std::size_t i = 0; i < frames.size(); ++i)
      for (std::size_t j = i + 1; j < frames.size(); ++j) update(frames[i], frames[j]);
  }
  c.narrow = c.max_diam() <= eta;
  if (!c.narrow) c.reason = "frames spread beyond eta";
  return c;
}

double cartan_additivity_defect(const std::vector<Mat3>& gs) {
  if (gs.empty()) throw InputError("additivity defect needs at least one matrix");
  Mat3 prod = gs[0];
  CartanVec sum = cartan(gs[0]);
  for (std::size_t i = 1; i < gs.size(); ++i) {
    prod = prod * gs[i];
    sum = sum + cartan(gs[i]);
  }
  return (cartan(prod) - sum).norm();
}

std::optional<SchottkyParameters> find_schottky_parameters(const std::vector<Mat3>& family, double ratio,
                                                           const ParameterGrid& grid) {
  if (!(grid.r_min > 0.0 && grid.r_min < grid.r_max && grid.eps_min > 0.0 && grid.eps_min < grid.eps_max &&
        grid.per_decade > 0))
    throw InputError("invalid parameter grid");
  auto points = [&](double lo, double hi) {
    std::vector<double> v;
    const double step = std::log(10.0) / grid.per_decade;
    for (double x = std::log(hi); x >= std::log(lo) - 1e-12; x -= step) v.push_back(std::exp(x));
    return v;
  };
  const std::vector<double> rs = points(grid.r_min, grid.r_max);  // descending
  std::vector<double> es = points(grid.eps_min, grid.eps_max);
  std::reverse(es.begin(), es.end());  // ascending
  for (double r : rs) {
    for (double e : es) {
      if (!(r > ratio * e)) break;
      SchottkyCert c = certify_schottky(family, r, e);
      if (c.verdict == Verdict::Pass) return SchottkyParameters{r, e, std::move(c)};
    }
  }
  return std::nullopt;
}

std::optional<Word> find_loxodromic_multiplier(const Mat3& g, double r, double eps, int max_length) {
  check_params(r, eps);
  if (max_length < 0 || max_length > 16) throw InputError("multiplier length must lie in [0, 16]");
  std::vector<Word> level{Word{}};
  for (int len = 0; len <= max_length; ++len) {
    for (const Word& f : level)
      if (certify_loxodromic(word_to_matrix(f) * g, r, eps).verdict == Verdict::Pass) return f;
    std::vector<Word> next;
    for (const Word& f : level)
      for (int s = 1; s <= 3; ++s) {
        Word w = f;
        w.push_back(s);
        next.push_back(std::move(w));
      }
    level = std::move(next);
  }
  return std::nullopt;
}

}  // namespace rauzy
