#include "rauzy/appendix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rauzy/error.hpp"
#include "rauzy/stats.hpp"

namespace rauzy {

namespace {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

Vec2 unit(double x, double y) {
  const double n = std::hypot(x, y);
  return {x / n, y / n};
}

double gap(const Vec2& a, const Vec2& b) { return std::abs(a.x * b.y - a.y * b.x); }

// Column data of a Gamma_0 element: images of e1 and e2 lie in the e1e2-plane.
struct EdgeColumns {
  double x1, y1, x2, y2;
};

EdgeColumns columns(const Entries& m) { return {m[0], m[3], m[1], m[4]}; }

double arc_length(const EdgeColumns& c) {
  return 1.0 / (std::hypot(c.x1, c.y1) * std::hypot(c.x2, c.y2));
}

EdgeWordData data_of(const NodeState& st) {
  const CartanVec k = st.cartan();
  EdgeWordData d;
  d.s1 = std::exp(k.k1);
  d.s2 = std::exp(k.k2);
  d.s3 = std::exp(k.k3);
  d.arc = arc_length(columns(st.m)) * std::exp(-2.0 * st.log_scale);
  d.phi32 = std::sqrt(d.s2) / (d.s1 * d.s1);
  return d;
}

void check_edge_word(const Word& w) {
  if (!w.uses_only(kEdgeAlphabet)) throw DomainError("edge-arc words may only use the symbols 1 and 2");
}

NodeState state_of(const Word& w) {
  NodeState st;
  for (std::size_t i = 0; i < w.size(); ++i) st.push(w[i]);
  return st;
}

}  // namespace

EdgeArc arc_of(const Word& w) {
  check_edge_word(w);
  const Mat3 g = word_to_matrix(w);
  const Vec3 a = g.scaled_column(0), b = g.scaled_column(1);
  EdgeArc arc;
  arc.word = w;
  arc.start = ProjPoint::from(a);
  arc.end = ProjPoint::from(b);
  const double na = std::hypot(a[0], a[1], a[2]), nb = std::hypot(b[0], b[1], b[2]);
  const double scale = std::exp(g.log_scale());
  arc.chordal_length = 1.0 / (na * scale * nb * scale);
  const double cx = a[1] * b[2] - a[2] * b[1], cy = a[2] * b[0] - a[0] * b[2], cz = a[0] * b[1] - a[1] * b[0];
  arc.wedge_length = std::hypot(cx, cy, cz) / (na * nb);
  arc.angular_length = std::asin(std::min(1.0, arc.chordal_length));
  return arc;
}

TilingReport tiling_check(int n, EnumOptions opts) {
  if (n < 0 || n > 24) throw InputError("tiling_check needs 0 <= n <= 24");
  struct Acc {
    bool any = false;
    Vec2 first_start, last_start, last_end;
    double max_gap = 0.0;
    KahanSum angular, chordal;
    std::uint64_t arcs = 0;
    bool ordered = true;

    void push(const Vec2& s, const Vec2& e, double chord) {
      if (any) {
        max_gap = std::max(max_gap, gap(last_end, s));
        // Along I the angle grows, i.e. the cross product of successive starts is positive.
        if (!(last_start.x * s.y - last_start.y * s.x > 0.0)) ordered = false;
      } else {
        first_start = s;
        any = true;
      }
      last_start = s;
      last_end = e;
      angular.add(std::asin(std::min(1.0, chord)));
      chordal.add(chord);
      ++arcs;
    }
    void merge(const Acc& o) {
      if (!o.any) return;
      if (any) {
        max_gap = std::max(max_gap, gap(last_end, o.first_start));
        if (!(last_start.x * o.first_start.y - last_start.y * o.first_start.x > 0.0)) ordered = false;
      } else {
        first_start = o.first_start;
        any = true;
      }
      last_start = o.last_start;
      last_end = o.last_end;
      max_gap = std::max(max_gap, o.max_gap);
      angular.merge(o.angular);
      chordal.merge(o.chordal);
      arcs += o.arcs;
      ordered = ordered && o.ordered;
    }
  };
  EnumFilter f;
  f.max_length = n;
  f.alphabet = kEdgeAlphabet;
  const Acc acc = enumerate(
      f, Acc{},
      [n](Acc& a, const Node& node) {
        if (node.length() != n) return;
        const EdgeColumns c = columns(node.state.m);
        const double chord = arc_length(c) * std::exp(-2.0 * node.state.log_scale);
        a.push(unit(c.x1, c.y1), unit(c.x2, c.y2), chord);
      },
      opts);
  TilingReport r;
  r.n = n;
  r.arcs = acc.arcs;
  r.max_endpoint_gap = std::max({acc.max_gap, gap(acc.first_start, {1.0, 0.0}), gap(acc.last_end, {0.0, 1.0})});
  r.angular_sum = acc.angular.value();
  r.chordal_sum = acc.chordal.value();
  r.ordered = acc.ordered;
  r.pass = r.ordered && r.max_endpoint_gap <= 1e-12 &&
           std::abs(r.angular_sum - std::numbers::pi / 2.0) <= 1e-9;
  return r;
}

EdgeWordData edge_word_data(const Word& w) {
  check_edge_word(w);
  return data_of(state_of(w));
}

namespace {

struct Extremum {
  double value = INFINITY;
  std::vector<std::uint8_t> word;

  void offer(double v, std::span<const std::uint8_t> w) {
    if (v > value) return;
    std::vector<std::uint8_t> cand(w.begin(), w.end());
    if (v < value || cand < word) {
      value = v;
      word = std::move(cand);
    }
  }
  void merge(const Extremum& o) {
    if (o.value < value || (o.value == value && o.word < word)) {
      value = o.value;
      word = o.word;
    }
  }
};

struct LevelStats {
  std::uint64_t count = 0;
  KahanSum phi;
  Extremum s2, ratio, phi_over_arc;

  void merge(const LevelStats& o) {
    count += o.count;
    phi.merge(o.phi);
    s2.merge(o.s2);
    ratio.merge(o.ratio);
    phi_over_arc.merge(o.phi_over_arc);
  }
};

struct LevelsAcc {
  std::vector<LevelStats> levels;
  void merge(const LevelsAcc& o) {
    for (std::size_t i = 0; i < levels.size(); ++i) levels[i].merge(o.levels[i]);
  }
};

LevelsAcc scan_levels(int depth, EnumOptions opts) {
  EnumFilter f;
  f.max_length = depth;
  f.alphabet = kEdgeAlphabet;
  f.last_n_digits_not_same = 2;
  LevelsAcc init;
  init.levels.resize(static_cast<std::size_t>(depth) + 1);
  return enumerate(
      f, init,
      [](LevelsAcc& a, const Node& node) {
        const EdgeWordData d = data_of(node.state);
        const double arc = d.arc;
        LevelStats& L = a.levels[static_cast<std::size_t>(node.length())];
        ++L.count;
        L.phi.add(d.phi32);
        L.s2.offer(d.s2, node.symbols);
        L.ratio.offer(1.0 / (d.s1 * d.s1) / arc, node.symbols);
        L.phi_over_arc.offer(d.phi32 / arc, node.symbols);
      },
      opts);
}

}  // namespace

LemmaA1Report lemma_a1_check(int depth, EnumOptions opts) {
  if (depth < 2) throw InputError("lemma_a1_check needs depth >= 2");
  if (depth > 26) throw ResourceError("lemma_a1_check depth above 26 is too expensive", std::pow(2.0, depth));
  const LevelsAcc acc = scan_levels(depth, opts);
  LemmaA1Report r;
  Extremum s2, ratio, phi_over_arc;
  for (int n = 2; n <= depth; ++n) {
    const LevelStats& L = acc.levels[static_cast<std::size_t>(n)];
    s2.merge(L.s2);
    ratio.merge(L.ratio);
    phi_over_arc.merge(L.phi_over_arc);
    r.words += L.count;
    r.levels.push_back({n, L.s2.value, L.ratio.value, std::min(s2.value, ratio.value)});
  }
  if (s2.value <= ratio.value) {
    r.eps_hat = s2.value;
    r.worst_word = Word::from_symbols(s2.word);
    r.worst_term = "s2";
  } else {
    r.eps_hat = ratio.value;
    r.worst_word = Word::from_symbols(ratio.word);
    r.worst_term = "arc";
  }
  r.min_phi_margin = phi_over_arc.value / (r.eps_hat * r.eps_hat) - 1.0;
  return r;
}

EvidenceReport lower_bound_evidence(int depth, EnumOptions opts) {
  if (depth < 6 || depth > 26) throw InputError("lower_bound_evidence needs 6 <= depth <= 26");
  const LevelsAcc acc = scan_levels(depth, opts);
  EvidenceReport r;
  KahanSum cum;
  double eps_s2 = INFINITY, eps_ratio = INFINITY;
  for (int n = 2; n <= depth; ++n) {
    const LevelStats& L = acc.levels[static_cast<std::size_t>(n)];
    cum.add(L.phi.value());
    eps_s2 = std::min(eps_s2, L.s2.value);
    eps_ratio = std::min(eps_ratio, L.ratio.value);
    r.levels.push_back({n, L.count, L.phi.value(), cum.value(), std::min(eps_s2, eps_ratio)});
  }
  r.strictly_increasing = true;
  for (std::size_t i = 1; i < r.levels.size(); ++i)
    if (!(r.levels[i].cumulative > r.levels[i - 1].cumulative)) r.strictly_increasing = false;
  std::vector<double> x, y;
  for (std::size_t i = r.levels.size() - 5; i < r.levels.size(); ++i) {
    x.push_back(r.levels[i].n);
    y.push_back(std::log(r.levels[i].level_sum));
  }
  r.tail_slope = fit_line(x, y).slope;
  return r;
}

std::string evidence_csv(const EvidenceReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "n,count,level_sum,cumulative,eps_hat\n";
  for (const auto& L : r.levels)
    os << L.n << ',' << L.count << ',' << L.level_sum << ',' << L.cumulative << ',' << L.eps_hat << '\n';
  return os.str();
}

}  // namespace rauzy
