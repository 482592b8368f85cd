#include "rauzy/gasket.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>

#include "rauzy/error.hpp"
#include "rauzy/stats.hpp"

namespace rauzy {

namespace {

double dist(const Vec3& a, const Vec3& b) {
  const double u = a[0] - b[0], v = a[1] - b[1], w = a[2] - b[2];
  return std::sqrt(u * u + v * v + w * w);
}

Vec3 mid(const Vec3& a, const Vec3& b) {
  return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])};
}

NodeState state_of(const Word& w) {
  NodeState st;
  for (std::size_t i = 0; i < w.size(); ++i) st.push(w[i]);
  return st;
}

std::array<Vec3, 3> vertices_of(const NodeState& st) {
  return {st.vertex(0), st.vertex(1), st.vertex(2)};
}

double planar_area(const std::array<Vec3, 3>& v) {
  const Vec3 a{v[1][0] - v[0][0], v[1][1] - v[0][1], v[1][2] - v[0][2]};
  const Vec3 b{v[2][0] - v[0][0], v[2][1] - v[0][1], v[2][2] - v[0][2]};
  const double x = a[1] * b[2] - a[2] * b[1];
  const double y = a[2] * b[0] - a[0] * b[2];
  const double z = a[0] * b[1] - a[1] * b[0];
  return 0.5 * std::sqrt(x * x + y * y + z * z);
}

double triangle_diam(const std::array<Vec3, 3>& v) {
  return std::max({dist(v[0], v[1]), dist(v[0], v[2]), dist(v[1], v[2])});
}

// Grid cell of side delta in the plane chart, packed into one key.
std::uint64_t cell_key(const Vec3& p, double delta) {
  const auto c = plane_coords(p);
  const auto ix = static_cast<std::uint64_t>(std::floor((c[0] + 1.0) / delta));
  const auto iy = static_cast<std::uint64_t>(std::floor((c[1] + 1.0) / delta));
  return (ix << 32) | iy;
}

struct CellSet {
  std::vector<std::uint64_t> keys;
  std::size_t compacted = 0;

  void compact() {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    compacted = keys.size();
  }
  void maybe_compact() {
    if (keys.size() > (1u << 20) && keys.size() > 2 * compacted) compact();
  }
  void add_triangle(const std::array<Vec3, 3>& v, double delta) {
    for (const Vec3& p : sample_points(v)) keys.push_back(cell_key(p, delta));
    maybe_compact();
  }
  void merge(const CellSet& o) {
    keys.insert(keys.end(), o.keys.begin(), o.keys.end());
    maybe_compact();
  }
};

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 2.0)) throw InputError("delta must lie in (0, 2)");
}

class LeafBudget {
 public:
  explicit LeafBudget(double cap) : cap_(cap) {}
  void take() {
    if (static_cast<double>(++count_) > cap_)
      throw ResourceError("cover exceeds the leaf budget of " + std::to_string(cap_) +
                              " triangles; use a larger delta",
                          cap_);
  }

 private:
  double cap_;
  std::atomic<std::uint64_t> count_{0};
};

}  // namespace

Vec3 to_simplex(const Vec3& v) {
  const double s = v[0] + v[1] + v[2];
  if (!(v[0] >= 0.0 && v[1] >= 0.0 && v[2] >= 0.0 && s > 0.0))
    throw InputError("simplex points need nonnegative coordinates with positive sum");
  return {v[0] / s, v[1] / s, v[2] / s};
}

ProjTriangle triangle_of(const Word& w) { return {vertices_of(state_of(w)), w}; }

DiamArea diam_area(const ProjTriangle& t, Metric metric) {
  DiamArea r;
  r.area = planar_area(t.vertices);
  if (metric == Metric::Euclidean) {
    r.diam = triangle_diam(t.vertices);
  } else {
    const auto p0 = ProjPoint::from(t.vertices[0]), p1 = ProjPoint::from(t.vertices[1]),
               p2 = ProjPoint::from(t.vertices[2]);
    r.diam = std::max({proj_distance(p0, p1), proj_distance(p0, p2), proj_distance(p1, p2)});
  }
  return r;
}

double wedge_area(const ProjTriangle& t) {
  const auto& v = t.vertices;
  const double det = v[0][0] * (v[1][1] * v[2][2] - v[1][2] * v[2][1]) -
                     v[1][0] * (v[0][1] * v[2][2] - v[0][2] * v[2][1]) +
                     v[2][0] * (v[0][1] * v[1][2] - v[0][2] * v[1][1]);
  return std::abs(det) * kSqrt3 / 2.0;
}

bool contains(const ProjTriangle& t, const Vec3& p, double slack) {
  const auto a = plane_coords(t.vertices[0]), b = plane_coords(t.vertices[1]),
             c = plane_coords(t.vertices[2]), q = plane_coords(p);
  auto edge = [](const std::array<double, 2>& u, const std::array<double, 2>& v,
                 const std::array<double, 2>& w) {
    return (v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0]);
  };
  const double orient = edge(a, b, c);
  const double d0 = edge(a, b, q), d1 = edge(b, c, q), d2 = edge(c, a, q);
  const double scale = std::max(std::abs(orient), 1e-300);
  if (orient >= 0.0) return d0 >= -slack * scale && d1 >= -slack * scale && d2 >= -slack * scale;
  return d0 <= slack * scale && d1 <= slack * scale && d2 <= slack * scale;
}

double column_norm_ratio(const Mat3& g) {
  const Entries& m = g.mantissa();
  double best = INFINITY;
  for (int j = 0; j < 3; ++j) {
    const Vec3 c = g.scaled_column(j);
    best = std::min(best, std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]));
  }
  return best / top_singular_value(m);
}

EpsilonEstimate estimate_epsilon_n(int n, int depth, EnumOptions opts) {
  if (n < 2) throw InputError("epsilon_n needs n >= 2");
  if (depth < n) throw InputError("epsilon_n needs depth >= n");
  if (depth > 20) throw ResourceError("epsilon_n depth above 20 is too expensive", std::pow(3.0, depth));
  struct Acc {
    double eps = INFINITY;
    std::vector<std::uint8_t> word;
    std::uint64_t checked = 0;
    void merge(const Acc& o) {
      checked += o.checked;
      if (o.eps < eps || (o.eps == eps && o.word < word)) {
        eps = o.eps;
        word = o.word;
      }
    }
  };
  EnumFilter f;
  f.max_length = depth;
  f.last_n_digits_not_same = n;
  const Acc acc = enumerate(
      f, Acc{},
      [](Acc& a, const Node& node) {
        ++a.checked;
        const Entries& m = node.state.m;
        double cmin = INFINITY;
        for (int j = 0; j < 3; ++j) {
          const double x = m[static_cast<std::size_t>(j)], y = m[static_cast<std::size_t>(3 + j)],
                       z = m[static_cast<std::size_t>(6 + j)];
          cmin = std::min(cmin, std::sqrt(x * x + y * y + z * z));
        }
        const double e = cmin / top_singular_value(m);
        if (e > a.eps) return;
        std::vector<std::uint8_t> w(node.symbols.begin(), node.symbols.end());
        if (e < a.eps || w < a.word) {
          a.eps = e;
          a.word = std::move(w);
        }
      },
      opts);
  EpsilonEstimate r;
  r.epsilon = acc.eps;
  r.attained_by = Word::from_symbols(acc.word);
  r.depth_attained = static_cast<int>(acc.word.size());
  r.words_checked = acc.checked;
  return r;
}

std::array<double, 2> plane_coords(const Vec3& p) {
  static const double r2 = std::sqrt(2.0), r6 = std::sqrt(6.0);
  return {(p[0] - p[1]) / r2, (p[0] + p[1] - 2.0 * p[2]) / r6};
}

std::array<Vec3, 13> sample_points(const std::array<Vec3, 3>& v) {
  const Vec3 g{(v[0][0] + v[1][0] + v[2][0]) / 3.0, (v[0][1] + v[1][1] + v[2][1]) / 3.0,
               (v[0][2] + v[1][2] + v[2][2]) / 3.0};
  std::array<Vec3, 13> out;
  out[0] = v[0];
  out[1] = v[1];
  out[2] = v[2];
  out[3] = mid(v[0], v[1]);
  out[4] = mid(v[1], v[2]);
  out[5] = mid(v[0], v[2]);
  out[6] = g;
  for (int i = 0; i < 6; ++i) out[static_cast<std::size_t>(7 + i)] = mid(g, out[static_cast<std::size_t>(i)]);
  return out;
}

CoverReport adaptive_cover(double delta, double s, const CoverOptions& opts) {
  check_delta(delta);
  if (!(s > 0.0 && s <= 2.0)) throw DomainError("cover cost needs s in (0, 2]");
  struct Acc {
    KahanSum cost;
    std::uint64_t leaves = 0;
    std::uint64_t repeated = 0;
    CellSet cells;
    std::vector<CoverLeaf> collected;
    void merge(const Acc& o) {
      cost.merge(o.cost);
      leaves += o.leaves;
      repeated += o.repeated;
      cells.merge(o.cells);
      collected.insert(collected.end(), o.collected.begin(), o.collected.end());
    }
  };
  EnumFilter f;
  f.diam_ceiling = delta;
  f.max_length = opts.max_length;
  f.leaf_requires_distinct_tail = opts.distinct_tail;
  f.max_tail_run = opts.max_tail_run;
  LeafBudget budget(opts.max_leaves);
  EnumStats stats;
  Acc acc = enumerate(
      f, Acc{},
      [&](Acc& a, const Node& node) {
        budget.take();
        const auto v = vertices_of(node.state);
        const double d = triangle_diam(v);
        const double term = s > 1.0 ? std::pow(d, 2.0 - s) * std::pow(planar_area(v), s - 1.0)
                                    : std::pow(d, s);
        a.cost.add(term);
        ++a.leaves;
        if (node.length() >= 2 && !node.last_two_distinct()) ++a.repeated;
        a.cells.add_triangle(v, delta);
        if (opts.collect_leaves) a.collected.push_back({node.word(), v});
      },
      opts.enumeration, &stats);
  acc.cells.compact();
  CoverReport r;
  r.delta = delta;
  r.s = s;
  r.triangles = acc.leaves;
  r.cost = acc.cost.value();
  r.boxes = acc.cells.keys.size();
  r.truncated = stats.truncated;
  r.repeated_tail = acc.repeated;
  r.max_depth = stats.max_depth;
  r.leaves = std::move(acc.collected);
  std::sort(r.leaves.begin(), r.leaves.end(),
            [](const CoverLeaf& a, const CoverLeaf& b) { return a.word < b.word; });
  return r;
}

BoxCountResult box_count_dimension(const std::vector<double>& deltas, const BoxCountOptions& opts) {
  if (deltas.size() < 4) throw InputError("box counting needs at least four scales");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    check_delta(deltas[i]);
    if (i > 0 && !(deltas[i] < deltas[i - 1])) throw InputError("box-counting scales must strictly decrease");
  }
  if (!(opts.leaf_fraction > 0.0 && opts.leaf_fraction <= 1.0))
    throw InputError("leaf_fraction must lie in (0, 1]");

  BoxCountResult r;
  r.deltas = deltas;
  std::vector<double> x, y;
  for (double delta : deltas) {
    struct Acc {
      CellSet cells;
      std::uint64_t leaves = 0;
      void merge(const Acc& o) {
        cells.merge(o.cells);
        leaves += o.leaves;
      }
    };
    EnumFilter f;
    f.diam_ceiling = opts.leaf_fraction * delta;
    LeafBudget budget(opts.max_leaves);
    Acc acc = enumerate(
        f, Acc{},
        [&](Acc& a, const Node& node) {
          budget.take();
          ++a.leaves;
          a.cells.add_triangle(vertices_of(node.state), delta);
        },
        opts.enumeration);
    acc.cells.compact();
    r.counts.push_back(acc.cells.keys.size());
    r.leaves.push_back(acc.leaves);
    x.push_back(std::log(1.0 / delta));
    y.push_back(std::log(static_cast<double>(acc.cells.keys.size())));
  }
  const LineFit fit = fit_line(x, y);
  r.slope = fit.slope;
  r.r2 = fit.r2;
  r.slope_stderr = fit.slope_stderr;
  return r;
}

CodingPoint coding_point(const Word& prefix, int tail_iterations) {
  if (tail_iterations < 0) throw InputError("tail_iterations must be nonnegative");
  NodeState st = state_of(prefix);
  for (int k = 0; k < tail_iterations; ++k)
    for (int sym = 1; sym <= 3; ++sym) st.push(sym);
  const auto v = vertices_of(st);
  CodingPoint c;
  c.point = {(v[0][0] + v[1][0] + v[2][0]) / 3.0, (v[0][1] + v[1][1] + v[2][1]) / 3.0,
             (v[0][2] + v[1][2] + v[2][2]) / 3.0};
  c.line = ProjPoint::from(c.point);
  c.error_bound = triangle_diam(v);
  return c;
}

std::vector<CoverLeaf> depth_triangles(int depth, EnumOptions opts) {
  if (depth < 0) throw InputError("depth must be nonnegative");
  if (depth > 14) throw ResourceError("rendering depth above 14 is too expensive", std::pow(3.0, depth));
  struct Acc {
    std::vector<CoverLeaf> out;
    void merge(const Acc& o) { out.insert(out.end(), o.out.begin(), o.out.end()); }
  };
  EnumFilter f;
  f.max_length = depth;
  Acc acc = enumerate(
      f, Acc{},
      [depth](Acc& a, const Node& node) {
        if (node.length() == depth) a.out.push_back({node.word(), vertices_of(node.state)});
      },
      opts);
  std::sort(acc.out.begin(), acc.out.end(),
            [](const CoverLeaf& a, const CoverLeaf& b) { return a.word < b.word; });
  return std::move(acc.out);
}

std::string render_ppm(const std::vector<CoverLeaf>& triangles, const RenderOptions& opts) {
  const int w = opts.width;
  const int h = opts.height > 0 ? opts.height : static_cast<int>(std::lround(opts.width * kSqrt3 / 2.0));
  if (w < 2 || h < 2 || w > 16384 || h > 16384) throw InputError("image size must lie in [2, 16384]");

  static constexpr unsigned char kColors[4][3] = {
      {90, 90, 90}, {196, 58, 52}, {52, 150, 70}, {48, 84, 190}};
  std::vector<unsigned char> px(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, 255);

  auto to_px = [&](const Vec3& p) -> std::array<double, 2> {
    return {(p[0] / 2.0 + p[2]) * (w - 1), (1.0 - p[0]) * (h - 1)};
  };
  auto put = [&](int c, int r, const unsigned char* col) {
    if (c < 0 || r < 0 || c >= w || r >= h) return;
    unsigned char* q = &px[(static_cast<std::size_t>(r) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c)) * 3];
    q[0] = col[0];
    q[1] = col[1];
    q[2] = col[2];
  };

  for (const CoverLeaf& t : triangles) {
    const unsigned char* col = kColors[t.word.empty() ? 0 : t.word.back()];
    const auto a = to_px(t.vertices[0]), b = to_px(t.vertices[1]), c = to_px(t.vertices[2]);
    const double area2 = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    const int c0 = std::max(0, static_cast<int>(std::floor(std::min({a[0], b[0], c[0]}))));
    const int c1 = std::min(w - 1, static_cast<int>(std::ceil(std::max({a[0], b[0], c[0]}))));
    const int r0 = std::max(0, static_cast<int>(std::floor(std::min({a[1], b[1], c[1]}))));
    const int r1 = std::min(h - 1, static_cast<int>(std::ceil(std::max({a[1], b[1], c[1]}))));
    bool drawn = false;
    if (std::abs(area2) > 0.0) {
      const double sgn = area2 > 0.0 ? 1.0 : -1.0;
      for (int r = r0; r <= r1; ++r) {
        for (int cc = c0; cc <= c1; ++cc) {
          const double x = cc, y = r;
          const double e0 = sgn * ((b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]));
          const double e1 = sgn * ((c[0] - b[0]) * (y - b[1]) - (c[1] - b[1]) * (x - b[0]));
          const double e2 = sgn * ((a[0] - c[0]) * (y - c[1]) - (a[1] - c[1]) * (x - c[0]));
          if (e0 >= 0.0 && e1 >= 0.0 && e2 >= 0.0) {
            put(cc, r, col);
            drawn = true;
          }
        }
      }
    }
    // Sub-pixel triangles still mark the pixel containing their barycenter.
    if (!drawn)
      put(static_cast<int>(std::lround((a[0] + b[0] + c[0]) / 3.0)),
          static_cast<int>(std::lround((a[1] + b[1] + c[1]) / 3.0)), col);
  }

  std::string out = "P6\n# simplex (x,y,z) -> (col,row) = ((x/2+z)(W-1), (1-x)(H-1))\n" +
                    std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  out.append(reinterpret_cast<const char*>(px.data()), px.size());
  return out;
}

void write_file(const std::filesystem::path& out, const std::string& bytes) {
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InputError("cannot open " + out.string() + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw InputError("failed writing " + out.string());
}

}  // namespace rauzy
