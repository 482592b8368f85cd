#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rauzy/error.hpp"
#include "rauzy/gasket.hpp"
#include "rauzy/words.hpp"

using namespace rauzy;

namespace {

double vsum(const Vec3& v) { return v[0] + v[1] + v[2]; }

double dist(const Vec3& a, const Vec3& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

// Planar area from the isometric chart (shoelace), independent of the wedge route.
double shoelace(const ProjTriangle& t) {
  const auto a = plane_coords(t.vertices[0]), b = plane_coords(t.vertices[1]), c = plane_coords(t.vertices[2]);
  return 0.5 * std::abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

struct DiamBound {
  double worst = 0.0;  // max diam / (s2/s1)
  std::uint64_t words = 0;
  void merge(const DiamBound& o) {
    worst = std::max(worst, o.worst);
    words += o.words;
  }
};

std::array<unsigned char, 3> pixel(const std::string& ppm, int w, int col, int row) {
  // Header: "P6\n# ...\nW H\n255\n".
  std::size_t pos = 0;
  for (int lines = 0; lines < 4; ++lines) pos = ppm.find('\n', pos) + 1;
  const std::size_t at = pos + (static_cast<std::size_t>(row) * w + col) * 3;
  return {static_cast<unsigned char>(ppm[at]), static_cast<unsigned char>(ppm[at + 1]),
          static_cast<unsigned char>(ppm[at + 2])};
}

}  // namespace

TEST_SUITE("gasket") {
  TEST_CASE("image triangles") {
    const ProjTriangle t0 = triangle_of(Word{});
    CHECK(t0.vertices[0] == Vec3{1, 0, 0});
    CHECK(t0.vertices[1] == Vec3{0, 1, 0});
    CHECK(t0.vertices[2] == Vec3{0, 0, 1});
    const ProjTriangle t1 = triangle_of(Word::parse("1"));
    CHECK(t1.vertices[0] == Vec3{1, 0, 0});
    CHECK(t1.vertices[1] == Vec3{0.5, 0.5, 0});
    CHECK(t1.vertices[2] == Vec3{0.5, 0, 0.5});
    CHECK_THROWS_AS((void)to_simplex({0, 0, 0}), InputError);
  }

  TEST_CASE("property: nesting and normalization") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 1000; ++t) {
      const std::string w = oracle::random_word(rng, 0, 12), u = oracle::random_word(rng, 1, 12);
      const ProjTriangle outer = triangle_of(Word::parse(w));
      const ProjTriangle inner = triangle_of(Word::parse(w + u));
      for (const Vec3& v : inner.vertices) {
        CHECK(std::abs(vsum(v) - 1.0) <= 1e-12);
        CHECK(v[0] >= 0.0);
        CHECK(v[1] >= 0.0);
        CHECK(v[2] >= 0.0);
        CHECK(contains(outer, v, 1e-10));
      }
    }
  }

  TEST_CASE("diameters and areas") {
    const DiamArea d = diam_area(triangle_of(Word{}));
    CHECK(d.diam == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(d.area == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
    std::mt19937_64 rng(43);
    for (int t = 0; t < 1000; ++t) {
      const std::string w = oracle::random_word(rng, 0, 14);
      const ProjTriangle tri = triangle_of(Word::parse(w));
      const DiamArea da = diam_area(tri);
      // Area = (sqrt 3 / 2) / prod of exact column sums.
      const oracle::IMat m = oracle::exact_word(w);
      long double prod = 1;
      for (int j = 0; j < 3; ++j) prod *= static_cast<long double>(m[j] + m[3 + j] + m[6 + j]);
      CHECK(oracle::rel_close(da.area, std::sqrt(3.0L) / 2 / prod, 1e-9L));
      double diam = 0;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) diam = std::max(diam, dist(tri.vertices[i], tri.vertices[j]));
      CHECK(da.diam == doctest::Approx(diam).epsilon(1e-15));
      const DiamArea ch = diam_area(tri, Metric::Chordal);
      CHECK(ch.diam <= 1.0 + 1e-15);
      CHECK(ch.area == da.area);
    }
  }

  TEST_CASE("property: wedge area identity on random triangles") {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int bad = 0;
    for (int t = 0; t < 2000; ++t) {
      ProjTriangle tri;
      for (Vec3& v : tri.vertices) v = to_simplex({u(rng), u(rng), u(rng)});
      if (!oracle::rel_close(wedge_area(tri), shoelace(tri), 1e-10L)) ++bad;
    }
    CHECK(bad == 0);
  }

  TEST_CASE("column-norm constant") {
    const EpsilonEstimate e2 = estimate_epsilon_n(2, 12);
    CHECK(e2.epsilon > 0.0);
    CHECK(e2.words_checked > 0);
    double prev = 1.0;
    for (int depth = 2; depth <= 11; ++depth) {
      const double e = estimate_epsilon_n(2, depth).epsilon;
      CHECK(e <= prev);
      prev = e;
    }
    CHECK(e2.epsilon <= prev);
    // "12" = [[2,1,2],[1,1,1],[0,0,1]]: column norms sqrt5, sqrt2, sqrt6.
    const auto sv = oracle::jacobi_singular_values(oracle::to_long(oracle::exact_word("12")));
    CHECK(column_norm_ratio(word_to_matrix(Word::parse("12"))) ==
          doctest::Approx(static_cast<double>(std::sqrt(2.0L) / sv[0])).epsilon(1e-13));
    CHECK_THROWS_AS((void)estimate_epsilon_n(1, 5), InputError);
    CHECK_THROWS_AS((void)estimate_epsilon_n(3, 2), InputError);
  }

  TEST_CASE("property: diameter bound with the empirical column-norm constant") {
    const double eps2 = estimate_epsilon_n(2, 12).epsilon;
    const double c = 1.0 / (eps2 * eps2);
    EnumFilter f;
    f.max_length = 12;
    f.last_n_digits_not_same = 2;
    const DiamBound b = enumerate(f, DiamBound{}, [](DiamBound& acc, const Node& n) {
      const CartanVec k = n.cartan();
      const double ratio = std::exp(k.k2 - k.k1);
      acc.worst = std::max(acc.worst, n.state.triangle_diameter() / ratio);
      ++acc.words;
    });
    CHECK(b.words > 100000);
    CHECK(b.worst <= c);
  }

  TEST_CASE("adaptive covers") {
    CoverOptions keep;
    keep.collect_leaves = true;
    const CoverReport r1 = adaptive_cover(1.0, 1.5, keep);
    CHECK(r1.triangles > 1);
    std::uint64_t repeated = 0;
    for (const CoverLeaf& l : r1.leaves) {
      ProjTriangle t{l.vertices, l.word};
      CHECK(diam_area(t).diam <= 1.0);
      // Either the last two symbols differ, or the word ends in a constant run
      // of exactly the cap length.
      if (!l.word.last_n_not_same(2)) {
        ++repeated;
        const std::string w = l.word.str();
        const std::string run(static_cast<std::size_t>(keep.max_tail_run), w.back());
        CHECK(w.size() >= run.size());
        CHECK(w.compare(w.size() - run.size(), run.size(), run) == 0);
        CHECK((w.size() == run.size() || w[w.size() - run.size() - 1] != w.back()));
      }
    }
    CHECK(repeated == r1.repeated_tail);
    CHECK(repeated < r1.triangles);
    // Cost recomputed from the leaves, and monotone in s.
    const CoverReport r = adaptive_cover(0.05, 1.5, keep);
    double prev = 1e300;
    for (double s : {1.05, 1.25, 1.5, 1.75, 2.0}) {
      double cost = 0.0;
      for (const CoverLeaf& l : r.leaves) {
        const DiamArea da = diam_area(ProjTriangle{l.vertices, l.word});
        cost += std::pow(da.diam, 2.0 - s) * std::pow(da.area, s - 1.0);
      }
      CHECK(cost <= prev);
      prev = cost;
      CHECK(adaptive_cover(0.05, s).cost == doctest::Approx(cost).epsilon(1e-9));
    }
    CHECK(std::is_sorted(r.leaves.begin(), r.leaves.end(),
                         [](const CoverLeaf& a, const CoverLeaf& b) { return a.word < b.word; }));
    CHECK_THROWS_AS((void)adaptive_cover(0.0, 1.5), InputError);
    CoverOptions tiny;
    tiny.max_leaves = 100;
    CHECK_THROWS_AS((void)adaptive_cover(1e-3, 1.5, tiny), ResourceError);
  }

  TEST_CASE("property: covers contain deep coding points") {
    CoverOptions keep;
    keep.collect_leaves = true;
    const CoverReport r = adaptive_cover(0.1, 1.7, keep);
    std::mt19937_64 rng(47);
    for (int t = 0; t < 300; ++t) {
      const std::string w = oracle::random_word(rng, 20, 20);
      const ProjTriangle deep = triangle_of(Word::parse(w));
      const Vec3 p{(deep.vertices[0][0] + deep.vertices[1][0] + deep.vertices[2][0]) / 3,
                   (deep.vertices[0][1] + deep.vertices[1][1] + deep.vertices[2][1]) / 3,
                   (deep.vertices[0][2] + deep.vertices[1][2] + deep.vertices[2][2]) / 3};
      bool covered = false;
      for (const CoverLeaf& l : r.leaves) covered = covered || contains(ProjTriangle{l.vertices, l.word}, p, 1e-10);
      CHECK_MESSAGE(covered, w);
    }
  }

  TEST_CASE("property: cover leaves do not depend on the thread count") {
    CoverOptions o;
    o.collect_leaves = true;
    o.enumeration.threads = 1;
    const CoverReport a = adaptive_cover(0.02, 1.7, o);
    for (unsigned t : {3u, 8u}) {
      o.enumeration.threads = t;
      const CoverReport b = adaptive_cover(0.02, 1.7, o);
      REQUIRE(a.leaves.size() == b.leaves.size());
      bool same = true;
      for (std::size_t i = 0; i < a.leaves.size(); ++i) same = same && a.leaves[i].word == b.leaves[i].word;
      CHECK(same);
      CHECK(a.cost == b.cost);
      CHECK(a.boxes == b.boxes);
    }
  }

  TEST_CASE("box counting on coarse scales") {
    std::vector<double> deltas;
    for (int k = 2; k <= 7; ++k) deltas.push_back(std::ldexp(1.0, -k));
    const BoxCountResult b = box_count_dimension(deltas);
    REQUIRE(b.counts.size() == deltas.size());
    for (std::size_t i = 1; i < b.counts.size(); ++i) CHECK(b.counts[i] >= b.counts[i - 1]);
    for (std::size_t i = 0; i < b.counts.size(); ++i) CHECK(static_cast<double>(b.counts[i]) * deltas[i] >= 1.0);
    CHECK(b.slope > 1.0);
    CHECK(b.slope < 2.0);
    CHECK_THROWS_AS((void)box_count_dimension({0.5, 0.25, 0.125}), InputError);
    CHECK_THROWS_AS((void)box_count_dimension({0.5, 0.25, 0.3, 0.1}), InputError);
  }

  TEST_CASE("sample points and the planar chart") {
    const ProjTriangle t = triangle_of(Word::parse("2131"));
    for (const Vec3& p : sample_points(t.vertices)) CHECK(contains(t, p, 1e-12));
    std::mt19937_64 rng(53);
    for (int i = 0; i < 200; ++i) {
      const Vec3 a = to_simplex({std::abs(oracle::random_unit(rng)[0]), 0.3, 0.2});
      const Vec3 b = to_simplex({0.1, std::abs(oracle::random_unit(rng)[1]), 0.7});
      const auto pa = plane_coords(a), pb = plane_coords(b);
      CHECK(std::hypot(pa[0] - pb[0], pa[1] - pb[1]) == doctest::Approx(dist(a, b)).epsilon(1e-12));
    }
  }

  TEST_CASE("coding points") {
    double prev = 10.0;
    for (int k : {1, 2, 4, 8, 16}) {
      const CodingPoint c = coding_point(Word{}, k);
      CHECK(c.error_bound < prev);
      prev = c.error_bound;
      CHECK(contains(triangle_of(Word{}), c.point, 1e-12));
    }
    CHECK(prev < 1e-3);
    const CodingPoint e1 = coding_point(Word::repeat(Word::parse("1"), 4000), 0);
    CHECK(e1.point[0] > 0.999);
    const CodingPoint p = coding_point(Word::parse("2"), 6);
    CHECK(contains(triangle_of(Word::parse("2")), p.point, 1e-12));
  }

  TEST_CASE("rendering") {
    RenderOptions o;
    o.width = 101;
    o.height = 88;
    const std::string img = render_ppm(depth_triangles(1), o);
    CHECK(img.rfind("P6\n", 0) == 0);
    CHECK(img.find("# simplex") != std::string::npos);
    CHECK(img == render_ppm(depth_triangles(1), o));
    // E1 at the top centre, E2 bottom-left, E3 bottom-right; the centre is empty.
    const auto top = pixel(img, 101, 50, 2), left = pixel(img, 101, 2, 86), right = pixel(img, 101, 98, 86);
    const auto mid = pixel(img, 101, 50, 58);
    CHECK(top[0] > top[2]);
    CHECK(left[1] > left[0]);
    CHECK(right[2] > right[0]);
    CHECK(mid == std::array<unsigned char, 3>{255, 255, 255});
    o.width = 1;
    CHECK_THROWS_AS((void)render_ppm({}, o), InputError);
    o.width = 20000;
    CHECK_THROWS_AS((void)render_ppm({}, o), InputError);
    CHECK_THROWS_AS((void)depth_triangles(15), ResourceError);
  }
}
