#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "rauzy/appendix.hpp"
#include "rauzy/error.hpp"

using namespace rauzy;

namespace {

// Columns gamma e1, gamma e2 of an exact edge word; both lie in the e1e2-plane.
struct ExactColumns {
  oracle::I128 x1, y1, x2, y2;
};

ExactColumns columns(const std::string& w) {
  const oracle::IMat m = oracle::exact_word(w);
  return {m[0], m[3], m[1], m[4]};
}

long double norm2(oracle::I128 x, oracle::I128 y) {
  const long double a = static_cast<long double>(x), b = static_cast<long double>(y);
  return std::sqrt(a * a + b * b);
}

std::vector<std::string> edge_words(int len) {
  std::vector<std::string> out;
  for (const std::string& w : oracle::all_words(len, "12"))
    if (static_cast<int>(w.size()) == len) out.push_back(w);
  return out;
}

bool distinct_tail(const std::string& w) { return w.size() >= 2 && w[w.size() - 1] != w[w.size() - 2]; }

}  // namespace

TEST_SUITE("appendix") {
  TEST_CASE("edge arcs of short words") {
    const EdgeArc e = arc_of(Word{});
    CHECK(e.chordal_length == 1.0);
    CHECK(e.angular_length == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(e.start.v == Vec3{1, 0, 0});
    CHECK(e.end.v == Vec3{0, 1, 0});
    const double r = 1 / std::sqrt(2.0);
    const EdgeArc a1 = arc_of(Word::parse("1"));
    CHECK(a1.chordal_length == doctest::Approx(r).epsilon(1e-15));
    CHECK(a1.wedge_length == doctest::Approx(r).epsilon(1e-15));
    CHECK(a1.start.v[0] == doctest::Approx(1.0));
    CHECK(a1.end.v[0] == doctest::Approx(r));
    CHECK(a1.end.v[1] == doctest::Approx(r));
    const EdgeArc a2 = arc_of(Word::parse("2"));
    CHECK(a2.chordal_length == doctest::Approx(r).epsilon(1e-15));
    CHECK(a2.start.v[0] == doctest::Approx(r));
    CHECK(a2.end.v[1] == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)arc_of(Word::parse("13")), DomainError);
    CHECK_THROWS_AS((void)edge_word_data(Word::parse("3")), DomainError);
  }

  TEST_CASE("property: arc lengths match the exact column oracle") {
    std::mt19937_64 rng(89);
    std::vector<std::string> ws = oracle::all_words(12, "12");
    for (int t = 0; t < 2000; ++t) ws.push_back(oracle::random_word(rng, 13, 20, "12"));
    int bad = 0;
    for (const std::string& w : ws) {
      const EdgeArc a = arc_of(Word::parse(w));
      const ExactColumns c = columns(w);
      // The 2x2 restriction has determinant 1, so |gamma e1 ^ gamma e2| = 1.
      if (c.x1 * c.y2 - c.x2 * c.y1 != 1) ++bad;
      const long double want = 1.0L / (norm2(c.x1, c.y1) * norm2(c.x2, c.y2));
      if (!oracle::rel_close(a.chordal_length, want, 1e-12L)) ++bad;
      if (!oracle::rel_close(a.wedge_length, a.chordal_length, 1e-12L)) ++bad;
      if (std::abs(a.angular_length - std::asin(a.chordal_length)) > 1e-15) ++bad;
      if (!(a.chordal_length > 0.0 && a.chordal_length <= 1.0)) ++bad;
      for (const ProjPoint& p : {a.start, a.end})
        if (p.v[0] < 0.0 || p.v[1] < 0.0 || p.v[2] != 0.0) ++bad;
    }
    CHECK(bad == 0);
  }

  TEST_CASE("tiling of the edge arc") {
    const TilingReport t1 = tiling_check(1);
    CHECK(t1.pass);
    CHECK(t1.arcs == 2);
    CHECK(t1.chordal_sum == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(t1.angular_sum == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    for (int n = 0; n <= 12; ++n) {
      const TilingReport t = tiling_check(n);
      CHECK(t.pass);
      CHECK(t.ordered);
      CHECK(t.arcs == (1ull << n));
      CHECK(t.max_endpoint_gap < 1e-12);
      CHECK(std::abs(t.angular_sum - std::numbers::pi / 2) < 1e-9);
      if (n >= 1) CHECK(t.chordal_sum > 1.0);
    }
    CHECK_THROWS_AS((void)tiling_check(25), InputError);
  }

  TEST_CASE("brute-force tiling oracle: sort and compare exact endpoints") {
    for (int n : {4, 9}) {
      struct Arc {
        long double a0, a1;
      };
      std::vector<Arc> arcs;
      for (const std::string& w : edge_words(n)) {
        const ExactColumns c = columns(w);
        arcs.push_back({std::atan2(static_cast<long double>(c.y1), static_cast<long double>(c.x1)),
                        std::atan2(static_cast<long double>(c.y2), static_cast<long double>(c.x2))});
      }
      std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.a0 < b.a0; });
      CHECK(std::abs(arcs.front().a0) < 1e-15L);
      CHECK(std::abs(arcs.back().a1 - std::numbers::pi_v<long double> / 2) < 1e-15L);
      long double worst = 0;
      for (std::size_t i = 1; i < arcs.size(); ++i) worst = std::max(worst, std::abs(arcs[i].a0 - arcs[i - 1].a1));
      CHECK(worst < 1e-15L);
      CHECK(tiling_check(n).pass);
    }
  }

  TEST_CASE("property: level n+1 endpoints refine level n by mediants") {
    for (int n = 1; n <= 10; ++n) {
      using P = std::pair<long long, long long>;
      std::set<P> level, next, expected;
      for (const std::string& w : edge_words(n)) {
        const ExactColumns c = columns(w);
        level.insert({static_cast<long long>(c.x1), static_cast<long long>(c.y1)});
        level.insert({static_cast<long long>(c.x2), static_cast<long long>(c.y2)});
        expected.insert({static_cast<long long>(c.x1 + c.x2), static_cast<long long>(c.y1 + c.y2)});
      }
      for (const std::string& w : edge_words(n + 1)) {
        const ExactColumns c = columns(w);
        next.insert({static_cast<long long>(c.x1), static_cast<long long>(c.y1)});
        next.insert({static_cast<long long>(c.x2), static_cast<long long>(c.y2)});
      }
      CHECK(level.size() == (1ull << n) + 1);
      CHECK(next.size() == level.size() + (1ull << n));  // one new endpoint per arc
      for (const P& p : expected) level.insert(p);
      CHECK(level == next);
    }
  }

  TEST_CASE("property: singular values of edge words") {
    std::mt19937_64 rng(97);
    int bad = 0;
    for (int t = 0; t < 3000; ++t) {
      const std::string w = oracle::random_word(rng, 1, 16, "12");
      const EdgeWordData d = edge_word_data(Word::parse(w));
      const auto sv = oracle::jacobi_singular_values(oracle::to_long(oracle::exact_word(w)));
      if (!oracle::rel_close(d.s1, sv[0], 1e-10L) || !oracle::rel_close(d.s2, sv[1], 1e-10L)) ++bad;
      if (!oracle::rel_close(d.s3, 1.0L / (static_cast<long double>(d.s1) * d.s2), 1e-10L)) ++bad;
      if (!oracle::rel_close(d.phi32, std::sqrt(sv[1]) / (sv[0] * sv[0]), 1e-10L)) ++bad;
      if (!oracle::rel_close(d.arc, arc_of(Word::parse(w)).chordal_length, 1e-15L)) ++bad;
    }
    CHECK(bad == 0);
  }

  TEST_CASE("uniform lower bounds on the edge semigroup") {
    const LemmaA1Report r = lemma_a1_check(12);
    CHECK(r.eps_hat > 0.0);
    CHECK(r.words == (1ull << 12) - 2);  // half of the words of length 2..12
    CHECK(distinct_tail(r.worst_word.str()));
    CHECK((r.worst_term == "s2" || r.worst_term == "arc"));
    CHECK(r.min_phi_margin >= 0.0);
    REQUIRE(r.levels.size() == 11);
    for (std::size_t i = 1; i < r.levels.size(); ++i) CHECK(r.levels[i].eps_hat <= r.levels[i - 1].eps_hat);
    CHECK(r.levels.back().eps_hat == r.eps_hat);
    CHECK(lemma_a1_check(8).eps_hat >= r.eps_hat);
    CHECK_THROWS_AS((void)lemma_a1_check(1), InputError);
    CHECK_THROWS_AS((void)lemma_a1_check(27), ResourceError);

    // Independent brute force with Jacobi singular values and exact columns.
    long double want = 1e300L;
    int violations = 0;
    for (const std::string& w : oracle::all_words(12, "12")) {
      if (!distinct_tail(w)) continue;
      const auto sv = oracle::jacobi_singular_values(oracle::to_long(oracle::exact_word(w)));
      const ExactColumns c = columns(w);
      const long double arc = 1.0L / (norm2(c.x1, c.y1) * norm2(c.x2, c.y2));
      want = std::min({want, sv[1], (1.0L / (sv[0] * sv[0])) / arc});
    }
    CHECK(oracle::rel_close(r.eps_hat, want, 1e-10L));
    for (const std::string& w : oracle::all_words(12, "12")) {
      if (!distinct_tail(w)) continue;
      const EdgeWordData d = edge_word_data(Word::parse(w));
      if (!(d.phi32 >= r.eps_hat * r.eps_hat * d.arc)) ++violations;
    }
    CHECK(violations == 0);
  }

  TEST_CASE("lower-bound evidence") {
    const EvidenceReport e = lower_bound_evidence(12);
    REQUIRE(e.levels.size() == 11);
    CHECK(e.levels[0].n == 2);
    CHECK(e.levels[0].count == 2);
    const auto sv = oracle::jacobi_singular_values(oracle::to_long(oracle::exact_word("12")));
    CHECK(oracle::rel_close(e.levels[0].level_sum, 2 * std::sqrt(sv[1]) / (sv[0] * sv[0]), 1e-12L));
    CHECK(e.strictly_increasing);
    for (std::size_t i = 0; i < e.levels.size(); ++i) {
      CHECK(e.levels[i].count == (1ull << (e.levels[i].n - 1)));
      if (i > 0) CHECK(e.levels[i].cumulative > e.levels[i - 1].cumulative);
      CHECK(e.levels[i].level_sum > 0.0);
    }
    // Brute-force level sum at n = 9.
    long double s9 = 0;
    for (const std::string& w : edge_words(9))
      if (distinct_tail(w)) s9 += edge_word_data(Word::parse(w)).phi32;
    CHECK(oracle::rel_close(e.levels[7].level_sum, s9, 1e-12L));
    CHECK(std::isfinite(e.tail_slope));
    const std::string csv = evidence_csv(e);
    CHECK(csv.rfind("n,count,level_sum,cumulative,eps_hat\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);
    CHECK_THROWS_AS((void)lower_bound_evidence(5), InputError);
  }

  TEST_CASE("property: edge computations are thread-count independent") {
    EnumOptions one, many;
    one.threads = 1;
    many.threads = 4;
    const EvidenceReport a = lower_bound_evidence(14, one), b = lower_bound_evidence(14, many);
    REQUIRE(a.levels.size() == b.levels.size());
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
      CHECK(a.levels[i].level_sum == doctest::Approx(b.levels[i].level_sum).epsilon(1e-14));
      CHECK(a.levels[i].eps_hat == b.levels[i].eps_hat);
    }
    CHECK(lemma_a1_check(12, one).worst_word == lemma_a1_check(12, many).worst_word);
  }
}
