#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rauzy/error.hpp"
#include "rauzy/linalg.hpp"
#include "rauzy/words.hpp"

using namespace rauzy;

namespace {

Mat3 from_oracle(const oracle::IMat& m) {
  std::array<std::uint64_t, 9> e{};
  for (int i = 0; i < 9; ++i) e[i] = static_cast<std::uint64_t>(m[i]);
  return Mat3::exact(e);
}

double dist_to_hyperplane(const Vec3& v, const ProjPoint& normal) {
  return hyperplane_distance(ProjPoint::from(v), normal);
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("generators match the printed matrices") {
    CHECK(generator(1) == Mat3::exact({1, 1, 1, 0, 1, 0, 0, 0, 1}));
    CHECK(generator(2) == Mat3::exact({1, 0, 0, 1, 1, 1, 0, 0, 1}));
    CHECK(generator(3) == Mat3::exact({1, 0, 0, 0, 1, 0, 1, 1, 1}));
    CHECK(generator_transpose(1) == Mat3::exact({1, 0, 0, 1, 1, 0, 1, 0, 1}));
    CHECK(generator_transpose(3) == Mat3::exact({1, 0, 1, 0, 1, 1, 0, 0, 1}));
    for (int i = 1; i <= 3; ++i) CHECK(generator(i).transpose() == generator_transpose(i));
    CHECK_THROWS_AS((void)generator(0), InputError);
    CHECK_THROWS_AS((void)generator_transpose(4), InputError);
  }

  TEST_CASE("products against the exact oracle") {
    CHECK(generator(1) * generator(2) == Mat3::exact({2, 1, 2, 1, 1, 1, 0, 0, 1}));
    CHECK(Mat3::identity() * generator(3) == generator(3));
    std::mt19937_64 rng(7);
    for (int t = 0; t < 500; ++t) {
      const std::string w = oracle::random_word(rng, 0, 20);
      const oracle::IMat ref = oracle::exact_word(w);
      REQUIRE(oracle::idet(ref) == 1);
      const Mat3 g = word_to_matrix(Word::parse(w));
      CHECK(g.repr() == Repr::Exact);
      CHECK(g == from_oracle(ref));
      CHECK(g.det() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("long products promote to log-scaled form") {
    const Word w = Word::repeat(Word::parse("123"), 60);
    const Mat3 g = word_to_matrix(w);
    CHECK(g.repr() == Repr::LogScaled);
    CHECK(g.promoted());
    const CartanVec k = cartan(g);
    CHECK(std::isfinite(k.k1));
    CHECK(std::abs(k.k1 + k.k2 + k.k3) < 1e-9 * k.k1);
    // Promotion must not change the matrix: compare with a direct float product.
    const Mat3 short_exact = word_to_matrix(Word::repeat(Word::parse("123"), 10));
    const Mat3 short_promoted = word_to_matrix(Word::repeat(Word::parse("123"), 10), 0);
    CHECK(short_promoted.repr() != Repr::Exact);
    const CartanVec a = cartan(short_exact), b = cartan(short_promoted);
    CHECK(a.k1 == doctest::Approx(b.k1).epsilon(1e-12));
    CHECK(a.k2 == doctest::Approx(b.k2).epsilon(1e-12));
    // Float products keep det = 1 while the entries are small enough for the
    // determinant to be evaluated without cancellation.
    std::mt19937_64 rng(8);
    for (int t = 0; t < 500; ++t) {
      const Mat3 f = word_to_matrix(Word::parse(oracle::random_word(rng, 1, 12)), 0);
      CHECK(f.repr() != Repr::Exact);
      CHECK(std::abs(f.det() - 1.0) < 1e-9);
    }
  }

  TEST_CASE("constructor validation") {
    CHECK_THROWS_AS((void)Mat3::exact({2, 0, 0, 0, 1, 0, 0, 0, 1}), InputError);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS((void)Mat3::from_doubles({nan, 0, 0, 0, 1, 0, 0, 0, 1}), NumericError);
    CHECK_THROWS_AS((void)Mat3::from_doubles({2, 0, 0, 0, 1, 0, 0, 0, 1}), InputError);
    const Mat3 n = Mat3::normalized({8, 0, 0, 0, 1, 0, 0, 0, 1});
    CHECK(n.det() == doctest::Approx(1.0));
  }

  TEST_CASE("singular values: closed forms") {
    const auto s = singular_values(generator(1));
    CHECK(s.s1 == doctest::Approx(std::sqrt(2.0 + std::sqrt(3.0))).epsilon(1e-14));
    CHECK(s.s2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.s3 == doctest::Approx(std::sqrt(2.0 - std::sqrt(3.0))).epsilon(1e-14));
    CHECK(s.s1 == doctest::Approx(1.9318517).epsilon(1e-7));
    const auto id = singular_values(Mat3());
    CHECK(id.s1 == 1.0);
    CHECK(id.s2 == 1.0);
    CHECK(id.s3 == 1.0);
    for (int i = 2; i <= 3; ++i) {
      const auto t = singular_values(generator(i));
      CHECK(t.s1 == doctest::Approx(s.s1).epsilon(1e-14));
      CHECK(t.s2 == doctest::Approx(s.s2).epsilon(1e-14));
      CHECK(t.s3 == doctest::Approx(s.s3).epsilon(1e-14));
    }
  }

  TEST_CASE("singular values agree with the Jacobi oracle on all words of length <= 8") {
    double worst = 0.0;
    for (const std::string& w : oracle::all_words(8)) {
      const auto ref = oracle::jacobi_singular_values(oracle::to_long(oracle::exact_word(w)));
      const auto s = singular_values(word_to_matrix(Word::parse(w)));
      const double got[3] = {s.s1, s.s2, s.s3};
      for (int i = 0; i < 3; ++i)
        worst = std::max(worst, static_cast<double>(std::fabs(got[i] - ref[i]) / ref[i]));
      CHECK(std::abs(s.s1 * s.s2 * s.s3 - 1.0) < 1e-9);
    }
    CHECK(worst < 1e-10);
  }

  TEST_CASE("Cartan projection") {
    const CartanVec z = cartan(Mat3());
    CHECK(z.k1 == 0.0);
    CHECK(z.k2 == 0.0);
    CHECK(z.k3 == 0.0);
    const CartanVec a = cartan(generator(1));
    CHECK(a.k1 == doctest::Approx(0.65848).epsilon(1e-5));
    CHECK(std::abs(a.k2) < 1e-14);
    CHECK(a.k3 == doctest::Approx(-0.65848).epsilon(1e-5));
    std::mt19937_64 rng(11);
    for (int t = 0; t < 1000; ++t) {
      const CartanVec k = cartan(word_to_matrix(Word::parse(oracle::random_word(rng, 0, 20))));
      CHECK(std::abs(k.k1 + k.k2 + k.k3) < 1e-9);
      CHECK(k.k1 >= k.k2);
      CHECK(k.k2 >= k.k3);
    }
  }

  TEST_CASE("property: kappa_1 is subadditive") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 1000; ++t) {
      const Mat3 g = word_to_matrix(Word::parse(oracle::random_word(rng, 0, 15)));
      const Mat3 h = word_to_matrix(Word::parse(oracle::random_word(rng, 0, 15)));
      CHECK(cartan(g * h).k1 <= cartan(g).k1 + cartan(h).k1 + 1e-9);
    }
  }

  TEST_CASE("projective distance") {
    CHECK(proj_distance(ProjPoint::basis(0), ProjPoint::basis(1)) == 1.0);
    CHECK(proj_distance(ProjPoint::basis(2), ProjPoint::basis(2)) == 0.0);
    CHECK(proj_distance(ProjPoint::basis(0), ProjPoint::from({1, 1, 0})) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS((void)ProjPoint::from({0, 0, 0}), InputError);
    // Canonical sign: first nonzero coordinate positive.
    const ProjPoint p = ProjPoint::from({0, -2, 1});
    CHECK(p[1] > 0);
    CHECK(proj_distance(p, ProjPoint::from({0, 2, -1})) < 1e-15);
  }

  TEST_CASE("property: chordal metric axioms") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 2000; ++t) {
      const ProjPoint a = ProjPoint::from(oracle::random_unit(rng));
      const ProjPoint b = ProjPoint::from(oracle::random_unit(rng));
      const ProjPoint c = ProjPoint::from(oracle::random_unit(rng));
      const double ab = proj_distance(a, b), ba = proj_distance(b, a);
      CHECK(std::abs(ab - ba) < 1e-12);
      CHECK(ab >= 0.0);
      CHECK(ab <= 1.0 + 1e-12);
      CHECK(proj_distance(a, a) < 1e-7);
      CHECK(proj_distance(a, c) <= ab + proj_distance(b, c) + 1e-12);
    }
  }

  TEST_CASE("Cartan frames") {
    const Mat3 d = Mat3::from_doubles({4, 0, 0, 0, 2, 0, 0, 0, 0.125});
    const CartanFrames f = cartan_frames(d);
    CHECK(proj_distance(f.attracting, ProjPoint::basis(0)) < 1e-12);
    CHECK(proj_distance(f.repelling_normal, ProjPoint::basis(0)) < 1e-12);
    // wedge^2 of diag(4,2,1/8) is diag(1/4, 1/2, 8) in (e2^e3, e3^e1, e1^e2).
    CHECK(proj_distance(f.wedge_attracting, ProjPoint::basis(2)) < 1e-12);
    try {
      (void)cartan_frames(Mat3());
      FAIL("identity has no attracting point");
    } catch (const GapError& e) {
      CHECK(e.which() == "s1>s2");
    }
    try {
      (void)cartan_frames(Mat3::from_doubles({4, 0, 0, 0, 0.5, 0, 0, 0, 0.5}));
      FAIL("repeated lower singular value");
    } catch (const GapError& e) {
      CHECK(e.which() == "s2>s3");
    }
  }

  TEST_CASE("property: projective contraction inequalities on random (g, V)") {
    std::mt19937_64 rng(2024);
    int checked = 0;
    double worst_product = -1.0, worst_lower = -1.0, worst_upper = -1.0;
    while (checked < 10000) {
      const Mat3 g = word_to_matrix(Word::parse(oracle::random_word(rng, 1, 10)));
      CartanFrames f;
      try {
        f = cartan_frames(g);
      } catch (const GapError&) {
        continue;
      }
      const auto sv = singular_values(g);
      const double ratio = sv.s2 / sv.s1;
      const Vec3 v = oracle::random_unit(rng);
      const Vec3 gv = apply(g, v);
      const double gvn = std::sqrt(gv[0] * gv[0] + gv[1] * gv[1] + gv[2] * gv[2]);
      const double dvh = dist_to_hyperplane(v, f.repelling_normal);
      const double d_attr = proj_distance(ProjPoint::from(gv), f.attracting);
      worst_product = std::max(worst_product, d_attr * dvh - ratio);
      const double stretch = gvn / sv.s1;
      worst_lower = std::max(worst_lower, dvh - stretch);
      worst_upper = std::max(worst_upper, stretch - (dvh + ratio));
      ++checked;
    }
    CHECK(worst_product <= 1e-12);
    CHECK(worst_lower <= 1e-12);
    CHECK(worst_upper <= 1e-12);
  }

  TEST_CASE("cofactor is the second exterior power") {
    const Entries m{2, 1, 2, 1, 1, 1, 0, 0, 1};
    const Entries c = cofactor(m);
    // wedge^2 is multiplicative: cof(AB) = cof(A) cof(B).
    const Entries a = word_to_matrix(Word::parse("1")).mantissa();
    const Entries b = word_to_matrix(Word::parse("2")).mantissa();
    const Entries ca = cofactor(a), cb = cofactor(b);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int k = 0; k < 3; ++k) s += ca[i * 3 + k] * cb[k * 3 + j];
        CHECK(s == doctest::Approx(c[i * 3 + j]));
      }
  }
}
