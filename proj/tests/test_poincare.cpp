#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rauzy/error.hpp"
#include "rauzy/poincare.hpp"
#include "rauzy/words.hpp"

using namespace rauzy;

namespace {

CartanVec kappa(const std::string& w) { return cartan(word_to_matrix(Word::parse(w))); }

// phi_s from Jacobi singular values, straight from the piecewise definition.
long double oracle_phi(const std::string& w, long double s) {
  const auto sv = oracle::jacobi_singular_values(oracle::to_long(oracle::exact_word(w)));
  if (s <= 1) return std::pow(sv[1] / sv[0], s);
  return (sv[1] / sv[0]) * std::pow(sv[2] / sv[0], s - 1);
}

}  // namespace

TEST_SUITE("poincare") {
  TEST_CASE("phi_s and psi_s examples") {
    for (double s : {0.1, 0.5, 1.0, 1.5, 2.0}) CHECK(phi_s(CartanVec{}, s) == 1.0);
    CHECK(phi_s(kappa("1"), 1.0) == doctest::Approx(1.0 / std::sqrt(2.0 + std::sqrt(3.0))).epsilon(1e-14));
    CHECK(phi_s(kappa("1"), 1.0) == doctest::Approx(0.5176381).epsilon(1e-7));
    CHECK(psi_s(CartanVec{}, 1.3) == 0.0);
    const CartanVec k{2.0, 0.5, -2.5};
    CHECK(psi_s(k, 2.0) == doctest::Approx((k.k1 - k.k2) + (k.k1 - k.k3)));
    CHECK(psi_s(k, 0.0) == 0.0);
    for (double a : {0.1, 3.0, 17.0})
      for (double s : {0.3, 1.0, 1.7}) CHECK(psi_s(k * a, s) == doctest::Approx(a * psi_s(k, s)).epsilon(1e-13));
    CHECK_THROWS_AS((void)phi_s(k, 0.0), DomainError);
    CHECK_THROWS_AS((void)phi_s(k, 2.5), DomainError);
    CHECK_THROWS_AS((void)psi_s(k, -0.1), DomainError);
  }

  TEST_CASE("phi_3/2 on the two-generator subsemigroup") {
    for (const std::string& w : oracle::all_words(10, "12")) {
      const auto sv = oracle::jacobi_singular_values(oracle::to_long(oracle::exact_word(w)));
      const long double want = std::sqrt(sv[1]) / (sv[0] * sv[0]);
      CHECK(oracle::rel_close(phi_s(kappa(w), 1.5), want, 1e-10L));
    }
  }

  TEST_CASE("property: phi_s agrees with the singular-value oracle and exp(-psi_s)") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 1000; ++t) {
      const std::string w = oracle::random_word(rng, 0, 12);
      const CartanVec k = kappa(w);
      for (double s : {0.25, 0.5, 1.0, 1.5, 2.0}) {
        const double p = phi_s(k, s);
        CHECK(std::abs(std::exp(-psi_s(k, s)) - p) <= 1e-12);
        CHECK(p > 0.0);
        CHECK(p <= 1.0);
        CHECK(oracle::rel_close(p, oracle_phi(w, s), 1e-9L));
      }
    }
  }

  TEST_CASE("property: continuity at s = 1") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; ++t) {
      const CartanVec k = kappa(oracle::random_word(rng, 1, 15));
      double prev = 1.0;
      for (double e : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const double gap = std::abs(phi_s(k, 1.0 - e) - phi_s(k, 1.0 + e));
        CHECK(gap <= prev + 1e-15);
        prev = gap;
      }
      CHECK(prev < 1e-6);
    }
  }

  TEST_CASE("partial Poincare sums") {
    EnumFilter f;
    f.max_length = 1;
    f.include_identity = false;
    const PoincareSum p = partial_poincare_sum(f, 1.0);
    CHECK(p.count == 3);
    CHECK(p.sum == doctest::Approx(1.5529143).epsilon(1e-7));
    f.max_length = 8;
    const PoincareSum q = partial_poincare_sum(f, 2.0);
    CHECK(q.sum > 0.0);
    CHECK(q.sum <= static_cast<double>(q.count));
    // Brute-force oracle sum at depth 6.
    f.max_length = 6;
    long double want = 0;
    for (const std::string& w : oracle::all_words(6))
      if (!w.empty()) want += oracle_phi(w, 1.3L);
    CHECK(oracle::rel_close(partial_poincare_sum(f, 1.3).sum, want, 1e-11L));
  }

  TEST_CASE("property: parallel and serial sums agree") {
    EnumFilter f;
    f.max_length = 11;
    for (double s : {0.7, 1.4, 1.9}) {
      EnumOptions serial;
      serial.threads = 1;
      const double a = partial_poincare_sum(f, s, serial).sum;
      for (unsigned t : {2u, 4u, 8u}) {
        EnumOptions par;
        par.threads = t;
        CHECK(partial_poincare_sum(f, s, par).sum == doctest::Approx(a).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("property: level sums strictly decrease in s") {
    const std::vector<double> ss{0.25, 0.5, 1.0, 1.25, 1.5, 1.75, 2.0};
    const auto z = level_sums(ss, 9);
    for (int n = 1; n <= 9; ++n)
      for (std::size_t i = 1; i < ss.size(); ++i) CHECK(z[i][n] < z[i - 1][n]);
    for (std::size_t i = 0; i < ss.size(); ++i) CHECK(z[i][0] == doctest::Approx(1.0));
  }

  TEST_CASE("pressure slope signs and monotonicity") {
    CHECK(pressure_slope(0.1, 4, 12).slope > 0.0);
    CHECK(pressure_slope(2.0, 4, 12).slope < 0.0);
    double prev = 1e9;
    for (double s : {0.5, 1.0, 1.5, 1.7, 1.9, 2.0}) {
      PressureOptions lin;
      lin.fit = SlopeFit::Linear;
      const double slope = pressure_slope(s, 4, 12, lin).slope;
      CHECK(slope <= prev);
      prev = slope;
    }
    const PressureReport r = pressure_slope(1.5, 4, 10);
    CHECK(r.depths.size() == 7);
    for (std::size_t i = 1; i < r.depths.size(); ++i) CHECK(r.depths[i] > r.depths[i - 1]);
    CHECK(std::isfinite(r.slope));
    CHECK_THROWS_AS((void)pressure_slope(1.5, 3, 10), InputError);
    CHECK_THROWS_AS((void)pressure_slope(1.5, 4, 7), InputError);
    CHECK_THROWS_AS((void)pressure_slope(1.5, 4, 40), ResourceError);
    CHECK_THROWS_AS((void)pressure_slope(2.5, 4, 10), DomainError);
  }

  TEST_CASE("exponent bisection keeps its bracket") {
    const ExponentEstimate e = estimate_affinity_exponent(11, 0.02);
    CHECK(e.hi - e.lo <= 0.02 + 1e-12);
    CHECK(e.s_hat == doctest::Approx((e.lo + e.hi) / 2));
    CHECK(pressure_slope(e.lo, 4, 11).slope > 0.0);
    CHECK(pressure_slope(e.hi, 4, 11).slope < 0.0);
    CHECK(e.s_hat > 1.5);
    CHECK(e.s_hat < 1.8);
    CHECK_THROWS_AS((void)estimate_affinity_exponent(11, 1e-4), InputError);
  }
}
