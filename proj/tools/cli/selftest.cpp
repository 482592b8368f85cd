#include "selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "rauzy/appendix.hpp"
#include "rauzy/gasket.hpp"
#include "rauzy/poincare.hpp"
#include "rauzy/random_walk.hpp"
#include "rauzy/schottky.hpp"

namespace rauzy::cli {

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

bool throws_input(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError&) {
    return true;
  } catch (...) {
  }
  return false;
}

bool throws_domain(const std::function<void()>& f) {
  try {
    f();
  } catch (const DomainError&) {
    return true;
  } catch (...) {
  }
  return false;
}

struct Check {
  const char* name;
  std::function<bool()> run;
};

std::vector<Check> checks() {
  const double r2 = std::sqrt(2.0);
  return {
      {"identity has unit singular values",
       [] {
         const auto s = singular_values(Mat3());
         return s.s1 == 1.0 && s.s2 == 1.0 && s.s3 == 1.0;
       }},
      {"A1 A2 product", [] { return word_to_matrix(Word::parse("12")) == Mat3::exact({2, 1, 2, 1, 1, 1, 0, 0, 1}); }},
      {"singular values of A1",
       [] {
         // A1^T A1 has eigenvalues 1 and 2 +- sqrt 3.
         const auto s = singular_values(generator(1));
         return near(s.s1 * s.s1, 2.0 + std::sqrt(3.0), 1e-12) && near(s.s2, 1.0, 1e-12);
       }},
      {"kappa sums to zero",
       [] {
         const CartanVec k = cartan(word_to_matrix(Word::parse("1231321")));
         return std::abs(k.k1 + k.k2 + k.k3) < 1e-12;
       }},
      {"invalid symbol rejected", [] { return throws_input([] { (void)Word::parse("124"); }); }},
      {"zero vector rejected", [] { return throws_input([] { (void)ProjPoint::from({0, 0, 0}); }); }},
      {"distance to itself", [] { return proj_distance(ProjPoint::basis(0), ProjPoint::basis(0)) == 0.0; }},
      {"orthogonal lines", [] { return proj_distance(ProjPoint::basis(0), ProjPoint::basis(1)) == 1.0; }},
      {"40 words of length <= 3",
       [] {
         EnumFilter f;
         f.max_length = 3;
         return count_words(f) == 40;
       }},
      {"minimal subset", [] {
         const auto m = minimal_subset({Word::parse("1"), Word::parse("12"), Word::parse("2")});
         return m.size() == 2 && m[0] == Word::parse("1") && m[1] == Word::parse("2");
       }},
      {"psi_s at s = 1 is the first gap",
       [] {
         const CartanVec k = cartan(generator(1));
         return near(psi_s(k, 1.0), k.k1 - k.k2, 1e-14);
       }},
      {"phi_s rejects s = 0", [] { return throws_domain([] { (void)phi_s(CartanVec{}, 0.0); }); }},
      {"standard simplex", [r2] {
         const DiamArea d = diam_area(triangle_of(Word{}));
         return near(d.diam, r2, 1e-15) && near(d.area, std::sqrt(3.0) / 2.0, 1e-15);
       }},
      {"triangle of A1",
       [] {
         const auto t = triangle_of(Word::parse("1"));
         return t.vertices[1] == Vec3{0.5, 0.5, 0.0} && t.vertices[2] == Vec3{0.5, 0.0, 0.5};
       }},
      {"wedge area identity",
       [] {
         const auto t = triangle_of(Word::parse("1213"));
         return near(wedge_area(t), diam_area(t).area, 1e-10);
       }},
      {"coding point error shrinks",
       [] { return coding_point(Word{}, 8).error_bound < coding_point(Word{}, 2).error_bound; }},
      {"epsilon_2 positive", [] { return estimate_epsilon_n(2, 8).epsilon > 0.0; }},
      {"Dirac entropy", [] { return rw_entropy(MeasureSpec::dirac(Word::parse("1")), 3).h == 0.0; }},
      {"uniform entropy",
       [] {
         const auto m = MeasureSpec::uniform({Word::parse("1"), Word::parse("2"), Word::parse("3")});
         return near(rw_entropy(m, 3).h, std::log(3.0), 1e-14);
       }},
      {"Lyapunov dimension cases",
       [] {
         return lyapunov_dimension(0, 1, 2).dim == 0.0 && lyapunov_dimension(1, 1, 2).dim == 1.0 &&
                lyapunov_dimension(2, 1, 2).dim == 1.5;
       }},
      {"missing seed rejected",
       [] {
         return throws_input([] {
           (void)lyapunov_spectrum(MeasureSpec::dirac(Word::parse("1")), 1000, 8, std::nullopt);
         });
       }},
      {"mixing check example",
       [] {
         const auto nu1 = MeasureSpec::uniform({Word::parse("1"), Word::parse("2")});
         return entropy_mixing_check(nu1, MeasureSpec::dirac(Word::parse("12")), 0.3, 6).pass;
       }},
      {"A1 not loxodromic for small eps",
       [] { return certify_loxodromic(generator(1), 0.01, 0.1).verdict == Verdict::Fail; }},
      {"single-term additivity defect",
       [] { return cartan_additivity_defect({word_to_matrix(Word::parse("123"))}) == 0.0; }},
      {"arc of the empty word",
       [] {
         const EdgeArc a = arc_of(Word{});
         return a.chordal_length == 1.0 && near(a.angular_length, std::numbers::pi / 2.0, 1e-15);
       }},
      {"arc of A1", [r2] { return near(arc_of(Word::parse("1")).chordal_length, 1.0 / r2, 1e-15); }},
      {"arc rejects symbol 3", [] { return throws_domain([] { (void)arc_of(Word::parse("13")); }); }},
      {"tiling at n = 8", [] { return tiling_check(8).pass; }},
      {"tiling chordal sum at n = 1", [r2] { return near(tiling_check(1).chordal_sum, r2, 1e-15); }},
      {"arc-weight bound at depth 10", [] { return lemma_a1_check(10).eps_hat > 0.0; }},
  };
}

}  // namespace

int run_selftest(std::ostream& out) {
  int failures = 0;
  for (const Check& c : checks()) {
    bool ok = false;
    std::string err;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      err = e.what();
    }
    if (!ok) ++failures;
    out << (ok ? "ok    " : "FAIL  ") << c.name;
    if (!err.empty()) out << " (" << err << ")";
    out << '\n';
  }
  return failures;
}

}  // namespace rauzy::cli
