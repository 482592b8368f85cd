#pragma once

// Finitely supported random walks on the Rauzy semigroup: Monte-Carlo
// Lyapunov spectra, random-walk entropy by exact word convolution, the
// Lyapunov dimension, and a small-scale search for measures of large
// Lyapunov dimension.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rauzy/words.hpp"

namespace rauzy {

enum class Provenance { Manual, VariationalSearch };

const char* to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

struct Atom {
  Word word;
  double weight = 0.0;
};

struct MeasureSpec {
  std::vector<Atom> support;
  Provenance provenance = Provenance::Manual;

  static MeasureSpec uniform(const std::vector<Word>& words, Provenance p = Provenance::Manual);
  static MeasureSpec dirac(const Word& w);

  // Nonempty, distinct nonempty words, positive weights summing to 1 (1e-12).
  void validate() const;
  double shannon_entropy() const;
  std::vector<Word> words() const;
};

// Convex combination (1 - beta) a + beta b; atoms of zero weight are dropped
// and shared words are merged.
MeasureSpec mix(const MeasureSpec& a, const MeasureSpec& b, double beta);

// Upper bound on log(s1/s3) accumulated between two orthogonalizations.
inline constexpr double kMaxLogGapPerPeriod = 24.0;

struct LyapunovOptions {
  int renorm_period = 16;  // upper bound; shortened for strongly expanding supports
  unsigned threads = 0;
};

struct LyapunovEstimate {
  std::array<double, 3> lambda{};
  std::array<double, 3> stderr_{};
  long steps = 0;
  int trials = 0;
  int renorm_period = 0;
  std::uint64_t seed = 0;
  std::vector<std::array<double, 3>> per_trial;
  double max_trial_sum = 0.0;  // max |lambda1 + lambda2 + lambda3| over trials
};

// Each trial draws its own stream from (seed, trial index), so results do not
// depend on the thread count. Exponents are per step of the walk.
LyapunovEstimate lyapunov_spectrum(const MeasureSpec& nu, long steps, int trials,
                                   std::optional<std::uint64_t> seed,
                                   const LyapunovOptions& opts = {});

// Seed of the random stream used by a trial.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

enum class EntropyBranch { Free, Convolution };

const char* to_string(EntropyBranch b);

struct EntropyReport {
  double h = 0.0;
  EntropyBranch branch = EntropyBranch::Free;
  std::vector<double> per_k;  // H(nu^{*k}) / k for k = 1..k_max (convolution branch)
  bool nonincreasing = true;
};

inline constexpr double kConvolutionCap = 1e7;

// Entropy H(nu^{*k}) of the k-fold convolution, computed on words.
double convolution_entropy(const MeasureSpec& nu, int k, double cap = kConvolutionCap);

EntropyReport rw_entropy(const MeasureSpec& nu, int k_max, double cap = kConvolutionCap);

struct DimReport {
  double h = 0.0;
  double chi1 = 0.0;
  double chi2 = 0.0;
  int d = 0;
  double dim = 0.0;
  bool clamped = false;
  std::string entropy_branch;
  std::array<double, 2> chi_stderr{};
};

// dim = d + (h - sum_{i<=d} chi_i) / chi_{d+1}, d in {0, 1}, clamped to [0, 2].
DimReport lyapunov_dimension(double h, double chi1, double chi2);

struct MixingCheck {
  double lhs = 0.0;        // H(mix^{*k}) / k
  double rhs = 0.0;        // (1 - beta) H(nu1)
  double tolerance = 0.0;  // 2 log(max support size) / k
  bool pass = false;
};

MixingCheck entropy_mixing_check(const MeasureSpec& nu1, const MeasureSpec& nu2, double beta, int k,
                                 double cap = kConvolutionCap);

struct SearchBudget {
  int max_length = 14;      // enumeration depth
  int max_candidates = 4;   // clusters evaluated, largest first
  long steps = 20000;
  int trials = 8;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::vector<Word> boosters;  // optional second measure for the mixed report
};

struct SearchCandidate {
  std::array<double, 2> center{};  // (k1/n, k2/n) cell center
  std::size_t cluster_size = 0;
  std::size_t support_size = 0;
  bool simple_spectrum = false;
  LyapunovEstimate lyapunov;
  DimReport report;
  std::optional<DimReport> mixed;
};

struct SearchResult {
  MeasureSpec best;
  DimReport report;
  LyapunovEstimate lyapunov;
  std::array<double, 2> center{};
  std::size_t window_words = 0;
  std::vector<SearchCandidate> candidates;  // in evaluation order
  std::optional<DimReport> mixed;
};

// Words with psi_s(kappa) in [(1 - beta) n, (1 + beta) n] are grouped into
// grid cells of side beta in kappa/n space; for each of the largest cells the
// prefix-minimal subset carries a uniform measure whose Lyapunov dimension is
// estimated. Candidates without a simple spectrum (gaps above 3 stderr) are
// discarded; the best remaining one is returned.
SearchResult variational_search(double s, double beta, int n, const SearchBudget& budget = {});

}  // namespace rauzy
