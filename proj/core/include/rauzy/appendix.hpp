#pragma once

// The sub-semigroup generated by A_1 and A_2 acting on the edge arc
// I = {R(s e1 + t e2) : s, t >= 0}: arc images, their tiling of I, the
// uniform lower bounds on s2 and on arc lengths, and the per-level phi_{3/2}
// sums used as evidence for the lower bound 3/2.

#include <cstdint>
#include <string>
#include <vector>

#include "rauzy/linalg.hpp"
#include "rauzy/words.hpp"

namespace rauzy {

inline constexpr unsigned kEdgeAlphabet = 0b0110;  // symbols 1 and 2

struct EdgeArc {
  ProjPoint start;  // gamma E1
  ProjPoint end;    // gamma E2
  Word word;
  double chordal_length = 0.0;  // 1 / (|gamma e1| |gamma e2|)
  double wedge_length = 0.0;    // |gamma e1 ^ gamma e2| / (|gamma e1| |gamma e2|)
  double angular_length = 0.0;  // asin(chordal_length)
};

// Throws DomainError when the word contains the symbol 3.
EdgeArc arc_of(const Word& w);

struct TilingReport {
  int n = 0;
  std::uint64_t arcs = 0;
  double max_endpoint_gap = 0.0;  // between consecutive arcs and at E1, E2
  double angular_sum = 0.0;
  double chordal_sum = 0.0;
  bool ordered = true;  // arcs arrive in increasing angle along I
  bool pass = false;
};

// Checks that the 2^n arcs of level n tile I: consecutive endpoints match
// within 1e-12 and angular lengths sum to pi/2 within 1e-9.
TilingReport tiling_check(int n, EnumOptions opts = {});

struct EdgeWordData {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  double arc = 0.0;     // |gamma I|
  double phi32 = 0.0;   // s2^{1/2} / s1^2
};

EdgeWordData edge_word_data(const Word& w);

struct LemmaA1Level {
  int depth = 0;
  double min_s2 = 0.0;
  double min_ratio = 0.0;  // min (1/s1^2) / |gamma I|
  double eps_hat = 0.0;    // running value up to this depth
};

struct LemmaA1Report {
  double eps_hat = 0.0;
  Word worst_word;
  std::string worst_term;  // "s2" or "arc"
  std::uint64_t words = 0;
  double min_phi_margin = 0.0;  // min phi_{3/2} - eps_hat^2 |gamma I|, relative to phi
  std::vector<LemmaA1Level> levels;
};

// Over words in {1,2}* of length 2..depth with distinct last two symbols:
// eps_hat = min(min s2, min (1/s1^2)/|gamma I|).
LemmaA1Report lemma_a1_check(int depth, EnumOptions opts = {});

struct EvidenceLevel {
  int n = 0;
  std::uint64_t count = 0;
  double level_sum = 0.0;
  double cumulative = 0.0;
  double eps_hat = 0.0;
};

struct EvidenceReport {
  std::vector<EvidenceLevel> levels;  // n = 2..depth
  bool strictly_increasing = false;
  double tail_slope = 0.0;  // least-squares slope of log level sums over the last five levels
};

EvidenceReport lower_bound_evidence(int depth, EnumOptions opts = {});

std::string evidence_csv(const EvidenceReport& r);

}  // namespace rauzy
