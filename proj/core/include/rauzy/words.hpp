#pragma once

// Words over {1,2,3} (elements of the free Rauzy semigroup) and a sharded
// depth-first enumerator over them.

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "rauzy/error.hpp"
#include "rauzy/linalg.hpp"

namespace rauzy {

// Packed 2-bit symbols, most significant first, so that comparing limbs
// numerically is lexicographic order (a strict prefix sorts first).
class Word {
 public:
  Word() = default;

  // Accepts digits 1-3 only; "" is the identity.
  static Word parse(std::string_view s);
  static Word from_symbols(std::span<const std::uint8_t> symbols);
  static Word repeat(const Word& w, std::size_t times);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  int operator[](std::size_t i) const noexcept {
    return static_cast<int>((limbs_[i / 32] >> (62 - 2 * (i % 32))) & 3u);
  }
  int back() const noexcept { return (*this)[size_ - 1]; }

  void push_back(int symbol);
  void pop_back();

  Word operator+(const Word& o) const;
  Word prefix(std::size_t n) const;
  bool starts_with(const Word& p) const;
  bool ends_with(const Word& suffix) const;
  // Last n symbols are not all equal (false when size() < n).
  bool last_n_not_same(std::size_t n) const;
  bool uses_only(unsigned alphabet_mask) const;

  std::string str() const;
  std::vector<std::uint8_t> symbols() const;

  friend bool operator==(const Word& a, const Word& b) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

  std::size_t hash() const noexcept;

 private:
  std::vector<std::uint64_t> limbs_;
  std::size_t size_ = 0;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept { return w.hash(); }
};

// Left-to-right product A_{w_0} ... A_{w_{n-1}}; exact up to `exact_length`
// symbols (and while entries fit in 128 bits), log-scaled beyond.
Mat3 word_to_matrix(const Word& w, std::size_t exact_length = 64);

inline constexpr unsigned kAllSymbols = 0b1110;  // bit i set = symbol i allowed

unsigned alphabet_mask(std::span<const int> symbols);

struct EnumFilter {
  std::optional<int> max_length;
  std::optional<int> last_n_digits_not_same;
  std::optional<Word> ends_with;
  unsigned alphabet = kAllSymbols;
  // Ball enumeration: subtrees whose max column sum exceeds
  // sqrt(3) * sigma1_ceiling are cut.
  std::optional<double> sigma1_ceiling;
  // Adaptive cover mode: a node whose triangle has Euclidean diameter <= this
  // is emitted as a leaf and not expanded.
  std::optional<double> diam_ceiling;
  // In adaptive cover mode, leaves must also end in two distinct symbols;
  // words ending in a repeated symbol are extended instead.
  bool leaf_requires_distinct_tail = false;
  // A branch ending in a constant run i^k never satisfies that rule (A_i fixes
  // E_i), so a node within the diameter ceiling whose trailing run reaches
  // this length is emitted anyway; its triangle keeps the cover complete.
  int max_tail_run = 8;
  bool include_identity = true;

  // Throws InputError when nothing bounds the traversal.
  void validate() const;
};

// Upper constant c in sigma1 <= c * T for every word visited under a
// sigma1_ceiling T. Visited nodes have max column sum <= sqrt(3) T and
// sigma1 <= sqrt(3) * (max column sum) for 3x3 matrices.
inline constexpr double kSigmaProxyConstant = 3.0;
inline constexpr double kSqrt3 = 1.7320508075688772;

struct EnumOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
  int shard_depth = 6;
};

unsigned resolve_threads(unsigned requested);

struct EnumStats {
  std::uint64_t visited = 0;
  std::uint64_t expanded = 0;
  std::uint64_t pruned = 0;     // subtrees cut by the sigma1 proxy
  std::uint64_t truncated = 0;  // ceiling-mode nodes stopped by max_length
  int max_depth = 0;
  std::size_t shards = 0;

  void merge(const EnumStats& o) {
    visited += o.visited;
    expanded += o.expanded;
    pruned += o.pruned;
    truncated += o.truncated;
    max_depth = std::max(max_depth, o.max_depth);
  }
};

// State of the traversal at one word. Matrices are kept as doubles (exact
// integers while below 2^53) with separate log-scales for very deep words.
struct NodeState {
  Entries m{1, 0, 0, 0, 1, 0, 0, 0, 1};
  Entries w{1, 0, 0, 0, 1, 0, 0, 0, 1};
  double log_scale = 0.0;
  double wedge_log_scale = 0.0;

  // Right multiplication by A_i: column j += column i for j != i.
  void push(int symbol) {
    const int i = symbol - 1;
    for (int r = 0; r < 3; ++r) {
      double* row = &m[static_cast<std::size_t>(r * 3)];
      for (int j = 0; j < 3; ++j)
        if (j != i) row[j] += row[i];
    }
    // cof(A_i) = A_i^{-T}: column i -= sum of the other columns.
    for (int r = 0; r < 3; ++r) {
      double* row = &w[static_cast<std::size_t>(r * 3)];
      double s = 0.0;
      for (int j = 0; j < 3; ++j)
        if (j != i) s += row[j];
      row[i] -= s;
    }
    if (m[0] + m[1] + m[2] > 1e250 || m[3] + m[4] + m[5] > 1e250 || m[6] + m[7] + m[8] > 1e250)
      renormalize();
  }

  void renormalize();

  // Max column sum of the true (nonnegative) matrix, in log form.
  double log_max_column_sum() const;

  // Normalized vertex j of the image triangle (coordinates sum to 1).
  Vec3 vertex(int j) const {
    const double s = m[static_cast<std::size_t>(j)] + m[static_cast<std::size_t>(3 + j)] +
                     m[static_cast<std::size_t>(6 + j)];
    return {m[static_cast<std::size_t>(j)] / s, m[static_cast<std::size_t>(3 + j)] / s,
            m[static_cast<std::size_t>(6 + j)] / s};
  }

  double triangle_diameter() const;

  CartanVec cartan() const { return cartan_from_parts(m, log_scale, w, wedge_log_scale); }
};

struct Node {
  std::span<const std::uint8_t> symbols;
  const NodeState& state;

  int length() const noexcept { return static_cast<int>(symbols.size()); }
  Word word() const { return Word::from_symbols(symbols); }
  CartanVec cartan() const { return state.cartan(); }
  bool last_two_distinct() const noexcept {
    return symbols.size() >= 2 && symbols[symbols.size() - 1] != symbols[symbols.size() - 2];
  }
};

namespace detail {

enum class Verdict { Visit, Skip };

struct Traversal {
  const EnumFilter& filter;
  double log_proxy_cap = 0.0;
  bool has_cap = false;

  explicit Traversal(const EnumFilter& f);

  // Returns whether the node's subtree should be explored, and whether the
  // node itself is a leaf to emit (cover mode) or a node to visit.
  bool expand(const std::vector<std::uint8_t>& path, const NodeState& s, EnumStats& st,
              bool& emit) const;
};

}  // namespace detail

// Visits every word accepted by `filter`, calling visit(acc, node) once per
// word. The top `shard_depth` levels are expanded serially; the subtrees below
// are distributed to worker threads with one accumulator per shard, merged in
// shard order. Acc must be copyable and provide merge(const Acc&); results are
// then independent of the thread count whenever merge is associative.
template <class Acc, class Visit>
Acc enumerate(const EnumFilter& filter, const Acc& init, Visit&& visit, EnumOptions opts = {},
              EnumStats* stats_out = nullptr) {
  filter.validate();
  const detail::Traversal trav(filter);

  struct Frontier {
    std::vector<std::uint8_t> path;
    NodeState state;
  };

  auto run_subtree = [&](std::vector<std::uint8_t> path, NodeState root, Acc& acc,
                         EnumStats& st, int stop_depth, std::vector<Frontier>* frontier) {
    // Iterative DFS; frames hold the next child symbol to try.
    std::vector<NodeState> states;
    std::vector<int> next;
    const std::size_t base = path.size();
    states.reserve(64);
    next.reserve(64);

    auto enter = [&](const NodeState& s) -> bool {
      bool emit = false;
      const bool go = trav.expand(path, s, st, emit);
      if (emit) {
        ++st.visited;
        st.max_depth = std::max(st.max_depth, static_cast<int>(path.size()));
        visit(acc, Node{std::span<const std::uint8_t>(path), s});
      }
      if (go && frontier && static_cast<int>(path.size()) == stop_depth) {
        frontier->push_back({path, s});
        return false;
      }
      return go;
    };

    if (!enter(root)) return;
    states.push_back(root);
    next.push_back(1);
    while (!states.empty()) {
      int& sym = next.back();
      while (sym <= 3 && !(filter.alphabet & (1u << sym))) ++sym;
      if (sym > 3) {
        states.pop_back();
        next.pop_back();
        if (path.size() > base) path.pop_back();
        continue;
      }
      const int s = sym++;
      NodeState child = states.back();
      child.push(s);
      path.push_back(static_cast<std::uint8_t>(s));
      ++st.expanded;
      if (enter(child)) {
        states.push_back(child);
        next.push_back(1);
      } else {
        path.pop_back();
      }
    }
  };

  // Serial head: nodes shallower than the shard depth.
  Acc head = init;
  EnumStats head_stats;
  std::vector<Frontier> frontier;
  int shard_depth = std::max(0, opts.shard_depth);
  if (filter.max_length) shard_depth = std::min(shard_depth, *filter.max_length);
  run_subtree({}, NodeState{}, head, head_stats, shard_depth, &frontier);

  std::vector<Acc> shard_acc(frontier.size(), init);
  std::vector<EnumStats> shard_stats(frontier.size());
  // Frontier nodes were already visited by the head pass; their subtrees are
  // explored below without re-emitting the root.
  auto run_shard = [&](std::size_t k) {
    Frontier& f = frontier[k];
    NodeState root = f.state;
    std::vector<std::uint8_t> path = f.path;
    // Expand children of the frontier node directly.
    for (int s = 1; s <= 3; ++s) {
      if (!(filter.alphabet & (1u << s))) continue;
      NodeState child = root;
      child.push(s);
      path.push_back(static_cast<std::uint8_t>(s));
      ++shard_stats[k].expanded;
      run_subtree(path, child, shard_acc[k], shard_stats[k], -1, nullptr);
      path.pop_back();
    }
  };

  const unsigned threads = std::min<std::size_t>(resolve_threads(opts.threads),
                                                 std::max<std::size_t>(frontier.size(), 1));
  if (threads <= 1) {
    for (std::size_t k = 0; k < frontier.size(); ++k) run_shard(k);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t k = cursor.fetch_add(1);
          if (k >= frontier.size()) return;
          try {
            run_shard(k);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            cursor.store(frontier.size());
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  Acc result = std::move(head);
  EnumStats stats = head_stats;
  for (std::size_t k = 0; k < frontier.size(); ++k) {
    result.merge(shard_acc[k]);
    stats.merge(shard_stats[k]);
  }
  stats.shards = frontier.size();
  if (stats_out) *stats_out = stats;
  return result;
}

struct CountAcc {
  std::uint64_t count = 0;
  void merge(const CountAcc& o) { count += o.count; }
};

// Number of words accepted by the filter.
std::uint64_t count_words(const EnumFilter& filter, EnumOptions opts = {},
                          EnumStats* stats = nullptr);

// Words of `s` having no strict prefix in `s` (sorted). If `s` contains the
// empty word, it is the unique minimal element.
std::vector<Word> minimal_subset(std::vector<Word> s);

bool is_prefix_free(std::vector<Word> s);

// Checks that no element of S^{*m} (all m-fold concatenations) is a prefix of
// another one. Throws ResourceError when |S|^m exceeds `cap`.
bool is_prefix_free_power(const std::vector<Word>& s, int m, std::size_t cap = 1'000'000);

}  // namespace rauzy
