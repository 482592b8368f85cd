#include "rauzy/words.hpp"

#include <cmath>
#include <unordered_set>

namespace rauzy {

Word Word::parse(std::string_view s) {
  Word w;
  for (char c : s) {
    if (c < '1' || c > '3')
      throw InputError("word symbols must be 1, 2 or 3 (got '" + std::string(1, c) + "')");
    w.push_back(c - '0');
  }
  return w;
}

Word Word::from_symbols(std::span<const std::uint8_t> symbols) {
  Word w;
  w.limbs_.reserve(symbols.size() / 32 + 1);
  for (std::uint8_t s : symbols) w.push_back(s);
  return w;
}

Word Word::repeat(const Word& w, std::size_t times) {
  Word r;
  for (std::size_t t = 0; t < times; ++t) r = r + w;
  return r;
}

void Word::push_back(int symbol) {
  if (symbol < 1 || symbol > 3) throw InputError("word symbols must be 1, 2 or 3");
  if (size_ % 32 == 0) limbs_.push_back(0);
  limbs_.back() |= static_cast<std::uint64_t>(symbol) << (62 - 2 * (size_ % 32));
  ++size_;
}

void Word::pop_back() {
  if (size_ == 0) return;
  --size_;
  limbs_.back() &= ~(std::uint64_t{3} << (62 - 2 * (size_ % 32)));
  if (size_ % 32 == 0) limbs_.pop_back();
}

Word Word::operator+(const Word& o) const {
  Word r = *this;
  for (std::size_t i = 0; i < o.size_; ++i) r.push_back(o[i]);
  return r;
}

Word Word::prefix(std::size_t n) const {
  Word r;
  for (std::size_t i = 0; i < std::min(n, size_); ++i) r.push_back((*this)[i]);
  return r;
}

bool Word::starts_with(const Word& p) const {
  if (p.size_ > size_) return false;
  const std::size_t full = p.size_ / 32;
  for (std::size_t i = 0; i < full; ++i)
    if (limbs_[i] != p.limbs_[i]) return false;
  const std::size_t rest = p.size_ % 32;
  if (rest == 0) return true;
  const std::uint64_t mask = ~std::uint64_t{0} << (64 - 2 * rest);
  return (limbs_[full] & mask) == p.limbs_[full];
}

bool Word::ends_with(const Word& suffix) const {
  if (suffix.size_ > size_) return false;
  const std::size_t off = size_ - suffix.size_;
  for (std::size_t i = 0; i < suffix.size_; ++i)
    if ((*this)[off + i] != suffix[i]) return false;
  return true;
}

bool Word::last_n_not_same(std::size_t n) const {
  if (n == 0 || size_ < n) return false;
  const int last = back();
  for (std::size_t i = size_ - n; i < size_; ++i)
    if ((*this)[i] != last) return true;
  return false;
}

bool Word::uses_only(unsigned mask) const {
  for (std::size_t i = 0; i < size_; ++i)
    if (!(mask & (1u << (*this)[i]))) return false;
  return true;
}

std::string Word::str() const {
  std::string s;
  s.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) s.push_back(static_cast<char>('0' + (*this)[i]));
  return s;
}

std::vector<std::uint8_t> Word::symbols() const {
  std::vector<std::uint8_t> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = static_cast<std::uint8_t>((*this)[i]);
  return out;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.limbs_ <=> b.limbs_; c != 0) return c;
  return a.size_ <=> b.size_;
}

std::size_t Word::hash() const noexcept {
  std::size_t h = std::hash<std::size_t>{}(size_);
  for (std::uint64_t x : limbs_) h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Mat3 word_to_matrix(const Word& w, std::size_t exact_length) {
  Mat3 g;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i == exact_length && g.repr() == Repr::Exact) g = g.promote();
    g = multiply(g, generator(w[i]));
  }
  return g;
}

unsigned alphabet_mask(std::span<const int> symbols) {
  unsigned mask = 0;
  for (int s : symbols) {
    if (s < 1 || s > 3) throw InputError("alphabet symbols must be 1, 2 or 3");
    mask |= 1u << s;
  }
  return mask;
}

void EnumFilter::validate() const {
  if (!max_length && !sigma1_ceiling && !diam_ceiling)
    throw InputError("enumeration needs max_length, sigma1_ceiling or diam_ceiling");
  if (max_length && *max_length < 0) throw InputError("max_length must be nonnegative");
  if ((alphabet & kAllSymbols) == 0 || (alphabet & ~kAllSymbols) != 0)
    throw InputError("alphabet must be a nonempty subset of {1,2,3}");
  if (sigma1_ceiling && !(*sigma1_ceiling > 0.0)) throw InputError("sigma1_ceiling must be positive");
  if (diam_ceiling && !(*diam_ceiling > 0.0)) throw InputError("diam_ceiling must be positive");
  if (max_tail_run < 2) throw InputError("max_tail_run must be at least 2");
  if (last_n_digits_not_same && *last_n_digits_not_same < 2)
    throw InputError("last_n_digits_not_same needs n >= 2");
  if (ends_with && !ends_with->uses_only(alphabet))
    throw InputError("ends_with uses symbols outside the alphabet");
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void NodeState::renormalize() {
  double a = 0.0, b = 0.0;
  for (double x : m) a = std::max(a, std::abs(x));
  for (double x : w) b = std::max(b, std::abs(x));
  for (double& x : m) x /= a;
  for (double& x : w) x /= b;
  log_scale += std::log(a);
  wedge_log_scale += std::log(b);
}

double NodeState::log_max_column_sum() const {
  double best = 0.0;
  for (int j = 0; j < 3; ++j)
    best = std::max(best, m[static_cast<std::size_t>(j)] + m[static_cast<std::size_t>(3 + j)] +
                              m[static_cast<std::size_t>(6 + j)]);
  return std::log(best) + log_scale;
}

double NodeState::triangle_diameter() const {
  const Vec3 a = vertex(0), b = vertex(1), c = vertex(2);
  auto d2 = [](const Vec3& x, const Vec3& y) {
    const double u = x[0] - y[0], v = x[1] - y[1], t = x[2] - y[2];
    return u * u + v * v + t * t;
  };
  return std::sqrt(std::max({d2(a, b), d2(a, c), d2(b, c)}));
}

namespace detail {

Traversal::Traversal(const EnumFilter& f) : filter(f) {
  if (f.sigma1_ceiling) {
    has_cap = true;
    log_proxy_cap = std::log(kSqrt3 * *f.sigma1_ceiling);
  }
}

bool Traversal::expand(const std::vector<std::uint8_t>& path, const NodeState& s, EnumStats& st,
                       bool& emit) const {
  emit = false;
  const std::size_t len = path.size();
  if (has_cap && s.log_max_column_sum() > log_proxy_cap) {
    ++st.pruned;
    return false;
  }

  auto passes = [&] {
    if (len == 0 && !filter.include_identity) return false;
    if (filter.last_n_digits_not_same) {
      const auto n = static_cast<std::size_t>(*filter.last_n_digits_not_same);
      if (len < n) return false;
      bool differ = false;
      for (std::size_t i = len - n; i < len; ++i)
        if (path[i] != path[len - 1]) differ = true;
      if (!differ) return false;
    }
    if (filter.ends_with) {
      const Word& suf = *filter.ends_with;
      if (suf.size() > len) return false;
      for (std::size_t i = 0; i < suf.size(); ++i)
        if (path[len - suf.size() + i] != suf[i]) return false;
    }
    return true;
  };

  const bool at_cap = filter.max_length && static_cast<int>(len) >= *filter.max_length;
  if (filter.diam_ceiling) {
    bool tail_ok = !filter.leaf_requires_distinct_tail || (len >= 2 && path[len - 1] != path[len - 2]);
    if (!tail_ok && len >= 2) {
      std::size_t run = 1;
      while (run < len && path[len - 1 - run] == path[len - 1]) ++run;
      tail_ok = static_cast<int>(run) >= filter.max_tail_run;
    }
    if (tail_ok && s.triangle_diameter() <= *filter.diam_ceiling) {
      emit = passes();
      return false;
    }
    if (at_cap) {
      ++st.truncated;
      return false;
    }
    return true;
  }
  emit = passes();
  return !at_cap;
}

}  // namespace detail

std::uint64_t count_words(const EnumFilter& filter, EnumOptions opts, EnumStats* stats) {
  const CountAcc acc = enumerate(
      filter, CountAcc{}, [](CountAcc& a, const Node&) { ++a.count; }, opts, stats);
  return acc.count;
}

std::vector<Word> minimal_subset(std::vector<Word> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::vector<Word> out;
  // In lexicographic order every word with a prefix in S comes right after a
  // run headed by its shortest such prefix, which is always kept.
  for (auto& w : s) {
    if (!out.empty() && w.starts_with(out.back())) continue;
    out.push_back(std::move(w));
  }
  return out;
}

bool is_prefix_free(std::vector<Word> s) {
  std::sort(s.begin(), s.end());
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i].starts_with(s[i - 1])) return false;
  return true;
}

bool is_prefix_free_power(const std::vector<Word>& s, int m, std::size_t cap) {
  if (m < 1) throw InputError("power m must be at least 1");
  double total = 1.0;
  for (int i = 0; i < m; ++i) total *= static_cast<double>(s.size());
  if (total > static_cast<double>(cap))
    throw ResourceError("S^m has " + std::to_string(total) + " elements (cap " +
                            std::to_string(cap) + "); use a sampled check instead",
                        total);
  std::vector<Word> all{Word{}};
  for (int i = 0; i < m; ++i) {
    std::vector<Word> next;
    next.reserve(all.size() * s.size());
    for (const Word& a : all)
      for (const Word& b : s) next.push_back(a + b);
    all = std::move(next);
  }
  std::sort(all.begin(), all.end());
  // Distinct tuples giving the same word also count as a prefix collision.
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i].starts_with(all[i - 1])) return false;
  return true;
}

}  // namespace rauzy
