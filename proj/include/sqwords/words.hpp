#pragma once

#include <algorithm>
#include <set>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sqwords/word.hpp"

namespace sqwords {

/// Distinct factors of `w` with length `len`, in lexicographic order.
/// For len == 0 this is {ε}.
inline std::vector<Word> factor_set(const Word& w, std::size_t len) {
  if (len > w.size()) {
    throw std::out_of_range("factor length " + std::to_string(len) +
                            " exceeds word length " + std::to_string(w.size()));
  }
  std::set<Word> found;
  for (std::size_t i = 0; i + len <= w.size(); ++i) found.insert(w.factor(i, len));
  return {found.begin(), found.end()};
}

/// Hash set of every factor of a word, ε included.
class FactorIndex {
 public:
  explicit FactorIndex(const Word& w) : word_length_(w.size()) {
    factors_.insert(Word{});
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t len = 1; i + len <= w.size(); ++len) factors_.insert(w.factor(i, len));
    }
  }

  bool contains(const Word& f) const { return factors_.contains(f); }
  std::size_t size() const noexcept { return factors_.size(); }
  std::size_t word_length() const noexcept { return word_length_; }
  const std::unordered_set<Word>& all() const noexcept { return factors_; }

 private:
  std::unordered_set<Word> factors_;
  std::size_t word_length_ = 0;
};

namespace detail {

inline void require_nonempty(const Word& w, const char* what) {
  if (w.empty()) throw domain_error(std::string(what) + ": empty word");
}

}  // namespace detail

/// Smallest period by trying every p in order. Quadratic.
inline std::size_t smallest_period_naive(const Word& w) {
  detail::require_nonempty(w, "smallest_period");
  for (std::size_t p = 1; p < w.size(); ++p) {
    bool ok = true;
    for (std::size_t i = p; i < w.size() && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return p;
  }
  return w.size();
}

/// Smallest period as |w| minus the longest proper border (KMP failure function).
inline std::size_t smallest_period_border(const Word& w) {
  detail::require_nonempty(w, "smallest_period");
  const std::size_t n = w.size();
  std::vector<std::size_t> fail(n + 1, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && w[i] != w[k]) k = fail[k];
    if (w[i] == w[k]) ++k;
    fail[i + 1] = k;
  }
  return n - fail[n];
}

inline constexpr std::size_t naive_period_limit = 64;

inline std::size_t smallest_period(const Word& w) {
  return w.size() <= naive_period_limit ? smallest_period_naive(w) : smallest_period_border(w);
}

/// Returns (x, k) with w = x^k, x primitive.
inline std::pair<Word, std::size_t> primitive_root(const Word& w) {
  const std::size_t p = smallest_period(w);
  // A word is a proper power iff its smallest period divides its length.
  if (w.size() % p == 0) return {w.prefix(p), w.size() / p};
  return {w, 1};
}

inline bool is_primitive(const Word& w) { return primitive_root(w).second == 1; }

/// The length-m word repeating x cyclically: x^{m/|x|}.
inline Word fractional_power(const Word& x, std::size_t m) {
  if (m == 0) return {};
  if (x.empty()) throw domain_error("fractional_power: empty base with positive length");
  std::vector<letter_t> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = x[i % x.size()];
  return Word(out);
}

/// Lyndon test: w is strictly smaller than each of its proper non-empty suffixes.
/// This already rules out proper powers.
inline bool is_lyndon(const Word& w) {
  detail::require_nonempty(w, "is_lyndon");
  const std::size_t n = w.size();
  for (std::size_t i = 1; i < n; ++i) {
    // compare w with w[i..n)
    std::size_t k = 0;
    while (i + k < n && w[k] == w[i + k]) ++k;
    if (i + k == n) return false;  // suffix is a prefix of w, hence smaller
    if (w[i + k] < w[k]) return false;
  }
  return true;
}

/// A certified Lyndon word together with its conjugates x_1..x_{|z|},
/// x_i = z[i..|z|] z[1..i-1].
class LyndonRoot {
 public:
  explicit LyndonRoot(Word z) : z_(std::move(z)) {
    if (z_.empty() || !is_lyndon(z_)) {
      throw domain_error("not a Lyndon word: " + display(z_));
    }
    rotations_.reserve(z_.size());
    for (std::size_t i = 0; i < z_.size(); ++i) rotations_.push_back(z_.rotate(i));
  }

  const Word& word() const noexcept { return z_; }
  std::size_t size() const noexcept { return z_.size(); }

  /// x_i for 1-based i.
  const Word& rotation(std::size_t i) const { return rotations_.at(i - 1); }
  const std::vector<Word>& rotations() const noexcept { return rotations_; }

  friend bool operator==(const LyndonRoot& a, const LyndonRoot& b) { return a.z_ == b.z_; }
  friend bool operator<(const LyndonRoot& a, const LyndonRoot& b) {
    return ShortlexLess{}(a.z_, b.z_);
  }

 private:
  Word z_;
  std::vector<Word> rotations_;
};

/// [z]_m as a deduplicated, lexicographically sorted set.
inline std::vector<Word> conj_power_set(const LyndonRoot& z, std::size_t m) {
  std::set<Word> members;
  for (const Word& x : z.rotations()) members.insert(fractional_power(x, m));
  return {members.begin(), members.end()};
}

/// 0-based start of the least rotation of `x` (two-pointer minimum expression).
inline std::size_t least_rotation_start(const Word& x) {
  const std::size_t n = x.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const letter_t a = x[(i + k) % n];
    const letter_t b = x[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

struct RotationOf {
  LyndonRoot root;
  std::size_t index;  // 1-based: the input equals root.rotation(index)
};

/// The Lyndon conjugate z of a primitive word x and the index i with x = x_i.
inline RotationOf lyndon_rotation(const Word& x) {
  detail::require_nonempty(x, "lyndon_rotation");
  if (!is_primitive(x)) throw domain_error("lyndon_rotation: not primitive: " + display(x));
  const std::size_t n = x.size();
  const std::size_t start = least_rotation_start(x);
  return {LyndonRoot(x.rotate(start)), (n - start) % n + 1};
}

struct SquareRoot {
  LyndonRoot root;
  std::size_t index;     // 1-based rotation index
  std::size_t exponent;  // r with s = (x_index)^{2r}
};

inline bool is_square(const Word& s) {
  if (s.empty() || s.size() % 2 != 0) return false;
  const std::size_t h = s.size() / 2;
  for (std::size_t i = 0; i < h; ++i) {
    if (s[i] != s[h + i]) return false;
  }
  return true;
}

/// Decomposes a square s as (x_i)^{2r} with x_i a conjugate of the Lyndon word z.
inline SquareRoot lyndon_root_of_square(const Word& s) {
  if (!is_square(s)) throw domain_error("not a square: " + display(s));
  auto [x, k] = primitive_root(s.prefix(s.size() / 2));
  auto rot = lyndon_rotation(x);
  return {std::move(rot.root), rot.index, k};
}

/// Every factor of `w` that is a Lyndon word, shortlex order.
inline std::vector<LyndonRoot> lyndon_factors(const Word& w) {
  std::set<Word, ShortlexLess> found;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t len = 1; i + len <= w.size(); ++len) {
      Word f = w.factor(i, len);
      if (!found.contains(f) && is_lyndon(f)) found.insert(std::move(f));
    }
  }
  std::vector<LyndonRoot> roots;
  roots.reserve(found.size());
  for (const Word& z : found) roots.emplace_back(z);
  return roots;
}

}  // namespace sqwords
