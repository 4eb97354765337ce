#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <vector>

#include "sqwords/words.hpp"

namespace sqwords {

/// Scans all (start, half-length) candidates of a word once, using a table of
/// longest common extensions, and reports each distinct square exactly once at
/// its leftmost occurrence. Buffers are reused across calls, so one scanner per
/// thread makes repeated calls allocation-free.
class SquareScanner {
 public:
  /// Calls visit(start, half) for the leftmost occurrence of every distinct square.
  template <class Visit>
  void scan(std::span<const letter_t> w, Visit&& visit) {
    const std::size_t n = w.size();
    const std::size_t stride = n + 1;
    lce_.assign(stride * stride, 0);
    // lce_[i * stride + j] = length of the longest common prefix of w[i..] and w[j..]
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = n; j-- > i + 1;) {
        if (w[i] == w[j]) lce_[i * stride + j] = lce_[(i + 1) * stride + j + 1] + 1;
      }
    }
    // earlier_[j] = longest factor starting at j that also starts somewhere before j
    earlier_.assign(n + 1, 0);
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t best = 0;
      for (std::size_t i = 0; i < j; ++i) best = std::max(best, lce_[i * stride + j]);
      earlier_[j] = best;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t half = 1; i + 2 * half <= n; ++half) {
        if (lce_[i * stride + i + half] >= half && earlier_[i] < 2 * half) visit(i, half);
      }
    }
  }

  std::size_t count(std::span<const letter_t> w) {
    std::size_t total = 0;
    scan(w, [&](std::size_t, std::size_t) { ++total; });
    return total;
  }

 private:
  std::vector<std::uint32_t> lce_;
  std::vector<std::uint32_t> earlier_;
};

/// |SQ(w)|.
inline std::size_t count_distinct_squares(const Word& w) {
  SquareScanner scanner;
  return scanner.count(w.letters());
}

/// SQ(w) in shortlex order.
inline std::vector<Word> distinct_squares(const Word& w) {
  std::vector<Word> out;
  SquareScanner scanner;
  scanner.scan(w.letters(), [&](std::size_t i, std::size_t half) {
    out.push_back(w.factor(i, 2 * half));
  });
  std::sort(out.begin(), out.end(), ShortlexLess{});
  return out;
}

/// 1-based start positions of every occurrence of `f` in `w`.
inline std::vector<std::size_t> occurrences(const Word& w, const Word& f) {
  std::vector<std::size_t> pos;
  if (f.size() > w.size()) return pos;
  for (std::size_t i = 0; i + f.size() <= w.size(); ++i) {
    if (std::equal(f.letters().begin(), f.letters().end(), w.letters().begin() + i)) {
      pos.push_back(i + 1);
    }
  }
  return pos;
}

/// max |x| over squares xx in w, 0 when w is squarefree.
inline std::size_t max_square_half_length(const Word& w) {
  std::size_t best = 0;
  SquareScanner scanner;
  scanner.scan(w.letters(), [&](std::size_t, std::size_t half) { best = std::max(best, half); });
  return best;
}

struct RootedSquare {
  Word square;
  std::size_t index;     // 1-based rotation index of the half's primitive root
  std::size_t exponent;  // square = (x_index)^{2 * exponent}
};

struct RootSquares {
  LyndonRoot root;
  std::vector<RootedSquare> squares;  // shortlex by square
};

/// SQ(w) partitioned by Lyndon root: SQ_w(z) for every z with at least one square.
struct SquareInventory {
  Word word;
  std::map<Word, RootSquares, ShortlexLess> by_root;
  std::size_t total = 0;
  std::size_t max_half_length = 0;

  const RootSquares* find(const Word& z) const {
    auto it = by_root.find(z);
    return it == by_root.end() ? nullptr : &it->second;
  }

  /// |SQ_w(z)|, zero for roots without squares.
  std::size_t count(const Word& z) const {
    const RootSquares* rs = find(z);
    return rs ? rs->squares.size() : 0;
  }
};

inline SquareInventory squares_by_root(const Word& w) {
  SquareInventory inv;
  inv.word = w;
  for (Word& sq : distinct_squares(w)) {
    SquareRoot sr = lyndon_root_of_square(sq);
    inv.max_half_length = std::max(inv.max_half_length, sq.size() / 2);
    const Word key = sr.root.word();
    auto it = inv.by_root.find(key);
    if (it == inv.by_root.end()) {
      it = inv.by_root.emplace(key, RootSquares{std::move(sr.root), {}}).first;
    }
    it->second.squares.push_back({std::move(sq), sr.index, sr.exponent});
    ++inv.total;
  }
  return inv;
}

/// The quantities r, s, k_1..k_s, g and M attached to a root with squares.
struct RootStats {
  LyndonRoot root;
  std::size_t square_count = 0;    // |SQ_w(z)|
  std::size_t r = 0;               // largest exponent with (x_i)^{2r} in SQ(w)
  std::size_t s = 0;               // number of rotations attaining r
  std::vector<std::size_t> k_list; // those rotation indices, ascending, 1-based
  std::size_t g = 0;               // largest cyclic gap between consecutive k's
  std::size_t M = 0;               // 2|z|r - g + 1
};

inline RootStats root_stats(const RootSquares& rs) {
  if (rs.squares.empty()) throw domain_error("root has no squares: " + display(rs.root.word()));
  RootStats st{rs.root};
  st.square_count = rs.squares.size();
  for (const RootedSquare& sq : rs.squares) st.r = std::max(st.r, sq.exponent);
  for (const RootedSquare& sq : rs.squares) {
    if (sq.exponent == st.r) st.k_list.push_back(sq.index);
  }
  std::sort(st.k_list.begin(), st.k_list.end());
  st.s = st.k_list.size();
  const std::size_t len = rs.root.size();
  for (std::size_t j = 0; j < st.s; ++j) {
    const std::size_t next = j + 1 < st.s ? st.k_list[j + 1] : st.k_list[0] + len;
    st.g = std::max(st.g, next - st.k_list[j]);
  }
  st.M = 2 * len * st.r - st.g + 1;
  return st;
}

inline RootStats root_stats(const SquareInventory& inv, const LyndonRoot& z) {
  const RootSquares* rs = inv.find(z.word());
  if (!rs) throw domain_error("no square of " + display(inv.word) + " has Lyndon root " + display(z.word()));
  return root_stats(*rs);
}

inline RootStats root_stats(const Word& w, const LyndonRoot& z) {
  return root_stats(squares_by_root(w), z);
}

}  // namespace sqwords
