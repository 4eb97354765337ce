#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sqwords/words.hpp"

namespace sqwords {

/// Rauzy graph of order ℓ: vertices are the length-ℓ factors, arcs the
/// length-(ℓ+1) factors, arc u running from u[1..ℓ] to u[2..ℓ+1].
/// Order 0 is a bouquet of loops on ε, one per letter.
struct RauzyGraph {
  std::size_t order = 0;
  std::vector<Word> vertices;  // lexicographic
  std::vector<Word> arcs;      // lexicographic

  Word initial(const Word& arc) const { return arc.prefix(order); }
  Word terminal(const Word& arc) const { return arc.suffix_from(1); }
};

inline RauzyGraph build_rauzy(const Word& w, std::size_t order) {
  if (order > w.size()) {
    throw std::out_of_range("Rauzy order " + std::to_string(order) + " exceeds word length " +
                            std::to_string(w.size()));
  }
  RauzyGraph g;
  g.order = order;
  g.vertices = factor_set(w, order);
  if (order < w.size()) g.arcs = factor_set(w, order + 1);
  return g;
}

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

struct GraphCounts {
  std::size_t vertices = 0;
  std::size_t arcs = 0;
  std::size_t components = 0;

  /// n_a - n_v + n_c
  long long cyclomatic() const {
    return static_cast<long long>(arcs) - static_cast<long long>(vertices) +
           static_cast<long long>(components);
  }
};

/// Counts with components taken on the undirected shadow of the graph.
inline GraphCounts graph_counts(const RauzyGraph& g) {
  std::unordered_map<Word, std::size_t> id;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) id.emplace(g.vertices[i], i);
  detail::DisjointSets sets(g.vertices.size());
  std::size_t components = g.vertices.size();
  for (const Word& a : g.arcs) {
    if (sets.unite(id.at(g.initial(a)), id.at(g.terminal(a)))) --components;
  }
  return {g.vertices.size(), g.arcs.size(), components};
}

inline long long cyclomatic_number(const RauzyGraph& g) { return graph_counts(g).cyclomatic(); }

/// Position of every arc of Γ_w in the order (length, then lexicographic).
/// An arc of order ℓ is a word of length ℓ+1, so the word alone identifies it.
class ArcIndex {
 public:
  ArcIndex() = default;
  explicit ArcIndex(std::vector<Word> arcs) : arcs_(std::move(arcs)) {
    std::sort(arcs_.begin(), arcs_.end(), ShortlexLess{});
    for (std::size_t i = 0; i < arcs_.size(); ++i) pos_.emplace(arcs_[i], i);
  }

  std::size_t size() const noexcept { return arcs_.size(); }
  const Word& arc(std::size_t i) const { return arcs_.at(i); }
  std::optional<std::size_t> find(const Word& arc) const {
    auto it = pos_.find(arc);
    if (it == pos_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<Word> arcs_;
  std::unordered_map<Word, std::size_t> pos_;
};

/// Γ_w: the Rauzy graphs of all orders 0..|w| side by side.
struct RauzyUnion {
  Word word;
  std::vector<RauzyGraph> layers;  // layers[ℓ] has order ℓ
  ArcIndex arcs;
  GraphCounts counts;

  long long cyclomatic() const { return counts.cyclomatic(); }
};

inline RauzyUnion build_union(const Word& w) {
  RauzyUnion u;
  u.word = w;
  std::vector<Word> all_arcs;
  for (std::size_t order = 0; order <= w.size(); ++order) {
    RauzyGraph g = build_rauzy(w, order);
    GraphCounts c = graph_counts(g);
    u.counts.vertices += c.vertices;
    u.counts.arcs += c.arcs;
    u.counts.components += c.components;
    all_arcs.insert(all_arcs.end(), g.arcs.begin(), g.arcs.end());
    u.layers.push_back(std::move(g));
  }
  u.arcs = ArcIndex(std::move(all_arcs));
  return u;
}

inline long long cyclomatic_number(const RauzyUnion& u) { return u.cyclomatic(); }

/// Closed walk (x_1^{m/|z|}, ..., x_{|z|}^{m/|z|}) in Γ_w(m-1).
struct Circuit {
  LyndonRoot root;
  std::size_t m = 0;
  std::vector<Word> arcs;

  std::size_t order() const noexcept { return m - 1; }
  /// z^{m/|z|}, the lexicographically smallest arc when m >= |z|.
  const Word& smallest_arc() const { return arcs.front(); }
};

namespace detail {

inline Circuit make_circuit(const LyndonRoot& z, std::size_t m) {
  Circuit c{z, m, {}};
  c.arcs.reserve(z.size());
  for (const Word& x : z.rotations()) c.arcs.push_back(fractional_power(x, m));
  return c;
}

inline bool chains(const Circuit& c) {
  const std::size_t len = c.arcs.size();
  for (std::size_t i = 0; i < len; ++i) {
    const Word& a = c.arcs[i];
    const Word& b = c.arcs[(i + 1) % len];
    if (a.suffix_from(1) != b.prefix(c.m - 1)) return false;
  }
  return true;
}

}  // namespace detail

inline bool is_closed_walk(const Circuit& c) { return detail::chains(c); }

inline Circuit circuit_for(const FactorIndex& factors, const LyndonRoot& z, std::size_t m) {
  if (m == 0) throw domain_error("circuit_for: m must be positive");
  Circuit c = detail::make_circuit(z, m);
  for (const Word& a : c.arcs) {
    if (!factors.contains(a)) {
      throw not_a_factor_error("circuit_for: " + display(a) + " is not a factor");
    }
  }
  if (!detail::chains(c)) throw std::logic_error("circuit_for: arcs do not chain");
  return c;
}

inline Circuit circuit_for(const Word& w, const LyndonRoot& z, std::size_t m) {
  return circuit_for(FactorIndex(w), z, m);
}

/// Largest m <= |w| with [z]_m inside F(w), scanning upward from `from`.
/// Valid m form a prefix of the naturals, so the first failure ends the scan.
/// Returns from - 1 when [z]_from is not contained.
inline std::size_t max_conj_power(const FactorIndex& factors, const LyndonRoot& z, std::size_t from) {
  std::size_t m = from;
  for (; m <= factors.word_length(); ++m) {
    bool all = true;
    for (const Word& x : z.rotations()) {
      if (!factors.contains(fractional_power(x, m))) {
        all = false;
        break;
      }
    }
    if (!all) break;
  }
  return m - 1;
}

/// CS_w(z): one circuit per m in [|z| .. M_max].
inline std::vector<Circuit> cs_set(const FactorIndex& factors, const LyndonRoot& z) {
  if (!factors.contains(z.word())) {
    throw domain_error("cs_set: " + display(z.word()) + " is not a factor");
  }
  std::vector<Circuit> out;
  const std::size_t top = max_conj_power(factors, z, z.size());
  for (std::size_t m = z.size(); m <= top; ++m) out.push_back(detail::make_circuit(z, m));
  return out;
}

inline std::vector<Circuit> cs_set(const Word& w, const LyndonRoot& z) {
  return cs_set(FactorIndex(w), z);
}

/// Sparse signed traversal counts over an ArcIndex, sorted by position.
struct CycleVector {
  std::size_t dimension = 0;
  std::vector<std::pair<std::size_t, long long>> entries;

  long long at(std::size_t i) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), std::pair<std::size_t, long long>{i, LLONG_MIN});
    return it != entries.end() && it->first == i ? it->second : 0;
  }
  std::size_t nonzeros() const noexcept { return entries.size(); }
};

/// Every arc of a circuit is walked forward, so each traversal contributes +1.
inline CycleVector cycle_vector(const Circuit& c, const ArcIndex& index) {
  std::map<std::size_t, long long> counts;
  for (const Word& a : c.arcs) {
    auto pos = index.find(a);
    if (!pos) throw std::out_of_range("cycle_vector: unknown arc " + display(a));
    ++counts[*pos];
  }
  CycleVector v{index.size(), {}};
  for (auto [pos, count] : counts) {
    if (count != 0) v.entries.emplace_back(pos, count);
  }
  return v;
}

/// Rank over ℚ of a family of cycle-vectors.
///
/// Exact integer elimination: each vector is reduced against the stored rows by
/// cross-multiplication on its leading position, then divided by the gcd of its
/// entries. Every step multiplies by a nonzero scalar, so the row space over ℚ
/// is unchanged and no fractions appear.
inline std::size_t independence_rank(std::span<const CycleVector> vectors) {
  using boost::multiprecision::cpp_int;
  using Row = std::vector<std::pair<std::size_t, cpp_int>>;
  if (vectors.empty()) return 0;
  const std::size_t dim = vectors.front().dimension;
  std::map<std::size_t, Row> basis;  // keyed by leading position

  auto combine = [](const Row& a, const cpp_int& ca, const Row& b, const cpp_int& cb) {
    // ca * a - cb * b
    Row out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.emplace_back(a[i].first, ca * a[i].second);
        ++i;
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, -cb * b[j].second);
        ++j;
      } else {
        cpp_int v = ca * a[i].second - cb * b[j].second;
        if (v != 0) out.emplace_back(a[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    cpp_int g = 0;
    for (auto& e : out) g = gcd(g, abs(e.second));
    if (g > 1) {
      for (auto& e : out) e.second /= g;
    }
    return out;
  };

  for (const CycleVector& v : vectors) {
    if (v.dimension != dim) throw std::invalid_argument("independence_rank: dimension mismatch");
    Row row;
    for (auto [pos, val] : v.entries) {
      if (val != 0) row.emplace_back(pos, cpp_int(val));
    }
    while (!row.empty()) {
      auto it = basis.find(row.front().first);
      if (it == basis.end()) {
        basis.emplace(row.front().first, std::move(row));
        break;
      }
      const Row& pivot = it->second;
      const cpp_int lead_row = row.front().second;
      const cpp_int lead_pivot = pivot.front().second;
      row = combine(row, lead_pivot, pivot, lead_row);
    }
  }
  return basis.size();
}

/// ⋃_z CS_w(z) over all Lyndon factors, grouped by root in shortlex root order.
struct CircuitFamily {
  std::vector<std::pair<LyndonRoot, std::vector<Circuit>>> by_root;

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [z, cs] : by_root) n += cs.size();
    return n;
  }
};

inline CircuitFamily all_cs(const Word& w, const FactorIndex& factors) {
  CircuitFamily family;
  for (LyndonRoot& z : lyndon_factors(w)) {
    auto cs = cs_set(factors, z);
    family.by_root.emplace_back(std::move(z), std::move(cs));
  }
  return family;
}

inline CircuitFamily all_cs(const Word& w) { return all_cs(w, FactorIndex(w)); }

}  // namespace sqwords
