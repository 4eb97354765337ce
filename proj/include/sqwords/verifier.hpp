#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "sqwords/rauzy.hpp"
#include "sqwords/squares.hpp"

namespace sqwords {

using rational = boost::multiprecision::cpp_rational;
using boost::multiprecision::cpp_int;

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const rational& q) {
  const cpp_int num = boost::multiprecision::numerator(q);
  const cpp_int den = boost::multiprecision::denominator(q);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

/// H_k = 1 + 1/2 + ... + 1/k.
inline rational harmonic(std::size_t k) {
  rational h = 0;
  for (std::size_t i = 1; i <= k; ++i) h += rational(1, static_cast<long long>(i));
  return h;
}

struct CheckRecord {
  std::string name;
  std::string root;  // empty for word-level checks
  std::string lhs;
  std::string rhs;
  bool pass = true;
  bool skipped = false;
  std::string detail;
  nlohmann::json witness;  // filled on failure
};

/// Everything the checks need about one word, computed once.
struct WordAnalysis {
  Word word;
  FactorIndex factors;
  SquareInventory squares;
  CircuitFamily circuits;

  explicit WordAnalysis(Word w)
      : word(std::move(w)), factors(word), squares(squares_by_root(word)), circuits(all_cs(word, factors)) {}

  const std::vector<Circuit>& cs(const LyndonRoot& z) const {
    for (const auto& [root, cs] : circuits.by_root) {
      if (root == z) return cs;
    }
    throw domain_error(display(z.word()) + " is not a Lyndon factor of " + display(word));
  }
};

namespace detail {

inline nlohmann::json circuit_json(const Circuit& c) {
  nlohmann::json arcs = nlohmann::json::array();
  for (const Word& a : c.arcs) arcs.push_back(display(a));
  return {{"m", c.m}, {"order", c.order()}, {"arcs", arcs}};
}

inline nlohmann::json witness(const WordAnalysis& a, const LyndonRoot* z) {
  nlohmann::json out{{"word", display(a.word)}};
  const RauzyUnion u = build_union(a.word);
  nlohmann::json circuits = nlohmann::json::array();
  for (const auto& [root, cs] : a.circuits.by_root) {
    if (z && !(root == *z)) continue;
    for (const Circuit& c : cs) {
      nlohmann::json entry = circuit_json(c);
      entry["root"] = display(root.word());
      nlohmann::json vec = nlohmann::json::array();
      for (auto [pos, val] : cycle_vector(c, u.arcs).entries) vec.push_back({pos, val});
      entry["vector"] = vec;
      circuits.push_back(entry);
    }
  }
  if (z) out["root"] = display(z->word());
  out["circuits"] = circuits;
  return out;
}

inline CheckRecord finish(CheckRecord rec, const WordAnalysis& a, const LyndonRoot* z) {
  if (!rec.pass) rec.witness = witness(a, z);
  return rec;
}

}  // namespace detail

/// |SQ(w)| <= |w| - σ.
inline CheckRecord check_sigma_bound(const WordAnalysis& a) {
  if (a.word.empty()) throw domain_error("check_sigma_bound: empty word");
  const long long lhs = static_cast<long long>(a.squares.total);
  const long long rhs = static_cast<long long>(a.word.size()) - static_cast<long long>(alphabet_size(a.word));
  CheckRecord rec{"sigma_bound", "", std::to_string(lhs), std::to_string(rhs), lhs <= rhs};
  return detail::finish(std::move(rec), a, nullptr);
}

/// |SQ_w(z)| = |z|(r-1)+s and |CS_w(z)| >= 2|z|(r-1)+s+1.
/// The record's lhs/rhs carry the inequality; the equality is in `detail`.
inline CheckRecord check_sqs_cs(const WordAnalysis& a, const LyndonRoot& z) {
  CheckRecord rec{"sqs_cs", display(z.word())};
  const RootSquares* rs = a.squares.find(z.word());
  if (!rs) {
    rec.skipped = true;
    rec.detail = "no squares with this root";
    return rec;
  }
  const RootStats st = root_stats(*rs);
  const std::size_t len = z.size();
  const std::size_t predicted = len * (st.r - 1) + st.s;
  const std::size_t cs_size = a.cs(z).size();
  const std::size_t cs_floor = 2 * len * (st.r - 1) + st.s + 1;
  rec.lhs = std::to_string(cs_size);
  rec.rhs = std::to_string(cs_floor);
  rec.pass = st.square_count == predicted && cs_size >= cs_floor;
  rec.detail = "|SQ_w(z)|=" + std::to_string(st.square_count) + " |z|(r-1)+s=" + std::to_string(predicted) +
               " r=" + std::to_string(st.r) + " s=" + std::to_string(st.s) + " g=" + std::to_string(st.g) +
               " M=" + std::to_string(st.M);
  return detail::finish(std::move(rec), a, &z);
}

/// AVG_w(z) = |SQ_w(z)|/|CS_w(z)| <= |z|/(|z|+1), compared by cross-multiplication.
inline CheckRecord check_avg_bound(const WordAnalysis& a, const LyndonRoot& z) {
  const std::size_t cs_size = a.cs(z).size();
  if (cs_size == 0) throw domain_error("check_avg_bound: CS_w(" + display(z.word()) + ") is empty");
  const std::size_t sq = a.squares.count(z.word());
  const std::size_t len = z.size();
  CheckRecord rec{"avg_bound", display(z.word())};
  rec.lhs = to_string(rational(sq, cs_size));
  rec.rhs = to_string(rational(len, len + 1));
  rec.pass = sq * (len + 1) <= len * cs_size;
  return detail::finish(std::move(rec), a, &z);
}

/// Every circuit of ⋃CS at order ℓ carries load AVG_w(z) <= (ℓ+1)/(ℓ+2).
/// Reports the circuit with the least slack.
inline CheckRecord check_sqload(const WordAnalysis& a) {
  CheckRecord rec{"sqload"};
  std::optional<rational> best_slack;
  std::size_t circuits = 0;
  for (const auto& [z, cs] : a.circuits.by_root) {
    if (cs.empty()) continue;
    const rational load(a.squares.count(z.word()), cs.size());
    for (const Circuit& c : cs) {
      ++circuits;
      const std::size_t order = c.order();
      const rational bound(order + 1, order + 2);
      const rational slack = bound - load;
      if (slack < 0) rec.pass = false;
      if (!best_slack || slack < *best_slack) {
        best_slack = slack;
        rec.lhs = to_string(load);
        rec.rhs = to_string(bound);
        rec.root = display(z.word());
        rec.detail = "order " + std::to_string(order);
      }
    }
  }
  if (circuits == 0) {
    rec.lhs = "0";
    rec.rhs = "0";
    rec.detail = "no circuits";
  } else {
    rec.detail += ", " + std::to_string(circuits) + " circuits checked";
  }
  return detail::finish(std::move(rec), a, nullptr);
}

/// With L the longest square half and n = |w|:
///   L² < n:  |SQ(w)| <= n - √n, checked as (n - |SQ|)² >= n with |SQ| <= n;
///   L² >= n: |SQ(w)| <= n - (H_{L+1} - 1).
inline CheckRecord check_counting_bound(const WordAnalysis& a) {
  if (a.word.empty()) throw domain_error("check_counting_bound: empty word");
  const std::size_t n = a.word.size();
  const std::size_t sq = a.squares.total;
  const std::size_t L = a.squares.max_half_length;
  CheckRecord rec{"counting_bound", "", std::to_string(sq)};
  if (L * L < n) {
    rec.rhs = std::to_string(n) + "-sqrt(" + std::to_string(n) + ")";
    rec.pass = sq <= n && (n - sq) * (n - sq) >= n;
    rec.detail = "short squares, L=" + std::to_string(L);
  } else {
    const rational bound = rational(n) - (harmonic(L + 1) - 1);
    rec.rhs = to_string(bound);
    rec.pass = rational(sq) <= bound;
    rec.detail = "long square, L=" + std::to_string(L);
  }
  return detail::finish(std::move(rec), a, nullptr);
}

inline CheckRecord check_sigma_bound(const Word& w) { return check_sigma_bound(WordAnalysis(w)); }
inline CheckRecord check_sqs_cs(const Word& w, const LyndonRoot& z) { return check_sqs_cs(WordAnalysis(w), z); }
inline CheckRecord check_avg_bound(const Word& w, const LyndonRoot& z) { return check_avg_bound(WordAnalysis(w), z); }
inline CheckRecord check_sqload(const Word& w) { return check_sqload(WordAnalysis(w)); }
inline CheckRecord check_counting_bound(const Word& w) { return check_counting_bound(WordAnalysis(w)); }

struct VerificationReport {
  Word word;
  std::size_t sigma = 0;
  std::size_t sq_total = 0;
  std::vector<CheckRecord> checks;
  bool pass = true;

  std::vector<const CheckRecord*> failures() const {
    std::vector<const CheckRecord*> out;
    for (const auto& c : checks) {
      if (!c.pass) out.push_back(&c);
    }
    return out;
  }
};

/// Runs every bound check plus the structural checks on Γ_w: cyclomatic number
/// equals |w|, ⋃CS has full rank and at most |w| members, and [z]_{M-1} ⊆ F(w)
/// at the top of each root's range.
inline VerificationReport verify_all(const Word& w) {
  const WordAnalysis a(w);
  VerificationReport report{w, alphabet_size(w), a.squares.total};
  auto& out = report.checks;

  const RauzyUnion u = build_union(w);
  out.push_back(detail::finish({"cyclomatic", "", std::to_string(u.cyclomatic()), std::to_string(w.size()),
                                u.cyclomatic() == static_cast<long long>(w.size())},
                               a, nullptr));

  std::vector<CycleVector> vectors;
  for (const auto& [z, cs] : a.circuits.by_root) {
    for (const Circuit& c : cs) vectors.push_back(cycle_vector(c, u.arcs));
  }
  const std::size_t total = a.circuits.size();
  const std::size_t rank = independence_rank(vectors);
  out.push_back(detail::finish({"independence_rank", "", std::to_string(rank), std::to_string(total), rank == total},
                               a, nullptr));
  out.push_back(detail::finish({"cs_union_size", "", std::to_string(total), std::to_string(w.size()), total <= w.size()},
                               a, nullptr));

  for (const auto& [z, cs] : a.circuits.by_root) {
    const std::size_t top = max_conj_power(a.factors, z, 1);
    if (top >= 1) {
      bool contained = true;
      for (const Word& v : conj_power_set(z, top - 1)) contained = contained && a.factors.contains(v);
      CheckRecord rec{"conjm_reduce", display(z.word()), std::to_string(top - 1), std::to_string(top), contained};
      rec.detail = "[z]_{M-1} within F(w) at M=" + std::to_string(top);
      out.push_back(detail::finish(std::move(rec), a, &z));
    }
  }

  if (!w.empty()) {
    out.push_back(check_sigma_bound(a));
    for (const auto& [z, cs] : a.circuits.by_root) {
      if (a.squares.find(z.word())) out.push_back(check_sqs_cs(a, z));
    }
    for (const auto& [z, cs] : a.circuits.by_root) {
      if (!cs.empty()) out.push_back(check_avg_bound(a, z));
    }
    out.push_back(check_sqload(a));
    out.push_back(check_counting_bound(a));
  }

  for (const auto& c : out) report.pass = report.pass && c.pass;
  return report;
}

inline nlohmann::json to_json(const CheckRecord& c) {
  nlohmann::json j{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}};
  if (!c.root.empty()) j["root"] = c.root;
  if (c.skipped) j["skipped"] = true;
  if (!c.detail.empty()) j["detail"] = c.detail;
  if (!c.witness.is_null()) j["witness"] = c.witness;
  return j;
}

/// {word, n, sigma, sq_total, checks: [{name, lhs, rhs, pass, ...}], pass}
inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"word", display(r.word)}, {"n", r.word.size()}, {"sigma", r.sigma},
          {"sq_total", r.sq_total}, {"checks", checks}, {"pass", r.pass}};
}

}  // namespace sqwords
