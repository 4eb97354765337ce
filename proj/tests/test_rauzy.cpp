#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sqwords/dot.hpp"
#include "sqwords/rauzy.hpp"

using namespace sqwords;

namespace {

Word W(const std::string& s) { return Word::from_bytes(s); }

std::vector<std::string> strs(const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(w.bytes());
  return out;
}

std::vector<std::vector<std::string>> arcs_of(const std::vector<Circuit>& cs) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : cs) out.push_back(strs(c.arcs));
  return out;
}

std::vector<std::vector<boost::multiprecision::cpp_rational>> dense(const std::vector<CycleVector>& vs) {
  std::vector<std::vector<boost::multiprecision::cpp_rational>> rows;
  for (const auto& v : vs) {
    std::vector<boost::multiprecision::cpp_rational> row(v.dimension, 0);
    for (auto [i, x] : v.entries) row[i] = x;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(BuildRauzy, Examples) {
  const Word w = W("aabaabaa");
  RauzyGraph g = build_rauzy(w, 1);
  EXPECT_EQ(strs(g.vertices), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(strs(g.arcs), (std::vector<std::string>{"aa", "ab", "ba"}));
  EXPECT_EQ(g.initial(W("ab")), W("a"));
  EXPECT_EQ(g.terminal(W("ab")), W("b"));

  g = build_rauzy(w, 0);
  EXPECT_EQ(strs(g.vertices), (std::vector<std::string>{""}));
  EXPECT_EQ(strs(g.arcs), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(g.initial(W("a")), Word{});
  EXPECT_EQ(g.terminal(W("a")), Word{});

  g = build_rauzy(w, 8);
  EXPECT_EQ(strs(g.vertices), (std::vector<std::string>{"aabaabaa"}));
  EXPECT_TRUE(g.arcs.empty());
  EXPECT_THROW(build_rauzy(w, 9), std::out_of_range);
}

TEST(BuildUnion, Examples) {
  RauzyUnion u = build_union(W("aabaabaa"));
  EXPECT_EQ(u.counts.vertices, 21u);
  EXPECT_EQ(u.counts.arcs, 20u);
  EXPECT_EQ(u.counts.components, 9u);
  EXPECT_EQ(u.cyclomatic(), 8);

  u = build_union(W("a"));
  EXPECT_EQ(u.counts.vertices, 2u);
  EXPECT_EQ(u.counts.arcs, 1u);
  EXPECT_EQ(u.counts.components, 2u);
  EXPECT_EQ(u.cyclomatic(), 1);

  u = build_union(Word{});
  EXPECT_EQ(u.counts.vertices, 1u);
  EXPECT_EQ(u.counts.arcs, 0u);
  EXPECT_EQ(u.counts.components, 1u);
  EXPECT_EQ(u.cyclomatic(), 0);
}

TEST(BuildUnion, ArcIndexIsShortlex) {
  const RauzyUnion u = build_union(W("aabaabaa"));
  ASSERT_EQ(u.arcs.size(), 20u);
  EXPECT_EQ(u.arcs.arc(0), W("a"));
  EXPECT_EQ(u.arcs.arc(1), W("b"));
  EXPECT_EQ(u.arcs.arc(2), W("aa"));
  EXPECT_EQ(u.arcs.arc(19), W("aabaabaa"));
  EXPECT_FALSE(u.arcs.find(W("bb")));
}

TEST(Cyclomatic, SingleLayerAndEdgeless) {
  EXPECT_EQ(cyclomatic_number(build_rauzy(W("aabaabaa"), 1)), 2);
  EXPECT_EQ(cyclomatic_number(build_rauzy(W("aabaabaa"), 8)), 0);
}

TEST(Cyclomatic, EqualsWordLengthAndMatchesOracle) {
  for (std::size_t n = 0; n <= 9; ++n) {
    oracle::for_each_word(n, 2, [](const std::string& s) {
      const RauzyUnion u = build_union(W(s));
      ASSERT_EQ(u.cyclomatic(), static_cast<long long>(s.size())) << s;
      ASSERT_EQ(u.cyclomatic(), oracle::cyclomatic(s)) << s;
      ASSERT_EQ(u.counts.vertices, oracle::all_factors(s).size());
      ASSERT_EQ(u.counts.components, s.size() + 1);
    });
  }
}

TEST(CircuitFor, Examples) {
  const Word w = W("aabaabaa");
  Circuit c = circuit_for(w, LyndonRoot(W("ab")), 2);
  EXPECT_EQ(strs(c.arcs), (std::vector<std::string>{"ab", "ba"}));
  EXPECT_EQ(c.order(), 1u);
  c = circuit_for(w, LyndonRoot(W("a")), 1);
  EXPECT_EQ(strs(c.arcs), (std::vector<std::string>{"a"}));
  EXPECT_EQ(c.order(), 0u);
  c = circuit_for(w, LyndonRoot(W("aab")), 4);
  EXPECT_EQ(strs(c.arcs), (std::vector<std::string>{"aaba", "abaa", "baab"}));
  EXPECT_TRUE(is_closed_walk(c));
  EXPECT_THROW(circuit_for(w, LyndonRoot(W("ab")), 3), not_a_factor_error);
  EXPECT_THROW(circuit_for(w, LyndonRoot(W("ab")), 0), sqwords::domain_error);
}

TEST(CircuitFor, ShortCircuitsBelowRootLengthStillChain) {
  // m < |z|: arcs may repeat, the walk still closes.
  const Circuit c = circuit_for(W("aabaabaa"), LyndonRoot(W("aab")), 2);
  EXPECT_EQ(strs(c.arcs), (std::vector<std::string>{"aa", "ab", "ba"}));
  const Circuit d = circuit_for(W("aabaabaa"), LyndonRoot(W("aab")), 1);
  EXPECT_EQ(strs(d.arcs), (std::vector<std::string>{"a", "a", "b"}));
  EXPECT_TRUE(is_closed_walk(d));
}

TEST(CsSet, Aabaabaa) {
  const Word w = W("aabaabaa");
  using V = std::vector<std::vector<std::string>>;
  EXPECT_EQ(arcs_of(cs_set(w, LyndonRoot(W("a")))), (V{{"a"}, {"aa"}}));
  EXPECT_EQ(arcs_of(cs_set(w, LyndonRoot(W("b")))), (V{{"b"}}));
  EXPECT_EQ(arcs_of(cs_set(w, LyndonRoot(W("ab")))), (V{{"ab", "ba"}}));
  EXPECT_EQ(arcs_of(cs_set(w, LyndonRoot(W("aab")))),
            (V{{"aab", "aba", "baa"}, {"aaba", "abaa", "baab"}, {"aabaa", "abaab", "baaba"},
               {"aabaab", "abaaba", "baabaa"}}));
  EXPECT_THROW(cs_set(w, LyndonRoot(W("abb"))), sqwords::domain_error);
}

TEST(CsSet, CanBeEmpty) { EXPECT_TRUE(cs_set(W("ab"), LyndonRoot(W("ab"))).empty()); }

TEST(CycleVector, Examples) {
  const Word w = W("aabaabaa");
  const RauzyUnion u = build_union(w);
  CycleVector v = cycle_vector(circuit_for(w, LyndonRoot(W("ab")), 2), u.arcs);
  ASSERT_EQ(v.nonzeros(), 2u);
  EXPECT_EQ(v.at(*u.arcs.find(W("ab"))), 1);
  EXPECT_EQ(v.at(*u.arcs.find(W("ba"))), 1);
  EXPECT_EQ(v.at(*u.arcs.find(W("aa"))), 0);

  v = cycle_vector(circuit_for(w, LyndonRoot(W("a")), 1), u.arcs);
  ASSERT_EQ(v.nonzeros(), 1u);
  EXPECT_EQ(v.at(*u.arcs.find(W("a"))), 1);

  v = cycle_vector(circuit_for(w, LyndonRoot(W("aab")), 3), u.arcs);
  ASSERT_EQ(v.nonzeros(), 3u);
  for (const char* a : {"aab", "aba", "baa"}) EXPECT_EQ(v.at(*u.arcs.find(W(a))), 1);

  // repeated arcs accumulate
  v = cycle_vector(circuit_for(w, LyndonRoot(W("aab")), 1), u.arcs);
  EXPECT_EQ(v.at(*u.arcs.find(W("a"))), 2);

  const RauzyUnion other = build_union(W("ab"));
  EXPECT_THROW(cycle_vector(circuit_for(w, LyndonRoot(W("aab")), 3), other.arcs), std::out_of_range);
}

TEST(IndependenceRank, Examples) {
  const Word w = W("aabaabaa");
  const RauzyUnion u = build_union(w);
  const CircuitFamily fam = all_cs(w);
  std::vector<CycleVector> vs;
  for (const auto& [z, cs] : fam.by_root) {
    for (const auto& c : cs) vs.push_back(cycle_vector(c, u.arcs));
  }
  ASSERT_EQ(vs.size(), 8u);
  EXPECT_EQ(independence_rank(vs), 8u);

  std::vector<CycleVector> dup{vs[0], vs[0]};
  EXPECT_EQ(independence_rank(dup), 1u);
  EXPECT_EQ(independence_rank(std::vector<CycleVector>{}), 0u);

  CycleVector wrong = vs[0];
  wrong.dimension += 1;
  std::vector<CycleVector> mixed{vs[0], wrong};
  EXPECT_THROW(independence_rank(mixed), std::invalid_argument);
}

TEST(IndependenceRank, DetectsSignedDependencies) {
  // v3 = 2 v1 - 3 v2
  CycleVector v1{4, {{0, 1}, {2, 5}}};
  CycleVector v2{4, {{0, 2}, {1, -1}, {3, 7}}};
  CycleVector v3{4, {{0, -4}, {1, 3}, {2, 10}, {3, -21}}};
  std::vector<CycleVector> vs{v1, v2, v3};
  EXPECT_EQ(independence_rank(vs), 2u);
  EXPECT_EQ(oracle::rank(dense(vs)), 2u);
}

TEST(IndependenceRank, AgreesWithDenseOracleOnRandomIntegerVectors) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> val(-2, 2);
  for (int t = 0; t < 300; ++t) {
    const std::size_t rows = 1 + t % 7, cols = 1 + (t / 7) % 6;
    std::vector<CycleVector> vs;
    for (std::size_t r = 0; r < rows; ++r) {
      CycleVector v{cols, {}};
      for (std::size_t c = 0; c < cols; ++c) {
        const int x = t % 3 == 0 ? val(rng) * (val(rng) != 0) : val(rng);
        if (x) v.entries.emplace_back(c, x);
      }
      vs.push_back(v);
    }
    if (t % 5 == 0 && rows >= 2) vs.back() = vs.front();
    ASSERT_EQ(independence_rank(vs), oracle::rank(dense(vs))) << t;
  }
}

// Distinct roots own distinct smallest arcs, every CS circuit with m >= |z| is
// a 0/1 vector with |z| ones, and the union has full rank at most |w|.
TEST(CsFamily, StructuralPropertiesOnBinaryWords) {
  for (std::size_t n = 0; n <= 10; ++n) {
    oracle::for_each_word(n, 2, [](const std::string& s) {
      const Word w = W(s);
      const FactorIndex factors(w);
      const RauzyUnion u = build_union(w);
      const CircuitFamily fam = all_cs(w, factors);
      std::set<Word> smallest;
      std::vector<CycleVector> vs;
      for (const auto& [z, cs] : fam.by_root) {
        for (const Circuit& c : cs) {
          ASSERT_TRUE(smallest.insert(c.smallest_arc()).second) << s;
          ASSERT_EQ(c.smallest_arc(), fractional_power(z.word(), c.m));
          ASSERT_TRUE(is_closed_walk(c));
          std::set<Word> arcs(c.arcs.begin(), c.arcs.end());
          const auto conj = conj_power_set(z, c.m);
          ASSERT_EQ(arcs, std::set<Word>(conj.begin(), conj.end()));
          CycleVector v = cycle_vector(c, u.arcs);
          ASSERT_EQ(v.nonzeros(), z.size());
          for (auto [i, x] : v.entries) ASSERT_EQ(x, 1);
          vs.push_back(std::move(v));
        }
        // downward closure below the top of the range
        if (!cs.empty()) {
          for (std::size_t m = 0; m <= cs.back().m; ++m) {
            for (const Word& v : conj_power_set(z, m)) ASSERT_TRUE(factors.contains(v));
          }
        }
      }
      ASSERT_EQ(independence_rank(vs), vs.size()) << s;
      ASSERT_LE(vs.size(), s.size());
      ASSERT_EQ(oracle::rank(dense(vs)), vs.size()) << s;
    });
  }
}

TEST(Dot, SingleLayer) {
  std::ostringstream os;
  DotWriter().write(os, build_rauzy(W("aabaabaa"), 1));
  const std::string dot = os.str();
  EXPECT_NE(dot.find("digraph rauzy_1 {"), std::string::npos);
  EXPECT_NE(dot.find("\"a\" -> \"b\" [label=\"ab\"];"), std::string::npos);
  EXPECT_NE(dot.find("\"b\" -> \"a\" [label=\"ba\"];"), std::string::npos);
  EXPECT_NE(dot.find("\"a\" -> \"a\" [label=\"aa\"];"), std::string::npos);
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '>'), 3);
}

TEST(Dot, UnionWithCsMarks) {
  const Word w = W("aabaabaa");
  std::ostringstream os;
  DotWriter(cs_smallest_arcs(all_cs(w))).write(os, build_union(w));
  const std::string dot = os.str();
  std::size_t dashed = 0;
  for (std::size_t p = dot.find("style=dashed"); p != std::string::npos; p = dot.find("style=dashed", p + 1)) ++dashed;
  EXPECT_EQ(dashed, 8u);
  EXPECT_NE(dot.find("\"ε\" -> \"ε\" [label=\"a\", style=dashed];"), std::string::npos);
  EXPECT_NE(dot.find("subgraph cluster_8"), std::string::npos);
}

TEST(Dot, QuotesSpecialCharacters) { EXPECT_EQ(DotWriter::quote(W("a\"b")), "\"a\\\"b\""); }
