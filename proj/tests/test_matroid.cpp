#include <gtest/gtest.h>

#include "support.hpp"

using namespace cavoid;
using namespace cavoid::testing;

namespace {

bool has_loop(const IndependenceTable& t) {
  for (int e = 0; e < t.n; ++e) {
    if (!t.ind[1u << e]) return true;
  }
  return false;
}

}  // namespace

TEST(Oracles, CorpusSatisfiesAxioms) {
  for (const auto& m : matroid_corpus(80, 11)) {
    auto rep = axiom_check(*m);
    EXPECT_TRUE(rep.ok) << m->provenance() << ": " << rep.violation;
  }
}

TEST(Oracles, BrokenFamilyIsRejected) {
  // {0,1} and {2} as bases violate the exchange axiom.
  ExplicitMatroid bad(3, {{0, 1}, {2}});
  EXPECT_FALSE(axiom_check(bad).ok);
}

TEST(Oracles, FixtureMatroidEqualsGraphic) {
  IndependenceTable a(*parse_matroid(slurp(fixture_path("fig1.matroid"))));
  IndependenceTable b(*graphic(load("fig1.cg")));
  EXPECT_EQ(a.ind, b.ind);
}

TEST(Oracles, DualRankFormula) {
  for (const auto& m : matroid_corpus(40, 5)) {
    auto d = dual(m);
    IndependenceTable t(*m), u(*d);
    unsigned full = (1u << t.n) - 1;
    for (unsigned x = 0; x <= full; ++x) {
      int expect = __builtin_popcount(x) + t.rank(full & ~x) - t.rank(full);
      ASSERT_EQ(u.rank(x), expect) << m->provenance();
    }
  }
}

TEST(Oracles, CographicIsDualOfGraphic) {
  for (const auto* name : {"fig1.cg", "k4.cg", "c4.cg", "fig2_g3.cg"}) {
    IndependenceTable a(*cographic(load(name))), b(*dual(graphic(load(name))));
    EXPECT_EQ(a.ind, b.ind) << name;
  }
}

TEST(Partition, MatchesBruteForceAndDensity) {
  for (const auto& m : matroid_corpus(120, 23)) {
    IndependenceTable t(*m);
    if (has_loop(t)) {
      EXPECT_THROW(partition_min(*m), Error);
      continue;
    }
    auto p = partition_min(*m);
    int got = static_cast<int>(p.blocks.size());
    EXPECT_EQ(got, brute_partition_min(t)) << m->provenance();
    EXPECT_EQ(got, brute_density(t)) << m->provenance();
    unsigned covered = 0;
    for (const auto& b : p.blocks) {
      unsigned x = to_mask(b);
      EXPECT_TRUE(t.ind[x]);
      EXPECT_EQ(covered & x, 0u);
      covered |= x;
    }
    EXPECT_EQ(covered, (1u << t.n) - 1);
  }
}

TEST(Partition, OracleCallsArePolynomial) {
  auto m = graphic(load("k4.cg"));
  m->reset_calls();
  partition_min(*m);
  // 6 elements, 2 blocks; the engine never approaches 2^6 * blocks probes.
  EXPECT_LT(m->oracle_calls(), 200);
}

TEST(Packing, MatchesBruteForceWithCertificate) {
  for (const auto& m : matroid_corpus(100, 31)) {
    IndependenceTable t(*m);
    unsigned full = (1u << t.n) - 1;
    int r = t.rank(full);
    for (int k = 1; k <= 3; ++k) {
      auto p = pack_k_bases(*m, k);
      ASSERT_EQ(p.ok, brute_k_disjoint_bases(t, k)) << m->provenance() << " k=" << k;
      if (p.ok) {
        unsigned used = 0;
        for (const auto& b : p.bases) {
          unsigned x = to_mask(b);
          EXPECT_TRUE(t.ind[x]);
          EXPECT_EQ(__builtin_popcount(x), r);
          EXPECT_EQ(used & x, 0u);
          used |= x;
        }
      } else {
        unsigned a = to_mask(p.span_set);
        EXPECT_LT(__builtin_popcount(full & ~a) + k * t.rank(a), k * r) << m->provenance();
      }
    }
  }
}

TEST(Packing, GraphicViolatorBreaksTreePackingBound) {
  ColoredGraph g = load("c4.cg");
  auto p = pack_k_bases(*graphic(g), 2);
  ASSERT_FALSE(p.ok);
  // Deleting F leaves c components; |F| < k (c - 1).
  EXPECT_LT(static_cast<int>(p.violating.size()), 2 * (p.components_without_violating - 1));
}

TEST(Cuts, FindCutMatchesDefinition) {
  for (const auto& m : matroid_corpus(60, 41)) {
    IndependenceTable t(*m);
    unsigned full = (1u << t.n) - 1;
    int r = t.rank(full);
    for (int l = 1; l <= 2; ++l) {
      bool any = false;
      for (unsigned x = 1; x <= full; ++x) {
        if (__builtin_popcount(x) <= l && t.rank(full & ~x) < r) any = true;
      }
      auto c = find_cut_at_most(*m, l);
      EXPECT_EQ(c.has_value(), any) << m->provenance();
      if (c) {
        unsigned x = to_mask(*c);
        EXPECT_LT(t.rank(full & ~x), r);
        for (int e : *c) EXPECT_EQ(t.rank(full & ~(x & ~(1u << e))), r) << "cut not minimal";
      }
    }
  }
}

TEST(Courteous, CheckMatchesDefinition) {
  for (const auto& m : matroid_corpus(40, 51)) {
    IndependenceTable t(*m);
    unsigned full = (1u << t.n) - 1;
    int r = t.rank(full);
    Rng rng(t.n * 7 + r);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<ColorSet> coloring(t.n);
      for (auto& cs : coloring) {
        cs = {1 + rng.below(3)};
        if (rng.coin()) cs.push_back(4);
        ColoredGraph::normalize(cs);
      }
      for (int l = 1; l <= 2; ++l) {
        bool expect = true;
        for_each_subset(4, l, [&](const std::vector<int>& sub) {
          unsigned del = 0;
          for (int e = 0; e < t.n; ++e) {
            for (int ci : sub) {
              if (std::binary_search(coloring[e].begin(), coloring[e].end(), ci + 1)) del |= 1u << e;
            }
          }
          expect = t.rank(full & ~del) == r;
          return !expect;
        });
        EXPECT_EQ(courteous_check(*m, coloring, l).holds, expect) << m->provenance();
      }
    }
  }
}

// Edge-CA 1-edge-connected colorings of G are the courteous colorings of
// M(G): each color class is independent in the dual.
TEST(Courteous, GraphicMatchesGraphVerification) {
  for (const auto& g : bridgeless_graphs(5)) {
    auto m = graphic(g);
    for (const auto& a : restricted_growth_strings(g.edge_count(), 3)) {
      std::vector<ColorSet> coloring;
      for (Color c : a) coloring.push_back({c});
      bool graph_side = verify(apply_coloring(g, Target::edges, a), {Part::edge, ConnMode::edge, 1, 1, Scope::undirected}).holds;
      EXPECT_EQ(courteous_check(*m, coloring, 1).holds, graph_side) << serialize(g);
    }
  }
}
