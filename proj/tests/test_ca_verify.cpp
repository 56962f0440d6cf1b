#include <gtest/gtest.h>

#include "support.hpp"

using namespace cavoid;
using namespace cavoid::testing;

namespace {

constexpr Color kRed = 1;

Notion edge_notion(int k, int l, ConnMode mode = ConnMode::edge) { return {Part::edge, mode, k, l, Scope::undirected}; }

bool holds(const std::string& fixture, Notion n) { return verify(load(fixture), n).holds; }

std::vector<ColoredGraph> random_corpus(bool directed, bool vertex_colors, int count, std::uint64_t seed0) {
  std::vector<ColoredGraph> out;
  for (int i = 0; i < count; ++i) {
    RandomSpec s;
    s.seed = seed0 + i;
    Rng rng(s.seed * 977);
    s.n = 2 + rng.below(4);
    s.m = rng.below(7);
    s.colors = 1 + rng.below(3);
    s.directed = directed;
    s.loops = rng.coin();
    s.vertex_colors = vertex_colors;
    s.max_colors_per_element = 2;
    ColoredGraph g = random_colored_graph(s);
    if (directed) g.root = 0;
    out.push_back(std::move(g));
  }
  return out;
}

ColoredGraph bidirect(const ColoredGraph& g) {
  ColoredGraph d = g;
  d.directed = true;
  d.edges.clear();
  for (const auto& e : g.edges) {
    d.add_edge(e.u, e.v, e.colors);
    if (!e.is_loop()) d.add_edge(e.v, e.u, e.colors);
  }
  return d;
}

}  // namespace

TEST(Figures, EdgeColoredExamples) {
  EXPECT_FALSE(holds("fig2_g1.cg", edge_notion(1, 1)));
  EXPECT_TRUE(holds("fig2_g2.cg", edge_notion(1, 1)));
  EXPECT_FALSE(holds("fig2_g2.cg", edge_notion(2, 1)));
  EXPECT_TRUE(holds("fig2_g3.cg", edge_notion(2, 1)));
  auto v = verify(load("fig2_g3.cg"), edge_notion(1, 2));
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->colors, (ColorSet{1, 2}));
  EXPECT_TRUE(holds("fig2_g4.cg", edge_notion(1, 2)));
}

TEST(Figures, VertexColoredExamples) {
  for (int l : {1, 2}) {
    EXPECT_TRUE(holds("fig4_triangle.cg", {Part::vertex, ConnMode::edge, 1, l, Scope::undirected}));
    EXPECT_TRUE(holds("fig4_triangle.cg", {Part::internal_vertex, ConnMode::edge, 1, l, Scope::undirected}));
  }
  EXPECT_TRUE(holds("fig4_mid.cg", {Part::vertex, ConnMode::edge, 1, 1, Scope::undirected}));
  auto mid = verify(load("fig4_mid.cg"), {Part::internal_vertex, ConnMode::edge, 1, 1, Scope::undirected});
  EXPECT_FALSE(mid.holds);
  EXPECT_EQ(mid.witness->colors, ColorSet{kRed});
  EXPECT_FALSE(holds("fig4_right.cg", {Part::vertex, ConnMode::edge, 1, 1, Scope::undirected}));
  EXPECT_FALSE(holds("fig4_right.cg", {Part::internal_vertex, ConnMode::edge, 1, 1, Scope::undirected}));
}

TEST(Figures, RootedExamples) {
  EXPECT_TRUE(holds("fig5_d1.cg", {Part::edge, ConnMode::edge, 1, 1, Scope::rooted}));
  EXPECT_FALSE(holds("fig5_d1.cg", {Part::edge, ConnMode::edge, 2, 1, Scope::rooted}));
  EXPECT_TRUE(holds("fig5_d2.cg", {Part::vertex, ConnMode::edge, 1, 1, Scope::rooted}));
  EXPECT_FALSE(holds("fig5_d2.cg", {Part::internal_vertex, ConnMode::edge, 1, 1, Scope::rooted}));
}

// Bidirecting the undirected examples preserves every verdict.
TEST(Figures, BidirectedCopiesAgree) {
  for (const auto& name : {"fig2_g1.cg", "fig2_g2.cg", "fig2_g3.cg", "fig2_g4.cg", "fig4_triangle.cg", "fig4_mid.cg",
                           "fig4_right.cg"}) {
    ColoredGraph g = load(name);
    ColoredGraph d = bidirect(g);
    for (const auto& n : all_notions(false, false)) {
      Notion dn = n;
      dn.scope = Scope::strong;
      EXPECT_EQ(verify(g, n).holds, verify(d, dn).holds) << name << " " << label(n);
    }
  }
}

TEST(Verify, MatchesDefinitionOnRandomUndirected) {
  for (bool vc : {false, true}) {
    for (const auto& g : random_corpus(false, vc, 120, vc ? 5000 : 1000)) {
      for (const auto& n : all_notions(false, false)) {
        ASSERT_EQ(verify(g, n).holds, brute_verify(g, n)) << serialize(g) << label(n);
      }
    }
  }
}

TEST(Verify, MatchesDefinitionOnRandomDirected) {
  for (bool vc : {false, true}) {
    for (const auto& g : random_corpus(true, vc, 120, vc ? 9000 : 7000)) {
      for (const auto& n : all_notions(true, true)) {
        ASSERT_EQ(verify(g, n).holds, brute_verify(g, n)) << serialize(g) << label(n);
      }
    }
  }
}

TEST(Verify, WitnessesReplay) {
  for (const auto& g : random_corpus(false, false, 80, 300)) {
    for (const auto& n : all_notions(false, false)) {
      if (n.part != Part::edge) continue;
      auto v = verify(g, n);
      if (v.holds) continue;
      ASSERT_TRUE(v.witness);
      EXPECT_LE(static_cast<int>(v.witness->colors.size()), n.l);
      EXPECT_TRUE(replay_witness(g, n, *v.witness)) << serialize(g) << label(n);
    }
  }
  for (const auto& g : random_corpus(true, true, 80, 400)) {
    for (const auto& n : all_notions(true, true)) {
      auto v = verify(g, n);
      if (!v.holds) {
        EXPECT_TRUE(replay_witness(g, n, *v.witness)) << serialize(g) << label(n);
      }
    }
  }
}

TEST(Verify, MonotoneInKAndL) {
  for (const auto& g : random_corpus(false, false, 60, 2000)) {
    for (ConnMode mode : {ConnMode::edge, ConnMode::vertex}) {
      for (Part p : {Part::edge, Part::vertex, Part::internal_vertex}) {
        bool h22 = verify(g, {p, mode, 2, 2, Scope::undirected}).holds;
        bool h12 = verify(g, {p, mode, 1, 2, Scope::undirected}).holds;
        bool h21 = verify(g, {p, mode, 2, 1, Scope::undirected}).holds;
        bool h11 = verify(g, {p, mode, 1, 1, Scope::undirected}).holds;
        EXPECT_TRUE(!h22 || (h12 && h21));
        EXPECT_TRUE(!h12 || h11);
        EXPECT_TRUE(!h21 || h11);
        if (mode == ConnMode::vertex) {
          // Internally disjoint paths are edge-disjoint.
          EXPECT_TRUE(!h22 || verify(g, {p, ConnMode::edge, 2, 2, Scope::undirected}).holds);
        }
      }
      // Internal vertex notion implies the plain vertex notion.
      if (verify(g, {Part::internal_vertex, mode, 1, 1, Scope::undirected}).holds) {
        EXPECT_TRUE(verify(g, {Part::vertex, mode, 1, 1, Scope::undirected}).holds) << serialize(g);
      }
    }
  }
}

TEST(Verify, PairQueriesCoverTheWhole) {
  for (const auto& g : random_corpus(false, true, 50, 600)) {
    for (const auto& n : all_notions(false, false)) {
      if (n.part != Part::internal_vertex) continue;
      bool all = true;
      for (int a = 0; a < g.vertex_count(); ++a) {
        for (int b = a + 1; b < g.vertex_count(); ++b) {
          all = all && verify_pair(g, g.vertices[a].id, g.vertices[b].id, n).holds;
        }
      }
      EXPECT_EQ(all, verify(g, n).holds) << serialize(g) << label(n);
    }
  }
}

TEST(Verify, SubsetGuard) {
  ColoredGraph g = empty_graph(2);
  for (int c = 1; c <= 60; ++c) g.add_edge(0, 1, {c});
  VerifyOptions small;
  small.max_subsets = 1000;
  EXPECT_THROW(verify(g, edge_notion(1, 2), small), GuardExceeded);
  EXPECT_NO_THROW(verify(g, edge_notion(1, 1), small));
  EXPECT_TRUE(verify(g, edge_notion(1, 2)).holds);
}

TEST(Verify, IncompatibleNotionsRejected) {
  EXPECT_THROW(verify(load("fig1.cg"), {Part::edge, ConnMode::edge, 1, 1, Scope::strong}), Error);
  EXPECT_THROW(verify(load("fig5_d1.cg"), edge_notion(1, 1)), Error);
  EXPECT_THROW(verify(load("fig1.cg"), edge_notion(0, 1)), Error);
}

TEST(Verify, UncoloredGraphReducesToPlainConnectivity) {
  for (int m = 0; m <= 5; ++m) {
    for (const auto& g : enumerate_multigraphs(4, m, true)) {
      for (int k = 1; k <= 2; ++k) {
        EXPECT_EQ(verify(g, edge_notion(k, 1)).holds, is_k_edge_connected(g, k));
      }
    }
  }
}

TEST(Equivalence, SmallGraphsHaveNoDisagreements) {
  for (int m = 1; m <= 4; ++m) {
    for (const auto& base : enumerate_multigraphs(3, m, false)) {
      for (const auto& a : restricted_growth_strings(m, 3)) {
        ColoredGraph g = base;
        for (int e = 0; e < m; ++e) g.edges[e].colors = {a[e] + 1};
        for (const auto& b : restricted_growth_strings(3, 3)) {
          for (int v = 0; v < 3; ++v) g.vertices[v].colors = {b[v] + 1};
          auto rep = equivalence_suite(g);
          ASSERT_TRUE(rep.ok()) << serialize(g) << rep.disagreements.front();
        }
      }
    }
  }
}
