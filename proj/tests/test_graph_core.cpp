#include <gtest/gtest.h>

#include "support.hpp"

using namespace cavoid;
using namespace cavoid::testing;

namespace {

const std::vector<std::string> kGraphFixtures = {
    "fig1.cg",        "fig2_g1.cg",     "fig2_g2.cg",   "fig2_g3.cg",       "fig2_g4.cg",
    "fig4_triangle.cg", "fig4_mid.cg",  "fig4_right.cg", "fig5_d1.cg",      "fig5_d2.cg",
    "fig7_parallel.cg", "fig7_triangle.cg", "fig11.cg", "c4.cg",            "k4.cg",
    "bidirected_triangle.cg"};

int line_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(Format, FixturesRoundTrip) {
  for (const auto& name : kGraphFixtures) {
    SCOPED_TRACE(name);
    ColoredGraph g = load(name);
    std::string once = serialize(g);
    EXPECT_EQ(serialize(parse(once)), once);
  }
}

TEST(Format, ColorListsAndWeights) {
  ColoredGraph g = parse("graph w\ndirected 0\nedge 0 1 w=1.25 c=3,1,3\nedge 1 2 w=2\n");
  ASSERT_EQ(g.edge_count(), 2);
  EXPECT_EQ(g.edges[0].colors, (ColorSet{1, 3}));
  EXPECT_EQ(*g.edges[0].weight, Weight(5, 4));
  EXPECT_TRUE(g.weighted());
  EXPECT_EQ(serialize(g), "graph w\ndirected 0\nvertex 0\nvertex 1\nvertex 2\nedge 0 1 w=1.25 c=1,3\nedge 1 2 w=2\n");
}

TEST(Format, ErrorsCarryLineNumbers) {
  EXPECT_EQ(line_of("graph a\nbogus 1\n"), 2);
  EXPECT_EQ(line_of("graph a\nvertex 0\nedge 0 7\n"), 3);
  EXPECT_EQ(line_of("graph a\nvertex 0\nvertex 0\n"), 3);
  EXPECT_EQ(line_of("graph a\ndirected 2\n"), 2);
  EXPECT_EQ(line_of("graph a\nedge 0 1 w=1\nedge 1 2\n"), 3);
  EXPECT_EQ(line_of("graph a\nvertex 0\nroot 4\n"), 3);
  EXPECT_EQ(line_of("graph a\nedge 0 x\n"), 2);
  EXPECT_EQ(line_of("vertex 0\n"), 1);
  EXPECT_THROW(parse(""), ParseError);
}

TEST(Format, ImplicitVerticesOption) {
  const std::string text = "graph a\nvertex 0\nedge 0 5\n";
  EXPECT_THROW(parse(text), ParseError);
  ParseOptions o;
  o.implicit_vertices = true;
  EXPECT_EQ(parse(text, o).vertex_count(), 2);
}

TEST(Graph, RemoveColorsDropsTouchedElements) {
  ColoredGraph g = load("fig2_g3.cg");
  ColoredGraph h = remove_colors(g, {1});
  EXPECT_EQ(h.vertex_count(), g.vertex_count());
  for (const auto& e : h.edges) EXPECT_FALSE(intersects(e.colors, {1}));
  int touched = 0;
  for (const auto& e : g.edges) touched += intersects(e.colors, {1});
  EXPECT_EQ(h.edge_count(), g.edge_count() - touched);
}

TEST(Graph, UnderlyingForgetsDirections) {
  ColoredGraph d = load("fig5_d1.cg");
  ColoredGraph u = underlying(d);
  EXPECT_FALSE(u.directed);
  EXPECT_EQ(u.edge_count(), d.edge_count());
}

// Flow-based connectivity against separator enumeration, on every multigraph
// with up to four vertices and five edges, undirected and directed.
TEST(Connectivity, LocalConnectivityMatchesSeparators) {
  for (bool directed : {false, true}) {
    for (int n = 2; n <= 4; ++n) {
      for (int m = 0; m <= (directed ? 4 : 5); ++m) {
        for (const auto& g : enumerate_multigraphs(n, m, true, directed)) {
          Topology t(g);
          std::vector<char> vd(n, 0), ed(m, 0);
          for (int s = 0; s < n; ++s) {
            for (int d = 0; d < n; ++d) {
              if (s == d) continue;
              for (ConnMode mode : {ConnMode::edge, ConnMode::vertex}) {
                int lam = local_connectivity(t, {}, s, d, mode, 4);
                for (int k = 1; k <= 3; ++k) {
                  ASSERT_EQ(lam >= k, brute_k_paths(g, vd, ed, s, d, mode, k))
                      << serialize(g) << "s=" << s << " t=" << d << " k=" << k;
                }
              }
            }
          }
        }
      }
    }
  }
}

TEST(Connectivity, MinCutSeparates) {
  for (int m = 1; m <= 5; ++m) {
    for (const auto& g : enumerate_multigraphs(4, m, false)) {
      for (ConnMode mode : {ConnMode::edge, ConnMode::vertex}) {
        Topology t(g);
        if (mode == ConnMode::vertex && local_connectivity(t, {}, 0, 3, mode) == 0) continue;
        auto cut = local_min_cut(t, {}, 0, 3, mode);
        std::vector<char> vd(4, 0), ed(m, 0);
        for (int v : cut.vertices) vd[v] = 1;
        for (int e : cut.edges) ed[e] = 1;
        EXPECT_FALSE(reaches(g, vd, ed, 0, 3)) << serialize(g);
        EXPECT_EQ(static_cast<int>(cut.vertices.size() + cut.edges.size()), local_connectivity(t, {}, 0, 3, mode));
      }
    }
  }
}

TEST(Connectivity, BridgesMatchDeletion) {
  for (int m = 1; m <= 5; ++m) {
    for (const auto& g : enumerate_multigraphs(4, m, true)) {
      auto b = bridges(g);
      int base = component_count(g);
      for (int e = 0; e < m; ++e) {
        ColoredGraph h = g;
        h.edges.erase(h.edges.begin() + e);
        h.rebuild_index();
        bool is_bridge = component_count(h) > base;
        EXPECT_EQ(std::count(b.begin(), b.end(), g.edges[e].id) == 1, is_bridge) << serialize(g);
      }
    }
  }
}

TEST(Connectivity, OneVertexConvention) {
  ColoredGraph g = empty_graph(1);
  EXPECT_FALSE(is_k_edge_connected(g, 1));
  g.add_edge(0, 0);
  EXPECT_TRUE(is_k_edge_connected(g, 1));
  EXPECT_FALSE(is_k_edge_connected(g, 2));
  g.add_edge(0, 0);
  EXPECT_TRUE(is_k_edge_connected(g, 2));
}

TEST(Connectivity, NamedPredicates) {
  EXPECT_TRUE(is_k_edge_connected(load("k4.cg"), 3));
  EXPECT_FALSE(is_k_edge_connected(load("k4.cg"), 4));
  EXPECT_TRUE(is_k_vertex_connected(load("c4.cg"), 2));
  EXPECT_FALSE(is_k_vertex_connected(load("c4.cg"), 3));
  EXPECT_TRUE(is_strongly_k_arc_connected(load("bidirected_triangle.cg"), 2));
  EXPECT_TRUE(is_rooted_k_arc_connected(load("fig5_d1.cg"), 0, 2));
  EXPECT_FALSE(is_rooted_k_arc_connected(load("fig5_d2.cg"), 0, 2));
}

TEST(Isomorphism, CanonicalKeyIgnoresLabels) {
  ColoredGraph a = parse("graph a\ndirected 0\nedge 0 1 c=1\nedge 1 2 c=2\nedge 2 0 c=1\n");
  ColoredGraph b = parse("graph b\ndirected 0\nedge 2 1 c=1\nedge 0 2 c=2\nedge 1 0 c=1\n");
  ColoredGraph c = parse("graph c\ndirected 0\nedge 0 1 c=1\nedge 1 2 c=1\nedge 2 0 c=1\n");
  EXPECT_EQ(canonical_key(a), canonical_key(b));
  EXPECT_NE(canonical_key(a), canonical_key(c));
}

// Counts of simple graphs on four vertices are well known: 11 classes in all.
TEST(Isomorphism, EnumerationCountsSimpleGraphs) {
  int simple = 0;
  for (int m = 0; m <= 6; ++m) {
    for (const auto& g : enumerate_multigraphs(4, m, false)) {
      std::set<std::pair<int, int>> seen;
      bool ok = true;
      for (const auto& e : g.edges) ok = ok && seen.insert(std::minmax(e.u, e.v)).second;
      simple += ok;
    }
  }
  EXPECT_EQ(simple, 11);
}

TEST(Generators, RandomGraphIsDeterministic) {
  RandomSpec s;
  s.n = 6;
  s.m = 10;
  s.seed = 7;
  EXPECT_EQ(serialize(random_colored_graph(s)), serialize(random_colored_graph(s)));
  s.seed = 8;
  RandomSpec t = s;
  t.seed = 7;
  EXPECT_NE(serialize(random_colored_graph(s)), serialize(random_colored_graph(t)));
}

TEST(Generators, RootedDigraphHasPromisedConnectivity) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    ColoredGraph d = random_rooted_digraph(6, 3, 2, seed);
    EXPECT_TRUE(is_rooted_k_arc_connected(d, 0, 3));
  }
}

TEST(Generators, BridgelessGraphsAreBridgeless) {
  auto all = bridgeless_graphs(5);
  EXPECT_GT(all.size(), 10u);
  for (const auto& g : all) {
    EXPECT_TRUE(is_connected(g));
    EXPECT_TRUE(bridges(g).empty()) << serialize(g);
  }
}

TEST(Generators, RestrictedGrowthCountsAreBellNumbers) {
  EXPECT_EQ(restricted_growth_strings(4, 4).size(), 15u);
  EXPECT_EQ(restricted_growth_strings(5, 5).size(), 52u);
  EXPECT_EQ(restricted_growth_strings(4, 2).size(), 8u);
}
