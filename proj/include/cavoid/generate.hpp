#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "graph.hpp"

namespace cavoid {

// Modulo sampling on mt19937_64 keeps instances identical across standard
// libraries (the distribution classes are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  int below(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }
  bool coin() { return (gen_() & 1u) != 0; }

 private:
  std::mt19937_64 gen_;
};

struct RandomSpec {
  int n = 5;
  int m = 8;
  int colors = 3;
  bool directed = false;
  bool loops = false;
  bool vertex_colors = false;  // color vertices instead of edges
  int max_colors_per_element = 1;
  std::uint64_t seed = 1;
};

inline ColoredGraph random_colored_graph(const RandomSpec& s) {
  if (s.n < 1) throw Error("need at least one vertex");
  if (!s.loops && s.n < 2 && s.m > 0) throw Error("loopless edges need two vertices");
  Rng rng(s.seed);
  ColoredGraph g = empty_graph(s.n, s.directed, "random");
  auto draw_colors = [&]() {
    ColorSet c;
    if (s.colors < 1) return c;
    int count = 1 + (s.max_colors_per_element > 1 ? rng.below(s.max_colors_per_element) : 0);
    for (int i = 0; i < count; ++i) c.push_back(1 + rng.below(s.colors));
    ColoredGraph::normalize(c);
    return c;
  };
  for (int i = 0; i < s.m; ++i) {
    int u = rng.below(s.n), v = rng.below(s.n);
    while (!s.loops && u == v) v = rng.below(s.n);
    g.add_edge(u, v, s.vertex_colors ? ColorSet{} : draw_colors());
  }
  if (s.vertex_colors) {
    for (auto& v : g.vertices) v.colors = draw_colors();
  }
  return g;
}

// Union of `trees` random spanning arborescences from vertex 0 plus `extra`
// random arcs; rooted `trees`-arc-connected by construction.
inline ColoredGraph random_rooted_digraph(int n, int trees, int extra, std::uint64_t seed) {
  Rng rng(seed);
  ColoredGraph d = empty_graph(n, true, "rooted");
  d.root = 0;
  for (int t = 0; t < trees; ++t) {
    std::vector<int> order(n - 1);
    for (int i = 0; i < n - 1; ++i) order[i] = i + 1;
    for (int i = n - 2; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    std::vector<int> placed{0};
    for (int v : order) {
      d.add_edge(placed[rng.below(static_cast<int>(placed.size()))], v);
      placed.push_back(v);
    }
  }
  for (int i = 0; i < extra && n >= 2; ++i) {
    int u = rng.below(n), v = rng.below(n);
    while (v == u) v = rng.below(n);
    d.add_edge(u, v);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Canonical forms for isomorphism dedupe (small graphs only).

namespace detail {

inline std::vector<int> refine_classes(const ColoredGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> cls(n, 0);
  {
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> keys(n);
    for (int v = 0; v < n; ++v) {
      keys[v] = g.vertices[v].colors;
      keys[v].insert(keys[v].begin(), -1);
    }
    for (const auto& e : g.edges) {
      int a = g.index_of(e.u), b = g.index_of(e.v);
      keys[a].push_back(e.is_loop() ? -3 : -2);
      if (!e.is_loop()) keys[b].push_back(g.directed ? -4 : -2);
    }
    for (auto& k : keys) std::sort(k.begin() + 1, k.end());
    for (const auto& k : keys) ids.emplace(k, 0);
    int next = 0;
    for (auto& [k, id] : ids) id = next++;
    for (int v = 0; v < n; ++v) cls[v] = ids[keys[v]];
  }
  for (int round = 0; round < n; ++round) {
    std::vector<std::vector<int>> keys(n);
    for (int v = 0; v < n; ++v) keys[v] = {cls[v]};
    for (const auto& e : g.edges) {
      int a = g.index_of(e.u), b = g.index_of(e.v);
      if (a == b) continue;
      keys[a].push_back(cls[b] * 2);
      keys[b].push_back(cls[a] * 2 + (g.directed ? 1 : 0));
    }
    for (auto& k : keys) std::sort(k.begin() + 1, k.end());
    std::map<std::vector<int>, int> ids;
    for (const auto& k : keys) ids.emplace(k, 0);
    int next = 0;
    for (auto& [k, id] : ids) id = next++;
    std::vector<int> fresh(n);
    for (int v = 0; v < n; ++v) fresh[v] = ids[keys[v]];
    bool same = std::set<int>(fresh.begin(), fresh.end()).size() == std::set<int>(cls.begin(), cls.end()).size();
    cls = fresh;
    if (same) break;
  }
  return cls;
}

}  // namespace detail

// Isomorphism-invariant key: colors and root are respected, ids are not.
inline std::vector<int> canonical_key(const ColoredGraph& g) {
  const int n = g.vertex_count();
  auto cls = detail::refine_classes(g);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return std::tie(cls[a], a) < std::tie(cls[b], b); });
  std::vector<std::pair<int, int>> blocks;  // [begin, end) ranges in `order`
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && cls[order[j]] == cls[order[i]]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  std::vector<int> best;
  std::vector<int> label(n);
  int root = g.root ? g.index_of(*g.root) : -1;
  auto encode = [&]() {
    for (int i = 0; i < n; ++i) label[order[i]] = i;
    std::vector<int> key{n, g.directed ? 1 : 0, root >= 0 ? label[root] : -1};
    for (int i = 0; i < n; ++i) {
      const auto& c = g.vertices[order[i]].colors;
      key.push_back(static_cast<int>(c.size()));
      key.insert(key.end(), c.begin(), c.end());
    }
    std::vector<std::vector<int>> edges;
    for (const auto& e : g.edges) {
      int a = label[g.index_of(e.u)], b = label[g.index_of(e.v)];
      if (!g.directed && a > b) std::swap(a, b);
      std::vector<int> t{a, b, static_cast<int>(e.colors.size())};
      t.insert(t.end(), e.colors.begin(), e.colors.end());
      edges.push_back(std::move(t));
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& t : edges) key.insert(key.end(), t.begin(), t.end());
    if (best.empty() || key < best) best = std::move(key);
  };
  std::function<void(size_t)> rec = [&](size_t b) {
    if (b == blocks.size()) {
      encode();
      return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(order.begin() + lo, order.begin() + hi);
    do {
      rec(b + 1);
    } while (std::next_permutation(order.begin() + lo, order.begin() + hi));
  };
  rec(0);
  return best;
}

// All multigraphs (undirected unless `directed`) on exactly n vertices with
// exactly m edges, one per isomorphism class.
inline std::vector<ColoredGraph> enumerate_multigraphs(int n, int m, bool loops, bool directed = false) {
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < n; ++a) {
    for (int b = directed ? 0 : a; b < n; ++b) {
      if (a == b && !loops) continue;
      slots.emplace_back(a, b);
    }
  }
  std::vector<ColoredGraph> out;
  std::set<std::vector<int>> seen;
  std::vector<int> pick(m, 0);
  std::function<void(int, int)> rec = [&](int i, int from) {
    if (i == m) {
      ColoredGraph g = empty_graph(n, directed);
      for (int s : pick) g.add_edge(slots[s].first, slots[s].second);
      if (seen.insert(canonical_key(g)).second) out.push_back(std::move(g));
      return;
    }
    for (int s = from; s < static_cast<int>(slots.size()); ++s) {
      pick[i] = s;
      rec(i + 1, s);
    }
  };
  if (m == 0 || !slots.empty()) rec(0, 0);
  return out;
}

// Restricted-growth strings of length len over at most c values: every
// coloring up to renaming of colors.
inline std::vector<std::vector<int>> restricted_growth_strings(int len, int c) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(len, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == len) {
      out.push_back(a);
      return;
    }
    for (int x = 0; x <= std::min(used, c - 1); ++x) {
      a[i] = x;
      rec(i + 1, std::max(used, x + 1));
    }
  };
  rec(0, 0);
  return out;
}

// Connected bridgeless multigraphs with at most max_edges edges, built by
// adding ears to a single vertex (a closed ear of length one is a loop).
inline std::vector<ColoredGraph> bridgeless_graphs(int max_edges, bool loops = true) {
  std::vector<ColoredGraph> frontier{empty_graph(1)};
  std::set<std::vector<int>> seen{canonical_key(frontier.front())};
  std::vector<ColoredGraph> out = frontier;
  while (!frontier.empty()) {
    std::vector<ColoredGraph> next;
    for (const auto& g : frontier) {
      const int n = g.vertex_count(), m = g.edge_count();
      for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
          for (int len = 1; m + len <= max_edges; ++len) {
            if (a == b && len == 1 && !loops) continue;
            ColoredGraph h = g;
            int prev = a;
            for (int i = 1; i < len; ++i) {
              int fresh = h.add_vertex();
              h.add_edge(prev, fresh);
              prev = fresh;
            }
            h.add_edge(prev, b);
            if (seen.insert(canonical_key(h)).second) {
              out.push_back(h);
              next.push_back(std::move(h));
            }
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace cavoid
