#pragma once

#include <climits>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace cavoid {

enum class ConnMode { edge, vertex };
enum class Scope { undirected, strong, rooted };

// Augmenting-path max-flow on small integer capacities.
class FlowNetwork {
 public:
  static constexpr int kInf = INT_MAX / 4;

  explicit FlowNetwork(int n) : first_(n, -1) {}

  int add_arc(int from, int to, int cap) {
    int id = static_cast<int>(to_.size());
    push(from, to, cap);
    push(to, from, 0);
    return id;
  }

  // Pushes flow until `limit` units are routed or no augmenting path is left.
  int max_flow(int s, int t, int limit = kInf) {
    int total = 0;
    std::vector<int> via(first_.size());
    while (total < limit) {
      std::fill(via.begin(), via.end(), -1);
      std::deque<int> queue{s};
      via[s] = -2;
      while (!queue.empty() && via[t] == -1) {
        int x = queue.front();
        queue.pop_front();
        for (int a = first_[x]; a != -1; a = next_[a]) {
          if (cap_[a] > 0 && via[to_[a]] == -1) {
            via[to_[a]] = a;
            queue.push_back(to_[a]);
          }
        }
      }
      if (via[t] == -1) break;
      int push_amt = limit - total;
      for (int x = t; x != s; x = to_[via[x] ^ 1]) push_amt = std::min(push_amt, cap_[via[x]]);
      for (int x = t; x != s; x = to_[via[x] ^ 1]) {
        cap_[via[x]] -= push_amt;
        cap_[via[x] ^ 1] += push_amt;
      }
      total += push_amt;
    }
    return total;
  }

  std::vector<char> residual_reach(int s) const {
    std::vector<char> seen(first_.size(), 0);
    std::deque<int> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int a = first_[x]; a != -1; a = next_[a]) {
        if (cap_[a] > 0 && !seen[to_[a]]) {
          seen[to_[a]] = 1;
          queue.push_back(to_[a]);
        }
      }
    }
    return seen;
  }

 private:
  void push(int from, int to, int cap) {
    to_.push_back(to);
    cap_.push_back(cap);
    next_.push_back(first_[from]);
    first_[from] = static_cast<int>(to_.size()) - 1;
  }

  std::vector<int> first_, to_, cap_, next_;
};

// Index-based view of a graph for the flow kernels. Vertices are positions
// 0..n-1 and edges positions 0..m-1 of the host ColoredGraph.
struct Topology {
  int n = 0;
  bool directed = false;
  std::vector<int> tail, head;

  explicit Topology(const ColoredGraph& g) : n(g.vertex_count()), directed(g.directed) {
    tail.reserve(g.edge_count());
    head.reserve(g.edge_count());
    for (const auto& e : g.edges) {
      tail.push_back(g.index_of(e.u));
      head.push_back(g.index_of(e.v));
    }
  }
  int m() const { return static_cast<int>(tail.size()); }
};

// Alive flags; an empty vector means everything is alive.
struct Mask {
  std::vector<char> vertex, edge;

  bool v(int i) const { return vertex.empty() || vertex[i]; }
  bool e(int i) const { return edge.empty() || edge[i]; }
};

struct LocalCut {
  std::vector<int> vertices;  // positions
  std::vector<int> edges;     // positions
};

namespace detail {

// Edge-cap semantics for the vertex-split network.
enum class SplitEdges { unit, direct_only };

struct BuiltNetwork {
  FlowNetwork net;
  int source, sink;
  std::vector<int> edge_arc;   // first arc per edge (or -1)
  std::vector<int> edge_arc2;  // reverse-direction arc for undirected edges
};

inline BuiltNetwork build_edge_network(const Topology& t, const Mask& mask, int s, int d) {
  BuiltNetwork b{FlowNetwork(t.n), s, d, std::vector<int>(t.m(), -1), std::vector<int>(t.m(), -1)};
  for (int e = 0; e < t.m(); ++e) {
    int x = t.tail[e], y = t.head[e];
    if (x == y || !mask.e(e) || !mask.v(x) || !mask.v(y)) continue;
    b.edge_arc[e] = b.net.add_arc(x, y, 1);
    if (!t.directed) b.edge_arc2[e] = b.net.add_arc(y, x, 1);
  }
  return b;
}

// In-node 2v, out-node 2v+1; s and t are not split.
inline BuiltNetwork build_split_network(const Topology& t, const Mask& mask, int s, int d,
                                        SplitEdges edge_caps) {
  BuiltNetwork b{FlowNetwork(2 * t.n), 2 * s, 2 * d + 1, std::vector<int>(t.m(), -1),
                 std::vector<int>(t.m(), -1)};
  for (int v = 0; v < t.n; ++v) {
    if (!mask.v(v)) continue;
    b.net.add_arc(2 * v, 2 * v + 1, (v == s || v == d) ? FlowNetwork::kInf : 1);
  }
  auto cap_for = [&](int x, int y) {
    if (edge_caps == SplitEdges::unit) return 1;
    return (x == s && y == d) ? 1 : FlowNetwork::kInf;
  };
  for (int e = 0; e < t.m(); ++e) {
    int x = t.tail[e], y = t.head[e];
    if (x == y || !mask.e(e) || !mask.v(x) || !mask.v(y)) continue;
    b.edge_arc[e] = b.net.add_arc(2 * x + 1, 2 * y, cap_for(x, y));
    if (!t.directed) b.edge_arc2[e] = b.net.add_arc(2 * y + 1, 2 * x, cap_for(y, x));
  }
  return b;
}

}  // namespace detail

// Number of edge-disjoint (mode edge) or internally vertex-disjoint (mode
// vertex) s-t paths among alive elements, stopping early at `cap`. Loops
// never carry flow; parallel edges count separately.
inline int local_connectivity(const Topology& t, const Mask& mask, int s, int d, ConnMode mode,
                              int cap = FlowNetwork::kInf) {
  if (s == d) return FlowNetwork::kInf;
  if (!mask.v(s) || !mask.v(d)) return 0;
  auto b = mode == ConnMode::edge ? detail::build_edge_network(t, mask, s, d)
                                  : detail::build_split_network(t, mask, s, d, detail::SplitEdges::unit);
  return b.net.max_flow(b.source, b.sink, cap);
}

// Minimum separating set. Mode edge returns edges only; mode vertex returns a
// mixed cut (vertices and edges, unit costs); `vertices_only` forbids edges
// other than direct s-t edges.
inline LocalCut local_min_cut(const Topology& t, const Mask& mask, int s, int d, ConnMode mode,
                              bool vertices_only = false) {
  LocalCut cut;
  if (s == d || !mask.v(s) || !mask.v(d)) return cut;
  if (mode == ConnMode::edge) {
    auto b = detail::build_edge_network(t, mask, s, d);
    b.net.max_flow(b.source, b.sink);
    auto r = b.net.residual_reach(b.source);
    for (int e = 0; e < t.m(); ++e) {
      if (b.edge_arc[e] < 0) continue;
      int x = t.tail[e], y = t.head[e];
      if ((r[x] && !r[y]) || (!t.directed && r[y] && !r[x])) cut.edges.push_back(e);
    }
    return cut;
  }
  auto b = detail::build_split_network(
      t, mask, s, d, vertices_only ? detail::SplitEdges::direct_only : detail::SplitEdges::unit);
  b.net.max_flow(b.source, b.sink);
  auto r = b.net.residual_reach(b.source);
  for (int v = 0; v < t.n; ++v) {
    if (v == s || v == d || !mask.v(v)) continue;
    if (r[2 * v] && !r[2 * v + 1]) cut.vertices.push_back(v);
  }
  for (int e = 0; e < t.m(); ++e) {
    if (b.edge_arc[e] < 0) continue;
    int x = t.tail[e], y = t.head[e];
    bool fwd = r[2 * x + 1] && !r[2 * y];
    bool bwd = !t.directed && r[2 * y + 1] && !r[2 * x];
    if (fwd || bwd) cut.edges.push_back(e);
  }
  return cut;
}

inline int alive_count(const Topology& t, const Mask& mask) {
  int c = 0;
  for (int v = 0; v < t.n; ++v) c += mask.v(v);
  return c;
}

inline int alive_loops(const Topology& t, const Mask& mask, int v) {
  int c = 0;
  for (int e = 0; e < t.m(); ++e) {
    if (t.tail[e] == v && t.head[e] == v && mask.e(e) && mask.v(v)) ++c;
  }
  return c;
}

// Ordered pairs (s,t) the scope quantifies over, restricted to alive
// vertices, in canonical order.
inline std::vector<std::pair<int, int>> scope_pairs(const Topology& t, const Mask& mask, Scope scope,
                                                    int root) {
  std::vector<std::pair<int, int>> out;
  if (scope == Scope::rooted) {
    if (root < 0 || !mask.v(root)) return out;
    for (int v = 0; v < t.n; ++v) {
      if (v != root && mask.v(v)) out.emplace_back(root, v);
    }
    return out;
  }
  for (int a = 0; a < t.n; ++a) {
    if (!mask.v(a)) continue;
    for (int b = scope == Scope::undirected ? a + 1 : 0; b < t.n; ++b) {
      if (b != a && mask.v(b)) out.emplace_back(a, b);
    }
  }
  return out;
}

// First pair (in canonical order) with fewer than k disjoint paths. For edge
// mode in undirected/strong scope only pairs through the first alive vertex
// are probed, which suffices because edge connectivity is transitive in the
// min sense.
inline std::optional<std::pair<int, int>> failing_pair(const Topology& t, const Mask& mask, ConnMode mode,
                                                       Scope scope, int k, int root = -1) {
  auto ok = [&](int s, int d) { return local_connectivity(t, mask, s, d, mode, k) >= k; };
  if (mode == ConnMode::edge && scope != Scope::rooted) {
    int v0 = -1;
    for (int v = 0; v < t.n && v0 < 0; ++v) {
      if (mask.v(v)) v0 = v;
    }
    if (v0 < 0) return std::nullopt;
    for (int v = v0 + 1; v < t.n; ++v) {
      if (!mask.v(v)) continue;
      if (!ok(v0, v)) return std::make_pair(v0, v);
      if (scope == Scope::strong && !ok(v, v0)) return std::make_pair(v, v0);
    }
    return std::nullopt;
  }
  for (auto [s, d] : scope_pairs(t, mask, scope, root)) {
    if (!ok(s, d)) return std::make_pair(s, d);
  }
  return std::nullopt;
}

// k-connectivity of the alive part with the one-vertex convention: a single
// vertex qualifies iff it carries at least k alive loops. With `k1_connected`
// a single vertex also qualifies when k == 1 (plain connectedness), and with
// `small_ok` any graph on at most one vertex qualifies.
struct ConnConventions {
  bool k1_connected = false;
  bool small_ok = false;
};

inline bool k_connected(const Topology& t, const Mask& mask, ConnMode mode, Scope scope, int k, int root,
                        ConnConventions conv = {}) {
  int alive = alive_count(t, mask);
  if (alive <= 1 && conv.small_ok) return true;
  if (scope == Scope::rooted && (root < 0 || !mask.v(root))) return false;
  if (alive == 0) return false;
  if (alive == 1) {
    if (conv.k1_connected && k == 1) return true;
    int v = 0;
    while (!mask.v(v)) ++v;
    return alive_loops(t, mask, v) >= k;
  }
  return !failing_pair(t, mask, mode, scope, k, root).has_value();
}

// ---------------------------------------------------------------------------
// Graph-level predicates on ColoredGraph (colors ignored).

inline bool is_k_edge_connected(const ColoredGraph& g, int k) {
  if (g.directed) throw Error("is_k_edge_connected expects an undirected graph");
  return k_connected(Topology(g), {}, ConnMode::edge, Scope::undirected, k, -1);
}

inline bool is_k_vertex_connected(const ColoredGraph& g, int k) {
  if (g.directed) throw Error("is_k_vertex_connected expects an undirected graph");
  return k_connected(Topology(g), {}, ConnMode::vertex, Scope::undirected, k, -1);
}

inline bool is_strongly_k_arc_connected(const ColoredGraph& d, int k) {
  if (!d.directed) throw Error("expected a digraph");
  return k_connected(Topology(d), {}, ConnMode::edge, Scope::strong, k, -1);
}

inline bool is_strongly_k_vertex_connected(const ColoredGraph& d, int k) {
  if (!d.directed) throw Error("expected a digraph");
  return k_connected(Topology(d), {}, ConnMode::vertex, Scope::strong, k, -1);
}

inline bool is_rooted_k_arc_connected(const ColoredGraph& d, int root_id, int k) {
  if (!d.directed) throw Error("expected a digraph");
  int r = d.index_of(root_id);
  if (r < 0) throw Error("root is not a vertex");
  return k_connected(Topology(d), {}, ConnMode::edge, Scope::rooted, k, r);
}

inline bool is_rooted_k_vertex_connected(const ColoredGraph& d, int root_id, int k) {
  if (!d.directed) throw Error("expected a digraph");
  int r = d.index_of(root_id);
  if (r < 0) throw Error("root is not a vertex");
  return k_connected(Topology(d), {}, ConnMode::vertex, Scope::rooted, k, r);
}

inline bool is_connected(const ColoredGraph& g) {
  Topology t(g);
  return k_connected(t, {}, ConnMode::edge, g.directed ? Scope::strong : Scope::undirected, 1, -1,
                     {.k1_connected = true});
}

// Number of components of the underlying undirected graph.
inline int component_count(const ColoredGraph& g) {
  std::vector<int> parent(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = g.vertex_count();
  for (const auto& e : g.edges) {
    int a = find(g.index_of(e.u)), b = find(g.index_of(e.v));
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

// Edge ids whose removal increases the number of components (undirected
// reading; loops never qualify).
inline std::vector<int> bridges(const ColoredGraph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge position)
  for (int e = 0; e < g.edge_count(); ++e) {
    int a = g.index_of(g.edges[e].u), b = g.index_of(g.edges[e].v);
    if (a == b) continue;
    adj[a].emplace_back(b, e);
    adj[b].emplace_back(a, e);
  }
  std::vector<int> disc(n, -1), low(n, 0), out;
  int timer = 0;
  auto dfs = [&](auto&& self, int v, int via) -> void {
    disc[v] = low[v] = timer++;
    for (auto [w, e] : adj[v]) {
      if (e == via) continue;
      if (disc[w] < 0) {
        self(self, w, e);
        low[v] = std::min(low[v], low[w]);
        if (low[w] > disc[v]) out.push_back(g.edges[e].id);
      } else {
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  for (int v = 0; v < n; ++v) {
    if (disc[v] < 0) dfs(dfs, v, -1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Cuts.

enum class CutKind { edge_cut, vertex_cut, mixed_cut, directed_cut };

struct Cut {
  CutKind kind = CutKind::edge_cut;
  std::vector<int> vertices;  // vertex ids
  std::vector<int> edges;     // edge ids

  int size() const { return static_cast<int>(vertices.size() + edges.size()); }
  bool operator==(const Cut&) const = default;
};

inline const char* to_string(CutKind k) {
  switch (k) {
    case CutKind::edge_cut: return "edge-cut";
    case CutKind::vertex_cut: return "vertex-cut";
    case CutKind::mixed_cut: return "mixed-cut";
    case CutKind::directed_cut: return "directed-cut";
  }
  return "?";
}

inline Cut to_cut(const ColoredGraph& g, const LocalCut& lc, CutKind kind) {
  Cut c{kind, {}, {}};
  for (int v : lc.vertices) c.vertices.push_back(g.vertices[v].id);
  for (int e : lc.edges) c.edges.push_back(g.edges[e].id);
  std::sort(c.vertices.begin(), c.vertices.end());
  std::sort(c.edges.begin(), c.edges.end());
  return c;
}

// Minimum cut of the requested kind separating t from s (s-to-t direction on
// digraphs). A vertex cut may still contain direct s-t edges since no vertex
// set separates adjacent endpoints.
inline Cut min_cut_witness(const ColoredGraph& g, CutKind kind, int s_id, int t_id) {
  int s = g.index_of(s_id), t = g.index_of(t_id);
  if (s < 0 || t < 0) throw Error("cut endpoint is not a vertex");
  if (s == t) throw Error("cut endpoints must differ");
  Topology topo(g);
  LocalCut lc;
  switch (kind) {
    case CutKind::edge_cut:
    case CutKind::directed_cut:
      lc = local_min_cut(topo, {}, s, t, ConnMode::edge);
      break;
    case CutKind::vertex_cut:
      lc = local_min_cut(topo, {}, s, t, ConnMode::vertex, true);
      break;
    case CutKind::mixed_cut:
      lc = local_min_cut(topo, {}, s, t, ConnMode::vertex);
      break;
  }
  return to_cut(g, lc, kind);
}

}  // namespace cavoid
