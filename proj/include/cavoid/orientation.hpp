#pragma once

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "coloring.hpp"
#include "connectivity.hpp"
#include "matroid.hpp"
#include "verify.hpp"

namespace cavoid {

// forward[i] is true when edge i keeps its stored (u, v) order.
struct Orientation {
  std::vector<bool> forward;

  bool operator==(const Orientation&) const = default;
};

inline ColoredGraph apply_orientation(const ColoredGraph& g, const Orientation& o,
                                      std::optional<int> root = std::nullopt) {
  if (g.directed) throw Error("graph is already directed");
  if (static_cast<int>(o.forward.size()) != g.edge_count()) throw Error("orientation size mismatch");
  ColoredGraph d = g;
  d.directed = true;
  for (int e = 0; e < d.edge_count(); ++e) {
    if (!o.forward[e]) std::swap(d.edges[e].u, d.edges[e].v);
  }
  if (root) d.root = *root;
  return d;
}

inline std::string write_orientation(const ColoredGraph& g, const Orientation& o) {
  std::ostringstream out;
  for (int e = 0; e < g.edge_count(); ++e) {
    out << "orient " << g.edges[e].id << (o.forward[e] ? " fwd" : " bwd") << "\n";
  }
  return out.str();
}

inline Orientation read_orientation(const ColoredGraph& g, const std::string& text) {
  std::vector<int> state(g.edge_count(), -1);
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto tok = detail::split_ws(raw);
    if (tok.empty()) continue;
    if (tok[0] != "orient" || tok.size() != 3) throw ParseError(line, "expected: orient <edge-id> fwd|bwd");
    int pos = g.edge_index(detail::parse_id(tok[1], line));
    if (pos < 0) throw ParseError(line, "unknown edge id " + tok[1]);
    if (state[pos] >= 0) throw ParseError(line, "edge oriented twice");
    if (tok[2] == "fwd") state[pos] = 1;
    else if (tok[2] == "bwd") state[pos] = 0;
    else throw ParseError(line, "direction must be fwd or bwd");
  }
  Orientation o;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (state[e] < 0) throw ParseError(line, "edge " + std::to_string(g.edges[e].id) + " has no direction");
    o.forward.push_back(state[e] == 1);
  }
  return o;
}

using OrientationOutcome = std::variant<Orientation, Infeasible>;

// DFS orientation: tree edges away from the DFS root, back edges toward the
// ancestor.
inline OrientationOutcome robbins_orientation(const ColoredGraph& g) {
  if (g.directed) throw Error("robbins_orientation expects an undirected graph");
  const int n = g.vertex_count(), m = g.edge_count();
  Orientation o;
  o.forward.assign(m, true);
  if (n <= 1) return o;
  if (component_count(g) != 1) return Infeasible{"graph is disconnected", {}, {}};
  auto br = bridges(g);
  if (!br.empty()) {
    return Infeasible{"bridge " + std::to_string(br.front()), Cut{CutKind::edge_cut, {}, {br.front()}},
                      {br.front()}};
  }
  std::vector<std::vector<int>> inc(n);
  for (int e = 0; e < m; ++e) {
    if (g.edges[e].is_loop()) continue;
    inc[g.index_of(g.edges[e].u)].push_back(e);
    inc[g.index_of(g.edges[e].v)].push_back(e);
  }
  std::vector<char> visited(n, 0), done(m, 0);
  std::vector<std::pair<int, size_t>> stack{{0, 0}};
  visited[0] = 1;
  while (!stack.empty()) {
    auto& [x, next] = stack.back();
    if (next == inc[x].size()) {
      stack.pop_back();
      continue;
    }
    int e = inc[x][next++];
    if (done[e]) continue;
    done[e] = 1;
    int xu = g.index_of(g.edges[e].u);
    int y = xu == x ? g.index_of(g.edges[e].v) : xu;
    o.forward[e] = xu == x;  // x -> y in both the tree and the back-edge case
    if (!visited[y]) {
      visited[y] = 1;
      stack.emplace_back(y, 0);
    }
  }
  if (!is_strongly_k_arc_connected(apply_orientation(g, o), 1)) throw Error("internal: Robbins orientation failed");
  return o;
}

// k edge-disjoint spanning trees oriented away from r; leftover edges run
// from the lower vertex id to the higher.
inline OrientationOutcome rooted_k_arc_orientation(const ColoredGraph& g, int root_id, int k) {
  if (g.directed) throw Error("rooted_k_arc_orientation expects an undirected graph");
  if (k < 1) throw Error("k must be positive");
  const int r = g.index_of(root_id);
  if (r < 0) throw Error("root is not a vertex");
  const int n = g.vertex_count(), m = g.edge_count();
  Orientation o;
  o.forward.assign(m, true);
  for (int e = 0; e < m; ++e) o.forward[e] = g.edges[e].u <= g.edges[e].v;
  if (n == 1) return o;
  auto gm = graphic(g);
  if (full_rank(*gm) != n - 1) return Infeasible{"graph is disconnected", {}, {}};
  auto pack = pack_k_bases(*gm, k);
  if (!pack.ok) {
    Cut cut{CutKind::edge_cut, {}, {}};
    for (int e : pack.violating) cut.edges.push_back(g.edges[e].id);
    std::string why = "|F| = " + std::to_string(pack.violating.size()) + " < " + std::to_string(k) + " * (" +
                      std::to_string(pack.components_without_violating) + " - 1)";
    return Infeasible{why, cut, cut.edges};
  }
  for (const auto& tree : pack.bases) {
    std::vector<std::vector<int>> inc(n);
    for (int e : tree) {
      inc[g.index_of(g.edges[e].u)].push_back(e);
      inc[g.index_of(g.edges[e].v)].push_back(e);
    }
    std::vector<char> seen(n, 0);
    std::vector<int> queue{r};
    seen[r] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int x = queue[qi];
      for (int e : inc[x]) {
        int xu = g.index_of(g.edges[e].u);
        int y = xu == x ? g.index_of(g.edges[e].v) : xu;
        if (seen[y]) continue;
        seen[y] = 1;
        o.forward[e] = xu == x;
        queue.push_back(y);
      }
    }
  }
  if (!is_rooted_k_arc_connected(apply_orientation(g, o), root_id, k)) {
    throw Error("internal: rooted orientation failed verification");
  }
  return o;
}

// Strongly k-arc-connected orientation exists iff G is 2k-edge-connected.
// A single vertex needs k loops.
inline bool nash_williams_check(const ColoredGraph& g, int k) {
  if (g.directed) throw Error("expected an undirected graph");
  if (k < 1) throw Error("k must be positive");
  if (g.vertex_count() == 0) return true;
  if (g.vertex_count() == 1) return g.edge_count() >= k;
  return is_k_edge_connected(g, 2 * k);
}

// Strongly 2-vertex-connected orientation exists iff G is 4-edge-connected
// and G - v is 2-edge-connected for every v (checked only when G - v keeps
// two or more vertices).
inline bool thomassen_check(const ColoredGraph& g) {
  if (g.directed) throw Error("expected an undirected graph");
  const int n = g.vertex_count();
  if (n == 0) return true;
  if (n == 1) return g.edge_count() >= 2;
  if (!is_k_edge_connected(g, 4)) return false;
  if (n == 2) return true;
  Topology t(g);
  for (int v = 0; v < n; ++v) {
    Mask mask;
    mask.vertex.assign(n, 1);
    mask.vertex[v] = 0;
    if (failing_pair(t, mask, ConnMode::edge, Scope::undirected, 2)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Exhaustive orientation search.

enum class SearchStatus { found, none, budget_exhausted };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::budget_exhausted: return "budget-exhausted";
  }
  return "?";
}

struct OrientSearchOptions {
  long long budget = 5'000'000;  // search nodes
  bool prune = true;
  bool pregate = true;
  // Force parallel edges with equal color sets into opposite directions.
  // Sound for k = 1 only; nullopt means "on exactly when k == 1".
  std::optional<bool> pair_dominance;
};

struct OrientSearchResult {
  SearchStatus status = SearchStatus::none;
  std::optional<Orientation> orientation;
  long long nodes = 0;
  bool pregate_rejected = false;
};

namespace detail {

// Digraph with edges [0, decided) oriented by o and the rest present in both
// directions. Extra reverse arcs get fresh ids after the originals.
inline ColoredGraph partial_digraph(const ColoredGraph& g, const Orientation& o, int decided,
                                    std::optional<int> root) {
  ColoredGraph d = g;
  d.directed = true;
  if (root) d.root = *root;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (e < decided) {
      if (!o.forward[e]) std::swap(d.edges[e].u, d.edges[e].v);
    } else if (!g.edges[e].is_loop()) {
      d.add_edge(g.edges[e].v, g.edges[e].u, g.edges[e].colors);
    }
  }
  return d;
}

// Index of the earlier edge this one is paired with under dominance, or -1.
inline std::vector<int> dominance_partners(const ColoredGraph& g) {
  const int m = g.edge_count();
  std::vector<int> partner(m, -1);
  std::vector<char> used(m, 0);
  for (int e = 0; e < m; ++e) {
    if (g.edges[e].is_loop()) continue;
    auto key = std::minmax(g.edges[e].u, g.edges[e].v);
    for (int f = 0; f < e; ++f) {
      if (used[f] || g.edges[f].is_loop()) continue;
      if (std::minmax(g.edges[f].u, g.edges[f].v) != key || g.edges[f].colors != g.edges[e].colors) continue;
      partner[e] = f;
      used[f] = used[e] = 1;
      break;
    }
  }
  return partner;
}

// Depth-first over edge positions, fwd before bwd. `partial(decided)` may
// reject a prefix; `leaf()` accepts a complete orientation.
inline SearchStatus orientation_dfs(const ColoredGraph& g, Orientation& o, bool dominance, long long budget,
                                    long long& nodes, const std::function<bool(int)>& partial,
                                    const std::function<bool()>& leaf) {
  const int m = g.edge_count();
  auto partner = dominance ? dominance_partners(g) : std::vector<int>(m, -1);
  o.forward.assign(m, true);
  bool out_of_budget = false;
  auto rec = [&](auto&& self, int e) -> bool {
    if (++nodes > budget) {
      out_of_budget = true;
      return false;
    }
    if (e == m) return leaf();
    std::vector<bool> choices{true, false};
    if (g.edges[e].is_loop()) {
      choices = {true};
    } else if (partner[e] >= 0) {
      const auto& f = g.edges[partner[e]];
      int f_tail = o.forward[partner[e]] ? f.u : f.v;
      choices = {g.edges[e].v == f_tail};
    }
    for (bool c : choices) {
      o.forward[e] = c;
      if (e + 1 < m && !partial(e + 1)) continue;
      if (self(self, e + 1)) return true;
      if (out_of_budget) return false;
    }
    return false;
  };
  if (rec(rec, 0)) return SearchStatus::found;
  return out_of_budget ? SearchStatus::budget_exhausted : SearchStatus::none;
}

inline void check_orientable(const ColoredGraph& g, const Notion& n) {
  if (g.directed) throw Error("orientation search expects an undirected graph");
  if (n.scope == Scope::undirected) throw Error("orientation targets need strong or rooted scope");
  if (n.scope == Scope::rooted && !g.root) throw Error("rooted scope needs a root");
  if (n.k < 1 || n.l < 1) throw Error("k and l must be positive");
}

// Necessary condition on the underlying graph. Strong targets need every
// undirected cut to carry 2k edges after any removal; rooted targets are
// checked on the bidirected graph.
inline bool orientation_pregate(const ColoredGraph& g, const Notion& n) {
  if (n.scope == Scope::strong) {
    // a lone vertex keeps its loops as loops, not as 2k cut edges
    if (g.vertex_count() <= 1) return true;
    ColoredGraph u = g;
    u.root.reset();
    return verify(u, {n.part, ConnMode::edge, 2 * n.k, n.l, Scope::undirected}).holds;
  }
  Orientation none;
  none.forward.assign(g.edge_count(), true);
  return verify(partial_digraph(g, none, 0, g.root), n).holds;
}

}  // namespace detail

inline OrientSearchResult find_ca_orientation_exact(const ColoredGraph& g, const Notion& n,
                                                    const OrientSearchOptions& opts = {}) {
  detail::check_orientable(g, n);
  OrientSearchResult res;
  if (opts.pregate && !detail::orientation_pregate(g, n)) {
    res.pregate_rejected = true;
    return res;
  }
  Orientation o;
  bool dominance = opts.pair_dominance.value_or(n.k == 1);
  auto partial = [&](int decided) {
    return !opts.prune || verify(detail::partial_digraph(g, o, decided, g.root), n).holds;
  };
  auto leaf = [&]() { return verify(apply_orientation(g, o, g.root), n).holds; };
  res.status = detail::orientation_dfs(g, o, dominance, opts.budget, res.nodes, partial, leaf);
  if (res.status == SearchStatus::found) res.orientation = o;
  return res;
}

// ---------------------------------------------------------------------------
// Simultaneous orientation and coloring.

struct OrientColorResult {
  SearchStatus status = SearchStatus::none;
  std::optional<Orientation> orientation;
  std::optional<ColoringResult> coloring;
  std::string method;
  bool exhaustive = false;
  std::string note;
};

namespace detail {

inline ColoredGraph strip_colors(const ColoredGraph& g) {
  ColoredGraph h = g;
  for (auto& v : h.vertices) v.colors.clear();
  for (auto& e : h.edges) e.colors.clear();
  return h;
}

inline ColoringResult mono_coloring(const ColoredGraph& g) {
  ColoringResult c;
  c.kind = Target::vertices;
  c.assignment.assign(g.vertex_count(), 0);
  c.colors_used = g.vertex_count() > 0 ? 1 : 0;
  c.certificate.kind = "monochromatic";
  return c;
}

}  // namespace detail

// Orients the uncolored graph g and colors the result with at most c colors
// so that the notion holds. Every success is re-verified end to end.
inline OrientColorResult orient_and_color(const ColoredGraph& g_in, const Notion& n, int c,
                                          std::optional<int> root = std::nullopt, long long budget = 5'000'000) {
  ColoredGraph g = detail::strip_colors(g_in);
  if (root) g.root = *root;
  detail::check_orientable(g, n);
  if (c < 1) throw Error("c must be positive");
  OrientColorResult res;
  auto finish = [&](const Orientation& o, const ColoringResult& col) {
    ColoredGraph d = apply_coloring(apply_orientation(g, o, g.root), col);
    if (!verify(d, n).holds) throw Error("internal: oriented coloring failed verification");
    res.status = SearchStatus::found;
    res.orientation = o;
    res.coloring = col;
    return res;
  };
  const int nv = g.vertex_count();

  // Vertex-colored targets reduce to orienting the uncolored graph, since one
  // color is always optimal.
  if (n.part == Part::vertex) {
    if (n.mode == ConnMode::edge && n.scope == Scope::strong && n.k == 1) {
      res.method = "robbins";
      auto o = robbins_orientation(g);
      if (std::holds_alternative<Infeasible>(o)) {
        res.note = std::get<Infeasible>(o).reason;
        return res;
      }
      return finish(std::get<Orientation>(o), detail::mono_coloring(g));
    }
    if (n.mode == ConnMode::edge && n.scope == Scope::rooted) {
      res.method = "tree-packing";
      auto o = rooted_k_arc_orientation(g, *g.root, n.k);
      if (std::holds_alternative<Infeasible>(o)) {
        res.note = std::get<Infeasible>(o).reason;
        return res;
      }
      return finish(std::get<Orientation>(o), detail::mono_coloring(g));
    }
    std::optional<bool> decided;
    if (n.mode == ConnMode::edge) {
      decided = nash_williams_check(g, n.k);
      res.note = "existence by 2k-edge-connectivity";
    } else if (n.scope == Scope::strong && n.k == 2) {
      decided = thomassen_check(g);
      res.note = "existence by 4-edge-connectivity of G and 2-edge-connectivity of every G - v";
    } else if (n.k >= 3) {
      res.note = "k >= 3 vertex-connected orientation: exhaustive only";
    }
    if (decided && !*decided) {
      res.method = "characterization";
      return res;
    }
    res.method = "exhaustive-orientation";
    res.exhaustive = true;
    OrientSearchOptions opts;
    opts.budget = budget;
    auto found = find_ca_orientation_exact(g, {Part::vertex, n.mode, n.k, 1, n.scope}, opts);
    if (found.status != SearchStatus::found) {
      res.status = found.status;
      return res;
    }
    return finish(*found.orientation, detail::mono_coloring(g));
  }

  if (n.part == Part::edge && n.scope == Scope::rooted && n.k == 1) {
    res.method = "tree-packing+arborescences";
    if (nv == 1) {
      Orientation o;
      o.forward.assign(g.edge_count(), true);
      ColoringResult col;
      col.assignment.assign(g.edge_count(), 0);
      col.colors_used = g.edge_count() > 0 ? 1 : 0;
      return finish(o, col);
    }
    if (c < n.l + 1) {
      res.note = "needs at least l+1 colors";
      return res;
    }
    auto o = rooted_k_arc_orientation(g, *g.root, n.l + 1);
    if (std::holds_alternative<Infeasible>(o)) {
      res.note = std::get<Infeasible>(o).reason;
      return res;
    }
    const auto& orient = std::get<Orientation>(o);
    auto col = rooted_ca_coloring(apply_orientation(g, orient, g.root), *g.root, n.l);
    return finish(orient, std::get<ColoringResult>(col));
  }

  // Remaining families: joint search over orientations and canonical
  // colorings. Prefixes are pruned when even the bidirected rest admits no
  // coloring at all.
  res.method = "exhaustive-joint";
  res.exhaustive = true;
  Orientation o;
  std::optional<ColoringResult> best;
  long long nodes = 0;
  bool leaf_exhausted = false;
  auto partial = [&](int decided) {
    return exists_ca_coloring(detail::partial_digraph(g, o, decided, g.root), n).exists;
  };
  auto leaf = [&]() {
    ColoredGraph d = apply_orientation(g, o, g.root);
    if (!exists_ca_coloring(d, n).exists) return false;
    ExactOptions eo;
    eo.budget = std::max<long long>(1, budget - nodes);
    auto r = exact_feasible(d, n, c, eo);
    nodes += r.nodes;
    leaf_exhausted |= r.status == OptStatus::budget_exhausted;
    if (r.status != OptStatus::optimal) return false;
    ColoringResult col;
    col.kind = target_of(n.part);
    col.assignment = *r.assignment;
    col.colors_used = *r.value;
    col.certificate.kind = "search";
    best = col;
    return true;
  };
  if (!partial(0)) return res;
  auto st = detail::orientation_dfs(g, o, false, budget, nodes, partial, leaf);
  if (st == SearchStatus::found) return finish(o, *best);
  res.status = leaf_exhausted ? SearchStatus::budget_exhausted : st;
  return res;
}

}  // namespace cavoid
