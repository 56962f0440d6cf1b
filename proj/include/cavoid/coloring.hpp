#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "connectivity.hpp"
#include "matroid.hpp"
#include "subsets.hpp"
#include "verify.hpp"

namespace cavoid {

struct Certificate {
  std::string kind;  // "partition", "arborescences", "monochromatic", "search", ...
  std::vector<std::vector<int>> groups;
  std::string note;
};

struct ColoringResult {
  int colors_used = 0;
  Target kind = Target::edges;
  std::vector<Color> assignment;  // by element position
  Certificate certificate;
};

struct Infeasible {
  std::string reason;
  Cut cut;
  std::vector<int> elements;  // offending edge or vertex ids, when meaningful
};

using ColoringOutcome = std::variant<ColoringResult, Infeasible>;

inline int distinct_colors(const std::vector<Color>& a) {
  std::vector<Color> s = a;
  ColoredGraph::normalize(s);
  return static_cast<int>(s.size());
}

// Copy of g with each element of the given kind carrying one color.
inline ColoredGraph apply_coloring(const ColoredGraph& g, Target kind, const std::vector<Color>& assignment) {
  ColoredGraph out = g;
  if (kind == Target::edges) {
    if (static_cast<int>(assignment.size()) != g.edge_count()) throw Error("coloring size mismatch");
    for (int e = 0; e < g.edge_count(); ++e) out.edges[e].colors = {assignment[e]};
  } else {
    if (static_cast<int>(assignment.size()) != g.vertex_count()) throw Error("coloring size mismatch");
    for (int v = 0; v < g.vertex_count(); ++v) out.vertices[v].colors = {assignment[v]};
  }
  return out;
}

inline ColoredGraph apply_coloring(const ColoredGraph& g, const ColoringResult& r) {
  return apply_coloring(g, r.kind, r.assignment);
}

// Coloring file: `instance <name>` then `color edge|vertex <id> <color>`.
inline std::string write_coloring(const ColoredGraph& g, const ColoringResult& r) {
  std::ostringstream out;
  out << "instance " << g.name << "\n";
  const char* kind = r.kind == Target::edges ? "edge" : "vertex";
  for (size_t i = 0; i < r.assignment.size(); ++i) {
    int id = r.kind == Target::edges ? g.edges[i].id : g.vertices[i].id;
    out << "color " << kind << " " << id << " " << r.assignment[i] << "\n";
  }
  return out.str();
}

inline ColoringResult read_coloring(const ColoredGraph& g, const std::string& text) {
  ColoringResult r;
  std::optional<Target> kind;
  std::vector<std::optional<Color>> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto tok = detail::split_ws(raw);
    if (tok.empty() || tok[0] == "instance") continue;
    if (tok[0] != "color" || tok.size() != 4) throw ParseError(line, "expected: color <kind> <id> <color>");
    Target t;
    if (tok[1] == "edge") t = Target::edges;
    else if (tok[1] == "vertex") t = Target::vertices;
    else throw ParseError(line, "unknown element kind '" + tok[1] + "'");
    if (kind && *kind != t) throw ParseError(line, "mixed element kinds");
    if (!kind) {
      kind = t;
      seen.assign(t == Target::edges ? g.edge_count() : g.vertex_count(), std::nullopt);
    }
    int id = detail::parse_id(tok[2], line);
    int pos = t == Target::edges ? g.edge_index(id) : g.index_of(id);
    if (pos < 0) throw ParseError(line, "unknown element id " + tok[2]);
    if (seen[pos]) throw ParseError(line, "element colored twice");
    seen[pos] = detail::parse_id(tok[3], line);
  }
  if (!kind) throw ParseError(line, "empty coloring");
  r.kind = *kind;
  for (size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw ParseError(line, "element at position " + std::to_string(i) + " has no color");
    r.assignment.push_back(*seen[i]);
  }
  r.colors_used = distinct_colors(r.assignment);
  return r;
}

// ---------------------------------------------------------------------------
// Existence characterizations.

struct ExistenceResult {
  bool exists = true;
  std::string transcript;
  std::vector<int> deleted_edges;     // violating E' (ids)
  std::vector<int> deleted_vertices;  // violating V' (ids)
  std::optional<Cut> cut;
  std::optional<std::pair<int, int>> pair;
};

namespace detail {

inline std::string join_ids(const std::vector<int>& ids) {
  std::string s = "{";
  for (size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i]);
  return s + "}";
}

inline CutKind cut_kind_for(const ColoredGraph& g, ConnMode mode) {
  if (mode == ConnMode::vertex) return CutKind::mixed_cut;
  return g.directed ? CutKind::directed_cut : CutKind::edge_cut;
}

}  // namespace detail

// Decides whether some coloring of g realizes the notion. Every family is
// decided by the unique-color coloring, which is the weakest attack; the
// condition evaluated is reported in the transcript.
inline ExistenceResult exists_ca_coloring(const ColoredGraph& g, const Notion& n,
                                          long long max_subsets = 1'000'000) {
  check_compatible(g, n);
  ExistenceResult res;
  Topology t(g);
  const int root = g.root ? g.index_of(*g.root) : -1;
  const std::string scope = to_string(n.scope);
  const std::string mode = n.mode == ConnMode::edge ? (g.directed ? "arc" : "edge") : "vertex";
  auto fail_with_pair = [&](const Mask& mask, std::pair<int, int> p) {
    res.exists = false;
    res.cut = to_cut(g, local_min_cut(t, mask, p.first, p.second, n.mode), detail::cut_kind_for(g, n.mode));
    res.pair = std::make_pair(g.vertices[p.first].id, g.vertices[p.second].id);
  };

  if (n.part == Part::edge) {
    if (t.n <= 1) {
      int loops = t.m();
      res.exists = t.n == 0 || n.k == 1 || loops >= n.k + n.l;
      res.transcript = "one vertex: k == 1 or at least k+l loops";
      return res;
    }
    if (n.mode == ConnMode::edge) {
      res.transcript = scope + " (k+l)-" + mode + "-connected with k+l=" + std::to_string(n.k + n.l);
      auto bad = failing_pair(t, {}, ConnMode::edge, n.scope, n.k + n.l, root);
      if (bad) fail_with_pair({}, *bad);
      return res;
    }
    res.transcript = "G - E' " + scope + " " + std::to_string(n.k) + "-vertex-connected for every |E'| <= " +
                     std::to_string(n.l);
    if (binomial_sum(t.m(), n.l, max_subsets) > max_subsets) throw GuardExceeded("too many edge subsets");
    for_each_subset(t.m(), n.l, [&](const std::vector<int>& sub) {
      Mask mask;
      mask.edge.assign(t.m(), 1);
      for (int e : sub) mask.edge[e] = 0;
      auto bad = failing_pair(t, mask, ConnMode::vertex, n.scope, n.k, root);
      if (!bad) return false;
      fail_with_pair(mask, *bad);
      for (int e : sub) res.deleted_edges.push_back(g.edges[e].id);
      return true;
    });
    return res;
  }

  if (t.n <= 1) {
    res.transcript = "at most one vertex";
    return res;
  }

  if (n.part == Part::vertex) {
    res.transcript = scope + " " + std::to_string(n.k) + "-" + mode + "-connected; one color suffices";
    auto bad = failing_pair(t, {}, n.mode, n.scope, n.k, root);
    if (bad) fail_with_pair({}, *bad);
    return res;
  }

  // Internal vertices: for every V' of at most l vertices (never the root),
  // all pairs outside V' keep k disjoint paths in G - V'.
  res.transcript = "G - V' " + scope + " " + std::to_string(n.k) + "-" + mode +
                   "-connected or at most one vertex, for every |V'| <= " + std::to_string(n.l);
  std::vector<int> pool;
  for (int v = 0; v < t.n; ++v) {
    if (n.scope != Scope::rooted || v != root) pool.push_back(v);
  }
  if (binomial_sum(static_cast<int>(pool.size()), n.l, max_subsets) > max_subsets) {
    throw GuardExceeded("too many vertex subsets");
  }
  for_each_subset(static_cast<int>(pool.size()), n.l, [&](const std::vector<int>& sub) {
    Mask mask;
    mask.vertex.assign(t.n, 1);
    for (int i : sub) mask.vertex[pool[i]] = 0;
    if (alive_count(t, mask) <= 1) return false;
    auto bad = failing_pair(t, mask, n.mode, n.scope, n.k, root);
    if (!bad) return false;
    fail_with_pair(mask, *bad);
    for (int i : sub) res.deleted_vertices.push_back(g.vertices[pool[i]].id);
    return true;
  });
  if (n.mode == ConnMode::vertex && n.scope == Scope::undirected) {
    bool literal = k_connected(t, {}, ConnMode::vertex, Scope::undirected, n.k + n.l, -1);
    res.transcript += "; plain (k+l)-vertex-connectivity: ";
    res.transcript += literal ? "yes" : "no";
  }
  return res;
}

// ---------------------------------------------------------------------------
// Polynomial constructions.

inline ColoringOutcome min_courteous_coloring(const ColoredGraph& g) {
  if (g.directed) throw Error("min_courteous_coloring expects an undirected graph");
  if (g.vertex_count() > 1 && component_count(g) != 1) return Infeasible{"graph is disconnected", {}, {}};
  auto br = bridges(g);
  if (!br.empty()) {
    Cut c{CutKind::edge_cut, {}, {br.front()}};
    return Infeasible{"bridge " + std::to_string(br.front()), c, {br.front()}};
  }
  ColoringResult res;
  res.kind = Target::edges;
  res.assignment.assign(g.edge_count(), 0);
  if (g.vertex_count() == 0) return res;
  auto part = partition_min(*cographic(g));
  for (size_t b = 0; b < part.blocks.size(); ++b) {
    std::vector<int> ids;
    for (int e : part.blocks[b]) {
      res.assignment[e] = static_cast<Color>(b);
      ids.push_back(g.edges[e].id);
    }
    res.certificate.groups.push_back(ids);
  }
  res.certificate.kind = "partition";
  res.colors_used = static_cast<int>(part.blocks.size());
  if (!verify(apply_coloring(g, res), {Part::edge, ConnMode::edge, 1, 1, Scope::undirected}).holds) {
    throw Error("internal: courteous coloring failed verification");
  }
  return res;
}

// Packs l+1 arc-disjoint spanning arborescences from the root and colors
// arborescence i with color i; arcs outside every arborescence take color 0.
inline ColoringOutcome rooted_ca_coloring(const ColoredGraph& d, int root_id, int l) {
  if (!d.directed) throw Error("rooted_ca_coloring expects a digraph");
  if (l < 1) throw Error("l must be positive");
  const int r = d.index_of(root_id);
  if (r < 0) throw Error("root is not a vertex");
  ColoredGraph rooted = d;
  rooted.root = root_id;
  ColoringResult res;
  res.kind = Target::edges;
  res.assignment.assign(d.edge_count(), 0);
  res.certificate.kind = "arborescences";
  Topology t(d);
  if (t.n == 1) {
    res.colors_used = distinct_colors(res.assignment);
    return res;
  }
  const int trees = l + 1;
  if (!is_rooted_k_arc_connected(d, root_id, trees)) {
    Mask none;
    for (int v = 0; v < t.n; ++v) {
      if (v != r && local_connectivity(t, none, r, v, ConnMode::edge, trees) < trees) {
        return Infeasible{"not rooted " + std::to_string(trees) + "-arc-connected",
                          to_cut(d, local_min_cut(t, none, r, v, ConnMode::edge), CutKind::directed_cut), {}};
      }
    }
  }
  std::vector<int> order(t.m());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ea = d.edges[a];
    const auto& eb = d.edges[b];
    return std::tie(ea.u, ea.v, ea.id) < std::tie(eb.u, eb.v, eb.id);
  });
  Mask mask;
  mask.edge.assign(t.m(), 1);  // arcs not yet claimed by an arborescence
  for (int i = 0; i < trees; ++i) {
    const int remaining = trees - i;
    std::vector<char> reached(t.n, 0);
    reached[r] = 1;
    int count = 1;
    std::vector<int> arcs;
    auto probe = [&]() {
      for (int v = 0; v < t.n; ++v) {
        if (v == r) continue;
        // Lovasz: after claiming the partial tree, every vertex keeps
        // remaining-1 arc-disjoint paths in the unclaimed arcs.
        const int need = remaining - 1;
        if (need > 0 && local_connectivity(t, mask, r, v, ConnMode::edge, need) < need) return false;
      }
      return true;
    };
    while (count < t.n) {
      bool admitted = false;
      for (int a : order) {
        int x = t.tail[a], y = t.head[a];
        if (!mask.edge[a] || !reached[x] || reached[y]) continue;
        mask.edge[a] = 0;
        reached[y] = 1;
        if (probe()) {
          arcs.push_back(a);
          ++count;
          admitted = true;
          break;
        }
        mask.edge[a] = 1;
        reached[y] = 0;
      }
      if (!admitted) throw Error("internal: no safe arc while growing arborescence");
    }
    std::vector<int> ids;
    for (int a : arcs) {
      res.assignment[a] = i;
      ids.push_back(d.edges[a].id);
    }
    std::sort(ids.begin(), ids.end());
    res.certificate.groups.push_back(ids);
  }
  res.colors_used = distinct_colors(res.assignment);
  if (!verify(apply_coloring(rooted, res), {Part::edge, ConnMode::edge, 1, l, Scope::rooted}).holds) {
    throw Error("internal: rooted coloring failed verification");
  }
  return res;
}

// Monochromatic colorings for the vertex families and for internal vertices
// when every quantified pair is joined by k parallel edges.
inline ColoringOutcome single_color_colorings(const ColoredGraph& g, const Notion& n) {
  check_compatible(g, n);
  if (n.part == Part::edge) throw Error("single-color construction covers vertex notions only");
  Topology t(g);
  const int root = g.root ? g.index_of(*g.root) : -1;
  ColoringResult res;
  res.kind = Target::vertices;
  res.assignment.assign(g.vertex_count(), 0);
  res.colors_used = g.vertex_count() > 0 ? 1 : 0;
  res.certificate.kind = "monochromatic";
  if (n.part == Part::vertex) {
    if (t.n > 1) {
      auto bad = failing_pair(t, {}, n.mode, n.scope, n.k, root);
      if (bad) {
        return Infeasible{"connectivity gate fails",
                          to_cut(g, local_min_cut(t, {}, bad->first, bad->second, n.mode),
                                 detail::cut_kind_for(g, n.mode)),
                          {g.vertices[bad->first].id, g.vertices[bad->second].id}};
      }
    }
  } else {
    Mask full;
    for (auto [s, d] : scope_pairs(t, full, n.scope, root)) {
      int direct = 0;
      for (int e = 0; e < t.m(); ++e) {
        bool fwd = t.tail[e] == s && t.head[e] == d;
        bool bwd = t.tail[e] == d && t.head[e] == s;
        direct += fwd || (!t.directed && bwd);
      }
      if (direct < n.k) {
        return Infeasible{"pair joined by fewer than k parallel edges", {},
                          {g.vertices[s].id, g.vertices[d].id}};
      }
    }
  }
  if (!verify(apply_coloring(g, res), n).holds) throw Error("internal: monochromatic coloring failed");
  return res;
}

// ---------------------------------------------------------------------------
// Exact search over canonical colorings.

enum class OptStatus { optimal, infeasible, budget_exhausted };

inline const char* to_string(OptStatus s) {
  switch (s) {
    case OptStatus::optimal: return "optimal";
    case OptStatus::infeasible: return "infeasible";
    case OptStatus::budget_exhausted: return "budget-exhausted";
  }
  return "?";
}

struct OptOutcome {
  OptStatus status = OptStatus::infeasible;
  std::optional<int> value;
  std::optional<std::vector<Color>> assignment;
  long long nodes = 0;
};

struct ExactOptions {
  long long budget = 20'000'000;  // search nodes
  bool use_gate = true;           // consult exists_ca_coloring first
  bool use_lower_bound = true;
  bool prune = true;              // partial-assignment pruning
};

namespace detail {

// Depth-first enumeration of restricted-growth strings with values < c.
// `leaf` returns true to stop; `partial(pos)` returns false to prune after
// element pos-1 is assigned.
template <class Leaf, class Partial>
int rgs_search(int m, int c, std::vector<Color>& a, long long& nodes, long long budget, Leaf&& leaf,
               Partial&& partial) {
  // 1 found, 0 exhausted, -1 budget
  std::vector<int> max_used(m + 1, -1);
  auto rec = [&](auto&& self, int pos) -> int {
    if (++nodes > budget) return -1;
    if (pos == m) return leaf() ? 1 : 0;
    int hi = std::min(c - 1, max_used[pos] + 1);
    for (int col = 0; col <= hi; ++col) {
      a[pos] = col;
      max_used[pos + 1] = std::max(max_used[pos], col);
      if (!partial(pos + 1)) continue;
      int r = self(self, pos + 1);
      if (r != 0) return r;
    }
    return 0;
  };
  return rec(rec, 0);
}

}  // namespace detail

// Is there a coloring with at most c colors realizing the notion?
inline OptOutcome exact_feasible(const ColoredGraph& g, const Notion& n, int c, const ExactOptions& opts = {}) {
  check_compatible(g, n);
  const Target kind = target_of(n.part);
  const int m = kind == Target::edges ? g.edge_count() : g.vertex_count();
  OptOutcome out;
  std::vector<Color> a(m, 0);
  auto colored = [&](int assigned) {
    ColoredGraph h = g;
    for (int i = 0; i < m; ++i) {
      ColorSet cs;
      if (i < assigned) cs = {a[i]};
      if (kind == Target::edges) h.edges[i].colors = cs;
      else h.vertices[i].colors = cs;
    }
    if (kind == Target::edges) {
      for (auto& v : h.vertices) v.colors.clear();
    } else {
      for (auto& e : h.edges) e.colors.clear();
    }
    return h;
  };
  if (m == 0) {
    out.nodes = 1;
    if (verify(colored(0), n).holds) {
      out.status = OptStatus::optimal;
      out.value = 0;
      out.assignment = a;
    }
    return out;
  }
  if (c < 1) return out;
  // Unassigned elements are immune, so a failure on a partial coloring
  // persists in every completion. Not sound for the vertex part, where a
  // later deletion can exempt a pair.
  bool prune = opts.prune && n.part != Part::vertex;
  int r = detail::rgs_search(
      m, c, a, out.nodes, opts.budget, [&]() { return verify(colored(m), n).holds; },
      [&](int assigned) { return !prune || assigned == m || verify(colored(assigned), n).holds; });
  if (r == 1) {
    out.status = OptStatus::optimal;
    out.value = distinct_colors(a);
    out.assignment = a;
  } else if (r == -1) {
    out.status = OptStatus::budget_exhausted;
  }
  return out;
}

inline OptOutcome exact_min_colors(const ColoredGraph& g, const Notion& n, const ExactOptions& opts = {}) {
  check_compatible(g, n);
  const Target kind = target_of(n.part);
  const int m = kind == Target::edges ? g.edge_count() : g.vertex_count();
  OptOutcome out;
  if (opts.use_gate && !exists_ca_coloring(g, n).exists) return out;
  if (m == 0) return exact_feasible(g, n, 0, opts);
  int lower = 1;
  // With at most l colors on the edges, removing all of them leaves >= 2
  // isolated vertices.
  if (opts.use_lower_bound && n.part == Part::edge && g.vertex_count() >= 2) lower = n.l + 1;
  long long spent = 0;
  for (int c = lower; c <= m; ++c) {
    ExactOptions o = opts;
    o.budget = opts.budget - spent;
    auto r = exact_feasible(g, n, c, o);
    spent += r.nodes;
    if (r.status != OptStatus::infeasible) {
      r.nodes = spent;
      return r;
    }
  }
  out.nodes = spent;
  return out;
}

// ---------------------------------------------------------------------------
// Weighted variant: after removing any <= l colors a spanning tree of weight
// at most omega must survive.

namespace detail {

inline std::optional<Weight> mst_weight(const ColoredGraph& g, const std::vector<char>& alive) {
  const int n = g.vertex_count();
  std::vector<int> order;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (alive[e] && !g.edges[e].is_loop()) order.push_back(e);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return *g.edges[a].weight < *g.edges[b].weight; });
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  Weight total(0);
  int used = 0;
  for (int e : order) {
    int a = find(g.index_of(g.edges[e].u)), b = find(g.index_of(g.edges[e].v));
    if (a == b) continue;
    parent[a] = b;
    total += *g.edges[e].weight;
    ++used;
  }
  if (used != n - 1) return std::nullopt;
  return total;
}

}  // namespace detail

inline OptOutcome weighted_ca_coloring_exact(const ColoredGraph& g, std::optional<Weight> omega, int c, int l,
                                             const ExactOptions& opts = {}) {
  if (g.directed) throw Error("weighted coloring expects an undirected graph");
  if (!g.weighted() && g.edge_count() > 0) throw Error("weighted coloring needs edge weights");
  const int m = g.edge_count();
  OptOutcome out;
  std::vector<Color> a(m, 0);
  auto survives = [&](int assigned) {
    int colors = 0;
    for (int i = 0; i < assigned; ++i) colors = std::max(colors, a[i] + 1);
    bool ok = true;
    for_each_subset(colors, l, [&](const std::vector<int>& sub) {
      std::vector<char> alive(m, 1);
      for (int i = 0; i < assigned; ++i) {
        if (std::find(sub.begin(), sub.end(), a[i]) != sub.end()) alive[i] = 0;
      }
      auto w = detail::mst_weight(g, alive);
      if (!w || (omega && *w > *omega)) ok = false;
      return !ok;
    });
    return ok;
  };
  long long spent = 0;
  for (int cc = 1; cc <= c; ++cc) {
    long long nodes = 0;
    int r = detail::rgs_search(
        m, cc, a, nodes, opts.budget - spent, [&]() { return survives(m); },
        [&](int assigned) { return !opts.prune || survives(assigned); });
    spent += nodes;
    if (r == 1) {
      out.status = OptStatus::optimal;
      out.value = distinct_colors(a);
      out.assignment = a;
      break;
    }
    if (r == -1) {
      out.status = OptStatus::budget_exhausted;
      break;
    }
  }
  out.nodes = spent;
  return out;
}

}  // namespace cavoid
