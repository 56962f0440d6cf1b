#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "connectivity.hpp"
#include "graph.hpp"
#include "subsets.hpp"

namespace cavoid {

enum class Part { edge, vertex, internal_vertex };

struct Notion {
  Part part = Part::edge;
  ConnMode mode = ConnMode::edge;
  int k = 1;
  int l = 1;
  Scope scope = Scope::undirected;

  bool operator==(const Notion&) const = default;
};

inline Target target_of(Part p) { return p == Part::edge ? Target::edges : Target::vertices; }

inline const char* to_string(Part p) {
  switch (p) {
    case Part::edge: return "edge";
    case Part::vertex: return "vertex";
    case Part::internal_vertex: return "internal-vertex";
  }
  return "?";
}
inline const char* to_string(ConnMode m) { return m == ConnMode::edge ? "edge" : "vertex"; }
inline const char* to_string(Scope s) {
  switch (s) {
    case Scope::undirected: return "undirected";
    case Scope::strong: return "strong";
    case Scope::rooted: return "rooted";
  }
  return "?";
}

inline Part part_from_string(const std::string& s) {
  if (s == "edge" || s == "arc") return Part::edge;
  if (s == "vertex") return Part::vertex;
  if (s == "internal-vertex" || s == "internal") return Part::internal_vertex;
  throw Error("unknown colored part '" + s + "'");
}
inline ConnMode mode_from_string(const std::string& s) {
  if (s == "edge" || s == "arc") return ConnMode::edge;
  if (s == "vertex") return ConnMode::vertex;
  throw Error("unknown connectivity mode '" + s + "'");
}
inline Scope scope_from_string(const std::string& s) {
  if (s == "undirected") return Scope::undirected;
  if (s == "strong") return Scope::strong;
  if (s == "rooted") return Scope::rooted;
  throw Error("unknown scope '" + s + "'");
}

struct Witness {
  ColorSet colors;
  Cut cut;
  // Failing (s, t) vertex ids; absent when a one-vertex residual lacks loops.
  std::optional<std::pair<int, int>> pair;
};

struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;

  explicit operator bool() const { return holds; }
};

struct VerifyOptions {
  // Cap on the number of color subsets enumerated when l >= 2.
  long long max_subsets = 1'000'000;
};

inline void check_compatible(const ColoredGraph& g, const Notion& n) {
  if (n.k < 1 || n.l < 1) throw Error("k and l must be positive");
  if (n.scope == Scope::undirected && g.directed) throw Error("undirected scope on a digraph");
  if (n.scope != Scope::undirected && !g.directed) throw Error("directed scope on an undirected graph");
  if (n.scope == Scope::rooted && !g.root) throw Error("rooted scope needs a root");
}

class Verifier {
 public:
  Verifier(const ColoredGraph& g, Notion n, VerifyOptions opts = {})
      : g_(g), n_(n), topo_(g), colors_(g.used_colors(target_of(n.part))) {
    check_compatible(g, n);
    root_ = g.root ? g.index_of(*g.root) : -1;
    long long count = binomial_sum(static_cast<int>(colors_.size()), n.l, opts.max_subsets);
    if (n.l >= 2 && count > opts.max_subsets) {
      throw GuardExceeded("color subsets exceed cap of " + std::to_string(opts.max_subsets));
    }
    holders_.resize(colors_.size());
    if (n.part == Part::edge) {
      for (int e = 0; e < g.edge_count(); ++e) add_holder(g.edges[e].colors, e);
    } else {
      for (int v = 0; v < g.vertex_count(); ++v) add_holder(g.vertices[v].colors, v);
    }
  }

  Verdict run() const {
    Verdict out;
    for_each_subset(static_cast<int>(colors_.size()), n_.l, [&](const std::vector<int>& sub) {
      auto w = check_all(sub);
      if (w) {
        out.holds = false;
        out.witness = std::move(w);
        return true;
      }
      return false;
    });
    return out;
  }

  Verdict run_pair(int u_id, int v_id) const {
    int u = g_.index_of(u_id), v = g_.index_of(v_id);
    if (u < 0 || v < 0) throw Error("pair endpoint is not a vertex");
    if (u == v) throw Error("pair endpoints must differ");
    Verdict out;
    for_each_subset(static_cast<int>(colors_.size()), n_.l, [&](const std::vector<int>& sub) {
      auto w = check_pair(sub, u, v);
      if (w) {
        out.holds = false;
        out.witness = std::move(w);
        return true;
      }
      return false;
    });
    return out;
  }

 private:
  void add_holder(const ColorSet& cs, int element) {
    for (Color c : cs) {
      auto it = std::lower_bound(colors_.begin(), colors_.end(), c);
      holders_[it - colors_.begin()].push_back(element);
    }
  }

  std::vector<char> deleted_for(const std::vector<int>& sub, int size) const {
    std::vector<char> del(size, 0);
    for (int ci : sub) {
      for (int x : holders_[ci]) del[x] = 1;
    }
    return del;
  }

  ColorSet colors_of(const std::vector<int>& sub) const {
    ColorSet c;
    for (int ci : sub) c.push_back(colors_[ci]);
    return c;
  }

  CutKind cut_kind() const {
    if (n_.mode == ConnMode::vertex) return CutKind::mixed_cut;
    return g_.directed ? CutKind::directed_cut : CutKind::edge_cut;
  }

  Witness make_witness(const std::vector<int>& sub, const Mask& mask, int s, int t) const {
    Witness w;
    w.colors = colors_of(sub);
    w.cut = to_cut(g_, local_min_cut(topo_, mask, s, t, n_.mode), cut_kind());
    w.pair = std::make_pair(g_.vertices[s].id, g_.vertices[t].id);
    return w;
  }

  std::optional<Witness> check_all(const std::vector<int>& sub) const {
    const int n = topo_.n;
    Mask mask;
    if (n_.part == Part::edge) {
      auto del = deleted_for(sub, topo_.m());
      mask.edge.resize(del.size());
      for (size_t i = 0; i < del.size(); ++i) mask.edge[i] = !del[i];
      if (n == 0) return std::nullopt;
      if (n == 1) {
        if (n_.k == 1 || alive_loops(topo_, mask, 0) >= n_.k) return std::nullopt;
        Witness w;
        w.colors = colors_of(sub);
        w.cut.kind = cut_kind();
        return w;
      }
      auto bad = failing_pair(topo_, mask, n_.mode, n_.scope, n_.k, root_);
      if (!bad) return std::nullopt;
      return make_witness(sub, mask, bad->first, bad->second);
    }

    auto del = deleted_for(sub, n);
    if (n_.part == Part::vertex) {
      mask.vertex.resize(n);
      for (int v = 0; v < n; ++v) mask.vertex[v] = !del[v];
      if (alive_count(topo_, mask) <= 1) return std::nullopt;
      // Pairs with a deleted endpoint fall back to paths in the whole graph,
      // which the empty subset has already checked.
      auto bad = failing_pair(topo_, mask, n_.mode, n_.scope, n_.k, root_);
      if (!bad) return std::nullopt;
      return make_witness(sub, mask, bad->first, bad->second);
    }

    // Internal vertices: endpoints are never deleted.
    if (n <= 1) return std::nullopt;
    bool any_deleted = false;
    mask.vertex.resize(n);
    for (int v = 0; v < n; ++v) {
      mask.vertex[v] = !del[v];
      any_deleted |= del[v];
    }
    if (!any_deleted) {
      auto bad = failing_pair(topo_, mask, n_.mode, n_.scope, n_.k, root_);
      if (!bad) return std::nullopt;
      return make_witness(sub, mask, bad->first, bad->second);
    }
    Mask full;
    for (auto [s, t] : scope_pairs(topo_, full, n_.scope, root_)) {
      mask.vertex[s] = mask.vertex[t] = 1;
      bool ok = local_connectivity(topo_, mask, s, t, n_.mode, n_.k) >= n_.k;
      std::optional<Witness> w;
      if (!ok) w = make_witness(sub, mask, s, t);
      mask.vertex[s] = !del[s];
      mask.vertex[t] = !del[t];
      if (w) return w;
    }
    return std::nullopt;
  }

  std::optional<Witness> check_pair(const std::vector<int>& sub, int u, int v) const {
    Mask mask;
    if (n_.part == Part::edge) {
      auto del = deleted_for(sub, topo_.m());
      mask.edge.resize(del.size());
      for (size_t i = 0; i < del.size(); ++i) mask.edge[i] = !del[i];
    } else {
      auto del = deleted_for(sub, topo_.n);
      if (n_.part == Part::vertex && (del[u] || del[v])) return std::nullopt;
      del[u] = del[v] = 0;
      mask.vertex.resize(topo_.n);
      for (int x = 0; x < topo_.n; ++x) mask.vertex[x] = !del[x];
    }
    std::vector<std::pair<int, int>> dirs{{u, v}};
    if (n_.scope == Scope::strong) dirs.emplace_back(v, u);
    for (auto [s, t] : dirs) {
      if (local_connectivity(topo_, mask, s, t, n_.mode, n_.k) < n_.k) return make_witness(sub, mask, s, t);
    }
    return std::nullopt;
  }

  const ColoredGraph& g_;
  Notion n_;
  Topology topo_;
  ColorSet colors_;
  std::vector<std::vector<int>> holders_;
  int root_ = -1;
};

inline Verdict verify(const ColoredGraph& g, const Notion& n, const VerifyOptions& opts = {}) {
  return Verifier(g, n, opts).run();
}

inline Verdict verify_pair(const ColoredGraph& g, int u, int v, const Notion& n,
                           const VerifyOptions& opts = {}) {
  return Verifier(g, n, opts).run_pair(u, v);
}

// Residual of g after the witness colors are removed under the notion's
// deletion rule (internal-vertex keeps the witness pair).
inline ColoredGraph witness_residual(const ColoredGraph& g, const Notion& n, const Witness& w) {
  if (n.part != Part::internal_vertex) return remove_colors(g, w.colors, target_of(n.part));
  ColoredGraph keep = g;
  if (w.pair) {
    for (auto& v : keep.vertices) {
      if (v.id == w.pair->first || v.id == w.pair->second) v.colors.clear();
    }
  }
  ColoredGraph r = remove_colors(keep, w.colors, Target::vertices);
  for (auto& v : r.vertices) v.colors = g.vertex(v.id).colors;
  return r;
}

// Replays a witness: after removing the colors and the cut, the pair must be
// disconnected and the cut must be smaller than k.
inline bool replay_witness(const ColoredGraph& g, const Notion& n, const Witness& w) {
  ColoredGraph r = witness_residual(g, n, w);
  if (!w.pair) {
    if (r.vertex_count() != 1 || n.k == 1) return false;
    int loops = 0;
    for (const auto& e : r.edges) loops += e.is_loop();
    return loops < n.k;
  }
  if (w.cut.size() >= n.k) return false;
  Topology t(r);
  Mask mask;
  mask.vertex.assign(r.vertex_count(), 1);
  mask.edge.assign(r.edge_count(), 1);
  for (int id : w.cut.vertices) {
    int i = r.index_of(id);
    if (i < 0) return false;
    mask.vertex[i] = 0;
  }
  for (int id : w.cut.edges) {
    int i = r.edge_index(id);
    if (i < 0) return false;
    mask.edge[i] = 0;
  }
  int s = r.index_of(w.pair->first), d = r.index_of(w.pair->second);
  if (s < 0 || d < 0) return false;
  if (!mask.v(s) || !mask.v(d)) return false;
  return local_connectivity(t, mask, s, d, ConnMode::edge, 1) == 0;
}

}  // namespace cavoid
