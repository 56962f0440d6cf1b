#pragma once

#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cavoid/cavoid.hpp"

namespace cavoid::testing {

inline std::string fixture_path(const std::string& name) { return std::string(CAVOID_FIXTURES) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("missing " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline ColoredGraph load(const std::string& name) { return parse(slurp(fixture_path(name))); }

// ---------------------------------------------------------------------------
// Oracles that avoid flows: connectivity by enumerating small separators.

// Reachability from s to t with vertex/edge positions masked out.
inline bool reaches(const ColoredGraph& g, const std::vector<char>& vdead, const std::vector<char>& edead, int s,
                    int t) {
  const int n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<int> stack{s};
  seen[s] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (x == t) return true;
    for (int e = 0; e < g.edge_count(); ++e) {
      if (edead[e]) continue;
      int a = g.index_of(g.edges[e].u), b = g.index_of(g.edges[e].v);
      int y = -1;
      if (a == x) y = b;
      else if (!g.directed && b == x) y = a;
      if (y < 0 || seen[y] || vdead[y]) continue;
      seen[y] = 1;
      stack.push_back(y);
    }
  }
  return false;
}

// True when no separator of fewer than k elements exists between positions
// s and t. Edge mode separates with edges; vertex mode with inner vertices
// and edges (deleting an edge is how parallel direct edges get cut).
inline bool brute_k_paths(const ColoredGraph& g, const std::vector<char>& vdead, const std::vector<char>& edead,
                          int s, int t, ConnMode mode, int k) {
  std::vector<std::pair<bool, int>> elements;  // (is_vertex, position)
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!edead[e]) elements.emplace_back(false, e);
  }
  if (mode == ConnMode::vertex) {
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (v != s && v != t && !vdead[v]) elements.emplace_back(true, v);
    }
  }
  bool separated = false;
  for_each_subset(static_cast<int>(elements.size()), k - 1, [&](const std::vector<int>& sub) {
    auto vd = vdead;
    auto ed = edead;
    for (int i : sub) {
      if (elements[i].first) vd[elements[i].second] = 1;
      else ed[elements[i].second] = 1;
    }
    separated = !reaches(g, vd, ed, s, t);
    return separated;
  });
  return !separated;
}

inline std::vector<std::pair<int, int>> brute_pairs(const ColoredGraph& g, Scope scope, const std::vector<char>& vdead) {
  std::vector<std::pair<int, int>> out;
  const int n = g.vertex_count();
  if (scope == Scope::rooted) {
    int r = g.index_of(*g.root);
    if (vdead[r]) return out;
    for (int v = 0; v < n; ++v) {
      if (v != r && !vdead[v]) out.emplace_back(r, v);
    }
    return out;
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || vdead[a] || vdead[b]) continue;
      if (scope == Scope::undirected && b < a) continue;
      out.emplace_back(a, b);
    }
  }
  return out;
}

// Direct reading of the definitions over every color subset of size <= l.
inline bool brute_verify(const ColoredGraph& g, const Notion& n) {
  const int nv = g.vertex_count(), m = g.edge_count();
  ColorSet colors = g.used_colors(target_of(n.part));
  auto touched = [](const ColorSet& cs, const ColorSet& removed) { return intersects(cs, removed); };
  bool ok = true;
  for_each_subset(static_cast<int>(colors.size()), n.l, [&](const std::vector<int>& sub) {
    ColorSet removed;
    for (int i : sub) removed.push_back(colors[i]);
    std::vector<char> vdead(nv, 0), edead(m, 0);
    if (n.part == Part::edge) {
      for (int e = 0; e < m; ++e) edead[e] = touched(g.edges[e].colors, removed);
      if (nv == 1) {
        int loops = 0;
        for (int e = 0; e < m; ++e) loops += !edead[e];
        ok = n.k == 1 || loops >= n.k;
        return !ok;
      }
      for (auto [s, t] : brute_pairs(g, n.scope, vdead)) {
        if (!brute_k_paths(g, vdead, edead, s, t, n.mode, n.k)) {
          ok = false;
          return true;
        }
      }
      return false;
    }
    for (int v = 0; v < nv; ++v) vdead[v] = touched(g.vertices[v].colors, removed);
    if (n.part == Part::vertex) {
      int alive = 0;
      for (char d : vdead) alive += !d;
      if (alive <= 1) return false;
      for (auto [s, t] : brute_pairs(g, n.scope, vdead)) {
        if (!brute_k_paths(g, vdead, edead, s, t, n.mode, n.k)) {
          ok = false;
          return true;
        }
      }
      return false;
    }
    std::vector<char> none(nv, 0);
    for (auto [s, t] : brute_pairs(g, n.scope, none)) {
      auto vd = vdead;
      vd[s] = vd[t] = 0;
      if (!brute_k_paths(g, vd, edead, s, t, n.mode, n.k)) {
        ok = false;
        return true;
      }
    }
    return false;
  });
  return ok;
}

// Every assignment of 0..c-1 to the target elements, in plain base-c order.
inline void for_each_assignment(int len, int c, const std::function<bool(const std::vector<Color>&)>& f) {
  std::vector<Color> a(len, 0);
  while (true) {
    if (f(a)) return;
    int i = len - 1;
    while (i >= 0 && a[i] == c - 1) a[i--] = 0;
    if (i < 0) return;
    ++a[i];
  }
}

inline int target_size(const ColoredGraph& g, Target t) {
  return t == Target::edges ? g.edge_count() : g.vertex_count();
}

// Smallest c for which some coloring works, by trying all c^len assignments;
// nullopt if none up to max_c.
inline std::optional<int> brute_min_colors(const ColoredGraph& g, const Notion& n, int max_c) {
  const Target t = target_of(n.part);
  const int len = target_size(g, t);
  for (int c = 1; c <= max_c; ++c) {
    bool found = false;
    for_each_assignment(len, c, [&](const std::vector<Color>& a) {
      found = verify(apply_coloring(g, t, a), n).holds;
      return found;
    });
    if (found) return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Matroid oracles from the full independence table (ground sets <= 10).

struct IndependenceTable {
  int n = 0;
  std::vector<char> ind;  // by bitmask

  explicit IndependenceTable(const Matroid& m) : n(m.ground_size()), ind(1u << m.ground_size()) {
    for (unsigned x = 0; x < ind.size(); ++x) {
      ElementSet s;
      for (int e = 0; e < n; ++e) {
        if ((x >> e) & 1) s.push_back(e);
      }
      ind[x] = m.is_independent(s);
    }
  }

  int rank(unsigned x) const {
    int best = 0;
    for (unsigned y = x;; y = (y - 1) & x) {
      if (ind[y]) best = std::max(best, __builtin_popcount(y));
      if (y == 0) break;
    }
    return best;
  }
};

// Fewest independent blocks covering the ground set, over all set partitions.
inline int brute_partition_min(const IndependenceTable& t) {
  if (t.n == 0) return 0;
  int best = t.n + 1;
  for (const auto& rgs : restricted_growth_strings(t.n, t.n)) {
    int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    if (blocks >= best) continue;
    std::vector<unsigned> mask(blocks, 0);
    for (int e = 0; e < t.n; ++e) mask[rgs[e]] |= 1u << e;
    bool ok = true;
    for (unsigned b : mask) ok = ok && t.ind[b];
    if (ok) best = blocks;
  }
  return best;
}

// max over nonempty X of ceil(|X| / r(X)); -1 when some X has rank 0.
inline int brute_density(const IndependenceTable& t) {
  int best = 0;
  for (unsigned x = 1; x < (1u << t.n); ++x) {
    int r = t.rank(x);
    if (r == 0) return -1;
    int size = __builtin_popcount(x);
    best = std::max(best, (size + r - 1) / r);
  }
  return best;
}

inline bool brute_k_disjoint_bases(const IndependenceTable& t, int k) {
  const unsigned full = (1u << t.n) - 1;
  const int r = t.rank(full);
  if (r == 0) return true;  // the empty basis repeats
  std::vector<unsigned> bases;
  for (unsigned x = 0; x <= full; ++x) {
    if (t.ind[x] && __builtin_popcount(x) == r) bases.push_back(x);
  }
  std::function<bool(int, unsigned, size_t)> rec = [&](int left, unsigned used, size_t from) {
    if (left == 0) return true;
    for (size_t i = from; i < bases.size(); ++i) {
      if ((bases[i] & used) == 0 && rec(left - 1, used | bases[i], i + 1)) return true;
    }
    return false;
  };
  return rec(k, 0, 0);
}

inline unsigned to_mask(const ElementSet& s) {
  unsigned x = 0;
  for (int e : s) x |= 1u << e;
  return x;
}

// Random and structured matroids with at most 8 elements: graphic, cographic,
// uniform, duals and explicit base lists.
inline std::vector<MatroidPtr> matroid_corpus(int random_count, std::uint64_t seed) {
  std::vector<MatroidPtr> out;
  for (int r = 0; r <= 5; ++r) {
    for (int n = std::max(r, 1); n <= 7; ++n) out.push_back(uniform(r, n));
  }
  out.push_back(parse_matroid(slurp(fixture_path("fig1.matroid"))));
  out.push_back(graphic(load("fig1.cg")));
  out.push_back(cographic(load("fig1.cg")));
  out.push_back(graphic(load("k4.cg")));
  out.push_back(cographic(load("k4.cg")));
  Rng rng(seed);
  while (static_cast<int>(out.size()) < random_count + 40) {
    RandomSpec s;
    s.n = 2 + rng.below(4);
    s.m = 1 + rng.below(8);
    s.loops = rng.coin();
    s.colors = 0;
    s.seed = seed * 131 + out.size();
    ColoredGraph g = random_colored_graph(s);
    switch (rng.below(4)) {
      case 0: out.push_back(graphic(g)); break;
      case 1:
        if (is_connected(g)) out.push_back(cographic(g));
        break;
      case 2: out.push_back(dual(graphic(g))); break;
      default: {
        // bases of a random graphic matroid relabelled at random
        std::vector<int> perm(g.edge_count());
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = g.edge_count() - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
        IndependenceTable t(*graphic(g));
        unsigned full = (1u << t.n) - 1;
        int r = t.rank(full);
        std::vector<ElementSet> bases;
        for (unsigned x = 0; x <= full; ++x) {
          if (!t.ind[x] || __builtin_popcount(x) != r) continue;
          ElementSet b;
          for (int e = 0; e < t.n; ++e) {
            if ((x >> e) & 1) b.push_back(perm[e]);
          }
          bases.push_back(b);
        }
        out.push_back(std::make_shared<ExplicitMatroid>(t.n, bases, "relabelled"));
      }
    }
  }
  return out;
}

inline std::vector<Notion> all_notions(bool directed, bool rooted, int max_k = 2, int max_l = 2) {
  std::vector<Notion> out;
  std::vector<Scope> scopes;
  if (!directed) scopes = {Scope::undirected};
  else if (rooted) scopes = {Scope::strong, Scope::rooted};
  else scopes = {Scope::strong};
  for (Part p : {Part::edge, Part::vertex, Part::internal_vertex}) {
    for (ConnMode mode : {ConnMode::edge, ConnMode::vertex}) {
      for (Scope s : scopes) {
        for (int k = 1; k <= max_k; ++k) {
          for (int l = 1; l <= max_l; ++l) out.push_back({p, mode, k, l, s});
        }
      }
    }
  }
  return out;
}

inline std::string label(const Notion& n) {
  return std::string(to_string(n.part)) + "/" + to_string(n.mode) + "/" + to_string(n.scope) + " k=" +
         std::to_string(n.k) + " l=" + std::to_string(n.l);
}

}  // namespace cavoid::testing
