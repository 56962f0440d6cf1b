#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coloring.hpp"
#include "connectivity.hpp"
#include "generate.hpp"
#include "orientation.hpp"
#include "verify.hpp"

namespace cavoid {

// ---------------------------------------------------------------------------
// Source problems.

// Positive NAE formula; variables and clauses are 0-based in memory and
// 1-based in files.
struct NaeFormula {
  int n = 0;
  std::vector<std::vector<int>> clauses;
  bool linear = false;  // distinct clauses share at most one variable
  bool exact4 = false;  // every variable occurs in exactly four clauses
  bool toy = true;      // outside the regime the hardness proof needs

  // Indices of the clauses containing variable i.
  std::vector<int> occurrences(int i) const {
    std::vector<int> out;
    for (int j = 0; j < static_cast<int>(clauses.size()); ++j) {
      if (std::find(clauses[j].begin(), clauses[j].end(), i) != clauses[j].end()) out.push_back(j);
    }
    return out;
  }
};

inline NaeFormula make_formula(int n, std::vector<std::vector<int>> clauses) {
  NaeFormula f;
  f.n = n;
  f.clauses = std::move(clauses);
  if (n < 1) throw Error("formula needs a variable");
  bool three = true;
  for (auto& c : f.clauses) {
    if (c.size() < 2) throw Error("clause needs at least two literals");
    for (int x : c) {
      if (x < 0 || x >= n) throw Error("variable out of range");
    }
    std::set<int> s(c.begin(), c.end());
    if (s.size() != c.size()) throw Error("repeated variable in a clause");
    three = three && c.size() == 3;
  }
  f.linear = true;
  for (size_t a = 0; a < f.clauses.size(); ++a) {
    for (size_t b = a + 1; b < f.clauses.size(); ++b) {
      int shared = 0;
      for (int x : f.clauses[a]) shared += std::count(f.clauses[b].begin(), f.clauses[b].end(), x);
      f.linear = f.linear && shared <= 1;
    }
  }
  f.exact4 = true;
  for (int i = 0; i < n; ++i) f.exact4 = f.exact4 && f.occurrences(i).size() == 4;
  f.toy = !(three && f.linear && f.exact4 && f.clauses.size() >= 11);
  return f;
}

inline NaeFormula parse_nae(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line = 0, n = -1;
  std::vector<std::vector<int>> clauses;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto tok = detail::split_ws(raw);
    if (tok.empty()) continue;
    if (tok[0] == "nae" && tok.size() == 2 && n < 0) {
      n = static_cast<int>(detail::parse_int(tok[1], line, "variable count"));
    } else if (tok[0] == "clause" && n >= 0) {
      std::vector<int> c;
      for (size_t i = 1; i < tok.size(); ++i) {
        long long x = detail::parse_int(tok[i], line, "literal");
        if (x <= 0) throw ParseError(line, "formula must be positive (literal " + tok[i] + ")");
        if (x > n) throw ParseError(line, "variable " + tok[i] + " out of range");
        c.push_back(static_cast<int>(x) - 1);
      }
      clauses.push_back(std::move(c));
    } else {
      throw ParseError(line, "expected `nae <n>` then `clause i j k` lines");
    }
  }
  if (n < 0) throw ParseError(line, "missing `nae <n>` header");
  if (clauses.empty()) throw ParseError(line, "formula has no clauses");
  return make_formula(n, std::move(clauses));
}

inline std::string write_nae(const NaeFormula& f) {
  std::ostringstream out;
  out << "nae " << f.n << "\n";
  for (const auto& c : f.clauses) {
    out << "clause";
    for (int x : c) out << " " << x + 1;
    out << "\n";
  }
  return out.str();
}

inline bool nae_satisfies(const NaeFormula& f, const std::vector<bool>& a) {
  for (const auto& c : f.clauses) {
    bool any_true = false, any_false = false;
    for (int x : c) (a[x] ? any_true : any_false) = true;
    if (!any_true || !any_false) return false;
  }
  return true;
}

// First NAE-satisfying assignment in binary order (x1 most significant,
// false before true).
inline std::optional<std::vector<bool>> brute_nae(const NaeFormula& f) {
  if (f.n > 24) throw GuardExceeded("too many variables for brute force");
  std::vector<bool> a(f.n);
  for (unsigned long x = 0; x < (1ul << f.n); ++x) {
    for (int i = 0; i < f.n; ++i) a[i] = (x >> (f.n - 1 - i)) & 1;
    if (nae_satisfies(f, a)) return a;
  }
  return std::nullopt;
}

// Random positive, linear, exact-4 3-uniform formula on n variables (4n must
// be divisible by 3), found by restarted random placement.
inline std::optional<NaeFormula> random_linear_exact4(int n, std::uint64_t seed, int attempts = 20000) {
  if ((4 * n) % 3 != 0) throw Error("4n must be divisible by 3");
  const int m = 4 * n / 3;
  Rng rng(seed);
  // Randomized backtracking over clause slots; `attempts` caps the number of
  // placements tried.
  std::vector<int> left(n, 4);
  std::vector<std::vector<char>> paired(n, std::vector<char>(n, 0));
  std::vector<std::vector<int>> clauses(m);
  long long steps = 0;
  std::function<bool(int)> place = [&](int slot) -> bool {
    if (slot == 3 * m) return true;
    auto& c = clauses[slot / 3];
    std::vector<int> cand;
    for (int i = 0; i < n; ++i) {
      if (left[i] == 0) continue;
      // A clause opens with the smallest variable still owed; this fixes the
      // clause order without losing any formula.
      if (c.empty() && !cand.empty()) break;
      if (!c.empty() && i <= c.back()) continue;  // clauses kept sorted
      bool fresh = true;
      for (int x : c) fresh = fresh && !paired[x][i];
      if (fresh) cand.push_back(i);
    }
    for (int i = static_cast<int>(cand.size()) - 1; i > 0; --i) std::swap(cand[i], cand[rng.below(i + 1)]);
    for (int i : cand) {
      if (++steps > attempts) return false;
      for (int x : c) paired[x][i] = paired[i][x] = 1;
      --left[i];
      c.push_back(i);
      if (place(slot + 1)) return true;
      c.pop_back();
      ++left[i];
      for (int x : c) paired[x][i] = paired[i][x] = 0;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  auto f = make_formula(n, clauses);
  if (!f.linear) return std::nullopt;
  return f;
}

// Loopless hypergraph; vertices 0-based in memory and 1-based in files.
struct Hypergraph {
  int n = 0;
  std::vector<std::vector<int>> edges;
};

inline Hypergraph make_hypergraph(int n, std::vector<std::vector<int>> edges) {
  for (auto& e : edges) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    if (e.size() < 2) throw Error("hyperedge with fewer than two vertices (loop)");
    for (int v : e) {
      if (v < 0 || v >= n) throw Error("hyperedge vertex out of range");
    }
  }
  return {n, std::move(edges)};
}

inline Hypergraph parse_hypergraph(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line = 0, n = -1;
  std::vector<std::vector<int>> edges;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto tok = detail::split_ws(raw);
    if (tok.empty()) continue;
    if (tok[0] == "hyp" && tok.size() == 2 && n < 0) {
      n = static_cast<int>(detail::parse_int(tok[1], line, "vertex count"));
    } else if (tok[0] == "edge" && n >= 0) {
      std::vector<int> e;
      for (size_t i = 1; i < tok.size(); ++i) {
        long long v = detail::parse_int(tok[i], line, "vertex");
        if (v < 1 || v > n) throw ParseError(line, "vertex " + tok[i] + " out of range");
        e.push_back(static_cast<int>(v) - 1);
      }
      std::set<int> s(e.begin(), e.end());
      if (s.size() < 2) throw ParseError(line, "hyperedge with fewer than two vertices (loop)");
      edges.push_back(std::move(e));
    } else {
      throw ParseError(line, "expected `hyp <n>` then `edge v1 v2 ...` lines");
    }
  }
  if (n < 0) throw ParseError(line, "missing `hyp <n>` header");
  return make_hypergraph(n, std::move(edges));
}

// First proper 2-coloring in binary order (vertex 1 most significant).
inline std::optional<std::vector<int>> brute_hyp2col(const Hypergraph& h) {
  if (h.n > 24) throw GuardExceeded("too many vertices for brute force");
  std::vector<int> col(h.n);
  for (unsigned long x = 0; x < (1ul << h.n); ++x) {
    for (int i = 0; i < h.n; ++i) col[i] = (x >> (h.n - 1 - i)) & 1;
    bool ok = true;
    for (const auto& e : h.edges) {
      bool mono = true;
      for (int v : e) mono = mono && col[v] == col[e.front()];
      ok = ok && !mono;
    }
    if (ok) return col;
  }
  return std::nullopt;
}

// Two edge-disjoint Hamiltonian cycles of a 4-regular multigraph, as edge id
// lists, or none.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> ham_decomposition(const ColoredGraph& g) {
  if (g.directed) throw Error("ham_decomposition expects an undirected graph");
  const int n = g.vertex_count(), m = g.edge_count();
  std::vector<int> deg(n, 0);
  for (const auto& e : g.edges) {
    if (e.is_loop()) throw Error("ham_decomposition expects a loopless graph");
    ++deg[g.index_of(e.u)];
    ++deg[g.index_of(e.v)];
  }
  for (int d : deg) {
    if (d != 4) throw Error("graph is not 4-regular");
  }
  if (n < 2) return std::nullopt;
  std::vector<std::vector<int>> inc(n);
  for (int e = 0; e < m; ++e) {
    inc[g.index_of(g.edges[e].u)].push_back(e);
    inc[g.index_of(g.edges[e].v)].push_back(e);
  }
  auto other = [&](int e, int x) {
    int a = g.index_of(g.edges[e].u);
    return a == x ? g.index_of(g.edges[e].v) : a;
  };
  auto is_ham = [&](const std::vector<char>& in) {
    std::vector<int> d(n, 0), parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    int comps = n;
    for (int e = 0; e < m; ++e) {
      if (!in[e]) continue;
      int a = g.index_of(g.edges[e].u), b = g.index_of(g.edges[e].v);
      ++d[a];
      ++d[b];
      a = find(a);
      b = find(b);
      if (a != b) {
        parent[a] = b;
        --comps;
      }
    }
    for (int x : d) {
      if (x != 2) return false;
    }
    return comps == 1;
  };
  std::vector<char> used(m, 0), visited(n, 0);
  std::optional<std::pair<std::vector<int>, std::vector<int>>> found;
  // Cycles through vertex 0; each is generated twice (both directions).
  std::function<void(int, int)> extend = [&](int x, int length) {
    if (found) return;
    for (int e : inc[x]) {
      if (used[e]) continue;
      int y = other(e, x);
      if (y == 0 && length == n - 1) {
        used[e] = 1;
        std::vector<char> rest(m);
        for (int f = 0; f < m; ++f) rest[f] = !used[f];
        if (is_ham(rest)) {
          std::vector<int> a, b;
          for (int f = 0; f < m; ++f) (used[f] ? a : b).push_back(g.edges[f].id);
          found.emplace(a, b);
        }
        used[e] = 0;
        if (found) return;
        continue;
      }
      if (visited[y]) continue;
      used[e] = 1;
      visited[y] = 1;
      extend(y, length + 1);
      visited[y] = 0;
      used[e] = 0;
      if (found) return;
    }
  };
  visited[0] = 1;
  extend(0, 0);
  return found;
}

// Two arc-disjoint strongly connected spanning subdigraphs, by brute force.
inline bool brute_two_strong_subdigraphs(const ColoredGraph& d) {
  const int m = d.edge_count();
  if (m > 22) throw GuardExceeded("too many arcs for brute force");
  auto strong = [&](unsigned mask) {
    ColoredGraph h = d;
    h.edges.clear();
    for (int e = 0; e < m; ++e) {
      if ((mask >> e) & 1) h.edges.push_back(d.edges[e]);
    }
    return is_connected(h);
  };
  for (unsigned x = 0; x < (1u << m); ++x) {
    if ((x & 1u) && strong(x) && strong(~x & ((1u << m) - 1))) return true;
  }
  return d.vertex_count() <= 1;
}

// Two edge-disjoint spanning trees each of weight at most omega, by brute
// force over edge 2-colorings.
inline bool brute_two_light_trees(const ColoredGraph& g, const Weight& omega) {
  const int n = g.vertex_count(), m = g.edge_count();
  if (m > 20) throw GuardExceeded("too many edges for brute force");
  auto light_tree = [&](unsigned mask) {
    std::vector<char> alive(m);
    for (int e = 0; e < m; ++e) alive[e] = (mask >> e) & 1;
    auto w = detail::mst_weight(g, alive);
    return w && *w <= omega;
  };
  if (n <= 1) return true;
  for (unsigned x = 0; x < (1u << m); ++x) {
    if (light_tree(x) && light_tree(~x & ((1u << m) - 1))) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Gadgets.

struct Gadget {
  ColoredGraph graph;
  std::vector<std::string> names;  // by vertex position
  // Edges whose direction encodes the source instance (u_i v_i, u'_e v'_e).
  std::vector<int> encoding_edges;
  // Parallel pairs oriented in opposite directions by the forward map.
  std::vector<std::pair<int, int>> pairs;
  bool toy = false;

  int vertex_named(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return graph.vertices[i].id;
    }
    throw Error("no gadget vertex named " + name);
  }
};

namespace detail {

class GadgetBuilder {
 public:
  explicit GadgetBuilder(bool directed, std::string name) {
    gad.graph.directed = directed;
    gad.graph.name = std::move(name);
  }
  int vertex(const std::string& name, ColorSet colors = {}) {
    gad.names.push_back(name);
    return gad.graph.add_vertex(std::move(colors));
  }
  int edge(int u, int v, ColorSet colors = {}) { return gad.graph.add_edge(u, v, std::move(colors)); }
  void pair(int u, int v, const ColorSet& colors) {
    int a = edge(u, v, colors);
    int b = edge(u, v, colors);
    gad.pairs.emplace_back(a, b);
  }
  // A pair whose color list is rewritten to single colors: a path of pairs,
  // one per listed color; an empty list takes `empty_color`.
  void expanded_pair(int u, int v, const ColorSet& colors, Color empty_color, const std::string& tag) {
    if (colors.size() <= 1) {
      pair(u, v, colors.empty() ? ColorSet{empty_color} : colors);
      return;
    }
    int prev = u;
    for (size_t i = 0; i < colors.size(); ++i) {
      int next = i + 1 == colors.size() ? v : vertex(tag + "~" + std::to_string(i + 1));
      pair(prev, next, {colors[i]});
      prev = next;
    }
  }
  Gadget gad;
};

inline std::string idx(const char* base, int i) { return std::string(base) + std::to_string(i + 1); }

}  // namespace detail

inline Gadget build_hypergraph_gadget(const Hypergraph& h, bool rooted) {
  detail::GadgetBuilder b(rooted, rooted ? "hyp-rooted" : "hyp");
  const int n = h.n, m = static_cast<int>(h.edges.size());
  for (int v = 0; v < n; ++v) b.vertex(detail::idx("v", v));
  for (int e = 0; e < m; ++e) b.vertex(detail::idx("w", e));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      b.edge(u, v);
      if (rooted) b.edge(v, u);
    }
  }
  for (int e = 0; e < m; ++e) {
    for (int v : h.edges[e]) {
      b.edge(v, n + e);
      if (rooted) b.edge(n + e, v);
    }
  }
  if (rooted) {
    int r = b.vertex("r");
    for (int v = 0; v < n; ++v) b.edge(r, v);
    b.gad.graph.root = r;
  }
  return b.gad;
}

// Hypergraph 2-coloring pushed to the gadget: hypergraph vertices keep their
// color, every other vertex takes color 0.
inline std::vector<Color> hyp_coloring_to_gadget(const Hypergraph& h, const Gadget& gad,
                                                 const std::vector<int>& col) {
  std::vector<Color> a(gad.graph.vertex_count(), 0);
  for (int v = 0; v < h.n; ++v) a[v] = col[v];
  return a;
}

enum class NaeScope { strong, rooted };

inline Gadget build_nae_gadget(const NaeFormula& f, NaeScope scope, bool expand = false) {
  if (f.clauses.empty()) throw Error("formula has no clauses");
  const int n = f.n, m = static_cast<int>(f.clauses.size());
  detail::GadgetBuilder b(false, scope == NaeScope::strong ? "nae-strong" : "nae-rooted");
  b.gad.toy = f.toy;
  // Clause j has color j+1; A_i lists the colors of the clauses holding x_i.
  std::vector<ColorSet> A(n);
  for (int i = 0; i < n; ++i) {
    for (int j : f.occurrences(i)) A[i].push_back(j + 1);
  }
  auto without = [](ColorSet c, Color j) {
    c.erase(std::remove(c.begin(), c.end(), j), c.end());
    return c;
  };
  auto shift = [&](ColorSet c) {
    for (auto& x : c) x += m;
    return c;
  };

  if (scope == NaeScope::strong) {
    const Color fresh = m + 1;
    int s = b.vertex("s");
    int s1 = b.vertex("s'");
    std::vector<int> u(n), v(n), w(m);
    for (int i = 0; i < n; ++i) {
      u[i] = b.vertex(detail::idx("u", i));
      v[i] = b.vertex(detail::idx("v", i));
    }
    for (int j = 0; j < m; ++j) w[j] = b.vertex(detail::idx("w", j));
    const int original = b.gad.graph.vertex_count();
    for (int i = 0; i < n; ++i) {
      b.gad.encoding_edges.push_back(b.edge(u[i], v[i], expand ? ColorSet{fresh} : ColorSet{}));
    }
    for (int i = 0; i < n; ++i) {
      if (expand) b.expanded_pair(v[i], s1, {}, fresh, "");
      else b.pair(v[i], s1, {});
    }
    for (int j = 0; j < m; ++j) b.pair(s, w[j], {j + 1});
    for (int j = 0; j < m; ++j) {
      for (int i : f.clauses[j]) {
        ColorSet c = without(A[i], j + 1);
        std::string tag = "w" + std::to_string(j + 1) + "u" + std::to_string(i + 1);
        if (expand) b.expanded_pair(w[j], u[i], c, fresh, tag);
        else b.pair(w[j], u[i], c);
      }
    }
    if (expand) {
      int hub = b.vertex("s''");
      b.pair(hub, s, {fresh});
      for (int x = 0; x < original; ++x) {
        ColorSet all;
        for (int c = 1; c <= m; ++c) all.push_back(c);
        b.expanded_pair(hub, x, all, fresh, "s''" + b.gad.names[x]);
      }
    }
    return b.gad;
  }

  const Color fresh = 2 * m + 1;
  int r = b.vertex("r");
  std::vector<int> u(n), v(n), w(m), w2(m);
  for (int i = 0; i < n; ++i) {
    u[i] = b.vertex(detail::idx("u", i));
    v[i] = b.vertex(detail::idx("v", i));
  }
  for (int j = 0; j < m; ++j) w[j] = b.vertex(detail::idx("w", j));
  for (int j = 0; j < m; ++j) w2[j] = b.vertex(detail::idx("w", j) + "'");
  b.gad.graph.root = r;
  for (int j = 0; j < m; ++j) b.edge(r, w[j], {j + 1});
  for (int j = 0; j < m; ++j) b.edge(r, w2[j], {j + 1 + m});
  for (int i = 0; i < n; ++i) {
    b.gad.encoding_edges.push_back(b.edge(u[i], v[i], expand ? ColorSet{fresh} : ColorSet{}));
  }
  for (int j = 0; j < m; ++j) {
    for (int i : f.clauses[j]) {
      ColorSet c = without(A[i], j + 1);
      std::string tag = std::to_string(j + 1) + "-" + std::to_string(i + 1);
      if (expand) {
        b.expanded_pair(w[j], u[i], c, fresh, "w" + tag);
        b.expanded_pair(w2[j], v[i], shift(c), fresh, "w'" + tag);
      } else {
        b.pair(w[j], u[i], c);
        b.pair(w2[j], v[i], shift(c));
      }
    }
  }
  return b.gad;
}

// Forward map: encoding edges follow the assignment (true = stored order),
// parallel pairs go forward and backward, everything else forward.
inline Orientation assignment_to_orientation(const Gadget& gad, const std::vector<bool>& assignment) {
  if (assignment.size() != gad.encoding_edges.size()) throw Error("assignment size mismatch");
  Orientation o;
  o.forward.assign(gad.graph.edge_count(), true);
  for (size_t i = 0; i < assignment.size(); ++i) o.forward[gad.graph.edge_index(gad.encoding_edges[i])] = assignment[i];
  for (auto [a, b] : gad.pairs) o.forward[gad.graph.edge_index(b)] = !o.forward[gad.graph.edge_index(a)];
  return o;
}

inline std::vector<bool> orientation_to_assignment(const Gadget& gad, const Orientation& o) {
  std::vector<bool> a;
  for (int id : gad.encoding_edges) a.push_back(o.forward[gad.graph.edge_index(id)]);
  return a;
}

enum class E2VVariant { strong, rooted, rooted_internal };

// Vertex-colored gadget of an edge-colored graph whose edges carry exactly
// one color each. Vertex ids: u'_e = 2e, v'_e = 2e+1, then V'' and V'''.
inline Gadget build_edge_to_vertex_gadget(const ColoredGraph& g, E2VVariant variant = E2VVariant::strong) {
  if (g.directed) throw Error("edge-to-vertex gadget expects an undirected graph");
  if (g.vertex_count() < 2) throw Error("edge-to-vertex gadget needs at least two vertices");
  if (variant != E2VVariant::strong && !g.root) throw Error("rooted gadget needs a root");
  Color m = 0;
  for (const auto& e : g.edges) {
    if (e.colors.size() != 1) throw Error("every edge needs exactly one color");
    m = std::max(m, e.colors.front());
  }
  const int ne = g.edge_count(), nv = g.vertex_count();
  const int r = g.root ? g.index_of(*g.root) : -1;
  detail::GadgetBuilder b(false, "e2v");
  for (int e = 0; e < ne; ++e) {
    b.vertex("u'" + std::to_string(g.edges[e].id), g.edges[e].colors);
    b.vertex("v'" + std::to_string(g.edges[e].id), g.edges[e].colors);
  }
  std::vector<int> dbl(nv), tri(nv, -1);
  for (int x = 0; x < nv; ++x) {
    Color c = m + 1;
    if (variant == E2VVariant::rooted_internal && x == r) c = m + 3;
    dbl[x] = b.vertex(std::to_string(g.vertices[x].id) + "''", {c});
  }
  for (int x = 0; x < nv; ++x) {
    if (variant != E2VVariant::strong && x == r) continue;
    tri[x] = b.vertex(std::to_string(g.vertices[x].id) + "'''", {m + 2});
  }
  for (int e = 0; e < ne; ++e) {
    int a = g.index_of(g.edges[e].u), c = g.index_of(g.edges[e].v);
    int ue = 2 * e, ve = 2 * e + 1;
    b.gad.encoding_edges.push_back(b.edge(ue, ve));
    b.pair(ue, dbl[a], {});
    if (tri[a] >= 0) b.pair(ue, tri[a], {});
    b.pair(ve, dbl[c], {});
    if (tri[c] >= 0) b.pair(ve, tri[c], {});
  }
  if (variant != E2VVariant::strong) b.gad.graph.root = dbl[r];
  return b.gad;
}

// Orientation of g carried over to the gadget.
inline Orientation e2v_orientation(const Gadget& gad, const Orientation& source) {
  return assignment_to_orientation(gad, source.forward);
}

// Graph with each edge doubled, plus (optionally) a new vertex joined to the
// listed vertices; used by the internal-vertex orientation reductions.
inline ColoredGraph doubled(const ColoredGraph& g) {
  ColoredGraph out = g;
  out.edges.clear();
  for (const auto& e : g.edges) {
    out.add_edge(e.u, e.v, e.colors);
    out.add_edge(e.u, e.v, e.colors);
  }
  return out;
}

inline Gadget build_hypergraph_orientation_gadget(const Hypergraph& h) {
  Gadget gad = build_hypergraph_gadget(h, false);
  gad.graph = doubled(gad.graph);
  gad.graph.name = "hyp-orient";
  for (int e = 0; e + 1 < gad.graph.edge_count(); e += 2) gad.pairs.emplace_back(e, e + 1);
  int r = gad.graph.add_vertex();
  gad.names.push_back("r");
  for (int v = 0; v < h.n; ++v) gad.graph.add_edge(r, v);
  gad.graph.root = r;
  return gad;
}

// ---------------------------------------------------------------------------
// Bounded equivalence checks.

struct ReductionReport {
  std::string family;
  std::string regime;
  long long instances = 0;
  long long agreements = 0;
  std::optional<std::string> counterexample;

  bool ok() const { return !counterexample && agreements == instances; }
};

struct ReductionBounds {
  int max_vertices = 4;
  int max_edges = 3;
  int colors = 2;
  long long budget = 2'000'000;
};

namespace detail {

// Every hypergraph on n vertices with at most max_edges distinct hyperedges.
inline void for_each_hypergraph(int n, int max_edges, const std::function<void(const Hypergraph&)>& f) {
  std::vector<std::vector<int>> pool;
  for (unsigned x = 0; x < (1u << n); ++x) {
    if (__builtin_popcount(x) < 2) continue;
    std::vector<int> e;
    for (int v = 0; v < n; ++v) {
      if ((x >> v) & 1) e.push_back(v);
    }
    pool.push_back(e);
  }
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int from) {
    Hypergraph h{n, {}};
    for (int i : pick) h.edges.push_back(pool[i]);
    f(h);
    if (static_cast<int>(pick.size()) == max_edges) return;
    for (int i = from; i < static_cast<int>(pool.size()); ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

inline std::string describe(const Hypergraph& h) {
  std::string s = "hyp n=" + std::to_string(h.n);
  for (const auto& e : h.edges) {
    s += " {";
    for (size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i] + 1);
    s += "}";
  }
  return s;
}

inline std::string describe(const NaeFormula& f) {
  std::string s;
  for (const auto& c : f.clauses) {
    s += "(";
    for (size_t i = 0; i < c.size(); ++i) s += (i ? " v " : "") + std::string("x") + std::to_string(c[i] + 1);
    s += ")";
  }
  return s;
}

// Edge-colored graphs with 2..max_vertices vertices and 1..max_edges edges,
// loopless, singleton colors from 1..colors, one per isomorphism class.
inline std::vector<ColoredGraph> small_edge_colored_graphs(int max_vertices, int max_edges, int colors,
                                                           bool rooted) {
  std::vector<ColoredGraph> out;
  std::set<std::vector<int>> seen;
  for (int n = 2; n <= max_vertices; ++n) {
    for (int m = 1; m <= max_edges; ++m) {
      for (const auto& base : enumerate_multigraphs(n, m, false)) {
        long long combos = 1;
        for (int i = 0; i < m; ++i) combos *= colors;
        for (long long x = 0; x < combos; ++x) {
          ColoredGraph g = base;
          long long y = x;
          for (int e = 0; e < m; ++e) {
            g.edges[e].colors = {static_cast<Color>(1 + y % colors)};
            y /= colors;
          }
          std::vector<ColoredGraph> variants;
          if (rooted) {
            for (int r = 0; r < n; ++r) {
              g.root = r;
              variants.push_back(g);
            }
          } else {
            variants.push_back(g);
          }
          for (auto& h : variants) {
            if (seen.insert(canonical_key(h)).second) out.push_back(std::move(h));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace detail

// Hypergraph 2-colorability against 2-colorings of the gadget that are
// internally vertex-1-color-avoiding 1-connected (rooted variant: r-rooted).
inline ReductionReport check_hypergraph_reduction(bool rooted, const ReductionBounds& b = {}) {
  ReductionReport rep{rooted ? "hyp-rooted" : "hyp", "exhaustive-both-sides", 0, 0, std::nullopt};
  Notion notion{Part::internal_vertex, ConnMode::edge, 1, 1, rooted ? Scope::rooted : Scope::undirected};
  for (int n = 1; n <= b.max_vertices && !rep.counterexample; ++n) {
    detail::for_each_hypergraph(n, b.max_edges, [&](const Hypergraph& h) {
      if (rep.counterexample) return;
      ++rep.instances;
      auto src = brute_hyp2col(h);
      Gadget gad = build_hypergraph_gadget(h, rooted);
      ExactOptions eo;
      eo.budget = b.budget;
      eo.use_gate = false;
      auto tgt = exact_feasible(gad.graph, notion, 2, eo);
      if (tgt.status == OptStatus::budget_exhausted) throw GuardExceeded("gadget search exceeded budget");
      bool target = tgt.status == OptStatus::optimal;
      bool forward = true;
      if (src) {
        forward = verify(apply_coloring(gad.graph, Target::vertices, hyp_coloring_to_gadget(h, gad, *src)), notion).holds;
      }
      if (src.has_value() == target && forward) {
        ++rep.agreements;
      } else {
        rep.counterexample = detail::describe(h) + (forward ? "" : " (forward map fails)");
      }
    });
  }
  return rep;
}

// Arc-1-CA orientations of g against vertex-1-CA orientations of the gadget
// (internal-vertex for the third variant).
inline ReductionReport check_e2v_reduction(E2VVariant variant, const ReductionBounds& b = {}) {
  static const char* names[] = {"e2v", "e2v-rooted", "e2v-rooted-internal"};
  ReductionReport rep{names[static_cast<int>(variant)], "exhaustive-both-sides", 0, 0, std::nullopt};
  const bool rooted = variant != E2VVariant::strong;
  const Scope scope = rooted ? Scope::rooted : Scope::strong;
  Notion src_notion{Part::edge, ConnMode::edge, 1, 1, scope};
  Notion tgt_notion{variant == E2VVariant::rooted_internal ? Part::internal_vertex : Part::vertex, ConnMode::edge,
                    1, 1, scope};
  for (const auto& g : detail::small_edge_colored_graphs(b.max_vertices, b.max_edges, b.colors, rooted)) {
    ++rep.instances;
    OrientSearchOptions so;
    so.budget = b.budget;
    auto src = find_ca_orientation_exact(g, src_notion, so);
    Gadget gad = build_edge_to_vertex_gadget(g, variant);
    auto tgt = find_ca_orientation_exact(gad.graph, tgt_notion, so);
    if (src.status == SearchStatus::budget_exhausted || tgt.status == SearchStatus::budget_exhausted) {
      throw GuardExceeded("orientation search exceeded budget");
    }
    bool forward = true, backward = true;
    if (src.orientation) {
      forward = verify(apply_orientation(gad.graph, e2v_orientation(gad, *src.orientation), gad.graph.root),
                       tgt_notion).holds;
    }
    if (tgt.orientation) {
      Orientation back{orientation_to_assignment(gad, *tgt.orientation)};
      backward = verify(apply_orientation(g, back, g.root), src_notion).holds;
    }
    if ((src.status == SearchStatus::found) == (tgt.status == SearchStatus::found) && forward && backward) {
      ++rep.agreements;
    } else {
      rep.counterexample = serialize(g);
      break;
    }
  }
  return rep;
}

// NAE gadgets: forward map on every satisfiable formula in the family and
// backward pull-back of any gadget orientation found by search.
inline ReductionReport check_nae_reduction(NaeScope scope, const std::vector<NaeFormula>& family,
                                           bool expand = false, long long budget = 2'000'000) {
  ReductionReport rep{scope == NaeScope::strong ? "nae-strong" : "nae-rooted", "", 0, 0, std::nullopt};
  bool all_faithful = true;
  Notion notion{Part::edge, ConnMode::edge, 1, 1, scope == NaeScope::strong ? Scope::strong : Scope::rooted};
  bool searched = false;
  int unsearched = 0;  // backward searches cut off by the budget
  for (const auto& f : family) {
    ++rep.instances;
    all_faithful = all_faithful && !f.toy;
    Gadget gad = build_nae_gadget(f, scope, expand);
    auto sat = brute_nae(f);
    bool ok = true;
    std::string why;
    if (sat) {
      Orientation o = assignment_to_orientation(gad, *sat);
      ok = verify(apply_orientation(gad.graph, o, gad.graph.root), notion).holds;
      if (!ok) why = " (forward map fails)";
    }
    if (ok && f.toy && gad.graph.edge_count() <= 40) {
      searched = true;
      OrientSearchOptions so;
      so.budget = budget;
      auto tgt = find_ca_orientation_exact(gad.graph, notion, so);
      if (tgt.status == SearchStatus::found) {
        auto a = orientation_to_assignment(gad, *tgt.orientation);
        if (!nae_satisfies(f, a)) {
          ok = false;
          why = " (orientation pulls back to a non-NAE assignment)";
        }
      } else if (tgt.status == SearchStatus::none && sat) {
        ok = false;
        why = " (no orientation although satisfiable)";
      } else if (tgt.status == SearchStatus::budget_exhausted) {
        ++unsearched;
      }
    }
    if (ok) {
      ++rep.agreements;
    } else {
      rep.counterexample = detail::describe(f) + why;
      break;
    }
  }
  rep.regime = all_faithful ? "forward-only (faithful instances)" : searched ? "forward + toy backward" : "forward-only";
  if (expand) rep.regime += ", expanded to single colors";
  if (unsearched > 0) rep.regime += ", backward search over budget on " + std::to_string(unsearched);
  return rep;
}

// 4-regular graphs: Hamiltonian decomposition against edge-1-CA 2-connected
// 2-colorings, in both connectivity modes.
inline ReductionReport check_kotzig_reduction(const std::vector<ColoredGraph>& graphs, long long budget = 2'000'000) {
  ReductionReport rep{"kotzig", "exhaustive-both-sides", 0, 0, std::nullopt};
  for (const auto& g : graphs) {
    ++rep.instances;
    bool src = ham_decomposition(g).has_value();
    bool agree = true;
    for (ConnMode mode : {ConnMode::edge, ConnMode::vertex}) {
      ExactOptions eo;
      eo.budget = budget;
      eo.use_gate = false;
      auto r = exact_feasible(g, {Part::edge, mode, 2, 1, Scope::undirected}, 2, eo);
      if (r.status == OptStatus::budget_exhausted) throw GuardExceeded("search exceeded budget");
      agree = agree && src == (r.status == OptStatus::optimal);
    }
    if (agree) {
      ++rep.agreements;
    } else {
      rep.counterexample = serialize(g);
      break;
    }
  }
  return rep;
}

inline ReductionReport check_weighted_reduction(const std::vector<std::pair<ColoredGraph, Weight>>& instances,
                                                long long budget = 2'000'000) {
  ReductionReport rep{"weighted", "exhaustive-both-sides", 0, 0, std::nullopt};
  for (const auto& [g, omega] : instances) {
    ++rep.instances;
    bool src = brute_two_light_trees(g, omega);
    ExactOptions eo;
    eo.budget = budget;
    auto r = weighted_ca_coloring_exact(g, omega, 2, 1, eo);
    if (r.status == OptStatus::budget_exhausted) throw GuardExceeded("search exceeded budget");
    if (src == (r.status == OptStatus::optimal)) {
      ++rep.agreements;
    } else {
      rep.counterexample = serialize(g) + "omega " + format_weight(omega);
      break;
    }
  }
  return rep;
}

inline ReductionReport check_yeo_reduction(const std::vector<ColoredGraph>& digraphs, long long budget = 2'000'000) {
  ReductionReport rep{"yeo", "exhaustive-both-sides", 0, 0, std::nullopt};
  for (const auto& d : digraphs) {
    ++rep.instances;
    bool src = brute_two_strong_subdigraphs(d);
    ExactOptions eo;
    eo.budget = budget;
    eo.use_gate = false;
    auto r = exact_feasible(d, {Part::edge, ConnMode::edge, 1, 1, Scope::strong}, 2, eo);
    if (r.status == OptStatus::budget_exhausted) throw GuardExceeded("search exceeded budget");
    if (src == (r.status == OptStatus::optimal)) {
      ++rep.agreements;
    } else {
      rep.counterexample = serialize(d);
      break;
    }
  }
  return rep;
}

}  // namespace cavoid
