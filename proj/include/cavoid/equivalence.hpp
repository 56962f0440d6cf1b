#pragma once

#include <string>
#include <vector>

#include "connectivity.hpp"
#include "verify.hpp"

namespace cavoid {

struct EquivalenceReport {
  bool in_scope = true;
  int checks = 0;
  std::vector<std::string> disagreements;

  bool ok() const { return disagreements.empty(); }
};

namespace detail {

// Components of the graph restricted to alive vertices/edges, by union-find.
inline int alive_components(const ColoredGraph& g, const std::vector<char>& vmask,
                            const std::vector<char>& emask) {
  int n = g.vertex_count();
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = 0;
  for (int i = 0; i < n; ++i) comps += vmask[i] != 0;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!emask[e]) continue;
    int a = g.index_of(g.edges[e].u), b = g.index_of(g.edges[e].v);
    if (!vmask[a] || !vmask[b]) continue;
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

inline bool common_color(const std::vector<const ColorSet*>& sets) {
  if (sets.empty()) return true;
  for (Color c : *sets.front()) {
    bool all = true;
    for (const auto* s : sets) {
      if (!std::binary_search(s->begin(), s->end(), c)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace detail

// Cross-checks verify against cut-based and spanning-tree formulations by
// exhaustive enumeration. Undirected graphs with at least two vertices only;
// smaller or directed instances are reported out of scope.
inline EquivalenceReport equivalence_suite(const ColoredGraph& g, int max_elements = 16) {
  EquivalenceReport rep;
  if (g.directed || g.vertex_count() < 2) {
    rep.in_scope = false;
    return rep;
  }
  const int n = g.vertex_count(), m = g.edge_count();
  if (n > max_elements || m > max_elements) throw GuardExceeded("equivalence suite instance too large");
  auto note = [&](bool a, bool b, const std::string& what) {
    ++rep.checks;
    if (a != b) rep.disagreements.push_back(what);
  };
  std::vector<char> all_v(n, 1), all_e(m, 1);

  // Edge colors: path-after-removal, monochromatic edge cuts, minimal ones,
  // surviving spanning tree.
  {
    bool ver = verify(g, {Part::edge, ConnMode::edge, 1, 1, Scope::undirected}).holds;
    ColorSet colors = g.used_colors(Target::edges);
    bool paths = detail::alive_components(g, all_v, all_e) == 1;
    bool tree = paths;
    for (Color c : colors) {
      std::vector<char> em(m);
      for (int e = 0; e < m; ++e) em[e] = !std::binary_search(g.edges[e].colors.begin(), g.edges[e].colors.end(), c);
      bool conn = detail::alive_components(g, all_v, em) == 1;
      paths = paths && conn;
      // spanning tree: greedy forest of size n-1 among surviving edges
      std::vector<int> parent(n);
      for (int i = 0; i < n; ++i) parent[i] = i;
      int size = 0;
      for (int e = 0; e < m; ++e) {
        if (!em[e]) continue;
        int a = g.index_of(g.edges[e].u), b = g.index_of(g.edges[e].v);
        while (parent[a] != a) a = parent[a];
        while (parent[b] != b) b = parent[b];
        if (a != b) {
          parent[a] = b;
          ++size;
        }
      }
      tree = tree && size == n - 1;
    }
    bool mono_cut = false, minimal_mono_cut = false;
    std::vector<char> is_cut(1u << m, 0);
    for (unsigned x = 0; x < (1u << m); ++x) {
      std::vector<char> em(m);
      for (int e = 0; e < m; ++e) em[e] = !((x >> e) & 1);
      is_cut[x] = detail::alive_components(g, all_v, em) > 1;
    }
    for (unsigned x = 0; x < (1u << m); ++x) {
      if (!is_cut[x]) continue;
      std::vector<const ColorSet*> sets;
      for (int e = 0; e < m; ++e) {
        if ((x >> e) & 1) sets.push_back(&g.edges[e].colors);
      }
      if (!detail::common_color(sets)) continue;
      mono_cut = true;
      bool minimal = true;
      for (unsigned y = (x - 1) & x; y != x; y = (y - 1) & x) {
        if (is_cut[y]) {
          minimal = false;
          break;
        }
        if (y == 0) break;
      }
      if (x == 0) minimal = true;
      minimal_mono_cut |= minimal;
    }
    note(ver, paths, "edge-1-1: verify vs paths after removal");
    note(ver, !mono_cut, "edge-1-1: verify vs monochromatic edge cut");
    note(ver, !minimal_mono_cut, "edge-1-1: verify vs minimal monochromatic edge cut");
    note(ver, tree, "edge-1-1: verify vs surviving spanning tree");

    // General (k, l): no edge cut E' u E'' with |E'| <= k-1 and E'' destroyed
    // by at most l colors; mixed-cut variant for vertex mode.
    for (int k = 1; k <= 2; ++k) {
      for (int l = 1; l <= 2; ++l) {
        for (ConnMode mode : {ConnMode::edge, ConnMode::vertex}) {
          bool v2 = verify(g, {Part::edge, mode, k, l, Scope::undirected}).holds;
          bool found = false;
          unsigned vlimit = mode == ConnMode::vertex ? (1u << n) : 1u;
          for (unsigned vs = 0; vs < vlimit && !found; ++vs) {
            std::vector<char> vm(n);
            int removed_v = 0;
            for (int i = 0; i < n; ++i) {
              vm[i] = !((vs >> i) & 1);
              removed_v += !vm[i];
            }
            if (removed_v > k - 1 || n - removed_v < 2) continue;
            for (unsigned x = 0; x < (1u << m) && !found; ++x) {
              std::vector<char> em(m);
              for (int e = 0; e < m; ++e) em[e] = !((x >> e) & 1);
              if (detail::alive_components(g, vm, em) <= 1) continue;
              for_each_subset(static_cast<int>(colors.size()), l, [&](const std::vector<int>& sub) {
                int extra = removed_v;
                for (int e = 0; e < m; ++e) {
                  if (!((x >> e) & 1)) continue;
                  bool hit = false;
                  for (int ci : sub) hit |= std::binary_search(g.edges[e].colors.begin(), g.edges[e].colors.end(), colors[ci]);
                  extra += !hit;
                }
                if (extra <= k - 1) found = true;
                return found;
              });
            }
          }
          note(v2, !found, "edge-" + std::to_string(l) + "-" + std::to_string(k) + "-" + to_string(mode) +
                               ": verify vs cut form");
        }
      }
    }
  }

  // Vertex colors: monochromatic vertex cuts (including the empty set).
  {
    bool ver = verify(g, {Part::internal_vertex, ConnMode::edge, 1, 1, Scope::undirected}).holds;
    bool ver_v = verify(g, {Part::internal_vertex, ConnMode::vertex, 1, 1, Scope::undirected}).holds;
    std::vector<char> is_cut(1u << n, 0);
    for (unsigned x = 0; x < (1u << n); ++x) {
      std::vector<char> vm(n);
      for (int i = 0; i < n; ++i) vm[i] = !((x >> i) & 1);
      is_cut[x] = detail::alive_components(g, vm, all_e) > 1;
    }
    bool mono = false, minimal_mono = false;
    for (unsigned x = 0; x < (1u << n); ++x) {
      if (!is_cut[x]) continue;
      std::vector<const ColorSet*> sets;
      for (int i = 0; i < n; ++i) {
        if ((x >> i) & 1) sets.push_back(&g.vertices[i].colors);
      }
      if (!detail::common_color(sets)) continue;
      mono = true;
      bool minimal = true;
      if (x != 0) {
        for (unsigned y = (x - 1) & x;; y = (y - 1) & x) {
          if (is_cut[y]) {
            minimal = false;
            break;
          }
          if (y == 0) break;
        }
      }
      minimal_mono |= minimal;
    }
    note(ver, !mono, "internal-1-1: verify vs monochromatic vertex cut");
    note(ver, !minimal_mono, "internal-1-1: verify vs minimal monochromatic vertex cut");
    note(ver, ver_v, "internal-1-1: edge mode vs vertex mode");

    // Per color: each color c of v is missing from some neighbor of v. With
    // one color per vertex this is the plain differently-colored neighbor.
    bool hypothesis = true;
    for (int i = 0; i < n && hypothesis; ++i) {
      for (Color c : g.vertices[i].colors) {
        bool found = false;
        for (const auto& e : g.edges) {
          int other = -1;
          if (e.u == g.vertices[i].id) other = e.v;
          else if (e.v == g.vertices[i].id) other = e.u;
          if (other < 0 || other == g.vertices[i].id) continue;
          const auto& oc = g.vertex(other).colors;
          if (!std::binary_search(oc.begin(), oc.end(), c)) found = true;
        }
        hypothesis = hypothesis && found;
      }
    }
    if (hypothesis) {
      bool vert = verify(g, {Part::vertex, ConnMode::edge, 1, 1, Scope::undirected}).holds;
      note(vert, ver, "differently colored neighbors: vertex vs internal");
    }
  }
  return rep;
}

}  // namespace cavoid
