#pragma once

#include <atomic>
#include <deque>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "connectivity.hpp"
#include "graph.hpp"
#include "subsets.hpp"

namespace cavoid {

using ElementSet = std::vector<int>;  // sorted element indices

// Independence oracle over the ground set 0..n-1.
class Matroid {
 public:
  virtual ~Matroid() = default;
  virtual int ground_size() const = 0;
  virtual std::string provenance() const = 0;

  bool is_independent(const ElementSet& x) const {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return independent(x);
  }

  long long oracle_calls() const { return calls_.load(std::memory_order_relaxed); }
  void reset_calls() const { calls_.store(0, std::memory_order_relaxed); }

 protected:
  virtual bool independent(const ElementSet& x) const = 0;

 private:
  mutable std::atomic<long long> calls_{0};
};

using MatroidPtr = std::shared_ptr<const Matroid>;

namespace detail {

inline bool acyclic(const ColoredGraph& g, const ElementSet& x) {
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int e : x) {
    int a = find(g.index_of(g.edges[e].u)), b = find(g.index_of(g.edges[e].v));
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

inline int components_without(const ColoredGraph& g, const ElementSet& removed) {
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  int comps = g.vertex_count();
  size_t j = 0;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (j < removed.size() && removed[j] == e) {
      ++j;
      continue;
    }
    int a = find(g.index_of(g.edges[e].u)), b = find(g.index_of(g.edges[e].v));
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

inline ElementSet complement(const ElementSet& x, int n) {
  ElementSet out;
  size_t j = 0;
  for (int e = 0; e < n; ++e) {
    if (j < x.size() && x[j] == e) {
      ++j;
      continue;
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace detail

// Edge sets without cycles; elements are edge positions of g.
class GraphicMatroid : public Matroid {
 public:
  explicit GraphicMatroid(ColoredGraph g) : g_(std::move(g)) {}
  int ground_size() const override { return g_.edge_count(); }
  std::string provenance() const override { return "graphic(" + g_.name + ")"; }
  const ColoredGraph& graph() const { return g_; }

 protected:
  bool independent(const ElementSet& x) const override { return detail::acyclic(g_, x); }

 private:
  ColoredGraph g_;
};

// Edge sets whose deletion keeps g connected.
class CographicMatroid : public Matroid {
 public:
  explicit CographicMatroid(ColoredGraph g) : g_(std::move(g)) {
    if (g_.directed) throw Error("cographic matroid needs an undirected graph");
    if (g_.vertex_count() > 0 && component_count(g_) != 1) throw Error("cographic matroid needs a connected graph");
  }
  int ground_size() const override { return g_.edge_count(); }
  std::string provenance() const override { return "cographic(" + g_.name + ")"; }

 protected:
  bool independent(const ElementSet& x) const override {
    return g_.vertex_count() == 0 || detail::components_without(g_, x) == 1;
  }

 private:
  ColoredGraph g_;
};

class UniformMatroid : public Matroid {
 public:
  UniformMatroid(int r, int n) : r_(r), n_(n) {
    if (r < 0 || n < 0 || r > n) throw Error("uniform matroid needs 0 <= r <= n");
  }
  int ground_size() const override { return n_; }
  std::string provenance() const override {
    return "uniform(" + std::to_string(r_) + "," + std::to_string(n_) + ")";
  }

 protected:
  bool independent(const ElementSet& x) const override { return static_cast<int>(x.size()) <= r_; }

 private:
  int r_, n_;
};

// Independent sets are the subsets of listed bases.
class ExplicitMatroid : public Matroid {
 public:
  ExplicitMatroid(int n, std::vector<ElementSet> bases, std::string name = "m")
      : n_(n), bases_(std::move(bases)), name_(std::move(name)) {
    for (auto& b : bases_) {
      std::sort(b.begin(), b.end());
      for (int e : b) {
        if (e < 0 || e >= n_) throw Error("basis element out of range");
      }
    }
    if (bases_.empty()) throw Error("explicit matroid needs at least one basis");
  }
  int ground_size() const override { return n_; }
  std::string provenance() const override { return "explicit(" + name_ + ")"; }
  const std::vector<ElementSet>& bases() const { return bases_; }

 protected:
  bool independent(const ElementSet& x) const override {
    for (const auto& b : bases_) {
      if (std::includes(b.begin(), b.end(), x.begin(), x.end())) return true;
    }
    return false;
  }

 private:
  int n_;
  std::vector<ElementSet> bases_;
  std::string name_;
};

inline int rank(const Matroid& m, const ElementSet& x) {
  ElementSet indep;
  for (int e : x) {
    indep.push_back(e);
    std::sort(indep.begin(), indep.end());
    if (!m.is_independent(indep)) indep.erase(std::find(indep.begin(), indep.end(), e));
  }
  return static_cast<int>(indep.size());
}

inline ElementSet ground_set(const Matroid& m) {
  ElementSet s(m.ground_size());
  std::iota(s.begin(), s.end(), 0);
  return s;
}

inline int full_rank(const Matroid& m) { return rank(m, ground_set(m)); }

// X independent iff S - X still spans.
class DualMatroid : public Matroid {
 public:
  explicit DualMatroid(MatroidPtr inner) : inner_(std::move(inner)), full_(full_rank(*inner_)) {}
  int ground_size() const override { return inner_->ground_size(); }
  std::string provenance() const override { return "dual(" + inner_->provenance() + ")"; }
  const MatroidPtr& inner() const { return inner_; }

 protected:
  bool independent(const ElementSet& x) const override {
    return rank(*inner_, detail::complement(x, ground_size())) == full_;
  }

 private:
  MatroidPtr inner_;
  int full_;
};

inline MatroidPtr graphic(const ColoredGraph& g) { return std::make_shared<GraphicMatroid>(g); }
inline MatroidPtr cographic(const ColoredGraph& g) { return std::make_shared<CographicMatroid>(g); }
inline MatroidPtr uniform(int r, int n) { return std::make_shared<UniformMatroid>(r, n); }
inline MatroidPtr dual(MatroidPtr m) { return std::make_shared<DualMatroid>(std::move(m)); }

// Explicit-basis file: `matroid <name>`, `elements n`, `basis e1 e2 ...`.
inline std::shared_ptr<ExplicitMatroid> parse_matroid(const std::string& text) {
  std::istringstream in(text);
  std::string raw, name = "m";
  int n = -1, line = 0;
  std::vector<ElementSet> bases;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto tok = detail::split_ws(raw);
    if (tok.empty()) continue;
    if (tok[0] == "matroid" && tok.size() == 2) {
      name = tok[1];
    } else if (tok[0] == "elements" && tok.size() == 2) {
      n = static_cast<int>(detail::parse_int(tok[1], line, "element count"));
    } else if (tok[0] == "basis") {
      ElementSet b;
      for (size_t i = 1; i < tok.size(); ++i) b.push_back(static_cast<int>(detail::parse_int(tok[i], line, "element")));
      bases.push_back(b);
    } else {
      throw ParseError(line, "unknown matroid line");
    }
  }
  if (n < 0) throw ParseError(line, "missing elements line");
  return std::make_shared<ExplicitMatroid>(n, bases, name);
}

// ---------------------------------------------------------------------------
// Axioms, cuts, courteous colorings.

struct AxiomReport {
  bool ok = true;
  std::string violation;
};

// Exhaustive check of (I1)-(I3); ground sets above 12 elements are refused.
inline AxiomReport axiom_check(const Matroid& m) {
  const int n = m.ground_size();
  if (n > 12) throw GuardExceeded("axiom_check is exhaustive; ground set too large");
  std::vector<char> ind(1u << n);
  auto to_set = [&](unsigned x) {
    ElementSet s;
    for (int e = 0; e < n; ++e) {
      if ((x >> e) & 1) s.push_back(e);
    }
    return s;
  };
  for (unsigned x = 0; x < (1u << n); ++x) ind[x] = m.is_independent(to_set(x));
  if (!ind[0]) return {false, "empty set dependent"};
  for (unsigned x = 0; x < (1u << n); ++x) {
    if (!ind[x]) continue;
    for (int e = 0; e < n; ++e) {
      if (((x >> e) & 1) && !ind[x & ~(1u << e)]) return {false, "not hereditary at " + std::to_string(x)};
    }
  }
  for (unsigned a = 0; a < (1u << n); ++a) {
    if (!ind[a]) continue;
    for (unsigned b = 0; b < (1u << n); ++b) {
      if (!ind[b] || __builtin_popcount(b) <= __builtin_popcount(a)) continue;
      bool ok = false;
      for (int e = 0; e < n && !ok; ++e) {
        if (((b >> e) & 1) && !((a >> e) & 1) && ind[a | (1u << e)]) ok = true;
      }
      if (!ok) return {false, "exchange fails for " + std::to_string(a) + "," + std::to_string(b)};
    }
  }
  return {};
}

// First set X (by size, then lexicographic) of at most l elements that is a
// cut: minimal with rank(S - X) < rank(S).
inline std::optional<ElementSet> find_cut_at_most(const Matroid& m, int l, long long max_subsets = 1'000'000) {
  if (l < 1) throw Error("l must be positive");
  const int n = m.ground_size();
  if (binomial_sum(n, l, max_subsets) > max_subsets) throw GuardExceeded("too many candidate cuts");
  const int r = full_rank(m);
  auto drops = [&](const ElementSet& x) { return rank(m, detail::complement(x, n)) < r; };
  std::optional<ElementSet> found;
  for_each_subset(n, l, [&](const std::vector<int>& x) {
    if (x.empty() || !drops(x)) return false;
    bool minimal = true;
    // no proper subset may drop the rank
    for_each_subset(static_cast<int>(x.size()), static_cast<int>(x.size()) - 1, [&](const std::vector<int>& sub) {
      ElementSet y;
      for (int i : sub) y.push_back(x[i]);
      if (drops(y)) minimal = false;
      return !minimal;
    });
    if (!minimal) return false;
    found = x;
    return true;
  });
  return found;
}

struct CourteousVerdict {
  bool holds = true;
  ColorSet failing_colors;
  ElementSet deleted;
};

// Rank preserved after deleting the elements touched by any <= l colors.
inline CourteousVerdict courteous_check(const Matroid& m, const std::vector<ColorSet>& coloring, int l,
                                        long long max_subsets = 1'000'000) {
  const int n = m.ground_size();
  if (static_cast<int>(coloring.size()) != n) throw Error("coloring size differs from ground set");
  std::set<Color> all;
  for (const auto& cs : coloring) all.insert(cs.begin(), cs.end());
  ColorSet colors(all.begin(), all.end());
  if (l >= 2 && binomial_sum(static_cast<int>(colors.size()), l, max_subsets) > max_subsets) {
    throw GuardExceeded("color subsets exceed cap");
  }
  const int r = full_rank(m);
  CourteousVerdict out;
  for_each_subset(static_cast<int>(colors.size()), l, [&](const std::vector<int>& sub) {
    ColorSet c;
    for (int i : sub) c.push_back(colors[i]);
    ElementSet keep, gone;
    for (int e = 0; e < n; ++e) (intersects(coloring[e], c) ? gone : keep).push_back(e);
    if (rank(m, keep) < r) {
      out = {false, c, gone};
      return true;
    }
    return false;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Matroid partition by shortest augmenting paths.

struct Partition {
  std::vector<ElementSet> blocks;
};

class PartitionEngine {
 public:
  explicit PartitionEngine(const Matroid& m) : m_(m), owner_(m.ground_size(), -1) {}

  void add_block() { blocks_.emplace_back(); }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<ElementSet>& blocks() const { return blocks_; }
  int owner(int e) const { return owner_[e]; }

  // Tries to place x into the current blocks along a shortest exchange path.
  bool insert(int x) {
    std::vector<int> prev(m_.ground_size(), -2);
    std::deque<int> queue{x};
    prev[x] = -1;
    while (!queue.empty()) {
      int y = queue.front();
      queue.pop_front();
      for (int b = 0; b < block_count(); ++b) {
        if (owner_[y] == b) continue;
        if (m_.is_independent(with(blocks_[b], y))) {
          augment(y, b, prev);
          return true;
        }
        for (int z : blocks_[b]) {
          if (prev[z] != -2) continue;
          if (m_.is_independent(swap(blocks_[b], z, y))) {
            prev[z] = y;
            queue.push_back(z);
          }
        }
      }
    }
    return false;
  }

  // Elements reachable in the exchange digraph from the given sources.
  std::vector<char> reachable(const std::vector<int>& sources) const {
    std::vector<char> seen(m_.ground_size(), 0);
    std::deque<int> queue;
    for (int s : sources) {
      seen[s] = 1;
      queue.push_back(s);
    }
    while (!queue.empty()) {
      int y = queue.front();
      queue.pop_front();
      for (int b = 0; b < block_count(); ++b) {
        if (owner_[y] == b) continue;
        for (int z : blocks_[b]) {
          if (!seen[z] && m_.is_independent(swap(blocks_[b], z, y))) {
            seen[z] = 1;
            queue.push_back(z);
          }
        }
      }
    }
    return seen;
  }

 private:
  static ElementSet with(const ElementSet& s, int y) {
    ElementSet out = s;
    out.insert(std::lower_bound(out.begin(), out.end(), y), y);
    return out;
  }
  static ElementSet swap(const ElementSet& s, int z, int y) {
    ElementSet out;
    out.reserve(s.size());
    for (int e : s) {
      if (e != z) out.push_back(e);
    }
    out.insert(std::lower_bound(out.begin(), out.end(), y), y);
    return out;
  }
  void move(int e, int b) {
    if (owner_[e] >= 0) {
      auto& old = blocks_[owner_[e]];
      old.erase(std::find(old.begin(), old.end(), e));
    }
    blocks_[b].insert(std::lower_bound(blocks_[b].begin(), blocks_[b].end(), e), e);
    owner_[e] = b;
  }
  // Path x -> ... -> y; y enters block `sink`, each predecessor takes the
  // block its successor leaves.
  void augment(int y, int sink, const std::vector<int>& prev) {
    std::vector<int> path;
    for (int e = y; e != -1; e = prev[e]) path.push_back(e);
    std::vector<int> target(path.size());
    target[0] = sink;
    for (size_t i = 1; i < path.size(); ++i) target[i] = owner_[path[i - 1]];
    for (size_t i = 0; i < path.size(); ++i) move(path[i], target[i]);
  }

  const Matroid& m_;
  std::vector<ElementSet> blocks_;
  std::vector<int> owner_;
};

// Minimum number of independent sets covering the ground set.
inline Partition partition_min(const Matroid& m) {
  const int n = m.ground_size();
  for (int e = 0; e < n; ++e) {
    if (!m.is_independent({e})) {
      throw Error("element " + std::to_string(e) + " is a loop; chromatic number undefined");
    }
  }
  PartitionEngine engine(m);
  for (int e = 0; e < n; ++e) {
    if (!engine.insert(e)) {
      engine.add_block();
      engine.insert(e);
    }
  }
  return {engine.blocks()};
}

struct PackingResult {
  bool ok = false;
  std::vector<ElementSet> bases;
  // On failure: A with |S - A| + k r(A) < k r(S). For graphic matroids
  // F = S - A violates the tree-packing inequality.
  ElementSet span_set;
  ElementSet violating;
  int components_without_violating = 0;
};

inline PackingResult pack_k_bases(const Matroid& m, int k) {
  if (k < 1) throw Error("k must be positive");
  const int n = m.ground_size();
  PartitionEngine engine(m);
  for (int i = 0; i < k; ++i) engine.add_block();
  std::vector<int> unplaced;
  for (int e = 0; e < n; ++e) {
    if (!engine.insert(e)) unplaced.push_back(e);
  }
  const int r = full_rank(m);
  PackingResult out;
  out.bases = engine.blocks();
  out.ok = true;
  for (const auto& b : out.bases) out.ok = out.ok && static_cast<int>(b.size()) == r;
  if (out.ok) return out;
  auto reach = engine.reachable(unplaced);
  for (int e = 0; e < n; ++e) (reach[e] ? out.span_set : out.violating).push_back(e);
  if (const auto* gm = dynamic_cast<const GraphicMatroid*>(&m)) {
    out.components_without_violating = detail::components_without(gm->graph(), out.violating);
  }
  return out;
}

}  // namespace cavoid
