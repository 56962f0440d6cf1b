#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace cavoid {

using Color = int;
using ColorSet = std::vector<Color>;  // sorted, duplicate-free
using Weight = boost::rational<long long>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Raised when an exhaustive loop would exceed its configured cap.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

struct Vertex {
  int id = 0;
  ColorSet colors;
};

struct Edge {
  int id = 0;
  int u = 0;
  int v = 0;
  ColorSet colors;
  std::optional<Weight> weight;

  bool is_loop() const { return u == v; }
};

enum class Target { edges, vertices };

// Undirected or directed multigraph with color sets on vertices and edges.
// Vertex ids are arbitrary small nonnegative integers; edge ids are
// positions in declaration order and survive color removal.
class ColoredGraph {
 public:
  std::string name = "g";
  bool directed = false;
  std::optional<int> root;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  // Position of the vertex with the given id, or -1.
  int index_of(int vertex_id) const {
    auto it = index_.find(vertex_id);
    return it == index_.end() ? -1 : it->second;
  }
  bool has_vertex(int vertex_id) const { return index_of(vertex_id) >= 0; }

  int edge_index(int edge_id) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), edge_id,
                               [](const Edge& e, int id) { return e.id < id; });
    return it != edges.end() && it->id == edge_id ? static_cast<int>(it - edges.begin()) : -1;
  }

  int add_vertex(int id, ColorSet colors = {}) {
    if (has_vertex(id)) throw Error("duplicate vertex " + std::to_string(id));
    normalize(colors);
    index_[id] = vertex_count();
    vertices.push_back({id, std::move(colors)});
    return id;
  }

  int add_vertex(ColorSet colors = {}) {
    int id = vertices.empty() ? 0 : max_vertex_id() + 1;
    return add_vertex(id, std::move(colors));
  }

  int add_edge(int u, int v, ColorSet colors = {}, std::optional<Weight> weight = std::nullopt) {
    if (!has_vertex(u) || !has_vertex(v)) {
      throw Error("edge endpoint not declared: " + std::to_string(u) + " " + std::to_string(v));
    }
    normalize(colors);
    int id = edges.empty() ? 0 : edges.back().id + 1;
    edges.push_back({id, u, v, std::move(colors), weight});
    return id;
  }

  int max_vertex_id() const {
    int m = -1;
    for (const auto& v : vertices) m = std::max(m, v.id);
    return m;
  }

  bool weighted() const { return !edges.empty() && edges.front().weight.has_value(); }

  // Union of all color sets of the requested element kind, sorted.
  ColorSet used_colors(Target target) const {
    std::set<Color> s;
    if (target == Target::edges) {
      for (const auto& e : edges) s.insert(e.colors.begin(), e.colors.end());
    } else {
      for (const auto& v : vertices) s.insert(v.colors.begin(), v.colors.end());
    }
    return {s.begin(), s.end()};
  }

  ColorSet color_universe() const {
    ColorSet a = used_colors(Target::edges), b = used_colors(Target::vertices);
    ColorSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  const Vertex& vertex(int vertex_id) const { return vertices.at(index_of(vertex_id)); }

  void rebuild_index() {
    index_.clear();
    for (int i = 0; i < vertex_count(); ++i) index_[vertices[i].id] = i;
  }

  static void normalize(ColorSet& c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }

 private:
  std::map<int, int> index_;
};

// Alias kept for readability at call sites that expect arcs.
using ColoredDigraph = ColoredGraph;

inline bool intersects(const ColorSet& a, const ColorSet& b) {
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

// Graph with n vertices 0..n-1 and no colors.
inline ColoredGraph empty_graph(int n, bool directed = false, std::string name = "g") {
  ColoredGraph g;
  g.name = std::move(name);
  g.directed = directed;
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  return g;
}

inline ColoredGraph remove_colors(const ColoredGraph& g, const ColorSet& removed,
                                  Target target = Target::edges) {
  ColorSet c = removed;
  ColoredGraph::normalize(c);
  ColoredGraph out;
  out.name = g.name;
  out.directed = g.directed;
  std::set<int> gone;
  for (const auto& v : g.vertices) {
    if (target == Target::vertices && intersects(v.colors, c)) {
      gone.insert(v.id);
    } else {
      out.vertices.push_back(v);
    }
  }
  out.rebuild_index();
  if (g.root && !gone.count(*g.root)) out.root = g.root;
  for (const auto& e : g.edges) {
    if (target == Target::edges && intersects(e.colors, c)) continue;
    if (gone.count(e.u) || gone.count(e.v)) continue;
    out.edges.push_back(e);
  }
  return out;
}

// Same vertices and edges with arcs read as undirected edges.
inline ColoredGraph underlying(const ColoredGraph& d) {
  ColoredGraph g = d;
  g.directed = false;
  g.root.reset();
  return g;
}

// ---------------------------------------------------------------------------
// Canonical text format.

struct ParseOptions {
  // Add undeclared edge endpoints as uncolored vertices even when the file
  // declares vertices explicitly.
  bool implicit_vertices = false;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline long long parse_int(const std::string& s, int line, const char* what) {
  if (s.empty()) throw ParseError(line, std::string("empty ") + what);
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("bad ") + what + " '" + s + "'");
  }
  if (pos != s.size()) throw ParseError(line, std::string("bad ") + what + " '" + s + "'");
  return v;
}

inline int parse_id(const std::string& s, int line) {
  long long v = parse_int(s, line, "id");
  if (v < 0 || v > 1'000'000'000) throw ParseError(line, "id out of range '" + s + "'");
  return static_cast<int>(v);
}

inline ColorSet parse_colors(const std::string& s, int line) {
  ColorSet out;
  if (s.empty()) return out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    long long c = parse_int(cur, line, "color");
    if (c < 0 || c > 1'000'000'000) throw ParseError(line, "color out of range '" + cur + "'");
    out.push_back(static_cast<Color>(c));
  }
  ColoredGraph::normalize(out);
  return out;
}

inline Weight parse_decimal(const std::string& s, int line) {
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
  long long num = 0, den = 1;
  bool digits = false, dot = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '.' && !dot) {
      dot = true;
      continue;
    }
    if (ch < '0' || ch > '9') throw ParseError(line, "bad weight '" + s + "'");
    digits = true;
    if (num > 100'000'000'000'000LL || den > 100'000'000'000'000LL) {
      throw ParseError(line, "weight too precise '" + s + "'");
    }
    num = num * 10 + (ch - '0');
    if (dot) den *= 10;
  }
  if (!digits) throw ParseError(line, "bad weight '" + s + "'");
  return Weight(neg ? -num : num, den);
}

}  // namespace detail

// Shortest exact decimal rendering; weights always come from decimals so the
// denominator divides a power of ten.
inline std::string format_weight(const Weight& w) {
  long long num = w.numerator(), den = w.denominator();
  std::string sign = num < 0 ? "-" : "";
  unsigned long long a = num < 0 ? -static_cast<unsigned long long>(num) : num;
  int places = 0;
  unsigned long long scale = 1;
  while (scale % static_cast<unsigned long long>(den) != 0) {
    if (places == 18) throw Error("weight is not a finite decimal");
    scale *= 10;
    ++places;
  }
  unsigned long long scaled = a * (scale / den);
  std::string digits = std::to_string(scaled);
  if (places == 0) return sign + digits;
  if (static_cast<int>(digits.size()) <= places) {
    digits = std::string(places - digits.size() + 1, '0') + digits;
  }
  std::string head = digits.substr(0, digits.size() - places);
  std::string tail = digits.substr(digits.size() - places);
  while (!tail.empty() && tail.back() == '0') tail.pop_back();
  return sign + head + (tail.empty() ? "" : "." + tail);
}

inline std::string format_colors(const ColorSet& c) {
  std::string out;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c[i]);
  }
  return out;
}

inline ColoredGraph parse(const std::string& text, const ParseOptions& opts = {}) {
  ColoredGraph g;
  bool seen_graph = false, seen_directed = false;
  std::optional<std::pair<int, int>> root;  // id, line
  struct PendingEdge {
    int line, u, v;
    ColorSet colors;
    std::optional<Weight> w;
  };
  std::vector<PendingEdge> pending;
  bool declared_vertices = false;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto tok = detail::split_ws(raw);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    if (kw == "graph") {
      if (seen_graph) throw ParseError(line_no, "duplicate graph line");
      if (tok.size() != 2) throw ParseError(line_no, "expected: graph <name>");
      if (declared_vertices || !pending.empty()) throw ParseError(line_no, "graph line must come first");
      g.name = tok[1];
      seen_graph = true;
    } else if (kw == "directed") {
      if (seen_directed) throw ParseError(line_no, "duplicate directed line");
      if (tok.size() != 2 || (tok[1] != "0" && tok[1] != "1")) {
        throw ParseError(line_no, "expected: directed 0|1");
      }
      g.directed = tok[1] == "1";
      seen_directed = true;
    } else if (kw == "root") {
      if (root) throw ParseError(line_no, "duplicate root line");
      if (tok.size() != 2) throw ParseError(line_no, "expected: root <id>");
      root = std::make_pair(detail::parse_id(tok[1], line_no), line_no);
    } else if (kw == "vertex") {
      if (tok.size() < 2 || tok.size() > 3) throw ParseError(line_no, "expected: vertex <id> [c=...]");
      int id = detail::parse_id(tok[1], line_no);
      ColorSet colors;
      if (tok.size() == 3) {
        if (tok[2].rfind("c=", 0) != 0) throw ParseError(line_no, "unknown vertex field '" + tok[2] + "'");
        colors = detail::parse_colors(tok[2].substr(2), line_no);
      }
      if (g.has_vertex(id)) throw ParseError(line_no, "duplicate vertex " + tok[1]);
      g.add_vertex(id, colors);
      declared_vertices = true;
    } else if (kw == "edge") {
      if (tok.size() < 3) throw ParseError(line_no, "expected: edge <u> <v> [w=...] [c=...]");
      PendingEdge pe{line_no, detail::parse_id(tok[1], line_no), detail::parse_id(tok[2], line_no), {}, {}};
      bool seen_w = false, seen_c = false;
      for (size_t i = 3; i < tok.size(); ++i) {
        if (tok[i].rfind("w=", 0) == 0 && !seen_w && !seen_c) {
          pe.w = detail::parse_decimal(tok[i].substr(2), line_no);
          seen_w = true;
        } else if (tok[i].rfind("c=", 0) == 0 && !seen_c) {
          pe.colors = detail::parse_colors(tok[i].substr(2), line_no);
          seen_c = true;
        } else {
          throw ParseError(line_no, "unexpected edge field '" + tok[i] + "'");
        }
      }
      pending.push_back(std::move(pe));
    } else {
      throw ParseError(line_no, "unknown keyword '" + kw + "'");
    }
  }
  if (!seen_graph) throw ParseError(line_no, "missing graph line");

  if (!declared_vertices) {
    std::set<int> ids;
    for (const auto& pe : pending) ids.insert({pe.u, pe.v});
    for (int id : ids) g.add_vertex(id);
  }
  std::optional<bool> weighted;
  for (const auto& pe : pending) {
    for (int end : {pe.u, pe.v}) {
      if (!g.has_vertex(end)) {
        if (!opts.implicit_vertices) {
          throw ParseError(pe.line, "edge endpoint " + std::to_string(end) + " is not a declared vertex");
        }
        g.add_vertex(end);
      }
    }
    if (weighted && *weighted != pe.w.has_value()) {
      throw ParseError(pe.line, "weights must be given on all edges or none");
    }
    weighted = pe.w.has_value();
    g.add_edge(pe.u, pe.v, pe.colors, pe.w);
  }
  if (root) {
    if (!g.has_vertex(root->first)) throw ParseError(root->second, "root is not a declared vertex");
    g.root = root->first;
  }
  return g;
}

inline std::string serialize(const ColoredGraph& g) {
  std::ostringstream out;
  out << "graph " << g.name << "\n";
  out << "directed " << (g.directed ? 1 : 0) << "\n";
  if (g.root) out << "root " << *g.root << "\n";
  for (const auto& v : g.vertices) {
    out << "vertex " << v.id;
    if (!v.colors.empty()) out << " c=" << format_colors(v.colors);
    out << "\n";
  }
  for (const auto& e : g.edges) {
    out << "edge " << e.u << " " << e.v;
    if (e.weight) out << " w=" << format_weight(*e.weight);
    if (!e.colors.empty()) out << " c=" << format_colors(e.colors);
    out << "\n";
  }
  return out.str();
}

// Renumbers edge ids to 0..m-1 in current order (used after builders splice
// edge lists together).
inline void renumber_edges(ColoredGraph& g) {
  for (int i = 0; i < g.edge_count(); ++i) g.edges[i].id = i;
}

}  // namespace cavoid
