#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "coloring.hpp"
#include "orientation.hpp"
#include "reductions.hpp"
#include "verify.hpp"

namespace cavoid {

using Json = nlohmann::ordered_json;

// FNV-1a 64-bit, hex encoded.
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = hex[h & 15];
  return s;
}

inline Json to_json(const Notion& n) {
  return Json{{"part", to_string(n.part)}, {"mode", to_string(n.mode)}, {"k", n.k}, {"l", n.l},
              {"scope", to_string(n.scope)}};
}

inline Json to_json(const Cut& c) {
  return Json{{"kind", to_string(c.kind)}, {"vertices", c.vertices}, {"edges", c.edges}};
}

inline Json to_json(const Witness& w) {
  Json j{{"colors", w.colors}, {"cut", to_json(w.cut)}};
  if (w.pair) j["pair"] = {w.pair->first, w.pair->second};
  else j["pair"] = nullptr;
  return j;
}

inline Json to_json(const Verdict& v) {
  Json j{{"holds", v.holds}};
  j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  return j;
}

inline Json to_json(const ColoringResult& r) {
  Json j{{"colors_used", r.colors_used}, {"kind", r.kind == Target::edges ? "edges" : "vertices"},
         {"assignment", r.assignment}};
  j["certificate"] = {{"kind", r.certificate.kind}, {"groups", r.certificate.groups}};
  if (!r.certificate.note.empty()) j["certificate"]["note"] = r.certificate.note;
  return j;
}

inline Json to_json(const Infeasible& f) {
  Json j{{"reason", f.reason}, {"elements", f.elements}};
  if (f.cut.size() > 0) j["cut"] = to_json(f.cut);
  return j;
}

inline Json to_json(const ExistenceResult& e) {
  Json j{{"exists", e.exists}, {"condition", e.transcript}};
  if (!e.exists) {
    j["deleted_edges"] = e.deleted_edges;
    j["deleted_vertices"] = e.deleted_vertices;
    if (e.cut) j["cut"] = to_json(*e.cut);
    if (e.pair) j["pair"] = {e.pair->first, e.pair->second};
  }
  return j;
}

inline Json to_json(const ReductionReport& r) {
  Json j{{"family", r.family}, {"regime", r.regime}, {"instances", r.instances}, {"agreements", r.agreements},
         {"ok", r.ok()}};
  j["counterexample"] = r.counterexample ? Json(*r.counterexample) : Json(nullptr);
  return j;
}

}  // namespace cavoid
