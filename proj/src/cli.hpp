#pragma once

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cavoid/cavoid.hpp"

namespace cavoid::cli {

enum Exit { kHolds = 0, kFails = 1, kUsage = 2, kBudget = 3 };

struct UsageError : Error {
  using Error::Error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct NotionFlags {
  std::string part = "edge";
  std::string mode = "edge";
  int k = 1;
  int l = 1;
  std::string scope;  // default depends on the graph

  void attach(CLI::App* app) {
    app->add_option("--part", part, "colored part: edge, vertex, internal-vertex");
    app->add_option("--mode", mode, "connectivity: edge (arc) or vertex");
    app->add_option("-k", k, "paths required")->check(CLI::PositiveNumber);
    app->add_option("-l", l, "colors removed")->check(CLI::PositiveNumber);
    app->add_option("--scope", scope, "undirected, strong or rooted");
  }

  Notion build(const ColoredGraph& g) const {
    Scope s;
    if (!scope.empty()) s = scope_from_string(scope);
    else if (!g.directed) s = Scope::undirected;
    else s = g.root ? Scope::rooted : Scope::strong;
    return {part_from_string(part), mode_from_string(mode), k, l, s};
  }
};

struct Context {
  std::vector<std::string> argv;
  std::string input;  // bytes of the main input file
  std::string out_path;
  bool timing = false;
  Json result = Json::object();
  std::optional<std::string> artifact;
  int code = kHolds;
};

inline void cost_notice(std::ostream& err, long long requested, long long estimate, const char* what) {
  err << "note: " << what << " raised to " << requested << "; this run needs about " << estimate << "\n";
}

// ---------------------------------------------------------------------------

inline void cmd_verify(Context& c, const std::string& file, const NotionFlags& nf, const std::vector<int>& pair,
                       long long max_subsets, bool equivalence, std::ostream& err) {
  c.input = read_file(file);
  ColoredGraph g = parse(c.input);
  Notion n = nf.build(g);
  VerifyOptions vo;
  vo.max_subsets = max_subsets;
  if (max_subsets != VerifyOptions{}.max_subsets) {
    cost_notice(err, max_subsets,
                binomial_sum(static_cast<int>(g.used_colors(target_of(n.part)).size()), n.l, max_subsets),
                "--max-subsets");
  }
  c.result["notion"] = to_json(n);
  Verdict v = pair.empty() ? verify(g, n, vo) : verify_pair(g, pair[0], pair[1], n, vo);
  if (!pair.empty()) c.result["pair"] = pair;
  c.result["verdict"] = to_json(v);
  if (equivalence) {
    auto rep = equivalence_suite(g);
    c.result["equivalence"] = {{"in_scope", rep.in_scope}, {"checks", rep.checks},
                               {"disagreements", rep.disagreements}};
  }
  c.code = v.holds ? kHolds : kFails;
}

inline void cmd_color(Context& c, const std::string& file, const NotionFlags& nf, bool exact, bool existence,
                      bool rooted, long long budget) {
  c.input = read_file(file);
  ColoredGraph g = parse(c.input);
  NotionFlags flags = nf;
  if (rooted && flags.scope.empty()) flags.scope = "rooted";
  Notion n = flags.build(g);
  c.result["notion"] = to_json(n);
  if (existence) {
    auto e = exists_ca_coloring(g, n);
    c.result["method"] = "characterization";
    c.result["existence"] = to_json(e);
    c.code = e.exists ? kHolds : kFails;
    return;
  }
  std::optional<ColoringOutcome> poly;
  if (!exact) {
    if (n.part == Part::edge && n.scope == Scope::undirected && n.k == 1 && n.l == 1) {
      c.result["method"] = "matroid-partition";
      poly = min_courteous_coloring(g);
    } else if (n.part == Part::edge && n.scope == Scope::rooted && n.k == 1) {
      c.result["method"] = "arborescence-packing";
      poly = rooted_ca_coloring(g, *g.root, n.l);
    } else if (n.part == Part::vertex) {
      c.result["method"] = "monochromatic";
      poly = single_color_colorings(g, n);
    } else {
      throw UsageError("no polynomial construction for this notion; use --exact");
    }
    if (auto* r = std::get_if<ColoringResult>(&*poly)) {
      c.result["status"] = "found";
      c.result["coloring"] = to_json(*r);
      c.artifact = write_coloring(g, *r);
      c.code = kHolds;
    } else {
      c.result["status"] = "infeasible";
      c.result["infeasible"] = to_json(std::get<Infeasible>(*poly));
      c.code = kFails;
    }
    return;
  }
  ExactOptions eo;
  eo.budget = budget;
  auto r = exact_min_colors(g, n, eo);
  c.result["method"] = "exact-search";
  c.result["status"] = to_string(r.status);
  c.result["nodes"] = r.nodes;
  if (r.status == OptStatus::optimal) {
    ColoringResult cr;
    cr.kind = target_of(n.part);
    cr.assignment = *r.assignment;
    cr.colors_used = *r.value;
    cr.certificate.kind = "search";
    c.result["coloring"] = to_json(cr);
    c.artifact = write_coloring(g, cr);
    c.code = kHolds;
  } else {
    c.code = r.status == OptStatus::budget_exhausted ? kBudget : kFails;
  }
}

struct OrientFlags {
  bool ca_strong = false, ca_rooted = false, robbins = false, thomassen = false;
  int rooted_k = 0, nash_williams = 0, and_color = 0;
  std::optional<int> root;
  long long budget = 5'000'000;
  bool no_prune = false, no_pregate = false, no_dominance = false;
};

inline void cmd_orient(Context& c, const std::string& file, const NotionFlags& nf, const OrientFlags& of) {
  c.input = read_file(file);
  ColoredGraph g = parse(c.input);
  if (g.directed) throw UsageError("orient expects an undirected graph");
  if (of.root) g.root = *of.root;
  int modes = of.ca_strong + of.ca_rooted + of.robbins + of.thomassen + (of.rooted_k > 0) + (of.nash_williams > 0) +
              (of.and_color > 0);
  if (modes != 1) throw UsageError("choose exactly one orientation target");
  auto emit = [&](const Orientation& o) {
    c.result["status"] = "found";
    c.result["orientation"] = o.forward;
    c.artifact = write_orientation(g, o);
    c.code = kHolds;
  };
  auto emit_outcome = [&](const OrientationOutcome& r) {
    if (auto* o = std::get_if<Orientation>(&r)) {
      emit(*o);
    } else {
      c.result["status"] = "infeasible";
      c.result["infeasible"] = to_json(std::get<Infeasible>(r));
      c.code = kFails;
    }
  };
  if (of.robbins) {
    c.result["method"] = "robbins";
    emit_outcome(robbins_orientation(g));
  } else if (of.rooted_k > 0) {
    if (!g.root) throw UsageError("--rooted-k needs a root (file or --root)");
    c.result["method"] = "tree-packing";
    emit_outcome(rooted_k_arc_orientation(g, *g.root, of.rooted_k));
  } else if (of.nash_williams > 0) {
    bool ok = nash_williams_check(g, of.nash_williams);
    c.result["method"] = "nash-williams";
    c.result["exists"] = ok;
    c.code = ok ? kHolds : kFails;
  } else if (of.thomassen) {
    bool ok = thomassen_check(g);
    c.result["method"] = "thomassen";
    c.result["exists"] = ok;
    c.code = ok ? kHolds : kFails;
  } else if (of.and_color > 0) {
    NotionFlags flags = nf;
    if (flags.scope.empty()) flags.scope = g.root ? "rooted" : "strong";
    ColoredGraph probe = g;
    probe.directed = true;
    Notion n = flags.build(probe);
    c.result["notion"] = to_json(n);
    auto r = orient_and_color(g, n, of.and_color, g.root, of.budget);
    c.result["method"] = r.method;
    c.result["exhaustive"] = r.exhaustive;
    if (!r.note.empty()) c.result["note"] = r.note;
    c.result["status"] = to_string(r.status);
    if (r.status == SearchStatus::found) {
      c.result["orientation"] = r.orientation->forward;
      c.result["coloring"] = to_json(*r.coloring);
      ColoredGraph d = apply_orientation(g, *r.orientation, g.root);
      c.artifact = write_orientation(g, *r.orientation) + write_coloring(d, *r.coloring);
      c.code = kHolds;
    } else {
      c.code = r.status == SearchStatus::budget_exhausted ? kBudget : kFails;
    }
  } else {
    NotionFlags flags = nf;
    flags.scope = of.ca_strong ? "strong" : "rooted";
    if (of.ca_rooted && !g.root) throw UsageError("--ca-rooted needs a root (file or --root)");
    ColoredGraph probe = g;
    probe.directed = true;
    Notion n = flags.build(probe);
    c.result["notion"] = to_json(n);
    OrientSearchOptions so;
    so.budget = of.budget;
    so.prune = !of.no_prune;
    so.pregate = !of.no_pregate;
    if (of.no_dominance) so.pair_dominance = false;
    auto r = find_ca_orientation_exact(g, n, so);
    c.result["method"] = "exhaustive-orientation";
    c.result["nodes"] = r.nodes;
    c.result["pregate_rejected"] = r.pregate_rejected;
    if (r.status == SearchStatus::found) {
      emit(*r.orientation);
    } else {
      c.result["status"] = to_string(r.status);
      c.code = r.status == SearchStatus::budget_exhausted ? kBudget : kFails;
    }
  }
}

inline std::vector<bool> parse_assignment(const std::string& s) {
  std::vector<bool> a;
  for (char ch : s) {
    if (ch == 'T' || ch == 't' || ch == '1') a.push_back(true);
    else if (ch == 'F' || ch == 'f' || ch == '0') a.push_back(false);
    else if (ch != ',' && ch != ' ') throw UsageError("assignment uses T/F or 1/0");
  }
  return a;
}

inline void cmd_reduce(Context& c, const std::string& kind, const std::string& file, bool expand,
                       const std::string& assignment) {
  c.input = read_file(file);
  Gadget gad;
  std::optional<Notion> target;
  std::optional<std::string> orientation_text;  // replaces the gadget as artifact
  if (kind == "hyp" || kind == "hyp-rooted" || kind == "hyp-orient") {
    Hypergraph h = parse_hypergraph(c.input);
    gad = kind == "hyp-orient" ? build_hypergraph_orientation_gadget(h) : build_hypergraph_gadget(h, kind == "hyp-rooted");
    auto col = brute_hyp2col(h);
    c.result["source_positive"] = col.has_value();
    if (col) c.result["source_witness"] = *col;
  } else if (kind == "nae-strong" || kind == "nae-rooted") {
    NaeFormula f = parse_nae(c.input);
    bool strong = kind == "nae-strong";
    gad = build_nae_gadget(f, strong ? NaeScope::strong : NaeScope::rooted, expand);
    c.result["toy"] = f.toy;
    c.result["flags"] = {{"linear", f.linear}, {"exact4", f.exact4}};
    target = Notion{Part::edge, ConnMode::edge, 1, 1, strong ? Scope::strong : Scope::rooted};
    if (!assignment.empty()) {
      auto a = parse_assignment(assignment);
      if (static_cast<int>(a.size()) != f.n) throw UsageError("assignment length must equal the variable count");
      Orientation o = assignment_to_orientation(gad, a);
      c.result["assignment_nae"] = nae_satisfies(f, a);
      c.result["orientation_verified"] = verify(apply_orientation(gad.graph, o, gad.graph.root), *target).holds;
      orientation_text = write_orientation(gad.graph, o);
    }
  } else if (kind == "e2v" || kind == "e2v-rooted" || kind == "e2v-rooted-internal") {
    ColoredGraph g = parse(c.input);
    E2VVariant v = kind == "e2v" ? E2VVariant::strong
                   : kind == "e2v-rooted" ? E2VVariant::rooted
                                          : E2VVariant::rooted_internal;
    gad = build_edge_to_vertex_gadget(g, v);
  } else {
    throw UsageError("unknown reduction '" + kind + "'");
  }
  c.result["kind"] = kind;
  c.result["vertices"] = gad.graph.vertex_count();
  c.result["edges"] = gad.graph.edge_count();
  c.result["names"] = gad.names;
  c.artifact = orientation_text ? *orientation_text : serialize(gad.graph);
  c.code = kHolds;
  if (c.result.contains("orientation_verified") && !c.result["orientation_verified"].get<bool>()) c.code = kFails;
}

struct GenFlags {
  bool random = false, rooted = false, nae = false;
  int n = 5, m = 8, colors = 3, trees = 2, extra = 2, vars = 9;
  bool directed = false, loops = false, vertex_colors = false;
  std::uint64_t seed = 1;
};

inline void cmd_gen(Context& c, const GenFlags& f) {
  if (f.random + f.rooted + f.nae != 1) throw UsageError("choose one of --random, --rooted, --nae-exact4");
  c.result["seed"] = f.seed;
  if (f.random) {
    RandomSpec s;
    s.n = f.n;
    s.m = f.m;
    s.colors = f.colors;
    s.directed = f.directed;
    s.loops = f.loops;
    s.vertex_colors = f.vertex_colors;
    s.seed = f.seed;
    ColoredGraph g = random_colored_graph(s);
    c.artifact = serialize(g);
  } else if (f.rooted) {
    c.artifact = serialize(random_rooted_digraph(f.n, f.trees, f.extra, f.seed));
  } else {
    auto nae = random_linear_exact4(f.vars, f.seed);
    if (!nae) throw UsageError("no linear exact-4 formula found for this seed");
    c.result["toy"] = nae->toy;
    c.artifact = write_nae(*nae);
  }
  c.result["kind"] = f.random ? "random" : f.rooted ? "rooted" : "nae-exact4";
}

inline void cmd_check(Context& c, const std::string& family, const ReductionBounds& b) {
  ReductionReport rep;
  if (family == "hyp") rep = check_hypergraph_reduction(false, b);
  else if (family == "hyp-rooted") rep = check_hypergraph_reduction(true, b);
  else if (family == "e2v") rep = check_e2v_reduction(E2VVariant::strong, b);
  else if (family == "e2v-rooted") rep = check_e2v_reduction(E2VVariant::rooted, b);
  else if (family == "e2v-rooted-internal") rep = check_e2v_reduction(E2VVariant::rooted_internal, b);
  else throw UsageError("unknown family '" + family + "'");
  c.result["report"] = to_json(rep);
  c.code = rep.ok() ? kHolds : kFails;
}

// ---------------------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"color-avoiding connectivity toolkit"};
  app.require_subcommand(1);
  Context ctx;
  ctx.argv = args;
  bool timing = false;
  std::string out_path;
  app.add_flag("--timing", timing, "add wall time to the record");
  app.add_option("--out", out_path, "write the artifact to this file");
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker cap (all searches run on one thread)")->check(CLI::PositiveNumber);

  std::string file;
  NotionFlags nf;

  auto* verify_cmd = app.add_subcommand("verify", "decide a color-avoiding notion");
  verify_cmd->add_option("file", file)->required();
  nf.attach(verify_cmd);
  std::vector<int> pair;
  long long max_subsets = VerifyOptions{}.max_subsets;
  bool equivalence = false;
  verify_cmd->add_option("--pair", pair, "restrict to one vertex pair")->expected(2);
  verify_cmd->add_option("--max-subsets", max_subsets, "cap on enumerated color subsets");
  verify_cmd->add_flag("--equivalence", equivalence, "cross-check against cut formulations");

  auto* color_cmd = app.add_subcommand("color", "find a coloring");
  color_cmd->add_option("file", file)->required();
  nf.attach(color_cmd);
  bool poly = false, exact = false, existence = false, rooted = false;
  long long budget = 20'000'000;
  color_cmd->add_flag("--poly", poly, "polynomial construction (default)");
  color_cmd->add_flag("--exact", exact, "exhaustive minimum");
  color_cmd->add_flag("--existence", existence, "decide existence only");
  color_cmd->add_flag("--rooted", rooted, "rooted scope");
  color_cmd->add_option("--budget", budget, "search node budget");

  auto* orient_cmd = app.add_subcommand("orient", "orient an undirected graph");
  orient_cmd->add_option("file", file)->required();
  nf.attach(orient_cmd);
  OrientFlags of;
  std::optional<int> root;
  orient_cmd->add_flag("--ca-strong", of.ca_strong, "color-avoiding strong orientation search");
  orient_cmd->add_flag("--ca-rooted", of.ca_rooted, "color-avoiding rooted orientation search");
  orient_cmd->add_flag("--robbins", of.robbins, "strongly connected orientation");
  orient_cmd->add_option("--rooted-k", of.rooted_k, "rooted k-arc-connected orientation");
  orient_cmd->add_option("--nash-williams", of.nash_williams, "strongly k-arc-connected orientation exists?");
  orient_cmd->add_flag("--thomassen", of.thomassen, "strongly 2-vertex-connected orientation exists?");
  orient_cmd->add_option("--and-color", of.and_color, "orient and color with at most this many colors");
  orient_cmd->add_option("--root", root, "root vertex id");
  orient_cmd->add_option("--budget", of.budget, "search node budget");
  orient_cmd->add_flag("--no-prune", of.no_prune, "disable partial pruning");
  orient_cmd->add_flag("--no-pregate", of.no_pregate, "disable the necessary-condition gate");
  orient_cmd->add_flag("--no-dominance", of.no_dominance, "do not pair parallel edges");

  auto* reduce_cmd = app.add_subcommand("reduce", "build a reduction gadget");
  std::string kind, assignment;
  bool expand = false;
  reduce_cmd->add_option("kind", kind)->required();
  reduce_cmd->add_option("file", file)->required();
  reduce_cmd->add_flag("--expand", expand, "rewrite color lists to single colors");
  reduce_cmd->add_option("--assignment", assignment, "map a truth assignment (e.g. TFTTF) to an orientation");

  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  GenFlags gf;
  gen_cmd->add_flag("--random", gf.random, "random colored graph");
  gen_cmd->add_flag("--rooted", gf.rooted, "random rooted digraph from packed arborescences");
  gen_cmd->add_flag("--nae-exact4", gf.nae, "positive linear exact-4 NAE formula");
  gen_cmd->add_option("-n", gf.n, "vertices");
  gen_cmd->add_option("-m", gf.m, "edges");
  gen_cmd->add_option("--colors", gf.colors, "palette size");
  gen_cmd->add_option("--trees", gf.trees, "arborescences");
  gen_cmd->add_option("--extra", gf.extra, "extra arcs");
  gen_cmd->add_option("--vars", gf.vars, "variables");
  gen_cmd->add_flag("--directed", gf.directed);
  gen_cmd->add_flag("--loops", gf.loops);
  gen_cmd->add_flag("--vertex-colors", gf.vertex_colors);
  gen_cmd->add_option("--seed", gf.seed);

  auto* check_cmd = app.add_subcommand("check", "bounded reduction equivalence check");
  std::string family;
  ReductionBounds bounds;
  check_cmd->add_option("family", family)->required();
  check_cmd->add_option("--max-vertices", bounds.max_vertices);
  check_cmd->add_option("--max-edges", bounds.max_edges);
  check_cmd->add_option("--colors", bounds.colors);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kHolds;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  auto* sub = app.get_subcommands().front();
  Json record;
  std::string echo;
  for (const auto& a : args) echo += (echo.empty() ? "" : " ") + a;
  record["command"] = echo;
  auto start = std::chrono::steady_clock::now();
  try {
    if (sub == verify_cmd) {
      if (!pair.empty() && pair.size() != 2) throw UsageError("--pair takes two vertex ids");
      cmd_verify(ctx, file, nf, pair, max_subsets, equivalence, err);
    } else if (sub == color_cmd) {
      if (poly && exact) throw UsageError("--poly and --exact are exclusive");
      cmd_color(ctx, file, nf, exact, existence, rooted, budget);
    } else if (sub == orient_cmd) {
      of.root = root;
      cmd_orient(ctx, file, nf, of);
    } else if (sub == reduce_cmd) {
      cmd_reduce(ctx, kind, file, expand, assignment);
    } else if (sub == gen_cmd) {
      cmd_gen(ctx, gf);
    } else {
      cmd_check(ctx, family, bounds);
    }
  } catch (const GuardExceeded& e) {
    ctx.result = {{"error", "guard"}, {"message", e.what()}};
    ctx.artifact.reset();
    ctx.code = kUsage;
  } catch (const ParseError& e) {
    ctx.result = {{"error", "parse"}, {"line", e.line()}, {"message", e.what()}};
    ctx.artifact.reset();
    ctx.code = kUsage;
  } catch (const Error& e) {
    ctx.result = {{"error", "usage"}, {"message", e.what()}};
    ctx.artifact.reset();
    ctx.code = kUsage;
  }
  record["input_digest"] = ctx.input.empty() ? Json(nullptr) : Json(digest(ctx.input));
  if (ctx.artifact) {
    if (!out_path.empty()) {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) {
        err << "cannot write " << out_path << "\n";
        return kUsage;
      }
      f << *ctx.artifact;
      ctx.result["artifact_path"] = out_path;
    } else {
      ctx.result["artifact"] = *ctx.artifact;
    }
  }
  record["exit"] = ctx.code;
  record["result"] = ctx.result;
  if (timing) {
    record["wall_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  if (ctx.result.contains("error")) err << "error: " << ctx.result["message"].get<std::string>() << "\n";
  out << record.dump() << "\n";
  return ctx.code;
}

}  // namespace cavoid::cli
