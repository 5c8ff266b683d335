// popmatch: command-line front end for the popular-matching toolkit.
//
// Every subcommand prints a JSON report on stdout. Exit status:
//   0 success (popular / solved / written)   1 negative verdict
//   2 parse or validation error              3 search budget exceeded
//   4 characterization and brute force disagree

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "popmatch/popmatch.hpp"

namespace {

using nlohmann::json;
using namespace popmatch;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;
constexpr int kExitDivergence = 4;

struct Options {
  std::string cnf_file, pvc_file, instance_file, matching_file, map_file, cover_file;
  std::string out_file, map_out_file, repro_dir = ".";
  std::string mode = "characterization";
  std::uint64_t budget = SearchOptions{}.node_budget;
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::size_t max_n = 6;
  std::size_t min_n = 1;
  bool timing = false;
};

template <typename Reader>
auto read_file(const std::string& path, Reader reader) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open " + path);
  return reader(in);
}

template <typename Writer>
void write_file(const std::string& path, Writer writer) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::parse_error, "cannot write " + path);
  writer(out);
}

json edges_json(const std::vector<Edge>& edges) {
  json out = json::array();
  for (const Edge& e : edges) out.push_back({e.u, e.v});
  return out;
}

json matching_json(const Matching& m) { return edges_json(m.edges()); }

json cover_json(const CoverSet& u) { return json(std::vector<Vertex>(u.begin(), u.end())); }

json witness_json(const Witness& w) {
  return {{"kind", to_string(w.kind)}, {"vertices", w.vertices}, {"plus_edges", w.plus_edges}};
}

json instance_stats(const PreferenceInstance& inst) {
  return {{"vertices", inst.size()}, {"edges", inst.edge_count()}};
}

json pvc_stats(const PvcInstance& pvc) {
  return {{"vertices", pvc.graph().size()},
          {"edges", pvc.graph().edges().size()},
          {"pairs", pvc.pairs().size()},
          {"triples", pvc.triples().size()}};
}

json size_json(const SizeReport& s) {
  return {{"vertices", s.vertices},
          {"edges", s.edges},
          {"expected_vertices", s.expected_vertices},
          {"expected_edges", s.expected_edges},
          {"consistent", s.consistent()}};
}

int cmd_sat2pvc(const Options& o, json& report) {
  const CnfFormula cnf = read_file(o.cnf_file, read_dimacs);
  const SatReduction red = sat_to_pvc(cnf);
  write_file(o.out_file, [&](std::ostream& out) { write_pvc(out, red.pvc); });
  write_file(o.map_out_file, [&](std::ostream& out) { write_literal_map(out, cnf, red.map); });
  report["formula"] = {{"variables", cnf.num_vars}, {"clauses", cnf.clauses.size()}};
  report["pvc"] = pvc_stats(red.pvc);
  return kExitOk;
}

int cmd_pvc2pm(const Options& o, json& report) {
  const PvcInstance pvc = read_file(o.pvc_file, read_pvc);
  const HInstance h = reduce_pvc_to_pm(pvc);
  write_file(o.out_file, [&](std::ostream& out) { write_instance(out, h.instance); });
  write_file(o.map_out_file, [&](std::ostream& out) { write_gadget_map(out, h.map); });
  report["pvc"] = pvc_stats(pvc);
  report["size"] = size_json(size_formulas(h));
  return kExitOk;
}

int cmd_verify(const Options& o, json& report) {
  const PreferenceInstance inst = read_file(o.instance_file, read_instance);
  const Matching m = read_file(o.matching_file, [&](std::istream& in) { return read_matching(in, inst); });
  report["instance"] = instance_stats(inst);
  report["matching"] = matching_json(m);
  report["maximal"] = is_maximal(inst, m);

  std::optional<bool> structural, definitional;
  if (o.mode == "characterization" || o.mode == "both") {
    const PopularityVerdict v = is_popular(inst, m, SearchOptions{o.budget});
    structural = v.popular;
    json part = {{"popular", v.popular}, {"search_nodes", v.nodes}};
    if (v.witness) {
      const Matching better = apply_witness(inst, m, *v.witness);
      part["witness"] = witness_json(*v.witness);
      part["improved_matching"] = matching_json(better);
      part["delta"] = delta(inst, better, m);
    }
    report["characterization"] = part;
  }
  if (o.mode == "bruteforce" || o.mode == "both") {
    const BruteForceVerdict v = is_popular_bruteforce(inst, m, o.budget);
    definitional = v.popular;
    json part = {{"popular", v.popular}};
    if (v.better) {
      part["better_matching"] = matching_json(*v.better);
      part["delta"] = v.best_margin;
    }
    report["bruteforce"] = part;
  }
  if (structural && definitional && *structural != *definitional) {
    report["verdict"] = "divergence";
    return kExitDivergence;
  }
  const bool popular = structural ? *structural : *definitional;
  report["verdict"] = popular ? "popular" : "not_popular";
  return popular ? kExitOk : kExitNegative;
}

int cmd_solve(const Options& o, json& report) {
  const PreferenceInstance inst = read_file(o.instance_file, read_instance);
  report["instance"] = instance_stats(inst);
  const auto m = solve_bruteforce(inst, o.budget);
  report["verdict"] = m ? "solved" : "none";
  report["matching"] = m ? matching_json(*m) : json(nullptr);
  return m ? kExitOk : kExitNegative;
}

int cmd_solve_pvc(const Options& o, json& report) {
  const PvcInstance pvc = read_file(o.pvc_file, read_pvc);
  report["pvc"] = pvc_stats(pvc);
  const auto u = solve_pvc_bruteforce(pvc);
  report["verdict"] = u ? "solved" : "none";
  report["cover"] = u ? cover_json(*u) : json(nullptr);
  return u ? kExitOk : kExitNegative;
}

int cmd_forward(const Options& o, json& report) {
  const PvcInstance pvc = read_file(o.pvc_file, read_pvc);
  const CoverSet cover = read_file(o.cover_file, read_cover);
  const HInstance h = reduce_pvc_to_pm(pvc);
  const Matching m = forward_matching(h, cover);
  if (!o.out_file.empty()) write_file(o.out_file, [&](std::ostream& out) { write_matching(out, m); });
  report["cover"] = cover_json(cover);
  report["size"] = size_json(size_formulas(h));
  report["matching"] = matching_json(m);
  return kExitOk;
}

HInstance load_reduction(const Options& o) {
  const PreferenceInstance inst = read_file(o.instance_file, read_instance);
  const GadgetMap map = read_file(o.map_file, read_gadget_map);
  return attach_gadget_map(inst, map);
}

int cmd_extract(const Options& o, json& report) {
  const HInstance h = load_reduction(o);
  const Matching m = read_file(o.matching_file, [&](std::istream& in) { return read_matching(in, h.instance); });
  const CoverSet u = extract_cover(h, m);
  report["cover"] = cover_json(u);
  report["is_solution"] = is_solution(h.source, u);
  return kExitOk;
}

int cmd_improve(const Options& o, json& report) {
  const HInstance h = load_reduction(o);
  const Matching m = read_file(o.matching_file, [&](std::istream& in) { return read_matching(in, h.instance); });
  const auto step = improve(h, m);
  report["cover"] = cover_json(extract_cover(h, m));
  if (!step) {
    report["verdict"] = "no_rule_applies";
    return kExitNegative;
  }
  auto named = [&](const std::vector<Edge>& edges) {
    json out = json::array();
    for (const Edge& e : edges) out.push_back({to_string(h.map.name(e.u)), to_string(h.map.name(e.v))});
    return out;
  };
  if (!o.out_file.empty()) write_file(o.out_file, [&](std::ostream& out) { write_matching(out, step->matching); });
  report["verdict"] = "improved";
  report["rule"] = to_string(step->rule.tag);
  report["removed"] = edges_json(step->rule.removed);
  report["added"] = edges_json(step->rule.added);
  report["removed_names"] = named(step->rule.removed);
  report["added_names"] = named(step->rule.added);
  report["delta"] = step->delta;
  report["matching"] = matching_json(step->matching);
  return kExitOk;
}

int cmd_fuzz(const Options& o, json& report) {
  FuzzOptions fo;
  fo.seed = o.seed;
  fo.count = o.count;
  fo.min_n = std::min(o.min_n, o.max_n);
  fo.max_n = o.max_n;
  const FuzzReport r = run_fuzz(fo);
  report["instances"] = r.instances;
  report["matchings_checked"] = r.matchings_checked;
  report["popular_matchings"] = r.popular_matchings;
  report["instances_with_popular"] = r.instances_with_popular;
  if (!r.divergence) {
    report["verdict"] = "agree";
    return kExitOk;
  }
  const Divergence& d = *r.divergence;
  const auto base = std::filesystem::path(o.repro_dir) /
                    ("divergence_seed" + std::to_string(o.seed) + "_case" + std::to_string(d.instance_index));
  const std::string inst_path = base.string() + ".inst";
  const std::string match_path = base.string() + ".match";
  write_file(inst_path, [&](std::ostream& out) { write_instance(out, d.instance); });
  write_file(match_path, [&](std::ostream& out) { write_matching(out, d.matching); });
  report["verdict"] = "divergence";
  report["repro_instance"] = inst_path;
  report["repro_matching"] = match_path;
  report["characterization_popular"] = d.decider_says_popular;
  report["bruteforce_popular"] = d.bruteforce_says_popular;
  return kExitDivergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Popular matchings in the roommates setting and the PVC hardness reduction"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--timing", o.timing, "Include elapsed wall time in the report");

  auto* sat2pvc = app.add_subcommand("sat2pvc", "Reduce a 3-CNF formula to Partitioned Vertex Cover");
  sat2pvc->add_option("cnf", o.cnf_file, "DIMACS CNF input")->required();
  sat2pvc->add_option("-o,--out", o.out_file, "PVC output file")->required();
  sat2pvc->add_option("--map", o.map_out_file, "Literal/occurrence map output file")->required();

  auto* pvc2pm = app.add_subcommand("pvc2pm", "Reduce a PVC instance to a roommates instance");
  pvc2pm->add_option("pvc", o.pvc_file, "PVC input")->required();
  pvc2pm->add_option("-o,--out", o.out_file, "Roommates instance output file")->required();
  pvc2pm->add_option("--map", o.map_out_file, "Gadget map output file")->required();

  auto* verify = app.add_subcommand("verify", "Decide whether a matching is popular");
  verify->add_option("instance", o.instance_file)->required();
  verify->add_option("matching", o.matching_file)->required();
  verify->add_option("--mode", o.mode, "characterization, bruteforce or both")
      ->check(CLI::IsMember({"characterization", "bruteforce", "both"}));
  verify->add_option("--budget", o.budget, "Search node budget");

  auto* solve = app.add_subcommand("solve", "Find a popular matching by exhaustive search");
  solve->add_option("instance", o.instance_file)->required();
  solve->add_option("--budget", o.budget, "Enumeration node budget");

  auto* solve_pvc = app.add_subcommand("solve-pvc", "Solve a PVC instance by exhaustive search");
  solve_pvc->add_option("pvc", o.pvc_file)->required();

  auto* forward = app.add_subcommand("forward", "Build the popular matching of H from a PVC solution");
  forward->add_option("pvc", o.pvc_file)->required();
  forward->add_option("cover", o.cover_file)->required();
  forward->add_option("-o,--out", o.out_file, "Matching output file");

  auto* extract = app.add_subcommand("extract", "Read the encoded cover off a matching of H");
  extract->add_option("instance", o.instance_file)->required();
  extract->add_option("matching", o.matching_file)->required();
  extract->add_option("map", o.map_file)->required();

  auto* improve_cmd = app.add_subcommand("improve", "Apply one vote-winning exchange to a matching of H");
  improve_cmd->add_option("instance", o.instance_file)->required();
  improve_cmd->add_option("matching", o.matching_file)->required();
  improve_cmd->add_option("map", o.map_file)->required();
  improve_cmd->add_option("-o,--out", o.out_file, "Improved matching output file");

  auto* fuzz = app.add_subcommand("fuzz", "Cross-check the characterization against brute force");
  fuzz->add_option("--seed", o.seed);
  fuzz->add_option("--count", o.count);
  fuzz->add_option("--max-n", o.max_n);
  fuzz->add_option("--min-n", o.min_n);
  fuzz->add_option("--repro-dir", o.repro_dir, "Where to write a reproduction on divergence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  CLI::App* chosen = app.get_subcommands().front();
  json report;
  report["command"] = chosen->get_name();
  const auto started = std::chrono::steady_clock::now();
  int status = kExitOk;
  try {
    const std::string name = chosen->get_name();
    if (name == "sat2pvc") status = cmd_sat2pvc(o, report);
    if (name == "pvc2pm") status = cmd_pvc2pm(o, report);
    if (name == "verify") status = cmd_verify(o, report);
    if (name == "solve") status = cmd_solve(o, report);
    if (name == "solve-pvc") status = cmd_solve_pvc(o, report);
    if (name == "forward") status = cmd_forward(o, report);
    if (name == "extract") status = cmd_extract(o, report);
    if (name == "improve") status = cmd_improve(o, report);
    if (name == "fuzz") status = cmd_fuzz(o, report);
  } catch (const Error& e) {
    report["error"] = std::string(to_string(e.code()));
    report["message"] = e.what();
    status = e.code() == Errc::budget_exceeded ? kExitBudget : kExitInvalid;
  }
  if (o.timing) {
    report["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  }
  std::cout << report.dump(2) << '\n';
  return status;
}
