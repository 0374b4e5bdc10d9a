// patsat: pattern-oriented SAT pipeline driver.
//
// Subcommands: gen mult | gen random | rename | check-slo | build | count |
// analyze tree | analyze growth | oracle. Structured output is JSON or CSV on
// stdout; diagrams only via explicit flags. Exit codes: 0 success (SAT for
// build), 2 UNSAT in build, 3 usage errors, 1 anything else.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "patsat/analysis.hpp"
#include "patsat/circuits.hpp"
#include "patsat/cnf.hpp"
#include "patsat/fbdd.hpp"
#include "patsat/oracle.hpp"
#include "patsat/slo.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

patsat::ClauseSet load_cnf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw patsat::Error("cannot open " + path);
  std::vector<std::string> warnings;
  patsat::ClauseSet s = patsat::parse_dimacs(in, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << path << ": " << w << '\n';
  return s;
}

// Tautology and duplicate removal is silent in the library; the tool reports it.
patsat::ClauseSet load_normalized(const std::string& path) {
  patsat::ClauseSet raw = load_cnf(path);
  patsat::ClauseSet s = patsat::normalize(raw);
  if (s.clauses.size() != raw.clauses.size()) {
    std::cerr << "note: normalization dropped " << raw.clauses.size() - s.clauses.size()
              << " clause(s) (tautologies or duplicates)\n";
  }
  return s;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw patsat::Error("cannot write " + path);
  out << content;
}

void emit(const std::optional<std::string>& path, const std::string& content) {
  if (path) {
    write_file(*path, content);
  } else {
    std::cout << content;
  }
}

patsat::OrderingPolicy parse_order(const std::string& text) {
  if (text.empty() || text == "canonical") return patsat::OrderingPolicy::canonical();
  if (text.rfind("random:", 0) == 0) {
    return patsat::OrderingPolicy::random(std::stoull(text.substr(7)));
  }
  std::vector<int> order;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) order.push_back(std::stoi(tok));
  if (order.empty()) throw UsageError("unusable --order value: " + text);
  return patsat::OrderingPolicy::explicit_order(order);
}

struct BuiltGraph {
  patsat::FbddGraph graph;
  patsat::BuildStats stats;
};

BuiltGraph build_graph(const patsat::ClauseSet& s, const std::string& proc,
                       const std::string& mode, const std::string& order) {
  if (proc == "pr") {
    auto [g, stats] = patsat::build_pr(s, parse_order(order));
    return {std::move(g), stats};
  }
  if (proc == "pr-prime") {
    if (!order.empty() && order != "canonical") {
      throw UsageError("--order applies to --proc pr only (pr-prime always uses the renamed canonical order)");
    }
    auto mode_v = mode == "upfront" ? patsat::PrPrimeMode::Upfront : patsat::PrPrimeMode::PerNode;
    if (mode != "upfront" && mode != "per-node") {
      throw UsageError("--mode must be upfront or per-node");
    }
    auto res = patsat::build_pr_prime(s, mode_v);
    return {std::move(res.graph), res.stats};
  }
  throw UsageError("--proc must be pr or pr-prime");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pattern-oriented SAT pipeline"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  auto* gen_mult = gen->add_subcommand("mult", "carry-save multiplier / factorization CNF");
  int ibits = 4;
  std::optional<uint64_t> target;
  bool drop_units_flag = false;
  std::optional<std::string> out_path, map_path, dot_path, json_path;
  gen_mult->add_option("--ibits", ibits, "bit-width parameter")->required();
  gen_mult->add_option("--target", target, "pin the product to this value (factorization)");
  gen_mult->add_flag("--drop-units", drop_units_flag, "drop the pinned units again");
  gen_mult->add_option("--out", out_path, "output file (default stdout)");

  auto* gen_random = gen->add_subcommand("random", "seeded random kCNF");
  int rv_n = 0, rv_m = 0, rv_k = 3;
  uint64_t rv_seed = 0;
  gen_random->add_option("--vars", rv_n)->required();
  gen_random->add_option("--clauses", rv_m)->required();
  gen_random->add_option("--k", rv_k)->required();
  gen_random->add_option("--seed", rv_seed)->required();
  gen_random->add_option("--out", out_path, "output file (default stdout)");

  // rename
  auto* rename_cmd = app.add_subcommand("rename", "CRA+ renaming to s.l.o. form");
  std::string in_path;
  rename_cmd->add_option("input", in_path, "DIMACS file")->required();
  rename_cmd->add_option("--out", out_path, "renamed DIMACS (default stdout)");
  rename_cmd->add_option("--map", map_path, "write the renaming map JSON here");

  // check-slo
  auto* check_cmd = app.add_subcommand("check-slo", "report s.l.o. violations");
  check_cmd->add_option("input", in_path, "DIMACS file")->required();

  // split
  auto* split_cmd = app.add_subcommand("split", "equisatisfiable kCNF -> 3CNF chain splitting");
  split_cmd->add_option("input", in_path, "DIMACS file")->required();
  split_cmd->add_option("--out", out_path, "output file (default stdout)");

  // build
  auto* build_cmd = app.add_subcommand("build", "construct the decision graph");
  std::string proc = "pr", mode = "per-node", order = "canonical";
  build_cmd->add_option("input", in_path, "DIMACS file")->required();
  build_cmd->add_option("--proc", proc, "pr | pr-prime")->required();
  build_cmd->add_option("--mode", mode, "upfront | per-node (pr-prime)");
  build_cmd->add_option("--order", order, "canonical | random:SEED | comma list (pr)");
  build_cmd->add_option("--dot", dot_path, "write graphviz export here");
  build_cmd->add_option("--json", json_path, "write json export here");

  // count
  auto* count_cmd = app.add_subcommand("count", "model count via the built graph");
  bool verify = false;
  count_cmd->add_option("input", in_path, "DIMACS file")->required();
  count_cmd->add_option("--proc", proc, "pr | pr-prime")->required();
  count_cmd->add_option("--mode", mode, "upfront | per-node (pr-prime)");
  count_cmd->add_option("--order", order, "canonical | random:SEED | comma list (pr)");
  count_cmd->add_flag("--verify", verify, "cross-check against the brute-force oracle (N <= 12)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "diagnostics over built graphs");
  analyze->require_subcommand(1);
  auto* tree_cmd = analyze->add_subcommand("tree", "complete-binary-subtree diagnostics");
  int tree_m = 3;
  tree_cmd->add_option("input", in_path, "DIMACS file")->required();
  tree_cmd->add_option("--proc", proc, "pr | pr-prime")->required();
  tree_cmd->add_option("--mode", mode, "upfront | per-node (pr-prime)");
  tree_cmd->add_option("--order", order, "canonical | random:SEED | comma list (pr)");
  tree_cmd->add_option("--m", tree_m, "complete-tree depth to test")->required();
  auto* growth_cmd = analyze->add_subcommand("growth", "exponential-base estimates from CSV");
  growth_cmd->add_option("input", in_path, "CSV with label,n_vars,node_count")->required();

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force ground truth");
  bool want_pd = false, want_count = false, want_plr = false;
  oracle_cmd->add_option("input", in_path, "DIMACS file")->required();
  oracle_cmd->add_flag("--pd", want_pd, "pattern domain as a 0/1 string");
  oracle_cmd->add_flag("--count", want_count, "satisfying assignment count");
  oracle_cmd->add_flag("--plr", want_plr, "pattern length repetition info");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (gen_mult->parsed()) {
      patsat::CircuitInstance inst =
          target ? patsat::gen_factorization(ibits, *target) : patsat::gen_multiplier(ibits);
      if (drop_units_flag) inst = patsat::drop_units(inst);
      emit(out_path, patsat::to_dimacs_with_comments(inst));
      return 0;
    }
    if (gen_random->parsed()) {
      emit(out_path, patsat::serialize_dimacs(patsat::gen_random_kcnf(rv_n, rv_m, rv_k, rv_seed)));
      return 0;
    }
    if (rename_cmd->parsed()) {
      patsat::CraPlusResult res = patsat::cra_plus(load_normalized(in_path));
      for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
      std::cerr << "rename iterations: " << res.iterations << '\n';
      emit(out_path, patsat::serialize_dimacs(res.set));
      if (map_path) write_file(*map_path, res.map.to_json() + "\n");
      return 0;
    }
    if (split_cmd->parsed()) {
      emit(out_path, patsat::serialize_dimacs(patsat::split_set_to_3cnf(load_normalized(in_path))));
      return 0;
    }
    if (check_cmd->parsed()) {
      // Checked as parsed: literal order inside clauses is part of condition a.
      patsat::SloReport report = patsat::slo_check(load_cnf(in_path));
      std::cout << report.to_json() << '\n';
      return report.holds ? 0 : 1;
    }
    if (build_cmd->parsed()) {
      BuiltGraph b = build_graph(load_normalized(in_path), proc, mode, order);
      bool sat = patsat::is_sat(b.graph);
      nlohmann::json j{{"nodes", b.stats.unique_nonterminal_nodes},
                       {"store_hits", b.stats.store_hits},
                       {"calls", b.stats.recursive_calls},
                       {"sat", sat}};
      std::cout << j.dump() << '\n';
      if (dot_path) write_file(*dot_path, patsat::export_dot(b.graph));
      if (json_path) write_file(*json_path, patsat::export_json(b.graph));
      return sat ? 0 : 2;
    }
    if (count_cmd->parsed()) {
      patsat::ClauseSet s = load_normalized(in_path);
      BuiltGraph b = build_graph(s, proc, mode, order);
      mpz_class count = patsat::model_count(b.graph, s.num_vars);
      std::cout << count.get_str() << '\n';
      if (verify) {
        if (s.num_vars <= 12) {
          uint64_t oracle = patsat::brute_count(s);
          if (count != mpz_class(static_cast<unsigned long>(oracle))) {
            std::cerr << "verify FAILED: oracle says " << oracle << '\n';
            return 1;
          }
          std::cerr << "verify OK (oracle " << oracle << ")\n";
        } else {
          std::cerr << "verify skipped: N > 12\n";
        }
      }
      return 0;
    }
    if (tree_cmd->parsed()) {
      patsat::ClauseSet s = load_normalized(in_path);
      BuiltGraph b = build_graph(s, proc, mode, order);
      patsat::TreeReport report = patsat::tree_report(b.graph);
      nlohmann::json j{{"dp_depth_bound", report.dp_depth_bound},
                       {"m", tree_m},
                       {"complete_tree_at_m", patsat::exact_complete_tree(b.graph, tree_m)}};
      if (report.exact_depth) {
        j["exact_depth"] = *report.exact_depth;
      } else {
        j["exact_depth"] = "not computed";
      }
      std::cout << j.dump() << '\n';
      return 0;
    }
    if (growth_cmd->parsed()) {
      std::ifstream in(in_path);
      if (!in) throw patsat::Error("cannot open " + in_path);
      std::cout << patsat::growth_csv(patsat::growth_table(patsat::parse_growth_csv(in)));
      return 0;
    }
    if (oracle_cmd->parsed()) {
      patsat::ClauseSet s = load_normalized(in_path);
      if (!want_pd && !want_count && !want_plr) want_count = true;
      if (want_pd) std::cout << patsat::pattern_domain(s).str() << '\n';
      if (want_count) std::cout << patsat::brute_count(s) << '\n';
      if (want_plr) {
        patsat::PlrInfo info = patsat::plr(s);
        nlohmann::json j{{"var", info.var},
                         {"period_length", info.period_length},
                         {"repetitions", info.repetitions}};
        std::cout << j.dump() << '\n';
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 3;
}
