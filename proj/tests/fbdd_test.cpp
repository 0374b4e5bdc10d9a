#include <doctest.h>

#include <set>
#include <unordered_set>

#include "patsat/circuits.hpp"
#include "patsat/fbdd.hpp"
#include "patsat/oracle.hpp"
#include "test_util.hpp"

using namespace patsat;
using test::cs;

namespace {

uint64_t pr_nodes(const ClauseSet& s, const OrderingPolicy& policy) {
  return build_pr(s, policy).second.unique_nonterminal_nodes;
}

// Walks every root-to-terminal path checking that no variable repeats.
bool read_once(const FbddGraph& g) {
  if (is_terminal(g.root)) return true;
  std::vector<std::pair<NodeRef, std::set<int>>> stack{{g.root, {}}};
  while (!stack.empty()) {
    auto [ref, seen] = stack.back();
    stack.pop_back();
    if (is_terminal(ref)) continue;
    const Node& n = g.nodes[ref];
    if (seen.count(n.test_var)) return false;
    auto next = seen;
    next.insert(n.test_var);
    stack.push_back({n.lo, next});
    stack.push_back({n.hi, next});
  }
  return true;
}

}  // namespace

TEST_CASE("PR node counts for the worked 2CNF family") {
  CHECK(pr_nodes(test::sample_s(), OrderingPolicy::canonical()) == 10);
  CHECK(pr_nodes(test::sample_s(), OrderingPolicy::explicit_order({2, 1, 3, 0, 4})) == 5);
  CHECK(pr_nodes(test::sample_s_suffix(), OrderingPolicy::canonical()) == 4);
  CHECK(pr_nodes(test::sample_s_prefix(), OrderingPolicy::canonical()) == 6);
  CHECK(pr_nodes(test::sample_renamed(), OrderingPolicy::canonical()) == 5);
  CHECK(pr_nodes(test::sample_renamed_prefix(), OrderingPolicy::canonical()) == 3);
}

TEST_CASE("PR on the 3CNF comparison set") {
  // Canonical selection keyed on exact residuals gives 11 nonterminal nodes
  // here; the reference count of 22 for this set arises only under other
  // selection orders. The acceptance suite reports the discrepancy.
  auto [g, stats] = build_pr(test::sample_3cnf(), OrderingPolicy::canonical());
  CHECK(stats.unique_nonterminal_nodes == 11);
  CHECK(stats.recursive_calls == 11);
  CHECK(is_sat(g));
}

TEST_CASE("per-node PR' reproduces the 6-node graph") {
  PrPrimeResult res = build_pr_prime(test::sample_3cnf(), PrPrimeMode::PerNode);
  CHECK(res.stats.unique_nonterminal_nodes == 6);
  CHECK(res.graph.nodes[res.graph.root].residual_key == "!0,1;2,3;0,!2,4;0,3,5");
  CHECK(is_sat(res.graph));
  // every node selects its local variable 0
  for (const auto& n : res.graph.nodes) CHECK(n.test_var == 0);
  // calls reach the store after renaming, so hits are part of the call count
  CHECK(res.stats.recursive_calls == res.stats.unique_nonterminal_nodes + res.stats.store_hits);
  CHECK(res.stats.cra_plus_invocations == res.stats.recursive_calls);
}

TEST_CASE("upfront PR' builds a read-once graph over renamed variables") {
  PrPrimeResult res = build_pr_prime(test::sample_3cnf(), PrPrimeMode::Upfront);
  CHECK(res.stats.cra_plus_invocations == 1);
  CHECK(res.graph.mode == BuildMode::UpfrontPrime);
  CHECK(read_once(res.graph));
  CHECK(res.map.forward.at(1) == 0);  // variable 1 heads the sorted set
}

TEST_CASE("trivial builds") {
  auto [empty_g, empty_stats] = build_pr(cs(3, {}), OrderingPolicy::canonical());
  CHECK(empty_g.root == kTrueRef);
  CHECK(empty_stats.unique_nonterminal_nodes == 0);
  CHECK(is_sat(empty_g));

  ClauseSet falsified(2, {Clause{}});
  auto [false_g, false_stats] = build_pr(falsified, OrderingPolicy::canonical());
  CHECK(false_g.root == kFalseRef);
  CHECK_FALSE(is_sat(false_g));

  PrPrimeResult unit = build_pr_prime(cs(1, {{0}}), PrPrimeMode::PerNode);
  CHECK(unit.stats.unique_nonterminal_nodes == 1);
  CHECK(unit.graph.nodes[0].lo == kFalseRef);
  CHECK(unit.graph.nodes[0].hi == kTrueRef);
  CHECK(unit.map.is_identity());
}

TEST_CASE("contradiction yields a single node with two FALSE edges") {
  auto [g, stats] = build_pr(cs(1, {{0}, {-1}}), OrderingPolicy::canonical());
  CHECK(stats.unique_nonterminal_nodes == 1);
  CHECK_FALSE(is_sat(g));
}

TEST_CASE("explicit ordering must be a permutation") {
  CHECK_THROWS_AS(build_pr(test::sample_s(), OrderingPolicy::explicit_order({0, 1})), Error);
  CHECK_THROWS_AS(build_pr(test::sample_s(), OrderingPolicy::explicit_order({0, 0, 1, 2, 3})),
                  Error);
}

TEST_CASE("read-once holds for PR and upfront PR' graphs") {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    ClauseSet s = test::random_kcnf(3 + seed % 9, 2 + seed % 16, 2 + seed % 2, 50000 + seed);
    CHECK(read_once(build_pr(s, OrderingPolicy::canonical()).first));
    CHECK(read_once(build_pr(s, OrderingPolicy::random(seed)).first));
    CHECK(read_once(build_pr_prime(s, PrPrimeMode::Upfront).graph));
  }
}

TEST_CASE("store soundness: unique keys, hits create in-edges to existing nodes") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    ClauseSet s = test::random_kcnf(4 + seed % 8, 3 + seed % 14, 2 + seed % 2, 60000 + seed);
    auto [g, stats] = build_pr(s, OrderingPolicy::canonical());
    std::unordered_set<std::string> keys;
    uint64_t in_edges = 0;
    for (const auto& n : g.nodes) {
      CHECK(keys.insert(n.residual_key).second);
      CHECK(n.residual_var_count >= 1);
      in_edges += !is_terminal(n.lo);
      in_edges += !is_terminal(n.hi);
    }
    // every nonterminal in-edge either discovered a node or hit the store
    CHECK(in_edges == (g.nodes.size() - 1) + stats.store_hits);
  }
}

TEST_CASE("satisfiability is invariant across ordering policies") {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    ClauseSet s = test::random_kcnf(3 + seed % 9, 2 + seed % 18, 2 + seed % 2, 70000 + seed);
    bool want = brute_count(s) > 0;
    CHECK(is_sat(build_pr(s, OrderingPolicy::canonical()).first) == want);
    CHECK(is_sat(build_pr(s, OrderingPolicy::random(seed * 31 + 1)).first) == want);
    CHECK(is_sat(build_pr_prime(s, PrPrimeMode::Upfront).graph) == want);
    CHECK(is_sat(build_pr_prime(s, PrPrimeMode::PerNode).graph) == want);
  }
}

TEST_CASE("determinism: identical inputs give byte-identical exports") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    ClauseSet s = test::random_kcnf(5 + seed % 6, 4 + seed % 10, 3, 80000 + seed);
    CHECK(export_json(build_pr(s, OrderingPolicy::canonical()).first) ==
          export_json(build_pr(s, OrderingPolicy::canonical()).first));
    CHECK(export_json(build_pr_prime(s, PrPrimeMode::PerNode).graph) ==
          export_json(build_pr_prime(s, PrPrimeMode::PerNode).graph));
  }
}

TEST_CASE("dot export shows one record per node") {
  auto [g, stats] = build_pr(cs(1, {{0}}), OrderingPolicy::canonical());
  std::string dot = export_dot(g);
  CHECK(dot.find("n0 [shape=record, label=\"{x0|0}\"]") != std::string::npos);
  CHECK(dot.find("n0 -> t [style=solid]") != std::string::npos);
  CHECK(dot.find("n0 -> f [style=dashed]") != std::string::npos);

  auto [five_node, st2] = build_pr(test::sample_s(), OrderingPolicy::explicit_order({2, 1, 3, 0, 4}));
  std::string dot2 = export_dot(five_node);
  CHECK(st2.unique_nonterminal_nodes == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(dot2.find("n" + std::to_string(i) + " [shape=record") != std::string::npos);
  }
}

TEST_CASE("json round trip is identity") {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    ClauseSet s = test::random_kcnf(3 + seed % 10, 2 + seed % 16, 2 + seed % 2, 90000 + seed);
    FbddGraph g = seed % 2 ? build_pr(s, OrderingPolicy::canonical()).first
                           : build_pr_prime(s, PrPrimeMode::PerNode).graph;
    std::string text = export_json(g);
    CHECK(export_json(import_json(text)) == text);
  }
}

TEST_CASE("import_json validates structure") {
  CHECK_THROWS_AS(import_json("{"), Error);
  CHECK_THROWS_AS(import_json("{\"mode\":\"pr\",\"num_vars\":1,\"root\":5,\"nodes\":[]}"), Error);
  // self-loop
  CHECK_THROWS_AS(
      import_json("{\"mode\":\"pr\",\"num_vars\":1,\"root\":0,\"nodes\":[{\"id\":0,\"var\":0,"
                  "\"lo\":0,\"hi\":-1,\"residual_key\":\"0\"}]}"),
      Error);
}

TEST_CASE("graph_eval rejects per-node graphs") {
  PrPrimeResult res = build_pr_prime(test::sample_3cnf(), PrPrimeMode::PerNode);
  Assignment a(6);
  for (int v = 0; v < 6; ++v) a.set(v, true);
  CHECK_THROWS_AS(graph_eval(res.graph, a), Error);
}
