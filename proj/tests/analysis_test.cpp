#include <doctest.h>

#include <cmath>
#include <sstream>

#include "patsat/analysis.hpp"
#include "patsat/circuits.hpp"
#include "patsat/oracle.hpp"
#include "test_util.hpp"

using namespace patsat;
using test::cs;

TEST_CASE("model_count basics") {
  auto empty = build_pr(cs(3, {}), OrderingPolicy::canonical()).first;
  CHECK(model_count(empty, 3) == 8);
  auto unit = build_pr(cs(1, {{0}}), OrderingPolicy::canonical()).first;
  CHECK(model_count(unit, 1) == 1);
  auto contradiction = build_pr(cs(1, {{0}, {-1}}), OrderingPolicy::canonical()).first;
  CHECK(model_count(contradiction, 1) == 0);
}

TEST_CASE("model_count of the 3CNF comparison set equals the oracle in every mode") {
  ClauseSet s = test::sample_3cnf();
  uint64_t want = brute_count(s);  // frozen: 26
  CHECK(want == 26);
  CHECK(model_count(build_pr(s, OrderingPolicy::canonical()).first, 6) == 26);
  CHECK(model_count(build_pr_prime(s, PrPrimeMode::Upfront).graph, 6) == 26);
  CHECK(model_count(build_pr_prime(s, PrPrimeMode::PerNode).graph, 6) == 26);
}

TEST_CASE("model_count equals brute force on random instances, all modes") {
  for (uint64_t seed = 0; seed < 150; ++seed) {
    int n = 3 + static_cast<int>(seed % 10);
    ClauseSet s = test::random_kcnf(n, 1 + seed % (2 * n), 2 + seed % 2, 100000 + seed);
    mpz_class want(static_cast<unsigned long>(brute_count(s)));
    CHECK(model_count(build_pr(s, OrderingPolicy::canonical()).first, n) == want);
    CHECK(model_count(build_pr(s, OrderingPolicy::random(seed)).first, n) == want);
    CHECK(model_count(build_pr_prime(s, PrPrimeMode::Upfront).graph, n) == want);
    CHECK(model_count(build_pr_prime(s, PrPrimeMode::PerNode).graph, n) == want);
  }
}

TEST_CASE("model_count respects the ambient universe") {
  auto unit = build_pr(cs(4, {{0}}), OrderingPolicy::canonical()).first;
  CHECK(model_count(unit, 4) == 8);  // three free variables
  CHECK_THROWS_AS(model_count(unit, 0), Error);
}

namespace {

// Hand-built complete binary tree of depth 3: seven nodes, leaves fall to
// terminals. (A clause-set route would share subgraphs; this fixture cannot.)
FbddGraph complete_tree_fixture() {
  FbddGraph g;
  g.mode = BuildMode::Pr;
  g.num_vars = 3;
  g.root = 0;
  auto node = [&](int var, NodeRef lo, NodeRef hi, const std::string& key) {
    g.nodes.push_back({var, lo, hi, key, 3 - var});
  };
  node(0, 1, 2, "a");
  node(1, 3, 4, "b");
  node(1, 5, 6, "c");
  node(2, kTrueRef, kFalseRef, "d");
  node(2, kFalseRef, kTrueRef, "e");
  node(2, kTrueRef, kTrueRef, "f");
  node(2, kFalseRef, kTrueRef, "g");
  return g;
}

// Chain: every node has one terminal child.
FbddGraph chain_fixture(int length) {
  FbddGraph g;
  g.mode = BuildMode::Pr;
  g.num_vars = length;
  g.root = 0;
  for (int i = 0; i < length; ++i) {
    NodeRef next = i + 1 < length ? i + 1 : kTrueRef;
    g.nodes.push_back({i, kFalseRef, next, "k" + std::to_string(i), length - i});
  }
  return g;
}

}  // namespace

TEST_CASE("tree_depth_bound basics") {
  auto unit = build_pr(cs(1, {{0}}), OrderingPolicy::canonical()).first;
  CHECK(tree_depth_bound(unit) == 1);
  CHECK(tree_depth_bound(complete_tree_fixture()) == 3);
  CHECK(tree_depth_bound(chain_fixture(6)) == 1);
}

TEST_CASE("exact_complete_tree on fixtures") {
  CHECK(exact_complete_tree(complete_tree_fixture(), 3));
  CHECK(exact_complete_tree(complete_tree_fixture(), 2));
  for (int m = 2; m <= 4; ++m) CHECK_FALSE(exact_complete_tree(chain_fixture(6), m));
  CHECK_THROWS_AS(exact_complete_tree(chain_fixture(2), 0), Error);
}

TEST_CASE("the parity set separates the dp bound from the exact check") {
  // 3-variable odd parity: residuals merge across branches, so the dp bound
  // reaches 3 while no node-disjoint complete tree of depth 3 exists.
  ClauseSet parity = cs(3, {{0, 1, 2}, {0, -2, -3}, {-1, 1, -3}, {-1, -2, 2}});
  auto [g, stats] = build_pr(parity, OrderingPolicy::canonical());
  CHECK(stats.unique_nonterminal_nodes == 5);
  CHECK(tree_depth_bound(g) == 3);
  CHECK_FALSE(exact_complete_tree(g, 3));
  CHECK(exact_complete_tree(g, 2));
  CHECK(subfunction_count(parity, {0}) == 2);
}

TEST_CASE("bound soundness: dp bound below m forbids exact trees") {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    ClauseSet s = test::random_kcnf(4 + seed % 9, 3 + seed % 20, 2 + seed % 2, 110000 + seed);
    auto g = build_pr_prime(s, PrPrimeMode::PerNode).graph;
    int bound = tree_depth_bound(g);
    for (int m = bound + 1; m <= bound + 2; ++m) CHECK_FALSE(exact_complete_tree(g, m));
  }
}

TEST_CASE("2CNF per-node graphs stay within depth bound 2") {
  for (uint64_t seed = 0; seed < 80; ++seed) {
    ClauseSet s = test::random_kcnf(4 + seed % 10, 4 + seed % 25, 2, 120000 + seed);
    auto g = build_pr_prime(s, PrPrimeMode::PerNode).graph;
    CHECK(tree_depth_bound(g) <= 2);
  }
}

TEST_CASE("function_equiv validates PR and upfront graphs pointwise") {
  auto [s_graph, st] = build_pr(test::sample_s(), OrderingPolicy::canonical());
  CHECK(function_equiv(s_graph, test::sample_s(), RenamingMap{}));

  auto pos_g = build_pr(cs(1, {{0}}), OrderingPolicy::canonical()).first;
  CHECK_FALSE(function_equiv(pos_g, cs(1, {{-1}}), RenamingMap{}));

  for (uint64_t seed = 0; seed < 80; ++seed) {
    int n = 3 + static_cast<int>(seed % 10);
    ClauseSet s = test::random_kcnf(n, 1 + seed % 18, 2 + seed % 2, 130000 + seed);
    CHECK(function_equiv(build_pr(s, OrderingPolicy::random(seed)).first, s, RenamingMap{}));
    PrPrimeResult up = build_pr_prime(s, PrPrimeMode::Upfront);
    CHECK(function_equiv(up.graph, s, up.map));
  }

  PrPrimeResult pn = build_pr_prime(test::sample_3cnf(), PrPrimeMode::PerNode);
  CHECK_THROWS_AS(function_equiv(pn.graph, test::sample_3cnf(), pn.map), Error);
}

TEST_CASE("tree_report combines the bound with the exact search") {
  TreeReport r = tree_report(complete_tree_fixture());
  CHECK(r.dp_depth_bound == 3);
  REQUIRE(r.exact_depth.has_value());
  CHECK(*r.exact_depth == 3);
  CHECK(r.to_json() == "{\"dp_depth_bound\": 3, \"exact_depth\": 3}");
}

TEST_CASE("growth_table reproduces the reference base estimates") {
  std::vector<std::tuple<std::string, int, uint64_t>> readings{
      {"4", 12, 50},       {"5", 22, 139},      {"7", 52, 1303},    {"8", 68, 2389},
      {"10", 116, 17806},  {"11", 138, 26475},  {"13", 204, 166407},{"14", 232, 219374},
      {"16", 316, 1236655},{"17", 350, 1519226},{"19", 452, 7946916},{"20", 492, 9345347},
      {"22", 612, 46489244},{"23", 658, 53104412}};
  const double expected[] = {1.1076, 1.077, 1.039, 1.043, 1.018, 1.028, 1.01,
                             1.02,   1.006, 1.016, 1.004, 1.013, 1.003};
  auto table = growth_table(readings);
  REQUIRE(table.size() == readings.size());
  CHECK_FALSE(table[0].base_estimate.has_value());
  for (std::size_t i = 1; i < table.size(); ++i) {
    REQUIRE(table[i].base_estimate.has_value());
    CHECK(std::abs(*table[i].base_estimate - expected[i - 1]) < 0.001);
  }
  CHECK(table[1].distance == 10);
  CHECK(std::abs(*table[1].base_estimate - 1.1076) < 0.001);
}

TEST_CASE("growth_table edge cases") {
  auto flat = growth_table({{"a", 10, 100}, {"b", 15, 100}});
  CHECK(*flat[1].base_estimate == 1.0);
  CHECK_THROWS_AS(growth_table({{"a", 10, 5}, {"b", 10, 6}}), Error);
  CHECK_THROWS_AS(growth_table({{"a", 10, 0}}), Error);
}

TEST_CASE("growth csv round trip") {
  auto table = growth_table({{"m4", 12, 50}, {"m5", 22, 139}});
  std::string csv = growth_csv(table);
  CHECK(csv.rfind("label,n_vars,node_count,distance,base_estimate\n", 0) == 0);
  CHECK(csv.find("m4,12,50,,\n") != std::string::npos);
  CHECK(csv.find("m5,22,139,10,1.1076549") != std::string::npos);
  std::istringstream in("label,n_vars,node_count\nm4,12,50\nm5,22,139\n");
  auto parsed = parse_growth_csv(in);
  REQUIRE(parsed.size() == 2);
  CHECK(std::get<2>(parsed[1]) == 139);
}
