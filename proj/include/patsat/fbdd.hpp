#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "patsat/cnf.hpp"
#include "patsat/slo.hpp"

namespace patsat {

using NodeRef = int32_t;
inline constexpr NodeRef kTrueRef = -1;
inline constexpr NodeRef kFalseRef = -2;
inline bool is_terminal(NodeRef r) { return r < 0; }

/// One decision node. test_var is expressed in the node's local naming space:
/// the input variable space for PR and upfront PR', the per-node renamed
/// space (always variable 0) for per-node PR'.
struct Node {
  int test_var = 0;
  NodeRef lo = kFalseRef;  // value-false child
  NodeRef hi = kTrueRef;   // value-true child
  std::string residual_key;
  int residual_var_count = 0;
};

enum class BuildMode { Pr, UpfrontPrime, PerNodePrime };

/// Rooted decision DAG with shared TRUE/FALSE terminals. PR and upfront-PR'
/// graphs are read-once over their variable space; per-node PR' graphs are
/// memoized search DAGs that decide satisfiability and preserve model
/// cardinalities but are not pointwise functions of the original variables.
struct FbddGraph {
  BuildMode mode = BuildMode::Pr;
  int num_vars = 0;
  NodeRef root = kTrueRef;
  std::vector<Node> nodes;

  std::size_t node_count() const { return nodes.size(); }
};

struct OrderingPolicy {
  enum class Kind { Canonical, Explicit, Random };
  Kind kind = Kind::Canonical;
  std::vector<int> order;  // Explicit: permutation of 0..N-1
  uint64_t seed = 0;       // Random

  static OrderingPolicy canonical() { return {}; }
  static OrderingPolicy explicit_order(std::vector<int> order);
  static OrderingPolicy random(uint64_t seed);
};

struct BuildStats {
  uint64_t unique_nonterminal_nodes = 0;
  uint64_t store_hits = 0;
  uint64_t recursive_calls = 0;
  uint64_t cra_plus_invocations = 0;
};

/// Memoizing FBDD construction on exact residual encodings. The Canonical
/// policy selects the smallest variable occurring in the current residual;
/// Explicit selects the first listed variable occurring in it.
std::pair<FbddGraph, BuildStats> build_pr(const ClauseSet& s, const OrderingPolicy& policy);

enum class PrPrimeMode { Upfront, PerNode };

struct PrPrimeResult {
  FbddGraph graph;
  BuildStats stats;
  RenamingMap map;  // upfront: the root renaming; per-node: the root-level renaming only
};

/// Upfront: one cra_plus at the root, then canonical PR over the renamed set
/// (a genuine FBDD over renamed variables). PerNode: every residual is taken
/// to its canonical s.l.o. form before key computation, so the store merges
/// renaming-isomorphic subproblems and selection is always renamed variable 0.
PrPrimeResult build_pr_prime(const ClauseSet& s, PrPrimeMode mode);

/// True iff the TRUE terminal is reachable from the root.
bool is_sat(const FbddGraph& g);

/// Evaluates the graph as a decision diagram over its own variable space.
/// Rejects per-node graphs (their nodes have no common variable space).
bool graph_eval(const FbddGraph& g, const Assignment& a);

/// Graphviz dot: one record per node with test_var and residual_key,
/// solid edge = hi, dashed = lo.
std::string export_dot(const FbddGraph& g);

/// JSON with deterministic preorder ids (hi subtree before lo subtree).
/// import_json(export_json(g)) re-exports to identical text.
std::string export_json(const FbddGraph& g);
FbddGraph import_json(const std::string& text);

}  // namespace patsat
