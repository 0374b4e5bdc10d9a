#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "patsat/fbdd.hpp"

namespace patsat {

/// Exact model count over the ambient variable universe. Counts are computed
/// from per-node residual variable cardinalities rather than path lengths, so
/// the same recursion is valid for PR graphs and both PR' modes (cardinalities
/// are renaming-invariant).
mpz_class model_count(const FbddGraph& g, int ambient_n);

/// Cheap necessary-condition bound: with depth(terminal) = 0 and
/// depth(v) = 1 + min(depth(lo), depth(hi)), returns the maximum over all
/// nodes. If the bound is < m, no complete binary subtree of depth m exists.
int tree_depth_bound(const FbddGraph& g);

inline constexpr std::size_t kMaxExactTreeNodes = 10000;

/// Exact check: do 2^m - 1 distinct nonterminal nodes form a node-disjoint
/// complete binary tree of depth m via lo/hi edges? Backtracking search
/// rooted at every node; guarded by kMaxExactTreeNodes.
bool exact_complete_tree(const FbddGraph& g, int m);

/// Pointwise equivalence of a function-preserving graph (PR or upfront PR')
/// against a clause set, walking every row of the canonical truth table.
/// `map` carries the upfront renaming (identity for PR graphs).
bool function_equiv(const FbddGraph& g, const ClauseSet& s, const RenamingMap& map);

struct TreeReport {
  int dp_depth_bound = 0;
  std::optional<int> exact_depth;  // empty when the backtracking guard applies

  std::string to_json() const;
};

/// dp bound plus, when the graph is small enough, the largest m for which a
/// node-disjoint complete binary subtree of depth m exists.
TreeReport tree_report(const FbddGraph& g);

struct GrowthRecord {
  std::string label;
  int n_vars = 0;
  uint64_t node_count = 0;
  int distance = 0;                    // n_vars delta vs previous record
  std::optional<double> base_estimate;  // (count/prev)^(1/distance), log-space
};

/// Per consecutive pair of records: distance and estimated exponential base.
std::vector<GrowthRecord> growth_table(
    const std::vector<std::tuple<std::string, int, uint64_t>>& records);

/// CSV with header "label,n_vars,node_count,distance,base_estimate".
std::string growth_csv(const std::vector<GrowthRecord>& records);
std::vector<std::tuple<std::string, int, uint64_t>> parse_growth_csv(std::istream& in);

}  // namespace patsat
