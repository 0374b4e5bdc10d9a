#pragma once

#include <map>
#include <string>
#include <vector>

#include "patsat/cnf.hpp"

namespace patsat {

/// Occurrence matrix: rows are variables in first-occurrence order, columns
/// are clauses, cells record occurrence in either polarity.
struct ConnectionMatrix {
  std::vector<int> row_vars;
  int cols = 0;
  std::vector<std::vector<uint8_t>> cells;  // cells[r][c]

  bool cell(int r, int c) const { return cells[r][c] != 0; }
};

/// Bijection over occurring variable indices. Variables outside the map are
/// left unchanged when applied.
struct RenamingMap {
  std::map<int, int> forward;
  std::map<int, int> inverse;

  static RenamingMap identity(const std::vector<int>& vars);

  int apply(int var) const;
  int apply_inverse(int var) const;
  /// Renames every literal; literals are re-sorted within clauses.
  ClauseSet apply(const ClauseSet& s) const;
  /// this ∘ first: first is applied before this map.
  RenamingMap compose_after(const RenamingMap& first) const;
  bool is_identity() const;

  /// JSON object {"old": new, ...}.
  std::string to_json() const;
};

struct SloViolation {
  char condition;  // 'a'..'d'
  int clause_index;
  std::string message;
};

/// Result of the strong-linear-order check; holds iff violations is empty.
struct SloReport {
  bool holds = true;
  std::vector<SloViolation> violations;

  bool violates(char condition) const;
  std::string to_json() const;
};

/// Rows in first-occurrence order scanning clauses left to right, literals
/// left to right; sign ignored.
ConnectionMatrix connection_matrix(const ClauseSet& s);

/// Connection-matrix renaming: the variable at matrix row k becomes k.
/// Polarities are preserved, literals re-sorted, clause order preserved.
std::pair<ClauseSet, RenamingMap> cra(const ClauseSet& s);

/// Checks the four syntactic conditions:
///  a- literals sorted ascending within clauses,
///  b- each variable's first occurrence index exceeds every index seen earlier,
///  c- clause sizes non-decreasing,
///  d- head variable indices non-decreasing within runs of equal-size clauses
///     (size takes priority over head order).
SloReport slo_check(const ClauseSet& s);

/// Stable sort by (size, head variable, full variable-index sequence).
ClauseSet slo_sort(const ClauseSet& s);

struct CraPlusResult {
  ClauseSet set;
  RenamingMap map;       // composed over all rename iterations
  int iterations = 0;    // number of cra passes
  bool cycle_detected = false;
  std::vector<std::string> warnings;
};

/// Alternates cra and slo_sort until slo_check holds. Terminates via cycle
/// detection on the canonical encoding (the lexicographically smallest
/// encoding seen in the cycle is returned, with a warning) or after
/// 10*M iterations.
CraPlusResult cra_plus(const ClauseSet& s);

/// Like cra_plus, but additionally forces the fixed point onto the renamed
/// 0-based variable range, so renaming-isomorphic sets share one form.
/// This is the closure the per-node FBDD construction keys on.
CraPlusResult canonical_slo_form(const ClauseSet& s);

/// canonical_slo_form without the defensive normalize; the input must already
/// be normalized (residuals of normalized sets are).
CraPlusResult canonical_slo_form_prenormalized(const ClauseSet& s);

}  // namespace patsat
