#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace patsat {

/// Error type for all contract violations and malformed inputs.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A propositional literal: 0-based variable index plus polarity.
struct Literal {
  int var = 0;
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal& a, const Literal& b) {
    // Variable index orders first; ordering is sign-agnostic apart from
    // the tie-break (negative before positive, for determinism only).
    if (auto c = a.var <=> b.var; c != 0) return c;
    return (a.positive ? 1 : 0) <=> (b.positive ? 1 : 0);
  }
};

inline Literal pos(int var) { return {var, true}; }
inline Literal neg(int var) { return {var, false}; }

/// A disjunction of literals. Normalized clauses keep literals sorted by
/// ascending variable index with no duplicate variable.
struct Clause {
  std::vector<Literal> lits;

  Clause() = default;
  Clause(std::initializer_list<Literal> ls) : lits(ls) {}
  explicit Clause(std::vector<Literal> ls) : lits(std::move(ls)) {}

  bool empty() const { return lits.empty(); }
  std::size_t size() const { return lits.size(); }
  /// Minimum variable index; the head literal of a sorted clause.
  int head_var() const;

  friend bool operator==(const Clause&, const Clause&) = default;
};

/// An ordered conjunction of clauses over variables 0..num_vars-1.
/// The variable universe is carried explicitly and never shrinks under
/// substitution; the set of occurring variables is a derived query.
struct ClauseSet {
  int num_vars = 0;
  std::vector<Clause> clauses;

  ClauseSet() = default;
  ClauseSet(int n, std::vector<Clause> cs) : num_vars(n), clauses(std::move(cs)) {}

  bool empty() const { return clauses.empty(); }
  std::size_t size() const { return clauses.size(); }

  friend bool operator==(const ClauseSet&, const ClauseSet&) = default;
};

/// Partial truth assignment over 0..n-1.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int n) : values_(n, kUnset) {}

  int size() const { return static_cast<int>(values_.size()); }
  bool has(int var) const { return var >= 0 && var < size() && values_[var] != kUnset; }
  bool get(int var) const;
  void set(int var, bool value);
  void unset(int var);

 private:
  static constexpr int8_t kUnset = -1;
  std::vector<int8_t> values_;
};

enum class ResidualKind { True, False, Set };

/// Result of substituting a value into a clause set. The Set variant never
/// contains an empty clause and is never the empty set; those collapse to
/// False and True respectively.
struct Residual {
  ResidualKind kind = ResidualKind::True;
  ClauseSet set;

  bool is_true() const { return kind == ResidualKind::True; }
  bool is_false() const { return kind == ResidualKind::False; }
  bool is_set() const { return kind == ResidualKind::Set; }
};

/// Parses DIMACS CNF. Variable k maps to index k-1. A mismatch between the
/// header clause count and the actual number of clauses is reported through
/// `warnings` (when given) but is not fatal.
ClauseSet parse_dimacs(std::istream& in, std::vector<std::string>* warnings = nullptr);
ClauseSet parse_dimacs(const std::string& text, std::vector<std::string>* warnings = nullptr);

/// Emits DIMACS; parse_dimacs(serialize_dimacs(s)) is structurally equal to s.
std::string serialize_dimacs(const ClauseSet& s);

/// Sorts literals by ascending variable index within each clause, collapses
/// duplicate literals, drops tautological clauses and duplicate clauses
/// (first occurrence kept). Clause order is otherwise preserved.
ClauseSet normalize(const ClauseSet& s);

/// Substitutes a value for one variable: satisfied clauses are removed,
/// falsified literals are dropped, duplicate residual clauses collapse.
/// num_vars is unchanged.
Residual assign(const ClauseSet& s, int var, bool value);

/// Ground-truth satisfaction. `a` must be total over the occurring variables.
bool eval(const ClauseSet& s, const Assignment& a);

/// Ascending list of variables occurring (either polarity) in s.
std::vector<int> occurring_vars(const ClauseSet& s);
int occurring_var_count(const ClauseSet& s);

/// Canonical text encoding used as memo key and in golden tests:
/// clauses joined by ';', literals by ',', negation prefix '!',
/// e.g. "!0,1;2,3;0,!2,4;0,3,5".
std::string to_key(const ClauseSet& s);

/// Inverse of to_key. num_vars must be supplied (the encoding does not carry it).
ClauseSet from_key(const std::string& key, int num_vars);

}  // namespace patsat
