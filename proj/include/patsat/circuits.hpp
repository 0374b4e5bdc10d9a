#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "patsat/cnf.hpp"

namespace patsat {

/// A circuit-shaped 3CNF instance. Input variables come first (a, then b),
/// gate variables follow in construction order. For every total assignment to
/// the inputs there is exactly one satisfying extension to the gate variables,
/// and the output bits then encode a*b.
struct CircuitInstance {
  ClauseSet clause_set;
  std::vector<int> input_a_vars;   // first factor bits, LSB first
  std::vector<int> input_b_vars;   // second factor bits, LSB first
  std::vector<int> output_vars;    // product bits, LSB first
  std::vector<int> pinned_units;   // clause indices of factorization units

  int output_width() const { return static_cast<int>(output_vars.size()); }
};

/// Carry-save array multiplier with a final ripple-carry merge, Tseitin
/// encoded into clauses of at most 3 literals. The first factor has ibits-1
/// bits, the second ceil(ibits/2) bits.
CircuitInstance gen_multiplier(int ibits);

/// gen_multiplier plus one unit clause per output bit pinning the product to
/// `target`; removing exactly those units recovers the multiplication
/// instance.
CircuitInstance gen_factorization(int ibits, uint64_t target);

/// Removes the pinned unit clauses again (drop-units mode).
CircuitInstance drop_units(const CircuitInstance& inst);

/// Equisatisfiable chain splitting of a wide clause:
/// (l1 v l2 v y1)(!y1 v l3 v y2)...(!y_{k-3} v l_{k-1} v l_k) with fresh y's
/// starting at fresh_start. Clauses of size <= 3 are returned unchanged.
std::vector<Clause> split_to_3cnf(const Clause& c, int fresh_start);

/// Applies split_to_3cnf across a set, allocating fresh variables above
/// num_vars. Equisatisfiable with the input (not equivalent in general).
ClauseSet split_set_to_3cnf(const ClauseSet& s);

/// m distinct clauses of k distinct variables each, uniform without
/// replacement, fair-coin polarities, deterministic per seed; normalized.
ClauseSet gen_random_kcnf(int n, int m, int k, uint64_t seed);

/// DIMACS plus comment lines recording the input/output variable indices
/// (1-based), e.g. "c inputs_a 1..3".
std::string to_dimacs_with_comments(const CircuitInstance& inst);

}  // namespace patsat
