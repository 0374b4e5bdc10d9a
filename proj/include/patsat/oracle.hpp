#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "patsat/cnf.hpp"

namespace patsat {

/// Hard cap for materialized truth tables (2^24 rows).
inline constexpr int kMaxTableVars = 24;
/// Streaming evaluation (no stored table) is allowed a little further.
inline constexpr int kMaxStreamVars = 30;

/// Truth values of a formula over all rows of the canonical truth table,
/// packed 64 rows per word. Row r corresponds to row_assignment(r, n).
struct PatternDomain {
  int n = 0;
  std::vector<uint64_t> bits;

  uint64_t row_count() const { return uint64_t{1} << n; }
  bool bit(uint64_t row) const { return (bits[row >> 6] >> (row & 63)) & 1; }
  uint64_t count_ones() const;
  /// '0'/'1' string in row order, e.g. "0000111100111111...".
  std::string str() const;

  friend bool operator==(const PatternDomain&, const PatternDomain&) = default;
};

/// Pattern repetition data for the least occurring variable index of a set:
/// its truth pattern has period 2^(n-i) and repeats 2^i times.
struct PlrInfo {
  int var = 0;
  uint64_t period_length = 0;
  uint64_t repetitions = 0;
};

/// Row r of the canonical truth table: x_i gets bit (n-1-i) of r, so x_0 is
/// the slowest-changing column and x_{n-1} alternates every row.
Assignment row_assignment(uint64_t row, int n);

/// Brute-force pattern domain. The parallel kernel evaluates packed clause
/// masks; the serial reference walks rows through row_assignment + eval.
PatternDomain pattern_domain(const ClauseSet& s);
PatternDomain pattern_domain_serial(const ClauseSet& s);

/// One period of the truth pattern of literal x_i (or its negation):
/// 2^(n-i-1) zeros then 2^(n-i-1) ones; ones first for negative literals.
std::string variable_pattern(int i, bool positive, int n);

/// PLR of the minimum variable index occurring anywhere in s.
PlrInfo plr(const ClauseSet& s);

/// Number of satisfying total assignments (streaming beyond 2^24 rows).
uint64_t brute_count(const ClauseSet& s);
uint64_t brute_count_serial(const ClauseSet& s);

/// Number of distinct restricted truth tables over the variables outside Y,
/// across all 2^|Y| assignments to Y.
uint64_t subfunction_count(const ClauseSet& s, const std::vector<int>& y_vars);

}  // namespace patsat
