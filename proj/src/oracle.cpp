#include "patsat/oracle.hpp"

#include <algorithm>
#include <bit>

namespace patsat {
namespace {

struct ClauseMask {
  uint64_t pos = 0;
  uint64_t neg = 0;
};

// Row bit for variable i is (n-1-i), matching the canonical table: x_0 is the
// most significant row bit.
std::vector<ClauseMask> clause_masks(const ClauseSet& s) {
  std::vector<ClauseMask> masks;
  masks.reserve(s.clauses.size());
  for (const auto& cl : s.clauses) {
    ClauseMask m;
    for (const auto& l : cl.lits) {
      uint64_t bit = uint64_t{1} << (s.num_vars - 1 - l.var);
      (l.positive ? m.pos : m.neg) |= bit;
    }
    masks.push_back(m);
  }
  return masks;
}

inline bool eval_row(const std::vector<ClauseMask>& masks, uint64_t row) {
  for (const auto& m : masks) {
    if ((row & m.pos) == 0 && (~row & m.neg) == 0) return false;
  }
  return true;
}

void check_table_guard(const ClauseSet& s) {
  if (s.num_vars > kMaxTableVars) {
    throw Error("pattern domain limited to " + std::to_string(kMaxTableVars) +
                " variables, got " + std::to_string(s.num_vars));
  }
}

}  // namespace

uint64_t PatternDomain::count_ones() const {
  uint64_t total = 0;
  for (uint64_t w : bits) total += std::popcount(w);
  return total;
}

std::string PatternDomain::str() const {
  std::string out;
  out.reserve(row_count());
  for (uint64_t r = 0; r < row_count(); ++r) out += bit(r) ? '1' : '0';
  return out;
}

Assignment row_assignment(uint64_t row, int n) {
  if (n < 0 || n > kMaxStreamVars || row >= (uint64_t{1} << n)) {
    throw Error("row_assignment: row out of range");
  }
  Assignment a(n);
  for (int i = 0; i < n; ++i) a.set(i, (row >> (n - 1 - i)) & 1);
  return a;
}

PatternDomain pattern_domain(const ClauseSet& s) {
  check_table_guard(s);
  PatternDomain pd;
  pd.n = s.num_vars;
  const uint64_t rows = pd.row_count();
  const int64_t words = static_cast<int64_t>((rows + 63) / 64);
  pd.bits.assign(words, 0);
  const auto masks = clause_masks(s);
  #pragma omp parallel for schedule(static)
  for (int64_t w = 0; w < words; ++w) {
    uint64_t word = 0;
    const uint64_t base = static_cast<uint64_t>(w) * 64;
    const uint64_t limit = std::min<uint64_t>(64, rows - base);
    for (uint64_t k = 0; k < limit; ++k) {
      if (eval_row(masks, base + k)) word |= uint64_t{1} << k;
    }
    pd.bits[w] = word;
  }
  return pd;
}

PatternDomain pattern_domain_serial(const ClauseSet& s) {
  check_table_guard(s);
  PatternDomain pd;
  pd.n = s.num_vars;
  pd.bits.assign((pd.row_count() + 63) / 64, 0);
  for (uint64_t r = 0; r < pd.row_count(); ++r) {
    if (eval(s, row_assignment(r, s.num_vars))) pd.bits[r >> 6] |= uint64_t{1} << (r & 63);
  }
  return pd;
}

std::string variable_pattern(int i, bool positive, int n) {
  if (i < 0 || i >= n) throw Error("variable_pattern: index out of range");
  const uint64_t half = uint64_t{1} << (n - i - 1);
  std::string out(2 * half, positive ? '0' : '1');
  for (uint64_t k = half; k < 2 * half; ++k) out[k] = positive ? '1' : '0';
  return out;
}

PlrInfo plr(const ClauseSet& s) {
  auto occ = occurring_vars(s);
  if (occ.empty()) throw Error("plr: clause set contains no literal");
  PlrInfo info;
  info.var = occ.front();
  info.period_length = uint64_t{1} << (s.num_vars - info.var);
  info.repetitions = uint64_t{1} << info.var;
  return info;
}

uint64_t brute_count(const ClauseSet& s) {
  if (s.num_vars > kMaxStreamVars) {
    throw Error("brute_count limited to " + std::to_string(kMaxStreamVars) + " variables");
  }
  const auto masks = clause_masks(s);
  const int64_t rows = int64_t{1} << s.num_vars;
  int64_t total = 0;
  #pragma omp parallel for schedule(static) reduction(+ : total)
  for (int64_t r = 0; r < rows; ++r) {
    total += eval_row(masks, static_cast<uint64_t>(r)) ? 1 : 0;
  }
  return static_cast<uint64_t>(total);
}

uint64_t brute_count_serial(const ClauseSet& s) {
  if (s.num_vars > kMaxStreamVars) {
    throw Error("brute_count limited to " + std::to_string(kMaxStreamVars) + " variables");
  }
  uint64_t total = 0;
  const uint64_t rows = uint64_t{1} << s.num_vars;
  for (uint64_t r = 0; r < rows; ++r) {
    if (eval(s, row_assignment(r, s.num_vars))) ++total;
  }
  return total;
}

uint64_t subfunction_count(const ClauseSet& s, const std::vector<int>& y_vars) {
  check_table_guard(s);
  if (y_vars.size() > 20) throw Error("subfunction_count: |Y| limited to 20");
  std::vector<int> y = y_vars;
  std::sort(y.begin(), y.end());
  if (std::adjacent_find(y.begin(), y.end()) != y.end()) {
    throw Error("subfunction_count: duplicate variable in Y");
  }
  for (int v : y) {
    if (v < 0 || v >= s.num_vars) throw Error("subfunction_count: Y variable out of range");
  }
  std::vector<int> rest;
  {
    std::vector<uint8_t> in_y(s.num_vars, 0);
    for (int v : y) in_y[v] = 1;
    for (int v = 0; v < s.num_vars; ++v)
      if (!in_y[v]) rest.push_back(v);
  }
  const auto masks = clause_masks(s);
  const int64_t y_count = int64_t{1} << y.size();
  const uint64_t z_rows = uint64_t{1} << rest.size();
  const std::size_t words = (z_rows + 63) / 64;
  std::vector<std::vector<uint64_t>> tables(y_count, std::vector<uint64_t>(words, 0));
  #pragma omp parallel for schedule(static)
  for (int64_t yi = 0; yi < y_count; ++yi) {
    uint64_t y_bits = 0;
    for (std::size_t k = 0; k < y.size(); ++k) {
      if ((yi >> k) & 1) y_bits |= uint64_t{1} << (s.num_vars - 1 - y[k]);
    }
    for (uint64_t zi = 0; zi < z_rows; ++zi) {
      uint64_t row = y_bits;
      for (std::size_t k = 0; k < rest.size(); ++k) {
        if ((zi >> k) & 1) row |= uint64_t{1} << (s.num_vars - 1 - rest[k]);
      }
      if (eval_row(masks, row)) tables[yi][zi >> 6] |= uint64_t{1} << (zi & 63);
    }
  }
  std::sort(tables.begin(), tables.end());
  return static_cast<uint64_t>(std::unique(tables.begin(), tables.end()) - tables.begin());
}

}  // namespace patsat
