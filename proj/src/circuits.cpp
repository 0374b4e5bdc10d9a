#include "patsat/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <set>
#include <sstream>

namespace patsat {

namespace {

// Gate emitter: Tseitin encodings with at most 3 literals per clause. Full
// adders are decomposed into two half adders plus an OR so the 3-literal
// bound holds.
class NetlistBuilder {
 public:
  int new_var() { return next_var_++; }

  int gate_and(int x, int y) {
    int z = new_var();
    clauses_.push_back({neg(x), neg(y), pos(z)});
    clauses_.push_back({pos(x), neg(z)});
    clauses_.push_back({pos(y), neg(z)});
    return z;
  }

  int gate_or(int x, int y) {
    int z = new_var();
    clauses_.push_back({pos(x), pos(y), neg(z)});
    clauses_.push_back({neg(x), pos(z)});
    clauses_.push_back({neg(y), pos(z)});
    return z;
  }

  int gate_xor(int x, int y) {
    int z = new_var();
    clauses_.push_back({neg(x), neg(y), neg(z)});
    clauses_.push_back({pos(x), pos(y), neg(z)});
    clauses_.push_back({pos(x), neg(y), pos(z)});
    clauses_.push_back({neg(x), pos(y), pos(z)});
    return z;
  }

  std::pair<int, int> half_adder(int x, int y) { return {gate_xor(x, y), gate_and(x, y)}; }

  std::pair<int, int> full_adder(int x, int y, int cin) {
    int t = gate_xor(x, y);
    int s = gate_xor(t, cin);
    int c1 = gate_and(x, y);
    int c2 = gate_and(t, cin);
    return {s, gate_or(c1, c2)};
  }

  /// Sums up to three operand wires at one weight; returns (sum, carry).
  std::pair<int, std::optional<int>> reduce(const std::vector<int>& ops) {
    switch (ops.size()) {
      case 1: return {ops[0], std::nullopt};
      case 2: {
        auto [s, c] = half_adder(ops[0], ops[1]);
        return {s, c};
      }
      case 3: {
        auto [s, c] = full_adder(ops[0], ops[1], ops[2]);
        return {s, c};
      }
      default: throw Error("reduce: unsupported operand count");
    }
  }

  int var_count() const { return next_var_; }
  std::vector<Clause> take_clauses() { return std::move(clauses_); }

 private:
  int next_var_ = 0;
  std::vector<Clause> clauses_;
};

}  // namespace

CircuitInstance gen_multiplier(int ibits) {
  if (ibits < 3 || ibits > 16) throw Error("gen_multiplier: ibits must be in [3, 16]");
  const int m = ibits - 1;        // first factor width
  const int n = (ibits + 1) / 2;  // second factor width
  NetlistBuilder nl;
  CircuitInstance inst;
  for (int i = 0; i < m; ++i) inst.input_a_vars.push_back(nl.new_var());
  for (int j = 0; j < n; ++j) inst.input_b_vars.push_back(nl.new_var());

  // Partial products, row-major.
  std::vector<std::vector<int>> pp(n, std::vector<int>(m));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) pp[j][i] = nl.gate_and(inst.input_a_vars[i], inst.input_b_vars[j]);
  }

  // Carry-save rows. sum[i] holds weight j+i after processing row j; the
  // carry out of position i feeds position i of the next row (weight j+i+1).
  std::vector<std::optional<int>> sum(m), carry(m);
  for (int i = 0; i < m; ++i) sum[i] = pp[0][i];
  inst.output_vars.push_back(*sum[0]);
  for (int j = 1; j < n; ++j) {
    std::vector<std::optional<int>> nsum(m), ncarry(m);
    for (int i = 0; i < m; ++i) {
      std::vector<int> ops{pp[j][i]};
      if (i + 1 < m && sum[i + 1]) ops.push_back(*sum[i + 1]);
      if (carry[i]) ops.push_back(*carry[i]);
      auto [s, c] = nl.reduce(ops);
      nsum[i] = s;
      ncarry[i] = c;
    }
    inst.output_vars.push_back(*nsum[0]);
    sum = std::move(nsum);
    carry = std::move(ncarry);
  }

  // Final ripple-carry merge over weights n .. n+m-1.
  std::optional<int> ripple;
  for (int i = 0; i < m; ++i) {
    std::vector<int> ops;
    if (i + 1 < m && sum[i + 1]) ops.push_back(*sum[i + 1]);
    if (carry[i]) ops.push_back(*carry[i]);
    if (ripple) ops.push_back(*ripple);
    if (ops.empty()) throw Error("gen_multiplier: empty merge position");
    auto [s, c] = nl.reduce(ops);
    inst.output_vars.push_back(s);
    ripple = c;
  }
  // The top weight cannot carry out: a*b < 2^(m+n).

  inst.clause_set.num_vars = nl.var_count();
  inst.clause_set.clauses = nl.take_clauses();
  inst.clause_set = normalize(inst.clause_set);
  return inst;
}

CircuitInstance gen_factorization(int ibits, uint64_t target) {
  CircuitInstance inst = gen_multiplier(ibits);
  const int width = inst.output_width();
  if (width < 64 && target >= (uint64_t{1} << width)) {
    throw Error("gen_factorization: target wider than the product output");
  }
  for (int k = 0; k < width; ++k) {
    bool bit = (target >> k) & 1;
    inst.pinned_units.push_back(static_cast<int>(inst.clause_set.clauses.size()));
    inst.clause_set.clauses.push_back({Literal{inst.output_vars[k], bit}});
  }
  return inst;
}

CircuitInstance drop_units(const CircuitInstance& inst) {
  CircuitInstance out = inst;
  std::set<int> drop(inst.pinned_units.begin(), inst.pinned_units.end());
  out.clause_set.clauses.clear();
  for (std::size_t i = 0; i < inst.clause_set.clauses.size(); ++i) {
    if (!drop.count(static_cast<int>(i))) out.clause_set.clauses.push_back(inst.clause_set.clauses[i]);
  }
  out.pinned_units.clear();
  return out;
}

std::vector<Clause> split_to_3cnf(const Clause& c, int fresh_start) {
  if (c.empty()) throw Error("split_to_3cnf: empty clause");
  if (c.size() <= 3) return {c};
  for (const auto& l : c.lits) {
    if (l.var >= fresh_start) throw Error("split_to_3cnf: fresh_start overlaps clause variables");
  }
  const auto& lits = c.lits;
  const std::size_t k = lits.size();
  std::vector<Clause> out;
  int y = fresh_start;
  out.push_back({lits[0], lits[1], pos(y)});
  for (std::size_t i = 2; i + 2 < k; ++i) {
    out.push_back({neg(y), lits[i], pos(y + 1)});
    ++y;
  }
  out.push_back({neg(y), lits[k - 2], lits[k - 1]});
  return out;
}

ClauseSet split_set_to_3cnf(const ClauseSet& s) {
  ClauseSet out;
  int fresh = s.num_vars;
  for (const auto& cl : s.clauses) {
    auto pieces = split_to_3cnf(cl, fresh);
    fresh += std::max<int>(0, static_cast<int>(cl.size()) - 3);
    for (auto& p : pieces) out.clauses.push_back(std::move(p));
  }
  out.num_vars = fresh;
  return out;
}

ClauseSet gen_random_kcnf(int n, int m, int k, uint64_t seed) {
  if (k < 1 || k > n) throw Error("gen_random_kcnf: k must be in [1, n]");
  if (n > 30) throw Error("gen_random_kcnf: n limited to 30");
  // distinct clauses available: C(n,k) * 2^k
  long double available = 1.0L;
  for (int i = 0; i < k; ++i) available = available * (n - i) / (i + 1);
  available *= std::pow(2.0L, k);
  if (static_cast<long double>(m) > available) {
    throw Error("gen_random_kcnf: m exceeds the number of distinct clauses");
  }
  std::mt19937_64 rng(seed);
  std::set<std::string> seen;
  ClauseSet out;
  out.num_vars = n;
  std::vector<int> pool(n);
  while (static_cast<int>(out.clauses.size()) < m) {
    for (int i = 0; i < n; ++i) pool[i] = i;
    Clause cl;
    for (int i = 0; i < k; ++i) {
      auto j = static_cast<int>(rng() % static_cast<uint64_t>(n - i));
      cl.lits.push_back({pool[j], (rng() & 1) != 0});
      std::swap(pool[j], pool[n - i - 1]);
    }
    std::sort(cl.lits.begin(), cl.lits.end(),
              [](const Literal& a, const Literal& b) { return a.var < b.var; });
    std::string key = to_key(ClauseSet(n, {cl}));
    if (!seen.insert(key).second) continue;
    out.clauses.push_back(std::move(cl));
  }
  return normalize(out);
}

std::string to_dimacs_with_comments(const CircuitInstance& inst) {
  std::ostringstream out;
  auto range = [](const std::vector<int>& vars) {
    return std::to_string(vars.front() + 1) + ".." + std::to_string(vars.back() + 1);
  };
  out << "c inputs_a " << range(inst.input_a_vars) << '\n';
  out << "c inputs_b " << range(inst.input_b_vars) << '\n';
  out << "c outputs";
  for (int v : inst.output_vars) out << ' ' << v + 1;
  out << '\n';
  if (!inst.pinned_units.empty()) {
    out << "c pinned_units";
    for (int idx : inst.pinned_units) out << ' ' << idx;
    out << '\n';
  }
  out << serialize_dimacs(inst.clause_set);
  return out.str();
}

}  // namespace patsat
