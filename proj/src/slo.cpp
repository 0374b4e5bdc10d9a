#include "patsat/slo.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

namespace patsat {

RenamingMap RenamingMap::identity(const std::vector<int>& vars) {
  RenamingMap m;
  for (int v : vars) {
    m.forward[v] = v;
    m.inverse[v] = v;
  }
  return m;
}

int RenamingMap::apply(int var) const {
  auto it = forward.find(var);
  return it == forward.end() ? var : it->second;
}

int RenamingMap::apply_inverse(int var) const {
  auto it = inverse.find(var);
  return it == inverse.end() ? var : it->second;
}

ClauseSet RenamingMap::apply(const ClauseSet& s) const {
  ClauseSet out;
  out.num_vars = s.num_vars;
  out.clauses.reserve(s.clauses.size());
  for (const auto& cl : s.clauses) {
    Clause ncl;
    ncl.lits.reserve(cl.lits.size());
    for (const auto& l : cl.lits) {
      int nv = apply(l.var);
      if (nv < 0 || nv >= s.num_vars) {
        throw Error("renaming maps variable " + std::to_string(l.var) + " outside the universe");
      }
      ncl.lits.push_back({nv, l.positive});
    }
    std::sort(ncl.lits.begin(), ncl.lits.end());
    out.clauses.push_back(std::move(ncl));
  }
  return out;
}

RenamingMap RenamingMap::compose_after(const RenamingMap& first) const {
  std::set<int> domain;
  std::set<int> first_image;
  for (const auto& [k, v] : first.forward) {
    domain.insert(k);
    first_image.insert(v);
  }
  for (const auto& [k, v] : forward) {
    if (!first_image.count(k)) domain.insert(k);
  }
  RenamingMap out;
  for (int d : domain) {
    int mid = first.apply(d);
    int fin = apply(mid);
    out.forward[d] = fin;
    out.inverse[fin] = d;
  }
  return out;
}

bool RenamingMap::is_identity() const {
  for (const auto& [k, v] : forward)
    if (k != v) return false;
  return true;
}

std::string RenamingMap::to_json() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [k, v] : forward) {
    if (!first) out << ", ";
    first = false;
    out << '"' << k << "\": " << v;
  }
  out << '}';
  return out.str();
}

bool SloReport::violates(char condition) const {
  for (const auto& v : violations)
    if (v.condition == condition) return true;
  return false;
}

std::string SloReport::to_json() const {
  std::ostringstream out;
  out << "{\"holds\": " << (holds ? "true" : "false") << ", \"violations\": [";
  bool first = true;
  for (const auto& v : violations) {
    if (!first) out << ", ";
    first = false;
    out << "{\"condition\": \"" << v.condition << "\", \"clause\": " << v.clause_index
        << ", \"message\": \"" << v.message << "\"}";
  }
  out << "]}";
  return out.str();
}

ConnectionMatrix connection_matrix(const ClauseSet& s) {
  ConnectionMatrix m;
  m.cols = static_cast<int>(s.clauses.size());
  std::unordered_map<int, int> row_of;
  for (const auto& cl : s.clauses) {
    for (const auto& l : cl.lits) {
      if (row_of.emplace(l.var, static_cast<int>(m.row_vars.size())).second) {
        m.row_vars.push_back(l.var);
      }
    }
  }
  m.cells.assign(m.row_vars.size(), std::vector<uint8_t>(m.cols, 0));
  for (int c = 0; c < m.cols; ++c) {
    for (const auto& l : s.clauses[c].lits) m.cells[row_of[l.var]][c] = 1;
  }
  return m;
}

std::pair<ClauseSet, RenamingMap> cra(const ClauseSet& s) {
  ConnectionMatrix m = connection_matrix(s);
  RenamingMap map;
  for (std::size_t row = 0; row < m.row_vars.size(); ++row) {
    map.forward[m.row_vars[row]] = static_cast<int>(row);
    map.inverse[static_cast<int>(row)] = m.row_vars[row];
  }
  return {map.apply(s), map};
}

SloReport slo_check(const ClauseSet& s) {
  SloReport report;
  auto add = [&](char cond, int idx, std::string msg) {
    report.violations.push_back({cond, idx, std::move(msg)});
  };
  // a- literals ascending (strictly, per variable) within each clause
  for (std::size_t i = 0; i < s.clauses.size(); ++i) {
    const auto& lits = s.clauses[i].lits;
    for (std::size_t k = 1; k < lits.size(); ++k) {
      if (lits[k].var <= lits[k - 1].var) {
        add('a', static_cast<int>(i), "literals not ascending in clause " + std::to_string(i));
        break;
      }
    }
  }
  // b- every first occurrence exceeds all indices seen before it
  {
    int max_seen = -1;
    std::set<int> seen;
    for (std::size_t i = 0; i < s.clauses.size(); ++i) {
      for (const auto& l : s.clauses[i].lits) {
        if (!seen.count(l.var)) {
          if (l.var < max_seen) {
            add('b', static_cast<int>(i),
                "variable " + std::to_string(l.var) + " first occurs in clause " +
                    std::to_string(i) + " after larger index " + std::to_string(max_seen));
          }
          seen.insert(l.var);
        }
        max_seen = std::max(max_seen, l.var);
      }
    }
  }
  // c- shorter clauses first
  for (std::size_t i = 1; i < s.clauses.size(); ++i) {
    if (s.clauses[i].size() < s.clauses[i - 1].size()) {
      add('c', static_cast<int>(i),
          "clause " + std::to_string(i) + " is shorter than its predecessor");
    }
  }
  // d- ascending head literals; condition c has priority, so heads are only
  // compared within runs of equal-size clauses
  for (std::size_t i = 1; i < s.clauses.size(); ++i) {
    if (s.clauses[i].size() != s.clauses[i - 1].size()) continue;
    if (s.clauses[i].empty()) continue;
    if (s.clauses[i].head_var() < s.clauses[i - 1].head_var()) {
      add('d', static_cast<int>(i),
          "head " + std::to_string(s.clauses[i].head_var()) + " of clause " + std::to_string(i) +
              " after head " + std::to_string(s.clauses[i - 1].head_var()));
    }
  }
  report.holds = report.violations.empty();
  return report;
}

ClauseSet slo_sort(const ClauseSet& s) {
  ClauseSet out = s;
  std::stable_sort(out.clauses.begin(), out.clauses.end(), [](const Clause& a, const Clause& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    if (a.empty()) return false;
    // head order, then lexicographic on the variable-index sequences
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.lits[i].var != b.lits[i].var) return a.lits[i].var < b.lits[i].var;
    }
    return false;
  });
  return out;
}

namespace {

// Allocation-light check equivalent to slo_check(s).holds, optionally also
// requiring the occurring variables to be exactly 0..K-1.
bool slo_holds_fast(const ClauseSet& s, bool require_zero_based, std::vector<uint8_t>& seen) {
  seen.assign(s.num_vars, 0);
  int max_seen = -1;
  int max_var = -1;
  int distinct = 0;
  std::size_t prev_size = 0;
  int prev_head = -1;
  bool first_clause = true;
  for (const auto& cl : s.clauses) {
    int prior = -1;
    for (const auto& l : cl.lits) {
      if (l.var <= prior) return false;  // a
      prior = l.var;
      if (!seen[l.var]) {
        if (l.var < max_seen) return false;  // b
        seen[l.var] = 1;
        ++distinct;
      }
      max_seen = std::max(max_seen, l.var);
      max_var = std::max(max_var, l.var);
    }
    if (!first_clause) {
      if (cl.size() < prev_size) return false;  // c
      if (cl.size() == prev_size && !cl.empty() && cl.lits[0].var < prev_head) return false;  // d
    }
    first_clause = false;
    prev_size = cl.size();
    prev_head = cl.empty() ? -1 : cl.lits[0].var;
  }
  if (require_zero_based && distinct != max_var + 1) return false;
  return true;
}

// One cra + slo_sort round, updating the original->current rename table.
void rename_sort_step(ClauseSet& s, std::vector<int>& composed, std::vector<int>& rename) {
  rename.assign(s.num_vars, -1);
  int next = 0;
  for (const auto& cl : s.clauses) {
    for (const auto& l : cl.lits) {
      if (rename[l.var] < 0) rename[l.var] = next++;
    }
  }
  for (auto& cl : s.clauses) {
    for (auto& l : cl.lits) l.var = rename[l.var];
    std::sort(cl.lits.begin(), cl.lits.end());
  }
  s = slo_sort(s);
  for (auto& c : composed) {
    if (c >= 0 && rename[c] >= 0) c = rename[c];
  }
}

CraPlusResult rename_sort_fixpoint(ClauseSet working, bool force_zero_based) {
  const int max_iters = 10 * std::max<int>(1, static_cast<int>(working.clauses.size()));
  std::vector<int> composed(working.num_vars, -1);
  for (int v : occurring_vars(working)) composed[v] = v;

  std::vector<uint8_t> seen_scratch;
  std::vector<int> rename_scratch;
  std::vector<std::string> history;
  std::unordered_map<std::string, std::size_t> first_index;
  const ClauseSet input = working;

  int iterations = 0;
  bool cycle = false;
  std::string cycle_reason;
  while (!slo_holds_fast(working, force_zero_based, seen_scratch)) {
    std::string key = to_key(working);
    auto [it, inserted] = first_index.emplace(std::move(key), history.size());
    if (!inserted || iterations > max_iters) {
      // pick the lexicographically smallest encoding of the non-converging
      // window and rebuild the state at that iteration
      std::size_t from = inserted ? 0 : it->second;
      std::size_t best = from;
      for (std::size_t i = from + 1; i < history.size(); ++i) {
        if (history[i] < history[best]) best = i;
      }
      working = input;
      composed.assign(input.num_vars, -1);
      for (int v : occurring_vars(input)) composed[v] = v;
      for (std::size_t i = 0; i < best; ++i) {
        rename_sort_step(working, composed, rename_scratch);
      }
      iterations = static_cast<int>(best);
      cycle = true;
      cycle_reason = inserted ? "iteration cap" : "cycle";
      break;
    }
    history.push_back(it->first);
    rename_sort_step(working, composed, rename_scratch);
    ++iterations;
  }

  CraPlusResult res;
  res.set = std::move(working);
  res.iterations = iterations;
  res.cycle_detected = cycle;
  if (cycle) {
    res.warnings.push_back("rename loop did not reach a fixed point (" + cycle_reason +
                           "); returning the lexicographically smallest encoding seen");
  }
  for (int v = 0; v < static_cast<int>(composed.size()); ++v) {
    if (composed[v] >= 0) {
      res.map.forward[v] = composed[v];
      res.map.inverse[composed[v]] = v;
    }
  }
  return res;
}

}  // namespace

CraPlusResult cra_plus(const ClauseSet& s) { return rename_sort_fixpoint(normalize(s), false); }

CraPlusResult canonical_slo_form(const ClauseSet& s) {
  return rename_sort_fixpoint(normalize(s), true);
}

CraPlusResult canonical_slo_form_prenormalized(const ClauseSet& s) {
  return rename_sort_fixpoint(s, true);
}

}  // namespace patsat
