#include "patsat/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <unordered_set>

namespace patsat {

namespace {

// Duplicate-clause detection without string keys.
struct LitsHash {
  std::size_t operator()(const std::vector<Literal>& lits) const {
    std::size_t h = 1469598103934665603ull;
    for (const auto& l : lits) {
      h ^= static_cast<std::size_t>(l.var) * 2 + (l.positive ? 1 : 0);
      h *= 1099511628211ull;
    }
    return h;
  }
};

using ClauseKeySet = std::unordered_set<std::vector<Literal>, LitsHash>;

}  // namespace

int Clause::head_var() const {
  if (lits.empty()) throw Error("head_var on empty clause");
  int h = lits[0].var;
  for (const auto& l : lits) h = std::min(h, l.var);
  return h;
}

bool Assignment::get(int var) const {
  if (!has(var)) throw Error("assignment has no value for variable " + std::to_string(var));
  return values_[var] != 0;
}

void Assignment::set(int var, bool value) {
  if (var < 0) throw Error("negative variable index");
  if (var >= size()) values_.resize(var + 1, kUnset);
  values_[var] = value ? 1 : 0;
}

void Assignment::unset(int var) {
  if (var >= 0 && var < size()) values_[var] = kUnset;
}

ClauseSet parse_dimacs(std::istream& in, std::vector<std::string>* warnings) {
  auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };
  std::string line;
  int num_vars = -1;
  long declared_clauses = -1;
  ClauseSet out;
  Clause current;
  bool in_clause = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == 'c') continue;
    if (line[start] == 'p') {
      std::istringstream ls(line.substr(start + 1));
      std::string fmt;
      if (!(ls >> fmt >> num_vars >> declared_clauses) || fmt != "cnf" || num_vars < 0 ||
          declared_clauses < 0) {
        throw Error("malformed DIMACS header: " + line);
      }
      continue;
    }
    if (num_vars < 0) throw Error("clause data before DIMACS header");
    std::istringstream body(line);
    long lit;
    while (body >> lit) {
      if (lit == 0) {
        out.clauses.push_back(current);
        current.lits.clear();
        in_clause = false;
        continue;
      }
      long v = std::labs(lit);
      if (v > num_vars) {
        throw Error("variable " + std::to_string(v) + " out of range (header declares " +
                    std::to_string(num_vars) + ")");
      }
      current.lits.push_back({static_cast<int>(v - 1), lit > 0});
      in_clause = true;
    }
    if (body.fail() && !body.eof()) throw Error("non-integer token in clause data: " + line);
  }
  if (num_vars < 0) throw Error("missing DIMACS header");
  if (in_clause) {
    warn("final clause not 0-terminated");
    out.clauses.push_back(current);
  }
  if (declared_clauses != static_cast<long>(out.clauses.size())) {
    warn("header declares " + std::to_string(declared_clauses) + " clauses, found " +
         std::to_string(out.clauses.size()));
  }
  out.num_vars = num_vars;
  return out;
}

ClauseSet parse_dimacs(const std::string& text, std::vector<std::string>* warnings) {
  std::istringstream in(text);
  return parse_dimacs(in, warnings);
}

std::string serialize_dimacs(const ClauseSet& s) {
  std::ostringstream out;
  out << "p cnf " << s.num_vars << ' ' << s.clauses.size() << '\n';
  for (const auto& cl : s.clauses) {
    for (const auto& l : cl.lits) out << (l.positive ? l.var + 1 : -(l.var + 1)) << ' ';
    out << "0\n";
  }
  return out.str();
}

ClauseSet normalize(const ClauseSet& s) {
  ClauseSet out;
  out.num_vars = s.num_vars;
  ClauseKeySet seen;
  for (const auto& cl : s.clauses) {
    std::vector<Literal> lits = cl.lits;
    std::sort(lits.begin(), lits.end());
    Clause ncl;
    bool tautology = false;
    for (const auto& l : lits) {
      if (l.var < 0 || l.var >= s.num_vars) {
        throw Error("literal variable " + std::to_string(l.var) + " outside universe of " +
                    std::to_string(s.num_vars));
      }
      if (!ncl.lits.empty() && ncl.lits.back().var == l.var) {
        if (ncl.lits.back().positive != l.positive) {
          tautology = true;
          break;
        }
        continue;  // duplicate literal
      }
      ncl.lits.push_back(l);
    }
    if (tautology) continue;
    if (!seen.insert(ncl.lits).second) continue;
    out.clauses.push_back(std::move(ncl));
  }
  return out;
}

Residual assign(const ClauseSet& s, int var, bool value) {
  if (var < 0 || var >= s.num_vars) {
    throw Error("assign: variable " + std::to_string(var) + " out of range");
  }
  Residual res;
  res.set.num_vars = s.num_vars;
  ClauseKeySet seen;
  for (const auto& cl : s.clauses) {
    bool satisfied = false;
    Clause ncl;
    ncl.lits.reserve(cl.lits.size());
    for (const auto& l : cl.lits) {
      if (l.var == var) {
        if (l.positive == value) {
          satisfied = true;
          break;
        }
        continue;  // falsified literal dropped
      }
      ncl.lits.push_back(l);
    }
    if (satisfied) continue;
    if (ncl.lits.empty()) {
      res.kind = ResidualKind::False;
      res.set.clauses.clear();
      return res;
    }
    if (!seen.insert(ncl.lits).second) continue;
    res.set.clauses.push_back(std::move(ncl));
  }
  res.kind = res.set.clauses.empty() ? ResidualKind::True : ResidualKind::Set;
  return res;
}

bool eval(const ClauseSet& s, const Assignment& a) {
  for (const auto& cl : s.clauses) {
    bool satisfied = false;
    for (const auto& l : cl.lits) {
      if (!a.has(l.var)) {
        throw Error("eval: assignment not total over occurring variables (missing " +
                    std::to_string(l.var) + ")");
      }
      if (a.get(l.var) == l.positive) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return false;
  }
  return true;
}

std::vector<int> occurring_vars(const ClauseSet& s) {
  std::vector<uint8_t> present(s.num_vars, 0);
  for (const auto& cl : s.clauses)
    for (const auto& l : cl.lits) present[l.var] = 1;
  std::vector<int> out;
  for (int v = 0; v < s.num_vars; ++v)
    if (present[v]) out.push_back(v);
  return out;
}

int occurring_var_count(const ClauseSet& s) {
  std::vector<uint8_t> present(s.num_vars, 0);
  int count = 0;
  for (const auto& cl : s.clauses) {
    for (const auto& l : cl.lits) {
      if (!present[l.var]) {
        present[l.var] = 1;
        ++count;
      }
    }
  }
  return count;
}

std::string to_key(const ClauseSet& s) {
  std::string out;
  std::size_t lits = 0;
  for (const auto& cl : s.clauses) lits += cl.size();
  out.reserve(8 * lits);
  char buf[16];
  bool first_clause = true;
  for (const auto& cl : s.clauses) {
    if (!first_clause) out += ';';
    first_clause = false;
    bool first_lit = true;
    for (const auto& l : cl.lits) {
      if (!first_lit) out += ',';
      first_lit = false;
      if (!l.positive) out += '!';
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, l.var);
      out.append(buf, end);
    }
  }
  return out;
}

ClauseSet from_key(const std::string& key, int num_vars) {
  ClauseSet out;
  out.num_vars = num_vars;
  if (key.empty()) return out;
  std::size_t pos = 0;
  Clause current;
  while (pos <= key.size()) {
    std::size_t next = key.find_first_of(",;", pos);
    std::string tok = key.substr(pos, (next == std::string::npos ? key.size() : next) - pos);
    bool positive = true;
    if (!tok.empty() && tok[0] == '!') {
      positive = false;
      tok.erase(0, 1);
    }
    if (tok.empty()) throw Error("from_key: empty literal token");
    current.lits.push_back({std::stoi(tok), positive});
    if (next == std::string::npos) {
      out.clauses.push_back(current);
      break;
    }
    if (key[next] == ';') {
      out.clauses.push_back(current);
      current.lits.clear();
    }
    pos = next + 1;
  }
  return out;
}

}  // namespace patsat
