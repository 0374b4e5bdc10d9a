#include "patsat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <sstream>

#include "patsat/oracle.hpp"

namespace patsat {

namespace {

int rvc_of(const FbddGraph& g, NodeRef ref) {
  return is_terminal(ref) ? 0 : g.nodes[ref].residual_var_count;
}

}  // namespace

mpz_class model_count(const FbddGraph& g, int ambient_n) {
  if (ambient_n < 0) throw Error("model_count: negative ambient variable count");
  if (g.root == kTrueRef) {
    mpz_class one = 1;
    return one << static_cast<unsigned long>(ambient_n);
  }
  if (g.root == kFalseRef) return 0;
  std::vector<mpz_class> memo(g.nodes.size());
  std::vector<uint8_t> done(g.nodes.size(), 0);
  std::function<const mpz_class&(NodeRef)> count = [&](NodeRef ref) -> const mpz_class& {
    if (done[ref]) return memo[ref];
    const Node& n = g.nodes[ref];
    if (n.residual_var_count < 1) throw Error("model_count: missing residual_var_count");
    mpz_class total = 0;
    for (NodeRef child : {n.lo, n.hi}) {
      mpz_class c = child == kTrueRef ? 1 : (child == kFalseRef ? 0 : count(child));
      int free_vars = n.residual_var_count - 1 - rvc_of(g, child);
      if (free_vars < 0) throw Error("model_count: child residual larger than parent");
      total += c << static_cast<unsigned long>(free_vars);
    }
    memo[ref] = std::move(total);
    done[ref] = 1;
    return memo[ref];
  };
  const mpz_class& root_count = count(g.root);
  int free_vars = ambient_n - rvc_of(g, g.root);
  if (free_vars < 0) throw Error("model_count: ambient universe smaller than root residual");
  return root_count << static_cast<unsigned long>(free_vars);
}

int tree_depth_bound(const FbddGraph& g) {
  if (is_terminal(g.root)) return 0;
  std::vector<int> depth(g.nodes.size(), -1);
  std::function<int(NodeRef)> dp = [&](NodeRef ref) -> int {
    if (is_terminal(ref)) return 0;
    if (depth[ref] >= 0) return depth[ref];
    depth[ref] = 0;  // sentinel against malformed cycles; graphs are acyclic
    return depth[ref] = 1 + std::min(dp(g.nodes[ref].lo), dp(g.nodes[ref].hi));
  };
  int best = 0;
  for (NodeRef ref = 0; ref < static_cast<NodeRef>(g.nodes.size()); ++ref) {
    best = std::max(best, dp(ref));
  }
  return best;
}

bool exact_complete_tree(const FbddGraph& g, int m) {
  if (m < 1) throw Error("exact_complete_tree: depth must be >= 1");
  if (g.nodes.size() > kMaxExactTreeNodes) {
    throw Error("exact_complete_tree: graph exceeds the backtracking guard of " +
                std::to_string(kMaxExactTreeNodes) + " nodes");
  }
  std::vector<uint8_t> used(g.nodes.size(), 0);
  std::vector<NodeRef> trail;
  std::function<bool(NodeRef, int)> try_build = [&](NodeRef ref, int depth) -> bool {
    if (is_terminal(ref) || used[ref]) return false;
    const std::size_t start = trail.size();
    used[ref] = 1;
    trail.push_back(ref);
    if (depth == 1) return true;
    if (try_build(g.nodes[ref].lo, depth - 1) && try_build(g.nodes[ref].hi, depth - 1)) {
      return true;
    }
    while (trail.size() > start) {
      used[trail.back()] = 0;
      trail.pop_back();
    }
    return false;
  };
  for (NodeRef ref = 0; ref < static_cast<NodeRef>(g.nodes.size()); ++ref) {
    trail.clear();
    if (try_build(ref, m)) return true;  // a failed root try unwinds its own marks
  }
  return false;
}

bool function_equiv(const FbddGraph& g, const ClauseSet& s, const RenamingMap& map) {
  if (g.mode == BuildMode::PerNodePrime) {
    throw Error("function_equiv: per-node graphs are not pointwise-meaningful");
  }
  if (s.num_vars > 20) throw Error("function_equiv limited to 20 variables");
  const uint64_t rows = uint64_t{1} << s.num_vars;
  for (uint64_t r = 0; r < rows; ++r) {
    Assignment a = row_assignment(r, s.num_vars);
    Assignment graph_a(s.num_vars);
    for (int v = 0; v < s.num_vars; ++v) graph_a.set(v, a.get(map.apply_inverse(v)));
    if (graph_eval(g, graph_a) != eval(s, a)) return false;
  }
  return true;
}

std::string TreeReport::to_json() const {
  std::ostringstream out;
  out << "{\"dp_depth_bound\": " << dp_depth_bound << ", \"exact_depth\": ";
  if (exact_depth) {
    out << *exact_depth;
  } else {
    out << "\"not computed\"";
  }
  out << "}";
  return out.str();
}

TreeReport tree_report(const FbddGraph& g) {
  TreeReport report;
  report.dp_depth_bound = tree_depth_bound(g);
  if (g.nodes.size() > kMaxExactTreeNodes) return report;
  int exact = 0;
  for (int m = report.dp_depth_bound; m >= 1; --m) {
    if (exact_complete_tree(g, m)) {
      exact = m;
      break;
    }
  }
  report.exact_depth = exact;
  return report;
}

std::vector<GrowthRecord> growth_table(
    const std::vector<std::tuple<std::string, int, uint64_t>>& records) {
  std::vector<GrowthRecord> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& [label, n_vars, node_count] = records[i];
    if (node_count == 0) throw Error("growth_table: zero node count for " + label);
    GrowthRecord rec;
    rec.label = label;
    rec.n_vars = n_vars;
    rec.node_count = node_count;
    if (i > 0) {
      const auto& [plabel, pn, pcount] = records[i - 1];
      if (n_vars <= pn) {
        throw Error("growth_table: n_vars must be strictly increasing (" + plabel + " -> " +
                    label + ")");
      }
      rec.distance = n_vars - pn;
      // log space: (count / prev)^(1/distance)
      double log_growth = std::log(static_cast<double>(node_count)) -
                          std::log(static_cast<double>(pcount));
      rec.base_estimate = std::exp(log_growth / rec.distance);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::string growth_csv(const std::vector<GrowthRecord>& records) {
  std::ostringstream out;
  out << "label,n_vars,node_count,distance,base_estimate\n";
  char buf[64];
  for (const auto& r : records) {
    out << r.label << ',' << r.n_vars << ',' << r.node_count << ',';
    if (r.base_estimate) {
      std::snprintf(buf, sizeof buf, "%d,%.10g", r.distance, *r.base_estimate);
      out << buf;
    } else {
      out << ',';
    }
    out << '\n';
  }
  return out.str();
}

std::vector<std::tuple<std::string, int, uint64_t>> parse_growth_csv(std::istream& in) {
  std::vector<std::tuple<std::string, int, uint64_t>> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && line.rfind("label", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    std::istringstream ls(line);
    std::string label, n_str, count_str;
    if (!std::getline(ls, label, ',') || !std::getline(ls, n_str, ',') ||
        !std::getline(ls, count_str, ',')) {
      throw Error("growth csv: expected label,n_vars,node_count in line: " + line);
    }
    out.emplace_back(label, std::stoi(n_str), std::stoull(count_str));
  }
  return out;
}

}  // namespace patsat
