#include "patsat/fbdd.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <unordered_map>

namespace patsat {

OrderingPolicy OrderingPolicy::explicit_order(std::vector<int> order) {
  OrderingPolicy p;
  p.kind = Kind::Explicit;
  p.order = std::move(order);
  return p;
}

OrderingPolicy OrderingPolicy::random(uint64_t seed) {
  OrderingPolicy p;
  p.kind = Kind::Random;
  p.seed = seed;
  return p;
}

namespace {

std::vector<int> resolve_order(const OrderingPolicy& policy, int num_vars) {
  switch (policy.kind) {
    case OrderingPolicy::Kind::Canonical:
      return {};
    case OrderingPolicy::Kind::Explicit: {
      std::vector<int> check = policy.order;
      std::sort(check.begin(), check.end());
      for (int i = 0; i < num_vars; ++i) {
        if (i >= static_cast<int>(check.size()) || check[i] != i) {
          throw Error("explicit ordering must be a permutation of 0.." +
                      std::to_string(num_vars - 1));
        }
      }
      if (static_cast<int>(check.size()) != num_vars) {
        throw Error("explicit ordering must be a permutation of 0.." +
                    std::to_string(num_vars - 1));
      }
      return policy.order;
    }
    case OrderingPolicy::Kind::Random: {
      std::vector<int> order(num_vars);
      for (int i = 0; i < num_vars; ++i) order[i] = i;
      std::mt19937_64 rng(policy.seed);
      for (int i = num_vars - 1; i > 0; --i) {
        auto j = static_cast<int>(rng() % static_cast<uint64_t>(i + 1));
        std::swap(order[i], order[j]);
      }
      return order;
    }
  }
  throw Error("unknown ordering policy");
}

int select_var(const ClauseSet& s, const std::vector<int>& order) {
  auto occ = occurring_vars(s);
  if (occ.empty()) throw Error("variable selection on empty clause set");
  if (order.empty()) return occ.front();  // canonical: smallest occurring index
  std::vector<uint8_t> present(s.num_vars, 0);
  for (int v : occ) present[v] = 1;
  for (int v : order) {
    if (present[v]) return v;
  }
  throw Error("ordering does not cover the occurring variables");
}

bool has_empty_clause(const ClauseSet& s) {
  return std::any_of(s.clauses.begin(), s.clauses.end(),
                     [](const Clause& c) { return c.empty(); });
}

}  // namespace

std::pair<FbddGraph, BuildStats> build_pr(const ClauseSet& input, const OrderingPolicy& policy) {
  ClauseSet s = normalize(input);
  FbddGraph g;
  g.mode = BuildMode::Pr;
  g.num_vars = s.num_vars;
  BuildStats stats;
  if (s.clauses.empty()) {
    g.root = kTrueRef;
    return {g, stats};
  }
  if (has_empty_clause(s)) {
    g.root = kFalseRef;
    return {g, stats};
  }
  const std::vector<int> order = resolve_order(policy, s.num_vars);
  std::unordered_map<std::string, NodeRef> store;

  std::function<NodeRef(const ClauseSet&)> rec = [&](const ClauseSet& cur) -> NodeRef {
    stats.recursive_calls += 1;
    const NodeRef me = static_cast<NodeRef>(g.nodes.size());
    g.nodes.emplace_back();
    store.emplace(to_key(cur), me);
    const int var = select_var(cur, order);
    NodeRef child[2];
    for (bool value : {false, true}) {
      Residual r = assign(cur, var, value);
      NodeRef ref;
      if (r.is_true()) {
        ref = kTrueRef;
      } else if (r.is_false()) {
        ref = kFalseRef;
      } else {
        auto it = store.find(to_key(r.set));
        if (it != store.end()) {
          stats.store_hits += 1;
          ref = it->second;
        } else {
          ref = rec(r.set);
        }
      }
      child[value ? 1 : 0] = ref;
    }
    g.nodes[me] =
        Node{var, child[0], child[1], to_key(cur), occurring_var_count(cur)};
    return me;
  };
  g.root = rec(s);
  stats.unique_nonterminal_nodes = g.nodes.size();
  return {g, stats};
}

PrPrimeResult build_pr_prime(const ClauseSet& input, PrPrimeMode mode) {
  ClauseSet s = normalize(input);
  PrPrimeResult res;
  res.graph.num_vars = s.num_vars;
  if (mode == PrPrimeMode::Upfront) {
    CraPlusResult cp = cra_plus(s);
    if (cp.cycle_detected) {
      throw Error("cra_plus termination guard fired: " + cp.warnings.front());
    }
    auto [g, stats] = build_pr(cp.set, OrderingPolicy::canonical());
    res.graph = std::move(g);
    res.graph.mode = BuildMode::UpfrontPrime;
    res.stats = stats;
    res.stats.cra_plus_invocations = 1;
    res.map = cp.map;
    return res;
  }

  res.graph.mode = BuildMode::PerNodePrime;
  if (s.clauses.empty()) {
    res.graph.root = kTrueRef;
    return res;
  }
  if (has_empty_clause(s)) {
    res.graph.root = kFalseRef;
    return res;
  }
  FbddGraph& g = res.graph;
  BuildStats& stats = res.stats;
  std::unordered_map<std::string, NodeRef> store;
  bool root_map_taken = false;

  std::function<NodeRef(const ClauseSet&)> rec = [&](const ClauseSet& incoming) -> NodeRef {
    stats.recursive_calls += 1;
    CraPlusResult cf = canonical_slo_form_prenormalized(incoming);
    stats.cra_plus_invocations += 1;
    if (cf.cycle_detected) {
      throw Error("cra_plus termination guard fired: " + cf.warnings.front());
    }
    if (!root_map_taken) {
      res.map = cf.map;
      root_map_taken = true;
    }
    const std::string key = to_key(cf.set);
    if (auto it = store.find(key); it != store.end()) {
      stats.store_hits += 1;
      return it->second;
    }
    const NodeRef me = static_cast<NodeRef>(g.nodes.size());
    g.nodes.emplace_back();
    store.emplace(key, me);
    const int var = occurring_vars(cf.set).front();  // renamed variable 0
    NodeRef child[2];
    for (bool value : {false, true}) {
      Residual r = assign(cf.set, var, value);
      if (r.is_true()) {
        child[value ? 1 : 0] = kTrueRef;
      } else if (r.is_false()) {
        child[value ? 1 : 0] = kFalseRef;
      } else {
        child[value ? 1 : 0] = rec(r.set);
      }
    }
    g.nodes[me] = Node{var, child[0], child[1], key, occurring_var_count(cf.set)};
    return me;
  };
  g.root = rec(s);
  stats.unique_nonterminal_nodes = g.nodes.size();
  return res;
}

bool is_sat(const FbddGraph& g) {
  if (g.root == kTrueRef) return true;
  if (g.root == kFalseRef) return false;
  std::vector<uint8_t> visited(g.nodes.size(), 0);
  std::vector<NodeRef> stack{g.root};
  while (!stack.empty()) {
    NodeRef cur = stack.back();
    stack.pop_back();
    if (cur == kTrueRef) return true;
    if (cur == kFalseRef) continue;
    if (visited[cur]) continue;
    visited[cur] = 1;
    stack.push_back(g.nodes[cur].hi);
    stack.push_back(g.nodes[cur].lo);
  }
  return false;
}

bool graph_eval(const FbddGraph& g, const Assignment& a) {
  if (g.mode == BuildMode::PerNodePrime) {
    throw Error("per-node graphs have no common variable space; graph_eval rejected");
  }
  NodeRef cur = g.root;
  std::size_t steps = 0;
  while (!is_terminal(cur)) {
    const Node& n = g.nodes[cur];
    cur = a.get(n.test_var) ? n.hi : n.lo;
    if (++steps > g.nodes.size() + 1) throw Error("graph_eval: cycle detected");
  }
  return cur == kTrueRef;
}

namespace {

// Deterministic export order: preorder from the root, hi subtree first.
std::vector<NodeRef> preorder(const FbddGraph& g, std::vector<int32_t>& id_of) {
  std::vector<NodeRef> order;
  id_of.assign(g.nodes.size(), -1);
  std::function<void(NodeRef)> visit = [&](NodeRef ref) {
    if (is_terminal(ref) || id_of[ref] >= 0) return;
    id_of[ref] = static_cast<int32_t>(order.size());
    order.push_back(ref);
    visit(g.nodes[ref].hi);
    visit(g.nodes[ref].lo);
  };
  if (!is_terminal(g.root)) visit(g.root);
  return order;
}

std::string mode_string(BuildMode m) {
  switch (m) {
    case BuildMode::Pr: return "pr";
    case BuildMode::UpfrontPrime: return "pr-prime-upfront";
    case BuildMode::PerNodePrime: return "pr-prime-per-node";
  }
  return "pr";
}

BuildMode mode_from_string(const std::string& s) {
  if (s == "pr") return BuildMode::Pr;
  if (s == "pr-prime-upfront") return BuildMode::UpfrontPrime;
  if (s == "pr-prime-per-node") return BuildMode::PerNodePrime;
  throw Error("unknown graph mode: " + s);
}

}  // namespace

std::string export_dot(const FbddGraph& g) {
  std::vector<int32_t> id_of;
  std::vector<NodeRef> order = preorder(g, id_of);
  std::ostringstream out;
  out << "digraph fbdd {\n";
  bool uses_true = g.root == kTrueRef;
  bool uses_false = g.root == kFalseRef;
  for (NodeRef ref : order) {
    const Node& n = g.nodes[ref];
    out << "  n" << id_of[ref] << " [shape=record, label=\"{x" << n.test_var << '|'
        << n.residual_key << "}\"];\n";
    uses_true |= n.lo == kTrueRef || n.hi == kTrueRef;
    uses_false |= n.lo == kFalseRef || n.hi == kFalseRef;
  }
  if (uses_true) out << "  t [shape=box, label=\"TRUE\"];\n";
  if (uses_false) out << "  f [shape=box, label=\"FALSE\"];\n";
  auto target = [&](NodeRef ref) -> std::string {
    if (ref == kTrueRef) return "t";
    if (ref == kFalseRef) return "f";
    return "n" + std::to_string(id_of[ref]);
  };
  for (NodeRef ref : order) {
    const Node& n = g.nodes[ref];
    out << "  n" << id_of[ref] << " -> " << target(n.hi) << " [style=solid];\n";
    out << "  n" << id_of[ref] << " -> " << target(n.lo) << " [style=dashed];\n";
  }
  if (is_terminal(g.root)) {
    out << "  root [shape=plaintext, label=\"root\"];\n";
    out << "  root -> " << (g.root == kTrueRef ? 't' : 'f') << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_json(const FbddGraph& g) {
  std::vector<int32_t> id_of;
  std::vector<NodeRef> order = preorder(g, id_of);
  nlohmann::json j;
  j["mode"] = mode_string(g.mode);
  j["num_vars"] = g.num_vars;
  j["root"] = is_terminal(g.root) ? static_cast<int32_t>(g.root) : id_of[g.root];
  auto encode = [&](NodeRef ref) -> int32_t {
    return is_terminal(ref) ? static_cast<int32_t>(ref) : id_of[ref];
  };
  nlohmann::json nodes = nlohmann::json::array();
  for (NodeRef ref : order) {
    const Node& n = g.nodes[ref];
    nodes.push_back({{"id", id_of[ref]},
                     {"var", n.test_var},
                     {"lo", encode(n.lo)},
                     {"hi", encode(n.hi)},
                     {"residual_key", n.residual_key}});
  }
  j["nodes"] = std::move(nodes);
  return j.dump() + "\n";
}

FbddGraph import_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("graph json parse failure: ") + e.what());
  }
  FbddGraph g;
  try {
    g.mode = mode_from_string(j.at("mode").get<std::string>());
    g.num_vars = j.at("num_vars").get<int>();
    const auto& nodes = j.at("nodes");
    g.nodes.resize(nodes.size());
    auto decode = [&](int32_t v) -> NodeRef {
      if (v == kTrueRef || v == kFalseRef) return v;
      if (v < 0 || v >= static_cast<int32_t>(g.nodes.size())) {
        throw Error("graph json: node reference out of range");
      }
      return v;
    };
    for (const auto& n : nodes) {
      auto id = n.at("id").get<int32_t>();
      if (id < 0 || id >= static_cast<int32_t>(g.nodes.size())) {
        throw Error("graph json: id out of range");
      }
      Node& node = g.nodes[id];
      node.test_var = n.at("var").get<int>();
      node.lo = decode(n.at("lo").get<int32_t>());
      node.hi = decode(n.at("hi").get<int32_t>());
      node.residual_key = n.at("residual_key").get<std::string>();
      node.residual_var_count = occurring_var_count(from_key(node.residual_key, g.num_vars));
    }
    g.root = decode(j.at("root").get<int32_t>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("graph json schema failure: ") + e.what());
  }
  // acyclicity: DFS with colors
  std::vector<uint8_t> color(g.nodes.size(), 0);
  std::function<void(NodeRef)> dfs = [&](NodeRef ref) {
    if (is_terminal(ref)) return;
    if (color[ref] == 1) throw Error("graph json: cycle detected");
    if (color[ref] == 2) return;
    color[ref] = 1;
    dfs(g.nodes[ref].lo);
    dfs(g.nodes[ref].hi);
    color[ref] = 2;
  };
  dfs(g.root);
  return g;
}

}  // namespace patsat
