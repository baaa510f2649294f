// Brute-force reference implementations of the metric definitions, shared by
// the unit tests and the acceptance gate. Deliberately naive: enumerate every
// choice function / every recorded representation and take the minimum.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "proofgraph/metrics.hpp"
#include "proofgraph/syntax.hpp"

namespace proofgraph::oracles {

inline std::vector<EdgeId> all_options(const Hypergraph& g, NodeId n) {
  auto out = g.constructions_of(n);
  for (EdgeId e : g.computations_into(n)) out.push_back(e);
  return out;
}

// brute force over every choice function on the relevant nodes
inline double oracle_min_complexity(const Hypergraph& g, NodeId target) {
  // relevant = nodes reachable from target through any option edge
  std::vector<NodeId> relevant;
  std::set<NodeId> seen{target};
  std::vector<NodeId> work{target};
  while (!work.empty()) {
    NodeId n = work.back();
    work.pop_back();
    if (all_options(g, n).empty()) continue;
    relevant.push_back(n);
    for (EdgeId e : all_options(g, n))
      for (NodeId i : g.edge(e).inputs)
        if (seen.insert(i).second) work.push_back(i);
  }
  std::sort(relevant.begin(), relevant.end());

  double total = 1;
  for (NodeId n : relevant) total *= all_options(g, n).size();
  if (total > 2e6)
    throw std::runtime_error("oracle_min_complexity: search space too large");

  double best = 1e300;
  std::vector<std::size_t> pick(relevant.size(), 0);
  while (true) {
    // closure from target under this choice function, with cycle detection
    std::map<NodeId, int> state;
    std::set<EdgeId> used;
    bool cyclic = false;
    std::function<void(NodeId)> visit = [&](NodeId n) {
      if (cyclic) return;
      auto it = state.find(n);
      if (it != state.end()) {
        if (it->second == 1) cyclic = true;
        return;
      }
      state[n] = 1;
      auto opts = all_options(g, n);
      if (!opts.empty()) {
        auto pos = std::lower_bound(relevant.begin(), relevant.end(), n) -
                   relevant.begin();
        EdgeId e = opts[pick[static_cast<std::size_t>(pos)]];
        used.insert(e);
        for (NodeId i : g.edge(e).inputs) visit(i);
      }
      state[n] = 2;
    };
    visit(target);
    if (!cyclic) {
      double cost = 0;
      for (EdgeId e : used)
        if (!g.edge(e).inputs.empty()) cost += 1;
      best = std::min(best, cost);
    }
    // odometer
    std::size_t i = 0;
    for (; i < relevant.size(); ++i) {
      if (++pick[i] < all_options(g, relevant[i]).size()) break;
      pick[i] = 0;
    }
    if (i == relevant.size()) break;
  }
  return best;
}

// serialization-based token count with definition folding
inline int oracle_tokens(const Hypergraph& g, NodeId n,
                         const std::map<NodeId, std::string>& folds) {
  if (auto it = folds.find(n); it != folds.end())
    return token_count(it->second);
  const Node& node = g.node(n);
  if (node.kind == NodeKind::DefRef || node.children.empty())
    return token_count(print_term(g, n));
  // rebuild the surface string with folded children
  int total = 0;
  switch (node.kind) {
    case NodeKind::Lambda:
    case NodeKind::PiForm:
    case NodeKind::SigmaForm:
      total = 2;  // head + binder name
      break;
    case NodeKind::App:
      total = 0;
      break;
    default:
      total = 1;
  }
  for (NodeId c : node.children) total += oracle_tokens(g, c, folds);
  return total;
}

inline double oracle_length(const Hypergraph& g, NodeId node) {
  std::map<NodeId, std::string> folds;
  for (const auto& [name, ref] : g.definitions())
    folds.emplace(g.node(ref).children[0], name);
  std::set<NodeId> reps{node};
  std::vector<NodeId> work{node};
  while (!work.empty()) {
    NodeId cur = work.back();
    work.pop_back();
    for (EdgeId e : g.computations_into(cur)) {
      NodeId pred = g.edge(e).inputs[0];
      if (reps.insert(pred).second) work.push_back(pred);
    }
  }
  double best = 1e300;
  for (NodeId r : reps)
    best = std::min(best, double(oracle_tokens(g, r, folds)));
  return best;
}

}  // namespace proofgraph::oracles
