#include "proofgraph/corpus.hpp"

#include <map>

namespace proofgraph {

std::vector<NodeId> corpus_anchors(const Corpus& c) {
  std::vector<NodeId> out;
  for (const auto& [name, ref] : c.graph.definitions())
    out.push_back(c.graph.node(ref).children[0]);
  for (const auto& [prop, proof] : c.proven) {
    out.push_back(prop);
    out.push_back(proof);
  }
  return out;
}

namespace {

double tree_cost(const Hypergraph& g, NodeId n, const CostModel& model,
                 std::map<NodeId, double>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  const Node& node = g.node(n);
  double cost = 0.0;
  if (node.kind != NodeKind::DefRef) {
    if (node.construction)
      cost = model.edge_cost(g.edge(*node.construction));
    else
      cost = model.input_cost(node);
    for (NodeId c : node.children) cost += tree_cost(g, c, model, memo);
  }
  memo.emplace(n, cost);
  return cost;
}

}  // namespace

double term_cost(const Hypergraph& g, NodeId n, const CostModel& model) {
  std::map<NodeId, double> memo;
  return tree_cost(g, n, model, memo);
}

double corpus_cost(const Corpus& c, const CostModel& model) {
  // tree cost is context-free, so one memo serves every anchor while still
  // charging shared subterms once per anchor reference
  std::map<NodeId, double> memo;
  double total = 0.0;
  for (NodeId a : corpus_anchors(c))
    total += tree_cost(c.graph, a, model, memo);
  return total;
}

}  // namespace proofgraph
