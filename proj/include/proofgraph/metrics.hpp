#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "proofgraph/kernel.hpp"

namespace proofgraph {

struct CostModel {
  // Per-edge cost; the unit model charges 1 per edge with inputs and 0 for
  // the nullary root-adjacent constructors (Zero, Var, Atom).
  std::function<double(const HyperEdge&)> edge_cost;
  // Per-input-node cost for nodes without any construction edge.
  std::function<double(const Node&)> input_cost;
  static CostModel unit();
  static CostModel scaled(double lambda);
};

struct ComplexityReport {
  NodeId node = kNoNode;
  double value = 0.0;
  Hypergraph witness;  // structural view of the minimizing construction
  bool exact = true;
};

struct EfficiencyReport {
  double value = 0.0;            // statement-length sum / statement length
  double proof_complexity = 0.0; // numerator (sum of statement lengths)
  double edge_complexity = 0.0;  // alternate numerator: edge-cost of closure
  double statement_length = 0.0; // denominator
  NodeId best_proof = kNoNode;
  bool exact = true;
};

struct HubScore {
  NodeId node = kNoNode;
  int out_degree = 0;
  int in_degree = 0;
  double betweenness = 0.0;
};

// Minimal extension-layer index over construction and computation edges;
// roots and nullary constructors sit at depth 0.
int depth(const Hypergraph& g, NodeId node);

// Edge-cost sum over a whole (sub)graph: construction-class edges plus
// input-node costs; typing and computation edges are free.
double complexity(const Hypergraph& g, const CostModel& model);

// Least-cost construction of `node`, minimizing over every recorded way of
// producing each ancestor (alternative derivations and computation-edge
// preimages included). Budget caps the number of candidate assignments.
ComplexityReport min_complexity(const Hypergraph& g, NodeId node,
                                const CostModel& model, int budget);

// Shortest surface serialization of any recorded representation of `node`
// (the node itself plus every computation-edge ancestor), with definition
// names folded where a subterm is a defined body. Token count, parens free.
ComplexityReport length(const Hypergraph& g, NodeId node, int budget);

// Statement-length-sum proof complexity over statement-typed subterms,
// minimized over recorded proofs of `prop`, divided by length(prop).
EfficiencyReport efficiency(Hypergraph& g, NodeId prop, int budget);

// Conjunction-only growth over the newest layer; returns layer sizes
// [k, k^2, k^4, ...], length layers+1. layers > 4 needs the override.
std::vector<std::size_t> growth_experiment(std::uint32_t k, int layers,
                                           bool override_guard = false);

// Degrees plus sampled-source betweenness over the bipartite
// node/hyperedge expansion. samples >= node count makes it exact.
std::vector<HubScore> hub_scores(const Hypergraph& g, int samples = 64,
                                 std::uint64_t seed = 0);

// CSV artifacts (one row per node / per layer).
std::string metrics_csv(Hypergraph& g, int budget);
std::string growth_csv(const std::vector<std::size_t>& layers);

}  // namespace proofgraph
