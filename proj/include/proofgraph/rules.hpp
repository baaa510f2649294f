#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "proofgraph/kernel.hpp"

namespace proofgraph {

// An extension rule: applied to an ordered tuple of existing nodes, it either
// produces a node or declines (wrong shapes).
struct Rule {
  std::string color;
  int arity = 1;
  std::function<std::optional<NodeId>(Kernel&, const std::vector<NodeId>&)>
      apply;
};

// Built-in structural rules: "and", "implies", "not" over statement forms,
// "succ" over numeral-shaped nodes.
std::vector<Rule> default_rules();
std::vector<Rule> rules_by_color(const std::vector<std::string>& colors);

// One extension layer: every listed rule applied to every input tuple drawn
// from `candidates` (or all live nodes when empty), capped by budget.
// Deterministic: rules in given order, tuples in lexicographic NodeId order.
// Returns the newly added nodes.
// When `touch` is non-empty, only tuples containing at least one of its
// members are considered (used by neighborhood balls).
std::vector<NodeId> extend_in_place(Kernel& k, const std::vector<Rule>& rules,
                                    int budget,
                                    const std::vector<NodeId>& candidates = {},
                                    const std::vector<NodeId>& touch = {});

// Snapshot variant: copies the graph, extends the copy once.
Hypergraph extend(const Hypergraph& g, const std::vector<std::string>& colors,
                  int budget);

struct Neighborhood {
  Hypergraph graph;          // snapshot after d extension layers
  std::vector<NodeId> members;  // the ball around the seed, seed first
};

// N(s, d): nodes producible from {s} within d rule layers (inputs drawn from
// the accumulated ball), capped per layer by budget.
Neighborhood neighborhood(const Hypergraph& g, NodeId seed, int d,
                          const std::vector<std::string>& colors,
                          int budget);

}  // namespace proofgraph
