#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proofgraph/corpus.hpp"

namespace proofgraph {

// A term pattern: a tree of concrete constructors with typed parameter slots
// ("holes"). Slots are numbered in pre-order and each appears exactly once.
// A hole under d pattern binders captures its subterm as a d-ary function of
// those binders, so shapes like "lam k. lam v. succ(...v...)" are minable.
struct Pattern {
  struct PNode {
    bool hole = false;
    NodeKind kind = NodeKind::Sort;
    Payload payload;
    std::vector<int> children;  // indices into pool; empty for holes/DefRef
  };
  std::vector<PNode> pool;
  int root = 0;

  int size() const;   // number of concrete nodes
  int arity() const;  // number of holes
  std::string key() const;  // canonical serialization, used for ordering
};

struct Abstraction {
  Pattern pattern;
  NodeId body = kNoNode;  // lambda-wrapped body term in the corpus graph
  double cost = 0.0;      // description cost of the body
  double utility = 0.0;   // simulated rewrite gain on the source corpus
  int occurrences = 0;    // matching sites at mining time
  std::string name;       // empty until adopted
};

struct RewriteOutcome {
  int occurrences = 0;      // sites replaced by a DefRef application
  double cost_before = 0.0; // corpus cost before the abstraction was defined
  double cost_after = 0.0;  // corpus cost after the rewrite
  double utility = 0.0;     // cost_before - cost_after
  std::string strategy = "greedy-leftmost-nonoverlapping";
};

struct Adoption {
  std::string name;
  int round = 0;
  double utility = 0.0;
  int occurrences = 0;
};

struct CompressOptions {
  int rounds = 4;
  int max_size = 8;
  int max_arity = 3;
  int top_k = 8;
  int state_budget = 20000;  // mining search states per round
  CostModel model = CostModel::unit();
};

// Enumerates patterns occurring at >= 2 sites of the anchor closure by
// incremental hole refinement; returns the top_k candidates by simulated
// rewrite utility (ties broken by pattern key). Bodies are materialized in
// the corpus graph.
std::vector<Abstraction> mine(Corpus& c, int max_size, int max_arity,
                              int top_k,
                              const CostModel& model = CostModel::unit(),
                              int state_budget = 20000);

// Simulated utility of adopting `a`: corpus cost before minus corpus cost
// after defining the body and rewriting a copy. Nothing is committed.
double utility(const Corpus& c, const Abstraction& a,
               const CostModel& model = CostModel::unit());

// Commits a rewrite with the (already adopted, named) abstraction: matched
// sites become DefRef applications, definitions are rebound, proofs are
// re-checked, and each replacement leaves a "rewrite" computation edge back
// to the original. Throws SemanticDrift when a rewritten term's normal form
// or a proof's validity changes.
RewriteOutcome rewrite(Corpus& c, const Abstraction& a,
                       const CostModel& model = CostModel::unit(),
                       bool check_all = true);

// mine -> adopt argmax-utility -> rewrite -> tombstone unreferenced nodes,
// per round; stops early when the best utility is <= 0.
std::vector<Adoption> compress(Corpus& c, const CompressOptions& opts = {});

// Per-layer extension candidate count: the number of input tuples the given
// rules would enumerate over the live graph.
double branching_factor(const Hypergraph& g,
                        const std::vector<std::string>& colors);

// One constructor application through the kernel's builders; DefRef payloads
// resolve through the graph's definition table.
NodeId build_node(Kernel& k, NodeKind kind, const Payload& payload,
                  const std::vector<NodeId>& children);

}  // namespace proofgraph
