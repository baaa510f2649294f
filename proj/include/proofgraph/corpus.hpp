#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "proofgraph/kernel.hpp"
#include "proofgraph/metrics.hpp"

namespace proofgraph {

// One entry of the append-only discovery log.
struct LogEvent {
  std::uint64_t t = 0;
  std::string phase;   // conjecture | search | compress | curate
  std::string action;
  std::vector<NodeId> nodes;
  nlohmann::ordered_json stats = nlohmann::ordered_json::object();
  std::uint64_t seed_state = 0;
};

// The working state of the discovery agent: a hypergraph, the facts proven
// so far, and the event log that replays to this state.
struct Corpus {
  Hypergraph graph;
  std::vector<std::pair<NodeId, NodeId>> proven;  // (proposition, proof)
  std::vector<LogEvent> log;
};

// The terms a corpus is accountable for: every definition body followed by
// every proven proposition and proof, in deterministic order.
std::vector<NodeId> corpus_anchors(const Corpus& c);

// Description cost of a single term, counted as a tree (shared subterms are
// paid once per reference) with DefRef leaves free: referencing a named
// definition costs nothing beyond the application that uses it.
double term_cost(const Hypergraph& g, NodeId n, const CostModel& model);

// Total description cost of the corpus anchors.
double corpus_cost(const Corpus& c, const CostModel& model);

}  // namespace proofgraph
