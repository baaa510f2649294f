#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proofgraph/abstraction.hpp"

namespace proofgraph {

enum class ConjectureStatus { Open, Proven, Refuted, Abandoned };

struct Conjecture {
  NodeId proposition = kNoNode;
  std::string generator;         // heuristic that proposed it
  std::vector<NodeId> parents;   // facts or terms it came from
  ConjectureStatus status = ConjectureStatus::Open;
};

struct SearchStats {
  int nodes_expanded = 0;
  int max_depth = 0;
  double effective_branching = 1.0;
  std::string outcome = "exhausted";  // found | exhausted | refuted
};

struct SearchResult {
  std::optional<NodeId> proof;
  SearchStats stats;
  // ground instance (one value per quantifier) witnessing refutation
  std::optional<std::vector<std::uint32_t>> counterexample;
};

struct SearchOptions {
  int budget = 1000;        // node expansions
  bool use_cong = true;
  bool use_and_intro = false;
  bool use_induction = true;
  bool use_specialize = false;
};

enum class NoveltyVerdict { Known, Easy, Novel };

struct NoveltyResult {
  NoveltyVerdict verdict = NoveltyVerdict::Novel;
  int m_estimate = 0;  // backward proof depth; threshold when search exhausts
};

struct LinearizedResult {
  std::vector<std::size_t> counts;   // exact chain counts per depth
  std::optional<NodeId> proof;       // representative proof of the goal
};

struct ChainFamily {
  Corpus corpus;
  NodeId goal = kNoNode;
  int branching = 0;
  int depth = 0;
};

struct LoopConfig {
  int conjectures_per_step = 4;
  int proof_budget = 300;
  int novelty_threshold = 3;
  int novelty_budget = 64;
  double interest_floor = 0.0;
  int interest_budget = 200;
  int compress_every = 10;
  int ground_instances = 6;  // inductive-generalization test range 0..N
  CompressOptions compress;
};

struct CriterionVerdict {
  std::string id;        // C1..C10
  std::string status;    // satisfied | partial | unmet
  std::string evidence;
  std::vector<std::size_t> events;  // log indices backing the verdict
};

// The Peano working corpus: Nat with addition and doubling defined, and the
// definitional identity a + S b = S (a + b) proven.
Corpus seed_corpus();

// Synthetic word-shift implication family: atoms for every word of the given
// length over `branching` digits, one axiom per shift, start word all-zeros,
// goal word all-ones (first reachable after exactly `depth` steps).
ChainFamily chain_family(int branching, int depth);

// Structural copy of a term into another graph (types of axiom atoms come
// along; DefRef nodes are copied without registering their names).
NodeId copy_term(const Hypergraph& src, NodeId n, Kernel& dst);

// Seeded conjecture generation: implication reversal, specialization,
// function composition, and inductive generalization over ground instances.
std::vector<Conjecture> generate_conjectures(Corpus& c, int n,
                                             std::uint64_t seed,
                                             int ground_instances = 6);

SearchResult prove_forward(Corpus& c, NodeId goal,
                           const SearchOptions& opts = {});
SearchResult prove_backward(Corpus& c, NodeId goal,
                            const SearchOptions& opts = {});
SearchResult prove_bidirectional(Corpus& c, NodeId goal,
                                 const SearchOptions& opts = {});

// Exact counts of linearized deduction chains from `seed_fact`: each step
// combines the chain's newest statement with facts from the fixed library.
LinearizedResult enumerate_linearized(Corpus& c, NodeId seed_fact, NodeId goal,
                                      const std::vector<NodeId>& library,
                                      int depth);

NoveltyResult novelty(Corpus& c, NodeId prop, int threshold, int budget);

// Efficiency of the statement plus the best abstraction utility extractable
// from its proof. Requires the proposition to be proven.
double interestingness(Corpus& c, NodeId prop, int budget);

// The four-step loop: conjecture, attempt, compress every K steps, curate.
// Deterministic given (steps, config, seed); events are appended to c.log and
// also returned.
std::vector<LogEvent> run_loop(Corpus& c, int steps, const LoopConfig& config,
                               std::uint64_t seed);

std::vector<CriterionVerdict> criteria_report(
    const Corpus& c, const std::vector<LogEvent>& log);

std::string log_to_jsonl(const std::vector<LogEvent>& log);
std::vector<LogEvent> log_from_jsonl(const std::string& text);

}  // namespace proofgraph
