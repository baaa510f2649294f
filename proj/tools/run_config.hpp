#pragma once

#include <cstdint>
#include <sstream>
#include <string>

#include "proofgraph/hypergraph.hpp"

namespace proofgraph {

// The discovery loop's free parameters plus file plumbing, stored as a flat
// key=value file (one pair per line, '#' starts a comment). Flat keys diff
// cleanly in experiment records; serialization round-trips losslessly.
struct RunConfig {
  std::uint64_t seed = 0;
  int proof_nodes = 300;      // budget.proofNodes
  int mine_size = 8;          // budget.mineSize
  int mine_arity = 3;         // budget.mineArity
  int normalize_fuel = 100000;  // budget.normalizeFuel
  int novelty_m = 3;          // threshold.noveltyM
  double interest_floor = 0.0;  // threshold.interestFloor
  int compress_every = 10;    // compressEvery
  std::string corpus_file;    // path.corpusFile
  std::string log_file;       // path.logFile
  std::string out_dir;        // path.outDir

  void validate() const {
    if (proof_nodes < 1 || mine_size < 1 || mine_arity < 1 ||
        normalize_fuel < 1 || novelty_m < 1 || compress_every < 1)
      throw Error(ErrorCode::BudgetZero, "all budgets must be positive");
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "seed=" << seed << '\n'
       << "budget.proofNodes=" << proof_nodes << '\n'
       << "budget.mineSize=" << mine_size << '\n'
       << "budget.mineArity=" << mine_arity << '\n'
       << "budget.normalizeFuel=" << normalize_fuel << '\n'
       << "threshold.noveltyM=" << novelty_m << '\n'
       << "threshold.interestFloor=" << interest_floor << '\n'
       << "compressEvery=" << compress_every << '\n'
       << "path.corpusFile=" << corpus_file << '\n'
       << "path.logFile=" << log_file << '\n'
       << "path.outDir=" << out_dir << '\n';
    return os.str();
  }

  static RunConfig from_text(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::ParseError,
                  "config line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
      ++lineno;
      std::size_t start = line.find_first_not_of(" \t");
      if (start == std::string::npos || line[start] == '#') continue;
      std::size_t eq = line.find('=', start);
      if (eq == std::string::npos) fail("expected key=value");
      std::string key = line.substr(start, eq - start);
      std::string value = line.substr(eq + 1);
      while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
        key.pop_back();
      while (!value.empty() && (value.back() == '\r' || value.back() == ' '))
        value.pop_back();
      std::size_t vstart = value.find_first_not_of(" \t");
      value = vstart == std::string::npos ? "" : value.substr(vstart);
      try {
        if (key == "seed") c.seed = std::stoull(value);
        else if (key == "budget.proofNodes") c.proof_nodes = std::stoi(value);
        else if (key == "budget.mineSize") c.mine_size = std::stoi(value);
        else if (key == "budget.mineArity") c.mine_arity = std::stoi(value);
        else if (key == "budget.normalizeFuel")
          c.normalize_fuel = std::stoi(value);
        else if (key == "threshold.noveltyM") c.novelty_m = std::stoi(value);
        else if (key == "threshold.interestFloor")
          c.interest_floor = std::stod(value);
        else if (key == "compressEvery") c.compress_every = std::stoi(value);
        else if (key == "path.corpusFile") c.corpus_file = value;
        else if (key == "path.logFile") c.log_file = value;
        else if (key == "path.outDir") c.out_dir = value;
        else fail("unknown key '" + key + "'");
      } catch (const std::invalid_argument&) {
        fail("bad value for '" + key + "'");
      } catch (const std::out_of_range&) {
        fail("value out of range for '" + key + "'");
      }
    }
    c.validate();
    return c;
  }
};

}  // namespace proofgraph
