// Command-line front end: reproducible experiments over the proof hypergraph.
// Exit codes: 0 success, 2 usage or precondition failure, 3 budget or fuel
// exhausted, 4 internal invariant violation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "proofgraph/abstraction.hpp"
#include "proofgraph/discovery.hpp"
#include "proofgraph/metrics.hpp"
#include "proofgraph/serialize.hpp"
#include "proofgraph/syntax.hpp"
#include "run_config.hpp"

namespace {

using namespace proofgraph;
using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kBudget = 3;
constexpr int kInternal = 4;

int code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::FuelExhausted:
    case ErrorCode::GuardExceeded:
      return kBudget;
    case ErrorCode::Internal:
    case ErrorCode::CycleDetected:
    case ErrorCode::SemanticDrift:
    case ErrorCode::Unreachable:
      return kInternal;
    default:
      return kUsage;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::LoadError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw Error(ErrorCode::LoadError, "cannot create " + dir + ": " +
                                          ec.message());
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

RunConfig load_config(std::string path) {
  // the environment variable wins over the flag, so scripted runs can
  // redirect a whole pipeline without editing its invocations
  if (const char* env = std::getenv("PROOFGRAPH_CONFIG")) path = env;
  if (path.empty())
    throw Error(ErrorCode::UnknownInput,
                "no config: pass --config or set PROOFGRAPH_CONFIG");
  return RunConfig::from_text(read_file(path));
}

ordered_json criteria_json(const std::vector<CriterionVerdict>& report) {
  ordered_json out = ordered_json::array();
  for (const CriterionVerdict& v : report) {
    ordered_json jv;
    jv["id"] = v.id;
    jv["status"] = v.status;
    jv["evidence"] = v.evidence;
    jv["events"] = v.events;
    out.push_back(std::move(jv));
  }
  return out;
}

std::string criteria_text(const std::vector<CriterionVerdict>& report) {
  std::ostringstream os;
  os << "criteria report\n===============\n";
  for (const CriterionVerdict& v : report) {
    os << v.id << "  [" << v.status << "]  " << v.evidence << "\n";
    if (!v.events.empty()) {
      os << "      log events:";
      for (std::size_t e : v.events) os << ' ' << e;
      os << "\n";
    }
  }
  return os.str();
}

int cmd_eval(const std::string& term, int fuel) {
  Corpus c = seed_corpus();
  Kernel k(c.graph);
  NodeId t = parse_term(k, term);
  NormalizeResult r = k.normalize(t, fuel);
  if (!r.complete)
    throw Error(ErrorCode::FuelExhausted,
                "no normal form within " + std::to_string(fuel) + " steps");
  std::cout << print_term(c.graph, r.node) << "\n"
            << "steps: " << r.steps << "\n";
  return kOk;
}

int cmd_typecheck(const std::string& term, const std::string& expected,
                  int fuel) {
  Corpus c = seed_corpus();
  Kernel k(c.graph);
  NodeId t = parse_term(k, term);
  NodeId ty = k.infer(t);
  std::cout << print_term(c.graph, ty) << "\n";
  if (!expected.empty()) {
    NodeId want = parse_term(k, expected);
    if (k.defeq(ty, want, fuel) != CheckResult::Valid)
      throw Error(ErrorCode::TypeMismatch,
                  "inferred type is not the stated one");
    std::cout << "matches stated type\n";
  }
  return kOk;
}

int cmd_metrics(const std::string& corpus_file, const std::string& out_dir,
                int budget) {
  Corpus c = load_corpus(corpus_file);
  ensure_dir(out_dir);
  write_file_atomic(join_path(out_dir, "nodes.csv"),
                    metrics_csv(c.graph, budget));
  std::cout << "wrote " << join_path(out_dir, "nodes.csv") << "\n";
  return kOk;
}

int cmd_growth(std::uint32_t k, int layers, const std::string& out_dir) {
  auto sizes = growth_experiment(k, layers);
  std::string joined;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) joined += ',';
    joined += std::to_string(sizes[i]);
  }
  std::cout << joined << "\n";
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    write_file_atomic(join_path(out_dir, "growth.csv"), growth_csv(sizes));
  }
  return kOk;
}

ordered_json abstraction_json(const Hypergraph& g, const Abstraction& a) {
  ordered_json ja;
  ja["pattern"] = a.pattern.key();
  ja["body"] = print_term(g, a.body);
  ja["arity"] = a.pattern.arity();
  ja["occurrences"] = a.occurrences;
  ja["cost"] = a.cost;
  ja["utility"] = a.utility;
  if (!a.name.empty()) ja["name"] = a.name;
  return ja;
}

int cmd_mine(const std::string& corpus_file, const std::string& out_dir,
             int max_size, int max_arity, int top_k, int state_budget) {
  Corpus c = load_corpus(corpus_file);
  auto cands = mine(c, max_size, max_arity, top_k, CostModel::unit(),
                    state_budget);
  ensure_dir(out_dir);
  ordered_json out = ordered_json::array();
  for (const Abstraction& a : cands)
    out.push_back(abstraction_json(c.graph, a));
  write_file_atomic(join_path(out_dir, "abstractions.json"),
                    out.dump(2) + "\n");
  std::cout << cands.size() << " candidate(s) -> "
            << join_path(out_dir, "abstractions.json") << "\n";
  return kOk;
}

int cmd_compress(const std::string& corpus_file, const std::string& out_dir,
                 int rounds, int max_size, int max_arity) {
  Corpus c = load_corpus(corpus_file);
  CompressOptions opts;
  opts.rounds = rounds;
  opts.max_size = max_size;
  opts.max_arity = max_arity;
  auto adopted = compress(c, opts);
  ensure_dir(out_dir);
  ordered_json out = ordered_json::array();
  for (const Adoption& a : adopted) {
    ordered_json ja;
    ja["name"] = a.name;
    ja["round"] = a.round;
    ja["utility"] = a.utility;
    ja["occurrences"] = a.occurrences;
    out.push_back(std::move(ja));
  }
  write_file_atomic(join_path(out_dir, "adoptions.json"), out.dump(2) + "\n");
  save_corpus(c, join_path(out_dir, "corpus.json"));
  std::cout << adopted.size() << " adoption(s) -> "
            << join_path(out_dir, "adoptions.json") << "\n";
  return kOk;
}

int cmd_discover(const std::string& config_path, int steps) {
  RunConfig rc = load_config(config_path);
  if (rc.log_file.empty() || rc.corpus_file.empty())
    throw Error(ErrorCode::UnknownInput,
                "config must set path.logFile and path.corpusFile");
  // always starts from the seed corpus: rerunning with the same config and
  // seed must reproduce the log byte for byte
  Corpus c = seed_corpus();
  LoopConfig lc;
  lc.proof_budget = rc.proof_nodes;
  lc.novelty_threshold = rc.novelty_m;
  lc.interest_floor = rc.interest_floor;
  lc.compress_every = rc.compress_every;
  lc.compress.max_size = rc.mine_size;
  lc.compress.max_arity = rc.mine_arity;
  auto log = run_loop(c, steps, lc, rc.seed);
  write_file_atomic(rc.log_file, log_to_jsonl(log));
  save_corpus(c, rc.corpus_file);
  if (!rc.out_dir.empty()) {
    ensure_dir(rc.out_dir);
    auto report = criteria_report(c, log);
    write_file_atomic(join_path(rc.out_dir, "criteria.json"),
                      criteria_json(report).dump(2) + "\n");
    write_file_atomic(join_path(rc.out_dir, "criteria.txt"),
                      criteria_text(report));
  }
  std::cout << "ran " << steps << " step(s): " << log.size() << " events, "
            << c.proven.size() << " proven, "
            << c.graph.definitions().size() << " definition(s)\n";
  return kOk;
}

int cmd_report(const std::string& corpus_file, const std::string& log_file,
               const std::string& out_dir) {
  Corpus c = load_corpus(corpus_file);
  auto log = log_from_jsonl(read_file(log_file));
  auto report = criteria_report(c, log);
  ensure_dir(out_dir);
  write_file_atomic(join_path(out_dir, "criteria.json"),
                    criteria_json(report).dump(2) + "\n");
  write_file_atomic(join_path(out_dir, "criteria.txt"), criteria_text(report));
  std::cout << criteria_text(report);
  return kOk;
}

int cmd_export(const std::string& corpus_file, const std::string& out_dir) {
  Corpus c = load_corpus(corpus_file);
  ensure_dir(out_dir);
  write_file_atomic(join_path(out_dir, "graph.json"), to_json(c.graph));
  write_file_atomic(join_path(out_dir, "graph.dot"), to_dot(c.graph));
  std::cout << "wrote " << join_path(out_dir, "graph.json") << " and "
            << join_path(out_dir, "graph.dot") << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proof hypergraph workbench"};
  app.require_subcommand(1);

  std::string term, expected, corpus_file, log_file, out_dir, config_path;
  int fuel = Kernel::kDefaultFuel;
  int budget = 2000;
  std::uint32_t growth_k = 2;
  int layers = 3;
  int max_size = 8, max_arity = 3, top_k = 8, state_budget = 20000;
  int rounds = 4;
  int steps = 50;

  auto* eval = app.add_subcommand("eval", "normalize a term");
  eval->add_option("--term", term, "surface-syntax term")->required();
  eval->add_option("--fuel", fuel, "reduction step budget");

  auto* typecheck = app.add_subcommand("typecheck", "infer a term's type");
  typecheck->add_option("--term", term, "surface-syntax term")->required();
  typecheck->add_option("--type", expected, "type to check against");
  typecheck->add_option("--fuel", fuel, "conversion step budget");

  auto* metrics = app.add_subcommand("metrics", "per-node metric CSV");
  metrics->add_option("--corpus", corpus_file, "corpus json file")->required();
  metrics->add_option("--out", out_dir, "output directory")->required();
  metrics->add_option("--budget", budget, "minimization budget");

  auto* growth = app.add_subcommand("growth", "conjunction growth layers");
  growth->add_option("--k", growth_k, "number of seed atoms")->required();
  growth->add_option("--layers", layers, "layers to extend")->required();
  growth->add_option("--out", out_dir, "output directory (optional)");

  auto* mine_cmd = app.add_subcommand("mine", "mine abstraction candidates");
  mine_cmd->add_option("--corpus", corpus_file, "corpus json file")
      ->required();
  mine_cmd->add_option("--out", out_dir, "output directory")->required();
  mine_cmd->add_option("--max-size", max_size, "pattern size cap");
  mine_cmd->add_option("--max-arity", max_arity, "pattern hole cap");
  mine_cmd->add_option("--top-k", top_k, "candidates to keep");
  mine_cmd->add_option("--state-budget", state_budget, "mining states");

  auto* compress_cmd =
      app.add_subcommand("compress", "adopt best abstractions");
  compress_cmd->add_option("--corpus", corpus_file, "corpus json file")
      ->required();
  compress_cmd->add_option("--out", out_dir, "output directory")->required();
  compress_cmd->add_option("--rounds", rounds, "adoption rounds");
  compress_cmd->add_option("--max-size", max_size, "pattern size cap");
  compress_cmd->add_option("--max-arity", max_arity, "pattern hole cap");

  auto* discover = app.add_subcommand("discover", "run the discovery loop");
  discover->add_option("--config", config_path,
                       "run config (PROOFGRAPH_CONFIG overrides)");
  discover->add_option("--steps", steps, "loop steps");

  auto* report = app.add_subcommand("report", "criteria report from a log");
  report->add_option("--corpus", corpus_file, "corpus json file")->required();
  report->add_option("--log", log_file, "run log (json lines)")->required();
  report->add_option("--out", out_dir, "output directory")->required();

  auto* export_cmd = app.add_subcommand("export", "graph json + dot");
  export_cmd->add_option("--corpus", corpus_file, "corpus json file")
      ->required();
  export_cmd->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return cmd_eval(term, fuel);
    if (*typecheck) return cmd_typecheck(term, expected, fuel);
    if (*metrics) return cmd_metrics(corpus_file, out_dir, budget);
    if (*growth) return cmd_growth(growth_k, layers, out_dir);
    if (*mine_cmd)
      return cmd_mine(corpus_file, out_dir, max_size, max_arity, top_k,
                      state_budget);
    if (*compress_cmd)
      return cmd_compress(corpus_file, out_dir, rounds, max_size, max_arity);
    if (*discover) return cmd_discover(config_path, steps);
    if (*report) return cmd_report(corpus_file, log_file, out_dir);
    if (*export_cmd) return cmd_export(corpus_file, out_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
