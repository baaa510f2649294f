// Python bindings: the main operations behind string-based interfaces.
// Terms travel as surface syntax, logs as JSON lines, reports as JSON — the
// Python side stays free of graph node bookkeeping.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"
#include "proofgraph/abstraction.hpp"
#include "proofgraph/discovery.hpp"
#include "proofgraph/metrics.hpp"
#include "proofgraph/serialize.hpp"
#include "proofgraph/syntax.hpp"

namespace py = pybind11;
using namespace proofgraph;
using nlohmann::ordered_json;

namespace {

std::pair<std::string, int> py_eval(Corpus& c, const std::string& term,
                                    int fuel) {
  Kernel k(c.graph);
  NodeId t = parse_term(k, term);
  NormalizeResult r = k.normalize(t, fuel);
  if (!r.complete)
    throw Error(ErrorCode::FuelExhausted, "no normal form within fuel");
  return {print_term(c.graph, r.node), r.steps};
}

std::string py_typecheck(Corpus& c, const std::string& term) {
  Kernel k(c.graph);
  return print_term(c.graph, k.infer(parse_term(k, term)));
}

py::dict py_prove(Corpus& c, const std::string& prop_text, int budget) {
  Kernel k(c.graph);
  NodeId prop = parse_term(k, prop_text);
  SearchOptions opts;
  opts.budget = budget;
  SearchResult r = prove_bidirectional(c, prop, opts);
  py::dict out;
  out["outcome"] = r.stats.outcome;
  out["expanded"] = r.stats.nodes_expanded;
  if (r.proof) {
    c.graph.add_typing(*r.proof, prop);
    c.proven.push_back({prop, *r.proof});
    out["proof"] = print_term(c.graph, *r.proof);
  }
  if (r.counterexample) out["counterexample"] = *r.counterexample;
  return out;
}

std::string py_discover(Corpus& c, int steps, std::uint64_t seed,
                        int compress_every, int proof_budget) {
  LoopConfig cfg;
  cfg.compress_every = compress_every;
  cfg.proof_budget = proof_budget;
  return log_to_jsonl(run_loop(c, steps, cfg, seed));
}

std::string py_report(const Corpus& c, const std::string& log_jsonl) {
  auto log = log_from_jsonl(log_jsonl);
  ordered_json out = ordered_json::array();
  for (const CriterionVerdict& v : criteria_report(c, log)) {
    ordered_json jv;
    jv["id"] = v.id;
    jv["status"] = v.status;
    jv["evidence"] = v.evidence;
    jv["events"] = v.events;
    out.push_back(std::move(jv));
  }
  return out.dump();
}

py::list py_compress(Corpus& c) {
  py::list out;
  for (const Adoption& a : compress(c)) {
    py::dict d;
    d["name"] = a.name;
    d["round"] = a.round;
    d["utility"] = a.utility;
    d["occurrences"] = a.occurrences;
    out.append(std::move(d));
  }
  return out;
}

py::list py_proven(const Corpus& c) {
  py::list out;
  for (const auto& [prop, proof] : c.proven)
    out.append(py::make_tuple(print_term(c.graph, prop),
                              print_term(c.graph, proof)));
  return out;
}

bool py_check(Corpus& c, const std::string& proof, const std::string& prop) {
  Kernel k(c.graph);
  return k.check_proof(parse_term(k, proof), parse_term(k, prop)).result ==
         CheckResult::Valid;
}

}  // namespace

PYBIND11_MODULE(proofgraph, m) {
  m.doc() = "proof hypergraph workbench";

  py::register_exception<Error>(m, "ProofgraphError");

  py::class_<Corpus>(m, "Corpus")
      .def(py::init<>())
      .def_property_readonly(
          "node_count", [](const Corpus& c) { return c.graph.node_count(); })
      .def_property_readonly("definitions",
                             [](const Corpus& c) {
                               std::vector<std::string> names;
                               for (const auto& [n, r] :
                                    c.graph.definitions())
                                 names.push_back(n);
                               return names;
                             })
      .def_property_readonly("proven", &py_proven)
      .def("eval", &py_eval, py::arg("term"),
           py::arg("fuel") = Kernel::kDefaultFuel,
           "normal form and step count of a surface-syntax term")
      .def("typecheck", &py_typecheck, py::arg("term"),
           "inferred type of a surface-syntax term")
      .def("check", &py_check, py::arg("proof"), py::arg("prop"),
           "kernel verdict on a (proof, proposition) pair")
      .def("prove", &py_prove, py::arg("prop"), py::arg("budget") = 300,
           "bidirectional search; records the proof on success")
      .def("discover", &py_discover, py::arg("steps"), py::arg("seed"),
           py::arg("compress_every") = 10, py::arg("proof_budget") = 300,
           "run the discovery loop; returns the run log as JSON lines")
      .def("report", &py_report, py::arg("log_jsonl"),
           "criteria self-report as a JSON string")
      .def("compress", &py_compress, "mine and adopt abstractions")
      .def("to_json", [](const Corpus& c) { return corpus_to_json(c); })
      .def("save", [](const Corpus& c, const std::string& path) {
        save_corpus(c, path);
      });

  m.def("seed_corpus", &seed_corpus,
        "Nat with add/double defined and the definitional identity proven");
  m.def("load_corpus", &load_corpus, py::arg("path"));
  m.def("corpus_from_json", &corpus_from_json, py::arg("text"));
  m.def("growth", &growth_experiment, py::arg("k"), py::arg("layers"),
        py::arg("override_guard") = false,
        "conjunction-only layer sizes [k, k^2, k^4, ...]");
}
