#include "doctest.h"
#include "proofgraph/discovery.hpp"
#include "proofgraph/syntax.hpp"

#include <cmath>
#include <set>

using namespace proofgraph;

namespace {

NodeId add_ref(Corpus& c) { return *c.graph.definition("add"); }

// forall a b. S a + b = S (a + b), the induction-shaped orientation
NodeId succ_left_prop(Corpus& c) {
  Kernel k(c.graph);
  NodeId add = add_ref(c);
  NodeId lhs = k.app2(add, k.succ(k.var(1)), k.var(0));
  NodeId rhs = k.succ(k.app2(add, k.var(1), k.var(0)));
  return k.pi(k.nat(), k.pi(k.nat(), k.id_form(k.nat(), lhs, rhs)));
}

// forall b. 0 + b = b
NodeId zero_left_prop(Corpus& c) {
  Kernel k(c.graph);
  NodeId lhs = k.app2(add_ref(c), k.zero(), k.var(0));
  return k.pi(k.nat(), k.id_form(k.nat(), lhs, k.var(0)));
}

}  // namespace

TEST_CASE("the seed corpus carries the definitional addition fact") {
  Corpus c = seed_corpus();
  Kernel k(c.graph);
  REQUIRE(c.graph.definition("add").has_value());
  REQUIRE(c.graph.definition("double").has_value());
  REQUIRE(c.proven.size() == 1);
  auto [prop, proof] = c.proven.front();
  CHECK(k.check_proof(proof, prop).result == CheckResult::Valid);
  // the statement quantifies two naturals over an identity
  const Node& outer = c.graph.node(prop);
  CHECK(outer.kind == NodeKind::PiForm);
  CHECK(c.graph.node(outer.children[1]).kind == NodeKind::PiForm);
}

TEST_CASE("forward search returns known facts without expanding") {
  Corpus c = seed_corpus();
  SearchResult r = prove_forward(c, c.proven.front().first);
  CHECK(r.proof == c.proven.front().second);
  CHECK(r.stats.nodes_expanded == 0);
  CHECK(r.stats.outcome == "found");
}

TEST_CASE("forward search closes computational equalities by refl") {
  Corpus c = seed_corpus();
  Kernel k(c.graph);
  NodeId goal = k.id_form(k.nat(), k.app2(add_ref(c), k.numeral(1), k.numeral(1)),
                          k.numeral(2));
  SearchResult r = prove_forward(c, goal);
  REQUIRE(r.proof.has_value());
  CHECK(r.stats.nodes_expanded == 1);
  CHECK(k.check_proof(*r.proof, goal).result == CheckResult::Valid);
}

TEST_CASE("forward search chains modus ponens") {
  Corpus c;
  Kernel k(c.graph);
  NodeId a = k.atom("A"), b = k.atom("B"), d = k.atom("D");
  NodeId ab = k.prop_implies(a, b);
  NodeId bd = k.prop_implies(b, d);
  c.proven.push_back({a, k.assume("a", a).subject});
  c.proven.push_back({ab, k.assume("ab", ab).subject});
  c.proven.push_back({bd, k.assume("bd", bd).subject});
  SearchResult r = prove_forward(c, d);
  REQUIRE(r.proof.has_value());
  CHECK(r.stats.max_depth == 2);
  CHECK(k.check_proof(*r.proof, d).result == CheckResult::Valid);

  SearchOptions starved;
  starved.budget = 0;
  SearchResult none = prove_forward(c, d, starved);
  CHECK(!none.proof.has_value());
  CHECK(none.stats.outcome == "exhausted");
}

TEST_CASE("backward search proves the successor-shift law by induction") {
  Corpus c = seed_corpus();
  Kernel k(c.graph);
  NodeId prop = succ_left_prop(c);

  // not a definitional identity: refl alone cannot close it
  SearchOptions no_induction;
  no_induction.use_induction = false;
  SearchResult stuck = prove_backward(c, prop, no_induction);
  CHECK(!stuck.proof.has_value());
  CHECK(stuck.stats.outcome == "exhausted");

  SearchResult r = prove_backward(c, prop);
  REQUIRE(r.proof.has_value());
  CHECK(k.check_proof(*r.proof, prop).result == CheckResult::Valid);
  // the proof eliminates through the recursor rather than bare refl
  bool has_rec = false;
  for (NodeId n : c.graph.closure_nodes(*r.proof))
    has_rec |= c.graph.node(n).kind == NodeKind::Rec;
  CHECK(has_rec);
}

TEST_CASE("backward search refutes false ground equalities") {
  Corpus c = seed_corpus();
  Kernel k(c.graph);
  NodeId goal = k.id_form(k.nat(), k.app2(add_ref(c), k.numeral(1), k.numeral(1)),
                          k.numeral(3));
  SearchResult r = prove_backward(c, goal);
  CHECK(!r.proof.has_value());
  REQUIRE(r.counterexample.has_value());
  CHECK(r.counterexample->empty());  // closed statement, no instantiation
  CHECK(r.stats.outcome == "refuted");

  // a universally quantified falsehood names a specific counterexample
  NodeId lie = k.pi(k.nat(), k.id_form(k.nat(), k.succ(k.var(0)), k.var(0)));
  SearchResult r2 = prove_backward(c, lie);
  REQUIRE(r2.counterexample.has_value());
  CHECK(r2.counterexample->size() == 1);
}

TEST_CASE("backward search measures modus ponens depth") {
  Corpus c;
  Kernel k(c.graph);
  NodeId b = k.atom("B"), d = k.atom("D");
  NodeId bd = k.prop_implies(b, d);
  c.proven.push_back({b, k.assume("b", b).subject});
  c.proven.push_back({bd, k.assume("bd", bd).subject});
  SearchResult r = prove_backward(c, d);
  REQUIRE(r.proof.has_value());
  CHECK(r.stats.max_depth == 1);
  CHECK(k.check_proof(*r.proof, d).result == CheckResult::Valid);
}

TEST_CASE("synthetic implication chains scale single-exponentially") {
  std::vector<int> depths{4, 6, 8};
  std::vector<double> logs;
  int forward_at_8 = 0;
  for (int d : depths) {
    ChainFamily fam = chain_family(3, d);
    SearchOptions o;
    o.budget = 20000;
    SearchResult r = prove_forward(fam.corpus, fam.goal, o);
    REQUIRE(r.proof.has_value());
    CHECK(r.stats.max_depth == d);
    logs.push_back(std::log(static_cast<double>(r.stats.nodes_expanded)));
    if (d == 8) forward_at_8 = r.stats.nodes_expanded;

    // determinism: a fresh family reproduces the same search
    ChainFamily again = chain_family(3, d);
    SearchResult r2 = prove_forward(again.corpus, again.goal, o);
    CHECK(r2.stats.nodes_expanded == r.stats.nodes_expanded);
  }
  // least-squares slope of log(expansions) against depth ~ log 3
  double dbar = (4 + 6 + 8) / 3.0, ybar = (logs[0] + logs[1] + logs[2]) / 3.0;
  double num = 0, den = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    num += (depths[i] - dbar) * (logs[i] - ybar);
    den += (depths[i] - dbar) * (depths[i] - dbar);
  }
  double slope = num / den;
  CHECK(std::abs(slope - std::log(3.0)) <= 0.2 * std::log(3.0));

  // meeting in the middle beats saturation by a wide margin
  ChainFamily deep = chain_family(3, 8);
  SearchOptions o;
  o.budget = 20000;
  SearchResult bi = prove_bidirectional(deep.corpus, deep.goal, o);
  REQUIRE(bi.proof.has_value());
  Kernel k(deep.corpus.graph);
  CHECK(k.check_proof(*bi.proof, deep.goal).result == CheckResult::Valid);
  CHECK(bi.stats.nodes_expanded * 4 < forward_at_8);
}

TEST_CASE("linearized chain counts are exact") {
  Corpus c;
  Kernel k(c.graph);
  NodeId seed = k.atom("S");
  c.proven.push_back({seed, k.assume("s", seed).subject});
  std::vector<NodeId> lib;
  for (int i = 0; i < 5; ++i) {
    NodeId f = k.atom("L" + std::to_string(i));
    c.proven.push_back({f, k.assume("l" + std::to_string(i), f).subject});
    lib.push_back(f);
  }
  // with conjunction-only rules each state extends in exactly 2*|lib| ways
  LinearizedResult r = enumerate_linearized(c, seed, seed, lib, 3);
  REQUIRE(r.counts.size() == 4);
  CHECK(r.counts[0] == 1);
  for (int d = 1; d <= 3; ++d) {
    CHECK(r.counts[d] == static_cast<std::size_t>(std::pow(10.0, d)));
    CHECK(r.counts[d] <= 4 * lib.size() * r.counts[d - 1]);
  }
  CHECK(r.proof.has_value());  // the seed itself, at depth 0
}

TEST_CASE("linearized chains reach implications but not joins") {
  Corpus c;
  Kernel k(c.graph);
  NodeId a = k.atom("A"), b1 = k.atom("B1"), b2 = k.atom("B2");
  NodeId i1 = k.prop_implies(a, b1), i2 = k.prop_implies(a, b2);
  c.proven.push_back({a, k.assume("a", a).subject});
  c.proven.push_back({i1, k.assume("i1", i1).subject});
  c.proven.push_back({i2, k.assume("i2", i2).subject});
  std::vector<NodeId> lib{i1, i2};

  LinearizedResult one = enumerate_linearized(c, a, b1, lib, 2);
  REQUIRE(one.proof.has_value());
  CHECK(k.check_proof(*one.proof, b1).result == CheckResult::Valid);

  // a conjunction of two separately derived facts needs two chains
  NodeId both = k.prop_and(b1, b2);
  LinearizedResult join = enumerate_linearized(c, a, both, lib, 4);
  CHECK(!join.proof.has_value());

  SearchOptions o;
  o.use_and_intro = true;
  SearchResult r = prove_forward(c, both, o);
  REQUIRE(r.proof.has_value());
  CHECK(k.check_proof(*r.proof, both).result == CheckResult::Valid);
}

TEST_CASE("novelty separates known, easy, and novel statements") {
  Corpus c = seed_corpus();
  Kernel k(c.graph);
  NoveltyResult known = novelty(c, c.proven.front().first, 3, 64);
  CHECK(known.verdict == NoveltyVerdict::Known);
  CHECK(known.m_estimate == 0);

  // one modus ponens away from an axiom
  NodeId b = k.atom("B"), d = k.atom("D");
  NodeId bd = k.prop_implies(b, d);
  c.proven.push_back({b, k.assume("b", b).subject});
  c.proven.push_back({bd, k.assume("bd", bd).subject});
  NoveltyResult easy = novelty(c, d, 3, 64);
  CHECK(easy.verdict == NoveltyVerdict::Easy);
  CHECK(easy.m_estimate == 1);

  // out of reach without the induction schema
  NoveltyResult fresh = novelty(c, succ_left_prop(c), 3, 64);
  CHECK(fresh.verdict == NoveltyVerdict::Novel);
  CHECK(fresh.m_estimate == 3);
}

TEST_CASE("interestingness rewards structurally rich proofs") {
  Corpus c = seed_corpus();
  Kernel k(c.graph);
  NodeId unproved = zero_left_prop(c);
  CHECK_THROWS_AS(interestingness(c, unproved, 100), Error);

  double easy = interestingness(c, c.proven.front().first, 200);
  NodeId hard_prop = succ_left_prop(c);
  SearchResult r = prove_backward(c, hard_prop);
  REQUIRE(r.proof.has_value());
  c.graph.add_typing(*r.proof, hard_prop);
  c.proven.push_back({hard_prop, *r.proof});
  double hard = interestingness(c, hard_prop, 200);
  CHECK(hard > easy);
}

TEST_CASE("conjecture generation is seeded and grounded") {
  Corpus c = seed_corpus();
  CHECK_THROWS_AS(generate_conjectures(c, 0, 1), Error);
  Corpus empty;
  CHECK_THROWS_AS(generate_conjectures(empty, 4, 1), Error);

  auto big = generate_conjectures(c, 500, 11);
  REQUIRE(!big.empty());
  std::set<NodeId> props;
  std::set<NodeId> proven_props;
  for (const auto& [p, pf] : c.proven) proven_props.insert(p);
  for (const auto& conj : big) {
    CHECK(conj.status == ConjectureStatus::Open);
    CHECK(!proven_props.contains(conj.proposition));
    CHECK(props.insert(conj.proposition).second);  // no duplicates
  }
  // the grounded generalizer proposes the classic induction targets
  bool zero_left = props.contains(zero_left_prop(c));
  {
    Kernel k(c.graph);
    NodeId flipped = k.pi(
        k.nat(), k.id_form(k.nat(), k.var(0),
                           k.app2(add_ref(c), k.zero(), k.var(0))));
    zero_left |= props.contains(flipped);
  }
  CHECK(zero_left);
  bool succ_shift = props.contains(succ_left_prop(c));
  {
    Kernel k(c.graph);
    NodeId add = add_ref(c);
    NodeId flipped = k.pi(
        k.nat(), k.pi(k.nat(), k.id_form(k.nat(),
                                         k.succ(k.app2(add, k.var(1), k.var(0))),
                                         k.app2(add, k.succ(k.var(1)), k.var(0)))));
    succ_shift |= props.contains(flipped);
  }
  CHECK(succ_shift);

  // same seed, same batch; the batch honours the requested size
  auto a1 = generate_conjectures(c, 4, 7);
  auto a2 = generate_conjectures(c, 4, 7);
  REQUIRE(a1.size() == 4);
  REQUIRE(a2.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(a1[i].proposition == a2[i].proposition);
    CHECK(a1[i].generator == a2[i].generator);
  }
}

TEST_CASE("the discovery loop is reproducible and sound") {
  CHECK_THROWS_AS(
      [] {
        Corpus c = seed_corpus();
        run_loop(c, 0, {}, 1);
      }(),
      Error);

  LoopConfig cfg;
  cfg.conjectures_per_step = 6;
  cfg.compress_every = 3;
  Corpus c1 = seed_corpus();
  auto log1 = run_loop(c1, 6, cfg, 42);
  Corpus c2 = seed_corpus();
  auto log2 = run_loop(c2, 6, cfg, 42);
  CHECK(log_to_jsonl(log1) == log_to_jsonl(log2));
  CHECK(c1.proven.size() == c2.proven.size());
  CHECK(c1.proven.size() > 1);  // something new was actually proven

  Kernel k(c1.graph);
  for (const auto& [prop, proof] : c1.proven)
    CHECK(k.check_proof(proof, prop).result == CheckResult::Valid);

  // the serialized log round-trips losslessly
  auto back = log_from_jsonl(log_to_jsonl(log1));
  REQUIRE(back.size() == log1.size());
  CHECK(log_to_jsonl(back) == log_to_jsonl(log1));

  CHECK_THROWS_AS(log_from_jsonl("not a log\n"), Error);
}

TEST_CASE("the criteria report grades the run from its log") {
  Corpus c = seed_corpus();
  auto blank = criteria_report(c, {});
  REQUIRE(blank.size() == 10);
  for (const auto& v : blank) CHECK(v.status == "unmet");

  LoopConfig cfg;
  cfg.conjectures_per_step = 6;
  cfg.compress_every = 3;
  auto log = run_loop(c, 6, cfg, 42);
  auto report = criteria_report(c, log);
  REQUIRE(report.size() == 10);
  auto find = [&](const std::string& id) {
    for (const auto& v : report)
      if (v.id == id) return v;
    return CriterionVerdict{};
  };
  CHECK(find("C1").status == "satisfied");
  CHECK(find("C2").status == "satisfied");
  CHECK(find("C4").status == "satisfied");
  CHECK(find("C10").status == "partial");

  // tampering with a recorded proof shows up in the replay
  auto tampered = log;
  for (auto& e : tampered)
    if (e.phase == "search" && e.action == "proved") {
      e.nodes[1] = e.nodes[0];
      break;
    }
  auto bad = criteria_report(c, tampered);
  CHECK(find("C2").status == "satisfied");  // original untouched
  for (const auto& v : bad)
    if (v.id == "C2") CHECK(v.status == "unmet");

  LogEvent alien;
  alien.phase = "telepathy";
  CHECK_THROWS_AS(criteria_report(c, {alien}), Error);
}
