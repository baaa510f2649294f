#include <string>

#include "doctest.h"
#include "proofgraph/discovery.hpp"
#include "proofgraph/serialize.hpp"
#include "run_config.hpp"

using namespace proofgraph;

TEST_CASE("run config round-trips through its key=value form") {
  RunConfig a;
  a.seed = 20260823;
  a.proof_nodes = 512;
  a.mine_size = 6;
  a.mine_arity = 2;
  a.normalize_fuel = 50000;
  a.novelty_m = 4;
  a.interest_floor = 0.25;
  a.compress_every = 7;
  a.corpus_file = "out/corpus.json";
  a.log_file = "out/run.jsonl";
  a.out_dir = "out";

  RunConfig b = RunConfig::from_text(a.to_text());
  CHECK(b.to_text() == a.to_text());
  CHECK(b.seed == a.seed);
  CHECK(b.interest_floor == doctest::Approx(a.interest_floor));

  SUBCASE("comments and blank lines are ignored") {
    RunConfig c = RunConfig::from_text("# header\n\n  # indented\n" +
                                       a.to_text());
    CHECK(c.to_text() == a.to_text());
  }
  SUBCASE("unknown keys are rejected") {
    CHECK_THROWS_AS(RunConfig::from_text("seeed=1\n"), Error);
  }
  SUBCASE("malformed lines are rejected") {
    CHECK_THROWS_AS(RunConfig::from_text("seed\n"), Error);
    CHECK_THROWS_AS(RunConfig::from_text("seed=notanumber\n"), Error);
  }
  SUBCASE("non-positive budgets are rejected") {
    CHECK_THROWS_AS(RunConfig::from_text("budget.proofNodes=0\n"), Error);
    CHECK_THROWS_AS(RunConfig::from_text("compressEvery=-3\n"), Error);
  }
}

TEST_CASE("corpus json round-trips with stable proven pairs") {
  Corpus c = seed_corpus();
  Kernel k(c.graph);
  // give the corpus something beyond the seed: a proven specialization
  NodeId add = *c.graph.definition("add");
  NodeId two = k.numeral(2), four = k.numeral(4);
  NodeId prop = k.id_form(k.nat(), k.app2(add, two, two), four);
  NodeId proof = k.refl(k.app2(add, two, two));
  REQUIRE(k.check_proof(proof, prop).result == CheckResult::Valid);
  c.graph.add_typing(proof, prop);
  c.proven.push_back({prop, proof});

  Corpus back = corpus_from_json(corpus_to_json(c));
  CHECK(structurally_equal(back.graph, c.graph));
  REQUIRE(back.proven.size() == c.proven.size());
  Kernel k2(back.graph);
  for (const auto& [p, pf] : back.proven)
    CHECK(k2.check_proof(pf, p).result == CheckResult::Valid);
  CHECK(back.graph.definition("add").has_value());
  CHECK(back.graph.definition("double").has_value());

  SUBCASE("export is byte-stable once imported") {
    // import orders auxiliary edges after constructions, so the first round
    // trip canonicalizes; from there export/import is a fixed point
    Corpus again = corpus_from_json(corpus_to_json(back));
    CHECK(corpus_to_json(again) == corpus_to_json(back));
  }
  SUBCASE("missing keys are rejected") {
    CHECK_THROWS_AS(corpus_from_json("{}"), Error);
    CHECK_THROWS_AS(corpus_from_json("not json"), Error);
  }
  SUBCASE("out-of-range proven ids are rejected") {
    CHECK_THROWS_AS(
        corpus_from_json(
            R"({"graph":{"roots":[],"nodes":[],"edges":[]},"proven":[[5,6]]})"),
        Error);
  }
}
