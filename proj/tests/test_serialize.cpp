#include "doctest.h"
#include "proofgraph/kernel.hpp"
#include "proofgraph/serialize.hpp"

#include <cstdio>

#include "json.hpp"

using namespace proofgraph;

TEST_CASE("json round-trip is the identity up to renaming") {
  Hypergraph g;
  Kernel k(g);
  auto ex = k.build_appendix_examples();
  k.define("add", ex.add);
  k.define("double", ex.double_fn);
  k.assume("peano", k.id_form(k.nat(), k.zero(), k.zero()));
  k.normalize(k.app2(*g.definition("add"), k.numeral(2), k.numeral(2)));

  std::string text = to_json(g);
  Hypergraph h = from_json(text);
  CHECK(h.node_count() == g.node_count());
  CHECK(h.edge_count() == g.edge_count());
  CHECK(structurally_equal(g, h));
  CHECK(h.definitions().size() == 2);
  CHECK(h.roots().size() == g.roots().size());
  // import canonicalizes edge order; from then on round-trips are byte-stable
  std::string canon = to_json(h);
  CHECK(to_json(from_json(canon)) == canon);
}

TEST_CASE("json carries typing and computation edges") {
  Hypergraph g;
  Kernel k(g);
  NodeId two = k.numeral(2);
  k.judge(two);
  NodeId idf = k.lambda(k.nat(), k.var(0));
  k.normalize(k.app(idf, two));
  Hypergraph h = from_json(to_json(g));
  // find the copy of `two` and check its typing edge survived
  NodeId two_h = *h.find(NodeKind::NatSucc, {},
                         {h.find(NodeKind::NatSucc, {},
                                 {*h.find(NodeKind::NatZero, {}, {})})
                              .value()});
  CHECK(h.typing_of(two_h).has_value());
  CHECK(h.node(*h.typing_of(two_h)).kind == NodeKind::Sort);
  bool has_beta = false;
  for (EdgeId e = 0; e < h.edge_count(); ++e)
    if (h.edge(e).cls == EdgeClass::Computation && h.edge(e).color == "beta")
      has_beta = true;
  CHECK(has_beta);
}

TEST_CASE("json import validates its input") {
  CHECK_THROWS_AS(from_json("not json"), Error);
  CHECK_THROWS_AS(from_json("{}"), Error);
  try {
    from_json("{}");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LoadError);
  }
  // node with a dangling construction
  const char* orphan = R"({"roots":[],"nodes":[{"id":0,"kind":"succ",
    "payload":null,"type":null}],"edges":[]})";
  CHECK_THROWS_AS(from_json(orphan), Error);
}

TEST_CASE("schema shape is stable") {
  Hypergraph g;
  Kernel k(g);
  k.numeral(1);
  auto j = nlohmann::json::parse(to_json(g));
  REQUIRE(j.contains("roots"));
  REQUIRE(j.contains("nodes"));
  REQUIRE(j.contains("edges"));
  for (const auto& n : j["nodes"]) {
    CHECK(n.contains("id"));
    CHECK(n.contains("kind"));
    CHECK(n.contains("payload"));
    CHECK(n.contains("type"));
  }
  for (const auto& e : j["edges"]) {
    CHECK(e.contains("id"));
    CHECK(e.contains("color"));
    CHECK(e.contains("class"));
    CHECK(e["inputs"].is_array());
    CHECK(e["outputs"].is_array());
  }
}

TEST_CASE("dot export names every node and edge") {
  Hypergraph g;
  Kernel k(g);
  k.numeral(2);
  std::string dot = to_dot(g);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("succ") != std::string::npos);
  for (NodeId i = 0; i < g.node_count(); ++i)
    CHECK(dot.find("n" + std::to_string(i) + " ") != std::string::npos);
  for (EdgeId i = 0; i < g.edge_count(); ++i)
    CHECK(dot.find("e" + std::to_string(i) + " ") != std::string::npos);
}

TEST_CASE("atomic file save/load") {
  Hypergraph g;
  Kernel k(g);
  k.numeral(3);
  std::string path = "serialize_roundtrip_test.json";
  save_json(g, path);
  Hypergraph h = load_json(path);
  CHECK(structurally_equal(g, h));
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_json(path), Error);
}
