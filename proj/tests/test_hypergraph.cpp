#include "doctest.h"
#include "proofgraph/hypergraph.hpp"

#include <set>

using namespace proofgraph;

namespace {

// Independent closure-size count: recursive set union over children.
void collect(const Hypergraph& g, NodeId n, std::set<NodeId>& out) {
  if (!out.insert(n).second) return;
  for (NodeId c : g.node(n).children) collect(g, c, out);
}

NodeId mk_succ_tower(Hypergraph& g, int n) {
  NodeId t = g.add_node(NodeKind::NatZero, {}, {}, "zero-intro",
                        EdgeClass::Introduction);
  for (int i = 0; i < n; ++i)
    t = g.add_node(NodeKind::NatSucc, {}, {t}, "succ-intro",
                   EdgeClass::Introduction);
  return t;
}

}  // namespace

TEST_CASE("hash-consing is idempotent") {
  Hypergraph g;
  NodeId z1 = g.add_node(NodeKind::NatZero, {}, {}, "zero-intro",
                         EdgeClass::Introduction);
  NodeId s1 = g.add_node(NodeKind::NatSucc, {}, {z1}, "succ-intro",
                         EdgeClass::Introduction);
  auto nodes_before = g.node_count();
  auto edges_before = g.edge_count();
  NodeId z2 = g.add_node(NodeKind::NatZero, {}, {}, "zero-intro",
                         EdgeClass::Introduction);
  NodeId s2 = g.add_node(NodeKind::NatSucc, {}, {z2}, "succ-intro",
                         EdgeClass::Introduction);
  CHECK(z1 == z2);
  CHECK(s1 == s2);
  CHECK(g.node_count() == nodes_before);
  CHECK(g.edge_count() == edges_before);
}

TEST_CASE("arity and input validation") {
  Hypergraph g;
  CHECK_THROWS_AS(g.add_node(NodeKind::NatSucc, {}, {}, "succ-intro",
                             EdgeClass::Introduction),
                  Error);
  try {
    g.add_node(NodeKind::NatSucc, {}, {}, "x", EdgeClass::Introduction);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ArityMismatch);
  }
  try {
    g.add_node(NodeKind::NatSucc, {}, {NodeId{99}}, "x",
               EdgeClass::Introduction);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownInput);
  }
}

TEST_CASE("closure of a succ tower") {
  Hypergraph g;
  NodeId ss0 = mk_succ_tower(g, 2);
  std::set<NodeId> oracle;
  collect(g, ss0, oracle);
  auto order = g.closure_nodes(ss0);
  CHECK(order.size() == oracle.size());
  CHECK(order.size() == 3);
  CHECK(order.back() == ss0);
  // topological: children precede
  std::set<NodeId> seen;
  for (NodeId n : order) {
    for (NodeId c : g.node(n).children) CHECK(seen.count(c) == 1);
    seen.insert(n);
  }
}

TEST_CASE("backward closure re-packs structurally identically") {
  Hypergraph g;
  mk_succ_tower(g, 5);  // shared prefix
  NodeId top = mk_succ_tower(g, 3);
  Hypergraph sub = g.backward_closure(top);
  CHECK(sub.node_count() == 4);
  CHECK(sub.edge_count() == 4);
  Hypergraph expect;
  mk_succ_tower(expect, 3);
  CHECK(structurally_equal(sub, expect));
}

TEST_CASE("derivation edges reject cycles") {
  Hypergraph g;
  NodeId t = mk_succ_tower(g, 2);
  NodeId below = g.node(t).children[0];
  CHECK_THROWS_AS(g.add_derivation({t}, below, "bogus", EdgeClass::Deduction),
                  Error);
  try {
    g.add_derivation({t}, below, "bogus", EdgeClass::Deduction);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CycleDetected);
  }
  // a legal alternative derivation
  NodeId z = g.node(below).children[0];
  EdgeId e = g.add_derivation({z}, t, "leap", EdgeClass::Deduction);
  CHECK(g.constructions_of(t).size() == 2);
  CHECK(g.edge(e).color == "leap");
}

TEST_CASE("roots carry no construction edge") {
  Hypergraph g;
  NodeId ax = g.add_root(NodeKind::Atom, std::string("ax:A"));
  CHECK(g.is_root(ax));
  CHECK(g.constructions_of(ax).empty());
  CHECK_THROWS_AS(g.add_derivation({}, ax, "bad", EdgeClass::Deduction), Error);
  // re-adding the same root returns the same id
  CHECK(g.add_root(NodeKind::Atom, std::string("ax:A")) == ax);
}

TEST_CASE("definitions are unique by name") {
  Hypergraph g;
  NodeId z = g.add_node(NodeKind::NatZero, {}, {}, "zero-intro",
                        EdgeClass::Introduction);
  NodeId d = g.define("z", z);
  CHECK(g.definition("z") == d);
  CHECK(g.node(d).kind == NodeKind::DefRef);
  CHECK_THROWS_AS(g.define("z", z), Error);
}

TEST_CASE("revision counter advances on mutation") {
  Hypergraph g;
  auto r0 = g.revision();
  NodeId z = g.add_node(NodeKind::NatZero, {}, {}, "zero-intro",
                        EdgeClass::Introduction);
  CHECK(g.revision() > r0);
  auto r1 = g.revision();
  g.tombstone(z);
  CHECK(g.revision() > r1);
  CHECK(g.tombstoned(z));
}

TEST_CASE("topological order covers all nodes") {
  Hypergraph g;
  mk_succ_tower(g, 4);
  auto order = g.topo_order();
  CHECK(order.size() == g.node_count());
}
