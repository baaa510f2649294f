#include "doctest.h"
#include "proofgraph/syntax.hpp"

using namespace proofgraph;

TEST_CASE("parses the rec surface form") {
  Hypergraph g;
  Kernel k(g);
  NodeId t = parse_term(
      k, "(rec (lam _ Nat) 2 (lam k (lam v (succ v))) 3)");
  NodeId expect = k.rec(k.lambda(k.nat(), k.nat()), k.numeral(2),
                        k.lambda(k.nat(), k.lambda(k.nat(), k.succ(k.var(0)))),
                        k.numeral(3));
  CHECK(t == expect);
  CHECK(k.numeral_value(k.normalize(t).node) == 5);
}

TEST_CASE("numerals, binders and application spines") {
  Hypergraph g;
  Kernel k(g);
  CHECK(parse_term(k, "0") == k.zero());
  CHECK(parse_term(k, "3") == k.numeral(3));
  CHECK(parse_term(k, "(succ 2)") == k.numeral(3));
  CHECK(parse_term(k, "(lam x x)") == k.lambda(k.nat(), k.var(0)));
  CHECK(parse_term(k, "(lam x Type x)") == k.lambda(k.sort(), k.var(0)));
  CHECK(parse_term(k, "(pi x Nat Nat)") == k.pi(k.nat(), k.nat()));
  // shadowing: innermost binder wins
  CHECK(parse_term(k, "(lam x (lam x x))") ==
        k.lambda(k.nat(), k.lambda(k.nat(), k.var(0))));
  NodeId f = k.lambda(k.nat(), k.lambda(k.nat(), k.var(1)));
  k.define("fst2", f);
  NodeId ref = *g.definition("fst2");
  CHECK(parse_term(k, "(fst2 1 2)") == k.app2(ref, k.numeral(1), k.numeral(2)));
  CHECK(parse_term(k, "(app fst2 1 2)") == parse_term(k, "(fst2 1 2)"));
  CHECK(k.numeral_value(k.normalize(parse_term(k, "(fst2 1 2)")).node) == 1);
}

TEST_CASE("parse errors carry positions") {
  Hypergraph g;
  Kernel k(g);
  for (const char* bad : {"(succ", "(succ 1))", "(lam)", "nope", "(1 2",
                          "()", "(rec 1 2 3)"}) {
    try {
      parse_term(k, bad);
      FAIL_CHECK("expected a parse error for: " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find("offset") != std::string::npos);
    }
  }
}

TEST_CASE("print/parse round-trips closed terms") {
  Hypergraph g;
  Kernel k(g);
  auto ex = k.build_appendix_examples();
  k.define("add", ex.add);
  std::vector<NodeId> terms = {
      k.zero(),
      k.numeral(4),
      ex.add,
      ex.double_fn,
      k.app2(*g.definition("add"), k.numeral(2), k.numeral(2)),
      k.pair(k.zero(), k.refl(k.zero())),
      k.id_form(k.nat(), k.numeral(1), k.numeral(1)),
      k.prop_implies(k.atom("A"), k.atom("B")),
      k.prop_not(k.atom("A")),
      k.pi(k.sort(), k.sigma(k.var(0), k.var(1))),
  };
  for (NodeId t : terms) {
    std::string s = print_term(g, t);
    CAPTURE(s);
    CHECK(parse_term(k, s) == t);
  }
}

TEST_CASE("open terms round-trip through free-variable references") {
  Hypergraph g;
  Kernel k(g);
  NodeId t = k.lambda(k.nat(), k.app(k.var(2), k.var(0)));
  std::string s = print_term(g, t);
  CHECK(s == "(lam x0 Nat (?1 x0))");
  CHECK(parse_term(k, s) == t);
}

TEST_CASE("token counts: parentheses are free") {
  CHECK(token_count("zero") == 1);
  CHECK(token_count("(succ (succ (succ (succ zero))))") == 5);
  CHECK(token_count("(double (succ (succ zero)))") == 4);
  CHECK(token_count("(lam x0 Nat x0)") == 4);
  CHECK(token_count("  ( a ; comment\n b )") == 2);
}

TEST_CASE("printed numerals are succ towers") {
  Hypergraph g;
  Kernel k(g);
  CHECK(print_term(g, k.numeral(2)) == "(succ (succ zero))");
  CHECK(token_count(print_term(g, k.numeral(4))) == 5);
}
