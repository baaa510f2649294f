#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proofgraph/hypergraph.hpp"

namespace proofgraph {

// A typing context: types of bound variables, outermost first.
// Var(i) refers to ctx[ctx.size() - 1 - i]; each entry is expressed in the
// context of the entries before it.
using Context = std::vector<NodeId>;

struct Judgment {
  NodeId subject = kNoNode;
  NodeId type = kNoNode;
  EdgeId evidence = 0;
};

struct TermView {
  NodeId node = kNoNode;
  NodeKind kind = NodeKind::Sort;
  Payload payload;
  std::vector<NodeId> children;
};

struct NormalizeResult {
  NodeId node = kNoNode;
  int steps = 0;
  bool complete = true;
};

enum class CheckResult { Valid, Invalid, Unknown };

struct ProofCheck {
  CheckResult result = CheckResult::Invalid;
  // On Invalid: the judgment that failed (subject, expected-or-actual type).
  std::optional<Judgment> failing;
  std::string message;
};

struct RecCell {
  NodeId motive = kNoNode;
  NodeId base = kNoNode;
  NodeId step = kNoNode;
  NodeId target = kNoNode;
  Judgment result;
};

// Named node table produced by build_appendix_examples.
struct ExampleTable {
  NodeId add = kNoNode;       // lambda-wrapped Rec cell for addition
  NodeId double_fn = kNoNode; // lambda-wrapped Rec cell for doubling
  NodeId distrib = kNoNode;   // Pi/Sigma distributivity witness (open term)
  Context distrib_ctx;        // [A : Type, P : A -> Type, Q : A -> Type]
  NodeId distrib_type = kNoNode;
};

// The mini dependent-type-theory kernel over a hypergraph: constructors with
// typing edges, beta/iota/projection/delta computation edges, fuelled
// normalization and proof checking.
class Kernel {
 public:
  explicit Kernel(Hypergraph& g) : g_(&g) {}

  Hypergraph& graph() { return *g_; }
  const Hypergraph& graph() const { return *g_; }

  // Base sorts.
  NodeId sort();  // the single universe
  NodeId nat();

  // Term builders (hash-consed; no typing performed).
  NodeId zero();
  NodeId succ(NodeId n);
  NodeId numeral(std::uint32_t k);
  NodeId var(std::uint32_t index);
  NodeId lambda(NodeId domain, NodeId body);
  NodeId app(NodeId fn, NodeId arg);
  NodeId app2(NodeId fn, NodeId a, NodeId b) { return app(app(fn, a), b); }
  NodeId pi(NodeId domain, NodeId codomain);
  NodeId sigma(NodeId domain, NodeId codomain);
  NodeId pair(NodeId first, NodeId second);
  NodeId proj1(NodeId p);
  NodeId proj2(NodeId p);
  NodeId id_form(NodeId type, NodeId lhs, NodeId rhs);
  NodeId refl(NodeId term);
  NodeId cong(NodeId proof);
  NodeId rec(NodeId motive, NodeId base, NodeId step, NodeId target);
  NodeId atom(const std::string& name);
  NodeId prop_and(NodeId a, NodeId b);
  NodeId prop_implies(NodeId a, NodeId b);
  NodeId prop_not(NodeId a);

  // Constructor + typing edge, atomically. Throws TypeMismatch /
  // UnboundVariable when the arguments do not fit the kind's signature.
  Judgment judge(NodeId term, const Context& ctx = {});
  RecCell mk_rec(NodeId motive, NodeId base, NodeId step, NodeId target,
                 const Context& ctx = {});

  // An axiom: a root proof node carrying an asserted typing edge.
  Judgment assume(const std::string& name, NodeId prop);

  // Named definition; the DefRef unfolds to `body` by one delta step.
  NodeId define(const std::string& name, NodeId body);

  TermView view(NodeId n) const;

  // Type inference. Adds typing edges for closed subjects.
  NodeId infer(NodeId term, const Context& ctx = {});

  // One leftmost-outermost step; absent when the term is in normal form.
  std::optional<NodeId> reduce_step(NodeId term);
  // Every one-step reduct (all redex positions); used by confluence checks.
  std::vector<NodeId> reducts(NodeId term);

  NormalizeResult normalize(NodeId term, int fuel = kDefaultFuel);

  // Definitional equality: shared normal form within the fuel budget.
  CheckResult defeq(NodeId a, NodeId b, int fuel = kDefaultFuel);

  ProofCheck check_proof(NodeId proof, NodeId prop, int fuel = kDefaultFuel);

  // Appendix constructions: addition, doubling, Pi/Sigma distributivity.
  ExampleTable build_appendix_examples();

  // De Bruijn machinery (exposed for search tactics).
  NodeId shift(NodeId term, std::uint32_t cutoff, std::int32_t delta);
  NodeId subst(NodeId term, std::uint32_t index, NodeId value);
  // Largest free variable index + 1 (0 for closed terms).
  std::uint32_t free_span(NodeId term) const;
  bool is_closed(NodeId term) const { return free_span(term) == 0; }

  // Propositions are Sort-typed statement forms.
  bool is_prop_form(NodeId term) const;
  // Unary-numeral recognition; nullopt when not a numeral.
  std::optional<std::uint32_t> numeral_value(NodeId term) const;

  static constexpr int kDefaultFuel = 100000;

 private:
  NodeId whnf(NodeId term, int& fuel);
  std::optional<NodeId> head_step(NodeId term);
  NodeId rebuild(const Node& n, const std::vector<NodeId>& children);

  Hypergraph* g_;
};

}  // namespace proofgraph
