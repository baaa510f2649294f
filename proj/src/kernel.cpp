#include "proofgraph/kernel.hpp"

#include <algorithm>
#include <cassert>

namespace proofgraph {

namespace {

struct MakeInfo {
  std::string_view color;
  EdgeClass cls;
};

MakeInfo make_info(NodeKind k) {
  switch (k) {
    case NodeKind::NatZero: return {"zero-intro", EdgeClass::Introduction};
    case NodeKind::NatSucc: return {"succ-intro", EdgeClass::Introduction};
    case NodeKind::Var: return {"var-intro", EdgeClass::Introduction};
    case NodeKind::Lambda: return {"lambda-intro", EdgeClass::Introduction};
    case NodeKind::App: return {"app-elim", EdgeClass::Elimination};
    case NodeKind::PiForm: return {"pi-form", EdgeClass::Formation};
    case NodeKind::SigmaForm: return {"sigma-form", EdgeClass::Formation};
    case NodeKind::Pair: return {"pair-intro", EdgeClass::Introduction};
    case NodeKind::Proj1: return {"proj1-elim", EdgeClass::Elimination};
    case NodeKind::Proj2: return {"proj2-elim", EdgeClass::Elimination};
    case NodeKind::IdForm: return {"id-form", EdgeClass::Formation};
    case NodeKind::Refl: return {"refl-intro", EdgeClass::Introduction};
    case NodeKind::Cong: return {"cong-elim", EdgeClass::Elimination};
    case NodeKind::Rec: return {"rec-elim", EdgeClass::Elimination};
    case NodeKind::DefRef: return {"definition", EdgeClass::Introduction};
    case NodeKind::PropAnd: return {"and-form", EdgeClass::Formation};
    case NodeKind::PropImplies: return {"implies-form", EdgeClass::Formation};
    case NodeKind::PropNot: return {"not-form", EdgeClass::Formation};
    default: return {"formation", EdgeClass::Formation};
  }
}

bool binds_second_child(NodeKind k) {
  return k == NodeKind::Lambda || k == NodeKind::PiForm ||
         k == NodeKind::SigmaForm;
}

}  // namespace

NodeId Kernel::sort() { return g_->add_root(NodeKind::Sort, std::string("Type")); }
NodeId Kernel::nat() { return g_->add_root(NodeKind::Sort, std::string("Nat")); }

NodeId Kernel::zero() {
  auto info = make_info(NodeKind::NatZero);
  return g_->add_node(NodeKind::NatZero, {}, {}, info.color, info.cls);
}

NodeId Kernel::succ(NodeId n) {
  auto info = make_info(NodeKind::NatSucc);
  return g_->add_node(NodeKind::NatSucc, {}, {n}, info.color, info.cls);
}

NodeId Kernel::numeral(std::uint32_t k) {
  NodeId n = zero();
  for (std::uint32_t i = 0; i < k; ++i) n = succ(n);
  return n;
}

NodeId Kernel::var(std::uint32_t index) {
  auto info = make_info(NodeKind::Var);
  return g_->add_node(NodeKind::Var, index, {}, info.color, info.cls);
}

NodeId Kernel::lambda(NodeId domain, NodeId body) {
  auto info = make_info(NodeKind::Lambda);
  return g_->add_node(NodeKind::Lambda, {}, {domain, body}, info.color,
                      info.cls);
}

NodeId Kernel::app(NodeId fn, NodeId arg) {
  auto info = make_info(NodeKind::App);
  return g_->add_node(NodeKind::App, {}, {fn, arg}, info.color, info.cls);
}

NodeId Kernel::pi(NodeId domain, NodeId codomain) {
  auto info = make_info(NodeKind::PiForm);
  return g_->add_node(NodeKind::PiForm, {}, {domain, codomain}, info.color,
                      info.cls);
}

NodeId Kernel::sigma(NodeId domain, NodeId codomain) {
  auto info = make_info(NodeKind::SigmaForm);
  return g_->add_node(NodeKind::SigmaForm, {}, {domain, codomain}, info.color,
                      info.cls);
}

NodeId Kernel::pair(NodeId first, NodeId second) {
  auto info = make_info(NodeKind::Pair);
  return g_->add_node(NodeKind::Pair, {}, {first, second}, info.color,
                      info.cls);
}

NodeId Kernel::proj1(NodeId p) {
  auto info = make_info(NodeKind::Proj1);
  return g_->add_node(NodeKind::Proj1, {}, {p}, info.color, info.cls);
}

NodeId Kernel::proj2(NodeId p) {
  auto info = make_info(NodeKind::Proj2);
  return g_->add_node(NodeKind::Proj2, {}, {p}, info.color, info.cls);
}

NodeId Kernel::id_form(NodeId type, NodeId lhs, NodeId rhs) {
  auto info = make_info(NodeKind::IdForm);
  return g_->add_node(NodeKind::IdForm, {}, {type, lhs, rhs}, info.color,
                      info.cls);
}

NodeId Kernel::refl(NodeId term) {
  auto info = make_info(NodeKind::Refl);
  return g_->add_node(NodeKind::Refl, {}, {term}, info.color, info.cls);
}

NodeId Kernel::cong(NodeId proof) {
  auto info = make_info(NodeKind::Cong);
  return g_->add_node(NodeKind::Cong, {}, {proof}, info.color, info.cls);
}

NodeId Kernel::rec(NodeId motive, NodeId base, NodeId step, NodeId target) {
  auto info = make_info(NodeKind::Rec);
  return g_->add_node(NodeKind::Rec, {}, {motive, base, step, target},
                      info.color, info.cls);
}

NodeId Kernel::atom(const std::string& name) {
  return g_->add_root(NodeKind::Atom, name);
}

NodeId Kernel::prop_and(NodeId a, NodeId b) {
  auto info = make_info(NodeKind::PropAnd);
  return g_->add_node(NodeKind::PropAnd, {}, {a, b}, info.color, info.cls);
}

NodeId Kernel::prop_implies(NodeId a, NodeId b) {
  auto info = make_info(NodeKind::PropImplies);
  return g_->add_node(NodeKind::PropImplies, {}, {a, b}, info.color, info.cls);
}

NodeId Kernel::prop_not(NodeId a) {
  auto info = make_info(NodeKind::PropNot);
  return g_->add_node(NodeKind::PropNot, {}, {a}, info.color, info.cls);
}

TermView Kernel::view(NodeId n) const {
  const Node& node = g_->node(n);
  return TermView{n, node.kind, node.payload, node.children};
}

NodeId Kernel::rebuild(const Node& n, const std::vector<NodeId>& children) {
  auto info = make_info(n.kind);
  return g_->add_node(n.kind, n.payload, children, info.color, info.cls);
}

NodeId Kernel::shift(NodeId term, std::uint32_t cutoff, std::int32_t delta) {
  const Node n = g_->node(term);
  switch (n.kind) {
    case NodeKind::Var: {
      std::uint32_t i = std::get<std::uint32_t>(n.payload);
      if (i < cutoff) return term;
      return var(static_cast<std::uint32_t>(static_cast<std::int64_t>(i) +
                                            delta));
    }
    case NodeKind::Sort:
    case NodeKind::Atom:
    case NodeKind::NatZero:
      return term;
    case NodeKind::DefRef:
      return term;  // definitions are closed
    default: {
      if (n.children.empty()) return term;
      std::vector<NodeId> kids;
      kids.reserve(n.children.size());
      bool changed = false;
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        std::uint32_t c =
            (binds_second_child(n.kind) && i == 1) ? cutoff + 1 : cutoff;
        NodeId s = shift(n.children[i], c, delta);
        changed |= (s != n.children[i]);
        kids.push_back(s);
      }
      if (!changed) return term;
      return rebuild(n, kids);
    }
  }
}

NodeId Kernel::subst(NodeId term, std::uint32_t index, NodeId value) {
  const Node n = g_->node(term);
  switch (n.kind) {
    case NodeKind::Var: {
      std::uint32_t i = std::get<std::uint32_t>(n.payload);
      if (i == index) return shift(value, 0, static_cast<std::int32_t>(index));
      if (i > index) return var(i - 1);
      return term;
    }
    case NodeKind::Sort:
    case NodeKind::Atom:
    case NodeKind::NatZero:
    case NodeKind::DefRef:
      return term;
    default: {
      if (n.children.empty()) return term;
      std::vector<NodeId> kids;
      kids.reserve(n.children.size());
      bool changed = false;
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        std::uint32_t j =
            (binds_second_child(n.kind) && i == 1) ? index + 1 : index;
        NodeId s = subst(n.children[i], j, value);
        changed |= (s != n.children[i]);
        kids.push_back(s);
      }
      if (!changed) return term;
      return rebuild(n, kids);
    }
  }
}

std::uint32_t Kernel::free_span(NodeId term) const {
  const Node& n = g_->node(term);
  switch (n.kind) {
    case NodeKind::Var:
      return std::get<std::uint32_t>(n.payload) + 1;
    case NodeKind::DefRef:
      return 0;
    default: {
      std::uint32_t span = 0;
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        std::uint32_t s = free_span(n.children[i]);
        if (binds_second_child(n.kind) && i == 1) s = (s > 0) ? s - 1 : 0;
        span = std::max(span, s);
      }
      return span;
    }
  }
}

bool Kernel::is_prop_form(NodeId term) const {
  switch (g_->node(term).kind) {
    case NodeKind::IdForm:
    case NodeKind::PropAnd:
    case NodeKind::PropImplies:
    case NodeKind::PropNot:
    case NodeKind::Atom:
      return true;
    default:
      return false;
  }
}

std::optional<std::uint32_t> Kernel::numeral_value(NodeId term) const {
  std::uint32_t k = 0;
  NodeId cur = term;
  while (true) {
    const Node& n = g_->node(cur);
    if (n.kind == NodeKind::NatZero) return k;
    if (n.kind != NodeKind::NatSucc) return std::nullopt;
    ++k;
    cur = n.children[0];
  }
}

// ---------------------------------------------------------------------------
// Reduction

std::optional<NodeId> Kernel::head_step(NodeId term) {
  const Node n = g_->node(term);
  switch (n.kind) {
    case NodeKind::App: {
      const Node f = g_->node(n.children[0]);
      if (f.kind == NodeKind::Lambda)
        return subst(f.children[1], 0, n.children[1]);
      return std::nullopt;
    }
    case NodeKind::Proj1: {
      const Node p = g_->node(n.children[0]);
      if (p.kind == NodeKind::Pair) return p.children[0];
      return std::nullopt;
    }
    case NodeKind::Proj2: {
      const Node p = g_->node(n.children[0]);
      if (p.kind == NodeKind::Pair) return p.children[1];
      return std::nullopt;
    }
    case NodeKind::Rec: {
      const Node t = g_->node(n.children[3]);
      if (t.kind == NodeKind::NatZero) return n.children[1];
      if (t.kind == NodeKind::NatSucc) {
        NodeId pred = t.children[0];
        NodeId rec_pred =
            rec(n.children[0], n.children[1], n.children[2], pred);
        return app(app(n.children[2], pred), rec_pred);
      }
      return std::nullopt;
    }
    case NodeKind::Cong: {
      const Node p = g_->node(n.children[0]);
      if (p.kind == NodeKind::Refl) return refl(succ(p.children[0]));
      return std::nullopt;
    }
    case NodeKind::DefRef:
      return n.children[0];
    case NodeKind::PropImplies:
      return pi(n.children[0], shift(n.children[1], 0, 1));
    case NodeKind::PropAnd:
      return sigma(n.children[0], shift(n.children[1], 0, 1));
    default:
      return std::nullopt;
  }
}

namespace {
std::string_view step_color(NodeKind k) {
  switch (k) {
    case NodeKind::App: return "beta";
    case NodeKind::Proj1:
    case NodeKind::Proj2: return "proj";
    case NodeKind::Rec: return "iota";
    case NodeKind::Cong: return "cong-refl";
    case NodeKind::DefRef: return "delta";
    default: return "unfold";
  }
}
}  // namespace

std::optional<NodeId> Kernel::reduce_step(NodeId term) {
  // Leftmost-outermost: head position first, then children left to right.
  struct Walker {
    Kernel* k;
    std::optional<NodeId> walk(NodeId t, std::string_view* color) {
      if (auto r = k->head_step(t)) {
        *color = step_color(k->graph().node(t).kind);
        return r;
      }
      const Node n = k->graph().node(t);
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (auto r = walk(n.children[i], color)) {
          std::vector<NodeId> kids = n.children;
          kids[i] = *r;
          return k->rebuild(k->graph().node(t), kids);
        }
      }
      return std::nullopt;
    }
  };
  std::string_view color = "step";
  Walker w{this};
  auto r = w.walk(term, &color);
  if (r && *r != term) g_->add_computation(term, *r, color);
  return r;
}

std::vector<NodeId> Kernel::reducts(NodeId term) {
  std::vector<NodeId> out;
  if (auto r = head_step(term)) out.push_back(*r);
  const Node n = g_->node(term);
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    for (NodeId r : reducts(n.children[i])) {
      std::vector<NodeId> kids = n.children;
      kids[i] = r;
      out.push_back(rebuild(g_->node(term), kids));
    }
  }
  return out;
}

NormalizeResult Kernel::normalize(NodeId term, int fuel) {
  if (fuel <= 0) throw Error(ErrorCode::BudgetZero, "normalize needs fuel > 0");
  NormalizeResult res;
  res.node = term;
  while (res.steps < fuel) {
    auto r = reduce_step(res.node);
    if (!r) return res;
    res.node = *r;
    ++res.steps;
  }
  // Fuel exhausted: report the partial reduct unless already normal.
  res.complete = !reduce_step(res.node).has_value();
  return res;
}

NodeId Kernel::whnf(NodeId term, int& fuel) {
  NodeId t = term;
  while (fuel > 0) {
    const Node n = g_->node(t);
    if (auto r = head_step(t)) {
      t = *r;
      --fuel;
      continue;
    }
    if (n.kind == NodeKind::App) {
      NodeId f = whnf(n.children[0], fuel);
      if (f != n.children[0]) {
        t = app(f, n.children[1]);
        continue;
      }
      return t;
    }
    if (n.kind == NodeKind::Proj1 || n.kind == NodeKind::Proj2) {
      NodeId p = whnf(n.children[0], fuel);
      if (p != n.children[0]) {
        t = rebuild(n, {p});
        continue;
      }
      return t;
    }
    if (n.kind == NodeKind::Rec) {
      NodeId tgt = whnf(n.children[3], fuel);
      if (tgt != n.children[3]) {
        t = rec(n.children[0], n.children[1], n.children[2], tgt);
        continue;
      }
      return t;
    }
    if (n.kind == NodeKind::Cong) {
      NodeId p = whnf(n.children[0], fuel);
      if (p != n.children[0]) {
        t = cong(p);
        continue;
      }
      return t;
    }
    return t;
  }
  throw Error(ErrorCode::FuelExhausted, "whnf ran out of fuel");
}

CheckResult Kernel::defeq(NodeId a, NodeId b, int fuel) {
  if (a == b) return CheckResult::Valid;
  // Quiet normalization: nodes persist via hash-consing, edges are only
  // recorded by the public reduce_step/normalize path.
  auto quiet = [&](NodeId t, int budget, bool* complete) {
    NodeId cur = t;
    int used = 0;
    while (used < budget) {
      std::string_view color;
      struct Walker {
        Kernel* k;
        std::optional<NodeId> walk(NodeId x) {
          if (auto r = k->head_step(x)) return r;
          const Node n = k->graph().node(x);
          for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (auto r = walk(n.children[i])) {
              std::vector<NodeId> kids = n.children;
              kids[i] = *r;
              return k->rebuild(k->graph().node(x), kids);
            }
          }
          return std::nullopt;
        }
      };
      (void)color;
      Walker w{this};
      auto r = w.walk(cur);
      if (!r) {
        *complete = true;
        return cur;
      }
      cur = *r;
      ++used;
    }
    *complete = false;
    return cur;
  };
  bool ca = false, cb = false;
  NodeId na = quiet(a, fuel, &ca);
  NodeId nb = quiet(b, fuel, &cb);
  if (na == nb) return CheckResult::Valid;
  if (ca && cb) return CheckResult::Invalid;
  return CheckResult::Unknown;
}

// ---------------------------------------------------------------------------
// Typing

NodeId Kernel::infer(NodeId term, const Context& ctx) {
  const Node n = g_->node(term);
  auto require = [&](NodeId actual, NodeId expected, const char* what) {
    CheckResult r = defeq(actual, expected);
    if (r == CheckResult::Valid) return;
    if (r == CheckResult::Unknown)
      throw Error(ErrorCode::FuelExhausted,
                  std::string("definitional equality budget exhausted: ") +
                      what);
    throw Error(ErrorCode::TypeMismatch,
                std::string("type mismatch in ") + what + " (node " +
                    std::to_string(term) + ")");
  };
  auto require_sort = [&](NodeId t, const char* what) {
    int fuel = kDefaultFuel;
    NodeId h = whnf(infer(t, ctx), fuel);
    if (g_->node(h).kind != NodeKind::Sort)
      throw Error(ErrorCode::TypeMismatch,
                  std::string("expected a type in ") + what);
  };

  switch (n.kind) {
    case NodeKind::Sort:
      return sort();
    case NodeKind::Atom:
      if (n.type) return *n.type;  // asserted axiom typing
      return sort();
    case NodeKind::NatZero:
      return nat();
    case NodeKind::NatSucc:
      require(infer(n.children[0], ctx), nat(), "succ argument");
      return nat();
    case NodeKind::Var: {
      std::uint32_t i = std::get<std::uint32_t>(n.payload);
      if (i >= ctx.size())
        throw Error(ErrorCode::UnboundVariable,
                    "unbound variable index " + std::to_string(i));
      return shift(ctx[ctx.size() - 1 - i], 0,
                   static_cast<std::int32_t>(i) + 1);
    }
    case NodeKind::Lambda: {
      require_sort(n.children[0], "lambda domain");
      Context inner = ctx;
      inner.push_back(n.children[0]);
      NodeId body_ty = infer(n.children[1], inner);
      return pi(n.children[0], body_ty);
    }
    case NodeKind::App: {
      NodeId fn_ty = infer(n.children[0], ctx);
      int fuel = kDefaultFuel;
      NodeId h = whnf(fn_ty, fuel);
      const Node ht = g_->node(h);
      if (ht.kind == NodeKind::PiForm) {
        require(infer(n.children[1], ctx), ht.children[0], "application");
        return subst(ht.children[1], 0, n.children[1]);
      }
      if (ht.kind == NodeKind::PropImplies) {
        require(infer(n.children[1], ctx), ht.children[0], "modus ponens");
        return ht.children[1];
      }
      throw Error(ErrorCode::TypeMismatch,
                  "application head is not a function");
    }
    case NodeKind::PiForm:
    case NodeKind::SigmaForm: {
      require_sort(n.children[0], "binder domain");
      Context inner = ctx;
      inner.push_back(n.children[0]);
      NodeId cod_ty = infer(n.children[1], inner);
      int fuel = kDefaultFuel;
      if (g_->node(whnf(cod_ty, fuel)).kind != NodeKind::Sort)
        throw Error(ErrorCode::TypeMismatch, "codomain is not a type");
      return sort();
    }
    case NodeKind::Pair: {
      NodeId ta = infer(n.children[0], ctx);
      NodeId tb = infer(n.children[1], ctx);
      if (is_prop_form(ta) && is_prop_form(tb)) return prop_and(ta, tb);
      return sigma(ta, shift(tb, 0, 1));
    }
    case NodeKind::Proj1: {
      int fuel = kDefaultFuel;
      NodeId h = whnf(infer(n.children[0], ctx), fuel);
      const Node ht = g_->node(h);
      if (ht.kind == NodeKind::SigmaForm) return ht.children[0];
      if (ht.kind == NodeKind::PropAnd) return ht.children[0];
      throw Error(ErrorCode::TypeMismatch, "proj1 of a non-pair");
    }
    case NodeKind::Proj2: {
      int fuel = kDefaultFuel;
      NodeId h = whnf(infer(n.children[0], ctx), fuel);
      const Node ht = g_->node(h);
      if (ht.kind == NodeKind::SigmaForm)
        return subst(ht.children[1], 0, proj1(n.children[0]));
      if (ht.kind == NodeKind::PropAnd) return ht.children[1];
      throw Error(ErrorCode::TypeMismatch, "proj2 of a non-pair");
    }
    case NodeKind::IdForm: {
      require_sort(n.children[0], "identity carrier");
      require(infer(n.children[1], ctx), n.children[0], "identity lhs");
      require(infer(n.children[2], ctx), n.children[0], "identity rhs");
      return sort();
    }
    case NodeKind::Refl: {
      NodeId t = infer(n.children[0], ctx);
      return id_form(t, n.children[0], n.children[0]);
    }
    case NodeKind::Cong: {
      int fuel = kDefaultFuel;
      NodeId h = whnf(infer(n.children[0], ctx), fuel);
      const Node ht = g_->node(h);
      if (ht.kind != NodeKind::IdForm)
        throw Error(ErrorCode::TypeMismatch, "cong expects an equality proof");
      require(ht.children[0], nat(), "cong carrier");
      return id_form(nat(), succ(ht.children[1]), succ(ht.children[2]));
    }
    case NodeKind::Rec: {
      NodeId motive = n.children[0];
      NodeId base = n.children[1];
      NodeId step = n.children[2];
      NodeId target = n.children[3];
      require(infer(motive, ctx), pi(nat(), sort()), "rec motive");
      require(infer(base, ctx), app(motive, zero()), "rec base");
      NodeId p1 = shift(motive, 0, 1);
      NodeId p2 = shift(motive, 0, 2);
      NodeId expected =
          pi(nat(), pi(app(p1, var(0)), app(p2, succ(var(1)))));
      require(infer(step, ctx), expected, "rec step");
      require(infer(target, ctx), nat(), "rec target");
      return app(motive, target);
    }
    case NodeKind::DefRef:
      return infer(n.children[0], ctx);
    case NodeKind::PropAnd:
    case NodeKind::PropImplies: {
      require_sort(n.children[0], "connective operand");
      require_sort(n.children[1], "connective operand");
      return sort();
    }
    case NodeKind::PropNot:
      require_sort(n.children[0], "negation operand");
      return sort();
  }
  throw Error(ErrorCode::Internal, "unhandled node kind in infer");
}

Judgment Kernel::judge(NodeId term, const Context& ctx) {
  NodeId ty = infer(term, ctx);
  EdgeId e = g_->add_typing(term, ty);
  return Judgment{term, ty, e};
}

RecCell Kernel::mk_rec(NodeId motive, NodeId base, NodeId step, NodeId target,
                       const Context& ctx) {
  NodeId r = rec(motive, base, step, target);
  Judgment j = judge(r, ctx);
  return RecCell{motive, base, step, target, j};
}

Judgment Kernel::assume(const std::string& name, NodeId prop) {
  // Axioms are proof nodes in the root layer with an asserted typing edge.
  NodeId p = g_->add_root(NodeKind::Atom, "ax:" + name);
  EdgeId e = g_->add_typing(p, prop);
  return Judgment{p, prop, e};
}

NodeId Kernel::define(const std::string& name, NodeId body) {
  if (!is_closed(body))
    throw Error(ErrorCode::OpenTerm,
                "definition body must be closed: " + name);
  return g_->define(name, body);
}

ProofCheck Kernel::check_proof(NodeId proof, NodeId prop, int fuel) {
  g_->check_node(proof, "proof");
  g_->check_node(prop, "proposition");
  ProofCheck out;
  NodeId inferred = kNoNode;
  try {
    inferred = infer(proof, {});
  } catch (const Error& e) {
    if (e.code() == ErrorCode::FuelExhausted) {
      out.result = CheckResult::Unknown;
      out.message = e.what();
      return out;
    }
    out.result = CheckResult::Invalid;
    out.failing = Judgment{proof, prop, 0};
    out.message = e.what();
    return out;
  }
  CheckResult eq = defeq(inferred, prop, fuel);
  out.result = eq;
  if (eq == CheckResult::Invalid) {
    out.failing = Judgment{proof, inferred, 0};
    out.message = "proof inhabits a different proposition";
  } else if (eq == CheckResult::Unknown) {
    out.message = "definitional equality budget exhausted";
  }
  return out;
}

ExampleTable Kernel::build_appendix_examples() {
  ExampleTable t;
  NodeId N = nat();

  // add = \m. \n. rec (\_. N) m (\k. \v. succ v) n
  NodeId const_nat = lambda(N, N);
  NodeId add_step = lambda(N, lambda(N, succ(var(0))));
  NodeId add_body = rec(const_nat, var(1), add_step, var(0));
  t.add = lambda(N, lambda(N, add_body));
  judge(t.add);

  // double = \n. rec (\_. N) zero (\k. \v. succ (succ v)) n
  NodeId dbl_step = lambda(N, lambda(N, succ(succ(var(0)))));
  t.double_fn = lambda(N, rec(const_nat, zero(), dbl_step, var(0)));
  judge(t.double_fn);

  // Pi/Sigma distributivity, in context [A : Type, P : A -> Type,
  // Q : A -> Type] with Var0 = Q, Var1 = P, Var2 = A.
  NodeId ty = sort();
  t.distrib_ctx = {ty, pi(var(0), ty), pi(var(1), ty)};
  // f : Pi (x:A). Sigma (P x) (Q x)
  NodeId dom_f =
      pi(var(2), sigma(app(var(2), var(0)), app(var(2), var(1))));
  // under [.., f]: A = Var3; under [.., f, x]: f = Var1, x = Var0, A = Var4
  NodeId g_fn = lambda(var(3), proj1(app(var(1), var(0))));
  NodeId h_fn = lambda(var(3), proj2(app(var(1), var(0))));
  t.distrib = lambda(dom_f, pair(g_fn, h_fn));
  t.distrib_type = judge(t.distrib, t.distrib_ctx).type;
  return t;
}

}  // namespace proofgraph
