#include "proofgraph/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "proofgraph/syntax.hpp"

namespace proofgraph {

using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Fact index over the proven list

struct FactBase {
  std::map<NodeId, NodeId> proof_of;                 // proposition -> proof
  std::map<NodeId, std::vector<NodeId>> by_antecedent;   // A -> implications
  std::map<NodeId, std::vector<NodeId>> by_consequent;   // B -> implications

  void index(const Hypergraph& g, NodeId prop) {
    const Node& n = g.node(prop);
    if (n.kind == NodeKind::PropImplies) {
      by_antecedent[n.children[0]].push_back(prop);
      by_consequent[n.children[1]].push_back(prop);
    }
  }

  explicit FactBase(const Corpus& c) {
    for (const auto& [prop, proof] : c.proven)
      if (proof_of.emplace(prop, proof).second) index(c.graph, prop);
  }
};

// ---------------------------------------------------------------------------
// Equational goal shape: Pi x1 ... Pi xv. Id(T, lhs, rhs)

struct IdFamily {
  std::vector<NodeId> domains;  // binder domains, outermost first
  NodeId body = kNoNode;        // the identity form under the binders
  NodeId type = kNoNode;
  NodeId lhs = kNoNode;
  NodeId rhs = kNoNode;
};

std::optional<IdFamily> id_family(const Hypergraph& g, NodeId prop) {
  IdFamily f;
  NodeId cur = prop;
  while (g.node(cur).kind == NodeKind::PiForm) {
    f.domains.push_back(g.node(cur).children[0]);
    cur = g.node(cur).children[1];
  }
  const Node& n = g.node(cur);
  if (n.kind != NodeKind::IdForm) return std::nullopt;
  f.body = cur;
  f.type = n.children[0];
  f.lhs = n.children[1];
  f.rhs = n.children[2];
  return f;
}

NodeId wrap_binders(Kernel& k, const IdFamily& f, NodeId core) {
  for (auto it = f.domains.rbegin(); it != f.domains.rend(); ++it)
    core = k.lambda(*it, core);
  return core;
}

std::optional<NodeId> try_refl(Kernel& k, const IdFamily& f, NodeId prop) {
  NodeId proof = wrap_binders(k, f, k.refl(f.lhs));
  if (k.check_proof(proof, prop).result == CheckResult::Valid) return proof;
  return std::nullopt;
}

bool all_nat(Kernel& k, const IdFamily& f) {
  for (NodeId d : f.domains)
    if (d != k.nat()) return false;
  return true;
}

// Structural induction on the innermost quantified variable: the motive
// abstracts it away, the base holds by refl, the step lifts the hypothesis
// through the successor by congruence. The kernel has the final word.
std::optional<NodeId> induction_candidate(Kernel& k, const IdFamily& f,
                                          NodeId prop) {
  if (f.domains.empty() || f.type != k.nat() || !all_nat(k, f))
    return std::nullopt;
  NodeId motive = k.lambda(k.nat(), k.shift(f.body, 1, 1));
  NodeId base = k.refl(k.subst(k.shift(f.lhs, 1, 1), 0, k.zero()));
  NodeId step = k.lambda(k.nat(), k.lambda(k.app(k.shift(motive, 0, 1),
                                                 k.var(0)),
                                           k.cong(k.var(0))));
  NodeId proof = wrap_binders(k, f, k.rec(motive, base, step, k.var(0)));
  if (k.check_proof(proof, prop).result == CheckResult::Valid) return proof;
  return std::nullopt;
}

// Instantiates leading Pi binders at the given numerals, outermost first.
NodeId instantiate(Kernel& k, NodeId prop,
                   const std::vector<std::uint32_t>& vals) {
  NodeId cur = prop;
  for (std::uint32_t v : vals) {
    const Node& n = k.graph().node(cur);
    if (n.kind != NodeKind::PiForm)
      throw Error(ErrorCode::Internal, "instantiate: not a universal");
    NodeId body = n.children[1];  // read before builders may reallocate
    cur = k.subst(body, 0, k.numeral(v));
  }
  return cur;
}

// Evaluates both sides on a small grid of numerals; distinct complete normal
// forms of closed naturals are a genuine counterexample.
std::optional<std::vector<std::uint32_t>> ground_refute(Kernel& k,
                                                        const IdFamily& f,
                                                        NodeId prop,
                                                        std::uint32_t range) {
  if (f.type != k.nat() || f.domains.size() > 2 || !all_nat(k, f))
    return std::nullopt;
  // probe on a scratch graph holding just the statement's closure, so the
  // grid's instantiation and normalization traffic stays out of the working
  // graph
  Hypergraph scratch;
  Kernel sk(scratch);
  NodeId sprop = copy_term(k.graph(), prop, sk);
  std::size_t v = f.domains.size();
  std::vector<std::uint32_t> tuple(v, 0);
  while (true) {
    NodeId inst = instantiate(sk, sprop, tuple);
    // copy: normalization below may reallocate the node store
    const Node n = scratch.node(inst);
    if (n.kind != NodeKind::IdForm) return std::nullopt;
    NormalizeResult l = sk.normalize(n.children[1]);
    NormalizeResult r = sk.normalize(n.children[2]);
    if (l.complete && r.complete && l.node != r.node) return tuple;
    std::size_t i = 0;
    for (; i < v; ++i) {
      if (tuple[i] < range) {
        ++tuple[i];
        break;
      }
      tuple[i] = 0;
    }
    if (i == v) break;
  }
  return std::nullopt;
}

double branching_estimate(int expansions, int depth) {
  if (depth <= 0 || expansions <= 0) return 1.0;
  return std::pow(static_cast<double>(expansions), 1.0 / depth);
}

// ---------------------------------------------------------------------------
// Forward saturation

struct ForwardEngine {
  Corpus& c;
  Kernel k;
  const SearchOptions& o;
  FactBase fb;
  NodeId goal;
  int budget_used = 0;

  std::map<NodeId, NodeId> derived;  // statement -> proof
  std::map<NodeId, int> depth_of;
  std::deque<NodeId> queue;
  std::optional<NodeId> goal_proof;
  int goal_depth = 0;
  bool out_of_budget = false;

  ForwardEngine(Corpus& corpus, NodeId g, const SearchOptions& opts,
                int preused)
      : c(corpus), k(corpus.graph), o(opts), fb(corpus), goal(g),
        budget_used(preused) {
    for (const auto& [prop, proof] : c.proven)
      if (derived.emplace(prop, proof).second) {
        depth_of[prop] = 0;
        queue.push_back(prop);
      }
  }

  bool derive(NodeId prop, NodeId proof, int d) {
    if (derived.contains(prop)) return false;
    if (budget_used >= o.budget) {
      out_of_budget = true;
      return false;
    }
    ++budget_used;
    derived.emplace(prop, proof);
    depth_of[prop] = d;
    queue.push_back(prop);
    fb.index(c.graph, prop);
    if (prop == goal) {
      goal_proof = proof;
      goal_depth = d;
      return true;
    }
    return false;
  }

  void expand(NodeId p) {
    int dp = depth_of[p];
    NodeId pf = derived[p];
    // modus ponens with p as the antecedent of a known implication
    if (auto it = fb.by_antecedent.find(p); it != fb.by_antecedent.end()) {
      std::vector<NodeId> imps = it->second;
      for (NodeId imp : imps) {
        auto ip = derived.find(imp);
        if (ip == derived.end()) continue;
        NodeId b = c.graph.node(imp).children[1];
        if (derive(b, k.app(ip->second, pf),
                   std::max(dp, depth_of[imp]) + 1))
          return;
        if (out_of_budget) return;
      }
    }
    // p itself an implication whose antecedent is already known
    // (copy: the builder calls below may reallocate the node store)
    const Node np = c.graph.node(p);
    if (np.kind == NodeKind::PropImplies) {
      auto ia = derived.find(np.children[0]);
      if (ia != derived.end()) {
        if (derive(np.children[1], k.app(pf, ia->second),
                   std::max(dp, depth_of[np.children[0]]) + 1))
          return;
        if (out_of_budget) return;
      }
    }
    // successor congruence into an equality form the graph already holds
    if (o.use_cong && np.kind == NodeKind::IdForm &&
        np.children[0] == k.nat()) {
      auto sl = c.graph.find(NodeKind::NatSucc, {}, {np.children[1]});
      auto sr = c.graph.find(NodeKind::NatSucc, {}, {np.children[2]});
      if (sl && sr) {
        auto tgt = c.graph.find(NodeKind::IdForm, {},
                                {np.children[0], *sl, *sr});
        if (tgt && derive(*tgt, k.cong(pf), dp + 1)) return;
        if (out_of_budget) return;
      }
    }
    // conjunction introduction into an existing conjunction form
    if (o.use_and_intro) {
      std::vector<std::pair<NodeId, NodeId>> snapshot(derived.begin(),
                                                      derived.end());
      for (const auto& [q, pfq] : snapshot) {
        if (auto both = c.graph.find(NodeKind::PropAnd, {}, {p, q})) {
          if (derive(*both, k.pair(pf, pfq),
                     std::max(dp, depth_of[q]) + 1))
            return;
        }
        if (auto both = c.graph.find(NodeKind::PropAnd, {}, {q, p})) {
          if (derive(*both, k.pair(pfq, pf),
                     std::max(dp, depth_of[q]) + 1))
            return;
        }
        if (out_of_budget) return;
      }
    }
  }

  void run() {
    while (!queue.empty() && !goal_proof && !out_of_budget) {
      NodeId p = queue.front();
      queue.pop_front();
      expand(p);
    }
  }
};

// ---------------------------------------------------------------------------
// Backward goal decomposition

struct BackwardEngine {
  Kernel& k;
  FactBase& fb;
  const SearchOptions& o;
  const std::vector<std::pair<NodeId, NodeId>>& proven;
  int calls = 0;
  std::set<NodeId> onstack = {};

  // proof plus the depth of the deepest step on the successful branch
  std::optional<std::pair<NodeId, int>> solve(NodeId goal, int d) {
    if (calls >= o.budget) return std::nullopt;
    ++calls;
    if (auto it = fb.proof_of.find(goal); it != fb.proof_of.end())
      return {{it->second, d}};
    if (onstack.contains(goal)) return std::nullopt;
    onstack.insert(goal);
    auto out = attack(goal, d);
    onstack.erase(goal);
    return out;
  }

  std::optional<std::pair<NodeId, int>> attack(NodeId goal, int d) {
    if (auto fam = id_family(k.graph(), goal)) {
      if (auto pf = try_refl(k, *fam, goal)) return {{*pf, d}};
      if (o.use_induction)
        if (auto pf = induction_candidate(k, *fam, goal)) return {{*pf, d}};
    }
    if (o.use_specialize) {
      for (const auto& [prop, pf] : proven) {
        // copy: k.subst / k.numeral below may reallocate the node store
        const Node n = k.graph().node(prop);
        if (n.kind != NodeKind::PiForm || n.children[0] != k.nat()) continue;
        for (std::uint32_t v = 0; v <= 4; ++v)
          if (k.subst(n.children[1], 0, k.numeral(v)) == goal)
            return {{k.app(pf, k.numeral(v)), d}};
      }
    }
    const Node g = k.graph().node(goal);
    if (o.use_cong && g.kind == NodeKind::IdForm &&
        g.children[0] == k.nat()) {
      const Node l = k.graph().node(g.children[1]);
      const Node r = k.graph().node(g.children[2]);
      if (l.kind == NodeKind::NatSucc && r.kind == NodeKind::NatSucc) {
        NodeId sub = k.id_form(k.nat(), l.children[0], r.children[0]);
        if (auto rr = solve(sub, d + 1))
          return {{k.cong(rr->first), rr->second}};
      }
    }
    if (auto it = fb.by_consequent.find(goal); it != fb.by_consequent.end()) {
      std::vector<NodeId> imps = it->second;
      for (NodeId imp : imps) {
        NodeId a = k.graph().node(imp).children[0];
        if (auto rr = solve(a, d + 1))
          return {{k.app(fb.proof_of.at(imp), rr->first), rr->second}};
      }
    }
    return std::nullopt;
  }
};

bool verified(Kernel& k, NodeId proof, NodeId prop) {
  return k.check_proof(proof, prop).result == CheckResult::Valid;
}

std::string verdict_name(NoveltyVerdict v) {
  switch (v) {
    case NoveltyVerdict::Known: return "known";
    case NoveltyVerdict::Easy: return "easy";
    default: return "novel";
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Corpus builders

Corpus seed_corpus() {
  Corpus c;
  Kernel k(c.graph);
  ExampleTable ex = k.build_appendix_examples();
  k.define("add", ex.add);
  k.define("double", ex.double_fn);
  NodeId add = *c.graph.definition("add");
  NodeId lhs = k.app2(add, k.var(1), k.succ(k.var(0)));
  NodeId rhs = k.succ(k.app2(add, k.var(1), k.var(0)));
  NodeId prop =
      k.pi(k.nat(), k.pi(k.nat(), k.id_form(k.nat(), lhs, rhs)));
  NodeId proof = k.lambda(k.nat(), k.lambda(k.nat(), k.refl(lhs)));
  if (!verified(k, proof, prop))
    throw Error(ErrorCode::Internal, "seed fact failed to check");
  c.graph.add_typing(proof, prop);
  c.proven.push_back({prop, proof});
  return c;
}

ChainFamily chain_family(int branching, int depth) {
  if (branching < 1 || depth < 1)
    throw Error(ErrorCode::BudgetZero, "chain family needs b >= 1, D >= 1");
  ChainFamily out;
  out.branching = branching;
  out.depth = depth;
  Kernel k(out.corpus.graph);

  std::vector<std::string> words;
  std::string w(static_cast<std::size_t>(depth), '0');
  while (true) {
    words.push_back(w);
    int i = depth - 1;
    for (; i >= 0; --i) {
      if (w[static_cast<std::size_t>(i)] < char('0' + branching - 1)) {
        ++w[static_cast<std::size_t>(i)];
        break;
      }
      w[static_cast<std::size_t>(i)] = '0';
    }
    if (i < 0) break;
  }

  std::map<std::string, NodeId> stmt;
  for (const std::string& word : words) stmt[word] = k.atom("w:" + word);

  std::string start(static_cast<std::size_t>(depth), '0');
  Judgment s0 = k.assume("start", stmt[start]);
  out.corpus.proven.push_back({stmt[start], s0.subject});

  for (const std::string& word : words)
    for (int c = 0; c < branching; ++c) {
      std::string next = word.substr(1) + char('0' + c);
      NodeId imp = k.prop_implies(stmt[word], stmt[next]);
      Judgment ax = k.assume(word + ">" + char('0' + c), imp);
      out.corpus.proven.push_back({imp, ax.subject});
    }

  out.goal = stmt[std::string(static_cast<std::size_t>(depth), '1')];
  return out;
}

NodeId copy_term(const Hypergraph& src, NodeId n, Kernel& dst) {
  src.check_node(n, "term");
  std::map<NodeId, NodeId> memo;
  auto rec = [&](auto&& self, NodeId id) -> NodeId {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const Node node = src.node(id);
    NodeId out = kNoNode;
    if (node.kind == NodeKind::DefRef) {
      const std::string& name = std::get<std::string>(node.payload);
      NodeId body = self(self, node.children[0]);
      if (auto ref = dst.graph().definition(name)) {
        out = *ref;
      } else {
        out = dst.graph().add_node(NodeKind::DefRef, name, {body},
                                   "definition", EdgeClass::Introduction);
        dst.graph().adopt_definition(name, out);
      }
    } else if (src.is_root(id)) {
      out = dst.graph().add_root(node.kind, node.payload);
    } else {
      std::vector<NodeId> kids;
      kids.reserve(node.children.size());
      for (NodeId ch : node.children) kids.push_back(self(self, ch));
      out = build_node(dst, node.kind, node.payload, kids);
    }
    memo.emplace(id, out);
    // asserted axiom typings travel with their atoms
    if (node.kind == NodeKind::Atom && node.type &&
        !dst.graph().node(out).type) {
      NodeId t = self(self, *node.type);
      dst.graph().add_typing(out, t);
    }
    return out;
  };
  return rec(rec, n);
}

// ---------------------------------------------------------------------------
// Searches

SearchResult prove_forward(Corpus& c, NodeId goal, const SearchOptions& o) {
  c.graph.check_node(goal, "goal");
  Kernel k(c.graph);
  SearchResult res;
  FactBase fb(c);
  if (auto it = fb.proof_of.find(goal); it != fb.proof_of.end()) {
    res.proof = it->second;
    res.stats.outcome = "found";
    return res;
  }
  if (o.budget <= 0) return res;
  int used = 0;
  if (auto fam = id_family(c.graph, goal)) {
    ++used;
    if (auto pf = try_refl(k, *fam, goal)) {
      res.proof = pf;
      res.stats = {used, 1, 1.0, "found"};
      return res;
    }
  }
  ForwardEngine eng(c, goal, o, used);
  eng.run();
  res.stats.nodes_expanded = eng.budget_used;
  if (eng.goal_proof && verified(eng.k, *eng.goal_proof, goal)) {
    res.proof = eng.goal_proof;
    res.stats.max_depth = eng.goal_depth;
    res.stats.effective_branching =
        branching_estimate(eng.budget_used, eng.goal_depth);
    res.stats.outcome = "found";
  }
  return res;
}

SearchResult prove_backward(Corpus& c, NodeId goal, const SearchOptions& o) {
  c.graph.check_node(goal, "goal");
  Kernel k(c.graph);
  SearchResult res;
  FactBase fb(c);
  if (auto it = fb.proof_of.find(goal); it != fb.proof_of.end()) {
    res.proof = it->second;
    res.stats.outcome = "found";
    return res;
  }
  if (auto fam = id_family(c.graph, goal)) {
    if (auto cx = ground_refute(k, *fam, goal, 6)) {
      res.counterexample = cx;
      res.stats = {1, 0, 1.0, "refuted"};
      return res;
    }
  }
  if (o.budget <= 0) return res;
  BackwardEngine eng{k, fb, o, c.proven};
  auto r = eng.solve(goal, 0);
  res.stats.nodes_expanded = eng.calls;
  if (r && verified(k, r->first, goal)) {
    res.proof = r->first;
    res.stats.max_depth = r->second;
    res.stats.effective_branching = branching_estimate(eng.calls, r->second);
    res.stats.outcome = "found";
  }
  return res;
}

SearchResult prove_bidirectional(Corpus& c, NodeId goal,
                                 const SearchOptions& o) {
  c.graph.check_node(goal, "goal");
  Kernel k(c.graph);
  SearchResult res;
  FactBase fb(c);
  if (auto it = fb.proof_of.find(goal); it != fb.proof_of.end()) {
    res.proof = it->second;
    res.stats.outcome = "found";
    return res;
  }
  if (o.budget <= 0) return res;
  int used = 0;
  if (auto fam = id_family(c.graph, goal)) {
    if (auto cx = ground_refute(k, *fam, goal, 6)) {
      res.counterexample = cx;
      res.stats = {1, 0, 1.0, "refuted"};
      return res;
    }
    ++used;
    if (auto pf = try_refl(k, *fam, goal)) {
      res.proof = pf;
      res.stats = {used, 1, 1.0, "found"};
      return res;
    }
    if (o.use_induction) {
      ++used;
      if (auto pf = induction_candidate(k, *fam, goal)) {
        res.proof = pf;
        res.stats = {used, 1, branching_estimate(used, 1), "found"};
        return res;
      }
    }
  }

  // alternating wavefronts: the forward side saturates proofs, the backward
  // side peels antecedent subgoals; they meet at a statement with both a
  // proof and a path of pending implications up to the goal.
  std::map<NodeId, NodeId> derived;
  std::deque<NodeId> ffront;
  for (const auto& [prop, proof] : c.proven)
    if (derived.emplace(prop, proof).second) ffront.push_back(prop);

  std::map<NodeId, std::pair<NodeId, NodeId>> parent;  // subgoal -> (imp, up)
  std::set<NodeId> seen_back{goal};
  std::deque<NodeId> bfront{goal};

  std::optional<NodeId> meet;
  int frounds = 0, brounds = 0;
  std::size_t last_f = 1, last_b = 1;
  bool exhausted = false;

  // one forward wave: strictly level-wise, so a round only consumes facts
  // proven before it started (otherwise the wave degenerates into full
  // saturation and never meets the backward side halfway)
  std::vector<std::pair<NodeId, NodeId>> fresh;
  std::set<NodeId> fresh_set;
  auto derive = [&](NodeId prop, NodeId proof) {
    if (derived.contains(prop) || !fresh_set.insert(prop).second) return;
    if (used >= o.budget) {
      exhausted = true;
      return;
    }
    ++used;
    fresh.push_back({prop, proof});
    if (seen_back.contains(prop) && !meet) meet = prop;
  };

  while (!meet && !exhausted && (!ffront.empty() || !bfront.empty())) {
    bool forward = !ffront.empty() && (bfront.empty() || last_f <= last_b);
    if (forward) {
      ++frounds;
      fresh.clear();
      fresh_set.clear();
      while (!ffront.empty() && !meet && !exhausted) {
        NodeId p = ffront.front();
        ffront.pop_front();
        NodeId pf = derived[p];
        if (auto it = fb.by_antecedent.find(p);
            it != fb.by_antecedent.end()) {
          std::vector<NodeId> imps = it->second;
          for (NodeId imp : imps) {
            auto ip = derived.find(imp);
            if (ip == derived.end()) continue;
            NodeId b = c.graph.node(imp).children[1];  // read before k.app
            derive(b, k.app(ip->second, pf));
            if (meet || exhausted) break;
          }
        }
        // copy: the builder calls below may reallocate the node store
        const Node np = c.graph.node(p);
        if (!meet && !exhausted && np.kind == NodeKind::PropImplies) {
          auto ia = derived.find(np.children[0]);
          if (ia != derived.end())
            derive(np.children[1], k.app(pf, ia->second));
        }
      }
      std::deque<NodeId> next;
      for (const auto& [prop, proof] : fresh) {
        derived.emplace(prop, proof);
        fb.index(c.graph, prop);
        next.push_back(prop);
      }
      for (NodeId p : ffront) next.push_back(p);  // carry unprocessed items
      ffront = std::move(next);
      last_f = std::max<std::size_t>(ffront.size(), 1);
    } else {
      ++brounds;
      std::deque<NodeId> next;
      while (!bfront.empty() && !meet && !exhausted) {
        NodeId s = bfront.front();
        bfront.pop_front();
        if (auto it = fb.by_consequent.find(s);
            it != fb.by_consequent.end()) {
          std::vector<NodeId> imps = it->second;
          for (NodeId imp : imps) {
            NodeId a = c.graph.node(imp).children[0];
            if (derived.contains(a)) {
              if (!parent.contains(a)) parent[a] = {imp, s};
              meet = a;
              break;
            }
            if (seen_back.insert(a).second) {
              if (used >= o.budget) {
                exhausted = true;
                break;
              }
              ++used;
              parent[a] = {imp, s};
              next.push_back(a);
            }
          }
        }
      }
      for (NodeId s : bfront) next.push_back(s);
      bfront = std::move(next);
      last_b = std::max<std::size_t>(bfront.size(), 1);
    }
  }

  res.stats.nodes_expanded = used;
  if (meet) {
    NodeId cur = *meet;
    NodeId pf = derived.at(cur);
    while (cur != goal) {
      auto [imp, up] = parent.at(cur);
      pf = k.app(derived.at(imp), pf);
      cur = up;
    }
    if (verified(k, pf, goal)) {
      res.proof = pf;
      res.stats.max_depth = frounds + brounds;
      res.stats.effective_branching =
          branching_estimate(used, res.stats.max_depth);
      res.stats.outcome = "found";
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Linearized chain enumeration

LinearizedResult enumerate_linearized(Corpus& c, NodeId seed_fact,
                                      NodeId goal,
                                      const std::vector<NodeId>& library,
                                      int depth) {
  if (depth < 0)
    throw Error(ErrorCode::BudgetZero, "chain depth must be non-negative");
  c.graph.check_node(seed_fact, "seed");
  c.graph.check_node(goal, "goal");
  Kernel k(c.graph);
  FactBase fb(c);
  LinearizedResult out;

  std::map<NodeId, std::size_t> cur{{seed_fact, 1}};
  std::map<NodeId, NodeId> rep;  // statement -> representative proof
  if (auto it = fb.proof_of.find(seed_fact); it != fb.proof_of.end())
    rep.emplace(seed_fact, it->second);
  out.counts.push_back(1);

  for (int d = 1; d <= depth; ++d) {
    std::map<NodeId, std::size_t> next;
    auto emit = [&](NodeId s, std::size_t cnt, std::optional<NodeId> proof) {
      next[s] += cnt;
      if (proof && !rep.contains(s)) rep.emplace(s, *proof);
    };
    for (const auto& [s, cnt] : cur) {
      // copies: the proof builders below may reallocate the node store
      const Node sn = c.graph.node(s);
      std::optional<NodeId> ps;
      if (auto it = rep.find(s); it != rep.end()) ps = it->second;
      for (NodeId f : library) {
        const Node fn = c.graph.node(f);
        std::optional<NodeId> pf;
        if (auto it = fb.proof_of.find(f); it != fb.proof_of.end())
          pf = it->second;
        if (sn.kind == NodeKind::PropImplies && sn.children[0] == f) {
          std::optional<NodeId> pr;
          if (ps && pf) pr = k.app(*ps, *pf);
          emit(sn.children[1], cnt, pr);
        }
        if (fn.kind == NodeKind::PropImplies && fn.children[0] == s) {
          std::optional<NodeId> pr;
          if (ps && pf) pr = k.app(*pf, *ps);
          emit(fn.children[1], cnt, pr);
        }
        std::optional<NodeId> pl, pr;
        if (ps && pf) {
          pl = k.pair(*ps, *pf);
          pr = k.pair(*pf, *ps);
        }
        emit(k.prop_and(s, f), cnt, pl);
        emit(k.prop_and(f, s), cnt, pr);
      }
    }
    cur = std::move(next);
    std::size_t total = 0;
    for (const auto& [s, cnt] : cur) total += cnt;
    out.counts.push_back(total);
  }
  if (auto it = rep.find(goal); it != rep.end()) out.proof = it->second;
  return out;
}

// ---------------------------------------------------------------------------
// Curation signals

NoveltyResult novelty(Corpus& c, NodeId prop, int threshold, int budget) {
  NoveltyResult r;
  for (const auto& [p, pf] : c.proven)
    if (p == prop) {
      r.verdict = NoveltyVerdict::Known;
      r.m_estimate = 0;
      return r;
    }
  SearchOptions o;
  o.budget = budget;
  o.use_induction = false;  // measure distance from the plain deductive hull
  SearchResult s = prove_backward(c, prop, o);
  if (s.proof) {
    r.m_estimate = s.stats.max_depth;
    r.verdict = r.m_estimate < threshold ? NoveltyVerdict::Easy
                                         : NoveltyVerdict::Novel;
  } else {
    // unreachable (or outright refutable) within the budget
    r.verdict = NoveltyVerdict::Novel;
    r.m_estimate = threshold;
  }
  return r;
}

double interestingness(Corpus& c, NodeId prop, int budget) {
  NodeId proof = kNoNode;
  for (const auto& [p, pf] : c.proven)
    if (p == prop) {
      proof = pf;
      break;
    }
  if (proof == kNoNode)
    throw Error(ErrorCode::Unproven,
                "interestingness is defined for proven propositions");
  c.graph.add_typing(proof, prop);
  double score = efficiency(c.graph, prop, budget).value;
  // compression dividend: the best abstraction extractable from this proof
  double bonus = 0.0;
  try {
    Corpus mini;
    Kernel mk(mini.graph);
    NodeId p2 = copy_term(c.graph, prop, mk);
    NodeId f2 = copy_term(c.graph, proof, mk);
    mini.graph.add_typing(f2, p2);
    mini.proven.push_back({p2, f2});
    auto cands = mine(mini, 5, 2, 1, CostModel::unit(), 5000);
    if (!cands.empty() && cands.front().utility > 0)
      bonus = cands.front().utility;
  } catch (const Error&) {
  }
  return score + bonus;
}

// ---------------------------------------------------------------------------
// Conjecture generation

std::vector<Conjecture> generate_conjectures(Corpus& c, int n,
                                             std::uint64_t seed,
                                             int ground_instances) {
  if (n < 1)
    throw Error(ErrorCode::BudgetZero, "conjecture count must be positive");
  if (corpus_anchors(c).empty())
    throw Error(ErrorCode::EmptyCorpus, "nothing to conjecture from");
  Kernel k(c.graph);

  std::set<NodeId> known;
  for (const auto& [p, pf] : c.proven) known.insert(p);
  std::vector<Conjecture> out;
  std::set<NodeId> emitted;
  auto push = [&](NodeId prop, const char* gen, std::vector<NodeId> parents) {
    if (known.contains(prop) || !emitted.insert(prop).second) return;
    out.push_back(
        {prop, gen, std::move(parents), ConjectureStatus::Open});
  };

  // reversals of proven implications
  for (const auto& [p, pf] : c.proven) {
    const Node& np = c.graph.node(p);
    if (np.kind == NodeKind::PropImplies)
      push(k.prop_implies(np.children[1], np.children[0]), "reversal", {p});
  }

  // numeric specializations of proven universals
  for (const auto& [p, pf] : c.proven) {
    // copy: k.subst / k.numeral below may reallocate the node store
    const Node np = c.graph.node(p);
    if (np.kind == NodeKind::PiForm && np.children[0] == k.nat())
      for (std::uint32_t v = 0; v <= 2; ++v)
        push(k.subst(np.children[1], 0, k.numeral(v)), "specialization", {p});
  }

  // All ground probing below runs against a scratch graph holding only the
  // defined functions: the numeral substitutions and normal forms it churns
  // through would otherwise swamp the working graph. `unary`/`binary` hold
  // scratch references, `unary_main`/`binary_main` the originals.
  Hypergraph scratch;
  Kernel sk(scratch);
  std::vector<NodeId> unary, binary, unary_main, binary_main;
  for (const auto& [name, ref] : c.graph.definitions()) {
    try {
      NodeId sref = copy_term(c.graph, ref, sk);
      NodeId ty = sk.infer(sref);
      if (sk.defeq(ty, sk.pi(sk.nat(), sk.nat())) == CheckResult::Valid) {
        unary.push_back(sref);
        unary_main.push_back(ref);
      } else if (sk.defeq(ty, sk.pi(sk.nat(), sk.pi(sk.nat(), sk.nat()))) ==
                 CheckResult::Valid) {
        binary.push_back(sref);
        binary_main.push_back(ref);
      }
    } catch (const Error&) {
    }
  }

  // commuting compositions of unary functions (not ground-screened: wrong
  // guesses are the refutation engine's diet)
  for (std::size_t i = 0; i < unary_main.size(); ++i)
    for (std::size_t j = i + 1; j < unary_main.size(); ++j) {
      NodeId l = k.app(unary_main[i], k.app(unary_main[j], k.var(0)));
      NodeId r = k.app(unary_main[j], k.app(unary_main[i], k.var(0)));
      push(k.pi(k.nat(), k.id_form(k.nat(), l, r)), "composition",
           {unary_main[i], unary_main[j]});
    }

  // inductive generalization: small open terms agreeing on every ground
  // instance of a test grid become universal equality conjectures
  std::vector<std::vector<NodeId>> by_size(3);
  by_size[0] = {sk.var(0), sk.var(1), sk.zero()};
  for (std::size_t s = 1; s <= 2; ++s) {
    for (NodeId t : by_size[s - 1]) {
      by_size[s].push_back(sk.succ(t));
      for (NodeId f : unary) by_size[s].push_back(sk.app(f, t));
    }
    for (NodeId h : binary)
      for (std::size_t s1 = 0; s1 + 1 <= s; ++s1)
        for (NodeId t1 : by_size[s1])
          for (NodeId t2 : by_size[s - 1 - s1])
            by_size[s].push_back(sk.app2(h, t1, t2));
  }

  auto eval = [&](NodeId t, std::uint32_t x0,
                  std::uint32_t x1) -> std::optional<std::uint32_t> {
    NodeId u = sk.subst(t, 0, sk.numeral(x0));
    u = sk.subst(u, 0, sk.numeral(x1));
    NormalizeResult nr = sk.normalize(u);
    if (!nr.complete) return std::nullopt;
    return sk.numeral_value(nr.node);
  };

  static constexpr std::pair<std::uint32_t, std::uint32_t> kProbe[] = {
      {0, 1}, {1, 2}, {2, 3}, {3, 1}};
  std::map<std::vector<std::uint32_t>, std::vector<NodeId>> groups;
  for (const auto& layer : by_size)
    for (NodeId t : layer) {
      std::vector<std::uint32_t> sig;
      bool ok = true;
      for (auto [x0, x1] : kProbe) {
        auto v = eval(t, x0, x1);
        if (!v) {
          ok = false;
          break;
        }
        sig.push_back(*v);
      }
      if (ok) groups[sig].push_back(t);
    }

  std::uint32_t range = ground_instances < 0
                            ? 0u
                            : static_cast<std::uint32_t>(ground_instances);
  for (const auto& [sig, terms] : groups) {
    if (terms.size() < 2) continue;
    // small agreement classes are paired exhaustively; large ones (mostly
    // stacked zero-additions) only against their simplest member
    bool star = terms.size() > 8;
    int budget_pairs = 20;
    for (std::size_t i = 0; i < terms.size() && budget_pairs > 0; ++i) {
      if (star && i > 0) break;
      for (std::size_t j = i + 1; j < terms.size() && budget_pairs > 0; ++j) {
        --budget_pairs;
        NodeId a = terms[i], b = terms[j];
        std::uint32_t v = std::max(sk.free_span(a), sk.free_span(b));
        if (v == 0 || v > 2) continue;
        bool agree = true;
        for (std::uint32_t x0 = 0; x0 <= range && agree; ++x0)
          for (std::uint32_t x1 = 0; x1 <= range && agree; ++x1) {
            auto va = eval(a, x0, x1);
            auto vb = eval(b, x0, x1);
            agree = va && vb && *va == *vb;
          }
        if (!agree) continue;
        NodeId body = sk.id_form(sk.nat(), a, b);
        for (std::uint32_t q = 0; q < v; ++q) body = sk.pi(sk.nat(), body);
        push(copy_term(scratch, body, k), "generalization",
             {copy_term(scratch, a, k), copy_term(scratch, b, k)});
      }
    }
  }

  // deterministic shuffle, then truncate to the requested batch
  std::mt19937_64 rng(seed);
  for (std::size_t i = out.size(); i > 1; --i)
    std::swap(out[i - 1], out[rng() % i]);
  if (out.size() > static_cast<std::size_t>(n))
    out.resize(static_cast<std::size_t>(n));
  return out;
}

// ---------------------------------------------------------------------------
// The discovery loop

std::vector<LogEvent> run_loop(Corpus& c, int steps, const LoopConfig& cfg,
                               std::uint64_t seed) {
  if (steps < 1)
    throw Error(ErrorCode::BudgetZero, "step count must be positive");
  Kernel k(c.graph);
  std::mt19937_64 rng(seed);
  std::uint64_t draws = 0;
  auto draw = [&] {
    ++draws;
    return rng();
  };

  std::vector<LogEvent> events;
  auto emit = [&](const char* phase, const char* action,
                  std::vector<NodeId> nodes, ordered_json stats) {
    LogEvent e;
    e.t = c.log.size();
    e.phase = phase;
    e.action = action;
    e.nodes = std::move(nodes);
    e.stats = std::move(stats);
    e.seed_state = draws;
    c.log.push_back(e);
    events.push_back(std::move(e));
  };

  std::set<NodeId> attempted;
  for (int step = 0; step < steps; ++step) {
    std::uint64_t cseed = draw();
    std::vector<Conjecture> conjs = generate_conjectures(
        c, cfg.conjectures_per_step, cseed, cfg.ground_instances);
    {
      std::vector<NodeId> props;
      ordered_json gens = ordered_json::object();
      for (const Conjecture& conj : conjs) {
        props.push_back(conj.proposition);
        gens[conj.generator] = gens.value(conj.generator, 0) + 1;
      }
      ordered_json st;
      st["step"] = step;
      st["count"] = conjs.size();
      st["generators"] = gens;
      emit("conjecture", "generated", props, st);
    }
    for (Conjecture& conj : conjs) {
      if (!attempted.insert(conj.proposition).second) continue;
      NoveltyResult nov = novelty(c, conj.proposition, cfg.novelty_threshold,
                                  cfg.novelty_budget);
      emit("curate", "novelty", {conj.proposition},
           {{"generator", conj.generator},
            {"verdict", verdict_name(nov.verdict)},
            {"m", nov.m_estimate}});
      if (nov.verdict != NoveltyVerdict::Novel) {
        conj.status = ConjectureStatus::Abandoned;
        continue;
      }
      SearchOptions so;
      so.budget = cfg.proof_budget;
      SearchResult r = prove_bidirectional(c, conj.proposition, so);
      if (r.proof) {
        conj.status = ConjectureStatus::Proven;
        c.graph.add_typing(*r.proof, conj.proposition);
        c.proven.push_back({conj.proposition, *r.proof});
        double score = 0.0;
        try {
          score = interestingness(c, conj.proposition, cfg.interest_budget);
        } catch (const Error&) {
        }
        bool admitted = score >= cfg.interest_floor;
        emit("search", "proved", {conj.proposition, *r.proof},
             {{"generator", conj.generator},
              {"expansions", r.stats.nodes_expanded},
              {"depth", r.stats.max_depth},
              {"interest", score},
              {"admitted", admitted}});
      } else if (r.counterexample) {
        conj.status = ConjectureStatus::Refuted;
        emit("search", "refuted", {conj.proposition},
             {{"generator", conj.generator},
              {"counterexample", *r.counterexample},
              {"expansions", r.stats.nodes_expanded}});
      } else {
        conj.status = ConjectureStatus::Abandoned;
        emit("search", "abandoned", {conj.proposition},
             {{"generator", conj.generator},
              {"expansions", r.stats.nodes_expanded},
              {"outcome", r.stats.outcome}});
      }
    }
    if (cfg.compress_every > 0 && (step + 1) % cfg.compress_every == 0) {
      std::vector<Adoption> adopted = compress(c, cfg.compress);
      emit("compress", "round", {},
           {{"step", step}, {"adoptions", adopted.size()}});
      for (const Adoption& a : adopted) {
        NodeId ref = *c.graph.definition(a.name);
        emit("compress", "adopted", {ref},
             {{"name", a.name},
              {"round", a.round},
              {"utility", a.utility},
              {"occurrences", a.occurrences}});
      }
    }
  }
  emit("curate", "summary", {},
       {{"steps", steps},
        {"proven", c.proven.size()},
        {"definitions", c.graph.definitions().size()}});
  return events;
}

// ---------------------------------------------------------------------------
// Log serialization

std::string log_to_jsonl(const std::vector<LogEvent>& log) {
  std::string out;
  for (const LogEvent& e : log) {
    ordered_json j;
    j["t"] = e.t;
    j["phase"] = e.phase;
    j["action"] = e.action;
    j["nodeIds"] = e.nodes;
    j["stats"] = e.stats;
    j["seedState"] = e.seed_state;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<LogEvent> log_from_jsonl(const std::string& text) {
  std::vector<LogEvent> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("t") ||
        !j.contains("phase") || !j.contains("action") ||
        !j.contains("nodeIds") || !j.contains("stats") ||
        !j.contains("seedState") || !j["t"].is_number_unsigned() ||
        !j["phase"].is_string() || !j["action"].is_string() ||
        !j["nodeIds"].is_array() || !j["stats"].is_object() ||
        !j["seedState"].is_number_unsigned())
      throw Error(ErrorCode::MalformedLog,
                  "malformed log line " + std::to_string(lineno));
    LogEvent e;
    e.t = j["t"].get<std::uint64_t>();
    e.phase = j["phase"].get<std::string>();
    e.action = j["action"].get<std::string>();
    for (const auto& v : j["nodeIds"]) {
      if (!v.is_number_unsigned())
        throw Error(ErrorCode::MalformedLog,
                    "malformed node id on line " + std::to_string(lineno));
      e.nodes.push_back(v.get<NodeId>());
    }
    e.stats = j["stats"];
    e.seed_state = j["seedState"].get<std::uint64_t>();
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Criteria report

std::vector<CriterionVerdict> criteria_report(
    const Corpus& c, const std::vector<LogEvent>& log) {
  static const std::set<std::string> kPhases{"conjecture", "search",
                                             "compress", "curate"};
  for (const LogEvent& e : log)
    if (!kPhases.contains(e.phase))
      throw Error(ErrorCode::MalformedLog, "unknown log phase: " + e.phase);

  std::vector<std::size_t> generated, proved, refuted, novel, adopted,
      summaries;
  std::map<std::string, int> generators;
  bool interest_seen = false, curation_seen = false;
  for (std::size_t i = 0; i < log.size(); ++i) {
    const LogEvent& e = log[i];
    if (e.phase == "conjecture" && e.action == "generated" &&
        !e.nodes.empty()) {
      generated.push_back(i);
      if (e.stats.contains("generators"))
        for (const auto& [name, cnt] : e.stats["generators"].items())
          generators[name] += cnt.get<int>();
    }
    if (e.phase == "search" && e.action == "proved") {
      proved.push_back(i);
      if (e.stats.contains("interest")) interest_seen = true;
      if (e.stats.contains("admitted")) curation_seen = true;
    }
    if (e.phase == "search" && e.action == "refuted") refuted.push_back(i);
    if (e.phase == "curate" && e.action == "novelty") {
      curation_seen = true;
      if (e.stats.value("verdict", "") == "novel") novel.push_back(i);
    }
    if (e.phase == "compress" && e.action == "adopted") adopted.push_back(i);
    if (e.phase == "curate" && e.action == "summary") summaries.push_back(i);
  }

  std::vector<CriterionVerdict> out;
  auto add = [&](const char* id, const char* status, std::string evidence,
                 std::vector<std::size_t> events) {
    out.push_back({id, status, std::move(evidence), std::move(events)});
  };

  add("C1", generated.empty() ? "unmet" : "satisfied",
      "conjectures generated without outside input: " +
          std::to_string(generated.size()) + " batches",
      generated);

  {
    const char* status = "unmet";
    std::string evidence = "no proofs recorded";
    if (!proved.empty()) {
      bool all_valid = true;
      Hypergraph replay = c.graph;
      Kernel k(replay);
      for (std::size_t i : proved) {
        const LogEvent& e = log[i];
        try {
          if (e.nodes.size() < 2 ||
              k.check_proof(e.nodes[1], e.nodes[0]).result !=
                  CheckResult::Valid) {
            all_valid = false;
            break;
          }
        } catch (const Error&) {
          all_valid = false;
          break;
        }
      }
      status = all_valid ? "satisfied" : "unmet";
      evidence = all_valid
                     ? "all " + std::to_string(proved.size()) +
                           " proofs replay through the checker"
                     : "a logged proof failed to replay";
    }
    add("C2", status, evidence, proved);
  }

  add("C3", novel.empty() ? "unmet" : "partial",
      "statements judged beyond the easy deductive hull: " +
          std::to_string(novel.size()),
      novel);

  add("C4", proved.empty() ? "unmet" : "satisfied",
      "theorems proven this run: " + std::to_string(proved.size()), proved);

  {
    std::vector<std::size_t> live;
    for (std::size_t i : adopted) {
      std::string name = log[i].stats.value("name", "");
      if (!name.empty() && c.graph.definition(name)) live.push_back(i);
    }
    add("C5", live.empty() ? "unmet" : "satisfied",
        "abstractions adopted and still defined: " +
            std::to_string(live.size()),
        live);
  }

  add("C6", interest_seen ? "partial" : "unmet",
      interest_seen ? "interest scores recorded for proven statements"
                    : "no interest scores recorded",
      proved);

  add("C7", curation_seen ? "partial" : "unmet",
      curation_seen ? "curation decisions (novelty gates, admissions) logged"
                    : "no curation decisions logged",
      novel);

  {
    std::string hist;
    for (const auto& [name, cnt] : generators)
      hist += name + ":" + std::to_string(cnt) + " ";
    add("C8", "unmet",
        "generator coverage is narrow; histogram: " +
            (hist.empty() ? std::string("(none)") : hist),
        generated);
  }

  add("C9", "unmet", "no external validation of significance is available",
      {});

  add("C10", summaries.empty() ? "unmet" : "partial",
      summaries.empty() ? "no completed loop summary"
                        : "loop ran to completion unattended",
      summaries);

  return out;
}

}  // namespace proofgraph
