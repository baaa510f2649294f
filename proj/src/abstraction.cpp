#include "proofgraph/abstraction.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "proofgraph/rules.hpp"

namespace proofgraph {

namespace {

bool binder_kind(NodeKind k) {
  return k == NodeKind::Lambda || k == NodeKind::PiForm ||
         k == NodeKind::SigmaForm;
}

void payload_key(std::ostringstream& os, const Payload& p) {
  if (std::holds_alternative<std::uint32_t>(p))
    os << ' ' << std::get<std::uint32_t>(p);
  else if (std::holds_alternative<std::string>(p))
    os << ' ' << std::get<std::string>(p);
}

}  // namespace

int Pattern::size() const {
  int n = 0;
  for (const auto& p : pool) n += p.hole ? 0 : 1;
  return n;
}

int Pattern::arity() const {
  int n = 0;
  for (const auto& p : pool) n += p.hole ? 1 : 0;
  return n;
}

namespace {

void key_walk(const Pattern& p, int pi, std::ostringstream& os) {
  const auto& n = p.pool[static_cast<std::size_t>(pi)];
  if (n.hole) {
    os << '?';
    return;
  }
  if (n.children.empty()) {
    os << kind_name(n.kind);
    payload_key(os, n.payload);
    return;
  }
  os << '(' << kind_name(n.kind);
  payload_key(os, n.payload);
  for (int c : n.children) {
    os << ' ';
    key_walk(p, c, os);
  }
  os << ')';
}

}  // namespace

std::string Pattern::key() const {
  std::ostringstream os;
  key_walk(*this, root, os);
  return os.str();
}

namespace {

// What a hole captured at one site: the subterm, its binder depth below the
// pattern root, and the concrete domains of the enclosing pattern binders.
struct SlotCapture {
  NodeId sub = kNoNode;
  std::vector<NodeId> doms;  // outermost first; doms.size() == depth
};

struct Match {
  std::vector<SlotCapture> slots;  // indexed by pre-order hole rank
};

// Structural match of the pattern against `n`. Holes accept any subterm
// whose free variables are all bound by pattern binders; binder domains must
// likewise not reach outside the pattern, so every capture closes under its
// lambda wrapping.
bool match_walk(const Hypergraph& g, const Kernel& k, const Pattern& p, int pi,
                NodeId n, std::vector<NodeId>& doms, Match& out) {
  const auto& pn = p.pool[static_cast<std::size_t>(pi)];
  if (pn.hole) {
    if (k.free_span(n) > doms.size()) return false;
    out.slots.push_back({n, doms});
    return true;
  }
  const Node& node = g.node(n);
  if (node.kind != pn.kind || node.payload != pn.payload) return false;
  if (pn.kind == NodeKind::DefRef) return true;  // referenced by name only
  if (node.children.size() != pn.children.size()) return false;
  if (binder_kind(pn.kind)) {
    NodeId dom = node.children[0];
    if (k.free_span(dom) > doms.size()) return false;
    if (!match_walk(g, k, p, pn.children[0], dom, doms, out)) return false;
    doms.push_back(dom);
    bool ok = match_walk(g, k, p, pn.children[1], node.children[1], doms, out);
    doms.pop_back();
    return ok;
  }
  for (std::size_t i = 0; i < pn.children.size(); ++i)
    if (!match_walk(g, k, p, pn.children[i], node.children[i], doms, out))
      return false;
  return true;
}

std::optional<Match> match(const Hypergraph& g, const Kernel& k,
                           const Pattern& p, NodeId n) {
  Match m;
  std::vector<NodeId> doms;
  if (!match_walk(g, k, p, p.root, n, doms, m)) return std::nullopt;
  return m;
}

// The captured subterm as a closed term: one lambda per enclosing binder.
NodeId wrap_capture(Kernel& k, NodeId sub, const std::vector<NodeId>& doms) {
  NodeId t = sub;
  for (std::size_t i = doms.size(); i > 0; --i)
    t = k.lambda(doms[i - 1], t);
  return t;
}

}  // namespace

NodeId build_node(Kernel& k, NodeKind kind, const Payload& payload,
                  const std::vector<NodeId>& c) {
  switch (kind) {
    case NodeKind::Sort:
      return std::get<std::string>(payload) == "Nat" ? k.nat() : k.sort();
    case NodeKind::NatZero:
      return k.zero();
    case NodeKind::NatSucc:
      return k.succ(c[0]);
    case NodeKind::Var:
      return k.var(std::get<std::uint32_t>(payload));
    case NodeKind::Lambda:
      return k.lambda(c[0], c[1]);
    case NodeKind::App:
      return k.app(c[0], c[1]);
    case NodeKind::PiForm:
      return k.pi(c[0], c[1]);
    case NodeKind::SigmaForm:
      return k.sigma(c[0], c[1]);
    case NodeKind::Pair:
      return k.pair(c[0], c[1]);
    case NodeKind::Proj1:
      return k.proj1(c[0]);
    case NodeKind::Proj2:
      return k.proj2(c[0]);
    case NodeKind::IdForm:
      return k.id_form(c[0], c[1], c[2]);
    case NodeKind::Refl:
      return k.refl(c[0]);
    case NodeKind::Cong:
      return k.cong(c[0]);
    case NodeKind::Rec:
      return k.rec(c[0], c[1], c[2], c[3]);
    case NodeKind::PropAnd:
      return k.prop_and(c[0], c[1]);
    case NodeKind::PropImplies:
      return k.prop_implies(c[0], c[1]);
    case NodeKind::PropNot:
      return k.prop_not(c[0]);
    case NodeKind::Atom:
      return k.atom(std::get<std::string>(payload));
    case NodeKind::DefRef: {
      auto ref = k.graph().definition(std::get<std::string>(payload));
      if (!ref)
        throw Error(ErrorCode::Internal,
                    "pattern references an unbound definition");
      return *ref;
    }
  }
  throw Error(ErrorCode::Internal, "unhandled node kind");
}

namespace {

// The pattern as a term with parameters: slot i at binder depth d becomes
// Var(d + arity - 1 - i) applied to the enclosing binder variables.
NodeId build_pattern_term(Kernel& k, const Pattern& p, int pi, int depth,
                          int arity, int& next_slot) {
  const auto& pn = p.pool[static_cast<std::size_t>(pi)];
  if (pn.hole) {
    int slot = next_slot++;
    NodeId t = k.var(static_cast<std::uint32_t>(depth + arity - 1 - slot));
    for (int j = depth - 1; j >= 0; --j)
      t = k.app(t, k.var(static_cast<std::uint32_t>(j)));
    return t;
  }
  if (pn.kind == NodeKind::DefRef)
    return build_node(k, pn.kind, pn.payload, {});
  std::vector<NodeId> c;
  c.reserve(pn.children.size());
  for (std::size_t i = 0; i < pn.children.size(); ++i) {
    int d = depth + (binder_kind(pn.kind) && i == 1 ? 1 : 0);
    c.push_back(build_pattern_term(k, p, pn.children[i], d, arity, next_slot));
  }
  return build_node(k, pn.kind, pn.payload, c);
}

// Lambda-wrapped body from a representative site: parameter types are the
// inferred types of that site's captures.
std::optional<NodeId> build_body(Kernel& k, const Pattern& p,
                                 const Match& rep) {
  std::vector<NodeId> types;
  try {
    for (const auto& s : rep.slots)
      types.push_back(k.infer(wrap_capture(k, s.sub, s.doms)));
  } catch (const Error&) {
    return std::nullopt;
  }
  int next_slot = 0;
  NodeId body = build_pattern_term(k, p, p.root, 0, p.arity(), next_slot);
  for (std::size_t i = types.size(); i > 0; --i)
    body = k.lambda(types[i - 1], body);
  return body;
}

// --- mining by incremental hole refinement ----------------------------------

struct GrowState {
  Pattern pattern;
  std::vector<int> undecided;  // pool indices of not-yet-refined holes
};

// pre-order rank of a hole among all holes of the pattern
int hole_rank(const Pattern& p, int target) {
  int rank = 0;
  bool found = false;
  std::function<void(int)> walk = [&](int pi) {
    if (found) return;
    const auto& pn = p.pool[static_cast<std::size_t>(pi)];
    if (pn.hole) {
      if (pi == target) found = true;
      else ++rank;
      return;
    }
    for (int c : pn.children) walk(c);
  };
  walk(p.root);
  return rank;
}

// binder depth of a pattern position
int hole_depth(const Pattern& p, int target) {
  int depth = -1;
  std::function<void(int, int)> walk = [&](int pi, int d) {
    if (depth >= 0) return;
    if (pi == target) {
      depth = d;
      return;
    }
    const auto& pn = p.pool[static_cast<std::size_t>(pi)];
    for (std::size_t i = 0; i < pn.children.size(); ++i)
      walk(pn.children[i], d + (binder_kind(pn.kind) && i == 1 ? 1 : 0));
  };
  walk(p.root, 0);
  return depth;
}

std::vector<NodeId> matching_sites(const Hypergraph& g, const Kernel& k,
                                   const Pattern& p,
                                   const std::vector<NodeId>& sites) {
  std::vector<NodeId> out;
  for (NodeId s : sites)
    if (match(g, k, p, s)) out.push_back(s);
  return out;
}

std::vector<Pattern> grow_patterns(const Hypergraph& g, const Kernel& k,
                                   const std::vector<NodeId>& sites,
                                   int max_size, int state_budget) {
  std::vector<Pattern> out;
  std::set<std::string> emitted;
  std::deque<GrowState> queue;

  // seeds: one concrete node per distinct (kind, payload), children all holes
  std::set<std::pair<int, std::string>> seen_seed;
  for (NodeId s : sites) {
    const Node& n = g.node(s);
    if (n.children.empty()) continue;
    std::ostringstream sk;
    payload_key(sk, n.payload);
    if (!seen_seed.insert({static_cast<int>(n.kind), sk.str()}).second)
      continue;
    Pattern p;
    Pattern::PNode root{false, n.kind, n.payload, {}};
    p.pool.push_back(root);
    GrowState st;
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      p.pool.push_back({true, NodeKind::Sort, {}, {}});
      p.pool[0].children.push_back(static_cast<int>(i) + 1);
      st.undecided.push_back(static_cast<int>(i) + 1);
    }
    p.root = 0;
    st.pattern = p;
    if (matching_sites(g, k, p, sites).size() >= 2) queue.push_back(st);
  }

  int visited = 0;
  while (!queue.empty() && visited < state_budget) {
    GrowState st = queue.front();
    queue.pop_front();
    ++visited;
    if (st.undecided.empty()) {
      if (st.pattern.size() >= 2 && emitted.insert(st.pattern.key()).second)
        out.push_back(st.pattern);
      continue;
    }
    int h = st.undecided.front();
    int rank = hole_rank(st.pattern, h);
    int depth = hole_depth(st.pattern, h);

    // keep the hole as a permanent slot
    GrowState keep = st;
    keep.undecided.erase(keep.undecided.begin());
    queue.push_back(keep);

    // refine with every shape observed at this position
    auto matches = matching_sites(g, k, st.pattern, sites);
    std::set<std::pair<int, std::string>> shapes_seen;
    std::vector<std::pair<NodeKind, Payload>> shapes;
    for (NodeId m : matches) {
      auto mm = match(g, k, st.pattern, m);
      const Node& sub = g.node(mm->slots[static_cast<std::size_t>(rank)].sub);
      std::ostringstream sk;
      payload_key(sk, sub.payload);
      if (shapes_seen.insert({static_cast<int>(sub.kind), sk.str()}).second)
        shapes.push_back({sub.kind, sub.payload});
    }
    for (const auto& [kind, payload] : shapes) {
      if (kind == NodeKind::Var &&
          std::get<std::uint32_t>(payload) >= static_cast<unsigned>(depth))
        continue;  // would capture a variable the pattern does not bind
      if (st.pattern.size() + 1 > max_size) continue;
      GrowState next = st;
      next.undecided.erase(next.undecided.begin());
      auto& pn = next.pattern.pool[static_cast<std::size_t>(h)];
      pn.hole = false;
      pn.kind = kind;
      pn.payload = payload;
      int kids = kind == NodeKind::DefRef ? 0 : kind_arity(kind);
      std::vector<int> fresh;
      for (int i = 0; i < kids; ++i) {
        next.pattern.pool.push_back({true, NodeKind::Sort, {}, {}});
        int idx = static_cast<int>(next.pattern.pool.size()) - 1;
        next.pattern.pool[static_cast<std::size_t>(h)].children.push_back(idx);
        fresh.push_back(idx);
      }
      next.undecided.insert(next.undecided.begin(), fresh.begin(),
                            fresh.end());
      if (matching_sites(g, k, next.pattern, sites).size() >= 2)
        queue.push_back(next);
    }
  }
  return out;
}

std::vector<NodeId> anchor_closure(const Corpus& c) {
  std::set<NodeId> seen;
  for (NodeId a : corpus_anchors(c))
    for (NodeId n : c.graph.closure_nodes(a)) seen.insert(n);
  return {seen.begin(), seen.end()};
}

// --- rewriting ---------------------------------------------------------------

struct Rewriter {
  Kernel& k;
  const Pattern& pattern;
  NodeId defref;
  std::map<NodeId, NodeId> memo;
  std::set<NodeId> replaced;

  NodeId rw(NodeId n) {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    Hypergraph& g = k.graph();
    NodeId result;
    if (auto m = match(g, k, pattern, n)) {
      NodeId spine = defref;
      for (const auto& s : m->slots)
        spine = k.app(spine, wrap_capture(k, rw(s.sub), s.doms));
      if (spine != n) {
        bool recorded = false;
        for (EdgeId e : g.computations_into(n))
          recorded |= g.edge(e).inputs[0] == spine;
        if (!recorded) g.add_computation(spine, n, "rewrite");
        replaced.insert(n);
      }
      result = spine;
    } else {
      const Node node = g.node(n);
      if (node.kind == NodeKind::DefRef || node.children.empty()) {
        result = n;
      } else {
        std::vector<NodeId> c;
        bool changed = false;
        for (NodeId ch : node.children) {
          c.push_back(rw(ch));
          changed |= c.back() != ch;
        }
        result = changed ? build_node(k, node.kind, node.payload, c) : n;
      }
    }
    memo.emplace(n, result);
    return result;
  }
};

RewriteOutcome rewrite_impl(Corpus& c, const Abstraction& a,
                            const CostModel& model, bool check_all) {
  auto ref = a.name.empty() ? std::nullopt : c.graph.definition(a.name);
  if (!ref)
    throw Error(ErrorCode::UnknownInput,
                "abstraction must be adopted (named) before rewriting");
  RewriteOutcome out;
  out.cost_before = corpus_cost(c, model);
  Kernel k(c.graph);
  Rewriter rewriter{k, a.pattern, *ref, {}, {}};

  std::vector<std::pair<std::string, NodeId>> rebinds;
  std::vector<std::pair<NodeId, NodeId>> changed_terms;  // (old, new)
  for (const auto& [name, dref] : c.graph.definitions()) {
    if (name == a.name) continue;  // a definition never rewrites itself
    NodeId body = c.graph.node(dref).children[0];
    NodeId nb = rewriter.rw(body);
    if (nb != body) {
      rebinds.push_back({name, nb});
      changed_terms.push_back({body, nb});
    }
  }
  std::vector<std::pair<std::size_t, NodeId>> proof_updates;
  for (std::size_t i = 0; i < c.proven.size(); ++i) {
    NodeId np = rewriter.rw(c.proven[i].second);
    if (np != c.proven[i].second) proof_updates.push_back({i, np});
  }

  // semantic preservation before committing anything
  std::size_t sample = check_all ? changed_terms.size()
                                 : std::min<std::size_t>(2, changed_terms.size());
  for (std::size_t i = 0; i < sample; ++i)
    if (k.defeq(changed_terms[i].first, changed_terms[i].second) !=
        CheckResult::Valid)
      throw Error(ErrorCode::SemanticDrift,
                  "rewritten term changed its normal form");
  for (const auto& [i, np] : proof_updates) {
    if (k.defeq(c.proven[i].second, np) != CheckResult::Valid)
      throw Error(ErrorCode::SemanticDrift,
                  "rewritten proof changed its normal form");
    if (k.check_proof(np, c.proven[i].first).result != CheckResult::Valid)
      throw Error(ErrorCode::SemanticDrift,
                  "rewritten proof no longer checks");
  }

  for (const auto& [name, nb] : rebinds) c.graph.rebind_definition(name, nb);
  for (const auto& [i, np] : proof_updates) c.proven[i].second = np;

  out.occurrences = static_cast<int>(rewriter.replaced.size());
  out.cost_after = corpus_cost(c, model);
  out.utility = out.cost_before - out.cost_after - a.cost;
  return out;
}

// Utility of one candidate against a shared scratch corpus: runs the rewrite
// and its semantic checks without committing, and scores the per-anchor tree
// cost delta (tree cost is context-free, so untouched anchors cancel out of
// the full corpus-cost difference). Spine nodes accumulate in the scratch
// graph, which is discarded by the caller.
double dry_run_utility(Kernel& k, NodeId defref, const Abstraction& a,
                       const std::vector<NodeId>& def_bodies,
                       const std::vector<std::pair<NodeId, NodeId>>& proven,
                       const CostModel& model) {
  Hypergraph& g = k.graph();
  Rewriter rewriter{k, a.pattern, defref, {}, {}};
  std::vector<std::pair<NodeId, NodeId>> changed_terms;           // (old, new)
  std::vector<std::pair<std::size_t, NodeId>> proof_updates;      // (i, new)
  for (NodeId body : def_bodies) {
    NodeId nb = rewriter.rw(body);
    if (nb != body) changed_terms.push_back({body, nb});
  }
  for (std::size_t i = 0; i < proven.size(); ++i) {
    NodeId np = rewriter.rw(proven[i].second);
    if (np != proven[i].second) proof_updates.push_back({i, np});
  }
  std::size_t sample = std::min<std::size_t>(2, changed_terms.size());
  for (std::size_t i = 0; i < sample; ++i)
    if (k.defeq(changed_terms[i].first, changed_terms[i].second) !=
        CheckResult::Valid)
      throw Error(ErrorCode::SemanticDrift,
                  "rewritten term changed its normal form");
  for (const auto& [i, np] : proof_updates) {
    if (k.defeq(proven[i].second, np) != CheckResult::Valid)
      throw Error(ErrorCode::SemanticDrift,
                  "rewritten proof changed its normal form");
    if (k.check_proof(np, proven[i].first).result != CheckResult::Valid)
      throw Error(ErrorCode::SemanticDrift,
                  "rewritten proof no longer checks");
  }
  double delta = 0.0;
  for (const auto& [oldb, newb] : changed_terms)
    delta += term_cost(g, oldb, model) - term_cost(g, newb, model);
  for (const auto& [i, np] : proof_updates)
    delta += term_cost(g, proven[i].second, model) - term_cost(g, np, model);
  return delta - a.cost;
}

}  // namespace

double utility(const Corpus& c, const Abstraction& a, const CostModel& model) {
  Corpus sim = c;
  Abstraction named = a;
  named.name = "~candidate";
  sim.graph.define(named.name, a.body);
  return rewrite_impl(sim, named, model, false).utility;
}

RewriteOutcome rewrite(Corpus& c, const Abstraction& a, const CostModel& model,
                       bool check_all) {
  return rewrite_impl(c, a, model, check_all);
}

std::vector<Abstraction> mine(Corpus& c, int max_size, int max_arity,
                              int top_k, const CostModel& model,
                              int state_budget) {
  if (max_size < 2 || max_arity < 0 || top_k < 1)
    throw Error(ErrorCode::BudgetZero, "mine: degenerate limits");
  auto anchors = corpus_anchors(c);
  if (anchors.empty())
    throw Error(ErrorCode::EmptyCorpus, "mine: corpus has no anchors");
  Kernel k(c.graph);
  auto sites = anchor_closure(c);
  auto patterns = grow_patterns(c.graph, k, sites, max_size, state_budget);

  std::vector<Abstraction> pending;
  for (const auto& p : patterns) {
    if (p.arity() > max_arity) continue;
    auto matched = matching_sites(c.graph, k, p, sites);
    if (matched.size() < 2) continue;
    auto rep = match(c.graph, k, p, matched.front());
    auto body = build_body(k, p, *rep);
    if (!body) continue;
    Abstraction a;
    a.pattern = p;
    a.body = *body;
    a.cost = term_cost(c.graph, *body, model);
    a.occurrences = static_cast<int>(matched.size());
    pending.push_back(std::move(a));
  }

  // one scratch copy serves every candidate's simulated rewrite
  Hypergraph sim = c.graph;
  Kernel simk(sim);
  std::vector<NodeId> def_bodies;
  for (const auto& [name, dref] : c.graph.definitions())
    def_bodies.push_back(c.graph.node(dref).children[0]);
  std::vector<Abstraction> cands;
  int tag = 0;
  for (Abstraction& a : pending) {
    NodeId ref = sim.define("~candidate" + std::to_string(tag++), a.body);
    try {
      a.utility = dry_run_utility(simk, ref, a, def_bodies, c.proven, model);
    } catch (const Error&) {
      continue;  // adoption would not be sound (e.g. type-divergent holes)
    }
    cands.push_back(std::move(a));
  }
  std::sort(cands.begin(), cands.end(),
            [](const Abstraction& x, const Abstraction& y) {
              if (x.utility != y.utility) return x.utility > y.utility;
              return x.pattern.key() < y.pattern.key();
            });
  if (static_cast<int>(cands.size()) > top_k) cands.resize(top_k);
  return cands;
}

namespace {

void sweep_unreferenced(Corpus& c) {
  Hypergraph& g = c.graph;
  std::set<NodeId> keep;
  std::vector<NodeId> work;
  auto push = [&](NodeId n) {
    if (keep.insert(n).second) work.push_back(n);
  };
  for (NodeId r : g.roots()) push(r);
  for (const auto& [name, ref] : g.definitions()) push(ref);
  for (const auto& [prop, proof] : c.proven) {
    push(prop);
    push(proof);
  }
  while (!work.empty()) {
    NodeId n = work.back();
    work.pop_back();
    for (NodeId ch : g.node(n).children) push(ch);
    if (g.node(n).type) push(*g.node(n).type);
  }
  for (NodeId i = 0; i < g.node_count(); ++i)
    if (!keep.count(i) && !g.tombstoned(i)) g.tombstone(i);
}

}  // namespace

std::vector<Adoption> compress(Corpus& c, const CompressOptions& opts) {
  if (opts.rounds < 1)
    throw Error(ErrorCode::BudgetZero, "compress: rounds must be >= 1");
  std::vector<Adoption> adopted;
  for (int round = 0; round < opts.rounds; ++round) {
    std::vector<Abstraction> cands;
    try {
      cands = mine(c, opts.max_size, opts.max_arity, opts.top_k, opts.model,
                   opts.state_budget);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::EmptyCorpus) break;
      throw;
    }
    bool committed = false;
    for (const Abstraction& cand : cands) {
      if (cand.utility <= 0) break;
      Abstraction best = cand;
      int i = 0;
      while (c.graph.definition("f" + std::to_string(i))) ++i;
      best.name = "f" + std::to_string(i);
      // commit on a trial copy: the simulated utility samples its checks, so
      // a candidate can still trip the full semantic sweep here
      Corpus trial = c;
      trial.graph.define(best.name, best.body);
      RewriteOutcome out;
      try {
        out = rewrite_impl(trial, best, opts.model, true);
      } catch (const Error&) {
        continue;
      }
      c = std::move(trial);
      adopted.push_back({best.name, round, out.utility, out.occurrences});
      sweep_unreferenced(c);
      committed = true;
      break;
    }
    if (!committed) break;
  }
  return adopted;
}

double branching_factor(const Hypergraph& g,
                        const std::vector<std::string>& colors) {
  double pool = 0;
  for (NodeId i = 0; i < g.node_count(); ++i)
    if (!g.tombstoned(i)) pool += 1;
  double total = 0;
  for (const Rule& r : rules_by_color(colors))
    total += std::pow(pool, r.arity);
  return total;
}

}  // namespace proofgraph
