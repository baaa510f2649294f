#include "proofgraph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "proofgraph/syntax.hpp"

namespace proofgraph {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool counted_edge(const HyperEdge& e) { return e.color != "typing"; }
}  // namespace

CostModel CostModel::unit() {
  return CostModel{
      [](const HyperEdge& e) { return e.inputs.empty() ? 0.0 : 1.0; },
      [](const Node&) { return 0.0; }};
}

CostModel CostModel::scaled(double lambda) {
  return CostModel{
      [lambda](const HyperEdge& e) {
        return e.inputs.empty() ? 0.0 : lambda;
      },
      [](const Node&) { return 0.0; }};
}

int depth(const Hypergraph& g, NodeId node) {
  g.check_node(node);
  const int n = static_cast<int>(g.node_count());
  std::vector<int> val(n, std::numeric_limits<int>::max());
  for (NodeId r : g.roots()) val[r] = 0;
  // fixpoint relaxation over construction + computation edges (computation
  // edges act as alternative one-layer derivations of their reduct)
  bool changed = true;
  while (changed) {
    changed = false;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const HyperEdge& he = g.edge(e);
      if (!counted_edge(he)) continue;
      int cand = 0;
      bool ready = true;
      for (NodeId i : he.inputs) {
        if (val[i] == std::numeric_limits<int>::max()) {
          ready = false;
          break;
        }
        cand = std::max(cand, val[i]);
      }
      if (!ready) continue;
      cand = he.inputs.empty() ? 0 : cand + 1;
      for (NodeId o : he.outputs)
        if (cand < val[o]) {
          val[o] = cand;
          changed = true;
        }
    }
  }
  if (val[node] == std::numeric_limits<int>::max())
    throw Error(ErrorCode::Unreachable,
                "node " + std::to_string(node) + " has no derivation");
  return val[node];
}

double complexity(const Hypergraph& g, const CostModel& model) {
  double total = 0.0;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (counted_edge(g.edge(e))) total += model.edge_cost(g.edge(e));
  for (NodeId i = 0; i < g.node_count(); ++i)
    if (g.constructions_of(i).empty()) total += model.input_cost(g.node(i));
  return total;
}

// --- minimal complexity: minimization over recorded constructions ----------

namespace {

struct MinSearch {
  const Hypergraph& g;
  const CostModel& model;
  int budget;
  int explored = 0;
  bool truncated = false;

  double best_cost = kInf;
  std::vector<std::string> best_colors = {};
  std::map<NodeId, EdgeId> best_choice = {};

  std::vector<EdgeId> options(NodeId n) const {
    auto out = g.constructions_of(n);
    for (EdgeId e : g.computations_into(n)) out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
  }

  // evaluate a complete assignment; discard if the chosen edges are cyclic
  void finish(const std::map<NodeId, EdgeId>& choice) {
    ++explored;
    // acyclicity via DFS from each node over chosen-edge inputs
    std::map<NodeId, int> state;  // 0 fresh, 1 on stack, 2 done
    std::function<bool(NodeId)> ok = [&](NodeId n) {
      auto it = state.find(n);
      if (it != state.end()) return it->second == 2;
      state[n] = 1;
      if (auto c = choice.find(n); c != choice.end())
        for (NodeId i : g.edge(c->second).inputs) {
          auto s = state.find(i);
          if (s != state.end() && s->second == 1) return false;
          if (!ok(i)) return false;
        }
      state[n] = 2;
      return true;
    };
    for (const auto& kv : choice)
      if (!ok(kv.first)) return;

    std::set<EdgeId> edges;
    double cost = 0.0;
    std::set<NodeId> nodes;
    for (const auto& [n, e] : choice) {
      nodes.insert(n);
      if (edges.insert(e).second) cost += model.edge_cost(g.edge(e));
      for (NodeId i : g.edge(e).inputs) nodes.insert(i);
    }
    for (NodeId n : nodes)
      if (!choice.count(n)) cost += model.input_cost(g.node(n));
    std::vector<std::string> colors;
    for (EdgeId e : edges) colors.push_back(g.edge(e).color);
    std::sort(colors.begin(), colors.end());
    if (cost < best_cost || (cost == best_cost && colors < best_colors)) {
      best_cost = cost;
      best_colors = colors;
      best_choice = choice;
    }
  }

  void dfs(std::map<NodeId, EdgeId>& choice, std::set<NodeId>& pending) {
    if (explored >= budget) {
      truncated = true;
      return;
    }
    if (pending.empty()) {
      finish(choice);
      return;
    }
    NodeId n = *pending.begin();
    pending.erase(pending.begin());
    for (EdgeId e : options(n)) {
      choice[n] = e;
      std::vector<NodeId> opened;
      for (NodeId i : g.edge(e).inputs) {
        if (choice.count(i) || pending.count(i)) continue;
        if (options(i).empty()) continue;  // leaf: root or free input
        pending.insert(i);
        opened.push_back(i);
      }
      dfs(choice, pending);
      for (NodeId i : opened) pending.erase(i);
      choice.erase(n);
      if (truncated) {
        pending.insert(n);
        return;
      }
    }
    pending.insert(n);
  }
};

}  // namespace

ComplexityReport min_complexity(const Hypergraph& g, NodeId node,
                                const CostModel& model, int budget) {
  g.check_node(node);
  ComplexityReport rep;
  rep.node = node;
  MinSearch s{g, model, budget};
  if (s.options(node).empty()) {
    // root / free input: no edges needed
    rep.value = model.input_cost(g.node(node));
    rep.witness = g.project({node}, {});
    rep.exact = true;
    return rep;
  }
  std::map<NodeId, EdgeId> choice;
  std::set<NodeId> pending{node};
  s.dfs(choice, pending);
  if (s.best_cost == kInf)
    throw Error(ErrorCode::BudgetZero,
                "no construction found within budget for node " +
                    std::to_string(node));
  rep.value = s.best_cost;
  rep.exact = !s.truncated;
  std::vector<NodeId> wnodes;
  std::vector<EdgeId> wedges;
  for (const auto& [n, e] : s.best_choice) {
    wnodes.push_back(n);
    wedges.push_back(e);
    for (NodeId i : g.edge(e).inputs) wnodes.push_back(i);
  }
  rep.witness = g.project(wnodes, wedges);
  return rep;
}

// --- description length: shortest surface representation -------------------

namespace {

// token count of the canonical serialization with definition-name folding
double fold_tokens(const Hypergraph& g, NodeId n,
                   const std::map<NodeId, std::string>& folds) {
  if (folds.count(n)) return 1;
  const Node& node = g.node(n);
  switch (node.kind) {
    case NodeKind::Sort:
    case NodeKind::NatZero:
    case NodeKind::Var:
    case NodeKind::DefRef:
      return 1;
    case NodeKind::Atom:
      return 2;  // (atom NAME)
    case NodeKind::Lambda:
    case NodeKind::PiForm:
    case NodeKind::SigmaForm:
      return 2 + fold_tokens(g, node.children[0], folds) +
             fold_tokens(g, node.children[1], folds);
    case NodeKind::App:
      return fold_tokens(g, node.children[0], folds) +
             fold_tokens(g, node.children[1], folds);
    default: {
      double t = 1;
      for (NodeId c : node.children) t += fold_tokens(g, c, folds);
      return t;
    }
  }
}

}  // namespace

ComplexityReport length(const Hypergraph& g, NodeId node, int budget) {
  g.check_node(node);
  if (budget <= 0)
    throw Error(ErrorCode::BudgetZero, "length budget must be positive");
  std::map<NodeId, std::string> folds;
  for (const auto& [name, ref] : g.definitions())
    folds.emplace(g.node(ref).children[0], name);

  // representations: the node plus all computation-edge ancestors
  std::vector<NodeId> reps;
  std::set<NodeId> seen;
  std::vector<NodeId> frontier{node};
  seen.insert(node);
  bool exact = true;
  while (!frontier.empty()) {
    NodeId cur = frontier.back();
    frontier.pop_back();
    if (static_cast<int>(reps.size()) >= budget) {
      exact = false;
      break;
    }
    reps.push_back(cur);
    for (EdgeId e : g.computations_into(cur)) {
      NodeId pred = g.edge(e).inputs[0];
      if (seen.insert(pred).second) frontier.push_back(pred);
    }
  }

  ComplexityReport rep;
  rep.node = node;
  rep.exact = exact;
  rep.value = kInf;
  NodeId best = node;
  for (NodeId r : reps) {
    double t = fold_tokens(g, r, folds);
    if (t < rep.value || (t == rep.value && r < best)) {
      rep.value = t;
      best = r;
    }
  }
  auto closure = g.closure_nodes(best);
  std::vector<EdgeId> wedges;
  for (NodeId n : closure)
    if (g.node(n).construction) wedges.push_back(*g.node(n).construction);
  rep.witness = g.project(closure, wedges);
  return rep;
}

// --- proof efficiency -------------------------------------------------------

namespace {

bool statement_shaped(const Hypergraph& g, NodeId t) {
  const Node& n = g.node(t);
  switch (n.kind) {
    case NodeKind::IdForm:
    case NodeKind::PropAnd:
    case NodeKind::PropNot:
    case NodeKind::Atom:
      return true;
    case NodeKind::PropImplies:
      return statement_shaped(g, n.children[1]);
    case NodeKind::PiForm:
      return statement_shaped(g, n.children[1]);
    default:
      return false;
  }
}

void collect_statements(Kernel& k, NodeId term, Context& ctx,
                        std::set<NodeId>& out) {
  try {
    NodeId ty = k.infer(term, ctx);
    if (statement_shaped(k.graph(), ty)) out.insert(ty);
  } catch (const Error&) {
    // ill-typed or fuel-starved subterm: contributes no statement
  }
  const Node n = k.graph().node(term);
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    bool binds = (n.kind == NodeKind::Lambda || n.kind == NodeKind::PiForm ||
                  n.kind == NodeKind::SigmaForm) &&
                 i == 1;
    if (binds) ctx.push_back(n.children[0]);
    collect_statements(k, n.children[i], ctx, out);
    if (binds) ctx.pop_back();
  }
}

}  // namespace

EfficiencyReport efficiency(Hypergraph& g, NodeId prop, int budget) {
  g.check_node(prop);
  std::vector<NodeId> proofs;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const HyperEdge& he = g.edge(e);
    if (he.color == "typing" && he.outputs[0] == prop &&
        he.inputs[0] != prop)
      proofs.push_back(he.inputs[0]);
  }
  std::sort(proofs.begin(), proofs.end());
  proofs.erase(std::unique(proofs.begin(), proofs.end()), proofs.end());
  if (proofs.empty())
    throw Error(ErrorCode::Unproven,
                "no recorded proof of node " + std::to_string(prop));

  EfficiencyReport rep;
  Kernel k(g);
  double best = kInf;
  bool exact = true;
  int considered = 0;
  for (NodeId p : proofs) {
    if (considered++ >= budget) {
      exact = false;
      break;
    }
    std::set<NodeId> stmts{prop};
    Context ctx;
    collect_statements(k, p, ctx, stmts);
    double m = 0.0;
    for (NodeId s : stmts) {
      auto lr = length(g, s, budget);
      m += lr.value;
      exact &= lr.exact;
    }
    if (m < best) {
      best = m;
      rep.best_proof = p;
      rep.edge_complexity =
          complexity(g.backward_closure(p), CostModel::unit());
    }
  }
  auto lp = length(g, prop, budget);
  if (lp.value <= 0)
    throw Error(ErrorCode::Internal, "zero-length statement");
  rep.proof_complexity = best;
  rep.statement_length = lp.value;
  rep.value = best / lp.value;
  rep.exact = exact && lp.exact;
  return rep;
}

// --- §2.1 growth ------------------------------------------------------------

std::vector<std::size_t> growth_experiment(std::uint32_t k, int layers,
                                           bool override_guard) {
  if (k < 1)
    throw Error(ErrorCode::BudgetZero, "growth needs at least one atom");
  if (layers > 4 && !override_guard)
    throw Error(ErrorCode::GuardExceeded,
                "growth beyond 4 layers is doubly exponential; pass the "
                "override to proceed");
  Hypergraph g;
  Kernel kn(g);
  std::vector<NodeId> newest;
  for (std::uint32_t i = 0; i < k; ++i)
    newest.push_back(kn.atom("P" + std::to_string(i)));
  std::vector<std::size_t> sizes{newest.size()};
  for (int j = 0; j < layers; ++j) {
    std::set<NodeId> next;
    for (NodeId a : newest)
      for (NodeId b : newest) next.insert(kn.prop_and(a, b));
    newest.assign(next.begin(), next.end());
    sizes.push_back(newest.size());
  }
  return sizes;
}

// --- §3.4.2 hub scores -------------------------------------------------------

std::vector<HubScore> hub_scores(const Hypergraph& g, int samples,
                                 std::uint64_t seed) {
  const std::size_t n = g.node_count(), m = g.edge_count();
  const std::size_t v = n + m;  // bipartite expansion
  std::vector<std::vector<std::size_t>> adj(v);
  std::vector<HubScore> out(n);
  for (NodeId i = 0; i < n; ++i) out[i].node = i;
  for (EdgeId e = 0; e < m; ++e) {
    for (NodeId i : g.edge(e).inputs) {
      adj[i].push_back(n + e);
      ++out[i].out_degree;
    }
    for (NodeId o : g.edge(e).outputs) {
      adj[n + e].push_back(o);
      ++out[o].in_degree;
    }
  }

  std::vector<std::size_t> sources(n);
  for (std::size_t i = 0; i < n; ++i) sources[i] = i;
  if (samples < static_cast<int>(n)) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i > 1; --i)
      std::swap(sources[i - 1], sources[rng() % i]);
    sources.resize(static_cast<std::size_t>(std::max(samples, 0)));
    std::sort(sources.begin(), sources.end());
  }

  // Brandes accumulation per sampled source
  std::vector<double> bc(v, 0.0);
  for (std::size_t s : sources) {
    std::vector<std::vector<std::size_t>> pred(v);
    std::vector<double> sigma(v, 0.0), delta(v, 0.0);
    std::vector<int> dist(v, -1);
    std::vector<std::size_t> order;
    sigma[s] = 1.0;
    dist[s] = 0;
    std::queue<std::size_t> q;
    q.push(s);
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      order.push_back(u);
      for (std::size_t w : adj[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
        if (dist[w] == dist[u] + 1) {
          sigma[w] += sigma[u];
          pred[w].push_back(u);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      std::size_t w = *it;
      for (std::size_t u : pred[w])
        delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
      if (w != s) bc[w] += delta[w];
    }
  }
  for (NodeId i = 0; i < n; ++i) out[i].betweenness = bc[i];
  return out;
}

// --- CSV --------------------------------------------------------------------

std::string metrics_csv(Hypergraph& g, int budget) {
  std::ostringstream out;
  out << "node,kind,depth,min_complexity,min_exact,length,length_exact,"
         "efficiency,out_degree,in_degree\n";
  const NodeId count = static_cast<NodeId>(g.node_count());
  auto hubs = hub_scores(g, static_cast<int>(g.node_count()));
  auto unit = CostModel::unit();
  for (NodeId i = 0; i < count; ++i) {
    int d = -1;
    try {
      d = depth(g, i);
    } catch (const Error&) {
    }
    auto mc = min_complexity(g, i, unit, budget);
    auto lr = length(g, i, budget);
    std::string eff;
    try {
      auto er = efficiency(g, i, budget);
      eff = std::to_string(er.value);
    } catch (const Error&) {
    }
    out << i << ',' << kind_name(g.node(i).kind) << ',' << d << ','
        << mc.value << ',' << (mc.exact ? 1 : 0) << ',' << lr.value << ','
        << (lr.exact ? 1 : 0) << ',' << eff << ',' << hubs[i].out_degree
        << ',' << hubs[i].in_degree << '\n';
  }
  return out.str();
}

std::string growth_csv(const std::vector<std::size_t>& layers) {
  std::ostringstream out;
  out << "layer,count\n";
  for (std::size_t j = 0; j < layers.size(); ++j)
    out << j << ',' << layers[j] << '\n';
  return out.str();
}

}  // namespace proofgraph
