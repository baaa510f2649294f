#include "proofgraph/rules.hpp"

#include <algorithm>
#include <set>

namespace proofgraph {

namespace {

bool statement_like(const Kernel& k, NodeId n) { return k.is_prop_form(n); }

bool nat_shaped(const Hypergraph& g, NodeId n) {
  NodeKind kind = g.node(n).kind;
  return kind == NodeKind::NatZero || kind == NodeKind::NatSucc;
}

}  // namespace

std::vector<Rule> default_rules() {
  std::vector<Rule> out;
  out.push_back({"and", 2, [](Kernel& k, const std::vector<NodeId>& in) {
                   if (!statement_like(k, in[0]) || !statement_like(k, in[1]))
                     return std::optional<NodeId>{};
                   return std::optional<NodeId>{k.prop_and(in[0], in[1])};
                 }});
  out.push_back({"implies", 2, [](Kernel& k, const std::vector<NodeId>& in) {
                   if (!statement_like(k, in[0]) || !statement_like(k, in[1]))
                     return std::optional<NodeId>{};
                   return std::optional<NodeId>{
                       k.prop_implies(in[0], in[1])};
                 }});
  out.push_back({"not", 1, [](Kernel& k, const std::vector<NodeId>& in) {
                   if (!statement_like(k, in[0])) return std::optional<NodeId>{};
                   return std::optional<NodeId>{k.prop_not(in[0])};
                 }});
  out.push_back({"succ", 1, [](Kernel& k, const std::vector<NodeId>& in) {
                   if (!nat_shaped(k.graph(), in[0]))
                     return std::optional<NodeId>{};
                   return std::optional<NodeId>{k.succ(in[0])};
                 }});
  return out;
}

std::vector<Rule> rules_by_color(const std::vector<std::string>& colors) {
  std::vector<Rule> all = default_rules();
  std::vector<Rule> out;
  for (const auto& c : colors) {
    auto it = std::find_if(all.begin(), all.end(),
                           [&](const Rule& r) { return r.color == c; });
    if (it == all.end())
      throw Error(ErrorCode::UnknownInput, "unknown rule color: " + c);
    out.push_back(*it);
  }
  return out;
}

std::vector<NodeId> extend_in_place(Kernel& k, const std::vector<Rule>& rules,
                                    int budget,
                                    const std::vector<NodeId>& candidates,
                                    const std::vector<NodeId>& touch) {
  if (budget <= 0)
    throw Error(ErrorCode::BudgetZero, "extension budget must be positive");
  Hypergraph& g = k.graph();
  std::vector<NodeId> pool = candidates;
  if (pool.empty()) {
    for (NodeId i = 0; i < g.node_count(); ++i)
      if (!g.tombstoned(i)) pool.push_back(i);
  }
  std::set<NodeId> required(touch.begin(), touch.end());
  std::vector<NodeId> added;
  auto before = g.node_count();
  for (const Rule& r : rules) {
    // lexicographic tuple enumeration over the pool
    std::vector<std::size_t> idx(static_cast<std::size_t>(r.arity), 0);
    bool done = pool.empty();
    while (!done) {
      std::vector<NodeId> tuple;
      tuple.reserve(idx.size());
      for (auto i : idx) tuple.push_back(pool[i]);
      bool touches = required.empty();
      for (NodeId t : tuple) touches |= required.count(t) > 0;
      if (static_cast<int>(added.size()) < budget) {
        if (touches) {
          if (auto n = r.apply(k, tuple)) {
            if (*n >= before &&
                std::find(added.begin(), added.end(), *n) == added.end())
              added.push_back(*n);
          }
        }
      } else {
        return added;
      }
      // advance the odometer
      std::size_t pos = idx.size();
      while (pos > 0) {
        if (++idx[pos - 1] < pool.size()) break;
        idx[pos - 1] = 0;
        --pos;
      }
      done = (pos == 0);
    }
  }
  return added;
}

Hypergraph extend(const Hypergraph& g, const std::vector<std::string>& colors,
                  int budget) {
  Hypergraph out = g;
  Kernel k(out);
  extend_in_place(k, rules_by_color(colors), budget);
  return out;
}

Neighborhood neighborhood(const Hypergraph& g, NodeId seed, int d,
                          const std::vector<std::string>& colors,
                          int budget) {
  g.check_node(seed, "seed");
  if (budget <= 0)
    throw Error(ErrorCode::BudgetZero, "neighborhood budget must be positive");
  Neighborhood out{g, {seed}};
  Kernel k(out.graph);
  auto rules = rules_by_color(colors);
  for (int layer = 0; layer < d; ++layer) {
    // pool: the ball plus the ambient graph; every new node must touch the
    // ball, so the result stays centered on the seed
    std::vector<NodeId> pool;
    for (NodeId i = 0; i < out.graph.node_count(); ++i)
      if (!out.graph.tombstoned(i)) pool.push_back(i);
    auto fresh = extend_in_place(k, rules, budget, pool, out.members);
    for (NodeId n : fresh) out.members.push_back(n);
    if (fresh.empty()) break;
  }
  return out;
}

}  // namespace proofgraph
