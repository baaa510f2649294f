#include "proofgraph/hypergraph.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace proofgraph {

namespace {

struct KindInfo {
  NodeKind kind;
  std::string_view name;
  int arity;
};

constexpr KindInfo kKinds[] = {
    {NodeKind::Sort, "sort", 0},       {NodeKind::NatZero, "zero", 0},
    {NodeKind::NatSucc, "succ", 1},    {NodeKind::Var, "var", 0},
    {NodeKind::Lambda, "lam", 2},      {NodeKind::App, "app", 2},
    {NodeKind::PiForm, "pi", 2},       {NodeKind::SigmaForm, "sigma", 2},
    {NodeKind::Pair, "pair", 2},       {NodeKind::Proj1, "proj1", 1},
    {NodeKind::Proj2, "proj2", 1},     {NodeKind::IdForm, "id", 3},
    {NodeKind::Refl, "refl", 1},       {NodeKind::Cong, "cong", 1},
    {NodeKind::Rec, "rec", 4},         {NodeKind::DefRef, "defref", 1},
    {NodeKind::PropAnd, "and", 2},     {NodeKind::PropImplies, "implies", 2},
    {NodeKind::PropNot, "not", 1},     {NodeKind::Atom, "atom", 0},
};

constexpr std::string_view kClassNames[] = {
    "formation", "introduction", "elimination", "computation", "deduction"};

std::size_t hash_combine(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

}  // namespace

std::string_view kind_name(NodeKind k) {
  return kKinds[static_cast<int>(k)].name;
}

NodeKind kind_from_name(std::string_view name) {
  for (const auto& info : kKinds)
    if (info.name == name) return info.kind;
  throw Error(ErrorCode::ParseError, "unknown node kind: " + std::string(name));
}

std::string_view class_name(EdgeClass c) {
  return kClassNames[static_cast<int>(c)];
}

EdgeClass class_from_name(std::string_view name) {
  for (int i = 0; i < 5; ++i)
    if (kClassNames[i] == name) return static_cast<EdgeClass>(i);
  throw Error(ErrorCode::ParseError,
              "unknown edge class: " + std::string(name));
}

int kind_arity(NodeKind k) { return kKinds[static_cast<int>(k)].arity; }

std::size_t Hypergraph::KeyHash::operator()(const Key& k) const {
  std::size_t h = static_cast<std::size_t>(k.kind);
  if (const auto* n = std::get_if<std::uint32_t>(&k.payload))
    h = hash_combine(h, *n + 1);
  else if (const auto* s = std::get_if<std::string>(&k.payload))
    h = hash_combine(h, std::hash<std::string>{}(*s));
  for (NodeId c : k.children) h = hash_combine(h, c);
  return h;
}

void Hypergraph::check_node(NodeId id, const char* ctx) const {
  if (id >= nodes_.size())
    throw Error(ErrorCode::UnknownInput,
                std::string("unknown ") + ctx + " id " + std::to_string(id));
}

NodeId Hypergraph::add_root(NodeKind kind, Payload payload) {
  Key key{kind, payload, {}};
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  Node n;
  n.id = static_cast<NodeId>(nodes_.size());
  n.kind = kind;
  n.payload = std::move(payload);
  nodes_.push_back(n);
  tombstones_.push_back(false);
  roots_.push_back(n.id);
  index_.emplace(std::move(key), n.id);
  ++revision_;
  return n.id;
}

NodeId Hypergraph::add_node(NodeKind kind, Payload payload,
                            std::vector<NodeId> children,
                            std::string_view color, EdgeClass cls) {
  if (static_cast<int>(children.size()) != kind_arity(kind))
    throw Error(ErrorCode::ArityMismatch,
                std::string(kind_name(kind)) + " expects " +
                    std::to_string(kind_arity(kind)) + " inputs, got " +
                    std::to_string(children.size()));
  for (NodeId c : children) check_node(c, "input");
  Key key{kind, payload, children};
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  Node n;
  n.id = static_cast<NodeId>(nodes_.size());
  n.kind = kind;
  n.payload = std::move(payload);
  n.children = children;
  nodes_.push_back(n);
  tombstones_.push_back(false);
  index_.emplace(std::move(key), n.id);
  EdgeId e = append_edge(color, cls, std::move(children), {nodes_.back().id});
  nodes_.back().construction = e;
  ++revision_;
  return nodes_.back().id;
}

EdgeId Hypergraph::append_edge(std::string_view color, EdgeClass cls,
                               std::vector<NodeId> inputs,
                               std::vector<NodeId> outputs) {
  HyperEdge e;
  e.id = static_cast<EdgeId>(edges_.size());
  e.color = std::string(color);
  e.cls = cls;
  e.inputs = std::move(inputs);
  e.outputs = std::move(outputs);
  edges_.push_back(std::move(e));
  ++revision_;
  return edges_.back().id;
}

EdgeId Hypergraph::add_computation(NodeId from, NodeId to,
                                   std::string_view color) {
  check_node(from);
  check_node(to);
  return append_edge(color, EdgeClass::Computation, {from}, {to});
}

EdgeId Hypergraph::add_typing(NodeId subject, NodeId type) {
  check_node(subject);
  check_node(type);
  if (!nodes_[subject].type) nodes_[subject].type = type;
  return append_edge("typing", EdgeClass::Deduction, {subject}, {type});
}

EdgeId Hypergraph::add_derivation(std::vector<NodeId> inputs, NodeId output,
                                  std::string_view color, EdgeClass cls) {
  for (NodeId c : inputs) check_node(c, "input");
  check_node(output, "output");
  if (is_root(output))
    throw Error(ErrorCode::CycleDetected,
                "construction edge may not output a root");
  // Reject edges that would close a construction cycle.
  for (NodeId c : inputs) {
    auto anc = closure_nodes(c);
    if (std::find(anc.begin(), anc.end(), output) != anc.end())
      throw Error(ErrorCode::CycleDetected,
                  "input depends on the proposed output");
  }
  return append_edge(color, cls, std::move(inputs), {output});
}

std::optional<NodeId> Hypergraph::find(
    NodeKind kind, const Payload& payload,
    const std::vector<NodeId>& children) const {
  Key key{kind, payload, children};
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  return std::nullopt;
}

const Node& Hypergraph::node(NodeId id) const {
  check_node(id);
  return nodes_[id];
}

const HyperEdge& Hypergraph::edge(EdgeId id) const {
  if (id >= edges_.size())
    throw Error(ErrorCode::UnknownInput, "unknown edge id");
  return edges_[id];
}

bool Hypergraph::is_root(NodeId id) const {
  return std::find(roots_.begin(), roots_.end(), id) != roots_.end();
}

std::vector<EdgeId> Hypergraph::constructions_of(NodeId id) const {
  check_node(id);
  std::vector<EdgeId> out;
  for (const auto& e : edges_) {
    if (e.cls == EdgeClass::Computation) continue;
    if (e.color == "typing") continue;
    if (std::find(e.outputs.begin(), e.outputs.end(), id) != e.outputs.end())
      out.push_back(e.id);
  }
  return out;
}

std::vector<EdgeId> Hypergraph::computations_from(NodeId id) const {
  std::vector<EdgeId> out;
  for (const auto& e : edges_)
    if (e.cls == EdgeClass::Computation && e.inputs[0] == id)
      out.push_back(e.id);
  return out;
}

std::vector<EdgeId> Hypergraph::computations_into(NodeId id) const {
  std::vector<EdgeId> out;
  for (const auto& e : edges_)
    if (e.cls == EdgeClass::Computation && e.outputs[0] == id)
      out.push_back(e.id);
  return out;
}

std::optional<NodeId> Hypergraph::typing_of(NodeId id) const {
  check_node(id);
  return nodes_[id].type;
}

NodeId Hypergraph::define(const std::string& name, NodeId body) {
  check_node(body, "body");
  if (definitions_.contains(name))
    throw Error(ErrorCode::DuplicateName, "duplicate definition: " + name);
  NodeId ref = add_node(NodeKind::DefRef, name, {body}, "definition",
                        EdgeClass::Introduction);
  definitions_.emplace(name, ref);
  return ref;
}

void Hypergraph::adopt_definition(const std::string& name, NodeId ref) {
  check_node(ref, "defref");
  if (nodes_[ref].kind != NodeKind::DefRef)
    throw Error(ErrorCode::LoadError, "not a defref node: " + name);
  if (definitions_.contains(name))
    throw Error(ErrorCode::DuplicateName, "duplicate definition: " + name);
  definitions_.emplace(name, ref);
}

NodeId Hypergraph::rebind_definition(const std::string& name, NodeId body) {
  check_node(body, "body");
  auto it = definitions_.find(name);
  if (it == definitions_.end())
    throw Error(ErrorCode::UnknownInput, "no such definition: " + name);
  NodeId ref = add_node(NodeKind::DefRef, name, {body}, "definition",
                        EdgeClass::Introduction);
  it->second = ref;
  return ref;
}

std::optional<NodeId> Hypergraph::definition(const std::string& name) const {
  if (auto it = definitions_.find(name); it != definitions_.end())
    return it->second;
  return std::nullopt;
}

void Hypergraph::tombstone(NodeId id) {
  check_node(id);
  tombstones_[id] = true;
  ++revision_;
}

bool Hypergraph::tombstoned(NodeId id) const {
  check_node(id);
  return tombstones_[id];
}

std::vector<NodeId> Hypergraph::closure_nodes(NodeId id) const {
  check_node(id);
  std::vector<NodeId> order;
  std::vector<char> seen(nodes_.size(), 0);
  // Iterative DFS over construction children.
  std::vector<std::pair<NodeId, std::size_t>> stack{{id, 0}};
  seen[id] = 1;
  while (!stack.empty()) {
    auto& [n, i] = stack.back();
    const auto& kids = nodes_[n].children;
    if (i < kids.size()) {
      NodeId c = kids[i++];
      if (!seen[c]) {
        seen[c] = 1;
        stack.emplace_back(c, 0);
      }
    } else {
      order.push_back(n);
      stack.pop_back();
    }
  }
  return order;
}

Hypergraph Hypergraph::backward_closure(NodeId id) const {
  auto order = closure_nodes(id);
  Hypergraph out;
  std::unordered_map<NodeId, NodeId> remap;
  for (NodeId n : order) {
    const Node& src = nodes_[n];
    NodeId copy;
    if (!src.construction && src.children.empty()) {
      copy = out.add_root(src.kind, src.payload);
    } else {
      std::vector<NodeId> kids;
      kids.reserve(src.children.size());
      for (NodeId c : src.children) kids.push_back(remap.at(c));
      const HyperEdge& e = edges_[*src.construction];
      copy = out.add_node(src.kind, src.payload, std::move(kids), e.color,
                          e.cls);
    }
    remap.emplace(n, copy);
  }
  return out;
}

Hypergraph Hypergraph::project(const std::vector<NodeId>& nodes,
                               const std::vector<EdgeId>& edges) const {
  std::vector<NodeId> order = nodes;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  std::set<NodeId> member(order.begin(), order.end());
  std::vector<EdgeId> eorder = edges;
  std::sort(eorder.begin(), eorder.end());
  eorder.erase(std::unique(eorder.begin(), eorder.end()), eorder.end());

  Hypergraph out;
  std::unordered_map<NodeId, NodeId> remap;
  std::set<NodeId> produced;
  for (EdgeId e : eorder)
    for (NodeId o : edges_[e].outputs) produced.insert(o);
  for (NodeId id : order) {
    check_node(id, "projected node");
    const Node& src = nodes_[id];
    Node n;
    n.id = static_cast<NodeId>(out.nodes_.size());
    n.kind = src.kind;
    n.payload = src.payload;
    bool kids_present = !src.children.empty();
    for (NodeId c : src.children) kids_present &= member.count(c) > 0;
    if (kids_present)
      for (NodeId c : src.children) n.children.push_back(remap.at(c));
    remap.emplace(id, n.id);
    if (!produced.count(id)) out.roots_.push_back(n.id);
    out.index_.try_emplace(Key{n.kind, n.payload, n.children}, n.id);
    out.nodes_.push_back(std::move(n));
    out.tombstones_.push_back(false);
  }
  for (EdgeId e : eorder) {
    const HyperEdge& src = edges_[e];
    HyperEdge he;
    he.id = static_cast<EdgeId>(out.edges_.size());
    he.color = src.color;
    he.cls = src.cls;
    for (NodeId i : src.inputs) he.inputs.push_back(remap.at(i));
    for (NodeId o : src.outputs) {
      he.outputs.push_back(remap.at(o));
      Node& n = out.nodes_[remap.at(o)];
      if (!n.construction && he.cls != EdgeClass::Computation)
        n.construction = he.id;
    }
    out.edges_.push_back(std::move(he));
  }
  out.revision_ = 1;
  return out;
}

std::vector<NodeId> Hypergraph::topo_order() const {
  // Children always precede their node by construction, so insertion order
  // is a topological order; verify to uphold the acyclicity invariant.
  for (const Node& n : nodes_)
    for (NodeId c : n.children)
      if (c >= n.id)
        throw Error(ErrorCode::CycleDetected,
                    "construction relation is not a DAG");
  std::vector<NodeId> order(nodes_.size());
  for (NodeId i = 0; i < nodes_.size(); ++i) order[i] = i;
  return order;
}

bool structurally_equal(const Hypergraph& a, const Hypergraph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
    return false;
  // Map a's nodes into b by structural identity, bottom-up.
  std::unordered_map<NodeId, NodeId> remap;
  for (NodeId i = 0; i < a.node_count(); ++i) {
    const Node& n = a.node(i);
    std::vector<NodeId> kids;
    for (NodeId c : n.children) {
      auto it = remap.find(c);
      if (it == remap.end()) return false;
      kids.push_back(it->second);
    }
    auto match = b.find(n.kind, n.payload, kids);
    if (!match) return false;
    remap.emplace(i, *match);
  }
  return true;
}

}  // namespace proofgraph
