#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace proofgraph {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

enum class NodeKind : std::uint8_t {
  Sort,
  NatZero,
  NatSucc,
  Var,
  Lambda,
  App,
  PiForm,
  SigmaForm,
  Pair,
  Proj1,
  Proj2,
  IdForm,
  Refl,
  Cong,
  Rec,
  DefRef,
  PropAnd,
  PropImplies,
  PropNot,
  Atom,
};

enum class EdgeClass : std::uint8_t {
  Formation,
  Introduction,
  Elimination,
  Computation,
  Deduction,
};

// Kind-specific data: Var carries a binder-relative index, Atom/DefRef/Sort
// carry a name. Everything else is payload-free.
using Payload = std::variant<std::monostate, std::uint32_t, std::string>;

std::string_view kind_name(NodeKind k);
NodeKind kind_from_name(std::string_view name);
std::string_view class_name(EdgeClass c);
EdgeClass class_from_name(std::string_view name);

// Fixed arity of the construction rule for each kind.
int kind_arity(NodeKind k);

enum class ErrorCode {
  ArityMismatch,
  CycleDetected,
  UnknownInput,
  BudgetZero,
  TypeMismatch,
  UnboundVariable,
  DuplicateName,
  OpenTerm,
  Unreachable,
  Unproven,
  EmptyCorpus,
  GuardExceeded,
  SemanticDrift,
  FuelExhausted,
  ParseError,
  MalformedLog,
  LoadError,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct Node {
  NodeId id = kNoNode;
  NodeKind kind = NodeKind::Sort;
  Payload payload;
  std::vector<NodeId> children;   // construction inputs, ordered
  std::optional<NodeId> type;     // cached typing (empty context only)
  std::optional<EdgeId> construction;  // first edge producing this node
};

struct HyperEdge {
  EdgeId id = 0;
  std::string color;
  EdgeClass cls = EdgeClass::Formation;
  std::vector<NodeId> inputs;
  std::vector<NodeId> outputs;
};

// Append-only acyclic store of hash-consed nodes and ordered hyperedges.
// Value semantics: copying takes an immutable snapshot.
class Hypergraph {
 public:
  Hypergraph() = default;

  // Root nodes (the axiom/S0 layer). No construction edge outputs a root.
  NodeId add_root(NodeKind kind, Payload payload = {});

  // Adds a node together with its construction edge; returns the canonical
  // id when a structurally identical node already exists.
  NodeId add_node(NodeKind kind, Payload payload, std::vector<NodeId> children,
                  std::string_view color, EdgeClass cls);

  // Auxiliary (1,1) edges between existing nodes.
  EdgeId add_computation(NodeId from, NodeId to, std::string_view color);
  EdgeId add_typing(NodeId subject, NodeId type);
  // Extra construction edge into an existing node (an alternative derivation).
  EdgeId add_derivation(std::vector<NodeId> inputs, NodeId output,
                        std::string_view color, EdgeClass cls);

  // Lookup without insertion.
  std::optional<NodeId> find(NodeKind kind, const Payload& payload,
                             const std::vector<NodeId>& children) const;

  const Node& node(NodeId id) const;
  const HyperEdge& edge(EdgeId id) const;
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<NodeId>& roots() const { return roots_; }
  bool is_root(NodeId id) const;
  std::uint64_t revision() const { return revision_; }

  // All construction/derivation edges with the given output node.
  std::vector<EdgeId> constructions_of(NodeId id) const;
  // Computation edges leaving / entering a node.
  std::vector<EdgeId> computations_from(NodeId id) const;
  std::vector<EdgeId> computations_into(NodeId id) const;
  std::optional<NodeId> typing_of(NodeId id) const;

  // Named definitions (DefRef nodes).
  NodeId define(const std::string& name, NodeId body);
  // Registers an existing DefRef node under its name (used by import).
  void adopt_definition(const std::string& name, NodeId ref);
  // Points an existing name at a new body (the old DefRef node remains).
  NodeId rebind_definition(const std::string& name, NodeId body);
  std::optional<NodeId> definition(const std::string& name) const;
  const std::map<std::string, NodeId>& definitions() const {
    return definitions_;
  }
  void tombstone(NodeId id);
  bool tombstoned(NodeId id) const;

  // Minimal construction ancestry of `id` within this graph (ids, topological,
  // `id` last).
  std::vector<NodeId> closure_nodes(NodeId id) const;
  // The same closure re-packed as a standalone graph.
  Hypergraph backward_closure(NodeId id) const;

  // Structural view of a chosen node/edge subset, for report witnesses.
  // Nodes whose producing edge is not their structural construction are
  // carried over as opaque root-like nodes.
  Hypergraph project(const std::vector<NodeId>& nodes,
                     const std::vector<EdgeId>& edges) const;

  // Topological order over construction edges; throws on a cycle.
  std::vector<NodeId> topo_order() const;

  void check_node(NodeId id, const char* ctx = "node") const;

 private:
  struct Key {
    NodeKind kind;
    Payload payload;
    std::vector<NodeId> children;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  EdgeId append_edge(std::string_view color, EdgeClass cls,
                     std::vector<NodeId> inputs, std::vector<NodeId> outputs);

  std::vector<Node> nodes_;
  std::vector<HyperEdge> edges_;
  std::vector<NodeId> roots_;
  std::unordered_map<Key, NodeId, KeyHash> index_;
  std::map<std::string, NodeId> definitions_;
  std::vector<bool> tombstones_;
  std::uint64_t revision_ = 0;
};

// Structural equality of two graphs up to NodeId renaming respecting
// hash-consing (used by the round-trip tests).
bool structurally_equal(const Hypergraph& a, const Hypergraph& b);

}  // namespace proofgraph
