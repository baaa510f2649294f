#include "proofgraph/serialize.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace proofgraph {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json payload_json(const Payload& p) {
  if (const auto* n = std::get_if<std::uint32_t>(&p)) return *n;
  if (const auto* s = std::get_if<std::string>(&p)) return *s;
  return nullptr;
}

Payload payload_from(const ordered_json& j) {
  if (j.is_null()) return {};
  if (j.is_number_unsigned()) return j.get<std::uint32_t>();
  if (j.is_string()) return j.get<std::string>();
  throw Error(ErrorCode::LoadError, "bad payload value");
}

}  // namespace

std::string to_json(const Hypergraph& g) {
  ordered_json out;
  out["roots"] = ordered_json::array();
  for (NodeId r : g.roots()) out["roots"].push_back(r);
  out["nodes"] = ordered_json::array();
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const Node& n = g.node(i);
    ordered_json jn;
    jn["id"] = n.id;
    jn["kind"] = std::string(kind_name(n.kind));
    jn["payload"] = payload_json(n.payload);
    jn["type"] = n.type ? ordered_json(*n.type) : ordered_json(nullptr);
    out["nodes"].push_back(std::move(jn));
  }
  out["edges"] = ordered_json::array();
  for (EdgeId i = 0; i < g.edge_count(); ++i) {
    const HyperEdge& e = g.edge(i);
    ordered_json je;
    je["id"] = e.id;
    je["color"] = e.color;
    je["class"] = std::string(class_name(e.cls));
    je["inputs"] = e.inputs;
    je["outputs"] = e.outputs;
    out["edges"].push_back(std::move(je));
  }
  out["definitions"] = ordered_json::object();
  for (const auto& [name, ref] : g.definitions()) out["definitions"][name] = ref;
  return out.dump(2) + "\n";
}

Hypergraph from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::LoadError, std::string("bad graph json: ") + e.what());
  }
  if (!j.contains("nodes") || !j.contains("edges") || !j.contains("roots"))
    throw Error(ErrorCode::LoadError, "graph json missing required keys");

  struct RawEdge {
    EdgeId id;
    std::string color;
    EdgeClass cls;
    std::vector<NodeId> inputs, outputs;
  };
  std::vector<RawEdge> edges;
  for (const auto& je : j["edges"]) {
    RawEdge e;
    e.id = je.at("id").get<EdgeId>();
    e.color = je.at("color").get<std::string>();
    e.cls = class_from_name(je.at("class").get<std::string>());
    e.inputs = je.at("inputs").get<std::vector<NodeId>>();
    e.outputs = je.at("outputs").get<std::vector<NodeId>>();
    edges.push_back(std::move(e));
  }

  std::vector<NodeId> root_ids = j["roots"].get<std::vector<NodeId>>();
  auto is_old_root = [&](NodeId id) {
    return std::find(root_ids.begin(), root_ids.end(), id) != root_ids.end();
  };

  // First construction-class edge per output node (edge order is creation
  // order, so this is the original constructor).
  std::unordered_map<NodeId, const RawEdge*> ctor;
  for (const auto& e : edges) {
    if (e.cls == EdgeClass::Computation || e.color == "typing") continue;
    for (NodeId out : e.outputs)
      if (!ctor.contains(out)) ctor.emplace(out, &e);
  }

  Hypergraph g;
  std::unordered_map<NodeId, NodeId> remap;
  for (const auto& jn : j["nodes"]) {
    NodeId old_id = jn.at("id").get<NodeId>();
    NodeKind kind = kind_from_name(jn.at("kind").get<std::string>());
    Payload payload = payload_from(jn.at("payload"));
    if (is_old_root(old_id)) {
      remap[old_id] = g.add_root(kind, payload);
      continue;
    }
    auto it = ctor.find(old_id);
    if (it == ctor.end())
      throw Error(ErrorCode::LoadError,
                  "node " + std::to_string(old_id) + " has no construction");
    std::vector<NodeId> kids;
    for (NodeId c : it->second->inputs) {
      auto r = remap.find(c);
      if (r == remap.end())
        throw Error(ErrorCode::LoadError, "nodes are not topologically sorted");
      kids.push_back(r->second);
    }
    remap[old_id] =
        g.add_node(kind, payload, std::move(kids), it->second->color,
                   it->second->cls);
  }

  for (const auto& e : edges) {
    if (e.color == "typing") {
      g.add_typing(remap.at(e.inputs.at(0)), remap.at(e.outputs.at(0)));
    } else if (e.cls == EdgeClass::Computation) {
      g.add_computation(remap.at(e.inputs.at(0)), remap.at(e.outputs.at(0)),
                        e.color);
    } else if (ctor.at(e.outputs.at(0)) != &e) {
      std::vector<NodeId> in;
      for (NodeId c : e.inputs) in.push_back(remap.at(c));
      g.add_derivation(std::move(in), remap.at(e.outputs.at(0)), e.color,
                       e.cls);
    }
  }

  if (j.contains("definitions"))
    for (const auto& [name, ref] : j["definitions"].items())
      g.adopt_definition(name, remap.at(ref.get<NodeId>()));
  return g;
}

std::string to_dot(const Hypergraph& g) {
  std::ostringstream out;
  out << "digraph proofgraph {\n  rankdir=BT;\n"
      << "  node [shape=box, fontname=\"monospace\"];\n";
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const Node& n = g.node(i);
    std::string label = std::string(kind_name(n.kind));
    if (const auto* v = std::get_if<std::uint32_t>(&n.payload))
      label += " " + std::to_string(*v);
    else if (const auto* s = std::get_if<std::string>(&n.payload))
      label += " " + *s;
    out << "  n" << i << " [label=\"" << i << ": " << label << "\""
        << (g.is_root(i) ? ", style=bold" : "")
        << (g.tombstoned(i) ? ", style=dashed" : "") << "];\n";
  }
  for (EdgeId i = 0; i < g.edge_count(); ++i) {
    const HyperEdge& e = g.edge(i);
    out << "  e" << i << " [shape=circle, width=0.12, label=\"\", xlabel=\""
        << e.color << "\"];\n";
    for (std::size_t k = 0; k < e.inputs.size(); ++k)
      out << "  n" << e.inputs[k] << " -> e" << i << " [label=\"" << k
          << "\"];\n";
    for (NodeId o : e.outputs) out << "  e" << i << " -> n" << o << ";\n";
  }
  out << "}\n";
  return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::LoadError, "cannot open " + tmp);
    f << content;
    if (!f.good()) throw Error(ErrorCode::LoadError, "write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error(ErrorCode::LoadError, "rename failed: " + path);
}

void save_json(const Hypergraph& g, const std::string& path) {
  write_file_atomic(path, to_json(g));
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::LoadError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

Hypergraph load_json(const std::string& path) {
  return from_json(read_file(path));
}

std::string corpus_to_json(const Corpus& c) {
  ordered_json out;
  out["graph"] = ordered_json::parse(to_json(c.graph));
  out["proven"] = ordered_json::array();
  for (const auto& [prop, proof] : c.proven)
    out["proven"].push_back(ordered_json::array({prop, proof}));
  return out.dump(2) + "\n";
}

Corpus corpus_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::LoadError,
                std::string("bad corpus json: ") + e.what());
  }
  if (!j.contains("graph") || !j.contains("proven") ||
      !j["proven"].is_array())
    throw Error(ErrorCode::LoadError, "corpus json missing required keys");
  Corpus c;
  c.graph = from_json(j["graph"].dump());
  for (const auto& pair : j["proven"]) {
    if (!pair.is_array() || pair.size() != 2)
      throw Error(ErrorCode::LoadError, "bad proven pair");
    NodeId prop = pair[0].get<NodeId>();
    NodeId proof = pair[1].get<NodeId>();
    c.graph.check_node(prop, "proven proposition");
    c.graph.check_node(proof, "proven proof");
    c.proven.push_back({prop, proof});
  }
  return c;
}

void save_corpus(const Corpus& c, const std::string& path) {
  write_file_atomic(path, corpus_to_json(c));
}

Corpus load_corpus(const std::string& path) {
  return corpus_from_json(read_file(path));
}

}  // namespace proofgraph
