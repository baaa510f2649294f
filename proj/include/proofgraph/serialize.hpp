#pragma once

#include <iosfwd>
#include <string>

#include "proofgraph/corpus.hpp"
#include "proofgraph/hypergraph.hpp"

namespace proofgraph {

// JSON graph schema:
//   {"roots":[...],
//    "nodes":[{"id","kind","payload","type"}...],
//    "edges":[{"id","color","class","inputs","outputs"}...],
//    "definitions":{name: defref id}}
// Node children are recoverable from the construction edges, so they are not
// stored twice. Import rebuilds through the normal API; ids are reassigned
// but the result is structurally identical.
std::string to_json(const Hypergraph& g);
Hypergraph from_json(const std::string& text);

// Graphviz rendering: box per node, small circle per hyperedge with ordered
// input/output arrows.
std::string to_dot(const Hypergraph& g);

void save_json(const Hypergraph& g, const std::string& path);
Hypergraph load_json(const std::string& path);

// Corpus schema: {"graph": <graph schema>, "proven": [[prop, proof], ...]}.
// The event log is not embedded; it travels in its own JSON-lines file.
// Node ids are stable across a round trip (import rebuilds nodes in listed
// order), so the proven pairs keep their meaning.
std::string corpus_to_json(const Corpus& c);
Corpus corpus_from_json(const std::string& text);
void save_corpus(const Corpus& c, const std::string& path);
Corpus load_corpus(const std::string& path);

// Writes to `path` atomically (tmp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace proofgraph
