#pragma once

#include <string>

#include "ontomerge/closure.hpp"
#include "ontomerge/ontology.hpp"
#include "ontomerge/poset.hpp"

namespace ontomerge {

// Renders the ontology as a DOT digraph. Node and edge captions use the
// label when present, else the tag, else the id.
std::string ontology_to_dot(const Ontology& ontology, const std::string& graph_name = "ontology");

// Renders the Hasse diagram of the member order: one node per class
// (captioned with its member names), edges from lower to upper covers, and
// classes grouped into ranks by their smallest member layer.
std::string hasse_to_dot(const Poset& poset, const ClosureResult& closure);

}  // namespace ontomerge
