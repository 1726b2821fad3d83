#include "ontomerge/dot_export.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace ontomerge {

namespace {

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string caption(const std::optional<std::string>& label, const std::optional<std::string>& tag,
                    const std::string& id) {
    if (label) return *label;
    if (tag) return *tag;
    return id;
}

}  // namespace

std::string ontology_to_dot(const Ontology& ontology, const std::string& graph_name) {
    std::string out = "digraph \"" + escape(graph_name) + "\" {\n";
    out += "  rankdir=LR;\n  node [shape=box];\n";
    for (const auto& node : ontology.concepts())
        out += "  \"" + escape(node.id) + "\" [label=\"" +
               escape(caption(node.label, node.tag, node.id)) + "\"];\n";
    for (const auto& edge : ontology.relations())
        out += "  \"" + escape(edge.src) + "\" -> \"" + escape(edge.dst) + "\" [label=\"" +
               escape(caption(edge.label, edge.tag, edge.id)) + "\"];\n";
    return out + "}\n";
}

std::string hasse_to_dot(const Poset& poset, const ClosureResult& closure) {
    auto names = member_names(closure);
    std::size_t class_count = poset.classes.size();

    std::vector<std::string> captions(class_count);
    std::vector<std::size_t> class_layer(class_count, std::numeric_limits<std::size_t>::max());
    for (std::size_t c = 0; c < class_count; ++c) {
        for (std::size_t member : poset.classes[c]) {
            const CanonicalKey& key = poset.keys[member];
            if (!captions[c].empty()) captions[c] += ", ";
            captions[c] += names.at(key);
            class_layer[c] = std::min(class_layer[c], closure.layers.at(key));
        }
    }

    std::string out = "digraph \"hasse\" {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t c = 0; c < class_count; ++c)
        out += "  c" + std::to_string(c) + " [label=\"" + escape(captions[c]) + "\"];\n";

    std::map<std::size_t, std::vector<std::size_t>> by_layer;
    for (std::size_t c = 0; c < class_count; ++c) by_layer[class_layer[c]].push_back(c);
    for (const auto& [layer, members] : by_layer) {
        out += "  { rank=same;";
        for (std::size_t c : members) out += " c" + std::to_string(c) + ";";
        out += " }  // layer " + std::to_string(layer) + "\n";
    }

    for (const auto& [lower, upper] : poset.hasse)
        out += "  c" + std::to_string(lower) + " -> c" + std::to_string(upper) + ";\n";
    return out + "}\n";
}

}  // namespace ontomerge
