#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ontomerge/alignment.hpp"
#include "ontomerge/category_ops.hpp"
#include "ontomerge/closure.hpp"
#include "ontomerge/ontology.hpp"
#include "ontomerge/poset.hpp"
#include "ontomerge/properties.hpp"

namespace ontomerge {

using Json = nlohmann::ordered_json;

// Ontology files: {"concepts": [{"id", "tag"?, "label"?}...],
//                  "relations": [{"id", "tag"?, "label"?, "src", "dst"}...]}.
// Serialization is canonical: elements sorted by id, fields in declaration
// order, two-space indent, trailing newline — so parse then serialize is
// byte-identical for canonically ordered files.
Ontology parse_ontology_text(const std::string& text, const std::string& source_name = "<input>");
Ontology parse_ontology_file(const std::filesystem::path& path);
Json ontology_to_json(const Ontology& ontology);
std::string serialize_ontology(const Ontology& ontology);
void write_ontology_file(const std::filesystem::path& path, const Ontology& ontology);

Json homomorphism_to_json(const Homomorphism& hom);

// Alignment files: {"base": <ontology object or path>, "left": name,
// "right": name, "r1": {"concepts": {baseId: leftId}, "relations": {...}},
// "r2": {...}}. The resolver turns the left/right names into ontologies.
using OntologyResolver = std::function<Ontology(const std::string&)>;

VAlignmentPair parse_alignment_text(const std::string& text, const OntologyResolver& resolver,
                                    const std::filesystem::path& base_dir,
                                    const std::string& source_name = "<input>");
VAlignmentPair parse_alignment_file(const std::filesystem::path& path,
                                    const OntologyResolver& resolver);

// Resolver that reads names as ontology file paths relative to base_dir.
OntologyResolver path_resolver(const std::filesystem::path& base_dir);

// Manifest: {"ontologies": {name: path}, "alignments": [path...],
// "limits": {...}?, "output_dir": path?}. Relative paths are resolved
// against the manifest's directory. Limits are layered: built-in defaults,
// then the ONTOMERGE_LIMITS environment variable, then the manifest.
struct Manifest {
    std::map<std::string, std::filesystem::path> ontologies;
    std::vector<std::filesystem::path> alignments;
    ClosureLimits limits;
    std::optional<std::filesystem::path> output_dir;
};

Manifest parse_manifest_file(const std::filesystem::path& path);
ClosureLimits limits_from_env(ClosureLimits base);
ClosureLimits parse_limits_text(const std::string& text, ClosureLimits base,
                                const std::string& source_name);

// Parses every referenced file. Alignment operand names must be declared
// ontology names. Repository ontologies are ordered by declared name.
Repository load_repository(const Manifest& manifest);

Json merge_output_json(const PushoutResult& result);
Json closure_to_json(const ClosureResult& closure);
Json merge_tree_to_json(const MergeTree& tree, const std::map<CanonicalKey, std::string>& names);
Json property_report_to_json(const MergingSystem& system, const PropertyReport& report);
Json poset_to_json(const Poset& poset, const ClosureResult& closure);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ontomerge
