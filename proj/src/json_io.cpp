#include "ontomerge/json_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "ontomerge/errors.hpp"

namespace ontomerge {

namespace {

[[noreturn]] void parse_fail(const std::string& source, const std::string& message) {
    throw ParseError(source + ": " + message);
}

Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& error) {
        parse_fail(source, std::string("invalid JSON: ") + error.what());
    }
}

void expect_object(const Json& value, const std::string& source, const std::string& what) {
    if (!value.is_object()) parse_fail(source, what + " must be a JSON object");
}

void reject_unknown_keys(const Json& object, const std::vector<std::string>& allowed,
                         const std::string& source, const std::string& context) {
    for (const auto& [key, value] : object.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            parse_fail(source, "unknown field '" + key + "' in " + context);
    }
}

std::string required_string(const Json& object, const std::string& key, const std::string& source,
                            const std::string& context) {
    if (!object.contains(key)) parse_fail(source, context + " is missing field '" + key + "'");
    if (!object.at(key).is_string())
        parse_fail(source, "field '" + key + "' in " + context + " must be a string");
    return object.at(key).get<std::string>();
}

std::optional<std::string> optional_string(const Json& object, const std::string& key,
                                           const std::string& source, const std::string& context) {
    if (!object.contains(key)) return std::nullopt;
    if (!object.at(key).is_string())
        parse_fail(source, "field '" + key + "' in " + context + " must be a string");
    return object.at(key).get<std::string>();
}

Ontology ontology_from_json(const Json& j, const std::string& source) {
    expect_object(j, source, "the ontology");
    reject_unknown_keys(j, {"concepts", "relations"}, source, "the ontology");
    std::vector<Concept> concepts;
    std::vector<Relation> relations;
    std::set<std::string> concept_ids;
    std::set<std::string> relation_ids;
    if (j.contains("concepts")) {
        if (!j.at("concepts").is_array()) parse_fail(source, "'concepts' must be an array");
        for (const auto& entry : j.at("concepts")) {
            expect_object(entry, source, "each concept");
            reject_unknown_keys(entry, {"id", "tag", "label"}, source, "a concept");
            Concept node;
            node.id = required_string(entry, "id", source, "a concept");
            node.tag = optional_string(entry, "tag", source, "concept '" + node.id + "'");
            node.label = optional_string(entry, "label", source, "concept '" + node.id + "'");
            if (!concept_ids.insert(node.id).second)
                parse_fail(source, "duplicate concept id '" + node.id + "'");
            concepts.push_back(std::move(node));
        }
    }
    if (j.contains("relations")) {
        if (!j.at("relations").is_array()) parse_fail(source, "'relations' must be an array");
        for (const auto& entry : j.at("relations")) {
            expect_object(entry, source, "each relation");
            reject_unknown_keys(entry, {"id", "tag", "label", "src", "dst"}, source, "a relation");
            Relation relation;
            relation.id = required_string(entry, "id", source, "a relation");
            std::string context = "relation '" + relation.id + "'";
            relation.tag = optional_string(entry, "tag", source, context);
            relation.label = optional_string(entry, "label", source, context);
            relation.src = required_string(entry, "src", source, context);
            relation.dst = required_string(entry, "dst", source, context);
            if (!relation_ids.insert(relation.id).second)
                parse_fail(source, "duplicate relation id '" + relation.id + "'");
            relations.push_back(std::move(relation));
        }
    }
    return Ontology::validated(std::move(concepts), std::move(relations));
}

std::map<std::string, std::string> string_map_from_json(const Json& object,
                                                        const std::string& source,
                                                        const std::string& context) {
    std::map<std::string, std::string> out;
    expect_object(object, source, context);
    for (const auto& [key, value] : object.items()) {
        if (!value.is_string())
            parse_fail(source, "entry '" + key + "' in " + context + " must map to a string");
        out.emplace(key, value.get<std::string>());
    }
    return out;
}

std::filesystem::path resolve(const std::filesystem::path& base_dir,
                              const std::filesystem::path& path) {
    return path.is_absolute() ? path : base_dir / path;
}

Homomorphism hom_from_json(const Json& j, const Ontology& from, const Ontology& to,
                           const std::string& source, const std::string& context) {
    expect_object(j, source, context);
    reject_unknown_keys(j, {"concepts", "relations"}, source, context);
    std::map<std::string, std::string> concept_map;
    std::map<std::string, std::string> relation_map;
    if (j.contains("concepts"))
        concept_map = string_map_from_json(j.at("concepts"), source, context + ".concepts");
    if (j.contains("relations"))
        relation_map = string_map_from_json(j.at("relations"), source, context + ".relations");
    return Homomorphism(from, to, std::move(concept_map), std::move(relation_map));
}

ClosureLimits limits_from_json(const Json& j, ClosureLimits base, const std::string& source) {
    expect_object(j, source, "'limits'");
    reject_unknown_keys(j, {"max_members", "max_element_size", "max_rounds"}, source, "'limits'");
    auto read = [&](const char* key, std::size_t& slot) {
        if (!j.contains(key)) return;
        const Json& value = j.at(key);
        if (!value.is_number_unsigned() || value.get<std::size_t>() == 0)
            parse_fail(source, std::string("'") + key + "' must be a positive integer");
        slot = value.get<std::size_t>();
    };
    read("max_members", base.max_members);
    read("max_element_size", base.max_element_size);
    read("max_rounds", base.max_rounds);
    return base;
}

}  // namespace

Ontology parse_ontology_text(const std::string& text, const std::string& source_name) {
    return ontology_from_json(parse_json(text, source_name), source_name);
}

Ontology parse_ontology_file(const std::filesystem::path& path) {
    return parse_ontology_text(read_text_file(path), path.string());
}

Json ontology_to_json(const Ontology& ontology) {
    Json j = Json::object();
    j["concepts"] = Json::array();
    for (const auto& node : ontology.concepts()) {
        Json entry = Json::object();
        entry["id"] = node.id;
        if (node.tag) entry["tag"] = *node.tag;
        if (node.label) entry["label"] = *node.label;
        j["concepts"].push_back(std::move(entry));
    }
    j["relations"] = Json::array();
    for (const auto& relation : ontology.relations()) {
        Json entry = Json::object();
        entry["id"] = relation.id;
        if (relation.tag) entry["tag"] = *relation.tag;
        if (relation.label) entry["label"] = *relation.label;
        entry["src"] = relation.src;
        entry["dst"] = relation.dst;
        j["relations"].push_back(std::move(entry));
    }
    return j;
}

std::string serialize_ontology(const Ontology& ontology) {
    return ontology_to_json(ontology).dump(2) + "\n";
}

void write_ontology_file(const std::filesystem::path& path, const Ontology& ontology) {
    write_text_file(path, serialize_ontology(ontology));
}

Json homomorphism_to_json(const Homomorphism& hom) {
    Json j = Json::object();
    j["concepts"] = Json::object();
    for (const auto& [from, to] : hom.concept_map()) j["concepts"][from] = to;
    j["relations"] = Json::object();
    for (const auto& [from, to] : hom.relation_map()) j["relations"][from] = to;
    return j;
}

VAlignmentPair parse_alignment_text(const std::string& text, const OntologyResolver& resolver,
                                    const std::filesystem::path& base_dir,
                                    const std::string& source_name) {
    Json j = parse_json(text, source_name);
    expect_object(j, source_name, "the alignment");
    reject_unknown_keys(j, {"base", "left", "right", "r1", "r2"}, source_name, "the alignment");
    if (!j.contains("base")) parse_fail(source_name, "the alignment is missing field 'base'");
    Ontology base;
    if (j.at("base").is_string())
        base = parse_ontology_file(resolve(base_dir, j.at("base").get<std::string>()));
    else
        base = ontology_from_json(j.at("base"), source_name + " (inline base)");
    std::string left_name = required_string(j, "left", source_name, "the alignment");
    std::string right_name = required_string(j, "right", source_name, "the alignment");
    Ontology left = resolver(left_name);
    Ontology right = resolver(right_name);
    if (!j.contains("r1")) parse_fail(source_name, "the alignment is missing field 'r1'");
    if (!j.contains("r2")) parse_fail(source_name, "the alignment is missing field 'r2'");
    Homomorphism r1 = hom_from_json(j.at("r1"), base, left, source_name, "'r1'");
    Homomorphism r2 = hom_from_json(j.at("r2"), base, right, source_name, "'r2'");
    return VAlignmentPair(std::move(r1), std::move(r2));
}

VAlignmentPair parse_alignment_file(const std::filesystem::path& path,
                                    const OntologyResolver& resolver) {
    return parse_alignment_text(read_text_file(path), resolver, path.parent_path(), path.string());
}

OntologyResolver path_resolver(const std::filesystem::path& base_dir) {
    return [base_dir](const std::string& name) {
        return parse_ontology_file(resolve(base_dir, name));
    };
}

Manifest parse_manifest_file(const std::filesystem::path& path) {
    std::string source = path.string();
    Json j = parse_json(read_text_file(path), source);
    expect_object(j, source, "the manifest");
    reject_unknown_keys(j, {"ontologies", "alignments", "limits", "output_dir"}, source,
                        "the manifest");
    std::filesystem::path base_dir = path.parent_path();
    Manifest manifest;
    if (j.contains("ontologies")) {
        expect_object(j.at("ontologies"), source, "'ontologies'");
        for (const auto& [name, value] : j.at("ontologies").items()) {
            if (!value.is_string())
                parse_fail(source, "ontology '" + name + "' must map to a file path");
            manifest.ontologies.emplace(name, resolve(base_dir, value.get<std::string>()));
        }
    }
    if (j.contains("alignments")) {
        if (!j.at("alignments").is_array()) parse_fail(source, "'alignments' must be an array");
        for (const auto& value : j.at("alignments")) {
            if (!value.is_string()) parse_fail(source, "alignment entries must be file paths");
            manifest.alignments.push_back(resolve(base_dir, value.get<std::string>()));
        }
    }
    manifest.limits = limits_from_env(ClosureLimits{});
    if (j.contains("limits"))
        manifest.limits = limits_from_json(j.at("limits"), manifest.limits, source);
    if (j.contains("output_dir"))
        manifest.output_dir =
            resolve(base_dir, required_string(j, "output_dir", source, "the manifest"));
    return manifest;
}

ClosureLimits limits_from_env(ClosureLimits base) {
    const char* raw = std::getenv("ONTOMERGE_LIMITS");
    if (raw == nullptr || *raw == '\0') return base;
    return parse_limits_text(raw, base, "ONTOMERGE_LIMITS");
}

ClosureLimits parse_limits_text(const std::string& text, ClosureLimits base,
                                const std::string& source_name) {
    return limits_from_json(parse_json(text, source_name), base, source_name);
}

Repository load_repository(const Manifest& manifest) {
    Repository repository;
    std::map<std::string, Ontology> by_name;
    for (const auto& [name, path] : manifest.ontologies)
        by_name.emplace(name, parse_ontology_file(path));
    for (const auto& [name, ontology] : by_name) repository.ontologies.push_back(ontology);
    OntologyResolver resolver = [&by_name](const std::string& name) {
        auto it = by_name.find(name);
        if (it == by_name.end())
            throw ParseError("alignment references undeclared ontology '" + name + "'");
        return it->second;
    };
    for (const auto& path : manifest.alignments)
        repository.alignments.push_back(parse_alignment_file(path, resolver));
    return repository;
}

Json merge_output_json(const PushoutResult& result) {
    Json j = Json::object();
    j["merged"] = ontology_to_json(result.merged);
    j["inject_left"] = homomorphism_to_json(result.inject_left);
    j["inject_right"] = homomorphism_to_json(result.inject_right);
    return j;
}

Json closure_to_json(const ClosureResult& closure) {
    auto names = member_names(closure);
    Json j = Json::object();
    j["complete"] = closure.complete;
    j["rounds"] = closure.rounds;
    j["members"] = Json::object();
    for (const auto& [key, member] : closure.members) {
        Json entry = Json::object();
        entry["key"] = key.digest();
        entry["layer"] = closure.layers.at(key);
        entry["repository"] = closure.repository_keys.count(key) != 0;
        entry["concepts"] = member.concept_count();
        entry["relations"] = member.relation_count();
        j["members"][names.at(key)] = std::move(entry);
    }
    j["aligned_pairs"] = Json::array();
    for (const auto& [pair, corr] : closure.alignment_pool) {
        if (!(pair.first < pair.second)) continue;
        j["aligned_pairs"].push_back(Json::array({names.at(pair.first), names.at(pair.second)}));
    }
    j["provenance"] = Json::array();
    for (const auto& edge : closure.provenance) {
        Json entry = Json::object();
        entry["left"] = names.at(edge.left);
        entry["right"] = names.at(edge.right);
        entry["result"] = names.at(edge.result);
        j["provenance"].push_back(std::move(entry));
    }
    return j;
}

Json merge_tree_to_json(const MergeTree& tree, const std::map<CanonicalKey, std::string>& names) {
    Json j = Json::object();
    j["member"] = names.at(tree.key);
    if (!tree.children.empty()) {
        j["merged_from"] = Json::array();
        for (const auto& child : tree.children)
            j["merged_from"].push_back(merge_tree_to_json(child, names));
    }
    return j;
}

Json property_report_to_json(const MergingSystem& system, const PropertyReport& report) {
    Json j = Json::object();
    j["property"] = to_string(report.property);
    j["holds"] = report.holds;
    j["cases_checked"] = report.cases_checked;
    if (report.counterexample) {
        Json witness = Json::object();
        witness["elements"] = Json::array();
        for (std::size_t index : report.counterexample->elements)
            witness["elements"].push_back(system.element_name(index));
        witness["detail"] = report.counterexample->detail;
        j["counterexample"] = std::move(witness);
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

Json poset_to_json(const Poset& poset, const ClosureResult& closure) {
    auto names = member_names(closure);
    auto class_names = [&](std::size_t c) {
        Json arr = Json::array();
        for (std::size_t member : poset.classes[c]) arr.push_back(names.at(poset.keys[member]));
        return arr;
    };
    Json j = Json::object();
    j["classes"] = Json::array();
    for (std::size_t c = 0; c < poset.classes.size(); ++c) j["classes"].push_back(class_names(c));
    j["leq"] = Json::array();
    for (std::size_t a = 0; a < poset.classes.size(); ++a)
        for (std::size_t b = 0; b < poset.classes.size(); ++b)
            if (a != b && poset.class_leq[a][b]) j["leq"].push_back(Json::array({a, b}));
    j["hasse"] = Json::array();
    for (const auto& [lower, upper] : poset.hasse) j["hasse"].push_back(Json::array({lower, upper}));
    auto name_list = [&](const std::vector<CanonicalKey>& keys) {
        Json arr = Json::array();
        for (const auto& key : keys) arr.push_back(names.at(key));
        return arr;
    };
    j["maximal"] = name_list(poset_maximal(poset));
    j["minimal"] = name_list(poset_minimal(poset));
    return j;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path.string());
    out << text;
    if (!out) throw Error("failed writing file: " + path.string());
}

}  // namespace ontomerge
