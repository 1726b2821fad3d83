#include "ontomerge/ontology.hpp"

#include <algorithm>

#include "ontomerge/errors.hpp"

namespace ontomerge {

Ontology Ontology::validated(std::vector<Concept> concepts, std::vector<Relation> relations) {
    std::vector<std::string> violations;

    std::sort(concepts.begin(), concepts.end(),
              [](const Concept& a, const Concept& b) { return a.id < b.id; });
    std::sort(relations.begin(), relations.end(),
              [](const Relation& a, const Relation& b) { return a.id < b.id; });

    Ontology out;
    for (const auto& c : concepts) {
        if (c.id.empty()) violations.push_back("concept with empty id");
        if (!out.concept_index_.emplace(c.id, out.concepts_.size()).second)
            violations.push_back("duplicate concept id '" + c.id + "'");
        else
            out.concepts_.push_back(c);
    }
    for (const auto& r : relations) {
        if (r.id.empty()) violations.push_back("relation with empty id");
        if (!out.relation_index_.emplace(r.id, out.relations_.size()).second) {
            violations.push_back("duplicate relation id '" + r.id + "'");
            continue;
        }
        out.relations_.push_back(r);
        if (out.concept_index_.count(r.src) == 0)
            violations.push_back("relation '" + r.id + "' has unknown src '" + r.src + "'");
        if (out.concept_index_.count(r.dst) == 0)
            violations.push_back("relation '" + r.id + "' has unknown dst '" + r.dst + "'");
    }

    if (!violations.empty()) throw ValidationError(std::move(violations));
    return out;
}

const Concept& Ontology::concept_by_id(const std::string& id) const {
    auto it = concept_index_.find(id);
    if (it == concept_index_.end()) throw UnknownElement("unknown concept id '" + id + "'");
    return concepts_[it->second];
}

const Relation& Ontology::relation_by_id(const std::string& id) const {
    auto it = relation_index_.find(id);
    if (it == relation_index_.end()) throw UnknownElement("unknown relation id '" + id + "'");
    return relations_[it->second];
}

std::size_t Ontology::concept_position(const std::string& id) const {
    auto it = concept_index_.find(id);
    if (it == concept_index_.end()) throw UnknownElement("unknown concept id '" + id + "'");
    return it->second;
}

std::size_t Ontology::relation_position(const std::string& id) const {
    auto it = relation_index_.find(id);
    if (it == relation_index_.end()) throw UnknownElement("unknown relation id '" + id + "'");
    return it->second;
}

namespace {

// Picks a fresh id for `wanted` given ids already taken.
std::string disambiguate(const std::string& wanted, const std::map<std::string, bool>& taken) {
    if (taken.count(wanted) == 0) return wanted;
    for (int n = 2;; ++n) {
        std::string candidate = wanted + "~" + std::to_string(n);
        if (taken.count(candidate) == 0) return candidate;
    }
}

}  // namespace

Ontology disjoint_union(const Ontology& left, const Ontology& right,
                        std::map<std::string, std::string>* left_concept_names,
                        std::map<std::string, std::string>* left_relation_names,
                        std::map<std::string, std::string>* right_concept_names,
                        std::map<std::string, std::string>* right_relation_names) {
    std::vector<Concept> concepts;
    std::vector<Relation> relations;
    std::map<std::string, bool> taken_concepts, taken_relations;
    std::map<std::string, std::string> lc, lr, rc, rr;

    for (const auto& c : left.concepts()) {
        lc[c.id] = c.id;
        taken_concepts[c.id] = true;
        concepts.push_back(c);
    }
    for (const auto& c : right.concepts()) {
        Concept copy = c;
        copy.id = disambiguate(c.id, taken_concepts);
        rc[c.id] = copy.id;
        taken_concepts[copy.id] = true;
        concepts.push_back(copy);
    }
    for (const auto& r : left.relations()) {
        lr[r.id] = r.id;
        taken_relations[r.id] = true;
        relations.push_back(r);
    }
    for (const auto& r : right.relations()) {
        Relation copy = r;
        copy.id = disambiguate(r.id, taken_relations);
        copy.src = rc.at(r.src);
        copy.dst = rc.at(r.dst);
        rr[r.id] = copy.id;
        taken_relations[copy.id] = true;
        relations.push_back(copy);
    }

    if (left_concept_names) *left_concept_names = std::move(lc);
    if (left_relation_names) *left_relation_names = std::move(lr);
    if (right_concept_names) *right_concept_names = std::move(rc);
    if (right_relation_names) *right_relation_names = std::move(rr);
    return Ontology::validated(std::move(concepts), std::move(relations));
}

}  // namespace ontomerge
