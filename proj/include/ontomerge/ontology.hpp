#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ontomerge {

// A node of an ontology graph. The tag is the semantic sort of the concept;
// two concepts match under a homomorphism only if their tags are identical
// (absent matches absent). The label is documentation and carries no
// mathematical weight.
struct Concept {
    std::string id;
    std::optional<std::string> tag;
    std::optional<std::string> label;

    friend bool operator==(const Concept&, const Concept&) = default;
};

// A directed edge between two concepts, identified independently of its
// endpoints so parallel edges are representable.
struct Relation {
    std::string id;
    std::optional<std::string> tag;
    std::optional<std::string> label;
    std::string src;
    std::string dst;

    friend bool operator==(const Relation&, const Relation&) = default;
};

// A finite labeled directed multigraph. Instances are immutable after
// construction; concepts and relations are kept sorted by id so iteration
// order, serialization and equality are deterministic.
//
// The default-constructed ontology is the empty ontology, which is the
// initial object: there is exactly one homomorphism from it into anything.
class Ontology {
public:
    Ontology() = default;

    // Validates and builds. Collects all violations (duplicate ids within a
    // kind, relation endpoints that name no concept) before throwing
    // ValidationError.
    static Ontology validated(std::vector<Concept> concepts, std::vector<Relation> relations);

    const std::vector<Concept>& concepts() const { return concepts_; }
    const std::vector<Relation>& relations() const { return relations_; }

    bool has_concept(const std::string& id) const { return concept_index_.count(id) != 0; }
    bool has_relation(const std::string& id) const { return relation_index_.count(id) != 0; }

    // Throw UnknownElement when the id is absent.
    const Concept& concept_by_id(const std::string& id) const;
    const Relation& relation_by_id(const std::string& id) const;

    std::size_t concept_count() const { return concepts_.size(); }
    std::size_t relation_count() const { return relations_.size(); }

    // Total number of elements; closure size limits are stated against this.
    std::size_t size() const { return concepts_.size() + relations_.size(); }
    bool empty() const { return concepts_.empty() && relations_.empty(); }

    // Position of an element in the sorted storage, for dense indexing.
    std::size_t concept_position(const std::string& id) const;
    std::size_t relation_position(const std::string& id) const;

    friend bool operator==(const Ontology&, const Ontology&) = default;

private:
    std::vector<Concept> concepts_;
    std::vector<Relation> relations_;
    std::map<std::string, std::size_t> concept_index_;
    std::map<std::string, std::size_t> relation_index_;
};

// Disjoint union with id disambiguation: elements keep their ids where
// possible, colliding ids from the right operand get a numeric suffix.
// This is the coproduct carrier; the categorical operation lives in
// category_ops.hpp and also returns the two injections.
Ontology disjoint_union(const Ontology& left, const Ontology& right,
                        std::map<std::string, std::string>* left_concept_names = nullptr,
                        std::map<std::string, std::string>* left_relation_names = nullptr,
                        std::map<std::string, std::string>* right_concept_names = nullptr,
                        std::map<std::string, std::string>* right_relation_names = nullptr);

}  // namespace ontomerge
