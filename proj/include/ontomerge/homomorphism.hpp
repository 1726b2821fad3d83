#pragma once

#include <map>
#include <string>

#include "ontomerge/ontology.hpp"

namespace ontomerge {

// Structural classification of a homomorphism. In this category epimorphisms
// coincide with the componentwise surjections, so `epic` mirrors `surjective`.
struct HomKind {
    bool injective = false;
    bool surjective = false;
    bool epic = false;
    bool iso = false;
};

// A total structure-preserving map between ontologies: every concept and
// relation of the source is mapped, incidence is preserved
// (map(src e) = src(map e), likewise dst), and tags match exactly on both
// kinds (tagged to identically tagged, untagged to untagged). Labels are
// ignored. Construction validates all of this and throws
// InvalidHomomorphism naming the violated constraint.
class Homomorphism {
public:
    Homomorphism(Ontology source, Ontology target,
                 std::map<std::string, std::string> concept_map,
                 std::map<std::string, std::string> relation_map);

    static Homomorphism identity(const Ontology& o);

    const Ontology& source() const { return source_; }
    const Ontology& target() const { return target_; }
    const std::map<std::string, std::string>& concept_map() const { return concept_map_; }
    const std::map<std::string, std::string>& relation_map() const { return relation_map_; }

    const std::string& concept_image(const std::string& id) const;
    const std::string& relation_image(const std::string& id) const;

    bool is_identity() const;

    friend bool operator==(const Homomorphism&, const Homomorphism&) = default;

private:
    Ontology source_;
    Ontology target_;
    std::map<std::string, std::string> concept_map_;
    std::map<std::string, std::string> relation_map_;
};

// first; then second. Throws DomainMismatch unless first.target equals
// second.source structurally.
Homomorphism compose(const Homomorphism& first, const Homomorphism& second);

HomKind check_hom_kind(const Homomorphism& h);

}  // namespace ontomerge
