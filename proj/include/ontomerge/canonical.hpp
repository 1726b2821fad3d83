#pragma once

#include <compare>
#include <map>
#include <string>

#include "ontomerge/homomorphism.hpp"
#include "ontomerge/ontology.hpp"

namespace ontomerge {

// Canonical key of an ontology up to tag-preserving isomorphism: two
// ontologies have equal keys exactly when a bijective homomorphism exists
// between them. Labels and element ids do not influence the key.
struct CanonicalKey {
    std::string bytes;

    auto operator<=>(const CanonicalKey&) const = default;

    // Stable short digest for display purposes.
    std::string digest() const;
};

// Canonical key plus the labeling that produced it. Concepts mapped to equal
// indices across two ontologies with equal keys correspond under some
// isomorphism; likewise relations.
struct CanonicalForm {
    CanonicalKey key;
    std::map<std::string, std::size_t> concept_index;
    std::map<std::string, std::size_t> relation_index;
};

// Color refinement on concepts (initial color: tag plus in/out degree per
// relation tag), with backtracking over the members of the first ambiguous
// color class when refinement stalls. The emitted key is the minimum over
// all completions, which makes it labeling independent.
CanonicalForm canonical_form(const Ontology& o);

CanonicalKey canonical_key(const Ontology& o);

bool is_isomorphic(const Ontology& a, const Ontology& b);

// Isomorphism a -> b constructed from the canonical labelings. Throws
// DomainMismatch when the keys differ.
Homomorphism canonical_isomorphism(const Ontology& a, const Ontology& b);

}  // namespace ontomerge
