#pragma once

#include <set>
#include <string>
#include <utility>

#include "ontomerge/homomorphism.hpp"

namespace ontomerge {

// The element pairs a V-alignment identifies: images (r1(b), r2(b)) of every
// base element. This is what actually determines the pushout; two pairs with
// the same correspondence merge identically.
struct Correspondence {
    std::set<std::pair<std::string, std::string>> concepts;
    std::set<std::pair<std::string, std::string>> relations;

    std::size_t size() const { return concepts.size() + relations.size(); }
    bool empty() const { return concepts.empty() && relations.empty(); }

    Correspondence flipped() const;
    bool subset_of(const Correspondence& other) const;
    // Unions the other correspondence into this one; true when it grew.
    bool merge_in(const Correspondence& other);

    friend auto operator<=>(const Correspondence&, const Correspondence&) = default;
};

// A span B -> O1, B -> O2 recording how a shared base embeds into two
// ontologies. Both legs must start from the same base.
class VAlignmentPair {
public:
    VAlignmentPair(Homomorphism left, Homomorphism right);

    const Ontology& base() const { return left_.source(); }
    const Ontology& left_ontology() const { return left_.target(); }
    const Ontology& right_ontology() const { return right_.target(); }
    const Homomorphism& left() const { return left_; }
    const Homomorphism& right() const { return right_; }

    VAlignmentPair flipped() const { return VAlignmentPair(right_, left_); }

    static VAlignmentPair reflexive(const Ontology& o);

    Correspondence correspondence() const;

    friend bool operator==(const VAlignmentPair&, const VAlignmentPair&) = default;

private:
    Homomorphism left_;
    Homomorphism right_;
};

// Builds the span a correspondence induces: the base has one concept per
// identified concept pair and one relation per identified relation pair.
// Requires every relation pair's endpoints to appear among the concept pairs
// and the two sides of every pair to carry the same tag; throws
// InvalidHomomorphism otherwise.
VAlignmentPair pair_from_correspondence(const Ontology& left, const Ontology& right,
                                        const Correspondence& corr);

// A morphism of alignment pairs: maps of the base and the two sides such
// that both squares commute (left_map after source.left equals
// destination.left after base_map, and likewise on the right).
class AlignmentPairHom {
public:
    AlignmentPairHom(VAlignmentPair source, VAlignmentPair destination, Homomorphism base_map,
                     Homomorphism left_map, Homomorphism right_map);

    const VAlignmentPair& source_pair() const { return source_; }
    const VAlignmentPair& destination_pair() const { return destination_; }
    const Homomorphism& base_map() const { return base_map_; }
    const Homomorphism& left_map() const { return left_map_; }
    const Homomorphism& right_map() const { return right_map_; }

private:
    VAlignmentPair source_;
    VAlignmentPair destination_;
    Homomorphism base_map_;
    Homomorphism left_map_;
    Homomorphism right_map_;
};

}  // namespace ontomerge
