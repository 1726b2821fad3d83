#include "ontomerge/alignment.hpp"

#include <algorithm>

#include "ontomerge/errors.hpp"

namespace ontomerge {

Correspondence Correspondence::flipped() const {
    Correspondence out;
    for (const auto& [a, b] : concepts) out.concepts.emplace(b, a);
    for (const auto& [a, b] : relations) out.relations.emplace(b, a);
    return out;
}

bool Correspondence::subset_of(const Correspondence& other) const {
    return std::includes(other.concepts.begin(), other.concepts.end(), concepts.begin(),
                         concepts.end()) &&
           std::includes(other.relations.begin(), other.relations.end(), relations.begin(),
                         relations.end());
}

bool Correspondence::merge_in(const Correspondence& other) {
    std::size_t before = size();
    concepts.insert(other.concepts.begin(), other.concepts.end());
    relations.insert(other.relations.begin(), other.relations.end());
    return size() != before;
}

VAlignmentPair::VAlignmentPair(Homomorphism left, Homomorphism right)
    : left_(std::move(left)), right_(std::move(right)) {
    if (!(left_.source() == right_.source()))
        throw DomainMismatch("alignment pair: the two legs start from different bases");
}

VAlignmentPair VAlignmentPair::reflexive(const Ontology& o) {
    return VAlignmentPair(Homomorphism::identity(o), Homomorphism::identity(o));
}

Correspondence VAlignmentPair::correspondence() const {
    Correspondence corr;
    for (const auto& c : base().concepts())
        corr.concepts.emplace(left_.concept_image(c.id), right_.concept_image(c.id));
    for (const auto& r : base().relations())
        corr.relations.emplace(left_.relation_image(r.id), right_.relation_image(r.id));
    return corr;
}

VAlignmentPair pair_from_correspondence(const Ontology& left, const Ontology& right,
                                        const Correspondence& corr) {
    std::vector<Concept> base_concepts;
    std::vector<Relation> base_relations;
    std::map<std::string, std::string> left_cm, right_cm, left_rm, right_rm;
    std::map<std::pair<std::string, std::string>, std::string> concept_name;

    // Positional base ids keep the construction deterministic and free of
    // collisions whatever the operand ids look like.
    std::size_t next = 0;
    for (const auto& [a, b] : corr.concepts) {
        const Concept& ca = left.concept_by_id(a);
        const Concept& cb = right.concept_by_id(b);
        if (ca.tag != cb.tag)
            throw InvalidHomomorphism("correspondence pairs concepts with different tags: '" + a +
                                      "' / '" + b + "'");
        std::string id = "b" + std::to_string(next++);
        concept_name[{a, b}] = id;
        base_concepts.push_back(Concept{id, ca.tag, std::nullopt});
        left_cm[id] = a;
        right_cm[id] = b;
    }
    next = 0;
    for (const auto& [a, b] : corr.relations) {
        const Relation& ra = left.relation_by_id(a);
        const Relation& rb = right.relation_by_id(b);
        if (ra.tag != rb.tag)
            throw InvalidHomomorphism("correspondence pairs relations with different tags: '" + a +
                                      "' / '" + b + "'");
        auto src = concept_name.find({ra.src, rb.src});
        auto dst = concept_name.find({ra.dst, rb.dst});
        if (src == concept_name.end() || dst == concept_name.end())
            throw InvalidHomomorphism("correspondence relation pair ('" + a + "','" + b +
                                      "') has endpoints outside the concept pairs");
        std::string id = "e" + std::to_string(next++);
        base_relations.push_back(Relation{id, ra.tag, std::nullopt, src->second, dst->second});
        left_rm[id] = a;
        right_rm[id] = b;
    }

    Ontology base = Ontology::validated(std::move(base_concepts), std::move(base_relations));
    return VAlignmentPair(Homomorphism(base, left, std::move(left_cm), std::move(left_rm)),
                          Homomorphism(base, right, std::move(right_cm), std::move(right_rm)));
}

AlignmentPairHom::AlignmentPairHom(VAlignmentPair source, VAlignmentPair destination,
                                   Homomorphism base_map, Homomorphism left_map,
                                   Homomorphism right_map)
    : source_(std::move(source)),
      destination_(std::move(destination)),
      base_map_(std::move(base_map)),
      left_map_(std::move(left_map)),
      right_map_(std::move(right_map)) {
    if (!(base_map_.source() == source_.base()) ||
        !(base_map_.target() == destination_.base()))
        throw DomainMismatch("alignment pair hom: base map endpoints disagree with the pairs");
    if (!(left_map_.source() == source_.left_ontology()) ||
        !(left_map_.target() == destination_.left_ontology()))
        throw DomainMismatch("alignment pair hom: left map endpoints disagree with the pairs");
    if (!(right_map_.source() == source_.right_ontology()) ||
        !(right_map_.target() == destination_.right_ontology()))
        throw DomainMismatch("alignment pair hom: right map endpoints disagree with the pairs");

    Homomorphism via_left_first = compose(source_.left(), left_map_);
    Homomorphism via_base_left = compose(base_map_, destination_.left());
    if (!(via_left_first == via_base_left))
        throw DomainMismatch("alignment pair hom: the left square does not commute");
    Homomorphism via_right_first = compose(source_.right(), right_map_);
    Homomorphism via_base_right = compose(base_map_, destination_.right());
    if (!(via_right_first == via_base_right))
        throw DomainMismatch("alignment pair hom: the right square does not commute");
}

}  // namespace ontomerge
