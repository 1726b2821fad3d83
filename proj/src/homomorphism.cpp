#include "ontomerge/homomorphism.hpp"

#include <set>

#include "ontomerge/errors.hpp"

namespace ontomerge {

Homomorphism::Homomorphism(Ontology source, Ontology target,
                           std::map<std::string, std::string> concept_map,
                           std::map<std::string, std::string> relation_map)
    : source_(std::move(source)),
      target_(std::move(target)),
      concept_map_(std::move(concept_map)),
      relation_map_(std::move(relation_map)) {
    for (const auto& c : source_.concepts()) {
        auto it = concept_map_.find(c.id);
        if (it == concept_map_.end())
            throw InvalidHomomorphism("not total: concept '" + c.id + "' is unmapped");
        if (!target_.has_concept(it->second))
            throw InvalidHomomorphism("unknown target: concept '" + c.id + "' maps to missing '" +
                                      it->second + "'");
        const Concept& image = target_.concept_by_id(it->second);
        if (image.tag != c.tag)
            throw InvalidHomomorphism("tag mismatch: concept '" + c.id + "' -> '" + image.id + "'");
    }
    for (const auto& [id, _] : concept_map_)
        if (!source_.has_concept(id))
            throw InvalidHomomorphism("concept map names '" + id + "' outside the source");

    for (const auto& r : source_.relations()) {
        auto it = relation_map_.find(r.id);
        if (it == relation_map_.end())
            throw InvalidHomomorphism("not total: relation '" + r.id + "' is unmapped");
        if (!target_.has_relation(it->second))
            throw InvalidHomomorphism("unknown target: relation '" + r.id + "' maps to missing '" +
                                      it->second + "'");
        const Relation& image = target_.relation_by_id(it->second);
        if (image.tag != r.tag)
            throw InvalidHomomorphism("tag mismatch: relation '" + r.id + "' -> '" + image.id + "'");
        if (image.src != concept_map_.at(r.src) || image.dst != concept_map_.at(r.dst))
            throw InvalidHomomorphism("incidence violation: relation '" + r.id + "' -> '" +
                                      image.id + "'");
    }
    for (const auto& [id, _] : relation_map_)
        if (!source_.has_relation(id))
            throw InvalidHomomorphism("relation map names '" + id + "' outside the source");
}

Homomorphism Homomorphism::identity(const Ontology& o) {
    std::map<std::string, std::string> cm, rm;
    for (const auto& c : o.concepts()) cm[c.id] = c.id;
    for (const auto& r : o.relations()) rm[r.id] = r.id;
    return Homomorphism(o, o, std::move(cm), std::move(rm));
}

const std::string& Homomorphism::concept_image(const std::string& id) const {
    auto it = concept_map_.find(id);
    if (it == concept_map_.end()) throw UnknownElement("no image for concept '" + id + "'");
    return it->second;
}

const std::string& Homomorphism::relation_image(const std::string& id) const {
    auto it = relation_map_.find(id);
    if (it == relation_map_.end()) throw UnknownElement("no image for relation '" + id + "'");
    return it->second;
}

bool Homomorphism::is_identity() const {
    if (!(source_ == target_)) return false;
    for (const auto& [from, to] : concept_map_)
        if (from != to) return false;
    for (const auto& [from, to] : relation_map_)
        if (from != to) return false;
    return true;
}

Homomorphism compose(const Homomorphism& first, const Homomorphism& second) {
    if (!(first.target() == second.source()))
        throw DomainMismatch("compose: target of the first map differs from source of the second");
    std::map<std::string, std::string> cm, rm;
    for (const auto& [from, mid] : first.concept_map()) cm[from] = second.concept_image(mid);
    for (const auto& [from, mid] : first.relation_map()) rm[from] = second.relation_image(mid);
    return Homomorphism(first.source(), second.target(), std::move(cm), std::move(rm));
}

HomKind check_hom_kind(const Homomorphism& h) {
    HomKind kind;

    std::set<std::string> concept_images, relation_images;
    bool concepts_injective = true, relations_injective = true;
    for (const auto& [_, to] : h.concept_map())
        if (!concept_images.insert(to).second) concepts_injective = false;
    for (const auto& [_, to] : h.relation_map())
        if (!relation_images.insert(to).second) relations_injective = false;

    kind.injective = concepts_injective && relations_injective;
    kind.surjective = concept_images.size() == h.target().concept_count() &&
                      relation_images.size() == h.target().relation_count();
    kind.epic = kind.surjective;

    kind.iso = false;
    if (kind.injective && kind.surjective) {
        // Bijective on both kinds; the inverse is a homomorphism exactly when
        // its own construction passes validation.
        std::map<std::string, std::string> inv_c, inv_r;
        for (const auto& [from, to] : h.concept_map()) inv_c[to] = from;
        for (const auto& [from, to] : h.relation_map()) inv_r[to] = from;
        try {
            Homomorphism inverse(h.target(), h.source(), std::move(inv_c), std::move(inv_r));
            kind.iso = true;
        } catch (const InvalidHomomorphism&) {
            kind.iso = false;
        }
    }
    return kind;
}

}  // namespace ontomerge
