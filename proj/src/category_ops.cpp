#include "ontomerge/category_ops.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <optional>

#include "ontomerge/errors.hpp"
#include "ontomerge/hom_search.hpp"

namespace ontomerge {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }

    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// A quotient class of the disjoint union. side 0 is the left operand.
struct QuotientClass {
    std::vector<std::pair<int, std::string>> members;
    std::string candidate_id;
    std::string merged_id;
    std::optional<std::string> tag;
    std::optional<std::string> label;
};

// Groups union-find roots into deterministic, fully described classes.
std::vector<QuotientClass> collect_classes(UnionFind& uf, const std::vector<std::string>& ids,
                                           std::size_t left_count,
                                           const std::vector<std::optional<std::string>>& tags,
                                           const std::vector<std::optional<std::string>>& labels) {
    std::map<std::size_t, QuotientClass> by_root;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        QuotientClass& cls = by_root[uf.find(i)];
        cls.members.emplace_back(i < left_count ? 0 : 1, ids[i]);
        if (tags[i]) {
            if (cls.tag && *cls.tag != *tags[i])
                throw Error("internal: merged class carries conflicting tags");
            cls.tag = tags[i];
        }
        if (labels[i] && (!cls.label || *labels[i] < *cls.label)) cls.label = labels[i];
    }

    std::vector<QuotientClass> classes;
    for (auto& [_, cls] : by_root) {
        std::sort(cls.members.begin(), cls.members.end());
        cls.candidate_id = cls.members.front().second;
        for (const auto& [side, id] : cls.members)
            if (id < cls.candidate_id) cls.candidate_id = id;
        classes.push_back(std::move(cls));
    }
    std::sort(classes.begin(), classes.end(), [](const QuotientClass& a, const QuotientClass& b) {
        if (a.candidate_id != b.candidate_id) return a.candidate_id < b.candidate_id;
        return a.members.front() < b.members.front();
    });

    std::set<std::string> taken;
    for (auto& cls : classes) {
        std::string id = cls.candidate_id;
        for (int n = 2; taken.count(id) != 0; ++n) id = cls.candidate_id + "~" + std::to_string(n);
        taken.insert(id);
        cls.merged_id = id;
    }
    return classes;
}

// Tag conflict within a class would contradict the homomorphism invariants of
// the pair's legs; collect_classes throws if that ever happens.

}  // namespace

PushoutResult pushout(const VAlignmentPair& pair) {
    const Ontology& left = pair.left_ontology();
    const Ontology& right = pair.right_ontology();
    const Ontology& base = pair.base();

    const std::size_t nlc = left.concept_count();
    const std::size_t nrc = right.concept_count();
    const std::size_t nlr = left.relation_count();
    const std::size_t nrr = right.relation_count();

    UnionFind concepts_uf(nlc + nrc);
    UnionFind relations_uf(nlr + nrr);
    for (const auto& b : base.concepts())
        concepts_uf.unite(left.concept_position(pair.left().concept_image(b.id)),
                          nlc + right.concept_position(pair.right().concept_image(b.id)));
    for (const auto& b : base.relations())
        relations_uf.unite(left.relation_position(pair.left().relation_image(b.id)),
                           nlr + right.relation_position(pair.right().relation_image(b.id)));

    std::vector<std::string> concept_ids(nlc + nrc);
    std::vector<std::optional<std::string>> concept_tags(nlc + nrc), concept_labels(nlc + nrc);
    for (std::size_t i = 0; i < nlc; ++i) {
        concept_ids[i] = left.concepts()[i].id;
        concept_tags[i] = left.concepts()[i].tag;
        concept_labels[i] = left.concepts()[i].label;
    }
    for (std::size_t i = 0; i < nrc; ++i) {
        concept_ids[nlc + i] = right.concepts()[i].id;
        concept_tags[nlc + i] = right.concepts()[i].tag;
        concept_labels[nlc + i] = right.concepts()[i].label;
    }
    std::vector<QuotientClass> concept_classes =
        collect_classes(concepts_uf, concept_ids, nlc, concept_tags, concept_labels);

    // Merged id per disjoint-union position.
    std::vector<std::string> concept_class_of(nlc + nrc);
    std::map<std::string, std::string> left_cm, right_cm;
    for (const auto& cls : concept_classes)
        for (const auto& [side, id] : cls.members) {
            std::size_t pos =
                side == 0 ? left.concept_position(id) : nlc + right.concept_position(id);
            concept_class_of[pos] = cls.merged_id;
            (side == 0 ? left_cm : right_cm)[id] = cls.merged_id;
        }

    std::vector<std::string> relation_ids(nlr + nrr);
    std::vector<std::optional<std::string>> relation_tags(nlr + nrr), relation_labels(nlr + nrr);
    for (std::size_t i = 0; i < nlr; ++i) {
        relation_ids[i] = left.relations()[i].id;
        relation_tags[i] = left.relations()[i].tag;
        relation_labels[i] = left.relations()[i].label;
    }
    for (std::size_t i = 0; i < nrr; ++i) {
        relation_ids[nlr + i] = right.relations()[i].id;
        relation_tags[nlr + i] = right.relations()[i].tag;
        relation_labels[nlr + i] = right.relations()[i].label;
    }
    std::vector<QuotientClass> relation_classes =
        collect_classes(relations_uf, relation_ids, nlr, relation_tags, relation_labels);

    std::vector<Concept> merged_concepts;
    for (const auto& cls : concept_classes)
        merged_concepts.push_back(Concept{cls.merged_id, cls.tag, cls.label});

    std::vector<Relation> merged_relations;
    std::map<std::string, std::string> left_rm, right_rm;
    for (const auto& cls : relation_classes) {
        // Incidence is class invariant: any member determines the endpoints.
        const auto& [side, id] = cls.members.front();
        const Relation& witness = side == 0 ? left.relation_by_id(id) : right.relation_by_id(id);
        const Ontology& owner = side == 0 ? left : right;
        std::size_t src_pos = owner.concept_position(witness.src) + (side == 0 ? 0 : nlc);
        std::size_t dst_pos = owner.concept_position(witness.dst) + (side == 0 ? 0 : nlc);
        merged_relations.push_back(Relation{cls.merged_id, cls.tag, cls.label,
                                            concept_class_of[src_pos], concept_class_of[dst_pos]});
        for (const auto& [member_side, member_id] : cls.members)
            (member_side == 0 ? left_rm : right_rm)[member_id] = cls.merged_id;
    }

    Ontology merged = Ontology::validated(std::move(merged_concepts), std::move(merged_relations));
    Homomorphism inject_left(left, merged, std::move(left_cm), std::move(left_rm));
    Homomorphism inject_right(right, merged, std::move(right_cm), std::move(right_rm));
    return PushoutResult{std::move(merged), std::move(inject_left), std::move(inject_right)};
}

PullbackResult pullback(const Homomorphism& left, const Homomorphism& right) {
    if (!(left.target() == right.target()))
        throw DomainMismatch("pullback: the two maps have different targets");

    std::vector<Concept> apex_concepts;
    std::vector<Relation> apex_relations;
    std::map<std::string, std::string> left_cm, right_cm, left_rm, right_rm;
    std::map<std::pair<std::string, std::string>, std::string> concept_name;

    std::size_t next = 0;
    for (const auto& x : left.source().concepts())
        for (const auto& y : right.source().concepts()) {
            if (left.concept_image(x.id) != right.concept_image(y.id)) continue;
            std::string id = "p" + std::to_string(next++);
            concept_name[{x.id, y.id}] = id;
            std::optional<std::string> label = x.label;
            if (y.label && (!label || *y.label < *label)) label = y.label;
            apex_concepts.push_back(Concept{id, x.tag, label});
            left_cm[id] = x.id;
            right_cm[id] = y.id;
        }
    next = 0;
    for (const auto& e : left.source().relations())
        for (const auto& f : right.source().relations()) {
            if (left.relation_image(e.id) != right.relation_image(f.id)) continue;
            std::string id = "q" + std::to_string(next++);
            std::optional<std::string> label = e.label;
            if (f.label && (!label || *f.label < *label)) label = f.label;
            apex_relations.push_back(Relation{id, e.tag, label, concept_name.at({e.src, f.src}),
                                              concept_name.at({e.dst, f.dst})});
            left_rm[id] = e.id;
            right_rm[id] = f.id;
        }

    Ontology apex = Ontology::validated(std::move(apex_concepts), std::move(apex_relations));
    Homomorphism proj_left(apex, left.source(), std::move(left_cm), std::move(left_rm));
    Homomorphism proj_right(apex, right.source(), std::move(right_cm), std::move(right_rm));
    return PullbackResult{std::move(apex), std::move(proj_left), std::move(proj_right)};
}

PushoutResult coproduct(const Ontology& left, const Ontology& right) {
    Ontology empty;
    VAlignmentPair pair(Homomorphism(empty, left, {}, {}), Homomorphism(empty, right, {}, {}));
    return pushout(pair);
}

Homomorphism mediating_hom(const VAlignmentPair& pair, const PushoutResult& square,
                           const Homomorphism& cocone_left, const Homomorphism& cocone_right) {
    if (!(square.inject_left.source() == pair.left_ontology()) ||
        !(square.inject_right.source() == pair.right_ontology()))
        throw DomainMismatch("mediating_hom: the square is not a pushout of the pair");
    if (!(cocone_left.source() == pair.left_ontology()) ||
        !(cocone_right.source() == pair.right_ontology()))
        throw DomainMismatch("mediating_hom: the cocone legs do not start at the operands");
    if (!(cocone_left.target() == cocone_right.target()))
        throw CoconeDoesNotCommute("mediating_hom: the cocone legs have different targets");
    if (!(compose(pair.left(), cocone_left) == compose(pair.right(), cocone_right)))
        throw CoconeDoesNotCommute("mediating_hom: the cocone does not commute with the pair");

    // Every merged element is an injection image, so the cocone forces the
    // mediator completely; disagreement within a class cannot happen once the
    // commuting check passed.
    std::map<std::string, std::string> cm, rm;
    auto put = [](std::map<std::string, std::string>& m, const std::string& from,
                  const std::string& to) {
        auto [it, inserted] = m.emplace(from, to);
        if (!inserted && it->second != to)
            throw CoconeDoesNotCommute("mediating_hom: the cocone is inconsistent on a class");
    };
    for (const auto& c : pair.left_ontology().concepts())
        put(cm, square.inject_left.concept_image(c.id), cocone_left.concept_image(c.id));
    for (const auto& c : pair.right_ontology().concepts())
        put(cm, square.inject_right.concept_image(c.id), cocone_right.concept_image(c.id));
    for (const auto& r : pair.left_ontology().relations())
        put(rm, square.inject_left.relation_image(r.id), cocone_left.relation_image(r.id));
    for (const auto& r : pair.right_ontology().relations())
        put(rm, square.inject_right.relation_image(r.id), cocone_right.relation_image(r.id));

    return Homomorphism(square.merged, cocone_left.target(), std::move(cm), std::move(rm));
}

Homomorphism induced_merge_hom(const AlignmentPairHom& pair_hom, const PushoutResult& src_square,
                               const PushoutResult& dst_square) {
    Homomorphism cocone_left = compose(pair_hom.left_map(), dst_square.inject_left);
    Homomorphism cocone_right = compose(pair_hom.right_map(), dst_square.inject_right);
    return mediating_hom(pair_hom.source_pair(), src_square, cocone_left, cocone_right);
}

std::vector<VAlignmentPair> derive_alignments(const std::vector<VAlignmentPair>& known,
                                              const VAlignmentPair& merged_pair,
                                              const PushoutResult& merge) {
    std::vector<VAlignmentPair> out;
    auto push_unique = [&out](VAlignmentPair pair) {
        Correspondence corr = pair.correspondence();
        for (const auto& existing : out)
            if (existing.left_ontology() == pair.left_ontology() &&
                existing.right_ontology() == pair.right_ontology() &&
                existing.correspondence() == corr)
                return;
        out.push_back(std::move(pair));
    };

    // One operand side of the merge: `leg` is base -> operand, `inject` is
    // operand -> merged.
    auto lift_through = [&](const Ontology& operand, const Homomorphism& leg,
                            const Homomorphism& inject) {
        for (const auto& kp : known) {
            if (kp.right_ontology() == operand) {
                // Known pair aligns some P with the operand; follow the
                // operand into the merge.
                push_unique(VAlignmentPair(kp.left(), compose(kp.right(), inject)));
                PullbackResult pb = pullback(kp.right(), leg);
                push_unique(VAlignmentPair(compose(pb.proj_left, kp.left()),
                                           compose(pb.proj_right, compose(leg, inject))));
            }
            if (kp.left_ontology() == operand) {
                push_unique(VAlignmentPair(compose(kp.left(), inject), kp.right()));
                PullbackResult pb = pullback(kp.left(), leg);
                push_unique(VAlignmentPair(compose(pb.proj_right, compose(leg, inject)),
                                           compose(pb.proj_left, kp.right())));
            }
        }
    };

    lift_through(merged_pair.left_ontology(), merged_pair.left(), merge.inject_left);
    lift_through(merged_pair.right_ontology(), merged_pair.right(), merge.inject_right);
    push_unique(VAlignmentPair::reflexive(merge.merged));
    return out;
}

std::optional<VAlignmentPair> sub_merge_witness(const Ontology& below, const Ontology& above,
                                                std::size_t budget) {
    std::optional<Homomorphism> hom = find_first_homomorphism(below, above, budget);
    if (!hom) return std::nullopt;
    return VAlignmentPair(Homomorphism::identity(below), std::move(*hom));
}

}  // namespace ontomerge
