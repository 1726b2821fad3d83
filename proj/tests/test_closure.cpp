#include "doctest.h"

#include <algorithm>

#include "ontomerge/closure.hpp"
#include "ontomerge/errors.hpp"
#include "test_support.hpp"

using namespace ontomerge;
using namespace ontomerge::testing;

namespace {

Ontology person_student() {
    return Ontology::validated(
        {{"person", "person", {}}, {"student", "student", {}}},
        {{"studies", "attends", {}, "student", "person"}});
}

Ontology person_employee() {
    return Ontology::validated(
        {{"employee", "employee", {}}, {"person", "person", {}}},
        {{"works", "employed_by", {}, "employee", "person"}});
}

Repository person_repository() {
    Repository repo;
    repo.ontologies = {person_student(), person_employee()};
    Correspondence shared;
    shared.concepts = {{"person", "person"}};
    repo.alignments.push_back(
        pair_from_correspondence(person_student(), person_employee(), shared));
    return repo;
}

// Three generators sharing a hub concept, pairwise aligned on it.
Repository three_generator_repository() {
    Ontology a = Ontology::validated({{"alpha", "alpha", {}}, {"hub", "hub", {}}}, {});
    Ontology b = Ontology::validated(
        {{"beta", "beta", {}}, {"hub", "hub", {}}}, {{"feeds", "b_edge", {}, "beta", "hub"}});
    Ontology c = Ontology::validated({{"gamma", "gamma", {}}, {"hub", "hub", {}}}, {});
    Correspondence on_hub;
    on_hub.concepts = {{"hub", "hub"}};
    Repository repo;
    repo.ontologies = {a, b, c};
    repo.alignments.push_back(pair_from_correspondence(a, b, on_hub));
    repo.alignments.push_back(pair_from_correspondence(a, c, on_hub));
    repo.alignments.push_back(pair_from_correspondence(b, c, on_hub));
    return repo;
}

// Union by shared ids; the oracle for bridge-glued merges.
Ontology union_by_id(const std::vector<Ontology>& members) {
    std::map<std::string, Concept> concepts;
    std::map<std::string, Relation> relations;
    for (const auto& member : members) {
        for (const auto& c : member.concepts()) concepts.emplace(c.id, c);
        for (const auto& r : member.relations()) relations.emplace(r.id, r);
    }
    std::vector<Concept> cs;
    std::vector<Relation> rs;
    for (const auto& [id, c] : concepts) cs.push_back(c);
    for (const auto& [id, r] : relations) rs.push_back(r);
    return Ontology::validated(std::move(cs), std::move(rs));
}

}  // namespace

TEST_CASE("the two-view repository closes with one merged member") {
    ClosureResult closure = compute_closure(person_repository());
    CHECK(closure.complete);
    REQUIRE(closure.members.size() == 3);
    CHECK(closure.repository_keys.size() == 2);

    std::vector<std::size_t> layers;
    for (const auto& [key, layer] : closure.layers) layers.push_back(layer);
    std::sort(layers.begin(), layers.end());
    CHECK(layers == std::vector<std::size_t>{1, 1, 2});

    // the layer-2 member is the glued merge
    for (const auto& [key, member] : closure.members)
        if (closure.layers.at(key) == 2) {
            CHECK(member.concept_count() == 3);
            CHECK(member.relation_count() == 2);
            CHECK(closure.repository_keys.count(key) == 0);
        }
}

TEST_CASE("a repository of one unaligned ontology is already closed") {
    Repository repo;
    repo.ontologies = {person_student()};
    ClosureResult closure = compute_closure(repo);
    CHECK(closure.members.size() == 1);
    CHECK(closure.repository_keys.size() == 1);
    CHECK(closure.layers.begin()->second == 1);
    // the self-pair is pooled as the identity
    const CanonicalKey& key = closure.members.begin()->first;
    auto self = closure.alignment_pool.find({key, key});
    REQUIRE(self != closure.alignment_pool.end());
    CHECK(self->second.concepts.count({"person", "person"}) == 1);
}

TEST_CASE("isomorphic repository ontologies intern to one member") {
    Repository repo;
    repo.ontologies = {person_student(), person_student()};
    ClosureResult closure = compute_closure(repo);
    CHECK(closure.members.size() == 1);
}

TEST_CASE("alignment operands must belong to the repository") {
    Repository repo;
    repo.ontologies = {person_student()};
    Correspondence shared;
    shared.concepts = {{"person", "person"}};
    repo.alignments.push_back(
        pair_from_correspondence(person_student(), person_employee(), shared));
    CHECK_THROWS_AS(compute_closure(repo), PreconditionFailed);
}

TEST_CASE("three pairwise-aligned generators close onto the subset lattice") {
    Repository repo = three_generator_repository();
    ClosureResult closure = compute_closure(repo);
    CHECK(closure.complete);
    CHECK(closure.members.size() == 7);

    // oracle: the seven id-unions of nonempty generator subsets
    const auto& gens = repo.ontologies;
    std::set<CanonicalKey> expected;
    for (unsigned mask = 1; mask < 8; ++mask) {
        std::vector<Ontology> chosen;
        for (unsigned bit = 0; bit < 3; ++bit)
            if (mask & (1u << bit)) chosen.push_back(gens[bit]);
        expected.insert(canonical_key(union_by_id(chosen)));
    }
    CHECK(expected.size() == 7);
    std::set<CanonicalKey> actual;
    for (const auto& [key, member] : closure.members) actual.insert(key);
    CHECK(actual == expected);

    // layers count the leaves of a cheapest derivation
    std::map<std::size_t, std::size_t> layer_histogram;
    for (const auto& [key, layer] : closure.layers) ++layer_histogram[layer];
    CHECK(layer_histogram[1] == 3);
    CHECK(layer_histogram[2] == 3);
    CHECK(layer_histogram[3] == 1);
}

TEST_CASE("worklist direction changes nothing about the result") {
    Repository repo = three_generator_repository();
    ClosureOptions forward;
    forward.order = WorklistOrder::forward;
    ClosureOptions reverse;
    reverse.order = WorklistOrder::reverse;
    ClosureResult a = compute_closure(repo, {}, forward);
    ClosureResult b = compute_closure(repo, {}, reverse);
    CHECK(a.members.size() == b.members.size());
    for (const auto& [key, member] : a.members) {
        REQUIRE(b.members.count(key) == 1);
        CHECK(b.layers.at(key) == a.layers.at(key));
    }
    CHECK(a.provenance == b.provenance);
}

TEST_CASE("the member limit aborts with a partial result attached") {
    try {
        compute_closure(person_repository(), {.max_members = 2});
        FAIL("expected LimitExceeded");
    } catch (const LimitExceeded& e) {
        CHECK(e.kind() == LimitExceeded::Kind::members);
        CHECK_FALSE(e.partial().complete);
        CHECK(e.partial().members.size() == 2);
    }
}

TEST_CASE("the element-size limit rejects oversized merge results") {
    try {
        // both repository members have size 3; the merge would have size 5
        compute_closure(person_repository(), {.max_element_size = 4});
        FAIL("expected LimitExceeded");
    } catch (const LimitExceeded& e) {
        CHECK(e.kind() == LimitExceeded::Kind::element_size);
        CHECK(e.partial().members.size() == 2);
    }
}

TEST_CASE("the round limit aborts runs that need more iterations") {
    try {
        compute_closure(three_generator_repository(), {.max_rounds = 1});
        FAIL("expected LimitExceeded");
    } catch (const LimitExceeded& e) {
        CHECK(e.kind() == LimitExceeded::Kind::rounds);
        CHECK_FALSE(e.partial().complete);
        // the first round merged at least the explicitly aligned pairs
        CHECK(e.partial().members.size() >= 3);
    }
}

TEST_CASE("provenance trees bottom out in repository members") {
    ClosureResult closure = compute_closure(three_generator_repository());
    for (const auto& [key, member] : closure.members) {
        MergeTree tree = provenance_of(closure, key);
        CHECK(tree.key == key);
        if (closure.repository_keys.count(key)) {
            CHECK(tree.children.empty());
            CHECK(tree.leaf_count() == 1);
        } else {
            CHECK(tree.children.size() == 2);
            // the cheapest derivation of a layer-n member uses n leaves
            CHECK(tree.leaf_count() == closure.layers.at(key));
        }
    }
    CHECK_THROWS_AS(provenance_of(closure, CanonicalKey{"missing"}), UnknownElement);
}

TEST_CASE("member names are stable and sorted") {
    ClosureResult closure = compute_closure(person_repository());
    auto names = member_names(closure);
    CHECK(names.size() == 3);
    std::set<std::string> seen;
    for (const auto& [key, name] : names) seen.insert(name);
    CHECK(seen == std::set<std::string>{"m000", "m001", "m002"});
}

TEST_CASE("the closure behaves as a merge-closed merging system") {
    PushoutClosureSystem system(compute_closure(three_generator_repository()));
    CHECK(system.size() == 7);
    for (std::size_t a = 0; a < system.size(); ++a) {
        CHECK(system.aligns(a, a));
        CHECK(system.merge(a, a) == MergeOutcome::defined(a));
        CHECK(system.index_of(system.key_of(a)) == a);
        CHECK(system.element_name(a).substr(0, 1) == "m");
        for (std::size_t b = 0; b < system.size(); ++b) {
            CHECK(system.aligns(a, b));  // every pair aligns in this closure
            MergeOutcome result = system.merge(a, b);
            REQUIRE(result.is_defined());
            CHECK(result.value() < system.size());
            CHECK(system.merge(b, a) == result);
        }
    }
}

TEST_CASE("the closure system leaves unaligned pairs unmerged") {
    // two disconnected components: no alignment between them
    Repository repo;
    repo.ontologies = {person_student(), person_employee()};
    PushoutClosureSystem system(compute_closure(repo));
    CHECK(system.size() == 2);
    CHECK_FALSE(system.aligns(0, 1));
    CHECK_FALSE(system.merge(0, 1).is_defined());
    CHECK(system.merge(0, 0).is_defined());
}

TEST_CASE("pool correspondences name real elements of their members") {
    ClosureResult closure = compute_closure(three_generator_repository());
    for (const auto& [pair, corr] : closure.alignment_pool) {
        const Ontology& left = closure.members.at(pair.first);
        const Ontology& right = closure.members.at(pair.second);
        for (const auto& [a, b] : corr.concepts) {
            CHECK(left.has_concept(a));
            CHECK(right.has_concept(b));
            CHECK(left.concept_by_id(a).tag == right.concept_by_id(b).tag);
        }
        for (const auto& [a, b] : corr.relations) {
            CHECK(left.has_relation(a));
            CHECK(right.has_relation(b));
        }
        // the flipped orientation is pooled too
        auto other = closure.alignment_pool.find({pair.second, pair.first});
        REQUIRE(other != closure.alignment_pool.end());
        CHECK(other->second == corr.flipped());
    }
}

TEST_CASE("random bridged repositories close completely and stay consistent") {
    Rng rng(909);
    for (int i = 0; i < 15; ++i) {
        Repository repo = random_bridged_repository(rng);
        ClosureResult closure = compute_closure(repo);
        CHECK(closure.complete);
        CHECK(closure.repository_keys.size() <= repo.ontologies.size());
        CHECK(closure.members.size() >= closure.repository_keys.size());
        PushoutClosureSystem system(closure);
        for (std::size_t a = 0; a < system.size(); ++a)
            for (std::size_t b = 0; b < system.size(); ++b) {
                MergeOutcome ab = system.merge(a, b);
                CHECK(ab == system.merge(b, a));
                CHECK(ab.is_defined() == system.aligns(a, b));
            }
    }
}
