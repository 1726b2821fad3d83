#include "doctest.h"

#include "ontomerge/alignment.hpp"
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

}  // namespace

TEST_CASE("correspondence set operations") {
    Correspondence c1{{{"a", "x"}}, {}};
    Correspondence c2{{{"a", "x"}, {"b", "y"}}, {{"r", "s"}}};
    CHECK(c1.subset_of(c2));
    CHECK_FALSE(c2.subset_of(c1));
    CHECK(c1.merge_in(c2));        // grew
    CHECK(c1 == c2);
    CHECK_FALSE(c1.merge_in(c2));  // idempotent
    Correspondence flipped = c2.flipped();
    CHECK(flipped.concepts.count({"x", "a"}) == 1);
    CHECK(flipped.relations.count({"s", "r"}) == 1);
    CHECK(flipped.flipped() == c2);
}

TEST_CASE("alignment pairs expose their span and correspondence") {
    Ontology base = Ontology::validated({{"b", "person", {}}}, {});
    Homomorphism r1(base, person_student(), {{"b", "person"}}, {});
    Homomorphism r2(base, person_employee(), {{"b", "person"}}, {});
    VAlignmentPair pair(r1, r2);
    CHECK(pair.base() == base);
    CHECK(pair.left_ontology() == person_student());
    CHECK(pair.right_ontology() == person_employee());
    Correspondence corr = pair.correspondence();
    CHECK(corr.concepts == std::set<std::pair<std::string, std::string>>{{"person", "person"}});
    CHECK(corr.relations.empty());
    CHECK(pair.flipped().correspondence() == corr.flipped());
}

TEST_CASE("legs with different bases are rejected") {
    Ontology base1 = Ontology::validated({{"b", "person", {}}}, {});
    Ontology base2 = Ontology::validated({{"c", "person", {}}}, {});
    Homomorphism r1(base1, person_student(), {{"b", "person"}}, {});
    Homomorphism r2(base2, person_employee(), {{"c", "person"}}, {});
    CHECK_THROWS_AS(VAlignmentPair(r1, r2), DomainMismatch);
}

TEST_CASE("the reflexive pair aligns an ontology with itself along identities") {
    Ontology o = person_student();
    VAlignmentPair pair = VAlignmentPair::reflexive(o);
    CHECK(pair.base() == o);
    CHECK(pair.left().is_identity());
    CHECK(pair.right().is_identity());
}

TEST_CASE("pair_from_correspondence rebuilds a span from identified pairs") {
    Correspondence corr;
    corr.concepts = {{"person", "person"}};
    VAlignmentPair pair = pair_from_correspondence(person_student(), person_employee(), corr);
    CHECK(pair.correspondence() == corr);
    CHECK(pair.base().concept_count() == 1);
    CHECK(pair.base().concept_by_id("b0").tag == "person");
}

TEST_CASE("pair_from_correspondence includes identified relations") {
    Ontology o = person_student();
    Correspondence identity;
    for (const auto& c : o.concepts()) identity.concepts.insert({c.id, c.id});
    for (const auto& r : o.relations()) identity.relations.insert({r.id, r.id});
    VAlignmentPair pair = pair_from_correspondence(o, o, identity);
    CHECK(pair.base().concept_count() == 2);
    CHECK(pair.base().relation_count() == 1);
    CHECK(pair.correspondence() == identity);
}

TEST_CASE("pair_from_correspondence rejects tag mismatches") {
    Correspondence corr;
    corr.concepts = {{"person", "employee"}};
    CHECK_THROWS_AS(pair_from_correspondence(person_student(), person_employee(), corr),
                    InvalidHomomorphism);
}

TEST_CASE("pair_from_correspondence rejects relation pairs with stray endpoints") {
    Correspondence corr;
    corr.relations = {{"studies", "works"}};  // endpoints not identified
    CHECK_THROWS_AS(pair_from_correspondence(person_student(), person_employee(), corr),
                    InvalidHomomorphism);
}

TEST_CASE("base ids chosen positionally cannot collide with element ids") {
    // Concept pairs whose ids concatenate identically must stay distinct.
    Ontology left = Ontology::validated({{"ab", "t", {}}, {"a", "t", {}}}, {});
    Ontology right = Ontology::validated({{"c", "t", {}}, {"bc", "t", {}}}, {});
    Correspondence corr;
    corr.concepts = {{"ab", "c"}, {"a", "bc"}};
    VAlignmentPair pair = pair_from_correspondence(left, right, corr);
    CHECK(pair.base().concept_count() == 2);
    CHECK(pair.correspondence() == corr);
}

TEST_CASE("random alignment pairs are valid spans by construction") {
    Rng rng(21);
    for (int i = 0; i < 100; ++i) {
        Ontology left = random_ontology(rng);
        Ontology right = random_ontology(rng);
        VAlignmentPair pair = random_alignment_pair(rng, left, right);
        CHECK(pair.left_ontology() == left);
        CHECK(pair.right_ontology() == right);
        CHECK(pair.base().size() <= left.size() + right.size());
    }
}

TEST_CASE("alignment pair morphisms require commuting squares") {
    Ontology base = Ontology::validated({{"b", "person", {}}}, {});
    Ontology ps = person_student();
    Ontology pe = person_employee();
    Homomorphism r1(base, ps, {{"b", "person"}}, {});
    Homomorphism r2(base, pe, {{"b", "person"}}, {});
    VAlignmentPair pair(r1, r2);

    // Identity morphism of the pair onto itself commutes.
    CHECK_NOTHROW(AlignmentPairHom(pair, pair, Homomorphism::identity(base),
                                   Homomorphism::identity(ps), Homomorphism::identity(pe)));

    // Breaking one leg's square is rejected: map the base person to the
    // student (same structure, different tag forbids it anyway), so use a
    // second person concept instead.
    Ontology ps2 = Ontology::validated(
        {{"other", "person", {}}, {"person", "person", {}}, {"student", "student", {}}},
        {{"studies", "attends", {}, "student", "person"}});
    Homomorphism include_ps(ps, ps2, {{"person", "person"}, {"student", "student"}},
                            {{"studies", "studies"}});
    Homomorphism r1_prime(base, ps2, {{"b", "other"}}, {});  // lands on the wrong copy
    VAlignmentPair pair2(r1_prime, r2);
    CHECK_THROWS_AS(AlignmentPairHom(pair, pair2, Homomorphism::identity(base), include_ps,
                                     Homomorphism::identity(pe)),
                    DomainMismatch);
}
