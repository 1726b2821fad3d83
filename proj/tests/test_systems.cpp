#include "doctest.h"

#include "ontomerge/canonical.hpp"
#include "ontomerge/category_ops.hpp"
#include "ontomerge/errors.hpp"
#include "ontomerge/properties.hpp"
#include "ontomerge/systems.hpp"

using namespace ontomerge;

TEST_CASE("disjoint-union system enumerates saturating multisets") {
    DisjointUnionSystem system({"a", "b"}, 2);
    CHECK(system.size() == 9);  // counts in {0,1,2} x {0,1,2}
    std::size_t empty = system.index_of_counts({0, 0});
    std::size_t one_a = system.index_of_counts({1, 0});
    std::size_t two_a = system.index_of_counts({2, 0});
    CHECK(system.element_name(empty) == "{}");
    CHECK(system.element_name(one_a) == "{a:1}");

    CHECK(system.aligns(one_a, two_a));
    CHECK(system.merge(one_a, one_a) == MergeOutcome::defined(two_a));
    // saturation at the cap
    CHECK(system.merge(two_a, two_a) == MergeOutcome::defined(two_a));
    CHECK(system.counts_of(system.merge(one_a, two_a).value()) ==
          std::vector<std::size_t>{2, 0});
}

TEST_CASE("disjoint-union construction rejects bad arguments") {
    CHECK_THROWS_AS(DisjointUnionSystem({}, 2), PreconditionFailed);
    CHECK_THROWS_AS(DisjointUnionSystem({"a", "a"}, 2), PreconditionFailed);
    CHECK_THROWS_AS(DisjointUnionSystem({"a"}, 0), PreconditionFailed);
}

TEST_CASE("disjoint union is commutative and associative but not idempotent") {
    DisjointUnionSystem system = example_disjoint_union();
    auto reports = check_all_properties(system);
    CHECK_FALSE(reports.at(PropertyId::I).holds);
    CHECK(reports.at(PropertyId::C).holds);
    CHECK(reports.at(PropertyId::A).holds);
    CHECK(reports.at(PropertyId::CA).holds);
    CHECK(reports.at(PropertyId::SA).holds);
    CHECK(reports.at(PropertyId::R).holds);

    // the idempotency counterexample replays against real ontologies
    const auto& witness = reports.at(PropertyId::I).counterexample;
    REQUIRE(witness.has_value());
    std::size_t index = witness->elements[0];
    Ontology rep = system.representative(index);
    std::size_t doubled = system.merge(index, index).value();
    CHECK_FALSE(is_isomorphic(disjoint_union(rep, rep), rep));
    CHECK(doubled != index);
}

TEST_CASE("disjoint-union merge is not a least upper bound for the pointwise order") {
    DisjointUnionSystem system = example_disjoint_union();
    Order order = system.pointwise_order();
    validate_order(system, order);
    PropertyReport lu = check_property(system, PropertyId::LU, &order);
    CHECK_FALSE(lu.holds);
    // {a:1} is its own least upper bound with itself, but the merge doubles
    // the count to {a:2}, which lies strictly above: leastness fails.
    REQUIRE(lu.counterexample.has_value());
}

TEST_CASE("representatives of the disjoint-union system mirror the index arithmetic") {
    DisjointUnionSystem system({"x", "y"}, 3);
    std::size_t index = system.index_of_counts({2, 1});
    Ontology rep = system.representative(index);
    CHECK(rep.concept_count() == 3);
    std::size_t x_count = 0;
    for (const auto& c : rep.concepts())
        if (c.tag == "x") ++x_count;
    CHECK(x_count == 2);
}

TEST_CASE("overlap-union diamond satisfies every checkable property") {
    OverlapUnionSystem system = example_overlap_diamond();
    CHECK(system.size() == 4);
    auto reports = check_all_properties(system);
    for (const auto& [property, report] : reports) CHECK(report.holds);

    Order order = system.containment_order();
    validate_order(system, order);
    CHECK(check_property(system, PropertyId::LU, &order).holds);
    CHECK(check_property(system, PropertyId::CP, &order).holds);

    OrderTheoremReport theorem = check_order_theorem(system, order);
    CHECK(theorem.certified);
    CHECK(theorem.biconditional_ok);
}

TEST_CASE("overlap-union members must agree on shared ids") {
    Ontology a = Ontology::validated({{"p", "person", {}}}, {});
    Ontology b = Ontology::validated({{"p", "place", {}}}, {});
    CHECK_THROWS_AS(OverlapUnionSystem({{"a", a}, {"b", b}}), PreconditionFailed);
}

TEST_CASE("overlap-union aligns exactly when the union is a member") {
    OverlapUnionSystem system = example_overlap_diamond();
    // members: S (person), PS, PE, M; every union is a member here
    for (std::size_t a = 0; a < system.size(); ++a)
        for (std::size_t b = 0; b < system.size(); ++b)
            CHECK(system.aligns(a, b));

    // drop the top element: PS union PE is no longer a member
    OverlapUnionSystem partial(
        {{"s", example_overlap_diamond().representative(0)},
         {"ps", example_overlap_diamond().representative(1)},
         {"pe", example_overlap_diamond().representative(2)}});
    std::size_t ps = 1, pe = 2;
    CHECK_FALSE(partial.aligns(ps, pe));
    CHECK_FALSE(partial.merge(ps, pe).is_defined());
    CHECK(partial.aligns(0, ps));
}

TEST_CASE("keyed tables with a conflict-free universe satisfy everything") {
    TableJoinSystem system = example_keyed_tables();
    CHECK(system.size() == 8);  // all subsets of three conflict-free rows
    auto reports = check_all_properties(system);
    for (const auto& [property, report] : reports) CHECK(report.holds);

    Order order = system.subset_order();
    OrderTheoremReport theorem = check_order_theorem(system, order);
    CHECK(theorem.certified);
}

TEST_CASE("conflicting rows break catenary associativity but not strong associativity") {
    TableJoinSystem system = example_keyed_tables_conflicting();
    auto reports = check_all_properties(system);
    CHECK(reports.at(PropertyId::I).holds);
    CHECK(reports.at(PropertyId::C).holds);
    CHECK(reports.at(PropertyId::A).holds);
    CHECK(reports.at(PropertyId::SA).holds);
    CHECK_FALSE(reports.at(PropertyId::CA).holds);
    CHECK_FALSE(reports.at(PropertyId::R).holds);

    // replay the catenary failure by hand
    const auto& witness = reports.at(PropertyId::CA).counterexample;
    REQUIRE(witness.has_value());
    CHECK(property_violation_at(system, PropertyId::CA, witness->elements).has_value());
}

TEST_CASE("table join rejects oversized universes") {
    std::vector<TableJoinSystem::Row> rows;
    for (int i = 0; i < 13; ++i)
        rows.push_back({"k" + std::to_string(i), "v"});
    CHECK_THROWS_AS(TableJoinSystem{rows}, PreconditionFailed);
}

TEST_CASE("table join element names list their rows") {
    TableJoinSystem system = example_keyed_tables();
    bool found = false;
    for (std::size_t i = 0; i < system.size(); ++i)
        if (system.element_name(i) == "{city=paris,name=alice}") found = true;
    CHECK(found);
}
