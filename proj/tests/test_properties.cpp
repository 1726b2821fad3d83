#include "doctest.h"

#include "ontomerge/errors.hpp"
#include "ontomerge/properties.hpp"
#include "ontomerge/systems.hpp"

using namespace ontomerge;

namespace {

MergeOutcome def(std::size_t v) { return MergeOutcome::defined(v); }
MergeOutcome undef() { return MergeOutcome::undefined(); }

}  // namespace

TEST_CASE("property names round-trip through parsing") {
    for (PropertyId property : all_properties()) {
        auto parsed = parse_property(to_string(property));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == property);
    }
    CHECK_FALSE(parse_property("XYZ").has_value());
    CHECK(property_arity(PropertyId::I) == 1);
    CHECK(property_arity(PropertyId::C) == 2);
    CHECK(property_arity(PropertyId::SA) == 3);
    CHECK(property_needs_order(PropertyId::LU));
    CHECK(property_needs_order(PropertyId::CP));
    CHECK_FALSE(property_needs_order(PropertyId::SA));
}

TEST_CASE("order validation rejects non-orders") {
    TableSystem system({"a", "b"}, {{true, false}, {false, true}},
                       {{def(0), undef()}, {undef(), def(1)}});
    Order not_reflexive = {{false, false}, {false, true}};
    CHECK_THROWS_AS(validate_order(system, not_reflexive), PreconditionFailed);
    Order not_antisymmetric = {{true, true}, {true, true}};
    CHECK_THROWS_AS(validate_order(system, not_antisymmetric), PreconditionFailed);
    Order wrong_size = {{true}};
    CHECK_THROWS_AS(validate_order(system, wrong_size), PreconditionFailed);
    Order fine = {{true, true}, {false, true}};
    CHECK_NOTHROW(validate_order(system, fine));

    Order not_transitive = {{true, true, false}, {false, true, true}, {false, false, true}};
    TableSystem three({"a", "b", "c"},
                      {{true, false, false}, {false, true, false}, {false, false, true}},
                      {{def(0), undef(), undef()},
                       {undef(), def(1), undef()},
                       {undef(), undef(), def(2)}});
    CHECK_THROWS_AS(validate_order(three, not_transitive), PreconditionFailed);
}

TEST_CASE("order-relative checks without an order raise OrderRequired") {
    TableSystem system({"a"}, {{true}}, {{def(0)}});
    CHECK_THROWS_AS(check_property(system, PropertyId::LU), OrderRequired);
    CHECK_THROWS_AS(check_property(system, PropertyId::CPl), OrderRequired);
    // OrderRequired is a precondition failure, catchable as such
    CHECK_THROWS_AS(check_property(system, PropertyId::CP), PreconditionFailed);
}

TEST_CASE("failed idempotency pinpoints the element") {
    // 0 merges with itself to 1.
    TableSystem system({"a", "b"}, {{true, true}, {true, true}},
                       {{def(1), def(1)}, {def(1), def(1)}});
    PropertyReport report = check_property(system, PropertyId::I);
    CHECK_FALSE(report.holds);
    REQUIRE(report.counterexample.has_value());
    CHECK(report.counterexample->elements == std::vector<std::size_t>{0});
    CHECK(property_violation_at(system, PropertyId::I, {0}).has_value());
    CHECK_FALSE(property_violation_at(system, PropertyId::I, {1}).has_value());
}

TEST_CASE("commutativity failure is caught in either component") {
    // alignment asymmetric
    TableSystem asym({"a", "b"}, {{true, true}, {false, true}},
                     {{def(0), def(1)}, {undef(), def(1)}});
    CHECK_FALSE(check_property(asym, PropertyId::C).holds);

    // aligned both ways but different results
    TableSystem anti({"a", "b"}, {{true, true}, {true, true}},
                     {{def(0), def(0)}, {def(1), def(1)}});
    PropertyReport report = check_property(anti, PropertyId::C);
    CHECK_FALSE(report.holds);
    REQUIRE(report.counterexample.has_value());
    CHECK(property_violation_at(anti, PropertyId::C, report.counterexample->elements)
              .has_value());
}

TEST_CASE("associativity is only judged where both groupings exist") {
    // merge(0,1)=2, merge(1,2) undefined: the triple (0,1,2) is vacuous for A.
    TableSystem system({"a", "b", "c"},
                       {{true, true, false}, {true, true, false}, {false, false, true}},
                       {{def(0), def(2), undef()},
                        {def(2), def(1), undef()},
                        {undef(), undef(), def(2)}});
    CHECK(check_property(system, PropertyId::A).holds);
    // but catenary associativity demands the second grouping exists
    CHECK_FALSE(check_property(system, PropertyId::CA).holds);
}

TEST_CASE("strong associativity needs both groupings to live or die together") {
    // Two islands ({0,1} under max, {2} alone): every chain that would cross
    // between them is undefined from either end, so SA holds.
    TableSystem system({"a", "b", "c"},
                       {{true, true, false}, {true, true, false}, {false, false, true}},
                       {{def(0), def(1), undef()},
                        {def(1), def(1), undef()},
                        {undef(), undef(), def(2)}});
    CHECK(check_property(system, PropertyId::SA).holds);

    // Break it: make 1 merge 2 = 2 and 0 unaligned with 2, then the triple
    // (0,1,2) gives left (0m1)m2 = 1m2 = 2 but right 0m(1m2) = 0m2 undefined.
    TableSystem broken({"a", "b", "c"},
                       {{true, true, false}, {true, true, true}, {false, true, true}},
                       {{def(0), def(1), undef()},
                        {def(1), def(1), def(2)},
                        {undef(), def(2), def(2)}});
    PropertyReport report = check_property(broken, PropertyId::SA);
    CHECK_FALSE(report.holds);
    REQUIRE(report.counterexample.has_value());
    auto replay =
        property_violation_at(broken, PropertyId::SA, report.counterexample->elements);
    REQUIRE(replay.has_value());
    CHECK(report.counterexample->detail == *replay);
}

TEST_CASE("representativity propagates alignment through merges") {
    // merge(0,1)=2; 3 aligns with 0 but not with 2: Rl fails.
    TableSystem system(
        {"a", "b", "m", "outside"},
        {{true, true, false, true},
         {true, true, false, false},
         {false, false, true, false},
         {true, false, false, true}},
        {{def(0), def(2), undef(), def(3)},
         {def(2), def(1), undef(), undef()},
         {undef(), undef(), def(2), undef()},
         {def(3), undef(), undef(), def(3)}});
    CHECK_FALSE(check_property(system, PropertyId::Rl).holds);
    CHECK_FALSE(check_property(system, PropertyId::R).holds);
}

TEST_CASE("the implication audit is quiet on a coherent report") {
    TableSystem system({"a"}, {{true}}, {{def(0)}});
    auto reports = check_all_properties(system);
    ImplicationAudit audit = audit_implications(reports);
    CHECK(audit.consistent);
    CHECK(audit.violations.empty());
}

TEST_CASE("the implication audit flags fabricated inconsistencies") {
    TableSystem system({"a"}, {{true}}, {{def(0)}});
    auto reports = check_all_properties(system);
    // claim SA holds but A fails — impossible
    reports.at(PropertyId::A).holds = false;
    ImplicationAudit audit = audit_implications(reports);
    CHECK_FALSE(audit.consistent);
    CHECK_FALSE(audit.violations.empty());
}

TEST_CASE("verify_report bundles the reports with a clean audit") {
    DisjointUnionSystem system({"a"}, 3);
    VerifiedReport verified = verify_report(system);
    CHECK(verified.audit.consistent);
    CHECK_FALSE(verified.reports.at(PropertyId::I).holds);
    CHECK(verified.reports.at(PropertyId::SA).holds);
}

TEST_CASE("random systems never trip the implication audit") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        TableSystem system = random_table_system(seed);
        VerifiedReport verified = verify_report(system);
        CHECK(verified.audit.consistent);
    }
}

TEST_CASE("null extension associativity matches strong associativity") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        TableSystem system = random_table_system(seed);
        bool sa = check_property(system, PropertyId::SA).holds;
        NullExtendedSystem extended(system);
        auto failure = null_extension_associativity_counterexample(extended);
        CHECK(sa == !failure.has_value());
        if (failure) {
            // replay the failing triple on the totalized merge
            auto [a, b, c] = *failure;
            CHECK(extended.merge(extended.merge(a, b), c) !=
                  extended.merge(a, extended.merge(b, c)));
        }
    }
}

TEST_CASE("large carriers require an explicit override for triple scans") {
    DisjointUnionSystem large({"a", "b", "c"}, 5);  // 6^3 = 216 elements
    CHECK_THROWS_AS(check_property(large, PropertyId::SA), PreconditionFailed);
    CHECK_NOTHROW(check_property(large, PropertyId::I));  // unary scan is fine
    PropertyReport report = check_property(large, PropertyId::SA, nullptr, true);
    CHECK(report.holds);
}

TEST_CASE("the order theorem certifies the diamond and rejects a discrete order") {
    OverlapUnionSystem system = example_overlap_diamond();
    Order containment = system.containment_order();
    OrderTheoremReport good = check_order_theorem(system, containment);
    CHECK(good.certified);
    CHECK(good.biconditional_ok);
    CHECK(good.lub_cp_holds);
    CHECK(good.properties_hold);
    CHECK(good.order_equals_natural);

    // the discrete order is a partial order but not the natural one: LU fails
    Order discrete(system.size(), std::vector<bool>(system.size(), false));
    for (std::size_t i = 0; i < system.size(); ++i) discrete[i][i] = true;
    OrderTheoremReport bad = check_order_theorem(system, discrete);
    CHECK_FALSE(bad.certified);
    CHECK(bad.biconditional_ok);  // both sides false together
    CHECK_FALSE(bad.lub_cp_holds);
    CHECK_FALSE(bad.reports.at(PropertyId::LU).holds);
    CHECK_FALSE(bad.order_equals_natural);
}

TEST_CASE("the order theorem needs reflexive, symmetric alignment") {
    TableSystem asym({"a", "b"}, {{true, true}, {false, true}},
                     {{def(0), def(1)}, {undef(), def(1)}});
    Order order = {{true, false}, {false, true}};
    CHECK_THROWS_AS(check_order_theorem(asym, order), PreconditionFailed);
}

TEST_CASE("natural order of a certified system is a partial order equal to the input") {
    OverlapUnionSystem system = example_overlap_diamond();
    Order natural = natural_order(system);
    validate_order(system, natural);
    CHECK(natural == system.containment_order());
}
