#include "ontomerge/properties.hpp"

#include <algorithm>

#include "ontomerge/errors.hpp"

namespace ontomerge {

namespace {

struct PropertyInfo {
    PropertyId id;
    const char* name;
    std::size_t arity;
    bool needs_order;
};

constexpr PropertyInfo kProperties[] = {
    {PropertyId::I, "I", 1, false},    {PropertyId::C, "C", 2, false},
    {PropertyId::A, "A", 3, false},    {PropertyId::CA, "CA", 3, false},
    {PropertyId::SA, "SA", 3, false},  {PropertyId::Rl, "Rl", 3, false},
    {PropertyId::Rr, "Rr", 3, false},  {PropertyId::R, "R", 3, false},
    {PropertyId::LU, "LU", 3, true},   {PropertyId::CPl, "CPl", 3, true},
    {PropertyId::CPr, "CPr", 3, true}, {PropertyId::CP, "CP", 3, true},
};

const PropertyInfo& info(PropertyId property) {
    for (const auto& entry : kProperties)
        if (entry.id == property) return entry;
    throw Error("unknown property id");
}

std::string name_of(const MergingSystem& system, std::size_t index) {
    return system.element_name(index);
}

// merge(left, c) where left may already be undefined.
MergeOutcome chain(const MergingSystem& system, const MergeOutcome& left, std::size_t c) {
    if (!left.is_defined()) return MergeOutcome::undefined();
    return system.merge(left.value(), c);
}

std::optional<std::string> check_idempotency(const MergingSystem& system, std::size_t a) {
    if (!system.aligns(a, a))
        return name_of(system, a) + " does not align with itself";
    MergeOutcome self = system.merge(a, a);
    if (!self.is_defined())
        return name_of(system, a) + " aligns with itself but the self-merge is undefined";
    if (self.value() != a)
        return "merging " + name_of(system, a) + " with itself yields " +
               name_of(system, self.value()) + " instead of itself";
    return std::nullopt;
}

std::optional<std::string> check_commutativity(const MergingSystem& system, std::size_t a,
                                               std::size_t b) {
    if (system.aligns(a, b) != system.aligns(b, a))
        return "alignment of " + name_of(system, a) + " and " + name_of(system, b) +
               " is not symmetric";
    MergeOutcome ab = system.merge(a, b);
    MergeOutcome ba = system.merge(b, a);
    if (ab.is_defined() != ba.is_defined())
        return "merge of " + name_of(system, a) + " and " + name_of(system, b) +
               " is defined in one order only";
    if (ab.is_defined() && ab.value() != ba.value())
        return "merging " + name_of(system, a) + " and " + name_of(system, b) +
               " depends on the operand order";
    return std::nullopt;
}

std::optional<std::string> check_associativity(const MergingSystem& system, std::size_t a,
                                               std::size_t b, std::size_t c) {
    MergeOutcome lhs = chain(system, system.merge(a, b), c);
    MergeOutcome bc = system.merge(b, c);
    MergeOutcome rhs = bc.is_defined() ? system.merge(a, bc.value()) : MergeOutcome::undefined();
    if (lhs.is_defined() && rhs.is_defined() && lhs.value() != rhs.value())
        return "both groupings of " + name_of(system, a) + ", " + name_of(system, b) + ", " +
               name_of(system, c) + " are defined but differ: " + name_of(system, lhs.value()) +
               " vs " + name_of(system, rhs.value());
    return std::nullopt;
}

std::optional<std::string> check_catenary(const MergingSystem& system, std::size_t a,
                                          std::size_t b, std::size_t c) {
    MergeOutcome ab = system.merge(a, b);
    MergeOutcome bc = system.merge(b, c);
    if (!ab.is_defined() || !bc.is_defined()) return std::nullopt;
    MergeOutcome lhs = chain(system, ab, c);
    MergeOutcome rhs = system.merge(a, bc.value());
    if (!lhs.is_defined())
        return name_of(system, a) + "+" + name_of(system, b) + " and " + name_of(system, b) +
               "+" + name_of(system, c) + " are defined but (" + name_of(system, a) + "+" +
               name_of(system, b) + ")+" + name_of(system, c) + " is not";
    if (!rhs.is_defined())
        return name_of(system, a) + "+" + name_of(system, b) + " and " + name_of(system, b) +
               "+" + name_of(system, c) + " are defined but " + name_of(system, a) + "+(" +
               name_of(system, b) + "+" + name_of(system, c) + ") is not";
    if (lhs.value() != rhs.value())
        return "groupings of " + name_of(system, a) + ", " + name_of(system, b) + ", " +
               name_of(system, c) + " differ: " + name_of(system, lhs.value()) + " vs " +
               name_of(system, rhs.value());
    return std::nullopt;
}

std::optional<std::string> check_strong(const MergingSystem& system, std::size_t a, std::size_t b,
                                        std::size_t c) {
    MergeOutcome lhs = chain(system, system.merge(a, b), c);
    MergeOutcome bc = system.merge(b, c);
    MergeOutcome rhs = bc.is_defined() ? system.merge(a, bc.value()) : MergeOutcome::undefined();
    if (lhs.is_defined() != rhs.is_defined())
        return "one grouping of " + name_of(system, a) + ", " + name_of(system, b) + ", " +
               name_of(system, c) + " is defined and the other is not";
    if (lhs.is_defined() && lhs.value() != rhs.value())
        return "groupings of " + name_of(system, a) + ", " + name_of(system, b) + ", " +
               name_of(system, c) + " differ: " + name_of(system, lhs.value()) + " vs " +
               name_of(system, rhs.value());
    return std::nullopt;
}

std::optional<std::string> check_repr_left(const MergingSystem& system, std::size_t a,
                                           std::size_t b, std::size_t x) {
    MergeOutcome m = system.merge(a, b);
    if (!m.is_defined()) return std::nullopt;
    if (system.aligns(x, a) && !system.aligns(x, m.value()))
        return name_of(system, x) + " aligns with " + name_of(system, a) +
               " but not with its merge result " + name_of(system, m.value());
    return std::nullopt;
}

std::optional<std::string> check_repr_right(const MergingSystem& system, std::size_t a,
                                            std::size_t b, std::size_t x) {
    MergeOutcome m = system.merge(a, b);
    if (!m.is_defined()) return std::nullopt;
    if (system.aligns(a, x) && !system.aligns(m.value(), x))
        return name_of(system, a) + " aligns with " + name_of(system, x) +
               " but the merge result " + name_of(system, m.value()) + " does not";
    return std::nullopt;
}

std::optional<std::string> check_lub(const MergingSystem& system, const Order& order,
                                     std::size_t a, std::size_t b, std::size_t u) {
    if (!system.aligns(a, b)) return std::nullopt;
    MergeOutcome m = system.merge(a, b);
    if (!m.is_defined())
        return name_of(system, a) + " aligns with " + name_of(system, b) +
               " but their merge is undefined";
    if (!order[a][m.value()] || !order[b][m.value()])
        return name_of(system, m.value()) + " is not an upper bound of " + name_of(system, a) +
               " and " + name_of(system, b);
    if (order[a][u] && order[b][u] && !order[m.value()][u])
        return name_of(system, u) + " bounds " + name_of(system, a) + " and " +
               name_of(system, b) + " but does not bound their merge " +
               name_of(system, m.value());
    return std::nullopt;
}

std::optional<std::string> check_compat_left(const MergingSystem& system, const Order& order,
                                             std::size_t a, std::size_t b, std::size_t x) {
    if (!order[a][b] || !system.aligns(x, a)) return std::nullopt;
    if (!system.aligns(x, b))
        return name_of(system, a) + " is below " + name_of(system, b) + " and " +
               name_of(system, x) + " aligns with " + name_of(system, a) + " but not with " +
               name_of(system, b);
    MergeOutcome lower = system.merge(x, a);
    MergeOutcome upper = system.merge(x, b);
    if (!lower.is_defined() || !upper.is_defined())
        return "aligned merge of " + name_of(system, x) + " with " + name_of(system, a) + " or " +
               name_of(system, b) + " is undefined";
    if (!order[lower.value()][upper.value()])
        return "merging " + name_of(system, x) + " into " + name_of(system, a) + " and " +
               name_of(system, b) + " does not preserve the order";
    return std::nullopt;
}

std::optional<std::string> check_compat_right(const MergingSystem& system, const Order& order,
                                              std::size_t a, std::size_t b, std::size_t x) {
    if (!order[a][b] || !system.aligns(a, x)) return std::nullopt;
    if (!system.aligns(b, x))
        return name_of(system, a) + " is below " + name_of(system, b) + " and aligns with " +
               name_of(system, x) + " but " + name_of(system, b) + " does not";
    MergeOutcome lower = system.merge(a, x);
    MergeOutcome upper = system.merge(b, x);
    if (!lower.is_defined() || !upper.is_defined())
        return "aligned merge of " + name_of(system, a) + " or " + name_of(system, b) +
               " with " + name_of(system, x) + " is undefined";
    if (!order[lower.value()][upper.value()])
        return "merging " + name_of(system, a) + " and " + name_of(system, b) + " into " +
               name_of(system, x) + " does not preserve the order";
    return std::nullopt;
}

std::optional<std::string> merge_first(std::optional<std::string> first,
                                       std::optional<std::string> second) {
    return first ? first : second;
}

}  // namespace

std::string to_string(PropertyId property) { return info(property).name; }

std::optional<PropertyId> parse_property(const std::string& text) {
    for (const auto& entry : kProperties)
        if (text == entry.name) return entry.id;
    return std::nullopt;
}

std::vector<PropertyId> all_properties() {
    std::vector<PropertyId> out;
    for (const auto& entry : kProperties) out.push_back(entry.id);
    return out;
}

std::size_t property_arity(PropertyId property) { return info(property).arity; }

bool property_needs_order(PropertyId property) { return info(property).needs_order; }

void validate_order(const MergingSystem& system, const Order& order) {
    std::size_t n = system.size();
    if (order.size() != n) throw PreconditionFailed("order matrix does not match the carrier");
    for (const auto& row : order)
        if (row.size() != n) throw PreconditionFailed("order matrix is not square");
    for (std::size_t a = 0; a < n; ++a)
        if (!order[a][a]) throw PreconditionFailed("order is not reflexive");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b && order[a][b] && order[b][a])
                throw PreconditionFailed("order is not antisymmetric");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (!order[a][b]) continue;
            for (std::size_t c = 0; c < n; ++c)
                if (order[b][c] && !order[a][c])
                    throw PreconditionFailed("order is not transitive");
        }
}

Order natural_order(const MergingSystem& system) {
    std::size_t n = system.size();
    Order leq(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) leq[a][b] = natural_leq(system, a, b);
    return leq;
}

std::optional<std::string> property_violation_at(const MergingSystem& system, PropertyId property,
                                                 const std::vector<std::size_t>& witness,
                                                 const Order* order) {
    if (witness.size() != property_arity(property))
        throw PreconditionFailed("witness tuple has the wrong arity");
    for (std::size_t index : witness)
        if (index >= system.size()) throw UnknownElement("witness index out of range");
    if (property_needs_order(property)) {
        if (order == nullptr)
            throw OrderRequired("property " + to_string(property) + " requires an order");
        if (order->size() != system.size())
            throw PreconditionFailed("order matrix does not match the carrier");
    }
    switch (property) {
        case PropertyId::I:
            return check_idempotency(system, witness[0]);
        case PropertyId::C:
            return check_commutativity(system, witness[0], witness[1]);
        case PropertyId::A:
            return check_associativity(system, witness[0], witness[1], witness[2]);
        case PropertyId::CA:
            return check_catenary(system, witness[0], witness[1], witness[2]);
        case PropertyId::SA:
            return check_strong(system, witness[0], witness[1], witness[2]);
        case PropertyId::Rl:
            return check_repr_left(system, witness[0], witness[1], witness[2]);
        case PropertyId::Rr:
            return check_repr_right(system, witness[0], witness[1], witness[2]);
        case PropertyId::R:
            return merge_first(check_repr_left(system, witness[0], witness[1], witness[2]),
                               check_repr_right(system, witness[0], witness[1], witness[2]));
        case PropertyId::LU:
            return check_lub(system, *order, witness[0], witness[1], witness[2]);
        case PropertyId::CPl:
            return check_compat_left(system, *order, witness[0], witness[1], witness[2]);
        case PropertyId::CPr:
            return check_compat_right(system, *order, witness[0], witness[1], witness[2]);
        case PropertyId::CP:
            return merge_first(check_compat_left(system, *order, witness[0], witness[1], witness[2]),
                               check_compat_right(system, *order, witness[0], witness[1],
                                                  witness[2]));
    }
    throw Error("unknown property id");
}

PropertyReport check_property(const MergingSystem& system, PropertyId property,
                              const Order* order, bool allow_large) {
    if (property_needs_order(property)) {
        if (order == nullptr)
            throw OrderRequired("property " + to_string(property) + " requires an order");
        validate_order(system, *order);
    }
    if (!allow_large && property_arity(property) >= 3 && system.size() > 200)
        throw PreconditionFailed("carrier has " + std::to_string(system.size()) +
                                 " elements; triple scans above 200 need allow_large");
    PropertyReport report{property, true, 0, std::nullopt};
    std::size_t n = system.size();
    std::size_t arity = property_arity(property);
    std::vector<std::size_t> witness(arity, 0);
    if (n == 0) return report;
    while (true) {
        ++report.cases_checked;
        if (auto violation = property_violation_at(system, property, witness, order)) {
            report.holds = false;
            report.counterexample = Counterexample{witness, *violation};
            return report;
        }
        std::size_t pos = arity;
        while (pos > 0 && witness[pos - 1] + 1 == n) witness[--pos] = 0;
        if (pos == 0) break;
        ++witness[pos - 1];
    }
    return report;
}

std::map<PropertyId, PropertyReport> check_all_properties(const MergingSystem& system,
                                                          const Order* order, bool allow_large) {
    std::map<PropertyId, PropertyReport> reports;
    for (PropertyId property : all_properties()) {
        if (property_needs_order(property) && order == nullptr) continue;
        reports.emplace(property, check_property(system, property, order, allow_large));
    }
    return reports;
}

VerifiedReport verify_report(const MergingSystem& system, const Order* order, bool allow_large) {
    VerifiedReport verified;
    verified.reports = check_all_properties(system, order, allow_large);
    verified.audit = audit_implications(verified.reports);
    return verified;
}

ImplicationAudit audit_implications(const std::map<PropertyId, PropertyReport>& reports) {
    ImplicationAudit audit;
    auto holds = [&](PropertyId id) -> std::optional<bool> {
        auto it = reports.find(id);
        if (it == reports.end()) return std::nullopt;
        return it->second.holds;
    };
    auto sa = holds(PropertyId::SA);
    auto ca = holds(PropertyId::CA);
    auto a = holds(PropertyId::A);
    auto c = holds(PropertyId::C);
    auto r = holds(PropertyId::R);
    if (sa && a && *sa && !*a)
        audit.violations.push_back("SA holds but A fails");
    if (ca && a && *ca && !*a)
        audit.violations.push_back("CA holds but A fails");
    if (c && ca && a && r && *c && (*ca != (*a && *r)))
        audit.violations.push_back("under C, CA must hold exactly when A and R both hold");
    audit.consistent = audit.violations.empty();
    return audit;
}

std::optional<std::array<std::size_t, 3>> null_extension_associativity_counterexample(
    const NullExtendedSystem& extended) {
    std::size_t n = extended.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                std::size_t lhs = extended.merge(extended.merge(a, b), c);
                std::size_t rhs = extended.merge(a, extended.merge(b, c));
                if (lhs != rhs) return std::array{a, b, c};
            }
    return std::nullopt;
}

OrderTheoremReport check_order_theorem(const MergingSystem& system, const Order& order) {
    validate_order(system, order);
    for (std::size_t a = 0; a < system.size(); ++a) {
        if (!system.aligns(a, a))
            throw PreconditionFailed("the order theorem requires reflexive alignment");
        for (std::size_t b = 0; b < system.size(); ++b)
            if (system.aligns(a, b) != system.aligns(b, a))
                throw PreconditionFailed("the order theorem requires symmetric alignment");
    }

    OrderTheoremReport report;
    for (PropertyId property : {PropertyId::I, PropertyId::C, PropertyId::A, PropertyId::R})
        report.reports.emplace(property, check_property(system, property));
    for (PropertyId property : {PropertyId::LU, PropertyId::CPl, PropertyId::CPr})
        report.reports.emplace(property, check_property(system, property, &order));

    auto holds = [&](PropertyId id) { return report.reports.at(id).holds; };
    report.lub_cp_holds = holds(PropertyId::LU) && holds(PropertyId::CPl) && holds(PropertyId::CPr);
    report.properties_hold =
        holds(PropertyId::I) && holds(PropertyId::C) && holds(PropertyId::A) && holds(PropertyId::R);
    report.order_equals_natural = order == natural_order(system);
    bool rhs = report.properties_hold && report.order_equals_natural;
    report.biconditional_ok = report.lub_cp_holds == rhs;
    report.certified = report.lub_cp_holds && rhs;

    if (report.certified) {
        report.diagnosis =
            "certified: merge yields least upper bounds, the order is compatible with alignment "
            "and merge, and it coincides with the merge-induced order";
    } else {
        std::vector<std::string> parts;
        for (const auto& [property, property_report] : report.reports) {
            if (property_report.holds) continue;
            std::string part = to_string(property) + " fails";
            if (property_report.counterexample)
                part += " (" + property_report.counterexample->detail + ")";
            parts.push_back(part);
        }
        if (!report.order_equals_natural)
            parts.push_back("the supplied order differs from the merge-induced order");
        if (!report.biconditional_ok)
            parts.push_back("theorem audit violated: the two sides of the equivalence disagree");
        report.diagnosis = "not certified: ";
        for (std::size_t i = 0; i < parts.size(); ++i)
            report.diagnosis += (i ? "; " : "") + parts[i];
    }
    return report;
}

}  // namespace ontomerge
