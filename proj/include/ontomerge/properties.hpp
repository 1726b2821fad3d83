#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ontomerge/merging_system.hpp"

namespace ontomerge {

// Algebraic properties of a merging system, checked by exhausting the
// carrier. The short names follow the usual algebraic reading:
//   I    idempotency: every element self-aligns and self-merges to itself
//   C    commutativity of alignment and merge
//   A    associativity when both groupings happen to be defined
//   CA   catenary associativity: a~b and b~c already force both groupings
//   SA   strong associativity: the groupings are defined together and equal
//   Rl   merge results inherit alignments into the left operand
//   Rr   merge results inherit alignments out of the left operand
//   R    Rl and Rr
//   LU   merge is the least upper bound for a supplied order
//   CPl  the supplied order is left compatible with alignment and merge
//   CPr  right compatibility
//   CP   CPl and CPr
enum class PropertyId { I, C, A, CA, SA, Rl, Rr, R, LU, CPl, CPr, CP };

std::string to_string(PropertyId property);
std::optional<PropertyId> parse_property(const std::string& text);
std::vector<PropertyId> all_properties();
// Number of carrier elements quantified over (witness tuple length).
std::size_t property_arity(PropertyId property);
// LU, CPl, CPr and CP are stated against an order; the rest are not.
bool property_needs_order(PropertyId property);

// Relation matrix over the carrier; order[a][b] means a is below b.
using Order = std::vector<std::vector<bool>>;

// Throws PreconditionFailed unless the matrix is square of the carrier size
// and reflexive, antisymmetric, and transitive.
void validate_order(const MergingSystem& system, const Order& order);

// a <= b iff both alignments hold and both merge orders give exactly b.
Order natural_order(const MergingSystem& system);

struct Counterexample {
    std::vector<std::size_t> elements;  // witness tuple, property_arity long
    std::string detail;
};

struct PropertyReport {
    PropertyId property;
    bool holds = false;
    std::size_t cases_checked = 0;
    std::optional<Counterexample> counterexample;
};

// Re-evaluates the property at one witness tuple; nullopt when the tuple
// satisfies the property, otherwise a description of the violation. This is
// the same predicate the exhaustive check runs, so any reported
// counterexample can be replayed independently.
std::optional<std::string> property_violation_at(const MergingSystem& system, PropertyId property,
                                                 const std::vector<std::size_t>& witness,
                                                 const Order* order = nullptr);

// Triple scans are cubic in the carrier size; carriers above 200 elements are
// rejected unless allow_large is set, to keep accidental long runs rare.
// Throws OrderRequired when an order-relative property is checked without one.
PropertyReport check_property(const MergingSystem& system, PropertyId property,
                              const Order* order = nullptr, bool allow_large = false);

// Non-order properties, plus the order-relative ones when an order is given.
std::map<PropertyId, PropertyReport> check_all_properties(const MergingSystem& system,
                                                          const Order* order = nullptr,
                                                          bool allow_large = false);

// Cross-checks the known implications between property verdicts:
// SA implies A, CA implies A, and under C, CA holds exactly when A and R do.
struct ImplicationAudit {
    bool consistent = true;
    std::vector<std::string> violations;
};

ImplicationAudit audit_implications(const std::map<PropertyId, PropertyReport>& reports);

// Every checkable property plus the implication audit in one call. An
// inconsistent audit indicates a defect in the checker itself, not in the
// system under test.
struct VerifiedReport {
    std::map<PropertyId, PropertyReport> reports;
    ImplicationAudit audit;
};

VerifiedReport verify_report(const MergingSystem& system, const Order* order = nullptr,
                             bool allow_large = false);

// First associativity failure of the totalized system, if any. The base
// system is strongly associative exactly when this returns nullopt.
std::optional<std::array<std::size_t, 3>> null_extension_associativity_counterexample(
    const NullExtendedSystem& extended);

// The supplied order satisfies LU and CP exactly when the system satisfies
// I, C, A and R and the order is the one induced by merging. Preconditions:
// alignment reflexive and symmetric, and `order` a partial order.
struct OrderTheoremReport {
    std::map<PropertyId, PropertyReport> reports;  // I, C, A, R, LU, CPl, CPr
    bool lub_cp_holds = false;        // left-hand side: LU and CP for the order
    bool properties_hold = false;     // I, C, A and R
    bool order_equals_natural = false;
    bool certified = false;           // everything above is true
    bool biconditional_ok = false;    // the two sides agree
    std::string diagnosis;
};

OrderTheoremReport check_order_theorem(const MergingSystem& system, const Order& order);

}  // namespace ontomerge
