#pragma once

#include <vector>

#include "ontomerge/alignment.hpp"

namespace ontomerge {

// Merged ontology together with the two injections out of the operands.
struct PushoutResult {
    Ontology merged;
    Homomorphism inject_left;   // left operand  -> merged
    Homomorphism inject_right;  // right operand -> merged
};

// Apex of a pullback together with its projections.
struct PullbackResult {
    Ontology apex;
    Homomorphism proj_left;   // apex -> left.source
    Homomorphism proj_right;  // apex -> right.source
};

// Pushout of the span: the quotient of the disjoint union of the two sides
// by the smallest equivalence generated by identifying r1(b) with r2(b) for
// every base element b. A merged class keeps the lexicographically least
// member id (with deterministic disambiguation across classes) and the
// lexicographically least label its members carry.
PushoutResult pushout(const VAlignmentPair& pair);

// Pullback of a cospan left: B' -> X, right: B -> X (same target). The apex
// has one concept per pair of concepts with equal image and one relation per
// pair of relations with equal image.
PullbackResult pullback(const Homomorphism& left, const Homomorphism& right);

// Coproduct: pushout over the empty base.
PushoutResult coproduct(const Ontology& left, const Ontology& right);

// Unique map out of a pushout determined by a commuting cocone
// (cocone_left after pair.left equals cocone_right after pair.right, with a
// shared target). Throws CoconeDoesNotCommute otherwise.
Homomorphism mediating_hom(const VAlignmentPair& pair, const PushoutResult& square,
                           const Homomorphism& cocone_left, const Homomorphism& cocone_right);

// Functorial action on merges: the map between the pushouts of the source
// and destination pairs induced by a morphism of alignment pairs.
Homomorphism induced_merge_hom(const AlignmentPairHom& pair_hom, const PushoutResult& src_square,
                               const PushoutResult& dst_square);

// Alignments of the freshly merged ontology with previously known ontologies:
// for every known pair with one side equal to an operand of the merge, the
// lifted pair (composing that side with the injection) and the pullback-form
// pair (restricting to the part of the operand shared with the merge base),
// plus the reflexive pair on the merged ontology itself.
std::vector<VAlignmentPair> derive_alignments(const std::vector<VAlignmentPair>& known,
                                              const VAlignmentPair& merged_pair,
                                              const PushoutResult& merge);

// Witness that `below` sits under `above` in the merge order: a pair over
// base `below` whose two legs are the identity and a homomorphism into
// `above`. Merging over it yields `above` again (in either order), so the
// witness exists exactly when some homomorphism below -> above exists.
// nullopt when there is none; throws BudgetExceeded if the search runs out.
std::optional<VAlignmentPair> sub_merge_witness(const Ontology& below, const Ontology& above,
                                                std::size_t budget = 5'000'000);

}  // namespace ontomerge
