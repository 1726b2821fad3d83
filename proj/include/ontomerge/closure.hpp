#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "ontomerge/alignment.hpp"
#include "ontomerge/canonical.hpp"
#include "ontomerge/category_ops.hpp"
#include "ontomerge/merging_system.hpp"

namespace ontomerge {

// Seed ontologies plus the explicitly known alignments between them. Every
// alignment operand must structurally equal one of the ontologies.
struct Repository {
    std::vector<Ontology> ontologies;
    std::vector<VAlignmentPair> alignments;
};

struct ClosureLimits {
    std::size_t max_members = 10'000;
    std::size_t max_element_size = 512;
    std::size_t max_rounds = 64;
};

// Worklist direction inside a round. The computed closure is identical for
// both; the knob exists so determinism is testable.
enum class WorklistOrder { forward, reverse };

struct ClosureOptions {
    WorklistOrder order = WorklistOrder::forward;
};

// One recorded merge: result arose as left merged with right (keys of
// isomorphism classes, left <= right).
struct ProvenanceEdge {
    CanonicalKey left;
    CanonicalKey right;
    CanonicalKey result;

    friend auto operator<=>(const ProvenanceEdge&, const ProvenanceEdge&) = default;
};

// The merging closure of a repository: every ontology reachable by repeated
// merging, one representative per isomorphism class.
//
// The alignment pool holds one correspondence per ordered pair of member
// keys: the union of everything known about how the two members overlap
// (explicit alignments, reflexive identifications, and alignments lifted
// through merges). Merging a pair uses that combined correspondence, which
// identifies as much as is known. Self-correspondences are always exactly
// the identity.
struct ClosureResult {
    std::map<CanonicalKey, Ontology> members;
    std::set<CanonicalKey> repository_keys;
    // Least n such that the member is reachable by n-1 nested merges of
    // repository members; repository members have layer 1.
    std::map<CanonicalKey, std::size_t> layers;
    std::vector<ProvenanceEdge> provenance;
    std::map<std::pair<CanonicalKey, CanonicalKey>, Correspondence> alignment_pool;
    std::size_t rounds = 0;
    bool complete = true;
};

// Thrown when a closure limit trips; carries the partial result computed so
// far (with complete == false).
class LimitExceeded : public Error {
public:
    enum class Kind { members, element_size, rounds };

    LimitExceeded(Kind kind, std::string message, ClosureResult partial)
        : Error(std::move(message)), kind_(kind), partial_(std::move(partial)) {}

    Kind kind() const { return kind_; }
    const ClosureResult& partial() const { return partial_; }

private:
    Kind kind_;
    ClosureResult partial_;
};

ClosureResult compute_closure(const Repository& repository, const ClosureLimits& limits = {},
                              const ClosureOptions& options = {});

// Binary derivation tree of a member: leaves are repository members, inner
// nodes are merges. Built from a minimal-layer decomposition.
struct MergeTree {
    CanonicalKey key;
    std::vector<MergeTree> children;  // empty or exactly two

    std::size_t leaf_count() const;
};

MergeTree provenance_of(const ClosureResult& closure, const CanonicalKey& key);

// Stable display names for closure members: m000, m001, ... by sorted key.
std::map<CanonicalKey, std::string> member_names(const ClosureResult& closure);

// The closure viewed as a merging system: the carrier is the sorted member
// keys, alignment is presence in the pool, and merging computes the pushout
// over the pooled correspondence and interns the result. Element equality is
// therefore isomorphism-class equality.
class PushoutClosureSystem : public MergingSystem {
public:
    explicit PushoutClosureSystem(ClosureResult closure);

    std::size_t size() const override { return keys_.size(); }
    bool aligns(std::size_t a, std::size_t b) const override;
    MergeOutcome merge(std::size_t a, std::size_t b) const override;
    std::string element_name(std::size_t index) const override;

    const ClosureResult& closure() const { return closure_; }
    const CanonicalKey& key_of(std::size_t index) const;
    std::size_t index_of(const CanonicalKey& key) const;
    const Ontology& representative(std::size_t index) const;

private:
    ClosureResult closure_;
    std::vector<CanonicalKey> keys_;
    std::map<CanonicalKey, std::size_t> index_;
    mutable std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo_;
};

}  // namespace ontomerge
