#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ontomerge/merging_system.hpp"
#include "ontomerge/ontology.hpp"

namespace ontomerge {

// Multisets of tagged atoms under disjoint union, with per-atom counts
// saturating at a cap so the carrier stays finite. Every pair aligns. The
// merge is associative and commutative but not idempotent: merging an
// element with itself doubles its counts (until saturation), so this system
// is the standard witness that idempotency fails for plain disjoint union.
class DisjointUnionSystem : public MergingSystem {
public:
    DisjointUnionSystem(std::vector<std::string> atom_tags, std::size_t cap);

    std::size_t size() const override { return elements_.size(); }
    bool aligns(std::size_t a, std::size_t b) const override;
    MergeOutcome merge(std::size_t a, std::size_t b) const override;
    std::string element_name(std::size_t index) const override;

    const std::vector<std::size_t>& counts_of(std::size_t index) const;
    std::size_t index_of_counts(const std::vector<std::size_t>& counts) const;
    // The element as an ontology: counts[i] concepts carrying atom tag i.
    Ontology representative(std::size_t index) const;
    // counts(a) <= counts(b) pointwise; merge is *not* a least upper bound
    // for this order, which makes the system a witness against (LU).
    std::vector<std::vector<bool>> pointwise_order() const;

private:
    std::vector<std::string> atom_tags_;
    std::size_t cap_;
    std::vector<std::vector<std::size_t>> elements_;
};

// A fixed family of ontologies over a shared vocabulary (identical ids mean
// identical elements), merged by union. Two members align exactly when
// their union is again a member, so the carrier is merge-closed by
// construction; union is a join in the containment order.
class OverlapUnionSystem : public MergingSystem {
public:
    explicit OverlapUnionSystem(std::vector<std::pair<std::string, Ontology>> members);

    std::size_t size() const override { return members_.size(); }
    bool aligns(std::size_t a, std::size_t b) const override;
    MergeOutcome merge(std::size_t a, std::size_t b) const override;
    std::string element_name(std::size_t index) const override;

    const Ontology& representative(std::size_t index) const;
    // leq(a, b) when every element of a occurs in b.
    std::vector<std::vector<bool>> containment_order() const;

private:
    std::vector<std::string> names_;
    std::vector<Ontology> members_;
    std::vector<std::vector<MergeOutcome>> merges_;
};

// Keyed tables merged by full outer join. An element is a conflict-free set
// of (key, value) rows drawn from a fixed universe; two tables align when
// their union assigns at most one value per key, and merging takes the
// union. With a conflict-free universe every pair aligns and all properties
// hold; with conflicting rows in the universe, alignment is genuinely
// partial and catenary associativity and representativity fail while strong
// associativity survives.
class TableJoinSystem : public MergingSystem {
public:
    struct Row {
        std::string key;
        std::string value;

        friend auto operator<=>(const Row&, const Row&) = default;
    };

    explicit TableJoinSystem(std::vector<Row> universe);

    std::size_t size() const override { return elements_.size(); }
    bool aligns(std::size_t a, std::size_t b) const override;
    MergeOutcome merge(std::size_t a, std::size_t b) const override;
    std::string element_name(std::size_t index) const override;

    const std::vector<Row>& rows_of(std::size_t index) const;
    std::size_t index_of_rows(const std::vector<Row>& rows) const;
    std::vector<std::vector<bool>> subset_order() const;

private:
    bool compatible(std::size_t a, std::size_t b) const;

    std::vector<Row> universe_;
    std::vector<std::vector<Row>> elements_;
};

// Ready-made instances used in documentation and tests.
DisjointUnionSystem example_disjoint_union();
OverlapUnionSystem example_overlap_diamond();
TableJoinSystem example_keyed_tables();
TableJoinSystem example_keyed_tables_conflicting();

}  // namespace ontomerge
