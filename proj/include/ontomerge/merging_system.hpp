#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ontomerge/errors.hpp"

namespace ontomerge {

// Result of a merge in an abstract system: either an element of the carrier
// or undefined. The undefined outcome is a distinct sentinel, never equal to
// any element.
class MergeOutcome {
public:
    static MergeOutcome defined(std::size_t element) { return MergeOutcome(element); }
    static MergeOutcome undefined() { return MergeOutcome(); }

    bool is_defined() const { return value_.has_value(); }
    std::size_t value() const {
        if (!value_) throw Error("merge outcome is undefined");
        return *value_;
    }

    friend bool operator==(const MergeOutcome&, const MergeOutcome&) = default;

private:
    MergeOutcome() = default;
    explicit MergeOutcome(std::size_t element) : value_(element) {}

    std::optional<std::size_t> value_;
};

// A finite merging system: a carrier indexed 0..size()-1, an alignment
// predicate, and a partial merge defined exactly on aligned pairs. Equality
// of elements is index equality; concrete systems intern their elements so
// that indices carry the intended identification (for the pushout-backed
// system an index is an isomorphism class).
class MergingSystem {
public:
    virtual ~MergingSystem() = default;

    virtual std::size_t size() const = 0;
    virtual bool aligns(std::size_t a, std::size_t b) const = 0;
    // Must return a defined outcome exactly when aligns(a, b).
    virtual MergeOutcome merge(std::size_t a, std::size_t b) const = 0;
    // Stable display name, used in diagnostics and counterexamples.
    virtual std::string element_name(std::size_t index) const {
        return "#" + std::to_string(index);
    }
};

// Bounds-checked merge evaluation.
MergeOutcome evaluate_merge(const MergingSystem& system, std::size_t a, std::size_t b);

// The natural order induced by merging: a <= b iff both alignments hold and
// both merge orders yield exactly b.
bool natural_leq(const MergingSystem& system, std::size_t a, std::size_t b);

// Total extension of a system with an absorbing top element: the extended
// carrier appends one index for it; merges that were undefined, and every
// merge touching the top, yield the top. Alignment is unchanged on the base
// carrier, the top aligns only with itself.
class NullExtendedSystem {
public:
    explicit NullExtendedSystem(const MergingSystem& base) : base_(base) {}

    std::size_t size() const { return base_.size() + 1; }
    std::size_t top() const { return base_.size(); }

    bool aligns(std::size_t a, std::size_t b) const;
    // Total: always yields an element of the extended carrier.
    std::size_t merge(std::size_t a, std::size_t b) const;

    std::string element_name(std::size_t index) const {
        return index == top() ? "<top>" : base_.element_name(index);
    }

private:
    const MergingSystem& base_;
};

// An explicit finite system given by tables; also the shape produced by the
// random-system generator used to audit the property checker.
class TableSystem : public MergingSystem {
public:
    TableSystem(std::vector<std::string> names, std::vector<std::vector<bool>> aligns,
                std::vector<std::vector<MergeOutcome>> merges);

    std::size_t size() const override { return names_.size(); }
    bool aligns(std::size_t a, std::size_t b) const override { return aligns_[a][b]; }
    MergeOutcome merge(std::size_t a, std::size_t b) const override { return merges_[a][b]; }
    std::string element_name(std::size_t index) const override { return names_[index]; }

private:
    std::vector<std::string> names_;
    std::vector<std::vector<bool>> aligns_;
    std::vector<std::vector<MergeOutcome>> merges_;
};

// Seeded random system for auditing the property checker: carrier size 3-8,
// random alignment density, merge table filled with random carrier elements
// on aligned pairs. Fully determined by the seed.
TableSystem random_table_system(std::uint64_t seed);

}  // namespace ontomerge
