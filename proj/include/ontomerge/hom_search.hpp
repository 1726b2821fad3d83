#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ontomerge/homomorphism.hpp"

namespace ontomerge {

enum class HomSearchMode { first, count, all };

struct HomSearchOptions {
    HomSearchMode mode = HomSearchMode::first;
    // Upper bound on search steps (candidate assignments tried). Exceeding it
    // throws BudgetExceeded.
    std::uint64_t budget = 5'000'000;
};

struct HomSearchResult {
    // Number of homomorphisms found. In `first` mode this is 0 or 1.
    std::uint64_t count = 0;
    // Materialized maps: at most one in `first` mode, all of them in `all`
    // mode, none in `count` mode.
    std::vector<Homomorphism> homs;

    bool found() const { return count > 0; }
};

// Deterministic backtracking search for homomorphisms source -> target.
// Concepts are assigned in sorted id order, candidates are tried in sorted id
// order, so results and their order are reproducible. Once the concept map is
// fixed, each source relation ranges over the target relations with the same
// tag and the mapped endpoints; parallel relations multiply the count.
HomSearchResult find_homomorphisms(const Ontology& source, const Ontology& target,
                                   const HomSearchOptions& options = {});

// Convenience wrapper for `first` mode.
std::optional<Homomorphism> find_first_homomorphism(const Ontology& source, const Ontology& target,
                                                    std::uint64_t budget = 5'000'000);

}  // namespace ontomerge
