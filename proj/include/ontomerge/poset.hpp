#pragma once

#include <map>
#include <set>
#include <vector>

#include "ontomerge/closure.hpp"

namespace ontomerge {

// Closure members ordered by homomorphism existence: a <= b when some
// homomorphism a -> b exists. This is a preorder on members; members with
// homomorphisms both ways collapse into one class. The Hasse diagram is the
// transitive reduction of the strict order between classes.
struct Poset {
    std::vector<CanonicalKey> keys;                      // sorted member keys
    std::vector<std::size_t> class_of;                   // member -> class index
    std::vector<std::vector<std::size_t>> classes;       // class -> sorted member indices
    std::vector<std::vector<bool>> class_leq;            // reflexive-transitive, per class
    std::vector<std::pair<std::size_t, std::size_t>> hasse;  // covering pairs (lower, upper)
};

struct PosetOptions {
    std::size_t hom_budget = 5'000'000;  // per pairwise homomorphism search
};

Poset build_poset(const ClosureResult& closure, const PosetOptions& options = {});

bool poset_leq(const Poset& poset, const CanonicalKey& a, const CanonicalKey& b);

// Query results are member keys, sorted. Class-level facts (maximality, what
// lies above or below) are reported through every member of the class.
std::vector<CanonicalKey> poset_maximal(const Poset& poset);
std::vector<CanonicalKey> poset_minimal(const Poset& poset);
std::vector<CanonicalKey> poset_above(const Poset& poset, const CanonicalKey& key);
std::vector<CanonicalKey> poset_below(const Poset& poset, const CanonicalKey& key);

// A linear extension: classes in topological order of the strict order,
// ties broken by (smallest layer of any member, smallest key); members of a
// class listed by key.
std::vector<CanonicalKey> poset_sort(const Poset& poset, const ClosureResult& closure);

}  // namespace ontomerge
