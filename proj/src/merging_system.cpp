#include "ontomerge/merging_system.hpp"

#include <random>

namespace ontomerge {

MergeOutcome evaluate_merge(const MergingSystem& system, std::size_t a, std::size_t b) {
    if (a >= system.size() || b >= system.size())
        throw UnknownElement("evaluate_merge: element index outside the carrier");
    return system.merge(a, b);
}

bool natural_leq(const MergingSystem& system, std::size_t a, std::size_t b) {
    if (a >= system.size() || b >= system.size())
        throw UnknownElement("natural_leq: element index outside the carrier");
    if (!system.aligns(a, b) || !system.aligns(b, a)) return false;
    return system.merge(a, b) == MergeOutcome::defined(b) &&
           system.merge(b, a) == MergeOutcome::defined(b);
}

bool NullExtendedSystem::aligns(std::size_t a, std::size_t b) const {
    if (a >= size() || b >= size())
        throw UnknownElement("null extension: element index outside the carrier");
    if (a == top() || b == top()) return a == b;
    return base_.aligns(a, b);
}

std::size_t NullExtendedSystem::merge(std::size_t a, std::size_t b) const {
    if (a >= size() || b >= size())
        throw UnknownElement("null extension: element index outside the carrier");
    if (a == top() || b == top()) return top();
    MergeOutcome outcome = base_.merge(a, b);
    return outcome.is_defined() ? outcome.value() : top();
}

TableSystem random_table_system(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    // Engine output reduced by modulo so results do not depend on the
    // standard library's distribution implementations.
    auto pick = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };
    std::size_t n = 3 + pick(6);             // carrier size 3..8
    std::size_t density_percent = 20 + pick(81);  // alignment density 20..100%
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
    std::vector<std::vector<bool>> aligns(n, std::vector<bool>(n, false));
    std::vector<std::vector<MergeOutcome>> merges(
        n, std::vector<MergeOutcome>(n, MergeOutcome::undefined()));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            aligns[a][b] = pick(100) < density_percent;
            merges[a][b] =
                aligns[a][b] ? MergeOutcome::defined(pick(n)) : MergeOutcome::undefined();
        }
    return TableSystem(std::move(names), std::move(aligns), std::move(merges));
}

TableSystem::TableSystem(std::vector<std::string> names, std::vector<std::vector<bool>> aligns,
                         std::vector<std::vector<MergeOutcome>> merges)
    : names_(std::move(names)), aligns_(std::move(aligns)), merges_(std::move(merges)) {
    const std::size_t n = names_.size();
    if (aligns_.size() != n || merges_.size() != n)
        throw PreconditionFailed("table system: table sizes disagree with the carrier");
    for (std::size_t a = 0; a < n; ++a) {
        if (aligns_[a].size() != n || merges_[a].size() != n)
            throw PreconditionFailed("table system: table sizes disagree with the carrier");
        for (std::size_t b = 0; b < n; ++b) {
            if (aligns_[a][b] != merges_[a][b].is_defined())
                throw PreconditionFailed("table system: merge must be defined exactly on aligned pairs");
            if (merges_[a][b].is_defined() && merges_[a][b].value() >= n)
                throw PreconditionFailed("table system: merge result outside the carrier");
        }
    }
}

}  // namespace ontomerge
