#include "ontomerge/hom_search.hpp"

#include <algorithm>

#include "ontomerge/errors.hpp"

namespace ontomerge {

namespace {

struct Searcher {
    const Ontology& source;
    const Ontology& target;
    const HomSearchOptions& options;

    // Concept assignment by source position; SIZE_MAX marks unassigned.
    std::vector<std::size_t> assignment;
    std::vector<std::vector<std::size_t>> candidates;  // per source concept, target positions
    std::uint64_t steps = 0;
    HomSearchResult result;
    bool stop = false;

    Searcher(const Ontology& src, const Ontology& tgt, const HomSearchOptions& opts)
        : source(src), target(tgt), options(opts) {
        assignment.assign(source.concept_count(), SIZE_MAX);
        candidates.resize(source.concept_count());
        for (std::size_t i = 0; i < source.concept_count(); ++i) {
            const auto& tag = source.concepts()[i].tag;
            for (std::size_t j = 0; j < target.concept_count(); ++j)
                if (target.concepts()[j].tag == tag) candidates[i].push_back(j);
        }
    }

    void charge() {
        if (++steps > options.budget)
            throw BudgetExceeded("homomorphism search exceeded its step budget");
    }

    // Target relations compatible with source relation at position `rel`,
    // assuming both endpoints are assigned.
    std::vector<std::size_t> compatible_relations(std::size_t rel) const {
        const Relation& r = source.relations()[rel];
        std::size_t src_pos = assignment[source.concept_position(r.src)];
        std::size_t dst_pos = assignment[source.concept_position(r.dst)];
        const std::string& src_id = target.concepts()[src_pos].id;
        const std::string& dst_id = target.concepts()[dst_pos].id;
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < target.relation_count(); ++j) {
            const Relation& t = target.relations()[j];
            if (t.tag == r.tag && t.src == src_id && t.dst == dst_id) out.push_back(j);
        }
        return out;
    }

    // True when every source relation with both endpoints assigned still has
    // at least one compatible target relation.
    bool relations_satisfiable() const {
        for (std::size_t j = 0; j < source.relation_count(); ++j) {
            const Relation& r = source.relations()[j];
            if (assignment[source.concept_position(r.src)] == SIZE_MAX) continue;
            if (assignment[source.concept_position(r.dst)] == SIZE_MAX) continue;
            if (compatible_relations(j).empty()) return false;
        }
        return true;
    }

    void emit_with_relation_maps() {
        // The concept map is complete; enumerate relation maps.
        std::vector<std::vector<std::size_t>> per_relation(source.relation_count());
        std::uint64_t combinations = 1;
        for (std::size_t j = 0; j < source.relation_count(); ++j) {
            per_relation[j] = compatible_relations(j);
            if (per_relation[j].empty()) return;
            combinations *= per_relation[j].size();
        }

        if (options.mode == HomSearchMode::count) {
            result.count += combinations;
            return;
        }

        // first/all: walk the cartesian product in lexicographic order.
        std::vector<std::size_t> pick(source.relation_count(), 0);
        while (true) {
            charge();
            std::map<std::string, std::string> cm, rm;
            for (std::size_t i = 0; i < source.concept_count(); ++i)
                cm[source.concepts()[i].id] = target.concepts()[assignment[i]].id;
            for (std::size_t j = 0; j < source.relation_count(); ++j)
                rm[source.relations()[j].id] = target.relations()[per_relation[j][pick[j]]].id;
            result.homs.emplace_back(source, target, std::move(cm), std::move(rm));
            ++result.count;
            if (options.mode == HomSearchMode::first) {
                stop = true;
                return;
            }
            // Advance the odometer.
            std::size_t j = source.relation_count();
            while (j > 0) {
                --j;
                if (++pick[j] < per_relation[j].size()) break;
                pick[j] = 0;
                if (j == 0) return;
            }
            if (source.relation_count() == 0) return;
        }
    }

    void assign(std::size_t next) {
        if (stop) return;
        if (next == source.concept_count()) {
            emit_with_relation_maps();
            return;
        }
        for (std::size_t candidate : candidates[next]) {
            charge();
            assignment[next] = candidate;
            if (relations_satisfiable()) assign(next + 1);
            assignment[next] = SIZE_MAX;
            if (stop) return;
        }
    }

    HomSearchResult run() {
        // An empty source has exactly one homomorphism into anything.
        assign(0);
        if (options.mode == HomSearchMode::count) return std::move(result);
        return std::move(result);
    }
};

}  // namespace

HomSearchResult find_homomorphisms(const Ontology& source, const Ontology& target,
                                   const HomSearchOptions& options) {
    Searcher searcher(source, target, options);
    return searcher.run();
}

std::optional<Homomorphism> find_first_homomorphism(const Ontology& source, const Ontology& target,
                                                    std::uint64_t budget) {
    HomSearchOptions options;
    options.mode = HomSearchMode::first;
    options.budget = budget;
    HomSearchResult r = find_homomorphisms(source, target, options);
    if (!r.found()) return std::nullopt;
    return std::move(r.homs.front());
}

}  // namespace ontomerge
