#include "ontomerge/systems.hpp"

#include <algorithm>
#include <map>

#include "ontomerge/errors.hpp"

namespace ontomerge {

namespace {

void check_index(std::size_t index, std::size_t size) {
    if (index >= size) throw UnknownElement("element index out of range");
}

}  // namespace

DisjointUnionSystem::DisjointUnionSystem(std::vector<std::string> atom_tags, std::size_t cap)
    : atom_tags_(std::move(atom_tags)), cap_(cap) {
    if (atom_tags_.empty()) throw PreconditionFailed("at least one atom tag is required");
    if (cap_ == 0) throw PreconditionFailed("the count cap must be positive");
    std::set<std::string> seen(atom_tags_.begin(), atom_tags_.end());
    if (seen.size() != atom_tags_.size()) throw PreconditionFailed("atom tags must be distinct");
    double projected = 1.0;
    for (std::size_t i = 0; i < atom_tags_.size(); ++i) projected *= double(cap_ + 1);
    if (projected > 100'000.0)
        throw PreconditionFailed("carrier would exceed 100000 elements");
    // Odometer enumeration: all count vectors with entries in [0, cap].
    std::vector<std::size_t> counts(atom_tags_.size(), 0);
    while (true) {
        elements_.push_back(counts);
        std::size_t pos = counts.size();
        while (pos > 0 && counts[pos - 1] == cap_) counts[--pos] = 0;
        if (pos == 0) break;
        ++counts[pos - 1];
    }
}

bool DisjointUnionSystem::aligns(std::size_t a, std::size_t b) const {
    check_index(a, size());
    check_index(b, size());
    return true;
}

MergeOutcome DisjointUnionSystem::merge(std::size_t a, std::size_t b) const {
    check_index(a, size());
    check_index(b, size());
    std::vector<std::size_t> counts(atom_tags_.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        counts[i] = std::min(elements_[a][i] + elements_[b][i], cap_);
    return MergeOutcome::defined(index_of_counts(counts));
}

std::string DisjointUnionSystem::element_name(std::size_t index) const {
    check_index(index, size());
    std::string name = "{";
    bool first = true;
    for (std::size_t i = 0; i < atom_tags_.size(); ++i) {
        if (elements_[index][i] == 0) continue;
        if (!first) name += ",";
        name += atom_tags_[i] + ":" + std::to_string(elements_[index][i]);
        first = false;
    }
    return name + "}";
}

const std::vector<std::size_t>& DisjointUnionSystem::counts_of(std::size_t index) const {
    check_index(index, size());
    return elements_[index];
}

std::size_t DisjointUnionSystem::index_of_counts(const std::vector<std::size_t>& counts) const {
    if (counts.size() != atom_tags_.size())
        throw PreconditionFailed("count vector has the wrong length");
    std::size_t index = 0;
    for (std::size_t count : counts) {
        if (count > cap_) throw PreconditionFailed("count exceeds the cap");
        index = index * (cap_ + 1) + count;
    }
    return index;
}

Ontology DisjointUnionSystem::representative(std::size_t index) const {
    check_index(index, size());
    std::vector<Concept> concepts;
    for (std::size_t i = 0; i < atom_tags_.size(); ++i)
        for (std::size_t k = 0; k < elements_[index][i]; ++k)
            concepts.push_back({atom_tags_[i] + "_" + std::to_string(k + 1), atom_tags_[i], {}});
    return Ontology::validated(std::move(concepts), {});
}

std::vector<std::vector<bool>> DisjointUnionSystem::pointwise_order() const {
    std::vector<std::vector<bool>> leq(size(), std::vector<bool>(size(), false));
    for (std::size_t a = 0; a < size(); ++a)
        for (std::size_t b = 0; b < size(); ++b) {
            bool below = true;
            for (std::size_t i = 0; i < atom_tags_.size(); ++i)
                below = below && elements_[a][i] <= elements_[b][i];
            leq[a][b] = below;
        }
    return leq;
}

OverlapUnionSystem::OverlapUnionSystem(std::vector<std::pair<std::string, Ontology>> members) {
    if (members.empty()) throw PreconditionFailed("at least one member is required");
    for (auto& [name, member] : members) {
        names_.push_back(name);
        members_.push_back(std::move(member));
    }
    // Shared vocabulary: equal ids must denote equal elements everywhere.
    std::map<std::string, Concept> concepts;
    std::map<std::string, Relation> relations;
    for (const auto& member : members_) {
        for (const auto& c : member.concepts()) {
            auto [it, inserted] = concepts.emplace(c.id, c);
            if (!inserted && !(it->second == c))
                throw PreconditionFailed("concept '" + c.id +
                                         "' differs between members sharing it");
        }
        for (const auto& r : member.relations()) {
            auto [it, inserted] = relations.emplace(r.id, r);
            if (!inserted && !(it->second == r))
                throw PreconditionFailed("relation '" + r.id +
                                         "' differs between members sharing it");
        }
    }

    auto union_of = [&](std::size_t a, std::size_t b) {
        std::map<std::string, Concept> cs;
        std::map<std::string, Relation> rs;
        for (std::size_t i : {a, b}) {
            for (const auto& c : members_[i].concepts()) cs.emplace(c.id, c);
            for (const auto& r : members_[i].relations()) rs.emplace(r.id, r);
        }
        return std::pair{cs, rs};
    };
    auto matches = [&](std::size_t i, const std::map<std::string, Concept>& cs,
                       const std::map<std::string, Relation>& rs) {
        if (members_[i].concepts().size() != cs.size()) return false;
        if (members_[i].relations().size() != rs.size()) return false;
        for (const auto& c : members_[i].concepts())
            if (!cs.count(c.id)) return false;
        for (const auto& r : members_[i].relations())
            if (!rs.count(r.id)) return false;
        return true;
    };

    merges_.assign(size(), std::vector<MergeOutcome>(size(), MergeOutcome::undefined()));
    for (std::size_t a = 0; a < size(); ++a)
        for (std::size_t b = 0; b < size(); ++b) {
            auto [cs, rs] = union_of(a, b);
            for (std::size_t i = 0; i < size(); ++i)
                if (matches(i, cs, rs)) {
                    merges_[a][b] = MergeOutcome::defined(i);
                    break;
                }
        }
}

bool OverlapUnionSystem::aligns(std::size_t a, std::size_t b) const {
    check_index(a, size());
    check_index(b, size());
    return merges_[a][b].is_defined();
}

MergeOutcome OverlapUnionSystem::merge(std::size_t a, std::size_t b) const {
    check_index(a, size());
    check_index(b, size());
    return merges_[a][b];
}

std::string OverlapUnionSystem::element_name(std::size_t index) const {
    check_index(index, size());
    return names_[index];
}

const Ontology& OverlapUnionSystem::representative(std::size_t index) const {
    check_index(index, size());
    return members_[index];
}

std::vector<std::vector<bool>> OverlapUnionSystem::containment_order() const {
    std::vector<std::vector<bool>> leq(size(), std::vector<bool>(size(), false));
    for (std::size_t a = 0; a < size(); ++a)
        for (std::size_t b = 0; b < size(); ++b) {
            bool below = true;
            for (const auto& c : members_[a].concepts()) below = below && members_[b].has_concept(c.id);
            for (const auto& r : members_[a].relations()) below = below && members_[b].has_relation(r.id);
            leq[a][b] = below;
        }
    return leq;
}

TableJoinSystem::TableJoinSystem(std::vector<Row> universe) {
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    universe_ = universe;
    if (universe_.size() > 12) throw PreconditionFailed("row universe is limited to 12 rows");
    auto conflict_free = [](const std::vector<Row>& rows) {
        for (std::size_t i = 0; i + 1 < rows.size(); ++i)
            if (rows[i].key == rows[i + 1].key) return false;  // rows are sorted
        return true;
    };
    std::size_t n = universe_.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<Row> rows;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) rows.push_back(universe_[i]);
        if (conflict_free(rows)) elements_.push_back(std::move(rows));
    }
}

bool TableJoinSystem::compatible(std::size_t a, std::size_t b) const {
    for (const auto& ra : elements_[a])
        for (const auto& rb : elements_[b])
            if (ra.key == rb.key && ra.value != rb.value) return false;
    return true;
}

bool TableJoinSystem::aligns(std::size_t a, std::size_t b) const {
    check_index(a, size());
    check_index(b, size());
    return compatible(a, b);
}

MergeOutcome TableJoinSystem::merge(std::size_t a, std::size_t b) const {
    check_index(a, size());
    check_index(b, size());
    if (!compatible(a, b)) return MergeOutcome::undefined();
    std::vector<Row> rows = elements_[a];
    rows.insert(rows.end(), elements_[b].begin(), elements_[b].end());
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return MergeOutcome::defined(index_of_rows(rows));
}

std::string TableJoinSystem::element_name(std::size_t index) const {
    check_index(index, size());
    std::string name = "{";
    bool first = true;
    for (const auto& row : elements_[index]) {
        if (!first) name += ",";
        name += row.key + "=" + row.value;
        first = false;
    }
    return name + "}";
}

const std::vector<TableJoinSystem::Row>& TableJoinSystem::rows_of(std::size_t index) const {
    check_index(index, size());
    return elements_[index];
}

std::size_t TableJoinSystem::index_of_rows(const std::vector<Row>& rows) const {
    std::vector<Row> sorted = rows;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (elements_[i] == sorted) return i;
    throw UnknownElement("row set is not an element of the system");
}

std::vector<std::vector<bool>> TableJoinSystem::subset_order() const {
    std::vector<std::vector<bool>> leq(size(), std::vector<bool>(size(), false));
    for (std::size_t a = 0; a < size(); ++a)
        for (std::size_t b = 0; b < size(); ++b)
            leq[a][b] = std::includes(elements_[b].begin(), elements_[b].end(),
                                      elements_[a].begin(), elements_[a].end());
    return leq;
}

DisjointUnionSystem example_disjoint_union() { return DisjointUnionSystem({"a", "b"}, 2); }

OverlapUnionSystem example_overlap_diamond() {
    Concept person{"person", "Person", "Person"};
    Concept student{"student", "Student", "Student"};
    Concept employee{"employee", "Employee", "Employee"};
    Relation studies{"studies", "attends", {}, "student", "person"};
    Relation works{"works", "employed_by", {}, "employee", "person"};
    Ontology base = Ontology::validated({person}, {});
    Ontology with_student = Ontology::validated({person, student}, {studies});
    Ontology with_employee = Ontology::validated({person, employee}, {works});
    Ontology both = Ontology::validated({person, student, employee}, {studies, works});
    return OverlapUnionSystem({{"person", base},
                               {"person_student", with_student},
                               {"person_employee", with_employee},
                               {"merged", both}});
}

TableJoinSystem example_keyed_tables() {
    return TableJoinSystem({{"name", "alice"}, {"city", "paris"}, {"lang", "fr"}});
}

TableJoinSystem example_keyed_tables_conflicting() {
    return TableJoinSystem({{"name", "alice"}, {"name", "bob"}, {"city", "paris"}});
}

}  // namespace ontomerge
