#include "ontomerge/poset.hpp"

#include <algorithm>
#include <limits>

#include "ontomerge/errors.hpp"
#include "ontomerge/hom_search.hpp"

namespace ontomerge {

namespace {

std::size_t index_of(const Poset& poset, const CanonicalKey& key) {
    auto it = std::lower_bound(poset.keys.begin(), poset.keys.end(), key);
    if (it == poset.keys.end() || *it != key)
        throw UnknownElement("no closure member with the given key");
    return static_cast<std::size_t>(it - poset.keys.begin());
}

std::vector<CanonicalKey> class_members(const Poset& poset, const std::vector<bool>& pick) {
    std::vector<CanonicalKey> out;
    for (std::size_t c = 0; c < poset.classes.size(); ++c) {
        if (!pick[c]) continue;
        for (std::size_t member : poset.classes[c]) out.push_back(poset.keys[member]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Poset build_poset(const ClosureResult& closure, const PosetOptions& options) {
    Poset poset;
    for (const auto& [key, member] : closure.members) poset.keys.push_back(key);
    std::size_t n = poset.keys.size();

    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                leq[i][j] = true;
                continue;
            }
            leq[i][j] = find_first_homomorphism(closure.members.at(poset.keys[i]),
                                                closure.members.at(poset.keys[j]),
                                                options.hom_budget)
                            .has_value();
        }
    }

    // Group mutually comparable members into classes, in key order.
    poset.class_of.assign(n, std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < n; ++i) {
        if (poset.class_of[i] != std::numeric_limits<std::size_t>::max()) continue;
        std::size_t c = poset.classes.size();
        poset.classes.emplace_back();
        for (std::size_t j = i; j < n; ++j) {
            if (leq[i][j] && leq[j][i]) {
                poset.class_of[j] = c;
                poset.classes[c].push_back(j);
            }
        }
    }

    std::size_t k = poset.classes.size();
    poset.class_leq.assign(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (leq[i][j]) poset.class_leq[poset.class_of[i]][poset.class_of[j]] = true;

    // Covering pairs: strict comparabilities with nothing strictly between.
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            if (a == b || !poset.class_leq[a][b]) continue;
            bool covered = true;
            for (std::size_t between = 0; between < k; ++between) {
                if (between == a || between == b) continue;
                if (poset.class_leq[a][between] && poset.class_leq[between][b]) {
                    covered = false;
                    break;
                }
            }
            if (covered) poset.hasse.push_back({a, b});
        }
    }
    std::sort(poset.hasse.begin(), poset.hasse.end());
    return poset;
}

bool poset_leq(const Poset& poset, const CanonicalKey& a, const CanonicalKey& b) {
    std::size_t ca = poset.class_of[index_of(poset, a)];
    std::size_t cb = poset.class_of[index_of(poset, b)];
    return poset.class_leq[ca][cb];
}

std::vector<CanonicalKey> poset_maximal(const Poset& poset) {
    std::size_t k = poset.classes.size();
    std::vector<bool> pick(k, true);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            if (a != b && poset.class_leq[a][b]) pick[a] = false;
    return class_members(poset, pick);
}

std::vector<CanonicalKey> poset_minimal(const Poset& poset) {
    std::size_t k = poset.classes.size();
    std::vector<bool> pick(k, true);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            if (a != b && poset.class_leq[b][a]) pick[a] = false;
    return class_members(poset, pick);
}

std::vector<CanonicalKey> poset_above(const Poset& poset, const CanonicalKey& key) {
    std::size_t base = poset.class_of[index_of(poset, key)];
    std::vector<bool> pick(poset.classes.size(), false);
    for (std::size_t c = 0; c < poset.classes.size(); ++c)
        if (c != base && poset.class_leq[base][c]) pick[c] = true;
    return class_members(poset, pick);
}

std::vector<CanonicalKey> poset_below(const Poset& poset, const CanonicalKey& key) {
    std::size_t base = poset.class_of[index_of(poset, key)];
    std::vector<bool> pick(poset.classes.size(), false);
    for (std::size_t c = 0; c < poset.classes.size(); ++c)
        if (c != base && poset.class_leq[c][base]) pick[c] = true;
    return class_members(poset, pick);
}

std::vector<CanonicalKey> poset_sort(const Poset& poset, const ClosureResult& closure) {
    std::size_t k = poset.classes.size();
    // Tie-break rank: (smallest layer among members, smallest member key).
    auto rank = [&](std::size_t c) {
        std::size_t layer = std::numeric_limits<std::size_t>::max();
        CanonicalKey least = poset.keys[poset.classes[c].front()];
        for (std::size_t member : poset.classes[c]) {
            layer = std::min(layer, closure.layers.at(poset.keys[member]));
            least = std::min(least, poset.keys[member]);
        }
        return std::pair{layer, least};
    };

    std::vector<std::size_t> indegree(k, 0);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            if (a != b && poset.class_leq[a][b]) ++indegree[b];

    std::vector<CanonicalKey> out;
    std::vector<bool> done(k, false);
    for (std::size_t placed = 0; placed < k; ++placed) {
        std::size_t chosen = k;
        for (std::size_t c = 0; c < k; ++c) {
            if (done[c] || indegree[c] != 0) continue;
            if (chosen == k || rank(c) < rank(chosen)) chosen = c;
        }
        if (chosen == k) throw Error("homomorphism order contains a strict cycle");
        done[chosen] = true;
        for (std::size_t member : poset.classes[chosen]) out.push_back(poset.keys[member]);
        for (std::size_t b = 0; b < k; ++b)
            if (b != chosen && poset.class_leq[chosen][b]) --indegree[b];
    }
    return out;
}

}  // namespace ontomerge
