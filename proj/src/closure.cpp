#include "ontomerge/closure.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "ontomerge/errors.hpp"

namespace ontomerge {

namespace {

Correspondence identity_correspondence(const Ontology& o) {
    Correspondence corr;
    for (const auto& c : o.concepts()) corr.concepts.insert({c.id, c.id});
    for (const auto& r : o.relations()) corr.relations.insert({r.id, r.id});
    return corr;
}

// Apply homomorphisms to both columns of a correspondence.
Correspondence transport(const Correspondence& corr, const Homomorphism& left,
                         const Homomorphism& right) {
    Correspondence out;
    for (const auto& [a, b] : corr.concepts)
        out.concepts.insert({left.concept_image(a), right.concept_image(b)});
    for (const auto& [a, b] : corr.relations)
        out.relations.insert({left.relation_image(a), right.relation_image(b)});
    return out;
}

// A merge event in representative space: `left` and `right` merged into
// `result`, with the injections between the stored representatives.
struct MergeEvent {
    CanonicalKey left;
    CanonicalKey right;
    CanonicalKey result;
    Homomorphism into_result_from_left;
    Homomorphism into_result_from_right;
};

using KeyPair = std::pair<CanonicalKey, CanonicalKey>;

KeyPair ordered(const CanonicalKey& a, const CanonicalKey& b) {
    return a <= b ? KeyPair{a, b} : KeyPair{b, a};
}

struct Engine {
    const ClosureLimits& limits;
    const ClosureOptions& options;

    std::map<CanonicalKey, Ontology> members;
    std::set<CanonicalKey> repository_keys;
    std::map<KeyPair, Correspondence> pool;
    std::set<KeyPair> dirty;                 // ordered pairs awaiting (re)merge
    std::map<KeyPair, MergeEvent> events;    // latest merge per ordered pair
    std::set<std::tuple<CanonicalKey, CanonicalKey, CanonicalKey>> edges;
    std::size_t rounds = 0;

    Engine(const ClosureLimits& limits_in, const ClosureOptions& options_in)
        : limits(limits_in), options(options_in) {}

    ClosureResult snapshot(bool complete) const {
        ClosureResult result;
        result.members = members;
        result.repository_keys = repository_keys;
        result.alignment_pool = pool;
        result.rounds = rounds;
        result.complete = complete;
        for (const auto& [l, r, m] : edges) result.provenance.push_back({l, r, m});
        result.layers = relax_layers();
        return result;
    }

    [[noreturn]] void fail(LimitExceeded::Kind kind, const std::string& message) {
        throw LimitExceeded(kind, message, snapshot(false));
    }

    std::map<CanonicalKey, std::size_t> relax_layers() const {
        constexpr std::size_t unknown = std::numeric_limits<std::size_t>::max();
        std::map<CanonicalKey, std::size_t> layers;
        for (const auto& [key, member] : members)
            layers[key] = repository_keys.count(key) ? 1 : unknown;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [l, r, m] : edges) {
                std::size_t ll = layers.at(l);
                std::size_t lr = layers.at(r);
                if (ll == unknown || lr == unknown) continue;
                if (ll + lr < layers.at(m)) {
                    layers.at(m) = ll + lr;
                    changed = true;
                }
            }
        }
        return layers;
    }

    // Intern an ontology by isomorphism class. Returns its key; `fresh` is
    // set when this class was not seen before.
    CanonicalKey intern(const Ontology& o, bool& fresh) {
        CanonicalKey key = canonical_key(o);
        auto it = members.find(key);
        if (it != members.end()) {
            fresh = false;
            return key;
        }
        if (o.size() > limits.max_element_size)
            fail(LimitExceeded::Kind::element_size,
                 "merged ontology has " + std::to_string(o.size()) +
                     " elements, exceeding the limit of " + std::to_string(limits.max_element_size));
        if (members.size() >= limits.max_members)
            fail(LimitExceeded::Kind::members, "closure exceeds the member limit of " +
                                                   std::to_string(limits.max_members));
        members.emplace(key, o);
        pool[{key, key}] = identity_correspondence(o);
        dirty.insert({key, key});
        fresh = true;
        return key;
    }

    // Union new correspondence information into the pool entry for (a, b).
    // Self-correspondences stay exactly the identity: merging a member with
    // itself yields that member, so extra self-pairs carry no new merge.
    bool add_correspondence(const CanonicalKey& a, const CanonicalKey& b,
                            const Correspondence& corr) {
        if (a == b) return false;
        auto it = pool.find({a, b});
        bool existed = it != pool.end();
        bool grew = !existed;
        if (!existed) it = pool.emplace(KeyPair{a, b}, Correspondence{}).first;
        grew = it->second.merge_in(corr) || grew;
        if (grew) {
            pool[{b, a}] = it->second.flipped();
            dirty.insert(ordered(a, b));
        }
        return grew;
    }

    void merge_pair(const KeyPair& pair) {
        const auto& [a, b] = pair;
        const Ontology& left = members.at(a);
        const Ontology& right = members.at(b);
        VAlignmentPair vpair = pair_from_correspondence(left, right, pool.at({a, b}));
        PushoutResult po = pushout(vpair);
#ifdef ONTOMERGE_TRACE_CLOSURE
        std::fprintf(stderr, "[round %zu] merge %zu+%zu along %zu pairs -> %zu elements\n",
                     rounds, left.size(), right.size(), pool.at({a, b}).size(),
                     po.merged.size());
#endif
        if (po.merged.size() > limits.max_element_size)
            fail(LimitExceeded::Kind::element_size,
                 "merged ontology has " + std::to_string(po.merged.size()) +
                     " elements, exceeding the limit of " + std::to_string(limits.max_element_size));
        bool fresh = false;
        CanonicalKey m = intern(po.merged, fresh);
        Homomorphism inj_left = po.inject_left;
        Homomorphism inj_right = po.inject_right;
        if (!fresh && !(po.merged == members.at(m))) {
            Homomorphism onto_representative = canonical_isomorphism(po.merged, members.at(m));
            inj_left = compose(inj_left, onto_representative);
            inj_right = compose(inj_right, onto_representative);
        }
        events.insert_or_assign(pair, MergeEvent{a, b, m, inj_left, inj_right});
        edges.insert({a, b, m});
    }

    // Propagate pool entries through every recorded merge: if x aligns with
    // an operand of a merge, it aligns with the result via the injection.
    // Iterates to a fixpoint; new entries are also queued (via `dirty`) for
    // merging in the next round.
    void derive_to_fixpoint() {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<std::pair<KeyPair, Correspondence>> entries(pool.begin(), pool.end());
            for (const auto& [xy, corr] : entries) {
                const auto& [x, y] = xy;
                for (const auto& [ev_pair, ev] : events) {
                    Correspondence current = pool.count(xy) ? pool.at(xy) : corr;
                    if (y == ev.left)
                        changed |= add_correspondence(
                            x, ev.result,
                            transport(current, Homomorphism::identity(members.at(x)),
                                      ev.into_result_from_left));
                    if (y == ev.right)
                        changed |= add_correspondence(
                            x, ev.result,
                            transport(current, Homomorphism::identity(members.at(x)),
                                      ev.into_result_from_right));
                }
            }
        }
    }

    ClosureResult run(const Repository& repository) {
        seed(repository);
#ifdef ONTOMERGE_TRACE_CLOSURE
        std::fprintf(stderr, "[seeded] %zu members, %zu dirty\n", members.size(), dirty.size());
#endif
        while (true) {
            ++rounds;
            if (rounds > limits.max_rounds)
                fail(LimitExceeded::Kind::rounds,
                     "closure did not stabilise within " + std::to_string(limits.max_rounds) +
                         " rounds");
            std::vector<KeyPair> batch(dirty.begin(), dirty.end());
            dirty.clear();
            if (options.order == WorklistOrder::reverse) std::reverse(batch.begin(), batch.end());
            for (const auto& pair : batch) merge_pair(pair);
#ifdef ONTOMERGE_TRACE_CLOSURE
            std::fprintf(stderr, "[round %zu] merged %zu pairs, deriving...\n", rounds,
                         batch.size());
#endif
            derive_to_fixpoint();
#ifdef ONTOMERGE_TRACE_CLOSURE
            std::fprintf(stderr, "[round %zu] derived; pool %zu entries, %zu dirty\n", rounds,
                         pool.size(), dirty.size());
#endif
            if (dirty.empty()) break;
        }
        return snapshot(true);
    }

    void seed(const Repository& repository) {
        std::vector<CanonicalKey> keys;
        for (const auto& o : repository.ontologies) {
            bool fresh = false;
            keys.push_back(intern(o, fresh));
            repository_keys.insert(keys.back());
        }
        for (const auto& pair : repository.alignments) {
            auto locate = [&](const Ontology& operand) -> std::size_t {
                for (std::size_t i = 0; i < repository.ontologies.size(); ++i)
                    if (repository.ontologies[i] == operand) return i;
                throw PreconditionFailed(
                    "alignment operand is not one of the repository ontologies");
            };
            std::size_t li = locate(pair.left_ontology());
            std::size_t ri = locate(pair.right_ontology());
            // Rebase the correspondence onto the stored representatives (the
            // repository entry may be a non-representative of its class).
            Homomorphism left_iso =
                canonical_isomorphism(repository.ontologies[li], members.at(keys[li]));
            Homomorphism right_iso =
                canonical_isomorphism(repository.ontologies[ri], members.at(keys[ri]));
            Correspondence corr = transport(pair.correspondence(), left_iso, right_iso);
            if (keys[li] == keys[ri]) continue;  // self-alignment: identity already pooled
            add_correspondence(keys[li], keys[ri], corr);
        }
    }
};

}  // namespace

ClosureResult compute_closure(const Repository& repository, const ClosureLimits& limits,
                              const ClosureOptions& options) {
    Engine engine(limits, options);
    return engine.run(repository);
}

std::size_t MergeTree::leaf_count() const {
    if (children.empty()) return 1;
    std::size_t total = 0;
    for (const auto& child : children) total += child.leaf_count();
    return total;
}

MergeTree provenance_of(const ClosureResult& closure, const CanonicalKey& key) {
    if (!closure.members.count(key)) throw UnknownElement("no closure member with the given key");
    if (closure.repository_keys.count(key)) return MergeTree{key, {}};
    const ProvenanceEdge* best = nullptr;
    std::size_t best_sum = std::numeric_limits<std::size_t>::max();
    for (const auto& edge : closure.provenance) {
        if (edge.result != key) continue;
        std::size_t sum = closure.layers.at(edge.left) + closure.layers.at(edge.right);
        if (best == nullptr || sum < best_sum ||
            (sum == best_sum && std::pair{edge.left, edge.right} < std::pair{best->left, best->right})) {
            best = &edge;
            best_sum = sum;
        }
    }
    if (best == nullptr)
        throw PreconditionFailed("closure member has no recorded derivation");
    MergeTree tree{key, {}};
    tree.children.push_back(provenance_of(closure, best->left));
    tree.children.push_back(provenance_of(closure, best->right));
    return tree;
}

std::map<CanonicalKey, std::string> member_names(const ClosureResult& closure) {
    std::map<CanonicalKey, std::string> names;
    std::size_t index = 0;
    for (const auto& [key, member] : closure.members) {
        std::string digits = std::to_string(index++);
        while (digits.size() < 3) digits.insert(digits.begin(), '0');
        names.emplace(key, "m" + digits);
    }
    return names;
}

PushoutClosureSystem::PushoutClosureSystem(ClosureResult closure) : closure_(std::move(closure)) {
    if (!closure_.complete)
        throw PreconditionFailed("cannot build a merging system from an incomplete closure");
    for (const auto& [key, member] : closure_.members) {
        index_[key] = keys_.size();
        keys_.push_back(key);
    }
}

bool PushoutClosureSystem::aligns(std::size_t a, std::size_t b) const {
    if (a >= size() || b >= size()) throw UnknownElement("element index out of range");
    if (a == b) return true;
    return closure_.alignment_pool.count({keys_[a], keys_[b]}) != 0;
}

MergeOutcome PushoutClosureSystem::merge(std::size_t a, std::size_t b) const {
    if (a >= size() || b >= size()) throw UnknownElement("element index out of range");
    if (a == b) return MergeOutcome::defined(a);
    auto memo = memo_.find({a, b});
    if (memo != memo_.end()) return MergeOutcome::defined(memo->second);
    auto entry = closure_.alignment_pool.find({keys_[a], keys_[b]});
    if (entry == closure_.alignment_pool.end()) return MergeOutcome::undefined();
    VAlignmentPair vpair = pair_from_correspondence(closure_.members.at(keys_[a]),
                                                    closure_.members.at(keys_[b]), entry->second);
    CanonicalKey merged = canonical_key(pushout(vpair).merged);
    auto it = index_.find(merged);
    if (it == index_.end())
        throw Error("closure is not merge-closed: pushout left the member set");
    memo_.emplace(std::pair{a, b}, it->second);
    return MergeOutcome::defined(it->second);
}

std::string PushoutClosureSystem::element_name(std::size_t index) const {
    if (index >= size()) throw UnknownElement("element index out of range");
    std::string digits = std::to_string(index);
    while (digits.size() < 3) digits.insert(digits.begin(), '0');
    return "m" + digits;
}

const CanonicalKey& PushoutClosureSystem::key_of(std::size_t index) const {
    if (index >= size()) throw UnknownElement("element index out of range");
    return keys_[index];
}

std::size_t PushoutClosureSystem::index_of(const CanonicalKey& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) throw UnknownElement("no closure member with the given key");
    return it->second;
}

const Ontology& PushoutClosureSystem::representative(std::size_t index) const {
    if (index >= size()) throw UnknownElement("element index out of range");
    return closure_.members.at(keys_[index]);
}

}  // namespace ontomerge
