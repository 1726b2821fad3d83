#include "ontomerge/canonical.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <vector>

#include "ontomerge/errors.hpp"

namespace ontomerge {

namespace {

// Length-prefixed rendering keeps keys unambiguous for arbitrary tag bytes.
std::string tag_text(const std::optional<std::string>& tag) {
    if (!tag) return "-";
    return std::to_string(tag->size()) + ":" + *tag;
}

struct Refiner {
    const Ontology& o;
    std::size_t n;
    // Adjacency by concept position: (relation tag, other endpoint).
    std::vector<std::vector<std::pair<std::string, std::size_t>>> out_edges, in_edges;

    explicit Refiner(const Ontology& ont) : o(ont), n(ont.concept_count()) {
        out_edges.resize(n);
        in_edges.resize(n);
        for (const auto& r : o.relations()) {
            std::size_t s = o.concept_position(r.src);
            std::size_t d = o.concept_position(r.dst);
            out_edges[s].emplace_back(tag_text(r.tag), d);
            in_edges[d].emplace_back(tag_text(r.tag), s);
        }
    }

    std::vector<int> initial_colors() const {
        std::vector<std::string> sig(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::string> out_tags, in_tags;
            for (const auto& [tag, _] : out_edges[i]) out_tags.push_back(tag);
            for (const auto& [tag, _] : in_edges[i]) in_tags.push_back(tag);
            std::sort(out_tags.begin(), out_tags.end());
            std::sort(in_tags.begin(), in_tags.end());
            std::string s = tag_text(o.concepts()[i].tag) + "\x02";
            for (const auto& t : out_tags) s += t + ">";
            s += "\x02";
            for (const auto& t : in_tags) s += t + "<";
            sig[i] = std::move(s);
        }
        return rank(sig);
    }

    // Dense ranks of signatures, order preserving.
    template <typename Signature>
    static std::vector<int> rank(const std::vector<Signature>& sig) {
        std::vector<Signature> sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> colors(sig.size());
        for (std::size_t i = 0; i < sig.size(); ++i)
            colors[i] = int(std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
        return colors;
    }

    // One refinement pass; returns true when the coloring changed. The old
    // color is ranked numerically (not as a string) so the new coloring always
    // refines the old one; otherwise a stable partition with more than ten
    // classes would keep permuting its labels and never stabilise.
    bool refine_step(std::vector<int>& colors) const {
        std::vector<std::pair<int, std::string>> sig(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::string> out_sig, in_sig;
            for (const auto& [tag, other] : out_edges[i])
                out_sig.push_back(tag + "#" + std::to_string(colors[other]));
            for (const auto& [tag, other] : in_edges[i])
                in_sig.push_back(tag + "#" + std::to_string(colors[other]));
            std::sort(out_sig.begin(), out_sig.end());
            std::sort(in_sig.begin(), in_sig.end());
            std::string s;
            for (const auto& t : out_sig) s += t + ">";
            s += "\x02";
            for (const auto& t : in_sig) s += t + "<";
            sig[i] = {colors[i], std::move(s)};
        }
        std::vector<int> next = rank(sig);
        bool changed = next != colors;
        colors = std::move(next);
        return changed;
    }

    void refine(std::vector<int>& colors) const {
        while (refine_step(colors)) {
        }
    }

    // Position of the first color class with more than one member, by color.
    std::optional<int> first_ambiguous_color(const std::vector<int>& colors) const {
        std::map<int, int> count;
        for (int c : colors) ++count[c];
        for (const auto& [color, members] : count)
            if (members > 1) return color;
        return std::nullopt;
    }

    // Serializes the fully individualized coloring into a key. `order[i]` is
    // the canonical index of concept position i.
    std::string serialize(const std::vector<std::size_t>& order) const {
        std::ostringstream key;
        key << "c" << n << ";";
        std::vector<std::size_t> by_index(n);
        for (std::size_t i = 0; i < n; ++i) by_index[order[i]] = i;
        for (std::size_t idx = 0; idx < n; ++idx)
            key << tag_text(o.concepts()[by_index[idx]].tag) << ";";
        std::vector<std::string> rels;
        for (const auto& r : o.relations()) {
            std::ostringstream line;
            line << tag_text(r.tag) << "," << order[o.concept_position(r.src)] << ","
                 << order[o.concept_position(r.dst)];
            rels.push_back(line.str());
        }
        std::sort(rels.begin(), rels.end());
        key << "r" << rels.size() << ";";
        for (const auto& line : rels) key << line << ";";
        return key.str();
    }

    // Canonical index per concept position from a discrete coloring.
    std::vector<std::size_t> discrete_order(const std::vector<int>& colors) const {
        std::vector<std::size_t> positions(n);
        for (std::size_t i = 0; i < n; ++i) positions[i] = i;
        std::sort(positions.begin(), positions.end(),
                  [&](std::size_t a, std::size_t b) { return colors[a] < colors[b]; });
        std::vector<std::size_t> order(n);
        for (std::size_t idx = 0; idx < n; ++idx) order[positions[idx]] = idx;
        return order;
    }

    void search(std::vector<int> colors, std::string& best,
                std::vector<std::size_t>& best_order) const {
        refine(colors);
        auto ambiguous = first_ambiguous_color(colors);
        if (!ambiguous) {
            std::vector<std::size_t> order = discrete_order(colors);
            std::string key = serialize(order);
            if (best.empty() || key < best) {
                best = std::move(key);
                best_order = std::move(order);
            }
            return;
        }
        // Individualize each member of the ambiguous class in turn; the key
        // minimum over all branches is labeling independent. Members of an
        // edge-free class are mutually interchangeable (swapping two of them
        // is an automorphism), so a single branch covers them all.
        bool isolated_class = true;
        for (std::size_t i = 0; i < n; ++i)
            if (colors[i] == *ambiguous && (!out_edges[i].empty() || !in_edges[i].empty()))
                isolated_class = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (colors[i] != *ambiguous) continue;
            std::vector<int> branch = colors;
            for (std::size_t j = 0; j < n; ++j)
                if (branch[j] >= *ambiguous && j != i) ++branch[j];
            search(std::move(branch), best, best_order);
            if (isolated_class) break;
        }
    }
};

}  // namespace

std::string CanonicalKey::digest() const {
    // FNV-1a, printed as 16 hex digits.
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

CanonicalForm canonical_form(const Ontology& o) {
    Refiner refiner(o);
    std::string best;
    std::vector<std::size_t> best_order;
    refiner.search(refiner.initial_colors(), best, best_order);

    CanonicalForm form;
    form.key = CanonicalKey{std::move(best)};
    for (std::size_t i = 0; i < o.concept_count(); ++i)
        form.concept_index[o.concepts()[i].id] = best_order[i];

    // Relations ordered by (tag, canonical endpoints); ties between parallel
    // relations are broken by id, which is sound because any bijection among
    // structurally identical relations is an isomorphism.
    std::vector<std::size_t> rel_positions(o.relation_count());
    for (std::size_t j = 0; j < o.relation_count(); ++j) rel_positions[j] = j;
    auto rel_sig = [&](std::size_t j) {
        const Relation& r = o.relations()[j];
        return std::tuple<std::string, std::size_t, std::size_t, std::string>(
            r.tag ? "1" + *r.tag : "0", best_order[o.concept_position(r.src)],
            best_order[o.concept_position(r.dst)], r.id);
    };
    std::sort(rel_positions.begin(), rel_positions.end(),
              [&](std::size_t a, std::size_t b) { return rel_sig(a) < rel_sig(b); });
    for (std::size_t idx = 0; idx < rel_positions.size(); ++idx)
        form.relation_index[o.relations()[rel_positions[idx]].id] = idx;
    return form;
}

CanonicalKey canonical_key(const Ontology& o) { return canonical_form(o).key; }

bool is_isomorphic(const Ontology& a, const Ontology& b) {
    return canonical_key(a) == canonical_key(b);
}

Homomorphism canonical_isomorphism(const Ontology& a, const Ontology& b) {
    CanonicalForm fa = canonical_form(a);
    CanonicalForm fb = canonical_form(b);
    if (fa.key != fb.key)
        throw DomainMismatch("canonical_isomorphism: the ontologies are not isomorphic");

    std::vector<std::string> b_concept_by_index(b.concept_count());
    for (const auto& [id, idx] : fb.concept_index) b_concept_by_index[idx] = id;
    std::vector<std::string> b_relation_by_index(b.relation_count());
    for (const auto& [id, idx] : fb.relation_index) b_relation_by_index[idx] = id;

    std::map<std::string, std::string> cm, rm;
    for (const auto& [id, idx] : fa.concept_index) cm[id] = b_concept_by_index[idx];
    for (const auto& [id, idx] : fa.relation_index) rm[id] = b_relation_by_index[idx];
    return Homomorphism(a, b, std::move(cm), std::move(rm));
}

}  // namespace ontomerge
