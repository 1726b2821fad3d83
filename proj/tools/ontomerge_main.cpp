#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ontomerge/canonical.hpp"
#include "ontomerge/category_ops.hpp"
#include "ontomerge/closure.hpp"
#include "ontomerge/dot_export.hpp"
#include "ontomerge/errors.hpp"
#include "ontomerge/hom_search.hpp"
#include "ontomerge/json_io.hpp"
#include "ontomerge/poset.hpp"
#include "ontomerge/properties.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ontomerge;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kParse = 2;
constexpr int kViolation = 3;
constexpr int kLimit = 4;

struct ClosureBundle {
    Manifest manifest;
    Repository repository;
    ClosureResult closure;
};

ClosureBundle load_closure(const fs::path& manifest_path) {
    ClosureBundle bundle;
    bundle.manifest = parse_manifest_file(manifest_path);
    bundle.repository = load_repository(bundle.manifest);
    bundle.closure = compute_closure(bundle.repository, bundle.manifest.limits);
    return bundle;
}

// Member lookup by display name (m000...) or key digest.
CanonicalKey resolve_member(const ClosureResult& closure, const std::string& token) {
    auto names = member_names(closure);
    for (const auto& [key, name] : names)
        if (name == token || key.digest() == token) return key;
    throw UnknownElement("no closure member named '" + token +
                         "' (use a member name like m000 or a key digest)");
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory: " + dir.string());
}

std::optional<fs::path> pick_output_dir(const ClosureBundle& bundle, const std::string& flag) {
    if (!flag.empty()) return fs::path(flag);
    return bundle.manifest.output_dir;
}

int command_validate(const std::vector<std::string>& paths) {
    bool ok = true;
    for (const auto& path : paths) {
        try {
            Ontology ontology = parse_ontology_file(path);
            std::cout << path << ": ok (" << ontology.concept_count() << " concepts, "
                      << ontology.relation_count() << " relations)\n";
        } catch (const Error& error) {
            ok = false;
            std::cerr << path << ": " << error.what() << "\n";
        }
    }
    return ok ? kOk : kParse;
}

int command_merge(const std::string& alignment_path, const std::string& output) {
    fs::path path(alignment_path);
    VAlignmentPair pair = parse_alignment_file(path, path_resolver(path.parent_path()));
    PushoutResult result = pushout(pair);
    std::string text = merge_output_json(result).dump(2) + "\n";
    if (output.empty())
        std::cout << text;
    else
        write_text_file(output, text);
    return kOk;
}

void write_closure_files(const ClosureBundle& bundle, const fs::path& dir) {
    ensure_directory(dir / "members");
    auto names = member_names(bundle.closure);
    for (const auto& [key, member] : bundle.closure.members)
        write_ontology_file(dir / "members" / (names.at(key) + ".json"), member);
    write_text_file(dir / "closure.json", closure_to_json(bundle.closure).dump(2) + "\n");
}

int command_closure(const std::string& manifest_path, const std::string& output_flag) {
    ClosureBundle bundle = load_closure(manifest_path);
    std::cout << closure_to_json(bundle.closure).dump(2) << "\n";
    if (auto dir = pick_output_dir(bundle, output_flag)) write_closure_files(bundle, *dir);
    return kOk;
}

int command_order(const std::string& manifest_path, const std::string& output_flag) {
    ClosureBundle bundle = load_closure(manifest_path);
    Poset poset = build_poset(bundle.closure);
    std::string poset_text = poset_to_json(poset, bundle.closure).dump(2) + "\n";
    std::string dot_text = hasse_to_dot(poset, bundle.closure);
    if (auto dir = pick_output_dir(bundle, output_flag)) {
        ensure_directory(*dir);
        write_text_file(*dir / "poset.json", poset_text);
        write_text_file(*dir / "hasse.dot", dot_text);
        std::cout << "wrote " << (*dir / "poset.json").string() << " and "
                  << (*dir / "hasse.dot").string() << "\n";
    } else {
        std::cout << poset_text << dot_text;
    }
    return kOk;
}

int command_query(const std::string& manifest_path, bool maximal, bool minimal, bool sorted,
                  const std::string& above, const std::string& below) {
    ClosureBundle bundle = load_closure(manifest_path);
    Poset poset = build_poset(bundle.closure);
    auto names = member_names(bundle.closure);
    std::vector<CanonicalKey> result;
    if (maximal)
        result = poset_maximal(poset);
    else if (minimal)
        result = poset_minimal(poset);
    else if (sorted)
        result = poset_sort(poset, bundle.closure);
    else if (!above.empty())
        result = poset_above(poset, resolve_member(bundle.closure, above));
    else if (!below.empty())
        result = poset_below(poset, resolve_member(bundle.closure, below));
    for (const auto& key : result) std::cout << names.at(key) << "\t" << key.digest() << "\n";
    return kOk;
}

int command_check(const std::string& manifest_path, const std::string& property_name,
                  std::size_t audit_count, std::uint64_t seed, bool allow_large) {
    if (audit_count > 0) {
        // Self-audit of the checker on seeded random systems: any implication
        // violation is an inconsistency in the checker itself.
        std::size_t failures = 0;
        for (std::size_t i = 0; i < audit_count; ++i) {
            TableSystem system = random_table_system(seed + i);
            VerifiedReport verified = verify_report(system);
            if (!verified.audit.consistent) {
                ++failures;
                std::cerr << "seed " << (seed + i) << ": ";
                for (const auto& violation : verified.audit.violations)
                    std::cerr << violation << "; ";
                std::cerr << "\n";
            }
        }
        std::cout << "audited " << audit_count << " random systems, " << failures
                  << " implication violations\n";
        return failures == 0 ? kOk : kViolation;
    }

    if (manifest_path.empty()) {
        std::cerr << "check: a manifest is required unless --audit-random is given\n";
        return kUsage;
    }
    ClosureBundle bundle = load_closure(manifest_path);
    PushoutClosureSystem system(bundle.closure);

    std::vector<PropertyId> selected;
    if (!property_name.empty()) {
        auto property = parse_property(property_name);
        if (!property) {
            std::cerr << "check: unknown property '" << property_name << "'\n";
            return kUsage;
        }
        selected.push_back(*property);
    } else {
        for (PropertyId property : all_properties())
            if (!property_needs_order(property)) selected.push_back(property);
    }

    // Order-relative properties are checked against the merge-induced order.
    std::optional<Order> order;
    for (PropertyId property : selected)
        if (property_needs_order(property) && !order) {
            order = natural_order(system);
            validate_order(system, *order);
        }

    Json output = Json::array();
    bool violated = false;
    for (PropertyId property : selected) {
        PropertyReport report =
            check_property(system, property, order ? &*order : nullptr, allow_large);
        output.push_back(property_report_to_json(system, report));
        if (!report.holds) {
            violated = true;
            std::cerr << "property " << to_string(property) << " fails";
            if (report.counterexample) {
                std::cerr << " at (";
                for (std::size_t i = 0; i < report.counterexample->elements.size(); ++i)
                    std::cerr << (i ? ", " : "")
                              << system.element_name(report.counterexample->elements[i]);
                std::cerr << "): " << report.counterexample->detail;
            }
            std::cerr << "\n";
        }
    }
    std::cout << output.dump(2) << "\n";
    return violated ? kViolation : kOk;
}

int command_hom(const std::string& src_path, const std::string& dst_path, bool count_only,
                bool all, std::size_t budget) {
    Ontology source = parse_ontology_file(src_path);
    Ontology target = parse_ontology_file(dst_path);
    HomSearchOptions options;
    options.budget = budget;
    if (count_only) {
        options.mode = HomSearchMode::count;
        std::cout << find_homomorphisms(source, target, options).count << "\n";
        return kOk;
    }
    if (all) {
        options.mode = HomSearchMode::all;
        HomSearchResult result = find_homomorphisms(source, target, options);
        Json output = Json::array();
        for (const auto& hom : result.homs) output.push_back(homomorphism_to_json(hom));
        std::cout << output.dump(2) << "\n";
        return kOk;
    }
    auto hom = find_first_homomorphism(source, target, budget);
    if (!hom) {
        std::cout << "null\n";
        return kOk;
    }
    std::cout << homomorphism_to_json(*hom).dump(2) << "\n";
    return kOk;
}

int command_iso(const std::string& a_path, const std::string& b_path) {
    Ontology a = parse_ontology_file(a_path);
    Ontology b = parse_ontology_file(b_path);
    if (!is_isomorphic(a, b)) {
        std::cout << "not isomorphic\n";
        return kOk;
    }
    std::cout << "isomorphic\n" << homomorphism_to_json(canonical_isomorphism(a, b)).dump(2)
              << "\n";
    return kOk;
}

int command_provenance(const std::string& manifest_path, const std::string& member) {
    ClosureBundle bundle = load_closure(manifest_path);
    CanonicalKey key = resolve_member(bundle.closure, member);
    MergeTree tree = provenance_of(bundle.closure, key);
    std::cout << merge_tree_to_json(tree, member_names(bundle.closure)).dump(2) << "\n";
    return kOk;
}

int dispatch(const std::function<int()>& body) {
    try {
        return body();
    } catch (const LimitExceeded& error) {
        std::cerr << "limit exceeded: " << error.what() << "\n";
        return kLimit;
    } catch (const BudgetExceeded& error) {
        std::cerr << "budget exceeded: " << error.what() << "\n";
        return kLimit;
    } catch (const ParseError& error) {
        std::cerr << error.what() << "\n";
        return kParse;
    } catch (const ValidationError& error) {
        std::cerr << error.what() << "\n";
        return kParse;
    } catch (const InvalidHomomorphism& error) {
        std::cerr << "invalid homomorphism: " << error.what() << "\n";
        return kParse;
    } catch (const PreconditionFailed& error) {
        std::cerr << "precondition failed: " << error.what() << "\n";
        return kParse;
    } catch (const UnknownElement& error) {
        std::cerr << error.what() << "\n";
        return kParse;
    } catch (const Error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ontology merging: pushout merges, merging closures, property checks"};
    app.require_subcommand(1);

    auto* validate = app.add_subcommand("validate", "Parse and validate ontology files");
    std::vector<std::string> validate_paths;
    validate->add_option("files", validate_paths, "Ontology files")->required()->expected(-1);

    auto* merge = app.add_subcommand("merge", "Merge one alignment via its pushout");
    std::string merge_alignment;
    std::string merge_output;
    merge->add_option("alignment", merge_alignment, "Alignment file")->required();
    merge->add_option("-o,--output", merge_output, "Write the result to this file");

    auto* closure = app.add_subcommand("closure", "Compute the merging closure of a repository");
    std::string closure_manifest;
    std::string closure_output;
    closure->add_option("manifest", closure_manifest, "Manifest file")->required();
    closure->add_option("-o,--output", closure_output, "Output directory for member files");

    auto* order = app.add_subcommand("order", "Order the closure members by homomorphism");
    std::string order_manifest;
    std::string order_output;
    order->add_option("manifest", order_manifest, "Manifest file")->required();
    order->add_option("-o,--output", order_output, "Output directory for poset.json/hasse.dot");

    auto* query = app.add_subcommand("query", "Query the member order");
    std::string query_manifest;
    bool query_maximal = false;
    bool query_minimal = false;
    bool query_sort = false;
    std::string query_above;
    std::string query_below;
    query->add_option("manifest", query_manifest, "Manifest file")->required();
    auto* group = query->add_option_group("selector")->require_option(1);
    group->add_flag("--maximal", query_maximal, "Members no other member lies above");
    group->add_flag("--minimal", query_minimal, "Members no other member lies below");
    group->add_flag("--sort", query_sort, "All members in a linear extension of the order");
    group->add_option("--above", query_above, "Members strictly above the given member");
    group->add_option("--below", query_below, "Members strictly below the given member");

    auto* check = app.add_subcommand("check", "Check algebraic properties of a closure");
    std::string check_manifest;
    std::string check_property_name;
    std::size_t audit_count = 0;
    std::uint64_t audit_seed = 1;
    bool check_allow_large = false;
    check->add_option("manifest", check_manifest, "Manifest file");
    check->add_option("--property", check_property_name,
                      "One of I, C, A, CA, SA, Rl, Rr, R, LU, CPl, CPr, CP");
    check->add_option("--audit-random", audit_count,
                      "Audit the checker itself on this many random systems");
    check->add_option("--seed", audit_seed, "Seed for --audit-random");
    check->add_flag("--allow-large", check_allow_large, "Allow triple scans above 200 members");

    auto* hom = app.add_subcommand("hom", "Search homomorphisms between two ontologies");
    std::string hom_src;
    std::string hom_dst;
    bool hom_count = false;
    bool hom_all = false;
    std::size_t hom_budget = 5'000'000;
    hom->add_option("source", hom_src, "Source ontology file")->required();
    hom->add_option("target", hom_dst, "Target ontology file")->required();
    hom->add_flag("--count", hom_count, "Print only the number of homomorphisms");
    hom->add_flag("--all", hom_all, "Print every homomorphism");
    hom->add_option("--budget", hom_budget, "Search step budget");

    auto* iso = app.add_subcommand("iso", "Decide isomorphism of two ontologies");
    std::string iso_a;
    std::string iso_b;
    iso->add_option("first", iso_a, "First ontology file")->required();
    iso->add_option("second", iso_b, "Second ontology file")->required();

    auto* provenance = app.add_subcommand("provenance", "Show how a closure member was derived");
    std::string provenance_manifest;
    std::string provenance_member;
    provenance->add_option("manifest", provenance_manifest, "Manifest file")->required();
    provenance->add_option("member", provenance_member, "Member name (m000) or key digest")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        int code = app.exit(error);
        return code == 0 ? kOk : kUsage;
    }

    if (validate->parsed()) return dispatch([&] { return command_validate(validate_paths); });
    if (merge->parsed())
        return dispatch([&] { return command_merge(merge_alignment, merge_output); });
    if (closure->parsed())
        return dispatch([&] { return command_closure(closure_manifest, closure_output); });
    if (order->parsed())
        return dispatch([&] { return command_order(order_manifest, order_output); });
    if (query->parsed())
        return dispatch([&] {
            return command_query(query_manifest, query_maximal, query_minimal, query_sort,
                                 query_above, query_below);
        });
    if (check->parsed())
        return dispatch([&] {
            return command_check(check_manifest, check_property_name, audit_count, audit_seed,
                                 check_allow_large);
        });
    if (hom->parsed())
        return dispatch([&] { return command_hom(hom_src, hom_dst, hom_count, hom_all, hom_budget); });
    if (iso->parsed()) return dispatch([&] { return command_iso(iso_a, iso_b); });
    if (provenance->parsed())
        return dispatch([&] { return command_provenance(provenance_manifest, provenance_member); });
    return kUsage;
}
