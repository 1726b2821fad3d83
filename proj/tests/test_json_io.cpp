#include "doctest.h"

#include <cstdlib>
#include <filesystem>

#include "ontomerge/dot_export.hpp"
#include "ontomerge/errors.hpp"
#include "ontomerge/json_io.hpp"
#include "test_support.hpp"

using namespace ontomerge;
using namespace ontomerge::testing;

namespace {

const std::string kCanonical = R"({
  "concepts": [
    {
      "id": "person",
      "tag": "person",
      "label": "Person"
    },
    {
      "id": "student",
      "tag": "student"
    }
  ],
  "relations": [
    {
      "id": "studies",
      "tag": "attends",
      "src": "student",
      "dst": "person"
    }
  ]
}
)";

}  // namespace

TEST_CASE("parse then serialize reproduces a canonically ordered file byte for byte") {
    Ontology o = parse_ontology_text(kCanonical);
    CHECK(serialize_ontology(o) == kCanonical);
    CHECK(o.concept_by_id("person").label == "Person");
    CHECK(o.relation_by_id("studies").src == "student");
}

TEST_CASE("serialization orders elements by id even when the input does not") {
    Ontology o = parse_ontology_text(
        R"({"concepts": [{"id": "b"}, {"id": "a"}], "relations": []})");
    std::string text = serialize_ontology(o);
    CHECK(text.find("\"a\"") < text.find("\"b\""));
    // absent optional fields stay absent
    CHECK(text.find("tag") == std::string::npos);
    CHECK(text.find("label") == std::string::npos);
}

TEST_CASE("round trips over random ontologies are lossless") {
    Rng rng(41);
    for (int i = 0; i < 60; ++i) {
        Ontology o = random_ontology(rng);
        std::string once = serialize_ontology(o);
        Ontology back = parse_ontology_text(once);
        CHECK(back == o);
        CHECK(serialize_ontology(back) == once);
    }
}

TEST_CASE("duplicate ids are a parse error, not a validation afterthought") {
    CHECK_THROWS_AS(parse_ontology_text(
                        R"({"concepts": [{"id": "a"}, {"id": "a"}], "relations": []})"),
                    ParseError);
}

TEST_CASE("unknown fields are rejected with their name and context") {
    try {
        parse_ontology_text(R"({"concepts": [{"id": "a", "tags": "x"}], "relations": []})",
                            "test.json");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        std::string message = e.what();
        CHECK(message.find("tags") != std::string::npos);
        CHECK(message.find("test.json") != std::string::npos);
    }
}

TEST_CASE("malformed documents fail cleanly") {
    CHECK_THROWS_AS(parse_ontology_text("not json at all"), ParseError);
    CHECK_THROWS_AS(parse_ontology_text("[]"), ParseError);
    CHECK_THROWS_AS(parse_ontology_text(R"({"concepts": [{"tag": "t"}], "relations": []})"),
                    ParseError);  // missing id
    CHECK_THROWS_AS(parse_ontology_text(R"({"concepts": [{"id": 7}], "relations": []})"),
                    ParseError);  // wrong type
    CHECK_THROWS_AS(
        parse_ontology_text(R"({"concepts": [], "relations": [{"id": "r", "src": "a"}]})"),
        ParseError);  // missing dst
}

TEST_CASE("relation endpoints that name no concept surface as validation errors") {
    CHECK_THROWS_AS(
        parse_ontology_text(
            R"({"concepts": [], "relations": [{"id": "r", "src": "a", "dst": "a"}]})"),
        ValidationError);
}

TEST_CASE("alignment files with inline bases parse into validated spans") {
    VAlignmentPair pair = parse_alignment_file(
        std::filesystem::path(fixtures_dir()) / "person_alignment.json",
        path_resolver(fixtures_dir()));
    CHECK(pair.base().concept_count() == 1);
    CHECK(pair.left_ontology().has_concept("student"));
    CHECK(pair.right_ontology().has_concept("employee"));
    CHECK(pair.correspondence().concepts.count({"person", "person"}) == 1);
}

TEST_CASE("alignment files with path bases resolve relative to their directory") {
    VAlignmentPair pair = parse_alignment_file(
        std::filesystem::path(fixtures_dir()) / "align_ab.json", path_resolver(fixtures_dir()));
    CHECK(pair.base().concept_count() == 1);
    CHECK(pair.base().has_concept("hub"));
}

TEST_CASE("alignment legs that break homomorphism rules are rejected as such") {
    auto resolver = [](const std::string& name) {
        if (name == "tagged") return Ontology::validated({{"a", "t", {}}}, {});
        return Ontology::validated({{"b", "u", {}}}, {});
    };
    // base concept tagged "t" cannot land on a "u"-tagged target
    std::string text = R"({
      "base": {"concepts": [{"id": "x", "tag": "t"}], "relations": []},
      "left": "tagged", "right": "other",
      "r1": {"concepts": {"x": "a"}, "relations": {}},
      "r2": {"concepts": {"x": "b"}, "relations": {}}
    })";
    CHECK_THROWS_AS(parse_alignment_text(text, resolver, "."), InvalidHomomorphism);

    // a base element with no image is not total
    std::string partial = R"({
      "base": {"concepts": [{"id": "x", "tag": "t"}], "relations": []},
      "left": "tagged", "right": "tagged",
      "r1": {"concepts": {}, "relations": {}},
      "r2": {"concepts": {"x": "a"}, "relations": {}}
    })";
    CHECK_THROWS_AS(parse_alignment_text(partial, resolver, "."), InvalidHomomorphism);
}

TEST_CASE("manifests load the repository with name-based alignment resolution") {
    Manifest manifest =
        parse_manifest_file(std::filesystem::path(fixtures_dir()) / "manifest.json");
    CHECK(manifest.ontologies.size() == 2);
    CHECK(manifest.alignments.size() == 1);
    Repository repo = load_repository(manifest);
    CHECK(repo.ontologies.size() == 2);
    CHECK(repo.alignments.size() == 1);
}

TEST_CASE("alignments naming undeclared ontologies fail to load") {
    Manifest manifest =
        parse_manifest_file(std::filesystem::path(fixtures_dir()) / "manifest.json");
    manifest.ontologies.erase("pe.json");
    CHECK_THROWS_AS(load_repository(manifest), ParseError);
}

TEST_CASE("manifest limits override the defaults") {
    Manifest manifest =
        parse_manifest_file(std::filesystem::path(fixtures_dir()) / "tight_manifest.json");
    CHECK(manifest.limits.max_members == 2);
    CHECK(manifest.limits.max_element_size == ClosureLimits{}.max_element_size);
}

TEST_CASE("the limits environment variable layers between defaults and manifest") {
    ::setenv("ONTOMERGE_LIMITS", R"({"max_rounds": 7})", 1);
    ClosureLimits limits = limits_from_env(ClosureLimits{});
    ::unsetenv("ONTOMERGE_LIMITS");
    CHECK(limits.max_rounds == 7);
    CHECK(limits.max_members == ClosureLimits{}.max_members);

    CHECK_THROWS_AS(parse_limits_text(R"({"max_rounds": 0})", ClosureLimits{}, "env"),
                    ParseError);
    CHECK_THROWS_AS(parse_limits_text(R"({"max_round": 2})", ClosureLimits{}, "env"),
                    ParseError);
}

TEST_CASE("unknown manifest keys are rejected") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "ontomerge_manifest_test";
    fs::create_directories(dir);
    write_text_file(dir / "bad.json", R"({"ontologys": {}})");
    CHECK_THROWS_AS(parse_manifest_file(dir / "bad.json"), ParseError);
    fs::remove_all(dir);
}

TEST_CASE("homomorphism serialization lists both component maps") {
    Ontology o = parse_ontology_text(kCanonical);
    Json j = homomorphism_to_json(Homomorphism::identity(o));
    CHECK(j["concepts"]["person"] == "person");
    CHECK(j["relations"]["studies"] == "studies");
}

TEST_CASE("closure serialization reports members, layers and pairs by name") {
    Manifest manifest =
        parse_manifest_file(std::filesystem::path(fixtures_dir()) / "manifest.json");
    ClosureResult closure = compute_closure(load_repository(manifest), manifest.limits);
    Json j = closure_to_json(closure);
    CHECK(j["complete"] == true);
    CHECK(j["members"].size() == 3);
    CHECK(j["members"].contains("m000"));
    CHECK(j["members"]["m002"]["layer"] == 2);
    CHECK(j["aligned_pairs"].size() == 3);

    auto names = member_names(closure);
    MergeTree tree = provenance_of(closure, closure.members.rbegin()->first);
    Json tree_json = merge_tree_to_json(tree, names);
    CHECK(tree_json.contains("member"));
}

TEST_CASE("DOT export captions fall back from label to tag to id") {
    Ontology o = Ontology::validated(
        {{"a", "tagged", "Labeled"}, {"b", "tagged_only", {}}, {"c", {}, {}}},
        {{"r", {}, {}, "a", "b"}});
    std::string dot = ontology_to_dot(o);
    CHECK(dot.find("\"Labeled\"") != std::string::npos);
    CHECK(dot.find("\"tagged_only\"") != std::string::npos);
    CHECK(dot.find("\"c\"") != std::string::npos);
    CHECK(dot.find("digraph") != std::string::npos);
}

TEST_CASE("DOT export escapes quotes and backslashes in captions") {
    Ontology o = Ontology::validated({{"a", {}, R"(say "hi" \ bye)"}}, {});
    std::string dot = ontology_to_dot(o);
    CHECK(dot.find(R"(\")") != std::string::npos);
    CHECK(dot.find(R"(\\)") != std::string::npos);
}

TEST_CASE("the Hasse DOT groups classes into layer ranks") {
    Manifest manifest =
        parse_manifest_file(std::filesystem::path(fixtures_dir()) / "manifest.json");
    ClosureResult closure = compute_closure(load_repository(manifest), manifest.limits);
    Poset poset = build_poset(closure);
    std::string dot = hasse_to_dot(poset, closure);
    CHECK(dot.find("rank=same") != std::string::npos);
    CHECK(dot.find("m002") != std::string::npos);
    CHECK(dot.find("->") != std::string::npos);
}
