#include "tmc/transform.hpp"

#include "tmc/errors.hpp"
#include "tmc/parser.hpp"
#include "tmc/printer.hpp"
#include "tmc/validator.hpp"
#include "support/oracles.hpp"

#include "doctest.h"

#include <algorithm>

using namespace tmc;

namespace {

Document parse_or_die(const std::string& text) {
    ParseResult result = parse(text);
    REQUIRE(result.ok());
    return *std::move(result.document);
}

std::vector<ElementId> surviving_nodes(const Document& doc) {
    std::vector<ElementId> out;
    for (const auto& n : doc.nodes) {
        if (n.is_storage() || (n.is_action() && !is_staging_kind(n.action))) {
            out.push_back(n.id);
        }
    }
    return out;
}

std::set<ElementId> staging_ids(const Document& doc) {
    std::set<ElementId> out;
    for (const auto& n : doc.nodes) {
        if (n.is_action() && is_staging_kind(n.action)) out.insert(n.id);
    }
    return out;
}

}  // namespace

TEST_CASE("a full five-action chain collapses to one flow with provenance") {
    Document doc = parse_or_die(
        "model \"m\" {\n"
        "  thimac A { action c: create\n action r: release\n action t: transfer }\n"
        "  thimac B { action t: transfer\n action v: receive\n action p: process }\n"
        "  flow A.c -> A.r\n flow A.r -> A.t\n flow A.t -> B.t\n"
        "  flow B.t -> B.v\n flow B.v -> B.p\n"
        "}");
    REQUIRE(!has_errors(check_static(doc, Mode::Strict)));

    SimplifyResult result = simplify_level1(doc);
    CHECK(stats(result.document).staging_total() == 0);
    REQUIRE(result.document.edges.size() == 1);
    const Edge& e = result.document.edges[0];
    CHECK(e.from == ElementId("A.c"));
    CHECK(e.to == ElementId("B.p"));
    REQUIRE(e.elided_provenance.size() == 4);
    CHECK(e.elided_provenance[0] == ElementId("A.r"));
    CHECK(e.elided_provenance[1] == ElementId("A.t"));
    CHECK(e.elided_provenance[2] == ElementId("B.t"));
    CHECK(e.elided_provenance[3] == ElementId("B.v"));

    REQUIRE(result.map.replaced.size() == 1);
    CHECK(result.map.replaced.begin()->second == e.elided_provenance);
    CHECK(!has_errors(check_static(result.document, Mode::Simplified)));
}

TEST_CASE("a model without staging nodes is a fixpoint") {
    Document doc = parse_or_die(
        "model \"m\" { thimac A { action c: create\n action p: process }\n"
        "flow A.c -> A.p }");
    SimplifyResult result = simplify_level1(doc);
    CHECK(result.map.empty());
    CHECK(structural_equal(doc, result.document));
}

TEST_CASE("simplification is idempotent on the corpus") {
    for (const char* name : {"sales", "h2s", "milk"}) {
        Document doc = test::load_corpus_model(name);
        SimplifyResult once = simplify_level1(doc);
        SimplifyResult twice = simplify_level1(once.document);
        CHECK(twice.map.empty());
        CHECK(structural_equal(once.document, twice.document));
    }
}

TEST_CASE("corpus simplification: no staging nodes, reachability preserved") {
    for (const char* name : {"sales", "h2s", "milk"}) {
        INFO("corpus case ", name);
        Document doc = test::load_corpus_model(name);
        SimplifyResult result = simplify_level1(doc);

        Stats after = stats(result.document);
        CHECK(after.staging_total() == 0);
        CHECK(after.action_count(ActionKind::Release) == 0);
        CHECK(after.action_count(ActionKind::Transfer) == 0);
        CHECK(after.action_count(ActionKind::Receive) == 0);

        // The load-bearing property: flow reachability restricted to the
        // surviving nodes is identical before and after, per the
        // brute-force closure oracle.
        auto survivors = surviving_nodes(doc);
        auto before = test::oracle_flow_closure(doc, survivors);
        auto post = test::oracle_flow_closure(result.document, survivors);
        CHECK(before == post);

        CHECK(!has_errors(check_static(result.document, Mode::Simplified)));
        CHECK(!has_errors(check_dynamic(result.document)));
    }
}

TEST_CASE("provenance partitions the deleted ids on the corpus") {
    for (const char* name : {"sales", "h2s", "milk"}) {
        Document doc = test::load_corpus_model(name);
        SimplifyResult result = simplify_level1(doc);

        std::set<ElementId> deleted = staging_ids(doc);
        std::set<ElementId> from_map;
        std::size_t total = 0;
        for (const auto& [edge_id, chain] : result.map.replaced) {
            CHECK(result.document.find_edge(edge_id) != nullptr);
            for (const auto& id : chain) {
                CHECK(deleted.count(id) == 1);
                from_map.insert(id);
                ++total;
            }
        }
        CHECK(from_map == deleted);
        // Corpus chains never branch, so the lists are pairwise disjoint.
        CHECK(total == deleted.size());
    }
}

TEST_CASE("branching chains produce one edge per maximal branch") {
    // One release fans out into two transfers toward different processes.
    Document doc = parse_or_die(
        "model \"m\" {\n"
        "  thimac A { action c: create\n action r: release\n"
        "             action t1: transfer\n action t2: transfer }\n"
        "  thimac B { action t: transfer\n action v: receive\n action p: process }\n"
        "  thimac C { action t: transfer\n action v: receive\n action p: process }\n"
        "  flow A.c -> A.r\n flow A.r -> A.t1\n flow A.r -> A.t2\n"
        "  flow A.t1 -> B.t\n flow B.t -> B.v\n flow B.v -> B.p\n"
        "  flow A.t2 -> C.t\n flow C.t -> C.v\n flow C.v -> C.p\n"
        "}");
    REQUIRE(!has_errors(check_static(doc, Mode::Strict)));

    SimplifyResult result = simplify_level1(doc);
    REQUIRE(result.document.edges.size() == 2);
    std::set<std::string> targets;
    for (const auto& e : result.document.edges) {
        CHECK(e.from == ElementId("A.c"));
        targets.insert(e.to->str());
        // The shared prefix (the release) appears in both branches.
        REQUIRE(!e.elided_provenance.empty());
        CHECK(e.elided_provenance.front() == ElementId("A.r"));
    }
    CHECK(targets == std::set<std::string>{"B.p", "C.p"});

    // The union of provenance still equals the deleted set.
    std::set<ElementId> from_map;
    for (const auto& [_, chain] : result.map.replaced) {
        from_map.insert(chain.begin(), chain.end());
    }
    CHECK(from_map == staging_ids(doc));
}

TEST_CASE("triggers on elided nodes remap to the nearest surviving side") {
    Document doc = parse_or_die(
        "model \"m\" {\n"
        "  thimac A { action c: create\n action r: release\n action t: transfer }\n"
        "  thimac B { action t: transfer\n action v: receive\n action p: process }\n"
        "  thimac X { action go: create\n action note: process }\n"
        "  flow A.c -> A.r\n flow A.r -> A.t\n flow A.t -> B.t\n"
        "  flow B.t -> B.v\n flow B.v -> B.p\n"
        "  trigger A.r --> X.go\n"     // release side: remaps to the source
        "  trigger B.v --> X.note\n"   // receive side: remaps to the target
        "}");
    REQUIRE(!has_errors(check_static(doc, Mode::Strict)));

    SimplifyResult result = simplify_level1(doc);
    const Edge* from_release = nullptr;
    const Edge* from_receive = nullptr;
    for (const auto& e : result.document.edges) {
        if (e.kind != EdgeKind::Trigger) continue;
        if (e.to == ElementId("X.go")) from_release = &e;
        if (e.to == ElementId("X.note")) from_receive = &e;
    }
    REQUIRE(from_release);
    REQUIRE(from_receive);
    CHECK(from_release->from == ElementId("A.c"));
    CHECK(from_receive->from == ElementId("B.p"));
    CHECK(!has_errors(check_static(result.document, Mode::Simplified)));
}

TEST_CASE("a chain with no surviving target raises DanglingChain") {
    Document doc = parse_or_die(
        "model \"m\" { thimac A { action c: create\n action r: release\n"
        " action t: transfer }\n"
        "flow A.c -> A.r\n flow A.r -> A.t }");
    try {
        simplify_level1(doc);
        FAIL("expected DanglingChainError");
    } catch (const DanglingChainError& e) {
        auto ids = e.chain_ids();
        CHECK(std::find(ids.begin(), ids.end(), "A.r") != ids.end());
        CHECK(std::find(ids.begin(), ids.end(), "A.t") != ids.end());
    }
}

TEST_CASE("a chain with no surviving source raises DanglingChain") {
    Document doc = parse_or_die(
        "model \"m\" { thimac A { action v: receive\n action p: process }\n"
        "flow A.v -> A.p }");
    CHECK_THROWS_AS(simplify_level1(doc), DanglingChainError);
}

TEST_CASE("event covers are rewritten to surviving endpoints") {
    Document doc = parse_or_die(
        "model \"m\" {\n"
        "  thimac A { action c: create\n action r: release\n action t: transfer }\n"
        "  thimac B { action t: transfer\n action v: receive\n action p: process }\n"
        "  flow A.c -> A.r\n flow A.r -> A.t\n flow A.t -> B.t\n"
        "  flow B.t -> B.v\n flow B.v -> B.p\n"
        "  event E1 \"the move\" covers { A.r, A.t, B.t, B.v }\n"
        "}");
    SimplifyResult result = simplify_level1(doc);
    REQUIRE(result.document.events.size() == 1);
    const Event& event = result.document.events[0];
    std::set<std::string> cover_paths;
    for (const auto& ref : event.covers) cover_paths.insert(ref.path);
    CHECK(cover_paths == std::set<std::string>{"A.c", "B.p"});

    // The materialized region picks up the replacement edge via closure.
    Region region = event_region(result.document, event);
    const ElementId& new_edge = result.map.replaced.begin()->first;
    CHECK(region.contains(new_edge));
}

TEST_CASE("corpus event regions reference the replacement edges") {
    Document doc = test::load_corpus_model("sales");
    SimplifyResult result = simplify_level1(doc);
    // E1 covered the request chain; its rewritten region must contain a
    // replacement flow whose provenance is that chain.
    const Event* e1 = result.document.find_event("E1");
    REQUIRE(e1);
    Region region = event_region(result.document, *e1);
    bool found = false;
    for (const auto& [edge_id, chain] : result.map.replaced) {
        if (region.contains(edge_id) &&
            std::find(chain.begin(), chain.end(), ElementId("Casher.saleReqRel")) !=
                chain.end()) {
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("mark_implicit flags create and process nodes only") {
    Document doc = test::load_corpus_model("sales");
    Document simplified = simplify_level1(doc).document;
    Document marked = mark_implicit(simplified);

    Stats before = stats(simplified);
    Stats after = stats(marked);
    CHECK(before.actions_total() == after.actions_total());
    CHECK(before.thimacs == after.thimacs);
    CHECK(before.storages == after.storages);
    CHECK(before.flows == after.flows);

    for (const auto& n : marked.nodes) {
        bool expect_hint = n.is_action() && (n.action == ActionKind::Create ||
                                             n.action == ActionKind::Process);
        CHECK(n.implicit_hint == expect_hint);
    }
    CHECK(structural_equal(simplified, marked));  // the hint is not structure
}

TEST_CASE("mark_implicit rejects strict-form models") {
    Document doc = test::load_corpus_model("sales");
    CHECK_THROWS_AS(mark_implicit(doc), ModeError);
}

TEST_CASE("mark_implicit on the empty model is the empty model") {
    Document doc = parse_or_die("model \"m\" {}");
    Document marked = mark_implicit(doc);
    CHECK(structural_equal(doc, marked));
    CHECK(marked.nodes.empty());
}
