#include "tmc/model.hpp"

#include "tmc/errors.hpp"
#include "tmc/parser.hpp"
#include "support/oracles.hpp"

#include "doctest.h"

#include <random>

using namespace tmc;
using test::load_corpus_model;
using test::oracle_region;
using test::oracle_resolve;

namespace {

Document parse_or_die(const std::string& text) {
    ParseResult result = parse(text);
    REQUIRE(result.ok());
    return *std::move(result.document);
}

}  // namespace

TEST_CASE("resolve_ref finds elements by dotted path") {
    Document doc = load_corpus_model("sales");

    ElementId id = resolve_ref(doc, "System.newSale");
    const Node* node = doc.find_node(id);
    REQUIRE(node != nullptr);
    CHECK(node->name == "newSale");
    CHECK(node->is_thimac());
    CHECK(id == *oracle_resolve(doc, "System.newSale"));

    // Every node's path resolves to itself, and agrees with the tree scan.
    for (const auto& n : doc.nodes) {
        CHECK(resolve_ref(doc, n.id.str()) == n.id);
        CHECK(*oracle_resolve(doc, n.id.str()) == n.id);
    }
}

TEST_CASE("resolve_ref rejects unknown and empty paths") {
    Document doc = load_corpus_model("sales");
    CHECK_THROWS_AS(resolve_ref(doc, ""), UnknownRefError);
    CHECK_THROWS_AS(resolve_ref(doc, "Casher.nonexistent"), UnknownRefError);
    CHECK_THROWS_AS(resolve_ref(doc, "newSale"), UnknownRefError);  // not a root
    CHECK(!oracle_resolve(doc, "Casher.nonexistent").has_value());
}

TEST_CASE("containment forms a tree") {
    for (const char* name : {"sales", "h2s", "milk"}) {
        Document doc = load_corpus_model(name);
        int roots = 0;
        for (const auto& n : doc.nodes) {
            if (!n.owner) {
                ++roots;
                continue;
            }
            // Owner exists, is a thimac, and lists this node exactly once.
            const Node* owner = doc.find_node(*n.owner);
            REQUIRE(owner != nullptr);
            CHECK(owner->is_thimac());
            int listed = 0;
            for (const auto& c : owner->children) {
                if (c == n.id) ++listed;
            }
            CHECK(listed == 1);
            // Walking owners terminates (no cycle).
            const Node* cur = &n;
            int hops = 0;
            while (cur->owner) {
                cur = doc.find_node(*cur->owner);
                REQUIRE(cur != nullptr);
                REQUIRE(++hops < 1000);
            }
        }
        CHECK(roots > 0);
    }
}

TEST_CASE("region_of on empty seeds is empty") {
    Document doc = load_corpus_model("sales");
    CHECK(region_of(doc, {}).empty());
}

TEST_CASE("region_of rejects unknown seeds") {
    Document doc = load_corpus_model("sales");
    CHECK_THROWS_AS(region_of(doc, {ElementId("bogus")}), UnknownRefError);
}

TEST_CASE("region of all Casher actions stays inside Casher") {
    Document doc = load_corpus_model("sales");
    std::set<ElementId> seeds;
    for (const auto& n : doc.nodes) {
        if (n.is_action() && n.owner == ElementId("Casher")) seeds.insert(n.id);
    }
    REQUIRE(!seeds.empty());

    Region region = region_of(doc, seeds);
    CHECK(region.elements == oracle_region(doc, seeds));
    CHECK(region.contains(ElementId("Casher")));
    for (const auto& id : region.elements) {
        if (const Node* n = doc.find_node(id)) {
            CHECK((n->id == ElementId("Casher") || n->owner == ElementId("Casher")));
        } else {
            // Edges in the region must have both endpoints inside.
            const Edge* e = doc.find_edge(id);
            REQUIRE(e != nullptr);
            CHECK(region.contains(*e->from));
            CHECK(region.contains(*e->to));
        }
    }
}

TEST_CASE("region_of is idempotent and monotone") {
    Document doc = load_corpus_model("h2s");
    std::vector<ElementId> all;
    for (const auto& n : doc.nodes) all.push_back(n.id);

    std::mt19937 rng(20240915);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int round = 0; round < 30; ++round) {
        std::set<ElementId> seeds1;
        for (int i = 0; i < 4; ++i) seeds1.insert(all[pick(rng)]);
        std::set<ElementId> seeds2 = seeds1;
        for (int i = 0; i < 3; ++i) seeds2.insert(all[pick(rng)]);

        Region r1 = region_of(doc, seeds1);
        Region r2 = region_of(doc, seeds2);

        // Idempotence: closing a closed region changes nothing.
        CHECK(region_of(doc, r1.elements).elements == r1.elements);
        // Monotone in the seeds.
        CHECK(std::includes(r2.elements.begin(), r2.elements.end(),
                            r1.elements.begin(), r1.elements.end()));
        // Agreement with the brute-force filter.
        CHECK(r1.elements == oracle_region(doc, seeds1));
    }
}

TEST_CASE("event regions satisfy the edge closure invariant") {
    Document doc = load_corpus_model("sales");
    for (const auto& event : doc.events) {
        Region region = event_region(doc, event);
        for (const auto& e : doc.edges) {
            bool both_in = e.from && e.to && region.contains(*e.from) &&
                           region.contains(*e.to);
            CHECK(region.contains(e.id) == both_in);
        }
    }
}

TEST_CASE("stats counts the paper's event lists") {
    CHECK(stats(load_corpus_model("sales")).events == 6);
    CHECK(stats(load_corpus_model("h2s")).events == 17);
    CHECK(stats(load_corpus_model("milk")).events == 26);
}

TEST_CASE("stats totals equal the declaration counts in the source") {
    for (const char* name : {"sales", "h2s", "milk"}) {
        std::string text =
            test::read_file_or_die(test::corpus_path(std::string(name) + "/model.tm"));
        // Count declaration keywords at the start of each (comment-stripped)
        // line; the grammar puts every declaration on its own line in the
        // corpus files.
        auto count_decl = [&](const std::string& keyword) {
            int count = 0;
            std::size_t pos = 0;
            while (pos < text.size()) {
                std::size_t eol = text.find('\n', pos);
                if (eol == std::string::npos) eol = text.size();
                std::string line = text.substr(pos, eol - pos);
                std::size_t comment = line.find("//");
                if (comment != std::string::npos) line = line.substr(0, comment);
                std::size_t start = line.find_first_not_of(" \t");
                if (start != std::string::npos &&
                    line.compare(start, keyword.size(), keyword) == 0 &&
                    (start + keyword.size() == line.size() ||
                     line[start + keyword.size()] == ' ')) {
                    ++count;
                }
                pos = eol + 1;
            }
            return count;
        };

        Document doc = load_corpus_model(name);
        Stats s = stats(doc);
        CHECK(s.thimacs == count_decl("thimac"));
        CHECK(s.actions_total() == count_decl("action"));
        CHECK(s.storages == count_decl("store"));
        CHECK(s.flows == count_decl("flow"));
        CHECK(s.triggers == count_decl("trigger"));
        CHECK(s.events == count_decl("event"));
    }
}

TEST_CASE("stats is pure and exact on a tiny model") {
    Document doc = parse_or_die(
        "model \"m\" {\n"
        "  thimac A { action c: create\n action p: process\n store s }\n"
        "  flow A.c -> A.p\n"
        "  trigger A.p --> A.c\n"
        "}\n");
    Stats s = stats(doc);
    CHECK(s.thimacs == 1);
    CHECK(s.action_count(ActionKind::Create) == 1);
    CHECK(s.action_count(ActionKind::Process) == 1);
    CHECK(s.staging_total() == 0);
    CHECK(s.storages == 1);
    CHECK(s.flows == 1);
    CHECK(s.triggers == 1);
    CHECK(s.events == 0);
}
