#include "tmc/render.hpp"

#include "tmc/errors.hpp"
#include "tmc/parser.hpp"
#include "tmc/transform.hpp"
#include "support/dot_reader.hpp"
#include "support/oracles.hpp"
#include "support/xml_scan.hpp"

#include "doctest.h"

using namespace tmc;
using test::read_dot;
using test::scan_xml;

namespace {

Document parse_or_die(const std::string& text) {
    ParseResult result = parse(text);
    REQUIRE(result.ok());
    return *std::move(result.document);
}

int count_occurrences(const std::string& haystack, const std::string& needle) {
    int count = 0;
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

RenderOptions static_dot;

}  // namespace

TEST_CASE("empty model emits a valid empty digraph") {
    Document doc = parse_or_die("model \"m\" {}");
    std::string dot = to_dot(doc, static_dot);
    auto outcome = read_dot(dot);
    REQUIRE_MESSAGE(outcome.ok, outcome.error);
    CHECK(outcome.graph.name == "m");
    CHECK(outcome.graph.node_count == 0);
    CHECK(outcome.graph.edge_count == 0);
}

TEST_CASE("empty model emits a minimal well-formed SVG root") {
    Document doc = parse_or_die("model \"m\" {}");
    RenderOptions opts;
    opts.format = RenderFormat::Svg;
    std::string svg = to_svg(doc, opts);
    auto outcome = scan_xml(svg);
    REQUIRE_MESSAGE(outcome.ok, outcome.error);
    CHECK(svg.rfind("<svg", 0) == 0);
}

TEST_CASE("triggers are dashed in both formats") {
    Document doc = parse_or_die(
        "model \"m\" { thimac A { action p: process\n action c: create }\n"
        "trigger A.p --> A.c }");
    std::string dot = to_dot(doc, static_dot);
    auto outcome = read_dot(dot);
    REQUIRE_MESSAGE(outcome.ok, outcome.error);
    REQUIRE(outcome.graph.edge_count == 1);
    CHECK(outcome.graph.edge_attrs[0].at("style") == "dashed");

    RenderOptions svg_opts;
    svg_opts.format = RenderFormat::Svg;
    std::string svg = to_svg(doc, svg_opts);
    CHECK(count_occurrences(svg, "stroke-dasharray=\"6 3\"") == 1);
}

TEST_CASE("storages are cylinders in DOT and rect+ellipses groups in SVG") {
    Document doc = parse_or_die("model \"m\" { thimac A { store f } }");
    std::string dot = to_dot(doc, static_dot);
    auto outcome = read_dot(dot);
    REQUIRE_MESSAGE(outcome.ok, outcome.error);
    REQUIRE(outcome.graph.node_count == 1);
    CHECK(outcome.graph.node_attrs[0].at("shape") == "cylinder");

    RenderOptions svg_opts;
    svg_opts.format = RenderFormat::Svg;
    std::string svg = to_svg(doc, svg_opts);
    CHECK(count_occurrences(svg, "class=\"storage\"") == 1);
    CHECK(count_occurrences(svg, "<ellipse") == 2);
}

TEST_CASE("sales static DOT counts match stats") {
    Document doc = test::load_corpus_model("sales");
    std::string dot = to_dot(doc, static_dot);
    auto outcome = read_dot(dot);
    REQUIRE_MESSAGE(outcome.ok, outcome.error);
    Stats s = stats(doc);
    CHECK(outcome.graph.node_count == s.actions_total() + s.storages);
    CHECK(outcome.graph.subgraph_count == s.thimacs);
    CHECK(outcome.graph.edge_count == s.flows + s.triggers);
}

TEST_CASE("all corpus views emit parseable DOT and well-formed SVG") {
    for (const char* name : {"sales", "h2s", "milk"}) {
        Document doc = test::load_corpus_model(name);
        for (RenderView view :
             {RenderView::Static, RenderView::Dynamic, RenderView::Chronology}) {
            RenderOptions opts;
            opts.view = view;
            INFO("case ", name, " view ", static_cast<int>(view));
            std::string dot = to_dot(doc, opts);
            auto dot_outcome = read_dot(dot);
            CHECK_MESSAGE(dot_outcome.ok, dot_outcome.error);

            opts.format = RenderFormat::Svg;
            std::string svg = to_svg(doc, opts);
            auto svg_outcome = scan_xml(svg);
            CHECK_MESSAGE(svg_outcome.ok, svg_outcome.error);
        }
    }
}

TEST_CASE("rendering is byte-deterministic") {
    Document doc = test::load_corpus_model("h2s");
    for (RenderView view :
         {RenderView::Static, RenderView::Dynamic, RenderView::Chronology}) {
        RenderOptions opts;
        opts.view = view;
        CHECK(to_dot(doc, opts) == to_dot(doc, opts));
        opts.format = RenderFormat::Svg;
        CHECK(to_svg(doc, opts) == to_svg(doc, opts));
    }
}

TEST_CASE("implicit notation hides create/process labels, keeps node count") {
    Document doc = simplify_level1(test::load_corpus_model("sales")).document;
    Stats s = stats(doc);

    RenderOptions plain;
    RenderOptions implicit;
    implicit.implicit_notation = true;

    auto plain_dot = read_dot(to_dot(doc, plain));
    auto implicit_dot = read_dot(to_dot(doc, implicit));
    REQUIRE(plain_dot.ok);
    REQUIRE(implicit_dot.ok);
    CHECK(plain_dot.graph.node_count == implicit_dot.graph.node_count);

    int hidden = 0;
    for (const auto& attrs : implicit_dot.graph.node_attrs) {
        if (attrs.count("label") && attrs.at("label").empty()) ++hidden;
    }
    CHECK(hidden == s.action_count(ActionKind::Create) +
                        s.action_count(ActionKind::Process));

    // mark_implicit reaches the same rendering without the option.
    Document marked = mark_implicit(doc);
    CHECK(to_dot(marked, plain) == to_dot(doc, implicit));

    RenderOptions svg_plain;
    svg_plain.format = RenderFormat::Svg;
    RenderOptions svg_implicit = svg_plain;
    svg_implicit.implicit_notation = true;
    int text_plain = count_occurrences(to_svg(doc, svg_plain), "<text");
    int text_implicit = count_occurrences(to_svg(doc, svg_implicit), "<text");
    CHECK(text_plain - text_implicit ==
          s.action_count(ActionKind::Create) + s.action_count(ActionKind::Process));
}

TEST_CASE("dynamic view draws one boundary group per selected event") {
    Document doc = test::load_corpus_model("sales");
    RenderOptions opts;
    opts.view = RenderView::Dynamic;
    opts.format = RenderFormat::Svg;
    opts.event_filter = std::set<std::string>{"E1"};
    std::string svg = to_svg(doc, opts);
    CHECK(count_occurrences(svg, "class=\"event\"") == 1);
    CHECK(svg.find("id=\"event_E1\"") != std::string::npos);

    opts.event_filter = std::set<std::string>{"E1", "E5"};
    CHECK(count_occurrences(to_svg(doc, opts), "class=\"event\"") == 2);

    opts.event_filter.reset();
    CHECK(count_occurrences(to_svg(doc, opts), "class=\"event\"") == 6);

    // DOT: one cluster per selected event.
    RenderOptions dot_opts;
    dot_opts.view = RenderView::Dynamic;
    dot_opts.event_filter = std::set<std::string>{"E1"};
    std::string dot = to_dot(doc, dot_opts);
    CHECK(count_occurrences(dot, "cluster_event_") == 1);
}

TEST_CASE("chronology view shows alt diamonds and loop back-edges") {
    Document doc = test::load_corpus_model("h2s");
    RenderOptions opts;
    opts.view = RenderView::Chronology;
    std::string dot = to_dot(doc, opts);
    auto outcome = read_dot(dot);
    REQUIRE_MESSAGE(outcome.ok, outcome.error);
    CHECK(dot.find("shape=diamond") != std::string::npos);
    CHECK(dot.find("constraint=false") != std::string::npos);  // the loop back-edge
    CHECK(dot.find("for all residents in the list") != std::string::npos);
}

TEST_CASE("view preconditions raise ViewError") {
    Document no_events = parse_or_die("model \"m\" { thimac A { action x: create } }");
    RenderOptions dynamic;
    dynamic.view = RenderView::Dynamic;
    CHECK_THROWS_AS(to_dot(no_events, dynamic), ViewError);
    CHECK_THROWS_AS(to_svg(no_events, dynamic), ViewError);

    RenderOptions chronology;
    chronology.view = RenderView::Chronology;
    CHECK_THROWS_AS(to_dot(no_events, chronology), ViewError);

    Document doc = test::load_corpus_model("sales");
    RenderOptions bad_filter;
    bad_filter.view = RenderView::Dynamic;
    bad_filter.event_filter = std::set<std::string>{"E99"};
    CHECK_THROWS_AS(to_dot(doc, bad_filter), ViewError);
}

TEST_CASE("SVG output escapes special characters") {
    Document doc = parse_or_die(
        "model \"m\" { thimac A { action x: create } "
        "event E1 \"a < b & c\" covers { A.x } }");
    RenderOptions opts;
    opts.view = RenderView::Dynamic;
    opts.format = RenderFormat::Svg;
    std::string svg = to_svg(doc, opts);
    auto outcome = scan_xml(svg);
    CHECK_MESSAGE(outcome.ok, outcome.error);
}
