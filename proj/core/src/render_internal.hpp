#pragma once

// Shared machinery for the DOT and SVG emitters. Internal to core/src.

#include "tmc/errors.hpp"
#include "tmc/model.hpp"
#include "tmc/render.hpp"

#include <string>
#include <vector>

namespace tmc::render_detail {

// Flattened view of a chronology AST as a plain digraph.
struct ChronoNode {
    int id = 0;
    std::string label;
    enum class Shape { Box, Diamond, Bar } shape = Shape::Box;
};

struct ChronoEdge {
    int from = 0;
    int to = 0;
    std::string label;
    bool back = false;  // loop repetition edge
};

struct ChronoGraph {
    std::vector<ChronoNode> nodes;
    std::vector<ChronoEdge> edges;
};

ChronoGraph build_chrono_graph(const BehaviorPtr& root);

// Events selected by opts.event_filter (all when absent), in declaration
// order. Throws ViewError for an unknown filter id or when the document
// declares no events.
std::vector<const Event*> selected_events(const Document& doc,
                                          const RenderOptions& opts);

// True when this node's label should be suppressed (level-2 notation).
bool render_implicit(const Node& node, const RenderOptions& opts);

// Display label of an action/storage node, e.g. "session: create @7".
std::string node_label(const Node& node, const RenderOptions& opts);

// Thimac heading, e.g. "System @3".
std::string thimac_label(const Node& node);

void require_view(const Document& doc, const RenderOptions& opts);

}  // namespace tmc::render_detail
