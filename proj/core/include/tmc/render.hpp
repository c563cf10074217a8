#pragma once

#include "tmc/model.hpp"

#include <optional>
#include <set>
#include <string>

namespace tmc {

enum class RenderView { Static, Dynamic, Chronology };
enum class RenderFormat { Dot, Svg };

struct RenderOptions {
    RenderView view = RenderView::Static;
    RenderFormat format = RenderFormat::Dot;
    bool implicit_notation = false;  // draw create/process as bare boxes
    std::optional<std::set<std::string>> event_filter;  // Dynamic view only
};

// Emits a valid DOT digraph: thimacs as clustered subgraphs, actions as
// boxes labeled with their kind, storages as cylinders, triggers dashed.
// The Dynamic view groups region members into per-event clusters; the
// Chronology view renders the behavior AST with alt diamonds and loop
// back-edges. Output is byte-deterministic for a given (doc, opts).
// Throws ViewError when the requested view is not available.
std::string to_dot(const Document& doc, const RenderOptions& opts);

// Self-contained SVG 1.1 subset (rect, ellipse, path, text, g): containment
// as nested rectangles, flows ranked left to right, dashed strokes for
// triggers, a rect-plus-two-ellipses cylinder glyph for storages, and one
// labeled boundary group per selected event in the Dynamic view.
// Deterministic; throws ViewError as to_dot does.
std::string to_svg(const Document& doc, const RenderOptions& opts);

}  // namespace tmc
