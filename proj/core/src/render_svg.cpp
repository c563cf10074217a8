#include "tmc/render.hpp"

#include "render_internal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace tmc {

namespace {

using render_detail::ChronoGraph;
using render_detail::ChronoNode;

constexpr int kNodeHeight = 34;
constexpr int kTitleStrip = 18;
constexpr int kPad = 12;
constexpr int kGapX = 46;
constexpr int kGapY = 14;

struct Box {
    int x = 0, y = 0, w = 0, h = 0;

    int cx() const { return x + w / 2; }
    int cy() const { return y + h / 2; }
};

int text_width(const std::string& s) {
    return 14 + 7 * static_cast<int>(s.size());
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Longest-path ranks over `edges` between 0..count-1, cycle-tolerant.
std::vector<int> longest_path_ranks(int count,
                                    const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> rank(static_cast<std::size_t>(count), 0);
    for (int pass = 0; pass < count; ++pass) {
        bool changed = false;
        for (const auto& [u, v] : edges) {
            if (rank[v] < rank[u] + 1 && rank[u] + 1 < count + 1) {
                rank[v] = rank[u] + 1;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return rank;
}

// One barycenter pass: stable-sorts items of each rank by the mean order
// index of their predecessors.
void barycenter_order(std::vector<std::vector<int>>& columns,
                      const std::vector<std::pair<int, int>>& edges) {
    std::map<int, int> row_of;
    for (const auto& col : columns) {
        for (std::size_t r = 0; r < col.size(); ++r) row_of[col[r]] = static_cast<int>(r);
    }
    for (auto& col : columns) {
        std::vector<std::pair<double, int>> keyed;
        for (std::size_t r = 0; r < col.size(); ++r) {
            double sum = 0;
            int n = 0;
            for (const auto& [u, v] : edges) {
                if (v == col[r]) {
                    sum += row_of[u];
                    ++n;
                }
            }
            double key = n ? sum / n : static_cast<double>(r);
            keyed.emplace_back(key, col[r]);
        }
        std::stable_sort(keyed.begin(), keyed.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t r = 0; r < col.size(); ++r) {
            col[r] = keyed[r].second;
            row_of[col[r]] = static_cast<int>(r);
        }
    }
}

class SvgEmitter {
public:
    SvgEmitter(const Document& doc, const RenderOptions& opts) : doc_(doc), opts_(opts) {}

    std::string run() {
        render_detail::require_view(doc_, opts_);
        if (opts_.view == RenderView::Chronology) return chronology_svg();
        return model_svg();
    }

private:
    // ---- model layout -----------------------------------------------------

    // Ancestor of `id` that is a direct child of `scope` (nullopt scope =
    // document level); empty id when `id` is not under `scope`.
    ElementId child_ancestor(const ElementId& id,
                             const std::optional<ElementId>& scope) const {
        const Node* n = doc_.find_node(id);
        while (n) {
            if (n->owner == scope) return n->id;
            n = n->owner ? doc_.find_node(*n->owner) : nullptr;
        }
        return ElementId();
    }

    // Recursively computes sizes and container-relative positions for every
    // element under `scope`; returns the content extent.
    std::pair<int, int> layout_scope(const std::optional<ElementId>& scope,
                                     const std::vector<const Node*>& items) {
        // Sizes first (thimacs recurse).
        for (const Node* item : items) {
            if (item->is_thimac()) {
                auto children = doc_.children_of(*item);
                auto [w, h] = layout_scope(item->id, children);
                sizes_[item->id] = {std::max(w + 2 * kPad, text_width(item->name) + 2 * kPad),
                                    h + kTitleStrip + 2 * kPad};
            } else {
                std::string label = render_detail::node_label(*item, opts_);
                int w = std::max(70, text_width(label));
                sizes_[item->id] = {w, item->is_storage() ? kNodeHeight + 10 : kNodeHeight};
            }
        }

        // Rank by longest path over flow edges collapsed to this scope.
        std::map<ElementId, int> index;
        for (std::size_t i = 0; i < items.size(); ++i) index[items[i]->id] = static_cast<int>(i);
        std::vector<std::pair<int, int>> local_edges;
        for (const auto& e : doc_.edges) {
            if (e.kind != EdgeKind::Flow || !e.from || !e.to) continue;
            ElementId a = child_ancestor(*e.from, scope);
            ElementId b = child_ancestor(*e.to, scope);
            if (a.empty() || b.empty() || a == b) continue;
            local_edges.emplace_back(index[a], index[b]);
        }
        auto ranks = longest_path_ranks(static_cast<int>(items.size()), local_edges);

        int rank_count = 0;
        for (int r : ranks) rank_count = std::max(rank_count, r + 1);
        std::vector<std::vector<int>> columns(static_cast<std::size_t>(rank_count));
        for (std::size_t i = 0; i < items.size(); ++i) {
            columns[static_cast<std::size_t>(ranks[i])].push_back(static_cast<int>(i));
        }
        barycenter_order(columns, local_edges);

        // Column x positions and stacked y positions.
        int x = 0;
        int total_h = 0;
        for (const auto& col : columns) {
            int col_w = 0;
            for (int i : col) col_w = std::max(col_w, sizes_[items[i]->id].first);
            int y = 0;
            for (int i : col) {
                rel_pos_[items[static_cast<std::size_t>(i)]->id] = {x, y};
                y += sizes_[items[static_cast<std::size_t>(i)]->id].second + kGapY;
            }
            total_h = std::max(total_h, y > 0 ? y - kGapY : 0);
            x += col_w + kGapX;
        }
        int total_w = x > 0 ? x - kGapX : 0;
        return {total_w, total_h};
    }

    void place_absolute(const std::vector<const Node*>& items, int ox, int oy) {
        for (const Node* item : items) {
            auto [rx, ry] = rel_pos_[item->id];
            auto [w, h] = sizes_[item->id];
            Box box{ox + rx, oy + ry, w, h};
            boxes_[item->id] = box;
            if (item->is_thimac()) {
                place_absolute(doc_.children_of(*item), box.x + kPad,
                               box.y + kTitleStrip + kPad);
            }
        }
    }

    std::string model_svg() {
        std::vector<const Node*> roots = doc_.root_nodes();
        auto [w, h] = layout_scope(std::nullopt, roots);
        int width = w + 2 * kPad;
        int height = h + 2 * kPad;
        place_absolute(roots, kPad, kPad);

        open_svg(std::max(width, 2 * kPad), std::max(height, 2 * kPad));
        for (const Node* root : roots) draw_node(*root);
        for (const auto& e : doc_.edges) draw_edge(e);
        if (opts_.view == RenderView::Dynamic) draw_event_overlays();
        out_ += "</svg>\n";
        return std::move(out_);
    }

    void draw_node(const Node& node) {
        const Box& b = boxes_[node.id];
        if (node.is_thimac()) {
            out_ += "<g class=\"thimac\">\n";
            rect(b, "none", "#333333", 1, node.children.empty() ? 0 : 0);
            text(b.x + 6, b.y + 13, render_detail::thimac_label(node));
            for (const Node* child : doc_.children_of(node)) draw_node(*child);
            out_ += "</g>\n";
            return;
        }
        if (node.is_storage()) {
            // Cylinder glyph: body rect plus top and bottom ellipses.
            out_ += "<g class=\"storage\">\n";
            int ry = 6;
            rect(Box{b.x, b.y + ry, b.w, b.h - 2 * ry}, "#ffffff", "#333333", 1, 0);
            ellipse(b.x + b.w / 2, b.y + ry, b.w / 2, ry);
            ellipse(b.x + b.w / 2, b.y + b.h - ry, b.w / 2, ry);
            std::string label = render_detail::node_label(node, opts_);
            if (!label.empty()) text(b.x + 6, b.cy() + 4, label);
            out_ += "</g>\n";
            return;
        }
        out_ += "<g class=\"action\">\n";
        rect(b, "#ffffff", "#333333", 1, 0);
        std::string label = render_detail::node_label(node, opts_);
        if (!label.empty()) text(b.x + 6, b.cy() + 4, label);
        out_ += "</g>\n";
    }

    void draw_edge(const Edge& e) {
        if (!e.from || !e.to) return;
        auto fi = boxes_.find(*e.from);
        auto ti = boxes_.find(*e.to);
        if (fi == boxes_.end() || ti == boxes_.end()) return;
        const Box& a = fi->second;
        const Box& b = ti->second;

        int x1 = a.x + a.w;
        int y1 = a.cy();
        int x2 = b.x;
        int y2 = b.cy();
        if (b.x + b.w < a.x) {  // target left of source: flip attachment
            x1 = a.x;
            x2 = b.x + b.w;
        }
        bool trigger = e.kind == EdgeKind::Trigger;
        out_ += "<path d=\"M " + std::to_string(x1) + " " + std::to_string(y1) + " L " +
                std::to_string(x2) + " " + std::to_string(y2) +
                "\" fill=\"none\" stroke=\"#333333\"";
        if (trigger) out_ += " stroke-dasharray=\"6 3\"";
        out_ += "/>\n";
        arrow_head(x1, y1, x2, y2);
    }

    void arrow_head(int x1, int y1, int x2, int y2) {
        double dx = x2 - x1;
        double dy = y2 - y1;
        double len = std::sqrt(dx * dx + dy * dy);
        if (len < 1) return;
        dx /= len;
        dy /= len;
        double size = 8;
        int bx = static_cast<int>(std::lround(x2 - size * dx));
        int by = static_cast<int>(std::lround(y2 - size * dy));
        int lx = static_cast<int>(std::lround(bx - size * 0.4 * dy));
        int ly = static_cast<int>(std::lround(by + size * 0.4 * dx));
        int rx = static_cast<int>(std::lround(bx + size * 0.4 * dy));
        int ry2 = static_cast<int>(std::lround(by - size * 0.4 * dx));
        out_ += "<path d=\"M " + std::to_string(x2) + " " + std::to_string(y2) + " L " +
                std::to_string(lx) + " " + std::to_string(ly) + " L " +
                std::to_string(rx) + " " + std::to_string(ry2) +
                " Z\" fill=\"#333333\" stroke=\"none\"/>\n";
    }

    void draw_event_overlays() {
        for (const Event* event : render_detail::selected_events(doc_, opts_)) {
            Region region = event_region(doc_, *event);
            int min_x = 1 << 28, min_y = 1 << 28, max_x = 0, max_y = 0;
            bool any = false;
            for (const auto& id : region.elements) {
                const Node* n = doc_.find_node(id);
                if (!n || n->is_thimac()) continue;
                auto it = boxes_.find(id);
                if (it == boxes_.end()) continue;
                const Box& b = it->second;
                min_x = std::min(min_x, b.x);
                min_y = std::min(min_y, b.y);
                max_x = std::max(max_x, b.x + b.w);
                max_y = std::max(max_y, b.y + b.h);
                any = true;
            }
            if (!any) continue;
            out_ += "<g class=\"event\" id=\"event_" + xml_escape(event->id) + "\">\n";
            Box b{min_x - 5, min_y - 5, max_x - min_x + 10, max_y - min_y + 10};
            out_ += "<rect x=\"" + std::to_string(b.x) + "\" y=\"" + std::to_string(b.y) +
                    "\" width=\"" + std::to_string(b.w) + "\" height=\"" +
                    std::to_string(b.h) +
                    "\" fill=\"none\" stroke=\"#666666\" stroke-dasharray=\"3 3\"/>\n";
            text(b.x + 3, b.y - 3, event->id);
            out_ += "</g>\n";
        }
    }

    // ---- chronology -------------------------------------------------------

    std::string chronology_svg() {
        ChronoGraph graph = render_detail::build_chrono_graph(doc_.chronology->root);
        std::vector<std::pair<int, int>> fwd;
        for (const auto& e : graph.edges) {
            if (!e.back) fwd.emplace_back(e.from, e.to);
        }
        auto ranks = longest_path_ranks(static_cast<int>(graph.nodes.size()), fwd);

        int rank_count = 0;
        for (int r : ranks) rank_count = std::max(rank_count, r + 1);
        std::vector<std::vector<int>> columns(static_cast<std::size_t>(rank_count));
        for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
            columns[static_cast<std::size_t>(ranks[i])].push_back(static_cast<int>(i));
        }
        barycenter_order(columns, fwd);

        std::map<int, Box> box_of;
        int x = kPad;
        int height = 0;
        for (const auto& col : columns) {
            int col_w = 0;
            for (int i : col)
                col_w = std::max(col_w, text_width(graph.nodes[static_cast<std::size_t>(i)].label));
            int y = kPad;
            for (int i : col) {
                const auto& n = graph.nodes[static_cast<std::size_t>(i)];
                box_of[n.id] = Box{x, y, std::max(col_w, 40), kNodeHeight};
                y += kNodeHeight + kGapY;
            }
            height = std::max(height, y);
            x += std::max(col_w, 40) + kGapX;
        }

        open_svg(x + kPad, height + kPad);
        for (const auto& n : graph.nodes) {
            const Box& b = box_of[n.id];
            out_ += "<g class=\"chrono\">\n";
            if (n.shape == ChronoNode::Shape::Diamond) {
                out_ += "<path d=\"M " + std::to_string(b.cx()) + " " + std::to_string(b.y) +
                        " L " + std::to_string(b.x + b.w) + " " + std::to_string(b.cy()) +
                        " L " + std::to_string(b.cx()) + " " + std::to_string(b.y + b.h) +
                        " L " + std::to_string(b.x) + " " + std::to_string(b.cy()) +
                        " Z\" fill=\"#ffffff\" stroke=\"#333333\"/>\n";
            } else {
                rect(b, "#ffffff", "#333333", 1, 0);
            }
            if (!n.label.empty()) text(b.x + 6, b.cy() + 4, n.label);
            out_ += "</g>\n";
        }
        for (const auto& e : graph.edges) {
            const Box& a = box_of[e.from];
            const Box& b = box_of[e.to];
            int x1 = a.x + a.w;
            int y1 = a.cy();
            int x2 = b.x;
            int y2 = b.cy();
            if (e.back) {
                x1 = a.x;
                x2 = b.x + b.w;
            }
            out_ += "<path d=\"M " + std::to_string(x1) + " " + std::to_string(y1) +
                    " L " + std::to_string(x2) + " " + std::to_string(y2) +
                    "\" fill=\"none\" stroke=\"#333333\"";
            if (e.back) out_ += " stroke-dasharray=\"4 3\"";
            out_ += "/>\n";
            arrow_head(x1, y1, x2, y2);
            if (!e.label.empty()) {
                text((x1 + x2) / 2, (y1 + y2) / 2 - 4, e.label);
            }
        }
        out_ += "</svg>\n";
        return std::move(out_);
    }

    // ---- primitives ---------------------------------------------------------

    void open_svg(int width, int height) {
        out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
                std::to_string(width) + "\" height=\"" + std::to_string(height) +
                "\" viewBox=\"0 0 " + std::to_string(width) + " " +
                std::to_string(height) + "\">\n";
    }

    void rect(const Box& b, const std::string& fill, const std::string& stroke,
              int stroke_width, int radius) {
        out_ += "<rect x=\"" + std::to_string(b.x) + "\" y=\"" + std::to_string(b.y) +
                "\" width=\"" + std::to_string(b.w) + "\" height=\"" +
                std::to_string(b.h) + "\"";
        if (radius) out_ += " rx=\"" + std::to_string(radius) + "\"";
        out_ += " fill=\"" + fill + "\" stroke=\"" + stroke + "\" stroke-width=\"" +
                std::to_string(stroke_width) + "\"/>\n";
    }

    void ellipse(int cx, int cy, int rx, int ry) {
        out_ += "<ellipse cx=\"" + std::to_string(cx) + "\" cy=\"" + std::to_string(cy) +
                "\" rx=\"" + std::to_string(rx) + "\" ry=\"" + std::to_string(ry) +
                "\" fill=\"#ffffff\" stroke=\"#333333\"/>\n";
    }

    void text(int x, int y, const std::string& s) {
        out_ += "<text x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
                "\" font-family=\"Helvetica\" font-size=\"12\">" + xml_escape(s) +
                "</text>\n";
    }

    const Document& doc_;
    const RenderOptions& opts_;
    std::string out_;
    std::map<ElementId, std::pair<int, int>> sizes_;    // id -> (w, h)
    std::map<ElementId, std::pair<int, int>> rel_pos_;  // id -> container-relative
    std::map<ElementId, Box> boxes_;                    // id -> absolute
};

}  // namespace

std::string to_svg(const Document& doc, const RenderOptions& opts) {
    return SvgEmitter(doc, opts).run();
}

}  // namespace tmc
