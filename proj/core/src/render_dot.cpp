#include "tmc/render.hpp"

#include "render_internal.hpp"

#include <algorithm>
#include <string>

namespace tmc {

namespace render_detail {

namespace {

struct GraphBuilder {
    ChronoGraph graph;
    int next_id = 0;

    int add_node(std::string label, ChronoNode::Shape shape) {
        graph.nodes.push_back({next_id, std::move(label), shape});
        return next_id++;
    }

    struct Piece {
        int entry;
        std::vector<int> exits;
    };

    Piece emit(const BehaviorPtr& expr) {
        switch (expr->kind) {
            case BehaviorExpr::Kind::EventRef: {
                int n = add_node(expr->event_id, ChronoNode::Shape::Box);
                return {n, {n}};
            }
            case BehaviorExpr::Kind::Seq: {
                Piece first = emit(expr->children.front());
                std::vector<int> tails = first.exits;
                for (std::size_t i = 1; i < expr->children.size(); ++i) {
                    Piece next = emit(expr->children[i]);
                    for (int t : tails) graph.edges.push_back({t, next.entry, "", false});
                    tails = next.exits;
                }
                return {first.entry, tails};
            }
            case BehaviorExpr::Kind::Alt: {
                int fork = add_node("alt", ChronoNode::Shape::Diamond);
                int join = add_node("", ChronoNode::Shape::Diamond);
                for (const auto& branch : expr->children) {
                    Piece p = emit(branch);
                    graph.edges.push_back({fork, p.entry, "", false});
                    for (int t : p.exits) graph.edges.push_back({t, join, "", false});
                }
                return {fork, {join}};
            }
            case BehaviorExpr::Kind::Loop: {
                Piece body = emit(expr->children.front());
                std::string label = expr->guard ? *expr->guard : "repeat";
                for (int t : body.exits)
                    graph.edges.push_back({t, body.entry, label, true});
                return body;
            }
            case BehaviorExpr::Kind::Par: {
                int fork = add_node("par", ChronoNode::Shape::Bar);
                int join = add_node("join", ChronoNode::Shape::Bar);
                for (const auto& branch : expr->children) {
                    Piece p = emit(branch);
                    graph.edges.push_back({fork, p.entry, "", false});
                    for (int t : p.exits) graph.edges.push_back({t, join, "", false});
                }
                return {fork, {join}};
            }
        }
        return {0, {}};
    }
};

}  // namespace

ChronoGraph build_chrono_graph(const BehaviorPtr& root) {
    GraphBuilder builder;
    builder.emit(root);
    return std::move(builder.graph);
}

std::vector<const Event*> selected_events(const Document& doc,
                                          const RenderOptions& opts) {
    if (doc.events.empty()) {
        throw ViewError("dynamic view requires at least one declared event");
    }
    if (opts.event_filter) {
        for (const auto& id : *opts.event_filter) {
            if (!doc.find_event(id)) throw ViewError("unknown event in filter: " + id);
        }
    }
    std::vector<const Event*> out;
    for (const auto& e : doc.events) {
        if (!opts.event_filter || opts.event_filter->count(e.id)) out.push_back(&e);
    }
    return out;
}

bool render_implicit(const Node& node, const RenderOptions& opts) {
    if (!node.is_action()) return false;
    if (node.action != ActionKind::Create && node.action != ActionKind::Process)
        return false;
    return opts.implicit_notation || node.implicit_hint;
}

std::string node_label(const Node& node, const RenderOptions& opts) {
    if (render_implicit(node, opts)) return "";
    std::string label = node.name;
    if (node.is_action()) {
        label += ": ";
        label += to_keyword(node.action);
    }
    if (node.label) label += " @" + std::to_string(*node.label);
    return label;
}

std::string thimac_label(const Node& node) {
    std::string label = node.name;
    if (node.label) label += " @" + std::to_string(*node.label);
    return label;
}

void require_view(const Document& doc, const RenderOptions& opts) {
    switch (opts.view) {
        case RenderView::Static:
            break;
        case RenderView::Dynamic:
            selected_events(doc, opts);  // throws when unavailable
            break;
        case RenderView::Chronology:
            if (!doc.chronology) {
                throw ViewError("chronology view requires a chronology declaration");
            }
            break;
    }
}

}  // namespace render_detail

namespace {

using render_detail::ChronoNode;

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

class DotEmitter {
public:
    DotEmitter(const Document& doc, const RenderOptions& opts) : doc_(doc), opts_(opts) {}

    std::string run() {
        render_detail::require_view(doc_, opts_);
        out_ += "digraph " + dot_quote(doc_.name) + " {\n";
        out_ += "  graph [rankdir=LR, fontname=\"Helvetica\"];\n";
        out_ += "  node [fontname=\"Helvetica\"];\n";
        switch (opts_.view) {
            case RenderView::Static: emit_static(); break;
            case RenderView::Dynamic: emit_dynamic(); break;
            case RenderView::Chronology: emit_chronology(); break;
        }
        out_ += "}\n";
        return std::move(out_);
    }

private:
    void emit_leaf(const Node& node, int depth) {
        indent(depth);
        out_ += dot_quote(node.id.str());
        if (node.is_storage()) {
            out_ += " [shape=cylinder, label=" +
                    dot_quote(render_detail::node_label(node, opts_)) + "];\n";
        } else {
            out_ += " [shape=box, label=" +
                    dot_quote(render_detail::node_label(node, opts_)) + "];\n";
        }
    }

    void emit_thimac(const Node& thimac, int depth) {
        indent(depth);
        out_ += "subgraph " + dot_quote("cluster_" + thimac.id.str()) + " {\n";
        indent(depth + 1);
        out_ += "label=" + dot_quote(render_detail::thimac_label(thimac)) + ";\n";
        for (const Node* child : doc_.children_of(thimac)) {
            if (child->is_thimac()) {
                emit_thimac(*child, depth + 1);
            } else {
                emit_leaf(*child, depth + 1);
            }
        }
        indent(depth);
        out_ += "}\n";
    }

    void emit_edges() {
        for (const auto& e : doc_.edges) {
            if (!e.from || !e.to) continue;
            indent(1);
            out_ += dot_quote(e.from->str()) + " -> " + dot_quote(e.to->str());
            if (e.kind == EdgeKind::Trigger) out_ += " [style=dashed]";
            out_ += ";\n";
        }
    }

    void emit_static() {
        for (const Node* root : doc_.root_nodes()) {
            if (root->is_thimac()) {
                emit_thimac(*root, 1);
            } else {
                emit_leaf(*root, 1);
            }
        }
        emit_edges();
    }

    // Region members grouped into one labeled cluster per selected event
    // (a node joins the first event that covers it); everything else keeps
    // its thimac cluster.
    void emit_dynamic() {
        auto events = render_detail::selected_events(doc_, opts_);
        std::set<ElementId> claimed;
        for (const Event* event : events) {
            Region region = event_region(doc_, *event);
            indent(1);
            out_ += "subgraph " + dot_quote("cluster_event_" + event->id) + " {\n";
            indent(2);
            out_ += "label=" + dot_quote(event->id + ": " + event->description) + ";\n";
            indent(2);
            out_ += "style=dashed;\n";
            for (const auto& id : region.elements) {
                const Node* n = doc_.find_node(id);
                if (!n || n->is_thimac()) continue;
                if (!claimed.insert(id).second) continue;
                emit_leaf(*n, 2);
            }
            indent(1);
            out_ += "}\n";
        }
        // Remaining nodes, grouped per thimac cluster as in the static view
        // but skipping members already claimed by an event cluster.
        for (const Node* root : doc_.root_nodes()) {
            emit_unclaimed(*root, 1, claimed);
        }
        emit_edges();
    }

    void emit_unclaimed(const Node& node, int depth, const std::set<ElementId>& claimed) {
        if (!node.is_thimac()) {
            if (!claimed.count(node.id)) emit_leaf(node, depth);
            return;
        }
        indent(depth);
        out_ += "subgraph " + dot_quote("cluster_" + node.id.str()) + " {\n";
        indent(depth + 1);
        out_ += "label=" + dot_quote(render_detail::thimac_label(node)) + ";\n";
        for (const Node* child : doc_.children_of(node)) {
            emit_unclaimed(*child, depth + 1, claimed);
        }
        indent(depth);
        out_ += "}\n";
    }

    void emit_chronology() {
        auto graph = render_detail::build_chrono_graph(doc_.chronology->root);
        for (const auto& n : graph.nodes) {
            indent(1);
            out_ += dot_quote("n" + std::to_string(n.id));
            switch (n.shape) {
                case ChronoNode::Shape::Box:
                    out_ += " [shape=box, label=" + dot_quote(n.label) + "];\n";
                    break;
                case ChronoNode::Shape::Diamond:
                    out_ += " [shape=diamond, label=" + dot_quote(n.label) + "];\n";
                    break;
                case ChronoNode::Shape::Bar:
                    out_ += " [shape=box, style=rounded, label=" + dot_quote(n.label) +
                            "];\n";
                    break;
            }
        }
        for (const auto& e : graph.edges) {
            indent(1);
            out_ += dot_quote("n" + std::to_string(e.from)) + " -> " +
                    dot_quote("n" + std::to_string(e.to));
            std::string attrs;
            if (!e.label.empty()) attrs += "label=" + dot_quote(e.label);
            if (e.back) {
                if (!attrs.empty()) attrs += ", ";
                attrs += "constraint=false";
            }
            if (!attrs.empty()) out_ += " [" + attrs + "]";
            out_ += ";\n";
        }
    }

    void indent(int depth) { out_.append(static_cast<std::size_t>(depth) * 2, ' '); }

    const Document& doc_;
    const RenderOptions& opts_;
    std::string out_;
};

}  // namespace

std::string to_dot(const Document& doc, const RenderOptions& opts) {
    return DotEmitter(doc, opts).run();
}

}  // namespace tmc
