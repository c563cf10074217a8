#include "tmc/printer.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <string>

namespace tmc {

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string ref_of(const Document& doc, const std::optional<ElementId>& resolved,
                   const std::string& raw) {
    if (resolved && doc.find_node(*resolved)) return resolved->str();
    return raw;
}

class Printer {
public:
    explicit Printer(const Document& doc) : doc_(doc) {}

    std::string run() {
        out_ += "model " + quote(doc_.name) + " {\n";
        print_scope(std::nullopt, 1);
        out_ += "}\n";
        return std::move(out_);
    }

private:
    // Declarations of one scope in their original order.
    struct Item {
        int seq;
        enum class Kind { Node, Edge, Event, Chronology, Source, Annotation } kind;
        std::size_t index;
    };

    std::vector<Item> items_of(const std::optional<ElementId>& scope) {
        std::vector<Item> items;
        for (std::size_t i = 0; i < doc_.nodes.size(); ++i) {
            if (doc_.nodes[i].owner == scope)
                items.push_back({doc_.nodes[i].seq, Item::Kind::Node, i});
        }
        for (std::size_t i = 0; i < doc_.edges.size(); ++i) {
            if (doc_.edges[i].scope == scope)
                items.push_back({doc_.edges[i].seq, Item::Kind::Edge, i});
        }
        for (std::size_t i = 0; i < doc_.events.size(); ++i) {
            if (doc_.events[i].scope == scope)
                items.push_back({doc_.events[i].seq, Item::Kind::Event, i});
        }
        if (doc_.chronology && doc_.chronology->scope == scope) {
            items.push_back({doc_.chronology->seq, Item::Kind::Chronology, 0});
        }
        if (doc_.source && doc_.source->scope == scope) {
            items.push_back({doc_.source->seq, Item::Kind::Source, 0});
        }
        for (std::size_t i = 0; i < doc_.annotations.size(); ++i) {
            if (doc_.annotations[i].scope == scope)
                items.push_back({doc_.annotations[i].seq, Item::Kind::Annotation, i});
        }
        std::sort(items.begin(), items.end(),
                  [](const Item& a, const Item& b) { return a.seq < b.seq; });
        return items;
    }

    void print_scope(const std::optional<ElementId>& scope, int depth) {
        for (const Item& item : items_of(scope)) {
            switch (item.kind) {
                case Item::Kind::Node: print_node(doc_.nodes[item.index], depth); break;
                case Item::Kind::Edge: print_edge(doc_.edges[item.index], depth); break;
                case Item::Kind::Event: print_event(doc_.events[item.index], depth); break;
                case Item::Kind::Chronology: print_chronology(depth); break;
                case Item::Kind::Source:
                    indent(depth);
                    out_ += "source " + quote(doc_.source->path) + "\n";
                    break;
                case Item::Kind::Annotation:
                    print_annotation(doc_.annotations[item.index], depth);
                    break;
            }
        }
    }

    void print_node(const Node& node, int depth) {
        indent(depth);
        switch (node.node_kind) {
            case NodeKind::Thimac:
                out_ += "thimac " + node.name + label_of(node) + " {\n";
                print_scope(node.id, depth + 1);
                indent(depth);
                out_ += "}\n";
                break;
            case NodeKind::Action:
                out_ += "action " + node.name + ": " + std::string(to_keyword(node.action)) +
                        label_of(node) + "\n";
                break;
            case NodeKind::Storage:
                out_ += "store " + node.name + label_of(node) + "\n";
                break;
        }
    }

    static std::string label_of(const Node& node) {
        return node.label ? " @" + std::to_string(*node.label) : "";
    }

    void print_edge(const Edge& edge, int depth) {
        indent(depth);
        if (edge.kind == EdgeKind::Flow) {
            out_ += "flow " + ref_of(doc_, edge.from, edge.from_path) + " -> " +
                    ref_of(doc_, edge.to, edge.to_path) + "\n";
        } else {
            out_ += "trigger " + ref_of(doc_, edge.from, edge.from_path) + " --> " +
                    ref_of(doc_, edge.to, edge.to_path) + "\n";
        }
    }

    void print_event(const Event& event, int depth) {
        indent(depth);
        out_ += "event " + event.id + " " + quote(event.description) + " covers { ";
        for (std::size_t i = 0; i < event.covers.size(); ++i) {
            if (i) out_ += ", ";
            out_ += event.covers[i].path;
        }
        out_ += " }";
        if (event.time) out_ += " time " + quote(*event.time);
        out_ += "\n";
    }

    void print_chronology(int depth) {
        indent(depth);
        out_ += "chronology { " + behavior_to_string(doc_.chronology->root) + " }\n";
    }

    void print_annotation(const Annotation& ann, int depth) {
        indent(depth);
        out_ += "annotate " + ann.event_id + " spans ";
        for (std::size_t i = 0; i < ann.spans.size(); ++i) {
            if (i) out_ += ", ";
            out_ += std::to_string(ann.spans[i].start) + ".." +
                    std::to_string(ann.spans[i].end);
        }
        out_ += "\n";
    }

    void indent(int depth) { out_.append(static_cast<std::size_t>(depth) * 2, ' '); }

    const Document& doc_;
    std::string out_;
};

}  // namespace

std::string print_canonical(const Document& doc) {
    return Printer(doc).run();
}

}  // namespace tmc
