#include "tmc/validator.hpp"

#include <algorithm>
#include <map>

namespace tmc {

const std::vector<ValidationRule>& rule_catalog() {
    static const std::vector<ValidationRule> catalog = {
        {"V1", Severity::Error, "flow or trigger endpoint does not resolve"},
        {"V2", Severity::Error,
         "flow endpoints must be actions or storages, trigger endpoints must be "
         "actions, and no edge may be a self-loop"},
        {"V3", Severity::Error, "flow violates the action adjacency table"},
        {"V4", Severity::Error,
         "a flow crossing a thimac boundary must be transfer -> transfer"},
        {"V5", Severity::Error, "trigger target must be a create or process action"},
        {"V6", Severity::Error,
         "release/transfer/receive nodes are not allowed in simplified mode"},
        {"V7", Severity::Error, "event cover reference does not resolve"},
        {"V8", Severity::Error, "chronology references an undeclared event"},
        {"V9", Severity::Warning, "event region is not weakly connected"},
        {"V10", Severity::Warning, "two events carve identical regions"},
        {"V11", Severity::Error, "annotation references an undeclared event"},
    };
    return catalog;
}

namespace {

// Endpoint category: an action kind, or nullopt for storage.
using Category = std::optional<ActionKind>;

std::string category_name(Category c) {
    return c ? std::string(to_keyword(*c)) : "store";
}

}  // namespace

bool flow_pair_allowed(Mode mode, Category from, Category to) {
    if (mode == Mode::Simplified) {
        // Post-reduction form: create/process/storage connect freely.
        auto surviving = [](Category c) {
            return !c || *c == ActionKind::Create || *c == ActionKind::Process;
        };
        return surviving(from) && surviving(to);
    }
    // Strict table. Things are born by create, enter via transfer->receive,
    // exit via release->transfer; process transforms without generating.
    if (!from) {  // storage source
        return to && (*to == ActionKind::Process || *to == ActionKind::Release);
    }
    if (!to) {  // storage target
        return *from == ActionKind::Create || *from == ActionKind::Receive ||
               *from == ActionKind::Process;
    }
    switch (*from) {
        case ActionKind::Create:
        case ActionKind::Receive:
            return *to == ActionKind::Process || *to == ActionKind::Release;
        case ActionKind::Process:
            return *to == ActionKind::Release;
        case ActionKind::Release:
            return *to == ActionKind::Transfer;
        case ActionKind::Transfer:
            return *to == ActionKind::Transfer || *to == ActionKind::Receive;
    }
    return false;
}

namespace {

class StaticChecker {
public:
    StaticChecker(const Document& doc, Mode mode) : doc_(doc), mode_(mode) {}

    std::vector<Diagnostic> run() {
        if (mode_ == Mode::Simplified) check_nodes();
        for (const auto& edge : doc_.edges) check_edge(edge);
        sort_diagnostics(diags_);
        return std::move(diags_);
    }

private:
    void emit(const char* code, Severity severity, std::string message, SourceSpan span) {
        diags_.push_back({severity, code, std::move(message), span});
    }

    void check_nodes() {
        for (const auto& node : doc_.nodes) {
            if (node.is_action() && is_staging_kind(node.action)) {
                emit("V6", Severity::Error,
                     "action '" + node.id.str() + "' is " +
                         std::string(to_keyword(node.action)) +
                         ", which is not allowed in simplified mode",
                     node.span);
            }
        }
    }

    void check_edge(const Edge& edge) {
        const char* what = edge.kind == EdgeKind::Flow ? "flow" : "trigger";
        bool resolved = true;
        if (!edge.from) {
            emit("V1", Severity::Error,
                 std::string(what) + " source '" + edge.from_path + "' does not resolve",
                 edge.from_span);
            resolved = false;
        }
        if (!edge.to) {
            emit("V1", Severity::Error,
                 std::string(what) + " target '" + edge.to_path + "' does not resolve",
                 edge.to_span);
            resolved = false;
        }
        if (!resolved) return;

        const Node* from = doc_.find_node(*edge.from);
        const Node* to = doc_.find_node(*edge.to);
        if (*edge.from == *edge.to) {
            emit("V2", Severity::Error,
                 std::string(what) + " from '" + edge.from_path + "' to itself", edge.span);
            return;
        }
        if (edge.kind == EdgeKind::Flow) {
            check_flow(edge, *from, *to);
        } else {
            check_trigger(edge, *from, *to);
        }
    }

    void check_flow(const Edge& edge, const Node& from, const Node& to) {
        bool ok = true;
        if (from.is_thimac()) {
            emit("V2", Severity::Error,
                 "flow source '" + from.id.str() + "' is a thimac; flows connect "
                 "actions and storages",
                 edge.from_span);
            ok = false;
        }
        if (to.is_thimac()) {
            emit("V2", Severity::Error,
                 "flow target '" + to.id.str() + "' is a thimac; flows connect "
                 "actions and storages",
                 edge.to_span);
            ok = false;
        }
        if (!ok) return;

        Category cat_from = from.is_action() ? Category(from.action) : std::nullopt;
        Category cat_to = to.is_action() ? Category(to.action) : std::nullopt;

        if (mode_ == Mode::Simplified &&
            ((cat_from && is_staging_kind(*cat_from)) ||
             (cat_to && is_staging_kind(*cat_to)))) {
            // The staging node itself is already a V6 error; avoid cascading.
            return;
        }

        if (!flow_pair_allowed(mode_, cat_from, cat_to)) {
            emit("V3", Severity::Error,
                 "flow " + category_name(cat_from) + " -> " + category_name(cat_to) +
                     " ('" + from.id.str() + "' -> '" + to.id.str() + "') is not allowed",
                 edge.span);
            return;
        }

        if (mode_ == Mode::Strict && from.owner != to.owner) {
            bool boundary_hop = cat_from && cat_to && *cat_from == ActionKind::Transfer &&
                                *cat_to == ActionKind::Transfer;
            if (!boundary_hop) {
                emit("V4", Severity::Error,
                     "flow '" + from.id.str() + "' -> '" + to.id.str() +
                         "' crosses a thimac boundary; only transfer -> transfer may",
                     edge.span);
            }
        }
    }

    void check_trigger(const Edge& edge, const Node& from, const Node& to) {
        if (!from.is_action()) {
            emit("V2", Severity::Error,
                 "trigger source '" + from.id.str() + "' is not an action",
                 edge.from_span);
        }
        if (!to.is_action()) {
            emit("V2", Severity::Error,
                 "trigger target '" + to.id.str() + "' is not an action", edge.to_span);
            return;
        }
        if (to.action != ActionKind::Create && to.action != ActionKind::Process) {
            emit("V5", Severity::Error,
                 "trigger target '" + to.id.str() + "' is " +
                     std::string(to_keyword(to.action)) +
                     "; a trigger starts a new chain at create or process",
                 edge.to_span);
        }
    }

    const Document& doc_;
    Mode mode_;
    std::vector<Diagnostic> diags_;
};

void check_behavior_refs(const Document& doc, const BehaviorPtr& expr,
                         std::vector<Diagnostic>& diags) {
    if (!expr) return;
    if (expr->kind == BehaviorExpr::Kind::EventRef) {
        if (!doc.find_event(expr->event_id)) {
            diags.push_back({Severity::Error, "V8",
                             "chronology references undeclared event '" + expr->event_id +
                                 "'",
                             expr->span});
        }
        return;
    }
    for (const auto& child : expr->children) check_behavior_refs(doc, child, diags);
}

}  // namespace

std::vector<Diagnostic> check_static(const Document& doc, Mode mode) {
    return StaticChecker(doc, mode).run();
}

std::vector<Diagnostic> check_dynamic(const Document& doc) {
    std::vector<Diagnostic> diags;

    // V7 + region materialization for the warnings below.
    std::map<std::string, Region> regions;
    for (const auto& event : doc.events) {
        std::set<ElementId> seeds;
        bool ok = true;
        for (const auto& ref : event.covers) {
            ElementId id{ref.path};
            if (ref.path.empty() || !doc.find_node(id)) {
                diags.push_back({Severity::Error, "V7",
                                 "event " + event.id + " covers unknown reference '" +
                                     ref.path + "'",
                                 ref.span});
                ok = false;
                continue;
            }
            seeds.insert(id);
        }
        if (ok) regions.emplace(event.id, region_of(doc, seeds));
    }

    if (doc.chronology) check_behavior_refs(doc, doc.chronology->root, diags);

    for (const auto& event : doc.events) {
        auto it = regions.find(event.id);
        if (it == regions.end()) continue;
        if (!region_connected(doc, it->second)) {
            diags.push_back({Severity::Warning, "V9",
                             "event " + event.id + " carves a disconnected region",
                             event.span});
        }
    }

    for (std::size_t i = 0; i < doc.events.size(); ++i) {
        auto a = regions.find(doc.events[i].id);
        if (a == regions.end()) continue;
        for (std::size_t j = i + 1; j < doc.events.size(); ++j) {
            auto b = regions.find(doc.events[j].id);
            if (b == regions.end()) continue;
            if (a->second.elements == b->second.elements) {
                diags.push_back({Severity::Warning, "V10",
                                 "events " + doc.events[i].id + " and " +
                                     doc.events[j].id + " carve identical regions",
                                 doc.events[j].span});
            }
        }
    }

    for (const auto& ann : doc.annotations) {
        if (!doc.find_event(ann.event_id)) {
            diags.push_back({Severity::Error, "V11",
                             "annotate references undeclared event '" + ann.event_id + "'",
                             ann.span});
        }
    }

    sort_diagnostics(diags);
    return diags;
}

std::vector<Diagnostic> check_document(const Document& doc, Mode mode) {
    std::vector<Diagnostic> diags = check_static(doc, mode);
    if (!has_errors(diags)) {
        auto dynamic = check_dynamic(doc);
        diags.insert(diags.end(), dynamic.begin(), dynamic.end());
        sort_diagnostics(diags);
    }
    return diags;
}

}  // namespace tmc
