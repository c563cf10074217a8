#pragma once

#include "tmc/behavior.hpp"
#include "tmc/diagnostics.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tmc {

// Identity of a model element. For named elements this is the dotted
// containment path ("System.newSale.session"); edges, which have no surface
// name, get synthesized ids ("flow@3", "trigger@1"). Paths are unique within
// a document and stable across copies, so ids can be compared across a
// transform's input and output.
class ElementId {
public:
    ElementId() = default;
    explicit ElementId(std::string path) : path_(std::move(path)) {}

    const std::string& str() const { return path_; }
    bool empty() const { return path_.empty(); }

    friend auto operator<=>(const ElementId&, const ElementId&) = default;

private:
    std::string path_;
};

enum class ActionKind { Create, Process, Release, Transfer, Receive };

constexpr std::array<ActionKind, 5> kAllActionKinds = {
    ActionKind::Create, ActionKind::Process, ActionKind::Release,
    ActionKind::Transfer, ActionKind::Receive};

std::string_view to_keyword(ActionKind kind);
std::optional<ActionKind> action_kind_from(std::string_view keyword);

// True for release/transfer/receive, the kinds elided by level-1
// simplification.
bool is_staging_kind(ActionKind kind);

enum class NodeKind { Thimac, Action, Storage };

// One named element: a thimac, an action, or a storage cylinder.
// Thimacs own an ordered child list; actions and storages are leaves.
struct Node {
    ElementId id;
    NodeKind node_kind = NodeKind::Thimac;
    std::string name;
    ActionKind action = ActionKind::Create;  // meaningful for actions only
    std::optional<int> label;                // the figure's gray number, "@N"
    std::optional<ElementId> owner;          // none for root thimacs
    std::vector<ElementId> children;         // thimacs only, declaration order
    bool implicit_hint = false;              // set by mark_implicit
    int seq = 0;                             // document-wide declaration index
    SourceSpan span;

    bool is_thimac() const { return node_kind == NodeKind::Thimac; }
    bool is_action() const { return node_kind == NodeKind::Action; }
    bool is_storage() const { return node_kind == NodeKind::Storage; }
};

enum class EdgeKind { Flow, Trigger };

// A flow (solid arrow) or trigger (dashed arrow). Endpoint refs are kept as
// written; `from`/`to` hold the resolved ids when resolution succeeded
// (validator rule V1 reports the failures).
struct Edge {
    ElementId id;
    EdgeKind kind = EdgeKind::Flow;
    std::string from_path;
    std::string to_path;
    std::optional<ElementId> from;
    std::optional<ElementId> to;
    std::vector<ElementId> elided_provenance;  // set by simplify_level1
    std::optional<ElementId> scope;            // enclosing thimac, none = top level
    int seq = 0;
    SourceSpan span;
    SourceSpan from_span;
    SourceSpan to_span;
};

// A subset of a document's elements, closed under containment (an element's
// owner is always in) and containing an edge iff both its endpoints are in.
struct Region {
    std::set<ElementId> elements;

    bool contains(const ElementId& id) const { return elements.count(id) > 0; }
    bool empty() const { return elements.empty(); }
};

struct CoverRef {
    std::string path;
    SourceSpan span;
};

// A dynamic event: a named, described region carved from the static model,
// with an optional time annotation.
struct Event {
    std::string id;  // "E1"
    std::string description;
    std::vector<CoverRef> covers;
    std::optional<std::string> time;
    std::optional<ElementId> scope;
    int seq = 0;
    SourceSpan span;
};

struct Chronology {
    BehaviorPtr root;
    std::optional<ElementId> scope;
    int seq = 0;
    SourceSpan span;
};

struct SourceDecl {
    std::string path;  // relative to the .tm file's directory
    std::optional<ElementId> scope;
    int seq = 0;
    SourceSpan span;
};

struct AnnotationSpan {
    std::size_t start = 0;  // inclusive byte offset
    std::size_t end = 0;    // exclusive byte offset
};

// Ties an event to the byte ranges of the domain text it models.
struct Annotation {
    std::string event_id;
    std::vector<AnnotationSpan> spans;
    std::optional<ElementId> scope;
    int seq = 0;
    SourceSpan span;
};

struct Stats {
    int thimacs = 0;
    std::array<int, 5> actions_by_kind{};  // indexed by ActionKind
    int storages = 0;
    int flows = 0;
    int triggers = 0;
    int events = 0;

    int actions_total() const;
    int action_count(ActionKind kind) const {
        return actions_by_kind[static_cast<std::size_t>(kind)];
    }
    int staging_total() const;  // release + transfer + receive
};

// In-memory representation of one TM document: the static model (thimacs,
// actions, storages, flows, triggers), the dynamic declarations (events,
// chronology) and the text mapping (source, annotations). Immutable after
// construction; all queries are const and safe to share across threads.
class Document {
public:
    std::string name;
    std::vector<Node> nodes;    // declaration order
    std::vector<Edge> edges;    // declaration order, flows and triggers mixed
    std::vector<Event> events;  // declaration order
    std::optional<Chronology> chronology;
    std::optional<SourceDecl> source;
    std::vector<Annotation> annotations;
    int next_flow_ordinal = 1;     // next unused "flow@N"
    int next_trigger_ordinal = 1;  // next unused "trigger@N"
    int next_seq = 0;

    // Rebuilds the id and event indexes; call after any structural edit.
    void reindex();

    const Node* find_node(const ElementId& id) const;
    const Edge* find_edge(const ElementId& id) const;
    const Event* find_event(const std::string& event_id) const;
    bool has_element(const ElementId& id) const;

    std::vector<const Node*> root_nodes() const;
    std::vector<const Node*> children_of(const Node& thimac) const;

    // Immediate owner thimac of a node, nullptr for roots.
    const Node* owner_of(const Node& node) const;

private:
    std::unordered_map<std::string, std::size_t> node_index_;
    std::unordered_map<std::string, std::size_t> edge_index_;
    std::unordered_map<std::string, std::size_t> event_index_;
};

// Resolves a dotted containment path to the unique element it names.
// Throws UnknownRefError if no element has that path (the empty path never
// resolves). Sibling names are unique, so there is no ambiguity.
ElementId resolve_ref(const Document& doc, std::string_view path);

// Smallest region containing `seeds`, closed under containment and
// including every edge whose endpoints are both included.
// Throws UnknownRefError for a seed that names no element.
Region region_of(const Document& doc, const std::set<ElementId>& seeds);

// Materializes an event's region from its cover refs via region_of.
// Throws UnknownRefError if a cover ref does not resolve.
Region event_region(const Document& doc, const Event& event);

Stats stats(const Document& doc);

// Structural comparison ignoring spans, sequence numbers and synthesized
// edge ids: same tree of named elements, same edges (by endpoint path and
// provenance) per scope, same events/chronology/source/annotations.
bool structural_equal(const Document& a, const Document& b);

// True if the weak connectivity graph of `region` (containment links plus
// flow/trigger edges inside the region) has at most one component.
bool region_connected(const Document& doc, const Region& region);

}  // namespace tmc
