#include "tmc/model.hpp"

#include "tmc/errors.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace tmc {

std::string_view to_keyword(ActionKind kind) {
    switch (kind) {
        case ActionKind::Create: return "create";
        case ActionKind::Process: return "process";
        case ActionKind::Release: return "release";
        case ActionKind::Transfer: return "transfer";
        case ActionKind::Receive: return "receive";
    }
    return "create";
}

std::optional<ActionKind> action_kind_from(std::string_view keyword) {
    for (ActionKind k : kAllActionKinds) {
        if (to_keyword(k) == keyword) return k;
    }
    return std::nullopt;
}

bool is_staging_kind(ActionKind kind) {
    return kind == ActionKind::Release || kind == ActionKind::Transfer ||
           kind == ActionKind::Receive;
}

int Stats::actions_total() const {
    int total = 0;
    for (int n : actions_by_kind) total += n;
    return total;
}

int Stats::staging_total() const {
    return action_count(ActionKind::Release) + action_count(ActionKind::Transfer) +
           action_count(ActionKind::Receive);
}

void Document::reindex() {
    node_index_.clear();
    edge_index_.clear();
    event_index_.clear();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        node_index_.emplace(nodes[i].id.str(), i);
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        edge_index_.emplace(edges[i].id.str(), i);
    }
    for (std::size_t i = 0; i < events.size(); ++i) {
        event_index_.emplace(events[i].id, i);
    }
}

const Node* Document::find_node(const ElementId& id) const {
    auto it = node_index_.find(id.str());
    return it == node_index_.end() ? nullptr : &nodes[it->second];
}

const Edge* Document::find_edge(const ElementId& id) const {
    auto it = edge_index_.find(id.str());
    return it == edge_index_.end() ? nullptr : &edges[it->second];
}

const Event* Document::find_event(const std::string& event_id) const {
    auto it = event_index_.find(event_id);
    return it == event_index_.end() ? nullptr : &events[it->second];
}

bool Document::has_element(const ElementId& id) const {
    return find_node(id) != nullptr || find_edge(id) != nullptr;
}

std::vector<const Node*> Document::root_nodes() const {
    std::vector<const Node*> roots;
    for (const auto& n : nodes) {
        if (!n.owner) roots.push_back(&n);
    }
    return roots;
}

std::vector<const Node*> Document::children_of(const Node& thimac) const {
    std::vector<const Node*> out;
    out.reserve(thimac.children.size());
    for (const auto& child : thimac.children) {
        const Node* n = find_node(child);
        assert(n);
        out.push_back(n);
    }
    return out;
}

const Node* Document::owner_of(const Node& node) const {
    if (!node.owner) return nullptr;
    return find_node(*node.owner);
}

ElementId resolve_ref(const Document& doc, std::string_view path) {
    if (!path.empty()) {
        ElementId id{std::string(path)};
        if (doc.find_node(id)) return id;
    }
    throw UnknownRefError(std::string(path));
}

Region region_of(const Document& doc, const std::set<ElementId>& seeds) {
    Region region;
    for (const auto& seed : seeds) {
        if (!doc.has_element(seed)) throw UnknownRefError(seed.str());
        region.elements.insert(seed);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        // Containment closure and edge-endpoint closure.
        std::vector<ElementId> to_add;
        for (const auto& id : region.elements) {
            if (const Node* n = doc.find_node(id)) {
                if (n->owner && !region.contains(*n->owner)) to_add.push_back(*n->owner);
            } else if (const Edge* e = doc.find_edge(id)) {
                if (e->from && !region.contains(*e->from)) to_add.push_back(*e->from);
                if (e->to && !region.contains(*e->to)) to_add.push_back(*e->to);
            }
        }
        // An edge joins the region exactly when both endpoints are in.
        for (const auto& e : doc.edges) {
            if (!e.from || !e.to) continue;
            if (region.contains(e.id)) continue;
            if (region.contains(*e.from) && region.contains(*e.to)) to_add.push_back(e.id);
        }
        for (auto& id : to_add) {
            changed |= region.elements.insert(std::move(id)).second;
        }
    }
    return region;
}

Region event_region(const Document& doc, const Event& event) {
    std::set<ElementId> seeds;
    for (const auto& ref : event.covers) {
        seeds.insert(resolve_ref(doc, ref.path));
    }
    return region_of(doc, seeds);
}

Stats stats(const Document& doc) {
    Stats s;
    for (const auto& n : doc.nodes) {
        switch (n.node_kind) {
            case NodeKind::Thimac: ++s.thimacs; break;
            case NodeKind::Action:
                ++s.actions_by_kind[static_cast<std::size_t>(n.action)];
                break;
            case NodeKind::Storage: ++s.storages; break;
        }
    }
    for (const auto& e : doc.edges) {
        if (e.kind == EdgeKind::Flow) {
            ++s.flows;
        } else {
            ++s.triggers;
        }
    }
    s.events = static_cast<int>(doc.events.size());
    return s;
}

namespace {

bool node_equal(const Document& da, const Node& a, const Document& db, const Node& b);

bool children_equal(const Document& da, const Node& a, const Document& db, const Node& b) {
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        const Node* ca = da.find_node(a.children[i]);
        const Node* cb = db.find_node(b.children[i]);
        if (!ca || !cb || !node_equal(da, *ca, db, *cb)) return false;
    }
    return true;
}

bool node_equal(const Document& da, const Node& a, const Document& db, const Node& b) {
    if (a.node_kind != b.node_kind || a.name != b.name || a.label != b.label) return false;
    if (a.is_action() && a.action != b.action) return false;
    if (a.is_thimac()) return children_equal(da, a, db, b);
    return true;
}

std::string endpoint_key(const Document& doc, const std::optional<ElementId>& resolved,
                         const std::string& raw) {
    if (resolved && doc.find_node(*resolved)) return resolved->str();
    return raw;
}

bool edges_equal(const Document& da, const Document& db) {
    if (da.edges.size() != db.edges.size()) return false;
    for (std::size_t i = 0; i < da.edges.size(); ++i) {
        const Edge& a = da.edges[i];
        const Edge& b = db.edges[i];
        if (a.kind != b.kind) return false;
        if (endpoint_key(da, a.from, a.from_path) != endpoint_key(db, b.from, b.from_path))
            return false;
        if (endpoint_key(da, a.to, a.to_path) != endpoint_key(db, b.to, b.to_path))
            return false;
        if (a.elided_provenance != b.elided_provenance) return false;
        if (a.scope != b.scope) return false;
    }
    return true;
}

}  // namespace

bool structural_equal(const Document& a, const Document& b) {
    if (a.name != b.name) return false;

    auto roots_a = a.root_nodes();
    auto roots_b = b.root_nodes();
    if (roots_a.size() != roots_b.size()) return false;
    for (std::size_t i = 0; i < roots_a.size(); ++i) {
        if (!node_equal(a, *roots_a[i], b, *roots_b[i])) return false;
    }

    if (!edges_equal(a, b)) return false;

    if (a.events.size() != b.events.size()) return false;
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        const Event& ea = a.events[i];
        const Event& eb = b.events[i];
        if (ea.id != eb.id || ea.description != eb.description || ea.time != eb.time)
            return false;
        if (ea.covers.size() != eb.covers.size()) return false;
        for (std::size_t j = 0; j < ea.covers.size(); ++j) {
            if (ea.covers[j].path != eb.covers[j].path) return false;
        }
    }

    if (a.chronology.has_value() != b.chronology.has_value()) return false;
    if (a.chronology && !behavior_equal(a.chronology->root, b.chronology->root))
        return false;

    if (a.source.has_value() != b.source.has_value()) return false;
    if (a.source && a.source->path != b.source->path) return false;

    if (a.annotations.size() != b.annotations.size()) return false;
    for (std::size_t i = 0; i < a.annotations.size(); ++i) {
        const Annotation& xa = a.annotations[i];
        const Annotation& xb = b.annotations[i];
        if (xa.event_id != xb.event_id) return false;
        if (xa.spans.size() != xb.spans.size()) return false;
        for (std::size_t j = 0; j < xa.spans.size(); ++j) {
            if (xa.spans[j].start != xb.spans[j].start || xa.spans[j].end != xb.spans[j].end)
                return false;
        }
    }
    return true;
}

bool region_connected(const Document& doc, const Region& region) {
    // Vertices: node elements of the region. Undirected adjacency comes from
    // containment links and from edges lying inside the region.
    std::vector<ElementId> vertices;
    for (const auto& id : region.elements) {
        if (doc.find_node(id)) vertices.push_back(id);
    }
    if (vertices.size() <= 1) return true;

    auto index_of = [&](const ElementId& id) -> int {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), id);
        if (it == vertices.end() || *it != id) return -1;
        return static_cast<int>(it - vertices.begin());
    };

    std::vector<std::vector<int>> adj(vertices.size());
    auto link = [&](const ElementId& a, const ElementId& b) {
        int ia = index_of(a);
        int ib = index_of(b);
        if (ia < 0 || ib < 0) return;
        adj[ia].push_back(ib);
        adj[ib].push_back(ia);
    };

    for (const auto& id : vertices) {
        const Node* n = doc.find_node(id);
        if (n->owner && region.contains(*n->owner)) link(id, *n->owner);
    }
    for (const auto& id : region.elements) {
        if (const Edge* e = doc.find_edge(id)) {
            if (e->from && e->to) link(*e->from, *e->to);
        }
    }

    std::vector<bool> seen(vertices.size(), false);
    std::deque<int> work{0};
    seen[0] = true;
    std::size_t visited = 1;
    while (!work.empty()) {
        int v = work.front();
        work.pop_front();
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++visited;
                work.push_back(w);
            }
        }
    }
    return visited == vertices.size();
}

}  // namespace tmc
