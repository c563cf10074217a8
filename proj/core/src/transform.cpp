#include "tmc/transform.hpp"

#include "tmc/errors.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace tmc {

namespace {

bool is_elided_node(const Node& n) {
    return n.is_action() && is_staging_kind(n.action);
}

// One collapsed chain: surviving source, elided interior in flow order,
// surviving target.
struct Chain {
    ElementId source;
    std::vector<ElementId> interior;
    ElementId target;
};

class Simplifier {
public:
    explicit Simplifier(const Document& doc) : in_(doc) {}

    SimplifyResult run() {
        classify();
        collect_chains();
        check_dangling();

        SimplifyResult result;
        result.document = rebuild();
        for (std::size_t i = 0; i < chains_.size(); ++i) {
            std::vector<ElementId> prov = chains_[i].interior;
            result.map.replaced.emplace(new_edge_ids_[i], std::move(prov));
        }
        return result;
    }

private:
    void classify() {
        for (const auto& n : in_.nodes) {
            if (is_elided_node(n)) elided_.insert(n.id);
        }
        for (const auto& e : in_.edges) {
            if (e.kind != EdgeKind::Flow || !e.from || !e.to) continue;
            flow_succ_[*e.from].push_back(*e.to);
        }
    }

    // Depth-first enumeration of every maximal path through elided nodes,
    // starting from each flow edge that leaves a surviving node. Edges are
    // walked in declaration order, so chain order is deterministic.
    void collect_chains() {
        for (const auto& e : in_.edges) {
            if (e.kind != EdgeKind::Flow || !e.from || !e.to) continue;
            if (elided_.count(*e.from) || !elided_.count(*e.to)) continue;
            std::vector<ElementId> interior{*e.to};
            std::set<ElementId> on_path{*e.to};
            walk(*e.from, *e.to, interior, on_path);
        }
    }

    void walk(const ElementId& source, const ElementId& at,
              std::vector<ElementId>& interior, std::set<ElementId>& on_path) {
        auto it = flow_succ_.find(at);
        if (it == flow_succ_.end()) return;  // dead end; caught by check_dangling
        for (const auto& next : it->second) {
            if (!elided_.count(next)) {
                chains_.push_back({source, interior, next});
                for (const auto& id : interior) covered_.insert(id);
                continue;
            }
            if (on_path.count(next)) continue;  // cycle through elided nodes
            interior.push_back(next);
            on_path.insert(next);
            walk(source, next, interior, on_path);
            on_path.erase(next);
            interior.pop_back();
        }
    }

    void check_dangling() {
        std::vector<ElementId> stranded;
        for (const auto& id : elided_) {
            if (!covered_.count(id)) stranded.push_back(id);
        }
        if (stranded.empty()) return;
        std::vector<std::string> ids;
        ids.reserve(stranded.size());
        for (const auto& id : stranded) ids.push_back(id.str());
        throw DanglingChainError(std::move(ids));
    }

    // Surviving endpoint nearest to the elided node `id` along its first
    // covering chain; equidistant picks the downstream side.
    ElementId nearest_survivor(const ElementId& id) const {
        for (const auto& chain : chains_) {
            for (std::size_t i = 0; i < chain.interior.size(); ++i) {
                if (chain.interior[i] != id) continue;
                std::size_t dist_up = i + 1;
                std::size_t dist_down = chain.interior.size() - i;
                return dist_up < dist_down ? chain.source : chain.target;
            }
        }
        assert(false && "elided node not covered by any chain");
        return id;
    }

    Document rebuild() {
        Document out;
        out.name = in_.name;
        out.next_seq = in_.next_seq;
        out.next_flow_ordinal = in_.next_flow_ordinal;
        out.next_trigger_ordinal = in_.next_trigger_ordinal;

        for (const auto& n : in_.nodes) {
            if (elided_.count(n.id)) continue;
            Node copy = n;
            if (copy.is_thimac()) {
                std::erase_if(copy.children,
                              [&](const ElementId& c) { return elided_.count(c) > 0; });
            }
            out.nodes.push_back(std::move(copy));
        }

        for (const auto& e : in_.edges) {
            if (e.kind == EdgeKind::Flow) {
                bool touches_elided = (e.from && elided_.count(*e.from)) ||
                                      (e.to && elided_.count(*e.to));
                if (touches_elided) continue;
                out.edges.push_back(e);
            } else {
                Edge copy = e;
                if (copy.from && elided_.count(*copy.from)) {
                    ElementId target = nearest_survivor(*copy.from);
                    copy.from = target;
                    copy.from_path = target.str();
                }
                if (copy.to && elided_.count(*copy.to)) {
                    ElementId target = nearest_survivor(*copy.to);
                    copy.to = target;
                    copy.to_path = target.str();
                }
                out.edges.push_back(std::move(copy));
            }
        }

        for (const auto& chain : chains_) {
            Edge edge;
            edge.id = ElementId("flow@" + std::to_string(out.next_flow_ordinal++));
            edge.kind = EdgeKind::Flow;
            edge.from = chain.source;
            edge.from_path = chain.source.str();
            edge.to = chain.target;
            edge.to_path = chain.target.str();
            edge.elided_provenance = chain.interior;
            edge.scope = std::nullopt;
            edge.seq = out.next_seq++;
            new_edge_ids_.push_back(edge.id);
            out.edges.push_back(std::move(edge));
        }

        for (const auto& event : in_.events) {
            out.events.push_back(rewrite_event(event));
        }
        out.chronology = in_.chronology;
        out.source = in_.source;
        out.annotations = in_.annotations;
        out.reindex();
        return out;
    }

    // Cover refs naming an elided node are replaced by the surviving
    // endpoints of every chain through that node; region closure then pulls
    // the replacement edge in by itself.
    Event rewrite_event(const Event& event) const {
        Event copy = event;
        std::vector<CoverRef> covers;
        std::set<std::string> seen;
        auto push = [&](const std::string& path, SourceSpan span) {
            if (seen.insert(path).second) covers.push_back({path, span});
        };
        for (const auto& ref : event.covers) {
            ElementId id{ref.path};
            if (!elided_.count(id)) {
                push(ref.path, ref.span);
                continue;
            }
            for (const auto& chain : chains_) {
                if (std::find(chain.interior.begin(), chain.interior.end(), id) ==
                    chain.interior.end())
                    continue;
                push(chain.source.str(), ref.span);
                push(chain.target.str(), ref.span);
            }
        }
        copy.covers = std::move(covers);
        return copy;
    }

    const Document& in_;
    std::set<ElementId> elided_;
    std::set<ElementId> covered_;
    std::map<ElementId, std::vector<ElementId>> flow_succ_;
    std::vector<Chain> chains_;
    std::vector<ElementId> new_edge_ids_;
};

}  // namespace

SimplifyResult simplify_level1(const Document& doc) {
    return Simplifier(doc).run();
}

Document mark_implicit(const Document& doc) {
    for (const auto& n : doc.nodes) {
        if (is_elided_node(n)) {
            throw ModeError("mark_implicit requires a simplified model; '" +
                            n.id.str() + "' is " + std::string(to_keyword(n.action)));
        }
    }
    Document out = doc;
    for (auto& n : out.nodes) {
        if (n.is_action() &&
            (n.action == ActionKind::Create || n.action == ActionKind::Process)) {
            n.implicit_hint = true;
        }
    }
    out.reindex();
    return out;
}

}  // namespace tmc
