#include "tmc/dynamics.hpp"

#include "tmc/errors.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace tmc {

namespace {

// ---------------------------------------------------------------------------
// Trace stepping. A state is the behavior expression still to be matched.
// Deriving a state by an event yields the residual states; `completed` marks
// that the event finished the whole expression. No expression matches the
// empty trace, so there is no separate nullability to track:
// Loop(b) steps as b | b ; Loop(b).
// ---------------------------------------------------------------------------

struct Derivation {
    std::vector<BehaviorPtr> states;
    bool completed = false;
};

BehaviorPtr seq_tail(const std::vector<BehaviorPtr>& children) {
    std::vector<BehaviorPtr> rest(children.begin() + 1, children.end());
    return BehaviorExpr::seq(std::move(rest));
}

void derive(const BehaviorPtr& expr, const std::string& event, Derivation& out) {
    switch (expr->kind) {
        case BehaviorExpr::Kind::EventRef:
            if (expr->event_id == event) out.completed = true;
            return;
        case BehaviorExpr::Kind::Seq: {
            Derivation head;
            derive(expr->children.front(), event, head);
            BehaviorPtr rest = seq_tail(expr->children);
            for (auto& s : head.states) {
                out.states.push_back(
                    BehaviorExpr::seq({std::move(s), rest}));
            }
            if (head.completed) out.states.push_back(rest);
            return;
        }
        case BehaviorExpr::Kind::Alt:
            for (const auto& branch : expr->children) derive(branch, event, out);
            return;
        case BehaviorExpr::Kind::Loop: {
            Derivation body;
            derive(expr->children.front(), event, body);
            for (auto& s : body.states) {
                out.states.push_back(BehaviorExpr::seq({s, expr}));
                out.states.push_back(std::move(s));
            }
            if (body.completed) {
                out.completed = true;       // loop may stop after this iteration
                out.states.push_back(expr); // or run at least once more
            }
            return;
        }
        case BehaviorExpr::Kind::Par: {
            for (std::size_t i = 0; i < expr->children.size(); ++i) {
                Derivation branch;
                derive(expr->children[i], event, branch);
                auto rebuild = [&](BehaviorPtr replacement) {
                    std::vector<BehaviorPtr> rest;
                    rest.reserve(expr->children.size());
                    for (std::size_t j = 0; j < expr->children.size(); ++j) {
                        if (j == i) {
                            if (replacement) rest.push_back(replacement);
                        } else {
                            rest.push_back(expr->children[j]);
                        }
                    }
                    if (rest.size() == 1) return rest.front();
                    return BehaviorExpr::par(std::move(rest));
                };
                for (auto& s : branch.states) out.states.push_back(rebuild(s));
                if (branch.completed) out.states.push_back(rebuild(nullptr));
            }
            return;
        }
    }
}

class StateSet {
public:
    void insert(BehaviorPtr state) {
        std::string key = behavior_to_string(state);
        if (keys_.insert(std::move(key)).second) states_.push_back(std::move(state));
    }

    // Steps every state by `event`; returns whether the event completed some
    // state (i.e. the consumed input is in the language).
    bool step(const std::string& event) {
        std::vector<BehaviorPtr> old = std::move(states_);
        states_.clear();
        keys_.clear();
        bool completed = false;
        for (const auto& s : old) {
            Derivation d;
            derive(s, event, d);
            completed |= d.completed;
            for (auto& n : d.states) insert(std::move(n));
        }
        return completed;
    }

    bool empty() const { return states_.empty(); }
    const std::vector<BehaviorPtr>& states() const { return states_; }

private:
    std::vector<BehaviorPtr> states_;
    std::set<std::string> keys_;
};

void first_events(const BehaviorPtr& expr, std::set<std::string>& out) {
    switch (expr->kind) {
        case BehaviorExpr::Kind::EventRef:
            out.insert(expr->event_id);
            return;
        case BehaviorExpr::Kind::Seq:
            first_events(expr->children.front(), out);
            return;
        case BehaviorExpr::Kind::Alt:
        case BehaviorExpr::Kind::Par:
            for (const auto& branch : expr->children) first_events(branch, out);
            return;
        case BehaviorExpr::Kind::Loop:
            first_events(expr->children.front(), out);
            return;
    }
}

void require_declared(const Trace& trace, const std::set<std::string>& declared) {
    for (const auto& id : trace) {
        if (!declared.count(id)) throw UnknownEventError(id);
    }
}

const Chronology& require_chronology(const Document& doc) {
    if (!doc.chronology) throw NoChronologyError();
    return *doc.chronology;
}

// ---------------------------------------------------------------------------
// Bounded language enumeration.
// ---------------------------------------------------------------------------

std::vector<Trace> concat_product(const std::vector<Trace>& lhs,
                                  const std::vector<Trace>& rhs) {
    std::vector<Trace> out;
    out.reserve(lhs.size() * rhs.size());
    for (const auto& a : lhs) {
        for (const auto& b : rhs) {
            Trace t = a;
            t.insert(t.end(), b.begin(), b.end());
            out.push_back(std::move(t));
        }
    }
    return out;
}

void interleave_pair(const Trace& a, std::size_t ai, const Trace& b, std::size_t bi,
                     Trace& acc, std::vector<Trace>& out) {
    if (ai == a.size() && bi == b.size()) {
        out.push_back(acc);
        return;
    }
    if (ai < a.size()) {
        acc.push_back(a[ai]);
        interleave_pair(a, ai + 1, b, bi, acc, out);
        acc.pop_back();
    }
    if (bi < b.size()) {
        acc.push_back(b[bi]);
        interleave_pair(a, ai, b, bi + 1, acc, out);
        acc.pop_back();
    }
}

std::vector<Trace> interleavings(const std::vector<Trace>& lhs,
                                 const std::vector<Trace>& rhs) {
    std::vector<Trace> out;
    for (const auto& a : lhs) {
        for (const auto& b : rhs) {
            Trace acc;
            acc.reserve(a.size() + b.size());
            interleave_pair(a, 0, b, 0, acc, out);
        }
    }
    return out;
}

std::vector<Trace> language(const BehaviorPtr& expr, int max_loop) {
    switch (expr->kind) {
        case BehaviorExpr::Kind::EventRef:
            return {{expr->event_id}};
        case BehaviorExpr::Kind::Seq: {
            std::vector<Trace> acc = language(expr->children.front(), max_loop);
            for (std::size_t i = 1; i < expr->children.size(); ++i) {
                acc = concat_product(acc, language(expr->children[i], max_loop));
            }
            return acc;
        }
        case BehaviorExpr::Kind::Alt: {
            std::vector<Trace> acc;
            for (const auto& branch : expr->children) {
                auto part = language(branch, max_loop);
                acc.insert(acc.end(), std::make_move_iterator(part.begin()),
                           std::make_move_iterator(part.end()));
            }
            return acc;
        }
        case BehaviorExpr::Kind::Loop: {
            std::vector<Trace> body = language(expr->children.front(), max_loop);
            std::vector<Trace> acc;
            std::vector<Trace> power = body;
            for (int k = 1; k <= max_loop; ++k) {
                acc.insert(acc.end(), power.begin(), power.end());
                if (k < max_loop) power = concat_product(power, body);
            }
            return acc;
        }
        case BehaviorExpr::Kind::Par: {
            std::vector<Trace> acc = language(expr->children.front(), max_loop);
            for (std::size_t i = 1; i < expr->children.size(); ++i) {
                acc = interleavings(acc, language(expr->children[i], max_loop));
            }
            return acc;
        }
    }
    return {};
}

}  // namespace

bool accepts_trace(const BehaviorPtr& chron, const Trace& trace,
                   const std::set<std::string>& declared) {
    require_declared(trace, declared);
    if (trace.empty()) return false;  // no expression matches the empty trace
    StateSet states;
    states.insert(chron);
    bool completed = false;
    for (const auto& event : trace) {
        if (states.empty()) return false;
        completed = states.step(event);
    }
    return completed;
}

std::set<std::string> next_events(const BehaviorPtr& chron, const Trace& prefix,
                                  const std::set<std::string>& declared) {
    require_declared(prefix, declared);
    StateSet states;
    states.insert(chron);
    for (const auto& event : prefix) {
        if (states.empty()) return {};
        states.step(event);
    }
    std::set<std::string> out;
    for (const auto& s : states.states()) first_events(s, out);
    return out;
}

std::size_t longest_accepted_prefix(const BehaviorPtr& chron, const Trace& trace,
                                    const std::set<std::string>& declared) {
    require_declared(trace, declared);
    StateSet states;
    states.insert(chron);
    std::size_t consumed = 0;
    for (const auto& event : trace) {
        bool completed = states.step(event);
        // The prefix stays valid while states remain, or when this event
        // finished a whole trace (a trace is a prefix of itself).
        if (states.empty() && !completed) break;
        ++consumed;
    }
    return consumed;
}

EnumerationResult enumerate_traces(const BehaviorPtr& chron, int max_loop,
                                   int max_traces) {
    assert(max_loop >= 1 && max_traces >= 1);
    std::vector<Trace> all = language(chron, max_loop);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    EnumerationResult result;
    if (all.size() > static_cast<std::size_t>(max_traces)) {
        all.resize(static_cast<std::size_t>(max_traces));
        result.truncated = true;
    }
    result.traces = std::move(all);
    return result;
}

bool accepts_trace(const Document& doc, const Trace& trace) {
    return accepts_trace(require_chronology(doc).root, trace, declared_event_ids(doc));
}

std::set<std::string> next_events(const Document& doc, const Trace& prefix) {
    return next_events(require_chronology(doc).root, prefix, declared_event_ids(doc));
}

std::size_t longest_accepted_prefix(const Document& doc, const Trace& trace) {
    return longest_accepted_prefix(require_chronology(doc).root, trace,
                                   declared_event_ids(doc));
}

EnumerationResult enumerate_traces(const Document& doc, int max_loop, int max_traces) {
    return enumerate_traces(require_chronology(doc).root, max_loop, max_traces);
}

std::set<std::string> declared_event_ids(const Document& doc) {
    std::set<std::string> ids;
    for (const auto& e : doc.events) ids.insert(e.id);
    return ids;
}

Trace parse_trace(std::string_view text) {
    Trace trace;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string_view part = comma == std::string_view::npos
                                    ? text.substr(pos)
                                    : text.substr(pos, comma - pos);
        while (!part.empty() && (part.front() == ' ' || part.front() == '\t'))
            part.remove_prefix(1);
        while (!part.empty() && (part.back() == ' ' || part.back() == '\t'))
            part.remove_suffix(1);
        if (!part.empty()) trace.emplace_back(part);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return trace;
}

std::string format_trace(const Trace& trace) {
    std::string out;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (i) out += ",";
        out += trace[i];
    }
    return out;
}

}  // namespace tmc
