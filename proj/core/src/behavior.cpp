#include "tmc/behavior.hpp"

#include <cassert>
#include <utility>

namespace tmc {

namespace {

BehaviorPtr make(BehaviorExpr expr) {
    return std::make_shared<const BehaviorExpr>(std::move(expr));
}

}  // namespace

BehaviorPtr BehaviorExpr::event(std::string id, SourceSpan span) {
    BehaviorExpr e;
    e.kind = Kind::EventRef;
    e.event_id = std::move(id);
    e.span = span;
    return make(std::move(e));
}

BehaviorPtr BehaviorExpr::seq(std::vector<BehaviorPtr> parts, SourceSpan span) {
    assert(!parts.empty());
    if (parts.size() == 1) return parts.front();
    BehaviorExpr e;
    e.kind = Kind::Seq;
    e.children = std::move(parts);
    e.span = span;
    return make(std::move(e));
}

BehaviorPtr BehaviorExpr::alt(std::vector<BehaviorPtr> branches, SourceSpan span) {
    assert(branches.size() >= 2);
    BehaviorExpr e;
    e.kind = Kind::Alt;
    e.children = std::move(branches);
    e.span = span;
    return make(std::move(e));
}

BehaviorPtr BehaviorExpr::loop(BehaviorPtr body, std::optional<std::string> guard,
                               SourceSpan span) {
    BehaviorExpr e;
    e.kind = Kind::Loop;
    e.children = {std::move(body)};
    e.guard = std::move(guard);
    e.span = span;
    return make(std::move(e));
}

BehaviorPtr BehaviorExpr::par(std::vector<BehaviorPtr> branches, SourceSpan span) {
    assert(branches.size() >= 2);
    BehaviorExpr e;
    e.kind = Kind::Par;
    e.children = std::move(branches);
    e.span = span;
    return make(std::move(e));
}

bool behavior_equal(const BehaviorPtr& a, const BehaviorPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    if (a->event_id != b->event_id) return false;
    if (a->guard != b->guard) return false;
    if (a->children.size() != b->children.size()) return false;
    for (std::size_t i = 0; i < a->children.size(); ++i) {
        if (!behavior_equal(a->children[i], b->children[i])) return false;
    }
    return true;
}

namespace {

void append_string(const BehaviorPtr& expr, std::string& out) {
    switch (expr->kind) {
        case BehaviorExpr::Kind::EventRef:
            out += expr->event_id;
            break;
        case BehaviorExpr::Kind::Seq: {
            bool first = true;
            for (const auto& c : expr->children) {
                if (!first) out += "; ";
                first = false;
                append_string(c, out);
            }
            break;
        }
        case BehaviorExpr::Kind::Alt:
        case BehaviorExpr::Kind::Par: {
            out += expr->kind == BehaviorExpr::Kind::Alt ? "alt { " : "par { ";
            bool first = true;
            for (const auto& c : expr->children) {
                if (!first) out += " | ";
                first = false;
                append_string(c, out);
            }
            out += " }";
            break;
        }
        case BehaviorExpr::Kind::Loop: {
            out += "loop ";
            if (expr->guard) {
                out += "(\"";
                for (char ch : *expr->guard) {
                    if (ch == '"' || ch == '\\') out += '\\';
                    out += ch;
                }
                out += "\") ";
            }
            out += "{ ";
            append_string(expr->children.front(), out);
            out += " }";
            break;
        }
    }
}

void collect_refs(const BehaviorPtr& expr, std::vector<std::string>& out) {
    if (expr->kind == BehaviorExpr::Kind::EventRef) {
        for (const auto& seen : out) {
            if (seen == expr->event_id) return;
        }
        out.push_back(expr->event_id);
        return;
    }
    for (const auto& c : expr->children) collect_refs(c, out);
}

}  // namespace

std::string behavior_to_string(const BehaviorPtr& expr) {
    std::string out;
    if (expr) append_string(expr, out);
    return out;
}

std::vector<std::string> behavior_event_refs(const BehaviorPtr& expr) {
    std::vector<std::string> out;
    if (expr) collect_refs(expr, out);
    return out;
}

}  // namespace tmc
