#include "tmc/parser.hpp"

#include "tmc/lexer.hpp"

#include <set>
#include <string>
#include <utility>

namespace tmc {

namespace {

// Hard bound on thimac/behavior nesting so hostile inputs cannot blow the
// stack; reported as SYN010.
constexpr int kMaxNesting = 200;

bool is_item_keyword(const Token& t) {
    if (t.kind != TokenKind::Ident) return false;
    return t.text == "thimac" || t.text == "action" || t.text == "store" ||
           t.text == "flow" || t.text == "trigger" || t.text == "event" ||
           t.text == "chronology" || t.text == "source" || t.text == "annotate";
}

class Parser {
public:
    Parser(std::string_view source, std::vector<Diagnostic>& diags)
        : diags_(diags) {
        tokens_ = lex(source, diags_);
    }

    std::optional<Document> run() {
        parse_document();
        if (has_errors(diags_)) return std::nullopt;
        doc_.reindex();
        resolve_edges();
        return std::move(doc_);
    }

private:
    const Token& cur(std::size_t ahead = 0) const {
        std::size_t i = idx_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }

    bool at(TokenKind k) const { return cur().kind == k; }

    bool at_keyword(std::string_view kw) const {
        return cur().kind == TokenKind::Ident && cur().text == kw;
    }

    const Token& advance() {
        const Token& t = cur();
        if (idx_ + 1 < tokens_.size()) ++idx_;
        return t;
    }

    bool match(TokenKind k) {
        if (at(k)) {
            advance();
            return true;
        }
        return false;
    }

    void error_here(const std::string& message, const std::string& code = "SYN001") {
        diags_.push_back({Severity::Error, code, message, cur().span});
    }

    bool expect(TokenKind k, const std::string& what) {
        if (match(k)) return true;
        error_here("expected " + what);
        return false;
    }

    bool expect_keyword(std::string_view kw) {
        if (at_keyword(kw)) {
            advance();
            return true;
        }
        error_here("expected '" + std::string(kw) + "'");
        return false;
    }

    // Recovery: skip to the next item keyword, '}' or end of input.
    void synchronize() {
        while (!at(TokenKind::Eof)) {
            if (is_item_keyword(cur()) || at(TokenKind::RBrace)) return;
            advance();
        }
    }

    // Iteratively skips a balanced { ... } block (cursor at '{').
    void skip_braced() {
        if (!match(TokenKind::LBrace)) return;
        int depth = 1;
        while (depth > 0 && !at(TokenKind::Eof)) {
            if (at(TokenKind::LBrace)) ++depth;
            if (at(TokenKind::RBrace)) --depth;
            advance();
        }
    }

    void parse_document() {
        if (!expect_keyword("model")) return;
        if (!at(TokenKind::String)) {
            error_here("expected model name string");
            return;
        }
        doc_.name = advance().text;
        if (!expect(TokenKind::LBrace, "'{'")) return;
        parse_items(std::nullopt, "", 0);
        expect(TokenKind::RBrace, "'}' to close the model");
        if (!at(TokenKind::Eof)) error_here("unexpected trailing input after model");
    }

    void parse_items(std::optional<ElementId> scope, const std::string& path_prefix,
                     int depth) {
        std::set<std::string> sibling_names;
        while (!at(TokenKind::RBrace) && !at(TokenKind::Eof)) {
            if (!parse_item(scope, path_prefix, sibling_names, depth)) synchronize();
        }
    }

    bool parse_item(const std::optional<ElementId>& scope, const std::string& path_prefix,
                    std::set<std::string>& sibling_names, int depth) {
        if (at_keyword("thimac")) return parse_thimac(scope, path_prefix, sibling_names, depth);
        if (at_keyword("action")) return parse_action(scope, path_prefix, sibling_names);
        if (at_keyword("store")) return parse_store(scope, path_prefix, sibling_names);
        if (at_keyword("flow")) return parse_edge(scope, EdgeKind::Flow);
        if (at_keyword("trigger")) return parse_edge(scope, EdgeKind::Trigger);
        if (at_keyword("event")) return parse_event(scope);
        if (at_keyword("chronology")) return parse_chronology(scope);
        if (at_keyword("source")) return parse_source(scope);
        if (at_keyword("annotate")) return parse_annotate(scope);
        error_here("expected a declaration (thimac, action, store, flow, trigger, "
                   "event, chronology, source or annotate)");
        return false;
    }

    // Registers a named child, handling duplicate sibling names (SYN005).
    // Duplicates get a synthetic path suffix so indexing stays consistent;
    // the document is discarded anyway once an error is recorded.
    std::string child_path(const std::string& path_prefix, const std::string& name,
                           std::set<std::string>& sibling_names, SourceSpan span) {
        std::string path = path_prefix.empty() ? name : path_prefix + "." + name;
        if (!sibling_names.insert(name).second) {
            diags_.push_back({Severity::Error, "SYN005",
                              "duplicate sibling name '" + name + "'", span});
            path += "#dup" + std::to_string(++duplicate_counter_);
        }
        return path;
    }

    void attach_child(const ElementId& child) {
        if (scope_index_) doc_.nodes[*scope_index_].children.push_back(child);
    }

    std::optional<int> parse_label() {
        if (!match(TokenKind::At)) return std::nullopt;
        if (!at(TokenKind::Int)) {
            error_here("expected integer after '@'");
            return std::nullopt;
        }
        const Token& t = advance();
        return static_cast<int>(t.value);
    }

    bool parse_thimac(const std::optional<ElementId>& scope, const std::string& path_prefix,
                      std::set<std::string>& sibling_names, int depth) {
        SourceSpan start = cur().span;
        advance();  // thimac
        if (!at(TokenKind::Ident)) {
            error_here("expected thimac name");
            return false;
        }
        Token name = advance();
        std::optional<int> label = parse_label();
        if (depth + 1 > kMaxNesting) {
            diags_.push_back({Severity::Error, "SYN010", "nesting too deep", cur().span});
            skip_braced();
            return true;
        }

        std::string path = child_path(path_prefix, name.text, sibling_names, name.span);
        Node node;
        node.id = ElementId(path);
        node.node_kind = NodeKind::Thimac;
        node.name = name.text;
        node.label = label;
        node.owner = scope;
        node.seq = doc_.next_seq++;
        node.span = start;
        doc_.nodes.push_back(node);
        attach_child(node.id);
        std::size_t node_index = doc_.nodes.size() - 1;

        if (!expect(TokenKind::LBrace, "'{'")) return false;
        std::optional<std::size_t> saved_scope = scope_index_;
        scope_index_ = node_index;
        parse_items(node.id, path, depth + 1);
        scope_index_ = saved_scope;
        return expect(TokenKind::RBrace, "'}' to close thimac '" + name.text + "'");
    }

    bool parse_action(const std::optional<ElementId>& scope, const std::string& path_prefix,
                      std::set<std::string>& sibling_names) {
        SourceSpan start = cur().span;
        advance();  // action
        if (!at(TokenKind::Ident)) {
            error_here("expected action name");
            return false;
        }
        Token name = advance();
        if (!expect(TokenKind::Colon, "':' after action name")) return false;
        if (!at(TokenKind::Ident)) {
            error_here("expected action kind (create, process, release, transfer, receive)");
            return false;
        }
        Token kind_tok = advance();
        auto kind = action_kind_from(kind_tok.text);
        if (!kind) {
            diags_.push_back({Severity::Error, "SYN001",
                              "unknown action kind '" + kind_tok.text + "'", kind_tok.span});
            return false;
        }
        std::optional<int> label = parse_label();

        Node node;
        node.id = ElementId(child_path(path_prefix, name.text, sibling_names, name.span));
        node.node_kind = NodeKind::Action;
        node.name = name.text;
        node.action = *kind;
        node.label = label;
        node.owner = scope;
        node.seq = doc_.next_seq++;
        node.span = start;
        doc_.nodes.push_back(node);
        attach_child(node.id);
        return true;
    }

    bool parse_store(const std::optional<ElementId>& scope, const std::string& path_prefix,
                     std::set<std::string>& sibling_names) {
        SourceSpan start = cur().span;
        advance();  // store
        if (!at(TokenKind::Ident)) {
            error_here("expected store name");
            return false;
        }
        Token name = advance();
        std::optional<int> label = parse_label();

        Node node;
        node.id = ElementId(child_path(path_prefix, name.text, sibling_names, name.span));
        node.node_kind = NodeKind::Storage;
        node.name = name.text;
        node.label = label;
        node.owner = scope;
        node.seq = doc_.next_seq++;
        node.span = start;
        doc_.nodes.push_back(node);
        attach_child(node.id);
        return true;
    }

    struct Ref {
        std::string path;
        SourceSpan span;
    };

    std::optional<Ref> parse_ref() {
        if (!at(TokenKind::Ident)) {
            error_here("expected a dotted reference");
            return std::nullopt;
        }
        Token first = advance();
        Ref ref{first.text, first.span};
        while (at(TokenKind::Dot)) {
            advance();
            if (!at(TokenKind::Ident)) {
                error_here("expected identifier after '.'");
                return std::nullopt;
            }
            Token part = advance();
            ref.path += "." + part.text;
            ref.span.byte_end = part.span.byte_end;
        }
        return ref;
    }

    bool parse_edge(const std::optional<ElementId>& scope, EdgeKind kind) {
        SourceSpan start = cur().span;
        advance();  // flow | trigger
        auto from = parse_ref();
        if (!from) return false;
        TokenKind arrow = kind == EdgeKind::Flow ? TokenKind::Arrow : TokenKind::DashArrow;
        if (!expect(arrow, kind == EdgeKind::Flow ? "'->'" : "'-->'")) return false;
        auto to = parse_ref();
        if (!to) return false;

        Edge edge;
        if (kind == EdgeKind::Flow) {
            edge.id = ElementId("flow@" + std::to_string(doc_.next_flow_ordinal++));
        } else {
            edge.id = ElementId("trigger@" + std::to_string(doc_.next_trigger_ordinal++));
        }
        edge.kind = kind;
        edge.from_path = from->path;
        edge.to_path = to->path;
        edge.scope = scope;
        edge.seq = doc_.next_seq++;
        edge.span = start;
        edge.from_span = from->span;
        edge.to_span = to->span;
        doc_.edges.push_back(std::move(edge));
        return true;
    }

    bool parse_event(const std::optional<ElementId>& scope) {
        SourceSpan start = cur().span;
        advance();  // event
        if (!at(TokenKind::Ident)) {
            error_here("expected event id");
            return false;
        }
        Token id = advance();
        if (!at(TokenKind::String)) {
            error_here("expected event description string");
            return false;
        }
        Token desc = advance();
        if (!expect_keyword("covers")) return false;
        if (!expect(TokenKind::LBrace, "'{'")) return false;

        Event event;
        event.id = id.text;
        event.description = desc.text;
        event.scope = scope;
        event.seq = doc_.next_seq++;
        event.span = start;

        auto ref = parse_ref();
        if (!ref) return false;
        event.covers.push_back({ref->path, ref->span});
        while (match(TokenKind::Comma)) {
            auto next = parse_ref();
            if (!next) return false;
            event.covers.push_back({next->path, next->span});
        }
        if (!expect(TokenKind::RBrace, "'}' to close covers")) return false;
        if (at_keyword("time")) {
            advance();
            if (!at(TokenKind::String)) {
                error_here("expected time string");
                return false;
            }
            event.time = advance().text;
        }

        for (const auto& existing : doc_.events) {
            if (existing.id == event.id) {
                diags_.push_back({Severity::Error, "SYN006",
                                  "duplicate event id '" + event.id + "'", id.span});
                return true;
            }
        }
        doc_.events.push_back(std::move(event));
        return true;
    }

    bool parse_chronology(const std::optional<ElementId>& scope) {
        SourceSpan start = cur().span;
        advance();  // chronology
        if (doc_.chronology) {
            diags_.push_back({Severity::Error, "SYN007",
                              "duplicate chronology declaration", start});
            skip_braced();
            return true;
        }
        if (!expect(TokenKind::LBrace, "'{'")) return false;
        BehaviorPtr behavior = parse_behavior(0);
        if (!behavior) return false;
        if (!expect(TokenKind::RBrace, "'}' to close chronology")) return false;

        Chronology chron;
        chron.root = std::move(behavior);
        chron.scope = scope;
        chron.seq = doc_.next_seq++;
        chron.span = start;
        doc_.chronology = std::move(chron);
        return true;
    }

    BehaviorPtr parse_behavior(int depth) {
        if (depth > kMaxNesting) {
            diags_.push_back({Severity::Error, "SYN010", "nesting too deep", cur().span});
            return nullptr;
        }
        SourceSpan start = cur().span;
        std::vector<BehaviorPtr> parts;
        auto first = parse_term(depth);
        if (!first) return nullptr;
        parts.push_back(std::move(first));
        while (match(TokenKind::Semi)) {
            auto next = parse_term(depth);
            if (!next) return nullptr;
            parts.push_back(std::move(next));
        }
        return BehaviorExpr::seq(std::move(parts), start);
    }

    BehaviorPtr parse_branches(BehaviorExpr::Kind kind, int depth) {
        SourceSpan start = cur().span;
        advance();  // alt | par
        if (!expect(TokenKind::LBrace, "'{'")) return nullptr;
        std::vector<BehaviorPtr> branches;
        auto first = parse_behavior(depth + 1);
        if (!first) return nullptr;
        branches.push_back(std::move(first));
        while (match(TokenKind::Pipe)) {
            auto next = parse_behavior(depth + 1);
            if (!next) return nullptr;
            branches.push_back(std::move(next));
        }
        if (branches.size() < 2) {
            error_here(kind == BehaviorExpr::Kind::Alt
                           ? "alt requires at least two branches"
                           : "par requires at least two branches");
            return nullptr;
        }
        if (!expect(TokenKind::RBrace, "'}'")) return nullptr;
        return kind == BehaviorExpr::Kind::Alt
                   ? BehaviorExpr::alt(std::move(branches), start)
                   : BehaviorExpr::par(std::move(branches), start);
    }

    BehaviorPtr parse_term(int depth) {
        if (at_keyword("alt")) return parse_branches(BehaviorExpr::Kind::Alt, depth);
        if (at_keyword("par")) return parse_branches(BehaviorExpr::Kind::Par, depth);
        if (at_keyword("loop")) {
            SourceSpan start = cur().span;
            advance();
            std::optional<std::string> guard;
            if (match(TokenKind::LParen)) {
                if (!at(TokenKind::String)) {
                    error_here("expected guard string");
                    return nullptr;
                }
                guard = advance().text;
                if (!expect(TokenKind::RParen, "')'")) return nullptr;
            }
            if (!expect(TokenKind::LBrace, "'{'")) return nullptr;
            auto body = parse_behavior(depth + 1);
            if (!body) return nullptr;
            if (!expect(TokenKind::RBrace, "'}'")) return nullptr;
            return BehaviorExpr::loop(std::move(body), std::move(guard), start);
        }
        if (at(TokenKind::Ident)) {
            Token t = advance();
            return BehaviorExpr::event(t.text, t.span);
        }
        error_here("expected an event id, alt, loop or par");
        return nullptr;
    }

    bool parse_source(const std::optional<ElementId>& scope) {
        SourceSpan start = cur().span;
        advance();  // source
        if (!at(TokenKind::String)) {
            error_here("expected source path string");
            return false;
        }
        Token path = advance();
        if (doc_.source) {
            diags_.push_back({Severity::Error, "SYN007",
                              "duplicate source declaration", start});
            return true;
        }
        SourceDecl src;
        src.path = path.text;
        src.scope = scope;
        src.seq = doc_.next_seq++;
        src.span = start;
        doc_.source = std::move(src);
        return true;
    }

    bool parse_annotate(const std::optional<ElementId>& scope) {
        SourceSpan start = cur().span;
        advance();  // annotate
        if (!at(TokenKind::Ident)) {
            error_here("expected event id");
            return false;
        }
        Token id = advance();
        if (!expect_keyword("spans")) return false;

        Annotation ann;
        ann.event_id = id.text;
        ann.scope = scope;
        ann.seq = doc_.next_seq++;
        ann.span = start;

        auto parse_span = [&]() -> bool {
            if (!at(TokenKind::Int)) {
                error_here("expected span start offset");
                return false;
            }
            Token lo = advance();
            if (!expect(TokenKind::DotDot, "'..'")) return false;
            if (!at(TokenKind::Int)) {
                error_here("expected span end offset");
                return false;
            }
            Token hi = advance();
            if (hi.value < lo.value) {
                SourceSpan s = lo.span;
                s.byte_end = hi.span.byte_end;
                diags_.push_back({Severity::Error, "SYN009",
                                  "invalid span range (start > end)", s});
                return false;
            }
            ann.spans.push_back({static_cast<std::size_t>(lo.value),
                                 static_cast<std::size_t>(hi.value)});
            return true;
        };

        if (!parse_span()) return false;
        while (match(TokenKind::Comma)) {
            if (!parse_span()) return false;
        }
        doc_.annotations.push_back(std::move(ann));
        return true;
    }

    void resolve_edges() {
        for (auto& e : doc_.edges) {
            ElementId from{e.from_path};
            ElementId to{e.to_path};
            if (doc_.find_node(from)) e.from = from;
            if (doc_.find_node(to)) e.to = to;
        }
    }

    std::vector<Token> tokens_;
    std::vector<Diagnostic>& diags_;
    std::size_t idx_ = 0;
    Document doc_;
    std::optional<std::size_t> scope_index_;
    int duplicate_counter_ = 0;
};

}  // namespace

ParseResult parse(std::string_view source) {
    ParseResult result;
    Parser parser(source, result.diagnostics);
    result.document = parser.run();
    sort_diagnostics(result.diagnostics);
    return result;
}

}  // namespace tmc
