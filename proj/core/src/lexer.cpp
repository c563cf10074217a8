#include "tmc/lexer.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace tmc {

namespace {

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
public:
    Lexer(std::string_view src, std::vector<Diagnostic>& diags)
        : src_(src), diags_(diags) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        for (;;) {
            skip_trivia();
            if (pos_ >= src_.size()) {
                Token eof;
                eof.kind = TokenKind::Eof;
                eof.span = SourceSpan{pos_, pos_, line_, column_};
                tokens.push_back(std::move(eof));
                break;
            }
            // Bad bytes are reported once and skipped; the loop keeps going
            // so the whole input is always consumed.
            if (auto t = next_token()) tokens.push_back(std::move(*t));
        }
        return tokens;
    }

private:
    void skip_trivia() {
        for (;;) {
            while (pos_ < src_.size() &&
                   (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r' ||
                    src_[pos_] == '\n')) {
                advance();
            }
            if (pos_ + 1 < src_.size() && src_[pos_] == '/' && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
                continue;
            }
            break;
        }
    }

    std::optional<Token> next_token() {
        std::size_t start = pos_;
        int line = line_;
        int column = column_;
        char c = src_[pos_];

        auto finish = [&](TokenKind kind) {
            Token t;
            t.kind = kind;
            t.text = std::string(src_.substr(start, pos_ - start));
            t.span = SourceSpan{start, pos_, line, column};
            return t;
        };

        if (is_ident_start(c)) {
            while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
            return finish(TokenKind::Ident);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                advance();
            Token t = finish(TokenKind::Int);
            try {
                t.value = std::stoll(t.text);
            } catch (...) {
                diags_.push_back({Severity::Error, "SYN008",
                                  "integer literal out of range", t.span});
                t.value = 0;
            }
            return t;
        }
        if (c == '"') return lex_string(start, line, column);

        switch (c) {
            case '{': advance(); return finish(TokenKind::LBrace);
            case '}': advance(); return finish(TokenKind::RBrace);
            case '(': advance(); return finish(TokenKind::LParen);
            case ')': advance(); return finish(TokenKind::RParen);
            case ':': advance(); return finish(TokenKind::Colon);
            case ',': advance(); return finish(TokenKind::Comma);
            case '@': advance(); return finish(TokenKind::At);
            case ';': advance(); return finish(TokenKind::Semi);
            case '|': advance(); return finish(TokenKind::Pipe);
            case '.':
                advance();
                if (pos_ < src_.size() && src_[pos_] == '.') {
                    advance();
                    return finish(TokenKind::DotDot);
                }
                return finish(TokenKind::Dot);
            case '-':
                advance();
                if (pos_ < src_.size() && src_[pos_] == '-') {
                    advance();
                    if (pos_ < src_.size() && src_[pos_] == '>') {
                        advance();
                        return finish(TokenKind::DashArrow);
                    }
                } else if (pos_ < src_.size() && src_[pos_] == '>') {
                    advance();
                    return finish(TokenKind::Arrow);
                }
                diags_.push_back({Severity::Error, "SYN004",
                                  "invalid character sequence starting with '-'",
                                  SourceSpan{start, pos_, line, column}});
                return std::nullopt;
            default:
                advance();
                diags_.push_back({Severity::Error, "SYN004",
                                  "invalid character '" + std::string(1, c) + "'",
                                  SourceSpan{start, pos_, line, column}});
                return std::nullopt;
        }
    }

    Token lex_string(std::size_t start, int line, int column) {
        advance();  // opening quote
        std::string value;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '"') {
                advance();
                Token t;
                t.kind = TokenKind::String;
                t.text = std::move(value);
                t.span = SourceSpan{start, pos_, line, column};
                return t;
            }
            if (c == '\n') break;
            if (c == '\\') {
                if (pos_ + 1 < src_.size() &&
                    (src_[pos_ + 1] == '"' || src_[pos_ + 1] == '\\')) {
                    value += src_[pos_ + 1];
                    advance();
                    advance();
                    continue;
                }
                diags_.push_back({Severity::Error, "SYN003",
                                  "invalid escape sequence in string",
                                  SourceSpan{pos_, std::min(pos_ + 2, src_.size()), line_,
                                             column_}});
                advance();
                if (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '"') advance();
                continue;
            }
            value += c;
            advance();
        }
        diags_.push_back({Severity::Error, "SYN002", "unterminated string literal",
                          SourceSpan{start, pos_, line, column}});
        Token t;
        t.kind = TokenKind::String;
        t.text = std::move(value);
        t.span = SourceSpan{start, pos_, line, column};
        return t;
    }

    void advance() {
        if (pos_ < src_.size()) {
            if (src_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
            ++pos_;
        }
    }

    std::string_view src_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

}  // namespace

std::vector<Token> lex(std::string_view source, std::vector<Diagnostic>& diags) {
    return Lexer(source, diags).run();
}

}  // namespace tmc
