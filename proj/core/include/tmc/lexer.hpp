#pragma once

#include "tmc/diagnostics.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace tmc {

enum class TokenKind {
    Ident,      // identifiers and keywords (keywords are contextual)
    String,     // "..." with \" and \\ escapes
    Int,        // decimal integer
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Comma,
    Dot,
    DotDot,     // ..
    At,         // @
    Semi,
    Pipe,
    Arrow,      // ->
    DashArrow,  // -->
    Eof,
};

struct Token {
    TokenKind kind = TokenKind::Eof;
    std::string text;   // raw text; for String, the decoded value
    long long value = 0;  // for Int
    SourceSpan span;
};

// Lexes the whole input. Lexical problems (unterminated string, bad escape,
// stray character, integer overflow) are reported as diagnostics; the bad
// region is skipped so lexing always reaches Eof.
std::vector<Token> lex(std::string_view source, std::vector<Diagnostic>& diags);

}  // namespace tmc
