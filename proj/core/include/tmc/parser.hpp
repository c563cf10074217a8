#pragma once

#include "tmc/diagnostics.hpp"
#include "tmc/model.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace tmc {

// Parse outcome: a document when no error was found, plus any diagnostics
// (errors and warnings). Error recovery resynchronizes at the next item
// keyword, so one run can report several problems.
//
// Error codes:
//   SYN001  unexpected token
//   SYN002  unterminated string literal
//   SYN003  invalid escape sequence in string
//   SYN004  invalid character
//   SYN005  duplicate sibling name
//   SYN006  duplicate event id
//   SYN007  duplicate chronology or source declaration
//   SYN008  integer literal out of range
//   SYN009  invalid span range (start > end)
struct ParseResult {
    std::optional<Document> document;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return document.has_value(); }
};

ParseResult parse(std::string_view source);

}  // namespace tmc
