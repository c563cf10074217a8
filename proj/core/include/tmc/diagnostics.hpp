#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tmc {

// Half-open byte range into the source buffer, plus the 1-based line/column
// of its first byte.
struct SourceSpan {
    std::size_t byte_start = 0;
    std::size_t byte_end = 0;
    int line = 1;
    int column = 1;
};

enum class Severity { Error, Warning };

// One reported problem. `code` is drawn from the documented catalogs:
// SYN001..SYN009 for the parser, V1..V11 for the validator.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    SourceSpan span;
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) {
        if (d.severity == Severity::Error) return true;
    }
    return false;
}

// `LEVEL CODE file:line:col message`, one diagnostic per line.
std::string format_diagnostic(const Diagnostic& d, const std::string& file);

// Stable presentation order: by span start, then end, then code.
void sort_diagnostics(std::vector<Diagnostic>& diags);

}  // namespace tmc
