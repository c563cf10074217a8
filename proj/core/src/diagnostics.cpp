#include "tmc/diagnostics.hpp"

#include <algorithm>
#include <tuple>

namespace tmc {

std::string format_diagnostic(const Diagnostic& d, const std::string& file) {
    std::string out = d.severity == Severity::Error ? "ERROR" : "WARNING";
    out += " ";
    out += d.code;
    out += " ";
    out += file;
    out += ":";
    out += std::to_string(d.span.line);
    out += ":";
    out += std::to_string(d.span.column);
    out += " ";
    out += d.message;
    return out;
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
    std::stable_sort(diags.begin(), diags.end(),
                     [](const Diagnostic& a, const Diagnostic& b) {
                         return std::tie(a.span.byte_start, a.span.byte_end, a.code) <
                                std::tie(b.span.byte_start, b.span.byte_end, b.code);
                     });
}

}  // namespace tmc
