#pragma once

#include "tmc/diagnostics.hpp"
#include "tmc/model.hpp"

#include <string>
#include <vector>

namespace tmc {

// Deterministic narrative of the document's chronology, assembled from
// fixed templates:
//   EventRef  -> description with a terminal period ensured, then " (Ei)"
//   Seq       -> parts joined by one space
//   Alt       -> "Either: " b1 " Or: " b2 [" Or: " ...]
//   Loop      -> body " This repeats."            (no guard)
//                body " Repeating this <g>."      (guard g)
//   Par       -> "In parallel: " b1 " And: " b2 [" And: " ...]
// Throws NoChronologyError when no chronology is declared and
// UnknownEventError for a leaf naming an undeclared event.
std::string narrate_chronology(const Document& doc);

struct CoverageReport {
    std::size_t total_bytes = 0;
    std::size_t covered_bytes = 0;   // size of the merged span union
    int percent_tenths = 0;          // covered/total*1000, rounded half-up
    std::string marked_text;         // covered spans wrapped in << >>
    std::vector<Diagnostic> warnings;  // clipped out-of-range spans

    double percent() const { return percent_tenths / 10.0; }
    std::string percent_text() const;  // e.g. "33.3"
};

// Coverage of `source_text` by the events' annotation spans. Overlapping
// and adjacent spans merge and count once; spans reaching past the end of
// the text are clipped with a warning, not an error. Spans are byte
// offsets, start inclusive, end exclusive.
CoverageReport coverage_report(const std::string& source_text,
                               const std::vector<Annotation>& annotations);

// `coverage: P%` / `covered: X/Y bytes` / blank line / marked text.
std::string format_coverage(const CoverageReport& report);

}  // namespace tmc
