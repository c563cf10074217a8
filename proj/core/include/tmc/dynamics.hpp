#pragma once

#include "tmc/behavior.hpp"
#include "tmc/model.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tmc {

// An ordered run of event ids, e.g. {"E1", "E2", "E3"}.
using Trace = std::vector<std::string>;

struct EnumerationResult {
    std::vector<Trace> traces;  // deduplicated, lexicographic by id sequence
    bool truncated = false;     // true when max_traces cut the list short
};

// The language of a chronology: EventRef e = {[e]}; Seq concatenates in
// order; Alt is union; Loop is one or more body repetitions; Par is every
// interleaving of one trace per branch.
//
// All three queries throw UnknownEventError for a trace/prefix id that is
// not in `declared`.
bool accepts_trace(const BehaviorPtr& chron, const Trace& trace,
                   const std::set<std::string>& declared);

// Event ids e such that prefix ++ [e] is a prefix of some accepted trace.
std::set<std::string> next_events(const BehaviorPtr& chron, const Trace& prefix,
                                  const std::set<std::string>& declared);

// Number of leading trace events that form a prefix of some accepted trace.
std::size_t longest_accepted_prefix(const BehaviorPtr& chron, const Trace& trace,
                                    const std::set<std::string>& declared);

// All traces with every loop unrolled 1..max_loop times, deduplicated,
// sorted, truncated at max_traces. Bounds must be >= 1.
EnumerationResult enumerate_traces(const BehaviorPtr& chron, int max_loop,
                                   int max_traces);

// Document-level conveniences; throw NoChronologyError when the document
// declares no chronology.
bool accepts_trace(const Document& doc, const Trace& trace);
std::set<std::string> next_events(const Document& doc, const Trace& prefix);
std::size_t longest_accepted_prefix(const Document& doc, const Trace& trace);
EnumerationResult enumerate_traces(const Document& doc, int max_loop, int max_traces);

std::set<std::string> declared_event_ids(const Document& doc);

// Comma-separated trace text, e.g. "E1,E2,E3" (whitespace around ids is
// ignored).
Trace parse_trace(std::string_view text);
std::string format_trace(const Trace& trace);

}  // namespace tmc
