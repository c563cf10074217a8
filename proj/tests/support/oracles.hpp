#pragma once

// Independent oracles for property and acceptance tests. Deliberately
// brute-force and separate from the library's implementation paths.

#include "tmc/behavior.hpp"
#include "tmc/model.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tmc::test {

// Linear scan of the containment tree (no index lookups).
std::optional<ElementId> oracle_resolve(const Document& doc, const std::string& path);

// Region closure computed as a set filter over the element table.
std::set<ElementId> oracle_region(const Document& doc, const std::set<ElementId>& seeds);

// Flow-edge transitive closure over the given node ids, as ordered pairs
// (Floyd-Warshall on an adjacency matrix).
std::set<std::pair<ElementId, ElementId>> oracle_flow_closure(
    const Document& doc, const std::vector<ElementId>& nodes);

// Bounded language of a behavior expression, enumerated set-wise.
std::set<std::vector<std::string>> oracle_language(const BehaviorPtr& expr, int max_loop);

// Byte-membership bitmap coverage: how many bytes of [0, total) are covered
// by at least one (clipped) span.
std::size_t oracle_covered_bytes(std::size_t total,
                                 const std::vector<AnnotationSpan>& spans);

// Corpus access. Path pieces are relative to the corpus root, e.g.
// corpus_path("sales/model.tm").
std::string corpus_path(const std::string& relative);
std::string read_file_or_die(const std::string& path);

// Parses a corpus model and requires zero diagnostics.
Document load_corpus_model(const std::string& case_name);

}  // namespace tmc::test
