#pragma once

// Minimal structural DOT reader: enough of the Graphviz textual grammar to
// confirm our emitter's output parses and to count statements. Not a general
// DOT implementation.

#include <map>
#include <string>
#include <vector>

namespace tmc::test {

struct DotGraph {
    std::string name;
    int node_count = 0;      // node statements (with or without attrs)
    int edge_count = 0;
    int subgraph_count = 0;
    std::vector<std::map<std::string, std::string>> edge_attrs;  // per edge stmt
    std::vector<std::map<std::string, std::string>> node_attrs;  // per node stmt
};

struct DotParseOutcome {
    bool ok = false;
    std::string error;
    DotGraph graph;
};

DotParseOutcome read_dot(const std::string& text);

}  // namespace tmc::test
