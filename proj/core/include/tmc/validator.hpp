#pragma once

#include "tmc/diagnostics.hpp"
#include "tmc/model.hpp"

#include <string_view>
#include <vector>

namespace tmc {

// Strict keeps the full five-action flow grammar; Simplified is the
// post-reduction form where flows connect create/process/storage nodes
// directly and release/transfer/receive may not appear.
enum class Mode { Strict, Simplified };

struct ValidationRule {
    std::string_view code;
    Severity severity;
    std::string_view description;
};

// The documented rule catalog, in code order (V1..V11).
const std::vector<ValidationRule>& rule_catalog();

// True iff a flow from an action/storage of category `from` to one of
// category `to` is legal in `mode`. Storage endpoints are passed as
// std::nullopt.
bool flow_pair_allowed(Mode mode, std::optional<ActionKind> from,
                       std::optional<ActionKind> to);

// Structural well-formedness of the static model under `mode`:
//   V1  flow/trigger endpoint does not resolve
//   V2  endpoint of the wrong element kind, or a self-loop
//   V3  flow violates the action adjacency table of the mode
//   V4  cross-thimac flow that is not transfer->transfer (strict only)
//   V5  trigger target is not create or process
//   V6  release/transfer/receive node present (simplified only)
// Diagnostics are returned sorted by source span; empty means valid.
std::vector<Diagnostic> check_static(const Document& doc, Mode mode);

// Dynamic declarations; call only after check_static reported no errors:
//   V7  event cover reference does not resolve
//   V8  chronology leaf names an undeclared event
//   V9  event region not weakly connected (warning)
//   V10 two events carve identical regions (warning)
//   V11 annotate references an undeclared event
std::vector<Diagnostic> check_dynamic(const Document& doc);

// check_static plus, when it produced no errors, check_dynamic.
std::vector<Diagnostic> check_document(const Document& doc, Mode mode);

}  // namespace tmc
