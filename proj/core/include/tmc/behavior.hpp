#pragma once

#include "tmc/diagnostics.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tmc {

struct BehaviorExpr;
using BehaviorPtr = std::shared_ptr<const BehaviorExpr>;

// Chronology AST. Seq is nonempty, Alt/Par have >=2 branches, Loop has one
// body and repeats it one or more times (the loop bound is a simulation
// parameter, not part of the language).
struct BehaviorExpr {
    enum class Kind { EventRef, Seq, Alt, Loop, Par };

    Kind kind = Kind::EventRef;
    std::string event_id;               // EventRef only
    std::vector<BehaviorPtr> children;  // Seq/Alt/Par branches, Loop body
    std::optional<std::string> guard;   // Loop only, documentation text
    SourceSpan span;

    static BehaviorPtr event(std::string id, SourceSpan span = {});
    static BehaviorPtr seq(std::vector<BehaviorPtr> parts, SourceSpan span = {});
    static BehaviorPtr alt(std::vector<BehaviorPtr> branches, SourceSpan span = {});
    static BehaviorPtr loop(BehaviorPtr body, std::optional<std::string> guard = {},
                            SourceSpan span = {});
    static BehaviorPtr par(std::vector<BehaviorPtr> branches, SourceSpan span = {});
};

// Structural equality (spans ignored).
bool behavior_equal(const BehaviorPtr& a, const BehaviorPtr& b);

// Canonical one-line rendering, e.g. `E1; alt { E2 | E3 }; loop ("g") { E4 }`.
// Used by the pretty-printer and as a structural key by the trace stepper.
std::string behavior_to_string(const BehaviorPtr& expr);

// All event ids referenced by leaves, in first-occurrence order.
std::vector<std::string> behavior_event_refs(const BehaviorPtr& expr);

}  // namespace tmc
