#pragma once

#include "tmc/model.hpp"

#include <map>
#include <vector>

namespace tmc {

// Provenance of a level-1 reduction: every replacement flow edge maps to the
// ordered chain of release/transfer/receive nodes it collapsed. A branching
// chain yields one entry per maximal branch; the shared prefix appears in
// each branch's list.
struct SimplificationMap {
    std::map<ElementId, std::vector<ElementId>> replaced;

    bool empty() const { return replaced.empty(); }
};

struct SimplifyResult {
    Document document;
    SimplificationMap map;
};

// Level-1 elision: deletes every release/transfer/receive node and replaces
// each maximal chain a -> r* -> b (a, b create/process/storage) with a single
// flow a -> b carrying the chain in elided_provenance. Triggers attached to
// an elided node are remapped to the nearest surviving endpoint of its chain
// (ties go downstream). Event covers naming elided nodes are rewritten to
// the surviving endpoints so regions stay closed.
//
// Requires a document that is valid in Strict mode. Throws DanglingChainError
// if a chain has no surviving endpoint on one side.
SimplifyResult simplify_level1(const Document& doc);

// Level-2 notation: flags every create/process action with the `implicit`
// render hint so renderers draw bare boxes instead of labeled action boxes.
// Structure is untouched and the flag carries no semantics, so the
// annotation is reversible. Throws ModeError if the document still contains
// release/transfer/receive nodes.
Document mark_implicit(const Document& doc);

}  // namespace tmc
