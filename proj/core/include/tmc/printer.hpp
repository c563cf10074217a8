#pragma once

#include "tmc/model.hpp"

#include <string>

namespace tmc {

// Canonical textual form: 2-space indentation, declaration order preserved,
// refs printed as absolute paths. parse(print_canonical(d)) is structurally
// equal to d, and the output is a fixpoint of parse-then-print.
std::string print_canonical(const Document& doc);

}  // namespace tmc
