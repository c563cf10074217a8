#pragma once

// Golden-file comparison. Expected outputs live under
// corpus/<case>/expected/*.golden and are regenerated only when the
// TM_UPDATE_GOLDEN=1 environment variable is set.

#include <string>

namespace tmc::test {

struct GoldenOutcome {
    bool ok = false;
    bool updated = false;
    std::string message;
};

GoldenOutcome check_golden(const std::string& relative_golden_path,
                           const std::string& actual);

}  // namespace tmc::test
