#include "support/golden.hpp"

#include "support/oracles.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace tmc::test {

GoldenOutcome check_golden(const std::string& relative_golden_path,
                           const std::string& actual) {
    GoldenOutcome out;
    std::string path = corpus_path(relative_golden_path);
    const char* update = std::getenv("TM_UPDATE_GOLDEN");
    if (update && std::string_view(update) == "1") {
        std::filesystem::create_directories(std::filesystem::path(path).parent_path());
        std::ofstream file(path, std::ios::binary);
        file << actual;
        out.ok = true;
        out.updated = true;
        out.message = "updated " + relative_golden_path;
        return out;
    }

    std::ifstream file(path, std::ios::binary);
    if (!file) {
        out.message = "missing golden file " + relative_golden_path +
                      " (set TM_UPDATE_GOLDEN=1 to create)";
        return out;
    }
    std::string expected((std::istreambuf_iterator<char>(file)),
                         std::istreambuf_iterator<char>());
    if (expected != actual) {
        // Locate the first differing byte for the report.
        std::size_t i = 0;
        while (i < expected.size() && i < actual.size() && expected[i] == actual[i]) ++i;
        out.message = relative_golden_path + " differs at byte " + std::to_string(i);
        return out;
    }
    out.ok = true;
    return out;
}

}  // namespace tmc::test
