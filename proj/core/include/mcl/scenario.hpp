// Scenario runner: a JSON description of link conditions, store contents, and
// timed client actions, executed over the simulator with named assertions.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace mcl::sim {

struct ScenarioReport {
    std::string csv;  // url,outcome,bytes,chunks,retransmissions,buffered_frames
    bool assertions_ok = true;
    std::vector<std::string> failures;  // "name: detail"
};

// Throws ScenarioError on malformed input. Relative file references resolve
// against base_dir.
ScenarioReport run_scenario(const std::string& json_text,
                            const std::filesystem::path& base_dir = ".");
ScenarioReport run_scenario_file(const std::filesystem::path& path);

}  // namespace mcl::sim
