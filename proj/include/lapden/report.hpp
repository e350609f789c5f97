#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lapden/signals.hpp"
#include "lapden/trace.hpp"

namespace lapden {

struct TraceSummary {
    std::size_t iters = 0;
    bool converged = false;
    double dt_used = 0.0;
    double wall_seconds = 0.0;
    double final_lambda = 0.0;

    static TraceSummary from(const RunTrace& t);
};

/// One machine-readable line describing a command run.
struct RunReport {
    std::string command;
    std::string method;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::optional<Metrics> metrics_noisy;
    std::optional<Metrics> metrics_restored;
    TraceSummary trace_summary;
    std::vector<std::string> artifact_paths;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();

    [[nodiscard]] nlohmann::ordered_json to_json() const;
};

nlohmann::ordered_json metrics_to_json(const Metrics& m);

/// Appends the report as a single JSON line.
void append_report(const std::filesystem::path& path, const RunReport& report);

}  // namespace lapden
