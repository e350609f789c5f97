#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lapden/nl_filter.hpp"
#include "lapden/report.hpp"
#include "lapden/signals.hpp"
#include "lapden/tv_baseline.hpp"

namespace lapden {

/// Figure-reproduction setup. Experiments run on unit grid spacing (h = 1).
struct ExperimentSettings {
    std::string name;
    std::size_t n = 100;
    std::uint64_t seed = 1;
    double delta_rel = 0.09;
    bool two_d = false;
    bool jump_signal = false;
    FilterParams nl;
    TvParams tv;
};

struct MethodOutcome {
    std::string method;  // "nl" or "tv"
    Metrics restored;
    RunTrace trace;
    std::vector<double> values;
    std::size_t jumps = 0;  // first differences above half the jump height (jump signal only)
};

struct ExperimentResult {
    ExperimentSettings settings;
    std::vector<double> clean;
    std::vector<double> noisy;
    std::size_t rows = 0;  // 2D only
    std::size_t cols = 0;
    double tau = 0.0;
    Metrics noisy_metrics;
    std::vector<MethodOutcome> methods;
    std::vector<std::filesystem::path> artifacts;
    std::vector<RunReport> reports;

    [[nodiscard]] const MethodOutcome& method(const std::string& name) const;
};

/// Names accepted by experiment_defaults.
const std::vector<std::string>& experiment_names();

/// Tuned defaults for fig1..fig5. Throws InvalidParameter for an unknown name.
ExperimentSettings experiment_defaults(const std::string& name);

/// Generates data, runs both methods, and (when outdir is non-empty) writes artifacts
/// named <name>_<method>_<seed>.<ext>.
ExperimentResult run_experiment(const ExperimentSettings& settings, const std::filesystem::path& outdir);

}  // namespace lapden
