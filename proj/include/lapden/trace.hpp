#pragma once

#include <cstddef>
#include <vector>

namespace lapden {

/// Per-iteration diagnostics of a time-stepping run. All histories have one entry per
/// evaluated iterate, so they share length `iters_run`.
struct RunTrace {
    std::size_t iters_run = 0;
    std::vector<double> residual_history;  // ||rhs(u_n)||
    std::vector<double> fidelity_history;  // ||u_n - u_0||
    std::vector<double> lambda_history;    // fidelity weight used for step n
    std::vector<double> energy_history;    // discrete energy proxy; diagnostic only
    double dt_used = 0.0;
    bool converged = false;
    double wall_seconds = 0.0;
};

/// Result of a denoising run.
template <class Data>
struct Restored {
    Data data;
    RunTrace trace;
};

}  // namespace lapden
