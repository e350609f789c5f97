#pragma once

// Shared pseudo-time loop for the nonlinear filter and the TV baseline.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "lapden/error.hpp"
#include "lapden/grid.hpp"
#include "lapden/trace.hpp"

namespace lapden::detail {

struct EvolveConfig {
    double dt = 0.0;
    double tol = 1e-6;
    std::size_t max_iters = 0;
    double lambda = 0.0;                 // fixed weight, or the first-step seed when adaptive
    std::optional<double> target_delta;  // enables per-step re-estimation
    double lambda_cap = 1e300;
    double quad_weight = 1.0;            // h^d
};

/// Runs u_{n+1} = step(u_n) until the stationary residual is small.
///
/// `diffusion(u, g)` writes the diffusion term g(u) (so that du/dt = -g - lambda (u - u0))
/// and returns the regularizer energy. `step(u, g, r, lambda)` advances u in place given
/// g(u_n) and the full right-hand side r.
template <class Diffusion, class Stepper>
RunTrace evolve(std::span<const double> u0, std::vector<double>& u, const EvolveConfig& cfg,
                Diffusion&& diffusion, Stepper&& step) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = u0.size();
    RunTrace trace;
    trace.dt_used = cfg.dt;

    std::vector<double> g(n), r(n);
    const double norm_u0 = norm2(u0);
    double lambda = cfg.lambda;

    for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
        const double reg_energy = diffusion(std::span<const double>(u), std::span<double>(g));

        double misfit2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double d = u[k] - u0[k];
            misfit2 += d * d;
        }
        if (cfg.target_delta && it > 1) {
            double num = 0.0;
            for (std::size_t k = 0; k < n; ++k) num += (u[k] - u0[k]) * g[k];
            const double delta = *cfg.target_delta;
            lambda = std::clamp(-cfg.quad_weight * num / (delta * delta), 0.0, cfg.lambda_cap);
        }

        double res2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            r[k] = -g[k] - lambda * (u[k] - u0[k]);
            res2 += r[k] * r[k];
        }
        const double residual = std::sqrt(res2);
        const double fidelity = std::sqrt(misfit2);

        trace.iters_run = it;
        trace.residual_history.push_back(residual);
        trace.fidelity_history.push_back(fidelity);
        trace.lambda_history.push_back(lambda);
        trace.energy_history.push_back(reg_energy + 0.5 * lambda * cfg.quad_weight * misfit2);

        if (!std::isfinite(residual) || !std::isfinite(reg_energy)) {
            throw DivergenceError(it, "non-finite residual");
        }
        const bool rate_ok = residual <= cfg.tol * norm_u0;
        const bool stationary_ok = lambda <= 0.0 || residual <= cfg.tol * lambda * fidelity;
        if (residual == 0.0 || (rate_ok && stationary_ok)) {
            trace.converged = true;
            break;
        }
        if (it == cfg.max_iters) break;
        step(u, std::span<const double>(g), std::span<const double>(r), lambda);
    }

    for (double v : u) {
        if (!std::isfinite(v)) throw DivergenceError(trace.iters_run, "non-finite iterate");
    }
    trace.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return trace;
}

inline void explicit_update(std::vector<double>& u, std::span<const double> r, double dt) {
    for (std::size_t k = 0; k < u.size(); ++k) u[k] += dt * r[k];
}

}  // namespace lapden::detail
