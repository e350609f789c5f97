#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lapden/grid.hpp"
#include "lapden/trace.hpp"

namespace lapden {

enum class Solver { ExplicitEuler, SemiImplicit };

/// Parameters of the fourth-order nonlinear diffusion filter.
///
/// With `target_delta` unset the fidelity weight is the fixed `lambda`. With it set, the
/// weight is re-estimated every step from the current iterate and `lambda` only seeds
/// the first step. `target_delta` is measured in the h-weighted discrete L2 norm
/// sqrt(h^d * sum(x^2)), which is the plain 2-norm on unit-spaced grids.
struct FilterParams {
    double lambda = 1.0;
    double epsilon = 1e-2;
    double p = 0.5;
    std::optional<double> dt;  // nullopt: chosen automatically
    std::size_t max_iters = 200000;
    double tol = 1e-6;
    std::optional<double> target_delta;
    Solver solver = Solver::ExplicitEuler;
    double safety = 0.9;  // fraction of the explicit stability bound used by Auto dt

    /// Throws InvalidParameter on the first violated constraint.
    void validate() const;
};

/// w / (w^2 + epsilon)^p. Odd in w, bounded for p >= 0.5.
double flux(double w, double epsilon, double p);

/// sup_w |flux(w)|: attained at w^2 = epsilon/(2p-1) for p > 0.5; equals 1 (not attained) at p = 0.5.
double flux_bound(double epsilon, double p);

/// Largest explicit Euler step for the linearized operator, 2 / (rho * epsilon^-p / h^4 + lambda),
/// where rho bounds ||outer|| * ||inner||: 16 in 1D, 64 for the 2D five-point stencils.
double stable_step_bound(double h, double epsilon, double p, double lambda, int dims = 1);

/// Semi-discrete right-hand side -D1 flux(D0 u) - lambda (u - u0), using `params.lambda`.
std::vector<double> rhs_1d(const Signal1D& u, const Signal1D& u0, const FilterParams& params);

/// -Lap_D flux(Lap_N u) - lambda (u - u0): Neumann-mirror inner Laplacian, zero-ghost outer one.
Field2D rhs_2d(const Field2D& u, const Field2D& u0, const FilterParams& params);

/// Fidelity weight balancing the diffusion term against the known noise norm:
/// max(0, -<u - u0, D1 flux(D0 u)>_h / delta^2). Requires `params.target_delta`.
double adaptive_lambda(const Signal1D& u, const Signal1D& u0, const FilterParams& params);
double adaptive_lambda(const Field2D& u, const Field2D& u0, const FilterParams& params);

/// ||D1 F(u) + lambda (u - u0)|| / ||lambda (u - u0)||, the relative stationary residual.
/// Infinite when lambda (u - u0) vanishes but the residual does not; 0 when both vanish.
double equilibrium_residual(const Signal1D& u, const Signal1D& u0, double epsilon, double p, double lambda);
double equilibrium_residual(const Field2D& u, const Field2D& u0, double epsilon, double p, double lambda);

/// Evolves from u0 (or `warm_start` in 2D) to a stationary state.
///
/// Stops when ||rhs(u_n)|| <= tol * ||u_0|| and, for positive lambda, also
/// ||rhs(u_n)|| <= tol * ||lambda (u_n - u_0)||; the returned iterate is that u_n.
/// Throws DivergenceError on a non-finite iterate. Hitting max_iters returns with
/// converged = false.
Restored<Signal1D> denoise_1d(const Signal1D& u0, const FilterParams& params);
Restored<Field2D> denoise_2d(const Field2D& u0, const FilterParams& params,
                             const std::optional<Field2D>& warm_start = std::nullopt);

/// Step size the denoisers use for these inputs.
double resolve_dt_1d(double h, const FilterParams& params);
double resolve_dt_2d(double h, const FilterParams& params);

}  // namespace lapden
