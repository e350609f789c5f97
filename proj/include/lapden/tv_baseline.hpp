#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lapden/grid.hpp"
#include "lapden/trace.hpp"

namespace lapden {

/// Parameters of the regularized ROF evolution u_t = div(grad u / |grad u|_beta) - lambda (u - u0),
/// with |x|_beta = sqrt(|x|^2 + beta).
struct TvParams {
    double lambda = 1.0;
    double beta = 1e-6;
    std::optional<double> dt;  // nullopt: safety * h^2 sqrt(beta) / 4
    std::size_t max_iters = 200000;
    double tol = 1e-6;
    double safety = 0.9;

    void validate() const;
};

/// Explicit Euler bound h^2 sqrt(beta) / 4 for the beta-regularized curvature operator.
double tv_step_bound(double h, double beta);

/// Face-centred divergence form with mirror ghosts, minus lambda (u - u0).
std::vector<double> tv_rhs_1d(const Signal1D& u, const Signal1D& u0, const TvParams& params);
Field2D tv_rhs_2d(const Field2D& u, const Field2D& u0, const TvParams& params);

/// Largest |face flux| over all faces; strictly below 1 for beta > 0.
double tv_max_face_flux(const Signal1D& u, double beta);
double tv_max_face_flux(const Field2D& u, double beta);

/// Relative stationary residual ||div(...) - lambda (u - u0)|| / ||lambda (u - u0)||.
double tv_equilibrium_residual(const Signal1D& u, const Signal1D& u0, const TvParams& params);
double tv_equilibrium_residual(const Field2D& u, const Field2D& u0, const TvParams& params);

/// Explicit Euler from u0 with the same stopping rule as the nonlinear filter.
Restored<Signal1D> tv_denoise_1d(const Signal1D& u0, const TvParams& params);
Restored<Field2D> tv_denoise_2d(const Field2D& u0, const TvParams& params);

}  // namespace lapden
