#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lapden/grid.hpp"

namespace lapden {

/// Relative Gaussian noise: the injected perturbation has 2-norm delta_rel * ||clean||.
struct NoiseSpec {
    std::uint64_t seed = 1;
    double delta_rel = 0.0;
};

/// Reconstruction quality and shape statistics against a reference.
struct Metrics {
    double rel_err = 0.0;
    double rmse = 0.0;
    std::optional<double> psnr_db;  // absent when the reference has zero range or rmse is 0
    double plateau_fraction = 0.0;
    double curvature_mass = 0.0;
};

/// sin(2 pi x) at x_i = i/n, i = 0..n. Spacing 1/n on [0, 1].
Signal1D sample_f_sine(std::size_t n);

/// sin(2 pi x) + sign(x-0.2) - sign(x-0.4) + sign(x-0.6) - sign(x-0.8) at x_i = i/n, sign(0) = 0.
Signal1D sample_g_jumps(std::size_t n);

/// x sin(pi y) on an n x n grid over [-1, 1]^2, x_i = -1 + 2i/(n-1); row index i runs along x.
Field2D sample_f2d(std::size_t n);

/// Standard-normal draws: SplitMix64 hashes of (seed, counter) fed through Box-Muller.
/// Depends only on (seed, len) and is stable across platforms.
std::vector<double> gaussian_noise(std::size_t len, const NoiseSpec& spec);

/// clean + delta_rel * (e / ||e||) * ||clean|| with e = gaussian_noise(size, spec).
Signal1D add_noise(const Signal1D& clean, const NoiseSpec& spec);
Field2D add_noise(const Field2D& clean, const NoiseSpec& spec);

/// 10% of the mean absolute first difference of `clean` (both axes in 2D).
double default_tau(const Signal1D& clean);
double default_tau(const Field2D& clean);

/// Fraction of first differences with magnitude below tau. In 2D both axes are pooled.
double plateau_fraction(const Signal1D& u, double tau);
double plateau_fraction(const Field2D& u, double tau);

/// Number of first differences with magnitude strictly above `threshold`.
std::size_t count_jumps(const Signal1D& u, double threshold);

Metrics compute_metrics(const Signal1D& u, const Signal1D& ref, double tau);
Metrics compute_metrics(const Field2D& u, const Field2D& ref, double tau);

}  // namespace lapden
