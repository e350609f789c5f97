#include "lapden/tv_baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evolve.hpp"

namespace lapden {
namespace {

void check_same(const Signal1D& u, const Signal1D& u0) {
    if (u.size() != u0.size()) throw DimensionMismatch("signals differ in length");
    if (u.h != u0.h) throw DimensionMismatch("signals differ in grid spacing");
    if (u.size() < 3) throw InvalidSize("signals need at least 3 samples");
}

void check_same(const Field2D& u, const Field2D& u0) {
    if (!u.same_shape(u0)) throw DimensionMismatch("fields differ in shape");
    if (u.h != u0.h) throw DimensionMismatch("fields differ in grid spacing");
    if (u.rows < 3 || u.cols < 3) throw InvalidSize("fields need at least 3x3 samples");
}

// g = -div(grad u / |grad u|_beta) in 1D; returns h * sum |u_x|_beta over interior faces.
struct Curvature1D {
    double h, beta;
    std::vector<double> face;  // face[k] is the flux between nodes k-1 and k, k = 0..n
    double max_flux = 0.0;

    double operator()(std::span<const double> u, std::span<double> g) {
        const std::size_t n = u.size();
        face.resize(n + 1);
        auto value = [&](std::ptrdiff_t k) {
            if (k < 0) return u[1];
            if (k >= static_cast<std::ptrdiff_t>(n)) return u[n - 2];
            return u[static_cast<std::size_t>(k)];
        };
        double energy = 0.0;
        max_flux = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            const auto kk = static_cast<std::ptrdiff_t>(k);
            const double d = (value(kk) - value(kk - 1)) / h;
            const double mag = std::sqrt(d * d + beta);
            face[k] = d / mag;
            max_flux = std::max(max_flux, std::abs(face[k]));
            if (k > 0 && k < n) energy += mag;
        }
        for (std::size_t k = 0; k < n; ++k) g[k] = -(face[k + 1] - face[k]) / h;
        return h * energy;
    }
};

// g = -div(grad u / |grad u|_beta) with face-centred fluxes on a mirror-padded grid.
struct Curvature2D {
    std::size_t rows, cols;
    double h, beta;
    std::vector<double> pad, fx, fy;
    double max_flux = 0.0;

    double operator()(std::span<const double> u, std::span<double> g) {
        const std::size_t pc = cols + 2;
        pad.resize((rows + 2) * pc);
        auto src = [&](std::ptrdiff_t i, std::ptrdiff_t j) {
            const auto r = static_cast<std::ptrdiff_t>(rows), c = static_cast<std::ptrdiff_t>(cols);
            if (i < 0) i = 1;
            if (i >= r) i = r - 2;
            if (j < 0) j = 1;
            if (j >= c) j = c - 2;
            return u[static_cast<std::size_t>(i) * cols + static_cast<std::size_t>(j)];
        };
        for (std::size_t i = 0; i < rows + 2; ++i) {
            for (std::size_t j = 0; j < pc; ++j) {
                pad[i * pc + j] = src(static_cast<std::ptrdiff_t>(i) - 1, static_cast<std::ptrdiff_t>(j) - 1);
            }
        }
        // P(i, j) with i in [-1, rows], j in [-1, cols].
        auto P = [&](std::size_t ip, std::size_t jp) { return pad[ip * pc + jp]; };
        const double inv_h = 1.0 / h;

        // fx[i * (cols+1) + j]: flux across the face between nodes (i, j-1) and (i, j).
        fx.resize(rows * (cols + 1));
        fy.resize((rows + 1) * cols);
        double energy = 0.0;
        max_flux = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            const std::size_t ip = i + 1;
            for (std::size_t j = 0; j <= cols; ++j) {
                const std::size_t jl = j, jr = j + 1;  // padded columns of the two nodes
                const double d = (P(ip, jr) - P(ip, jl)) * inv_h;
                const double t = (P(ip + 1, jl) - P(ip - 1, jl) + P(ip + 1, jr) - P(ip - 1, jr)) * (0.25 * inv_h);
                const double mag = std::sqrt(d * d + t * t + beta);
                const double q = d / mag;
                fx[i * (cols + 1) + j] = q;
                max_flux = std::max(max_flux, std::abs(q));
                if (j > 0 && j < cols) energy += 0.5 * mag;
            }
        }
        for (std::size_t i = 0; i <= rows; ++i) {
            const std::size_t iu = i, id = i + 1;
            for (std::size_t j = 0; j < cols; ++j) {
                const std::size_t jp = j + 1;
                const double d = (P(id, jp) - P(iu, jp)) * inv_h;
                const double t = (P(iu, jp + 1) - P(iu, jp - 1) + P(id, jp + 1) - P(id, jp - 1)) * (0.25 * inv_h);
                const double mag = std::sqrt(d * d + t * t + beta);
                const double q = d / mag;
                fy[i * cols + j] = q;
                max_flux = std::max(max_flux, std::abs(q));
                if (i > 0 && i < rows) energy += 0.5 * mag;
            }
        }
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                const double div = (fx[i * (cols + 1) + j + 1] - fx[i * (cols + 1) + j]) +
                                   (fy[(i + 1) * cols + j] - fy[i * cols + j]);
                g[i * cols + j] = -div * inv_h;
            }
        }
        return h * h * energy;
    }
};

detail::EvolveConfig make_config(const TvParams& params, double dt, double quad_weight) {
    detail::EvolveConfig cfg;
    cfg.dt = dt;
    cfg.tol = params.tol;
    cfg.max_iters = params.max_iters;
    cfg.lambda = params.lambda;
    cfg.quad_weight = quad_weight;
    return cfg;
}

double resolve_dt(double h, const TvParams& params) {
    if (params.dt) return *params.dt;
    return params.safety * std::min(tv_step_bound(h, params.beta), 1.0 / std::max(params.lambda, 1e-300));
}

template <class Data>
double stationary_ratio(std::span<const double> g, const Data& u, const Data& u0, double lambda) {
    double res2 = 0.0, fid2 = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double f = lambda * (u.values[k] - u0.values[k]);
        const double r = g[k] + f;
        res2 += r * r;
        fid2 += f * f;
    }
    if (res2 == 0.0) return 0.0;
    if (fid2 == 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(res2 / fid2);
}

auto euler(double dt) {
    return [dt](std::vector<double>& x, std::span<const double>, std::span<const double> r, double) {
        detail::explicit_update(x, r, dt);
    };
}

}  // namespace

void TvParams::validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidParameter("beta must be positive");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidParameter("lambda must be non-negative");
    if (dt && (!(*dt > 0.0) || !std::isfinite(*dt))) throw InvalidParameter("dt must be positive");
    if (!(tol > 0.0)) throw InvalidParameter("tol must be positive");
    if (max_iters == 0) throw InvalidParameter("max_iters must be at least 1");
    if (!(safety > 0.0 && safety <= 1.0)) throw InvalidParameter("safety factor must lie in (0, 1]");
}

double tv_step_bound(double h, double beta) { return h * h * std::sqrt(beta) / 4.0; }

std::vector<double> tv_rhs_1d(const Signal1D& u, const Signal1D& u0, const TvParams& params) {
    check_same(u, u0);
    Curvature1D op{u.h, params.beta, {}};
    std::vector<double> g(u.size());
    op(u.values, g);
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = -g[k] - params.lambda * (u.values[k] - u0.values[k]);
    return g;
}

Field2D tv_rhs_2d(const Field2D& u, const Field2D& u0, const TvParams& params) {
    check_same(u, u0);
    Curvature2D op{u.rows, u.cols, u.h, params.beta, {}, {}, {}};
    Field2D out(u.rows, u.cols, u.h);
    op(u.values, out.values);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out.values[k] = -out.values[k] - params.lambda * (u.values[k] - u0.values[k]);
    }
    return out;
}

double tv_max_face_flux(const Signal1D& u, double beta) {
    check_same(u, u);
    Curvature1D op{u.h, beta, {}};
    std::vector<double> g(u.size());
    op(u.values, g);
    return op.max_flux;
}

double tv_max_face_flux(const Field2D& u, double beta) {
    check_same(u, u);
    Curvature2D op{u.rows, u.cols, u.h, beta, {}, {}, {}};
    std::vector<double> g(u.size());
    op(u.values, g);
    return op.max_flux;
}

double tv_equilibrium_residual(const Signal1D& u, const Signal1D& u0, const TvParams& params) {
    check_same(u, u0);
    Curvature1D op{u.h, params.beta, {}};
    std::vector<double> g(u.size());
    op(u.values, g);
    return stationary_ratio(g, u, u0, params.lambda);
}

double tv_equilibrium_residual(const Field2D& u, const Field2D& u0, const TvParams& params) {
    check_same(u, u0);
    Curvature2D op{u.rows, u.cols, u.h, params.beta, {}, {}, {}};
    std::vector<double> g(u.size());
    op(u.values, g);
    return stationary_ratio(g, u, u0, params.lambda);
}

Restored<Signal1D> tv_denoise_1d(const Signal1D& u0, const TvParams& params) {
    params.validate();
    check_same(u0, u0);
    const double dt = resolve_dt(u0.h, params);
    Curvature1D op{u0.h, params.beta, {}};
    std::vector<double> u = u0.values;
    auto trace = detail::evolve(u0.values, u, make_config(params, dt, u0.h), op, euler(dt));
    return {u0.with_values(std::move(u)), std::move(trace)};
}

Restored<Field2D> tv_denoise_2d(const Field2D& u0, const TvParams& params) {
    params.validate();
    check_same(u0, u0);
    const double dt = resolve_dt(u0.h, params);
    Curvature2D op{u0.rows, u0.cols, u0.h, params.beta, {}, {}, {}};
    std::vector<double> u = u0.values;
    auto trace = detail::evolve(u0.values, u, make_config(params, dt, u0.h * u0.h), op, euler(dt));
    return {u0.with_values(std::move(u)), std::move(trace)};
}

}  // namespace lapden
