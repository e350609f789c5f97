#include "lapden/nl_filter.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "evolve.hpp"
#include "lapden/banded.hpp"
#include "lapden/stencil2d.hpp"

namespace lapden {
namespace {

void check_same(const Signal1D& u, const Signal1D& u0) {
    if (u.size() != u0.size()) throw DimensionMismatch("signals differ in length");
    if (u.h != u0.h) throw DimensionMismatch("signals differ in grid spacing");
    if (u.size() < 3) throw InvalidSize("signals need at least 3 samples");
    if (!(u.h > 0.0)) throw InvalidParameter("grid spacing must be positive");
}

void check_same(const Field2D& u, const Field2D& u0) {
    if (!u.same_shape(u0)) throw DimensionMismatch("fields differ in shape");
    if (u.h != u0.h) throw DimensionMismatch("fields differ in grid spacing");
    if (u.rows < 3 || u.cols < 3) throw InvalidSize("fields need at least 3x3 samples");
    if (!(u.h > 0.0)) throw InvalidParameter("grid spacing must be positive");
}

// Antiderivative of flux in w, used for the energy diagnostic.
double flux_potential(double w, double epsilon, double p) {
    const double s = w * w + epsilon;
    if (p == 1.0) return 0.5 * std::log(s);
    return std::pow(s, 1.0 - p) / (2.0 * (1.0 - p));
}

// Evaluates D1 flux(D0 u) into g and returns h * sum potential(D0 u).
struct Diffusion1D {
    BandedMatrix d0, d1;
    double epsilon, p, h;
    std::vector<double> d0u;

    Diffusion1D(std::size_t n, double spacing, double eps, double exponent)
        : d0(build_d0(n, spacing)), d1(build_d1(n, spacing)), epsilon(eps), p(exponent), h(spacing), d0u(n) {}

    double operator()(std::span<const double> u, std::span<double> g) {
        apply_banded_into(d0, u, d0u);
        double energy = 0.0;
        for (double& w : d0u) {
            energy += flux_potential(w, epsilon, p);
            w = flux(w, epsilon, p);
        }
        apply_banded_into(d1, d0u, g);
        return h * energy;
    }
};

// Evaluates Lap_D flux(Lap_N u) into g and returns h^2 * sum potential(Lap_N u).
struct Diffusion2D {
    std::size_t rows, cols;
    double epsilon, p, h;
    std::vector<double> inner;

    double operator()(std::span<const double> u, std::span<double> g) {
        laplacian_2d_into(u, rows, cols, h, Stencil2DKind::NeumannMirror, inner);
        double energy = 0.0;
        for (double& w : inner) {
            energy += flux_potential(w, epsilon, p);
            w = flux(w, epsilon, p);
        }
        laplacian_2d_into(inner, rows, cols, h, Stencil2DKind::DirichletZero, g);
        return h * h * energy;
    }
};

// (I + dt c D1 D0 + dt lambda I) u_{n+1} = u_n - dt (D1 F(u_n) - c D1 D0 u_n) + dt lambda u0.
class SemiImplicitStepper {
public:
    SemiImplicitStepper(const Diffusion1D& ops, std::span<const double> u0, double dt)
        : c_(std::pow(ops.epsilon, -ops.p)), dt_(dt), u0_(u0), stiff_(multiply(ops.d1, ops.d0)),
          rhs_(u0.size()), stiff_u_(u0.size()) {}

    void operator()(std::vector<double>& u, std::span<const double> g, std::span<const double>, double lambda) {
        if (!lu_ || lambda != lambda_) {
            lambda_ = lambda;
            const auto n = u.size();
            const BandedMatrix shifted = combine(1.0 + dt_ * lambda, BandedMatrix::identity(n), dt_ * c_, stiff_);
            lu_.emplace(shifted);
        }
        apply_banded_into(stiff_, u, stiff_u_);
        for (std::size_t k = 0; k < u.size(); ++k) {
            rhs_[k] = u[k] - dt_ * (g[k] - c_ * stiff_u_[k]) + dt_ * lambda * u0_[k];
        }
        u = lu_->solve(rhs_);
    }

private:
    double c_, dt_;
    std::span<const double> u0_;
    BandedMatrix stiff_;
    std::vector<double> rhs_, stiff_u_;
    std::optional<BandedLU> lu_;
    double lambda_ = std::numeric_limits<double>::quiet_NaN();
};

detail::EvolveConfig make_config(const FilterParams& params, double dt, double quad_weight) {
    detail::EvolveConfig cfg;
    cfg.dt = dt;
    cfg.tol = params.tol;
    cfg.max_iters = params.max_iters;
    cfg.lambda = params.lambda;
    cfg.target_delta = params.target_delta;
    cfg.quad_weight = quad_weight;
    // Keeps the explicit fidelity update contractive when lambda is re-estimated.
    if (params.solver == Solver::ExplicitEuler) cfg.lambda_cap = 1.0 / dt;
    return cfg;
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

}  // namespace

void FilterParams::validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidParameter("epsilon must be positive");
    if (!(p >= 0.5) || !std::isfinite(p)) throw InvalidParameter("p must be at least 0.5");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidParameter("lambda must be non-negative");
    if (dt && (!(*dt > 0.0) || !std::isfinite(*dt))) throw InvalidParameter("dt must be positive");
    if (!(tol > 0.0)) throw InvalidParameter("tol must be positive");
    if (max_iters == 0) throw InvalidParameter("max_iters must be at least 1");
    if (target_delta && !(*target_delta > 0.0)) throw InvalidParameter("target delta must be positive");
    if (!(safety > 0.0 && safety <= 1.0)) throw InvalidParameter("safety factor must lie in (0, 1]");
}

double flux(double w, double epsilon, double p) { return w / std::pow(w * w + epsilon, p); }

double flux_bound(double epsilon, double p) {
    if (p == 0.5) return 1.0;
    const double w = std::sqrt(epsilon / (2.0 * p - 1.0));
    return flux(w, epsilon, p);
}

double stable_step_bound(double h, double epsilon, double p, double lambda, int dims) {
    const double rho = dims == 1 ? 16.0 : 64.0;
    const double h4 = h * h * h * h;
    return 2.0 / (rho * std::pow(epsilon, -p) / h4 + lambda);
}

std::vector<double> rhs_1d(const Signal1D& u, const Signal1D& u0, const FilterParams& params) {
    check_same(u, u0);
    Diffusion1D ops(u.size(), u.h, params.epsilon, params.p);
    std::vector<double> g(u.size());
    ops(u.values, g);
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = -g[k] - params.lambda * (u.values[k] - u0.values[k]);
    return g;
}

Field2D rhs_2d(const Field2D& u, const Field2D& u0, const FilterParams& params) {
    check_same(u, u0);
    Diffusion2D ops{u.rows, u.cols, params.epsilon, params.p, u.h, std::vector<double>(u.size())};
    Field2D out(u.rows, u.cols, u.h);
    ops(u.values, out.values);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out.values[k] = -out.values[k] - params.lambda * (u.values[k] - u0.values[k]);
    }
    return out;
}

namespace {

template <class Data, class Ops>
double adaptive_lambda_impl(const Data& u, const Data& u0, const FilterParams& params, Ops& ops, double weight) {
    if (!params.target_delta || !(*params.target_delta > 0.0)) {
        throw InvalidParameter("adaptive lambda needs a positive target delta");
    }
    std::vector<double> g(u.size());
    ops(u.values, g);
    double num = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) num += (u.values[k] - u0.values[k]) * g[k];
    const double delta = *params.target_delta;
    return std::max(0.0, -weight * num / (delta * delta));
}

}  // namespace

double adaptive_lambda(const Signal1D& u, const Signal1D& u0, const FilterParams& params) {
    check_same(u, u0);
    Diffusion1D ops(u.size(), u.h, params.epsilon, params.p);
    return adaptive_lambda_impl(u, u0, params, ops, u.h);
}

double adaptive_lambda(const Field2D& u, const Field2D& u0, const FilterParams& params) {
    check_same(u, u0);
    Diffusion2D ops{u.rows, u.cols, params.epsilon, params.p, u.h, std::vector<double>(u.size())};
    return adaptive_lambda_impl(u, u0, params, ops, u.h * u.h);
}

double equilibrium_residual(const Signal1D& u, const Signal1D& u0, double epsilon, double p, double lambda) {
    check_same(u, u0);
    Diffusion1D ops(u.size(), u.h, epsilon, p);
    std::vector<double> g(u.size());
    ops(u.values, g);
    return stationary_ratio(g, u, u0, lambda);
}

double equilibrium_residual(const Field2D& u, const Field2D& u0, double epsilon, double p, double lambda) {
    check_same(u, u0);
    Diffusion2D ops{u.rows, u.cols, epsilon, p, u.h, std::vector<double>(u.size())};
    std::vector<double> g(u.size());
    ops(u.values, g);
    return stationary_ratio(g, u, u0, lambda);
}

double resolve_dt_1d(double h, const FilterParams& params) {
    if (params.dt) return *params.dt;
    const double explicit_dt = params.safety * stable_step_bound(h, params.epsilon, params.p, params.lambda, 1);
    if (params.solver == Solver::ExplicitEuler) return explicit_dt;
    // The stiff linear part is implicit; the remaining explicit part tolerates much longer steps.
    return 100.0 * explicit_dt;
}

double resolve_dt_2d(double h, const FilterParams& params) {
    if (params.dt) return *params.dt;
    return params.safety * stable_step_bound(h, params.epsilon, params.p, params.lambda, 2);
}

Restored<Signal1D> denoise_1d(const Signal1D& u0, const FilterParams& params) {
    params.validate();
    check_same(u0, u0);
    const double dt = resolve_dt_1d(u0.h, params);
    Diffusion1D ops(u0.size(), u0.h, params.epsilon, params.p);
    const auto cfg = make_config(params, dt, u0.h);
    std::vector<double> u = u0.values;

    RunTrace trace;
    if (params.solver == Solver::ExplicitEuler) {
        trace = detail::evolve(u0.values, u, cfg, ops,
                               [dt](std::vector<double>& x, std::span<const double>, std::span<const double> r,
                                    double) { detail::explicit_update(x, r, dt); });
    } else {
        SemiImplicitStepper stepper(ops, u0.values, dt);
        trace = detail::evolve(u0.values, u, cfg, ops, stepper);
    }
    return {u0.with_values(std::move(u)), std::move(trace)};
}

Restored<Field2D> denoise_2d(const Field2D& u0, const FilterParams& params, const std::optional<Field2D>& warm_start) {
    params.validate();
    check_same(u0, u0);
    if (params.solver != Solver::ExplicitEuler) {
        throw InvalidParameter("2D denoising supports the explicit Euler solver only");
    }
    if (warm_start) check_same(*warm_start, u0);
    const double dt = resolve_dt_2d(u0.h, params);
    Diffusion2D ops{u0.rows, u0.cols, params.epsilon, params.p, u0.h, std::vector<double>(u0.size())};
    const auto cfg = make_config(params, dt, u0.h * u0.h);
    std::vector<double> u = warm_start ? warm_start->values : u0.values;
    auto trace = detail::evolve(u0.values, u, cfg, ops,
                                [dt](std::vector<double>& x, std::span<const double>, std::span<const double> r,
                                     double) { detail::explicit_update(x, r, dt); });
    return {u0.with_values(std::move(u)), std::move(trace)};
}

}  // namespace lapden
