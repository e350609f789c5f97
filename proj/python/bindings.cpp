#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "lapden/data_io.hpp"
#include "lapden/experiments.hpp"
#include "lapden/grid_ops.hpp"
#include "lapden/nl_filter.hpp"
#include "lapden/signals.hpp"
#include "lapden/tv_baseline.hpp"

namespace py = pybind11;
using namespace lapden;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array& a) { return {a.data(), a.data() + a.size()}; }

Array to_array(const std::vector<double>& v) {
    Array out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

Array to_array(const Field2D& f) {
    Array out({static_cast<py::ssize_t>(f.rows), static_cast<py::ssize_t>(f.cols)});
    std::copy(f.values.begin(), f.values.end(), out.mutable_data());
    return out;
}

Signal1D to_signal(const Array& a, double h) {
    if (a.ndim() != 1) throw InvalidSize("expected a 1-D array");
    return Signal1D(to_vector(a), h);
}

Field2D to_field(const Array& a, double h) {
    if (a.ndim() != 2) throw InvalidSize("expected a 2-D array");
    return Field2D(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)), to_vector(a), h);
}

Array dense(const BandedMatrix& m) {
    const auto n = static_cast<py::ssize_t>(m.n());
    Array out({n, n});
    auto w = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < n; ++i)
        for (py::ssize_t j = 0; j < n; ++j) w(i, j) = m.entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return out;
}

py::dict trace_dict(const RunTrace& t) {
    py::dict d;
    d["iters_run"] = t.iters_run;
    d["converged"] = t.converged;
    d["dt_used"] = t.dt_used;
    d["wall_seconds"] = t.wall_seconds;
    d["residual_history"] = to_array(t.residual_history);
    d["fidelity_history"] = to_array(t.fidelity_history);
    d["lambda_history"] = to_array(t.lambda_history);
    d["energy_history"] = to_array(t.energy_history);
    return d;
}

py::dict metrics_dict(const Metrics& m) {
    py::dict d;
    d["rel_err"] = m.rel_err;
    d["rmse"] = m.rmse;
    d["psnr_db"] = m.psnr_db ? py::cast(*m.psnr_db) : py::none();
    d["plateau_fraction"] = m.plateau_fraction;
    d["curvature_mass"] = m.curvature_mass;
    return d;
}

Solver parse_solver(const std::string& s) {
    if (s == "explicit") return Solver::ExplicitEuler;
    if (s == "semi-implicit") return Solver::SemiImplicit;
    throw InvalidParameter("solver must be 'explicit' or 'semi-implicit'");
}

FilterParams filter_params(double lambda, double epsilon, double p, std::optional<double> dt, std::size_t max_iters,
                           double tol, std::optional<double> target_delta, const std::string& solver) {
    FilterParams fp;
    fp.lambda = lambda;
    fp.epsilon = epsilon;
    fp.p = p;
    fp.dt = dt;
    fp.max_iters = max_iters;
    fp.tol = tol;
    fp.target_delta = target_delta;
    fp.solver = parse_solver(solver);
    return fp;
}

TvParams tv_params(double lambda, double beta, std::optional<double> dt, std::size_t max_iters, double tol) {
    TvParams tp;
    tp.lambda = lambda;
    tp.beta = beta;
    tp.dt = dt;
    tp.max_iters = max_iters;
    tp.tol = tol;
    return tp;
}

}  // namespace

PYBIND11_MODULE(_lapden, m) {
    m.doc() = "Fourth-order nonlinear diffusion denoising with a TV baseline";

    // Later registrations are tried first, so the derived type goes last.
    auto& base_error = py::register_exception<Error>(m, "LapdenError", PyExc_ValueError);
    py::register_exception<DivergenceError>(m, "DivergenceError", base_error.ptr());

    m.def("d0_matrix", [](std::size_t n, double h) { return dense(build_d0(n, h)); }, py::arg("n"), py::arg("h"),
          "Dense copy of the Neumann second-difference matrix.");
    m.def("d1_matrix", [](std::size_t n, double h) { return dense(build_d1(n, h)); }, py::arg("n"), py::arg("h"),
          "Dense copy of the zero-ghost second-difference matrix.");
    m.def(
        "laplacian_2d",
        [](const Array& u, double h, const std::string& kind) {
            Stencil2DKind k;
            if (kind == "neumann") {
                k = Stencil2DKind::NeumannMirror;
            } else if (kind == "dirichlet") {
                k = Stencil2DKind::DirichletZero;
            } else {
                throw InvalidParameter("kind must be 'neumann' or 'dirichlet'");
            }
            return to_array(laplacian_2d(to_field(u, h), k));
        },
        py::arg("u"), py::arg("h") = 1.0, py::arg("kind") = "neumann");
    m.def("stable_step_bound", &stable_step_bound, py::arg("h"), py::arg("epsilon"), py::arg("p"),
          py::arg("lambda_"), py::arg("dims") = 1);

    m.def(
        "denoise_1d",
        [](const Array& u0, double h, double lambda, double epsilon, double p, std::optional<double> dt,
           std::size_t max_iters, double tol, std::optional<double> target_delta, const std::string& solver) {
            const auto params = filter_params(lambda, epsilon, p, dt, max_iters, tol, target_delta, solver);
            Restored<Signal1D> r;
            {
                py::gil_scoped_release release;
                r = denoise_1d(to_signal(u0, h), params);
            }
            return py::make_tuple(to_array(r.data.values), trace_dict(r.trace));
        },
        py::arg("u0"), py::arg("h") = 1.0, py::arg("lambda_") = 1.0, py::arg("epsilon") = 1e-2, py::arg("p") = 0.5,
        py::arg("dt") = py::none(), py::arg("max_iters") = 200000, py::arg("tol") = 1e-6,
        py::arg("target_delta") = py::none(), py::arg("solver") = "explicit",
        "Returns (restored, trace) for a 1-D signal.");
    m.def(
        "denoise_2d",
        [](const Array& u0, double h, double lambda, double epsilon, double p, std::optional<double> dt,
           std::size_t max_iters, double tol, std::optional<double> target_delta, std::optional<Array> warm_start) {
            const auto params = filter_params(lambda, epsilon, p, dt, max_iters, tol, target_delta, "explicit");
            const Field2D field = to_field(u0, h);
            std::optional<Field2D> warm;
            if (warm_start) warm = to_field(*warm_start, h);
            Restored<Field2D> r;
            {
                py::gil_scoped_release release;
                r = denoise_2d(field, params, warm);
            }
            return py::make_tuple(to_array(r.data), trace_dict(r.trace));
        },
        py::arg("u0"), py::arg("h") = 1.0, py::arg("lambda_") = 1.0, py::arg("epsilon") = 1e-2, py::arg("p") = 0.5,
        py::arg("dt") = py::none(), py::arg("max_iters") = 200000, py::arg("tol") = 1e-6,
        py::arg("target_delta") = py::none(), py::arg("warm_start") = py::none(),
        "Returns (restored, trace) for a 2-D field.");
    m.def(
        "tv_denoise_1d",
        [](const Array& u0, double h, double lambda, double beta, std::optional<double> dt, std::size_t max_iters,
           double tol) {
            const auto params = tv_params(lambda, beta, dt, max_iters, tol);
            Restored<Signal1D> r;
            {
                py::gil_scoped_release release;
                r = tv_denoise_1d(to_signal(u0, h), params);
            }
            return py::make_tuple(to_array(r.data.values), trace_dict(r.trace));
        },
        py::arg("u0"), py::arg("h") = 1.0, py::arg("lambda_") = 1.0, py::arg("beta") = 1e-6, py::arg("dt") = py::none(),
        py::arg("max_iters") = 200000, py::arg("tol") = 1e-6);
    m.def(
        "tv_denoise_2d",
        [](const Array& u0, double h, double lambda, double beta, std::optional<double> dt, std::size_t max_iters,
           double tol) {
            const auto params = tv_params(lambda, beta, dt, max_iters, tol);
            const Field2D field = to_field(u0, h);
            Restored<Field2D> r;
            {
                py::gil_scoped_release release;
                r = tv_denoise_2d(field, params);
            }
            return py::make_tuple(to_array(r.data), trace_dict(r.trace));
        },
        py::arg("u0"), py::arg("h") = 1.0, py::arg("lambda_") = 1.0, py::arg("beta") = 1e-6, py::arg("dt") = py::none(),
        py::arg("max_iters") = 200000, py::arg("tol") = 1e-6);

    m.def("sample_f_sine", [](std::size_t n) { return to_array(sample_f_sine(n).values); }, py::arg("n"));
    m.def("sample_g_jumps", [](std::size_t n) { return to_array(sample_g_jumps(n).values); }, py::arg("n"));
    m.def("sample_f2d", [](std::size_t n) { return to_array(sample_f2d(n)); }, py::arg("n"));
    m.def("gaussian_noise", [](std::size_t len, std::uint64_t seed) { return to_array(gaussian_noise(len, {seed, 0.0})); },
          py::arg("length"), py::arg("seed"));
    m.def(
        "add_noise",
        [](const Array& clean, std::uint64_t seed, double delta_rel) -> Array {
            const NoiseSpec spec{seed, delta_rel};
            if (clean.ndim() == 2) return to_array(add_noise(to_field(clean, 1.0), spec));
            return to_array(add_noise(to_signal(clean, 1.0), spec).values);
        },
        py::arg("clean"), py::arg("seed"), py::arg("delta_rel"));
    m.def(
        "default_tau",
        [](const Array& clean) {
            if (clean.ndim() == 2) return default_tau(to_field(clean, 1.0));
            return default_tau(to_signal(clean, 1.0));
        },
        py::arg("clean"));
    m.def(
        "compute_metrics",
        [](const Array& u, const Array& ref, std::optional<double> tau) {
            if (u.ndim() == 2) {
                const auto r = to_field(ref, 1.0);
                return metrics_dict(compute_metrics(to_field(u, 1.0), r, tau.value_or(default_tau(r))));
            }
            const auto r = to_signal(ref, 1.0);
            return metrics_dict(compute_metrics(to_signal(u, 1.0), r, tau.value_or(default_tau(r))));
        },
        py::arg("u"), py::arg("ref"), py::arg("tau") = py::none());

    m.def(
        "read_csv",
        [](const std::filesystem::path& path) {
            const auto s = read_csv_1d(path);
            return py::make_tuple(to_array(s.values), s.h, s.a);
        },
        py::arg("path"), "Returns (values, h, a).");
    m.def(
        "write_csv",
        [](const std::filesystem::path& path, const Array& values, double h, double a) {
            write_csv_1d(path, Signal1D(to_vector(values), h, a));
        },
        py::arg("path"), py::arg("values"), py::arg("h") = 1.0, py::arg("a") = 0.0);
    m.def("read_pgm", [](const std::filesystem::path& path) { return to_array(read_pgm(path)); }, py::arg("path"));
    m.def(
        "write_pgm", [](const std::filesystem::path& path, const Array& f) { write_pgm(path, to_field(f, 1.0)); },
        py::arg("path"), py::arg("field"));

    m.def(
        "run_experiment",
        [](const std::string& name, std::uint64_t seed, std::optional<std::size_t> n, const std::string& outdir) {
            auto settings = experiment_defaults(name);
            settings.seed = seed;
            if (n) settings.n = *n;
            ExperimentResult r;
            {
                py::gil_scoped_release release;
                r = run_experiment(settings, outdir);
            }
            py::dict out;
            out["noisy"] = metrics_dict(r.noisy_metrics);
            out["tau"] = r.tau;
            for (const auto& mo : r.methods) {
                py::dict d = metrics_dict(mo.restored);
                d["iters"] = mo.trace.iters_run;
                d["converged"] = mo.trace.converged;
                d["jumps"] = mo.jumps;
                out[py::str(mo.method)] = d;
            }
            std::vector<std::string> paths;
            for (const auto& p : r.artifacts) paths.push_back(p.string());
            out["artifacts"] = paths;
            return out;
        },
        py::arg("name"), py::arg("seed") = 1, py::arg("n") = py::none(), py::arg("outdir") = "",
        "Runs a figure experiment and returns its metrics; writes artifacts when outdir is given.");
}
