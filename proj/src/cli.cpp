#include "lapden/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "lapden/data_io.hpp"
#include "lapden/error.hpp"
#include "lapden/experiments.hpp"
#include "lapden/nl_filter.hpp"
#include "lapden/report.hpp"
#include "lapden/signals.hpp"
#include "lapden/tv_baseline.hpp"

namespace lapden::cli {
namespace {

struct IoFlags {
    std::string input;
    std::string output;
    std::string clean;
    std::string report;
    std::string plot;
    std::string warm_start;
    std::optional<double> h;
};

struct NlFlags {
    std::optional<double> lambda;
    std::optional<double> delta;
    double epsilon = 1e-2;
    double p = 0.5;
    std::string dt = "auto";
    std::size_t iters = 200000;
    double tol = 1e-6;
    std::string solver = "explicit";
};

struct TvFlags {
    double lambda = 1.0;
    double beta = 1e-6;
    std::string dt = "auto";
    std::size_t iters = 200000;
    double tol = 1e-6;
};

struct ExperimentFlags {
    std::string name;
    std::uint64_t seed = 1;
    std::optional<std::size_t> n;
    std::string outdir = ".";
    std::string report;
};

std::optional<double> parse_dt(const std::string& text) {
    if (text == "auto") return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !(v > 0.0)) {
        throw InvalidParameter("--dt expects a positive number or 'auto', got '" + text + "'");
    }
    return v;
}

void add_io_flags(CLI::App* sub, IoFlags& io, const std::string& kind, bool allow_plot) {
    sub->add_option("--input", io.input, "Noisy input " + kind)->required();
    sub->add_option("--output", io.output, "Restored output " + kind)->required();
    sub->add_option("--clean", io.clean, "Clean reference " + kind + " (enables metrics)");
    sub->add_option("--report", io.report, "Append a JSON-lines run report to this file");
    sub->add_option("--spacing", io.h, "Grid spacing (overrides the input's)")->check(CLI::PositiveNumber);
    if (allow_plot) sub->add_option("--plot", io.plot, "SVG plot of noisy vs restored");
}

void add_nl_flags(CLI::App* sub, NlFlags& f, bool allow_solver) {
    auto* lambda = sub->add_option("--lambda", f.lambda, "Fixed fidelity weight (default 1)");
    auto* delta = sub->add_option("--delta", f.delta, "Known noise norm; selects lambda adaptively");
    lambda->excludes(delta);
    delta->excludes(lambda);
    sub->add_option("--epsilon", f.epsilon, "Flux regularizer")->capture_default_str();
    sub->add_option("--p", f.p, "Flux exponent (>= 0.5)")->capture_default_str();
    sub->add_option("--dt", f.dt, "Time step or 'auto'")->capture_default_str();
    sub->add_option("--iters", f.iters, "Maximum iterations")->capture_default_str();
    sub->add_option("--tol", f.tol, "Stationarity tolerance")->capture_default_str();
    if (allow_solver) {
        sub->add_option("--solver", f.solver, "explicit | semi-implicit")
            ->check(CLI::IsMember({"explicit", "semi-implicit"}))
            ->capture_default_str();
    }
}

void add_tv_flags(CLI::App* sub, TvFlags& f) {
    sub->add_option("--lambda", f.lambda, "Fidelity weight")->capture_default_str();
    sub->add_option("--beta", f.beta, "Gradient regularizer")->capture_default_str();
    sub->add_option("--dt", f.dt, "Time step or 'auto'")->capture_default_str();
    sub->add_option("--iters", f.iters, "Maximum iterations")->capture_default_str();
    sub->add_option("--tol", f.tol, "Stationarity tolerance")->capture_default_str();
}

FilterParams to_params(const NlFlags& f) {
    FilterParams p;
    if (f.lambda) p.lambda = *f.lambda;
    p.target_delta = f.delta;
    p.epsilon = f.epsilon;
    p.p = f.p;
    p.dt = parse_dt(f.dt);
    p.max_iters = f.iters;
    p.tol = f.tol;
    p.solver = f.solver == "semi-implicit" ? Solver::SemiImplicit : Solver::ExplicitEuler;
    p.validate();
    return p;
}

TvParams to_params(const TvFlags& f) {
    TvParams p;
    p.lambda = f.lambda;
    p.beta = f.beta;
    p.dt = parse_dt(f.dt);
    p.max_iters = f.iters;
    p.tol = f.tol;
    p.validate();
    return p;
}

nlohmann::ordered_json params_json(const FilterParams& p) {
    nlohmann::ordered_json j;
    if (p.target_delta) {
        j["delta"] = *p.target_delta;
    } else {
        j["lambda"] = p.lambda;
    }
    j["epsilon"] = p.epsilon;
    j["p"] = p.p;
    j["dt"] = p.dt ? nlohmann::ordered_json(*p.dt) : nlohmann::ordered_json("auto");
    j["iters"] = p.max_iters;
    j["tol"] = p.tol;
    j["solver"] = p.solver == Solver::SemiImplicit ? "semi-implicit" : "explicit";
    return j;
}

nlohmann::ordered_json params_json(const TvParams& p) {
    nlohmann::ordered_json j;
    j["lambda"] = p.lambda;
    j["beta"] = p.beta;
    j["dt"] = p.dt ? nlohmann::ordered_json(*p.dt) : nlohmann::ordered_json("auto");
    j["iters"] = p.max_iters;
    j["tol"] = p.tol;
    return j;
}

Signal1D load_signal(const std::string& path, const std::optional<double>& h) {
    Signal1D s = read_csv_1d(path);
    if (h) s = Signal1D(std::move(s.values), *h, s.a);
    return s;
}

Field2D load_field(const std::string& path, const std::optional<double>& h) {
    Field2D f = read_pgm(path);
    if (h) f.h = *h;
    return f;
}

void summarize(std::ostream& out, const std::string& command, const RunTrace& t, const std::optional<Metrics>& m) {
    out << command << ": iters=" << t.iters_run << " converged=" << (t.converged ? "true" : "false")
        << " dt=" << t.dt_used;
    if (m) out << " rel_err=" << m->rel_err;
    out << '\n';
}

template <class Data, class Runner>
int run_command(const std::string& command, const std::string& method, const IoFlags& io,
                const nlohmann::ordered_json& params, std::ostream& out, std::ostream& err,
                const std::function<Data(const std::string&)>& load,
                const std::function<void(const std::string&, const Data&)>& save, Runner&& runner) {
    const Data noisy = load(io.input);
    std::optional<Data> clean;
    if (!io.clean.empty()) {
        clean = load(io.clean);
        if (clean->values.size() != noisy.values.size()) {
            throw DimensionMismatch("--clean does not match the input's size");
        }
        clean->h = noisy.h;
    }
    Restored<Data> result = runner(noisy);
    save(io.output, result.data);

    RunReport report;
    report.command = command;
    report.method = method;
    report.params = params;
    report.params["input"] = io.input;
    report.trace_summary = TraceSummary::from(result.trace);
    report.artifact_paths.push_back(io.output);
    if (clean) {
        const double tau = default_tau(*clean);
        report.params["tau"] = tau;
        report.metrics_noisy = compute_metrics(noisy, *clean, tau);
        report.metrics_restored = compute_metrics(result.data, *clean, tau);
    }
    if constexpr (std::is_same_v<Data, Signal1D>) {
        if (!io.plot.empty()) {
            PlotSpec spec;
            spec.title = command + ": noisy and restored";
            spec.series.push_back({"noisy", "#d62728", noisy.values});
            spec.series.push_back({"restored", "#1f77b4", result.data.values});
            write_svg_plot(io.plot, spec);
            report.artifact_paths.push_back(io.plot);
        }
    }
    if (!io.report.empty()) append_report(io.report, report);
    if (!result.trace.converged) {
        err << command << ": warning: stopped at max iterations without meeting the tolerance\n";
    }
    summarize(out, command, result.trace, report.metrics_restored);
    return kExitOk;
}

int run_experiment_command(const ExperimentFlags& f, std::ostream& out) {
    ExperimentSettings settings = experiment_defaults(f.name);
    settings.seed = f.seed;
    if (f.n) settings.n = *f.n;
    const ExperimentResult result = run_experiment(settings, f.outdir);

    const std::filesystem::path report_path =
        f.report.empty() ? std::filesystem::path(f.outdir) / (f.name + "_report_" + std::to_string(f.seed) + ".jsonl")
                         : std::filesystem::path(f.report);
    if (f.report.empty()) std::filesystem::remove(report_path);
    for (const auto& r : result.reports) append_report(report_path, r);

    out << f.name << " (seed " << f.seed << ", n " << settings.n << "): noisy rel_err="
        << result.noisy_metrics.rel_err << '\n';
    for (const auto& m : result.methods) {
        out << "  " << m.method << ": rel_err=" << m.restored.rel_err
            << " plateau_fraction=" << m.restored.plateau_fraction
            << " curvature_mass=" << m.restored.curvature_mass << " iters=" << m.trace.iters_run
            << " converged=" << (m.trace.converged ? "true" : "false");
        if (settings.jump_signal) out << " jumps=" << m.jumps;
        out << '\n';
    }
    out << "  report: " << report_path.string() << '\n';
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fourth-order nonlinear diffusion denoising with a TV baseline", "lapden"};
    app.require_subcommand(1);

    IoFlags io;
    NlFlags nl;
    TvFlags tv;
    ExperimentFlags ex;

    auto* d1 = app.add_subcommand("denoise1d", "Nonlinear filter on a CSV signal");
    add_io_flags(d1, io, "CSV", true);
    add_nl_flags(d1, nl, true);

    auto* d2 = app.add_subcommand("denoise2d", "Nonlinear filter on a PGM image");
    add_io_flags(d2, io, "PGM", false);
    add_nl_flags(d2, nl, false);
    d2->add_option("--warm-start", io.warm_start, "Initial iterate (PGM); defaults to the input");

    auto* t1 = app.add_subcommand("tv1d", "TV (ROF) baseline on a CSV signal");
    add_io_flags(t1, io, "CSV", true);
    add_tv_flags(t1, tv);

    auto* t2 = app.add_subcommand("tv2d", "TV (ROF) baseline on a PGM image");
    add_io_flags(t2, io, "PGM", false);
    add_tv_flags(t2, tv);

    auto* exp = app.add_subcommand("experiment", "Reproduce a figure experiment (fig1..fig5)");
    exp->add_option("name", ex.name, "fig1 | fig2 | fig3 | fig4 | fig5")->required();
    exp->add_option("--seed", ex.seed, "Noise seed")->capture_default_str();
    exp->add_option("--n", ex.n, "Grid size (default: 100 for 1D, 101 for fig3, 64 for 2D)");
    exp->add_option("--outdir", ex.outdir, "Artifact directory")->capture_default_str();
    exp->add_option("--report", ex.report, "Report path (default <outdir>/<name>_report_<seed>.jsonl)");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const auto csv_load = [&](const std::string& p) { return load_signal(p, io.h); };
    const auto csv_save = [](const std::string& p, const Signal1D& s) { write_csv_1d(p, s); };
    const auto pgm_load = [&](const std::string& p) { return load_field(p, io.h); };
    const auto pgm_save = [](const std::string& p, const Field2D& f) { write_pgm(p, f); };

    try {
        if (*d1) {
            const FilterParams params = to_params(nl);
            return run_command<Signal1D>("denoise1d", "nl", io, params_json(params), out, err, csv_load, csv_save,
                                         [&](const Signal1D& u0) { return denoise_1d(u0, params); });
        }
        if (*d2) {
            const FilterParams params = to_params(nl);
            std::optional<Field2D> warm;
            if (!io.warm_start.empty()) warm = load_field(io.warm_start, io.h);
            auto json = params_json(params);
            if (warm) json["warm_start"] = io.warm_start;
            return run_command<Field2D>("denoise2d", "nl", io, json, out, err, pgm_load, pgm_save,
                                        [&](const Field2D& u0) {
                                            if (warm) warm->h = u0.h;
                                            return denoise_2d(u0, params, warm);
                                        });
        }
        if (*t1) {
            const TvParams params = to_params(tv);
            return run_command<Signal1D>("tv1d", "tv", io, params_json(params), out, err, csv_load, csv_save,
                                         [&](const Signal1D& u0) { return tv_denoise_1d(u0, params); });
        }
        if (*t2) {
            const TvParams params = to_params(tv);
            return run_command<Field2D>("tv2d", "tv", io, params_json(params), out, err, pgm_load, pgm_save,
                                        [&](const Field2D& u0) { return tv_denoise_2d(u0, params); });
        }
        if (*exp) return run_experiment_command(ex, out);
    } catch (const DivergenceError& e) {
        err << "error: diverged: " << e.what() << '\n';
        return kExitDiverged;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace lapden::cli
