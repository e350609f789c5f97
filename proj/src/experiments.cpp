#include "lapden/experiments.hpp"

#include <algorithm>
#include <future>

#include "lapden/data_io.hpp"
#include "lapden/error.hpp"
#include "lapden/parallel.hpp"

namespace lapden {
namespace {

constexpr const char* kNoisyColor = "#d62728";
constexpr const char* kRestoredColor = "#1f77b4";
constexpr const char* kCleanColor = "#222222";

std::string artifact_name(const ExperimentSettings& s, const std::string& method, const std::string& ext) {
    return s.name + "_" + method + "_" + std::to_string(s.seed) + "." + ext;
}

// Maps the clean field's range onto [0, 1] so signed data survives PGM quantization.
Field2D for_display(const Field2D& f, double lo, double hi) {
    Field2D out = f;
    const double span = hi > lo ? hi - lo : 1.0;
    for (double& v : out.values) v = (v - lo) / span;
    return out;
}

PlotSpec comparison_plot(const std::string& title, const std::string& first_label, const char* first_color,
                         const std::vector<double>& first, const std::string& second_label,
                         const char* second_color, const std::vector<double>& second) {
    PlotSpec spec;
    spec.title = title;
    spec.series.push_back({first_label, first_color, first});
    spec.series.push_back({second_label, second_color, second});
    return spec;
}

nlohmann::ordered_json common_params(const ExperimentSettings& s, double tau) {
    nlohmann::ordered_json p;
    p["figure"] = s.name;
    p["n"] = s.n;
    p["seed"] = s.seed;
    p["delta_rel"] = s.delta_rel;
    p["h"] = 1.0;
    p["tau"] = tau;
    return p;
}

template <class Data, class NlRun, class TvRun>
std::pair<Restored<Data>, Restored<Data>> run_both(NlRun&& nl, TvRun&& tv) {
    if (thread_limit() > 1) {
        auto tv_future = std::async(std::launch::async, tv);
        auto nl_result = nl();
        return {std::move(nl_result), tv_future.get()};
    }
    auto nl_result = nl();
    return {std::move(nl_result), tv()};
}

}  // namespace

const MethodOutcome& ExperimentResult::method(const std::string& name) const {
    for (const auto& m : methods) {
        if (m.method == name) return m;
    }
    throw InvalidParameter("experiment has no method '" + name + "'");
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"fig1", "fig2", "fig3", "fig4", "fig5"};
    return names;
}

ExperimentSettings experiment_defaults(const std::string& name) {
    ExperimentSettings s;
    s.name = name;
    if (name == "fig1" || name == "fig2") {
        s.n = 100;
        s.delta_rel = 0.09;
        s.nl.lambda = 1.0;
        s.tv.lambda = 10.0;
    } else if (name == "fig3") {
        // Jumps at 0.2, 0.4, 0.6, 0.8 fall between nodes for n = 101, so each is one sample wide.
        s.n = 101;
        s.delta_rel = 0.09;
        s.jump_signal = true;
        s.nl.lambda = 10.0;
        s.tv.lambda = 10.0;
    } else if (name == "fig4" || name == "fig5") {
        s.n = 64;
        s.delta_rel = 0.05;
        s.two_d = true;
        s.nl.lambda = 10.0;
        s.tv.lambda = 30.0;
    } else {
        throw InvalidParameter("unknown experiment '" + name + "' (expected fig1..fig5)");
    }
    return s;
}

ExperimentResult run_experiment(const ExperimentSettings& s, const std::filesystem::path& outdir) {
    ExperimentResult result;
    result.settings = s;
    const bool write = !outdir.empty();
    if (write) std::filesystem::create_directories(outdir);
    auto out_path = [&](const std::string& method, const std::string& ext) {
        auto p = outdir / artifact_name(s, method, ext);
        result.artifacts.push_back(p);
        return p;
    };
    const NoiseSpec noise{s.seed, s.delta_rel};

    if (s.two_d) {
        Field2D clean = sample_f2d(s.n);
        clean.h = 1.0;
        const Field2D noisy = add_noise(clean, noise);
        result.tau = default_tau(clean);
        result.rows = clean.rows;
        result.cols = clean.cols;
        result.clean = clean.values;
        result.noisy = noisy.values;
        result.noisy_metrics = compute_metrics(noisy, clean, result.tau);

        auto [nl, tv] = run_both<Field2D>([&] { return denoise_2d(noisy, s.nl); },
                                          [&] { return tv_denoise_2d(noisy, s.tv); });
        result.methods.push_back({"nl", compute_metrics(nl.data, clean, result.tau), nl.trace, nl.data.values, 0});
        result.methods.push_back({"tv", compute_metrics(tv.data, clean, result.tau), tv.trace, tv.data.values, 0});

        if (write) {
            const auto [lo, hi] = std::minmax_element(clean.values.begin(), clean.values.end());
            write_pgm(out_path("clean", "pgm"), for_display(clean, *lo, *hi));
            write_pgm(out_path("noisy", "pgm"), for_display(noisy, *lo, *hi));
            write_pgm(out_path("nl", "pgm"), for_display(nl.data, *lo, *hi));
            write_pgm(out_path("tv", "pgm"), for_display(tv.data, *lo, *hi));
        }
    } else {
        const Signal1D sampled = s.jump_signal ? sample_g_jumps(s.n) : sample_f_sine(s.n);
        const Signal1D clean(sampled.values, 1.0, 0.0);
        const Signal1D noisy = add_noise(clean, noise);
        result.tau = default_tau(clean);
        result.clean = clean.values;
        result.noisy = noisy.values;
        result.noisy_metrics = compute_metrics(noisy, clean, result.tau);

        auto [nl, tv] = run_both<Signal1D>([&] { return denoise_1d(noisy, s.nl); },
                                           [&] { return tv_denoise_1d(noisy, s.tv); });
        const std::size_t nl_jumps = s.jump_signal ? count_jumps(nl.data, 1.0) : 0;
        const std::size_t tv_jumps = s.jump_signal ? count_jumps(tv.data, 1.0) : 0;
        result.methods.push_back(
            {"nl", compute_metrics(nl.data, clean, result.tau), nl.trace, nl.data.values, nl_jumps});
        result.methods.push_back(
            {"tv", compute_metrics(tv.data, clean, result.tau), tv.trace, tv.data.values, tv_jumps});

        if (write) {
            write_csv_1d(out_path("clean", "csv"), clean);
            write_csv_1d(out_path("noisy", "csv"), noisy);
            write_csv_1d(out_path("nl", "csv"), nl.data);
            write_csv_1d(out_path("tv", "csv"), tv.data);
            const std::string what = s.jump_signal ? "g" : "f";
            write_svg_plot(out_path("nl", "svg"),
                           comparison_plot(s.name + ": noisy " + what + " and nonlinear-filter restoration", "noisy",
                                           kNoisyColor, noisy.values, "restored (nonlinear filter)",
                                           kRestoredColor, nl.data.values));
            write_svg_plot(out_path("tv", "svg"),
                           comparison_plot(s.name + ": noisy " + what + " and TV restoration", "noisy", kNoisyColor,
                                           noisy.values, "restored (TV)", kRestoredColor, tv.data.values));
            if (s.name == "fig1") {
                write_svg_plot(out_path("input", "svg"),
                               comparison_plot("fig1: original and noisy f", "original", kCleanColor, clean.values,
                                               "noisy", kNoisyColor, noisy.values));
                const Signal1D g_clean(sample_g_jumps(s.n).values, 1.0, 0.0);
                const Signal1D g_noisy = add_noise(g_clean, noise);
                write_csv_1d(out_path("gclean", "csv"), g_clean);
                write_csv_1d(out_path("gnoisy", "csv"), g_noisy);
                write_svg_plot(out_path("ginput", "svg"),
                               comparison_plot("fig1: original and noisy g", "original", kCleanColor,
                                               g_clean.values, "noisy", kNoisyColor, g_noisy.values));
            }
        }
    }

    std::vector<std::string> paths;
    for (const auto& p : result.artifacts) paths.push_back(p.string());
    for (const auto& m : result.methods) {
        RunReport r;
        r.command = "experiment";
        r.method = m.method;
        r.params = common_params(s, result.tau);
        if (m.method == "nl") {
            r.params["lambda"] = s.nl.lambda;
            r.params["epsilon"] = s.nl.epsilon;
            r.params["p"] = s.nl.p;
            r.params["solver"] = s.nl.solver == Solver::SemiImplicit ? "semi-implicit" : "explicit";
            r.params["tol"] = s.nl.tol;
        } else {
            r.params["lambda"] = s.tv.lambda;
            r.params["beta"] = s.tv.beta;
            r.params["tol"] = s.tv.tol;
        }
        r.metrics_noisy = result.noisy_metrics;
        r.metrics_restored = m.restored;
        r.trace_summary = TraceSummary::from(m.trace);
        r.artifact_paths = paths;
        if (s.jump_signal) r.extra["jumps_above_half_height"] = m.jumps;
        result.reports.push_back(std::move(r));
    }
    return result;
}

}  // namespace lapden
