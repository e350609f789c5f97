#include "lapden/report.hpp"

#include <fstream>

#include "lapden/error.hpp"

namespace lapden {

TraceSummary TraceSummary::from(const RunTrace& t) {
    TraceSummary s;
    s.iters = t.iters_run;
    s.converged = t.converged;
    s.dt_used = t.dt_used;
    s.wall_seconds = t.wall_seconds;
    s.final_lambda = t.lambda_history.empty() ? 0.0 : t.lambda_history.back();
    return s;
}

nlohmann::ordered_json metrics_to_json(const Metrics& m) {
    nlohmann::ordered_json j;
    j["rel_err"] = m.rel_err;
    j["rmse"] = m.rmse;
    if (m.psnr_db) {
        j["psnr_db"] = *m.psnr_db;
    } else {
        j["psnr_db"] = nullptr;
    }
    j["plateau_fraction"] = m.plateau_fraction;
    j["curvature_mass"] = m.curvature_mass;
    return j;
}

nlohmann::ordered_json RunReport::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["method"] = method;
    j["params"] = params;
    j["metrics_noisy"] = metrics_noisy ? metrics_to_json(*metrics_noisy) : nlohmann::ordered_json(nullptr);
    j["metrics_restored"] = metrics_restored ? metrics_to_json(*metrics_restored) : nlohmann::ordered_json(nullptr);
    j["trace_summary"] = {{"iters", trace_summary.iters},
                          {"converged", trace_summary.converged},
                          {"dt_used", trace_summary.dt_used},
                          {"wall_seconds", trace_summary.wall_seconds},
                          {"final_lambda", trace_summary.final_lambda}};
    j["artifact_paths"] = artifact_paths;
    for (const auto& [key, value] : extra.items()) j[key] = value;
    return j;
}

void append_report(const std::filesystem::path& path, const RunReport& report) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw IoError("cannot open report '" + path.string() + "'");
    out << report.to_json().dump() << '\n';
    if (!out) throw IoError("write to report '" + path.string() + "' failed");
}

}  // namespace lapden
