#include "gridsde/report.hpp"

namespace gridsde {

using nlohmann::ordered_json;

bool ExperimentReport::passed() const {
    for (const auto& check : checks)
        if (check.verdict == "fail") return false;
    return true;
}

ordered_json report_to_json(const ExperimentReport& report) {
    ordered_json j;
    j["experiment"] = report.experiment;
    j["config"] = report.config_echo;
    j["seed"] = report.seed;
    j["tool_version"] = report.tool_version;
    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json jc;
        jc["name"] = c.name;
        jc["statistic"] = c.statistic;
        jc["ci"] = {c.ci_lo, c.ci_hi};
        jc["threshold"] = c.threshold;
        jc["verdict"] = c.verdict;
        jc["note"] = c.note;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);
    ordered_json plots = ordered_json::array();
    for (const auto& s : report.plot_data) {
        ordered_json js;
        js["name"] = s.name;
        js["columns"] = s.columns;
        js["rows"] = s.rows;
        plots.push_back(std::move(js));
    }
    j["plot_data"] = std::move(plots);
    j["overall"] = report.overall();
    j["timestamp"] = {{"generated_at", report.generated_at},
                      {"wall_clock_s", report.wall_clock_s}};
    return j;
}

ExperimentReport report_from_json(const ordered_json& j) {
    ExperimentReport report;
    report.experiment = j.at("experiment").get<std::string>();
    report.config_echo = j.at("config");
    report.seed = j.at("seed").get<std::uint64_t>();
    report.tool_version = j.at("tool_version").get<std::string>();
    for (const auto& jc : j.at("checks")) {
        CheckResult c;
        c.name = jc.at("name").get<std::string>();
        c.statistic = jc.at("statistic").get<double>();
        c.ci_lo = jc.at("ci")[0].get<double>();
        c.ci_hi = jc.at("ci")[1].get<double>();
        c.threshold = jc.at("threshold").get<double>();
        c.verdict = jc.at("verdict").get<std::string>();
        c.note = jc.at("note").get<std::string>();
        report.checks.push_back(std::move(c));
    }
    for (const auto& js : j.at("plot_data")) {
        PlotSeries s;
        s.name = js.at("name").get<std::string>();
        s.columns = js.at("columns").get<std::vector<std::string>>();
        s.rows = js.at("rows").get<std::vector<std::vector<double>>>();
        report.plot_data.push_back(std::move(s));
    }
    report.generated_at = j.at("timestamp").at("generated_at").get<std::string>();
    report.wall_clock_s = j.at("timestamp").at("wall_clock_s").get<double>();
    return report;
}

std::string report_body_without_timestamp(const ExperimentReport& report) {
    ordered_json j = report_to_json(report);
    j.erase("timestamp");
    return j.dump(2);
}

}  // namespace gridsde
