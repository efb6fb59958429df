#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace gridsde {

inline constexpr const char* kToolVersion = "0.1.0";

struct CheckResult {
    std::string name;
    double statistic = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double threshold = 0.0;
    std::string verdict;  // "pass" | "fail" | "informational"
    std::string note;

    bool operator==(const CheckResult&) const = default;
};

// One figure-worth of plot-ready data, written as a TSV by the CLI.
struct PlotSeries {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    bool operator==(const PlotSeries&) const = default;
};

struct ExperimentReport {
    std::string experiment;
    nlohmann::ordered_json config_echo;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    std::vector<CheckResult> checks;
    std::vector<PlotSeries> plot_data;
    // volatile fields; serialized under the single "timestamp" key so report
    // bodies from identical configs are byte-identical modulo that field
    std::string generated_at;
    double wall_clock_s = 0.0;

    bool passed() const;
    std::string overall() const { return passed() ? "pass" : "fail"; }

    bool operator==(const ExperimentReport&) const = default;
};

nlohmann::ordered_json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::ordered_json& j);

// Serialized body with the timestamp field dropped (determinism checks).
std::string report_body_without_timestamp(const ExperimentReport& report);

}  // namespace gridsde
