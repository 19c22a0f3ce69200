#pragma once

#include "symclass_app/problem_spec.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace symclass::app {

inline constexpr const char* schema_version = "1.0";
inline constexpr const char* tool_name = "symclass";
inline constexpr const char* tool_version = "0.1.0";

using Json = nlohmann::ordered_json;

// Command-line values that take precedence over the problem file.
struct Overrides {
    std::optional<bool> lie;
    std::optional<bool> noether;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
};

void apply_overrides(ProblemSpec& spec, const Overrides& o);

struct AnalysisResult {
    Json report;
    bool passed = true;
};

// Classifies, verifies every emitted item and assembles the report.
// trajectory_csv, when set, receives the first verification trajectory.
AnalysisResult run_analyze(const ProblemSpec& spec, const std::optional<std::filesystem::path>& trajectory_csv = {});

struct ReparamResult {
    Json report;
    // Columns t, S, dS, omega, phi on the damped-time grid.
    std::string csv;
    bool passed = true;
};

ReparamResult run_reparam(const ProblemSpec& spec, std::size_t rows = 201);

struct VerifyOutcome {
    bool reproduced = false;
    bool passed = false;
    std::vector<std::string> differences;
};

// Re-runs the analysis embedded in a report and compares everything except generated_at.
VerifyOutcome verify_report(const Json& report);

// Report with the timestamp removed, for comparisons.
Json strip_timestamp(Json report);

std::string dump_report(const Json& report);

}  // namespace symclass::app
