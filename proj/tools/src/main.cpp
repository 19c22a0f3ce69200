#include "symclass/errors.hpp"
#include "symclass_app/analysis.hpp"
#include "symclass_app/problem_spec.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace symclass;
using namespace symclass::app;

constexpr int exit_pass = 0;
constexpr int exit_failed = 1;
constexpr int exit_input = 2;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw InvalidArgument("cannot write " + path);
    os << text;
}

int emit(const Json& report, const std::string& out) {
    const std::string text = dump_report(report);
    if (out.empty())
        std::cout << text;
    else
        write_text(out, text);
    return report.value("passed", false) ? exit_pass : exit_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Point symmetry classifier for time-dependent mechanical systems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version));

    std::string spec_path, out_path, report_path, csv_path, traj_csv;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    bool lie = false, noether = false;

    auto* analyze = app.add_subcommand("analyze", "Classify and verify the symmetries of a problem file");
    analyze->add_option("spec", spec_path, "Problem file (YAML)")->required();
    analyze->add_flag("--lie", lie, "Run the Lie classification");
    analyze->add_flag("--noether", noether, "Run the Noether classification");
    analyze->add_option("--out", out_path, "Write the JSON report here instead of stdout");
    analyze->add_option("--seed", seed, "Sampling seed");
    analyze->add_option("--tol", tol, "Verification tolerance");
    analyze->add_option("--trajectory-csv", traj_csv, "Export the first verification trajectory");

    auto* verify = app.add_subcommand("verify", "Re-run a report and check that it reproduces");
    verify->add_option("report", report_path, "JSON report")->required();

    auto* reparam = app.add_subcommand("reparam", "Map between damped and time-dependent forms");
    reparam->add_option("spec", spec_path, "Problem file (YAML)")->required();
    reparam->add_option("--out", csv_path, "Time map table (CSV)")->required();
    reparam->add_option("--report", out_path, "Write the JSON report here instead of stdout");
    reparam->add_option("--seed", seed, "Sampling seed");
    reparam->add_option("--tol", tol, "Verification tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_input;
    }

    try {
        if (verify->parsed()) {
            std::ifstream in(report_path);
            if (!in) throw InvalidArgument("cannot read report " + report_path);
            Json report;
            try {
                report = Json::parse(in);
            } catch (const Json::parse_error& e) {
                throw InvalidArgument(std::string("report is not valid JSON: ") + e.what());
            }
            const auto outcome = verify_report(report);
            for (const auto& d : outcome.differences) std::cout << "differs: " << d << "\n";
            std::cout << (outcome.reproduced ? "reproduced" : "not reproduced") << ", verification "
                      << (outcome.passed ? "passed" : "failed") << "\n";
            return outcome.reproduced && outcome.passed ? exit_pass : exit_failed;
        }

        auto spec = parse_spec(spec_path);
        Overrides o;
        o.seed = seed;
        o.tolerance = tol;
        if (lie) o.lie = true;
        if (noether) o.noether = true;
        apply_overrides(spec, o);

        if (analyze->parsed()) {
            std::optional<std::filesystem::path> csv;
            if (!traj_csv.empty()) csv = traj_csv;
            return emit(run_analyze(spec, csv).report, out_path);
        }
        const auto res = run_reparam(spec);
        if (!res.csv.empty()) write_text(csv_path, res.csv);
        return emit(res.report, out_path);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
    } catch (const ValidationError& e) {
        std::cerr << "invalid problem:\n";
        for (const auto& v : e.violations()) std::cerr << "  - " << v << "\n";
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return exit_input;
}
