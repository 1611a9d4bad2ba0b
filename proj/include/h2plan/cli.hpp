#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "h2plan/lp.hpp"
#include "h2plan/prep.hpp"

namespace h2plan::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct PrepArgs {
    std::filesystem::path weather_dir;
    std::filesystem::path out_dir;
    double space_slope_mw_per_c = 2.0;
    double hot_water_base_mw = 5.0;
    prep::PrepParams params;
};

struct PlanArgs {
    std::filesystem::path scenario;
    std::filesystem::path out_dir;
    std::string mode;  // empty -> scenario objective_mode
    std::optional<double> emission_cap;
    std::filesystem::path export_mps;       // when set: write MPS, skip solve
    std::filesystem::path import_solution;  // when set: verify + adopt external point
    solve::SolveOptions solver;
};

struct ParetoArgs {
    std::filesystem::path scenario;
    std::filesystem::path out_dir;
    int points = 8;
    solve::SolveOptions solver;
};

struct PipelinesArgs {
    std::filesystem::path run_dir;  // a completed plan run
    std::filesystem::path out_dir;
};

struct ValidateArgs {
    std::filesystem::path scenario;
    std::filesystem::path out_dir;
    solve::SolveOptions solver;
};

struct SweepArgs {
    std::filesystem::path scenario;
    std::filesystem::path out_dir;
    std::string param;   // "<tech-id>.capital" or "<kind>.capital"
    double delta = 0.3;  // +/- fraction
    solve::SolveOptions solver;
};

struct ReportArgs {
    std::filesystem::path run_dir;
    std::filesystem::path out_dir;  // empty -> <run_dir>/report
};

int cmd_prep(const PrepArgs& args);
int cmd_plan(const PlanArgs& args);
int cmd_pareto(const ParetoArgs& args);
int cmd_pipelines(const PipelinesArgs& args);
int cmd_validate(const ValidateArgs& args);
int cmd_sweep(const SweepArgs& args);
int cmd_report(const ReportArgs& args);

}  // namespace h2plan::cli
