#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "h2plan/cli.hpp"
#include "json.hpp"

using namespace h2plan;

int main(int argc, char** argv) {
    CLI::App app{"electricity-heat-hydrogen capacity expansion planner"};
    app.require_subcommand(1);

    long seed = 0;  // recorded for randomized fixtures; the planner itself is deterministic
    app.add_option("--seed", seed, "seed for randomized fixtures")->capture_default_str();

    cli::PrepArgs prep_args;
    auto* prep = app.add_subcommand("prep", "weather CSVs -> capacity factor and heat series");
    prep->add_option("--weather", prep_args.weather_dir, "directory of <region>.csv files")
        ->required();
    prep->add_option("--out", prep_args.out_dir, "output directory")->required();
    prep->add_option("--space-slope", prep_args.space_slope_mw_per_c,
                     "space heating slope MW/degC")
        ->capture_default_str();
    prep->add_option("--hot-water-base", prep_args.hot_water_base_mw, "hot water base MW")
        ->capture_default_str();
    prep->add_option("--hub-height", prep_args.params.hub_height_m, "turbine hub height m")
        ->capture_default_str();

    cli::PlanArgs plan_args;
    auto* plan = app.add_subcommand("plan", "build and solve the planning model");
    plan->add_option("--scenario", plan_args.scenario, "scenario JSON")->required();
    plan->add_option("--out", plan_args.out_dir, "output directory")->required();
    plan->add_option("--mode", plan_args.mode, "min-cost | min-co2 | cost-under-cap");
    double cap = -1.0;
    plan->add_option("--emission-cap", cap, "tons CO2 for cost-under-cap");
    plan->add_option("--export-mps", plan_args.export_mps, "write MPS instead of solving");
    plan->add_option("--import-solution", plan_args.import_solution,
                     "adopt an external `name value` solution file");
    plan->add_option("--tolerance", plan_args.solver.tolerance, "solver tolerance")
        ->capture_default_str();
    plan->add_option("--max-iterations", plan_args.solver.max_iterations, "solver iterations")
        ->capture_default_str();

    cli::ParetoArgs pareto_args;
    auto* pareto = app.add_subcommand("pareto", "cost-CO2 frontier");
    pareto->add_option("--scenario", pareto_args.scenario, "scenario JSON")->required();
    pareto->add_option("--out", pareto_args.out_dir, "output directory")->required();
    pareto->add_option("--points", pareto_args.points, "frontier points")
        ->capture_default_str();

    cli::PipelinesArgs pipes_args;
    auto* pipes = app.add_subcommand("pipelines", "post-process hydrogen pipeline plan");
    pipes->add_option("--run", pipes_args.run_dir, "completed plan run directory")
        ->required();
    pipes->add_option("--out", pipes_args.out_dir, "output directory (default <run>/pipelines)");

    cli::ValidateArgs val_args;
    auto* validate =
        app.add_subcommand("validate", "clustered relaxation vs exact MILP gap report");
    validate->add_option("--scenario", val_args.scenario, "scenario JSON with module sizing")
        ->required();
    validate->add_option("--out", val_args.out_dir, "output directory")->required();
    validate->add_option("--node-cap", val_args.solver.node_cap, "branch and bound node cap")
        ->capture_default_str();

    cli::SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "cost parameter sensitivity");
    sweep->add_option("--scenario", sweep_args.scenario, "scenario JSON")->required();
    sweep->add_option("--out", sweep_args.out_dir, "output directory")->required();
    sweep->add_option("--param", sweep_args.param, "<tech-id|kind>.capital")->required();
    sweep->add_option("--delta", sweep_args.delta, "relative change, e.g. 0.3")
        ->capture_default_str();

    cli::ReportArgs report_args;
    auto* report = app.add_subcommand("report", "SVG heatmaps and tables for a run");
    report->add_option("--run", report_args.run_dir, "completed run directory")->required();
    report->add_option("--out", report_args.out_dir, "output directory (default <run>/report)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (prep->parsed()) return cli::cmd_prep(prep_args);
        if (plan->parsed()) {
            if (cap >= 0.0) plan_args.emission_cap = cap;
            return cli::cmd_plan(plan_args);
        }
        if (pareto->parsed()) return cli::cmd_pareto(pareto_args);
        if (pipes->parsed()) return cli::cmd_pipelines(pipes_args);
        if (validate->parsed()) return cli::cmd_validate(val_args);
        if (sweep->parsed()) return cli::cmd_sweep(sweep_args);
        if (report->parsed()) return cli::cmd_report(report_args);
    } catch (const std::exception& e) {
        nlohmann::ordered_json err;
        err["error"] = e.what();
        err["command"] = app.get_subcommands().empty()
                             ? ""
                             : app.get_subcommands().front()->get_name();
        std::fprintf(stderr, "%s\n", err.dump().c_str());
        return 1;
    }
    return 0;
}
