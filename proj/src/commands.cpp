#include "h2plan/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "h2plan/cluster.hpp"
#include "h2plan/model.hpp"
#include "h2plan/mps.hpp"
#include "h2plan/pareto.hpp"
#include "h2plan/pipeline.hpp"
#include "h2plan/scenario_io.hpp"

#include "json.hpp"

namespace h2plan::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

ordered_json solver_json(const solve::SolveOptions& s) {
    return {{"tolerance", s.tolerance},
            {"max_iterations", s.max_iterations},
            {"node_cap", s.node_cap}};
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const ordered_json& args, const std::string& scenario_path,
                    const std::string& fingerprint, const solve::SolveOptions& solver) {
    ordered_json j;
    j["tool"] = "h2plan";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["scenario_path"] = scenario_path;
    j["scenario_fingerprint"] = fingerprint;
    j["solver"] = solver_json(solver);
    j["args"] = args;
    fs::create_directories(out_dir);
    std::ofstream f(out_dir / "manifest.json");
    f << j.dump(2) << "\n";
}

ordered_json read_manifest(const fs::path& run_dir) {
    std::ifstream f(run_dir / "manifest.json");
    if (!f)
        throw std::runtime_error("no manifest.json in '" + run_dir.string() +
                                 "' (not a completed run directory)");
    ordered_json j = ordered_json::parse(f, nullptr, false);
    if (j.is_discarded())
        throw std::runtime_error("manifest.json in '" + run_dir.string() + "' is not JSON");
    return j;
}

core::ObjectiveMode resolve_mode(const core::ScenarioConfig& cfg, const std::string& mode) {
    if (mode.empty()) return cfg.objective_mode;
    auto m = core::objective_mode_from_string(mode);
    if (!m) throw std::runtime_error("unknown mode '" + mode + "'");
    return *m;
}

void print_residual_report(const assemble::PlanSolution& sol) {
    const double scale = std::max(sol.residuals.peak_electric_demand, 1.0);
    auto line = [&](const char* name, double value, double limit) {
        std::printf("residual %-10s %.3e (limit %.1e) %s\n", name, value, limit,
                    value <= limit ? "PASS" : "FAIL");
    };
    line("electric", sol.residuals.electric_max, 1e-6 * scale);
    line("heat", sol.residuals.heat_max, 1e-6 * scale);
    line("hydrogen", sol.residuals.hydrogen_max, 1e-3);
    line("storage", sol.residuals.storage_cycle_max, 1e-6);
}

}  // namespace

int cmd_prep(const PrepArgs& args) {
    std::vector<fs::path> inputs;
    if (fs::is_directory(args.weather_dir))
        for (const auto& e : fs::directory_iterator(args.weather_dir))
            if (e.path().extension() == ".csv") inputs.push_back(e.path());
    std::sort(inputs.begin(), inputs.end());
    if (inputs.empty())
        throw std::runtime_error(
            "no weather CSVs found in '" + args.weather_dir.string() +
            "' (expected <region>.csv files with header "
            "hour,wind_speed_50m,irradiance,ambient_temp)");

    fs::create_directories(args.out_dir);
    ordered_json summary;
    for (const auto& path : inputs) {
        const std::string region = path.stem().string();
        auto samples = prep::read_weather_csv(path.string());
        auto out = prep::prepare_region(samples, args.space_slope_mw_per_c,
                                        args.hot_water_base_mw, args.params);
        core::write_series_csv(args.out_dir / (region + "_wind_cf.csv"), out.wind_cf);
        core::write_series_csv(args.out_dir / (region + "_solar_cf.csv"), out.solar_cf);
        core::write_series_csv(args.out_dir / (region + "_heat_demand.csv"),
                               out.heat_demand);
        auto mean = [](const std::vector<double>& v) {
            double s = 0;
            for (double x : v) s += x;
            return v.empty() ? 0.0 : s / static_cast<double>(v.size());
        };
        summary[region] = {{"hours", samples.size()},
                           {"wind_cf_mean", mean(out.wind_cf)},
                           {"solar_cf_mean", mean(out.solar_cf)},
                           {"heat_demand_mean_mw", mean(out.heat_demand)}};
        std::printf("prep %-12s hours=%zu wind_cf_mean=%.4f solar_cf_mean=%.4f\n",
                    region.c_str(), samples.size(), mean(out.wind_cf), mean(out.solar_cf));
    }
    {
        std::ofstream f(args.out_dir / "prep_summary.json");
        f << summary.dump(2) << "\n";
    }
    write_manifest(args.out_dir, "prep",
                   {{"weather_dir", args.weather_dir.string()},
                    {"space_slope_mw_per_c", args.space_slope_mw_per_c},
                    {"hot_water_base_mw", args.hot_water_base_mw}},
                   args.weather_dir.string(), "", {});
    return 0;
}

int cmd_plan(const PlanArgs& args) {
    auto cfg = core::load_scenario(args.scenario);
    const auto mode = resolve_mode(cfg, args.mode);
    auto model = assemble::build_planning_lp(cfg, mode, args.emission_cap);

    if (!args.export_mps.empty()) {
        solve::export_mps(model.lp, args.export_mps, cfg.name);
        write_manifest(args.out_dir, "plan",
                       {{"mode", core::to_string(mode)},
                        {"export_mps", args.export_mps.string()}},
                       args.scenario.string(), model.fingerprint, args.solver);
        std::printf("exported %d vars / %d rows to %s\n", model.lp.num_vars(),
                    model.lp.num_rows(), args.export_mps.string().c_str());
        return 0;
    }

    solve::SolveResult result;
    const double t0 = now_seconds();
    if (!args.import_solution.empty()) {
        result = solve::import_solution(args.import_solution, model.lp);
    } else {
        result = solve::solve(model.lp, args.solver);
    }
    const double seconds = now_seconds() - t0;
    if (result.status != solve::SolveStatus::Optimal)
        throw std::runtime_error(std::string("solve ended ") + to_string(result.status) +
                                 (result.message.empty() ? "" : ": " + result.message));

    auto sol = assemble::extract_solution(model, result);
    sol.solve_seconds = seconds;
    assemble::write_solution_csvs(sol, args.out_dir);
    write_manifest(args.out_dir, "plan",
                   {{"mode", core::to_string(mode)},
                    {"imported", args.import_solution.empty() ? "" : args.import_solution.string()}},
                   args.scenario.string(), model.fingerprint, args.solver);
    std::printf("plan %s mode=%s objective=%.6e cost=%.6e co2=%.6e in %.2fs\n",
                cfg.name.c_str(), core::to_string(mode), sol.objective, sol.costs.total(),
                sol.co2_tons, seconds);
    print_residual_report(sol);
    return 0;
}

int cmd_pareto(const ParetoArgs& args) {
    auto cfg = core::load_scenario(args.scenario);
    pareto::ParetoOptions opt;
    opt.n_points = args.points;
    opt.solver = args.solver;
    auto frontier = pareto::frontier(cfg, opt);
    fs::create_directories(args.out_dir);
    pareto::write_frontier_csv(frontier, args.out_dir / "frontier.csv");
    assemble::write_solution_csvs(frontier.anchors.min_cost, args.out_dir / "anchor_min_cost");
    assemble::write_solution_csvs(frontier.anchors.min_co2, args.out_dir / "anchor_min_co2");
    ordered_json points = ordered_json::array();
    for (const auto& p : frontier.points)
        points.push_back({{"epsilon", p.epsilon},
                          {"emissions_tons", p.emissions},
                          {"cost_usd", p.cost},
                          {"reduction_cost_usd_per_ton", p.reduction_cost},
                          {"feasible", p.feasible}});
    {
        std::ofstream f(args.out_dir / "points.json");
        f << points.dump(2) << "\n";
    }
    write_manifest(args.out_dir, "pareto", {{"points", args.points}},
                   args.scenario.string(),
                   core::scenario_fingerprint(cfg), args.solver);
    std::printf("pareto %s: %zu points (%d infeasible), emissions [%.6e, %.6e]\n",
                cfg.name.c_str(), frontier.points.size(), frontier.infeasible_points,
                frontier.anchors.min_co2.co2_tons, frontier.anchors.min_cost.co2_tons);
    return 0;
}

int cmd_pipelines(const PipelinesArgs& args) {
    auto manifest = read_manifest(args.run_dir);
    if (manifest.value("command", "") != "plan")
        throw std::runtime_error("'" + args.run_dir.string() + "' is not a plan run");
    const std::string scenario_path = manifest.value("scenario_path", "");
    auto cfg = core::load_scenario(scenario_path);
    const std::string fingerprint = core::scenario_fingerprint(cfg);
    if (fingerprint != manifest.value("scenario_fingerprint", ""))
        throw std::runtime_error(
            "scenario file has changed since the plan run (fingerprint mismatch); "
            "re-run plan before pipelines");

    // per-region hourly injections from the plan outputs
    std::ifstream f(args.run_dir / "hydrogen_nodal.csv");
    if (!f) throw std::runtime_error("plan run has no hydrogen_nodal.csv");
    std::map<std::string, std::vector<double>> injections;
    std::string line;
    std::getline(f, line);  // header
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        auto c1 = line.find(',');
        auto c2 = line.find(',', c1 + 1);
        const std::string region = line.substr(0, c1);
        injections[region].push_back(std::stod(line.substr(c2 + 1)));
    }
    auto plan = pipeline::plan_pipelines(injections, cfg.topology);
    const fs::path out = args.out_dir.empty() ? args.run_dir / "pipelines" : args.out_dir;
    pipeline::write_pipeline_csvs(plan, out);
    write_manifest(out, "pipelines", {{"run_dir", args.run_dir.string()}}, scenario_path,
                   fingerprint, {});
    std::printf("pipelines: objective %.6e kg-km, transport cost %.2f $/yr\n",
                plan.objective_kg_km, plan.transport_cost_usd);
    return 0;
}

int cmd_validate(const ValidateArgs& args) {
    auto cfg = core::load_scenario(args.scenario);
    const auto mode = cfg.objective_mode;

    const double t0 = now_seconds();
    auto relaxed_model = assemble::build_planning_lp(cfg, mode, cfg.emission_cap);
    auto relaxed_res = solve::solve(relaxed_model.lp, args.solver);
    const double relaxed_seconds = now_seconds() - t0;
    if (relaxed_res.status != solve::SolveStatus::Optimal)
        throw std::runtime_error(std::string("clustered LP ended ") +
                                 to_string(relaxed_res.status));
    auto relaxed = assemble::extract_solution(relaxed_model, relaxed_res);

    const double t1 = now_seconds();
    auto exact_model = assemble::build_exact_milp(cfg, mode, cfg.emission_cap);
    auto exact_res = solve::solve(exact_model.lp, args.solver);
    const double exact_seconds = now_seconds() - t1;
    if (exact_res.status != solve::SolveStatus::Optimal)
        throw std::runtime_error(std::string("exact MILP ended ") +
                                 to_string(exact_res.status) +
                                 (exact_res.message.empty() ? "" : ": " + exact_res.message));
    auto exact = assemble::extract_solution(exact_model, exact_res);

    if (relaxed.technology_totals.size() != exact.technology_totals.size())
        throw std::runtime_error("mismatched instances in relaxation validation");
    // compare per technology: sum the regional totals so degenerate splits
    // between identical fleets in different regions do not register as gaps
    std::map<std::string, std::pair<double, double>> per_tech;
    for (const auto& [key, total] : relaxed.technology_totals) {
        auto it = exact.technology_totals.find(key);
        if (it == exact.technology_totals.end())
            throw std::runtime_error("mismatched instances: missing '" + key + "'");
        const auto family = key.substr(0, key.find(':'));
        const auto tech = key.substr(key.rfind('/') + 1);
        auto& acc = per_tech[family + ":" + tech];
        acc.first += total;
        acc.second += it->second;
    }
    std::vector<flex::GapItem> items;
    for (const auto& [key, pair] : per_tech)
        items.push_back({key, pair.first, pair.second, 0.0});
    auto report = flex::relaxation_gap(items, relaxed_res.objective, exact_res.objective);
    report.relaxed_seconds = relaxed_seconds;
    report.exact_seconds = exact_seconds;

    fs::create_directories(args.out_dir);
    {
        std::ofstream f(args.out_dir / "gap_report.csv");
        f << "key,relaxed,exact,rel_gap\n";
        char buf[160];
        for (const auto& it : report.items) {
            std::snprintf(buf, sizeof(buf), ",%.12g,%.12g,%.12g\n", it.relaxed, it.exact,
                          it.rel_gap);
            f << it.key << buf;
        }
    }
    {
        ordered_json j;
        j["max_rel_gap"] = report.max_rel_gap;
        j["objective_relaxed"] = report.objective_relaxed;
        j["objective_exact"] = report.objective_exact;
        j["objective_gap"] = report.objective_gap;
        j["relaxed_seconds"] = relaxed_seconds;
        j["exact_seconds"] = exact_seconds;
        j["speedup"] = relaxed_seconds > 0 ? exact_seconds / relaxed_seconds : 0.0;
        j["milp_nodes"] = exact_res.nodes;
        std::ofstream f(args.out_dir / "gap_report.json");
        f << j.dump(2) << "\n";
    }
    write_manifest(args.out_dir, "validate", {}, args.scenario.string(),
                   relaxed_model.fingerprint, args.solver);
    std::printf("validate %s: max gap %.4f%%, objective gap %.3e, "
                "relaxed %.2fs vs exact %.2fs (%.0fx, %lld nodes)\n",
                cfg.name.c_str(), 100.0 * report.max_rel_gap, report.objective_gap,
                relaxed_seconds, exact_seconds,
                relaxed_seconds > 0 ? exact_seconds / relaxed_seconds : 0.0,
                static_cast<long long>(exact_res.nodes));
    return 0;
}

int cmd_sweep(const SweepArgs& args) {
    auto cfg = core::load_scenario(args.scenario);
    const auto dot = args.param.find('.');
    const std::string target = dot == std::string::npos ? args.param : args.param.substr(0, dot);
    const std::string field = dot == std::string::npos ? "capital" : args.param.substr(dot + 1);
    if (field != "capital")
        throw std::runtime_error("sweep supports '<tech|kind>.capital' parameters");

    auto scaled_config = [&](double scale) {
        core::ScenarioConfig c = cfg;
        bool hit = false;
        for (auto& tech : c.technologies) {
            if (tech.id == target || core::to_string(tech.kind) == target) {
                tech.cost.capital *= scale;
                hit = true;
            }
        }
        if (!hit) throw std::runtime_error("no technology matches '" + target + "'");
        return c;
    };

    struct Row {
        std::string label;
        double scale;
        assemble::PlanSolution sol;
    };
    std::vector<Row> rows;
    for (auto [label, scale] : std::initializer_list<std::pair<const char*, double>>{
             {"base", 1.0}, {"up", 1.0 + args.delta}, {"down", 1.0 - args.delta}}) {
        auto c = scaled_config(scale);
        auto model = assemble::build_planning_lp(c, c.objective_mode, c.emission_cap);
        auto res = solve::solve(model.lp, args.solver);
        if (res.status != solve::SolveStatus::Optimal)
            throw std::runtime_error(std::string("sweep point '") + label + "' ended " +
                                     to_string(res.status));
        rows.push_back({label, scale, assemble::extract_solution(model, res)});
    }

    fs::create_directories(args.out_dir);
    {
        std::ofstream f(args.out_dir / "sweep.csv");
        f << "run,scale,total_cost_usd,co2_tons";
        std::set<std::string> techs;
        for (const auto& cap : rows[0].sol.capacities)
            if (cap.kind != core::TechKind::Line) techs.insert(cap.tech);
        for (const auto& t : techs) f << ",capacity_" << t;
        f << "\n";
        char buf[64];
        for (const auto& row : rows) {
            f << row.label << ',' << row.scale << ',';
            std::snprintf(buf, sizeof(buf), "%.12g,%.12g", row.sol.costs.total(),
                          row.sol.co2_tons);
            f << buf;
            for (const auto& t : techs) {
                double total = 0.0;
                for (const auto& cap : row.sol.capacities)
                    if (cap.tech == t) total += cap.total;
                std::snprintf(buf, sizeof(buf), ",%.12g", total);
                f << buf;
            }
            f << "\n";
        }
    }
    write_manifest(args.out_dir, "sweep",
                   {{"param", args.param}, {"delta", args.delta}}, args.scenario.string(),
                   core::scenario_fingerprint(cfg), args.solver);
    for (const auto& row : rows)
        std::printf("sweep %-5s scale=%.2f cost=%.6e co2=%.6e\n", row.label.c_str(),
                    row.scale, row.sol.costs.total(), row.sol.co2_tons);
    return 0;
}

}  // namespace h2plan::cli
