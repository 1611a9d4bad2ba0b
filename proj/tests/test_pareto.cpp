#include <cmath>
#include <fstream>

#include "doctest.h"
#include "h2plan/pareto.hpp"
#include "test_scenarios.hpp"

using namespace h2plan;
using namespace h2plan::pareto;
using core::ObjectiveMode;

namespace {

core::ScenarioConfig coal_wind_scenario(int T = 8) {
    core::ScenarioConfig cfg = testing::tiny_scenario(T);
    cfg.technologies.push_back(testing::make_wt());
    auto& r = cfg.regions[0];
    for (int t = 0; t < T; ++t) {
        r.electric_demand[t] = 120.0 + 40.0 * std::sin(t * 0.8);
        r.wind_cf[t] = 0.35 + 0.3 * std::sin(t * 1.3 + 0.5);
    }
    r.build_limit["wt"] = 2000.0;
    return cfg;
}

}  // namespace

TEST_CASE("anchors are ordered and match direct solves") {
    auto cfg = coal_wind_scenario();
    auto anchors = compute_anchors(cfg);
    CHECK(anchors.min_cost.costs.total() <=
          anchors.min_co2.costs.total() + 1e-6 * (1.0 + anchors.min_co2.costs.total()));
    CHECK(anchors.min_co2.co2_tons <=
          anchors.min_cost.co2_tons + 1e-6 * (1.0 + anchors.min_cost.co2_tons));

    // anchor objectives match independent single-objective runs
    auto cost_model = assemble::build_planning_lp(cfg, ObjectiveMode::MinCost);
    auto cost_res = solve::solve(cost_model.lp);
    REQUIRE(cost_res.status == solve::SolveStatus::Optimal);
    CHECK(anchors.min_cost.objective ==
          doctest::Approx(cost_res.objective).epsilon(1e-9));

    auto co2_model = assemble::build_planning_lp(cfg, ObjectiveMode::MinCo2);
    auto co2_res = solve::solve(co2_model.lp);
    REQUIRE(co2_res.status == solve::SolveStatus::Optimal);
    // the lexicographic stage is allowed its documented span-relative headroom
    const double span = anchors.min_cost.co2_tons - co2_res.objective;
    CHECK(anchors.min_co2.co2_tons <=
          co2_res.objective + 2e-6 * std::max(span, 1.0) +
              1e-6 * (1.0 + std::abs(co2_res.objective)));
}

TEST_CASE("zero emission factors collapse the frontier to one point") {
    auto cfg = coal_wind_scenario();
    cfg.regions[0].emission_factors["coal"] = 0.0;
    ParetoOptions opt;
    opt.n_points = 4;
    auto f = frontier(cfg, opt);
    CHECK(f.points.size() == 1);
    CHECK(f.anchors.min_cost.co2_tons == doctest::Approx(0.0));
}

TEST_CASE("two points reproduce the anchors") {
    auto cfg = coal_wind_scenario();
    ParetoOptions opt;
    opt.n_points = 2;
    auto f = frontier(cfg, opt);
    REQUIRE(f.points.size() == 2);
    CHECK(f.points[0].cost ==
          doctest::Approx(f.anchors.min_cost.costs.total()).epsilon(1e-6));
    CHECK(f.points[0].emissions ==
          doctest::Approx(f.anchors.min_cost.co2_tons).epsilon(1e-6));
    CHECK(f.points[1].cost ==
          doctest::Approx(f.anchors.min_co2.costs.total()).epsilon(1e-6));
}

TEST_CASE("frontier is monotone and undominated") {
    auto cfg = coal_wind_scenario();
    ParetoOptions opt;
    opt.n_points = 6;
    auto f = frontier(cfg, opt);
    REQUIRE(f.points.size() == 6);
    CHECK(f.infeasible_points == 0);
    for (size_t i = 0; i < f.points.size(); ++i) {
        const auto& p = f.points[i];
        CHECK(p.feasible);
        // every point respects its cap
        CHECK(p.emissions <= p.epsilon * (1.0 + 1e-7) + 1e-6);
        if (i > 0) {
            // emissions descending, cost nondecreasing as the cap tightens
            CHECK(p.emissions <= f.points[i - 1].emissions + 1e-6);
            CHECK(p.cost >= f.points[i - 1].cost -
                                1e-6 * (1.0 + std::abs(f.points[i - 1].cost)));
        }
        // no dominated pair
        for (size_t j = 0; j < f.points.size(); ++j) {
            if (i == j) continue;
            const auto& q = f.points[j];
            const bool dominates =
                q.cost <= p.cost - 1e-6 * (1.0 + std::abs(p.cost)) &&
                q.emissions <= p.emissions - 1e-6 * (1.0 + std::abs(p.emissions));
            CHECK_FALSE(dominates);
        }
    }
    // marginal abatement cost rises as the cap tightens: reduction cost is
    // nondecreasing toward the min-CO2 end of a convex frontier
    double prev = 0.0;
    for (const auto& p : f.points) {
        if (std::isnan(p.reduction_cost)) continue;
        CHECK(p.reduction_cost >= 0.0);
        CHECK(p.reduction_cost >= prev - 1e-6 * (1.0 + std::abs(prev)));
        prev = p.reduction_cost;
    }
}

TEST_CASE("frontier csv is written with the documented header") {
    auto cfg = coal_wind_scenario();
    ParetoOptions opt;
    opt.n_points = 2;
    auto f = frontier(cfg, opt);
    auto path = std::filesystem::temp_directory_path() / "h2plan_frontier.csv";
    write_frontier_csv(f, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "epsilon,emissions_tons,cost_usd,reduction_cost_usd_per_ton");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
}
