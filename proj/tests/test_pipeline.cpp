#include <cmath>
#include <random>

#include "doctest.h"
#include "h2plan/pipeline.hpp"
#include "mincost_oracle.hpp"

using namespace h2plan::pipeline;
using h2plan::core::HydrogenLink;
using h2plan::core::Topology;

namespace {

double max_nodal_residual(const std::map<std::string, std::vector<double>>& injections,
                          const PipelinePlan& plan) {
    double worst = 0.0;
    const int T = plan.horizon;
    for (const auto& [region, inj] : injections) {
        for (int t = 0; t < T; ++t) {
            double r = inj[t];
            for (const auto& corr : plan.corridors) {
                if (corr.to == region) r += corr.flow_kg[t];
                if (corr.from == region) r -= corr.flow_kg[t];
            }
            worst = std::max(worst, std::abs(r));
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("single region: zero flows, zero objective") {
    std::map<std::string, std::vector<double>> inj = {{"only", {0.0, 0.0, 0.0}}};
    Topology topo;
    auto plan = plan_pipelines(inj, topo);
    CHECK(plan.objective_kg_km == 0.0);
    CHECK(plan.corridors.empty());
}

TEST_CASE("two regions, one transfer hour") {
    std::map<std::string, std::vector<double>> inj = {{"a", {10.0, 0.0}}, {"b", {-10.0, 0.0}}};
    Topology topo;
    topo.hydrogen_adjacency = {{"a", "b", 100.0}};
    auto plan = plan_pipelines(inj, topo);
    REQUIRE(plan.corridors.size() == 1);
    CHECK(plan.corridors[0].flow_kg[0] == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(plan.corridors[0].flow_kg[1] == doctest::Approx(0.0));
    CHECK(plan.objective_kg_km == doctest::Approx(1000.0).epsilon(1e-9));
    CHECK(plan.corridors[0].capacity_kg_per_h == doctest::Approx(10.0));
    CHECK(max_nodal_residual(inj, plan) <= 1e-9);
}

TEST_CASE("triangle prefers the direct corridor") {
    // A-B 100 km direct beats A-C-B at 150 km
    std::map<std::string, std::vector<double>> inj = {
        {"a", {10.0}}, {"b", {-10.0}}, {"c", {0.0}}};
    Topology topo;
    topo.hydrogen_adjacency = {{"a", "b", 100.0}, {"a", "c", 100.0}, {"c", "b", 50.0}};
    auto plan = plan_pipelines(inj, topo);
    CHECK(plan.objective_kg_km == doctest::Approx(1000.0).epsilon(1e-7));
    CHECK(max_nodal_residual(inj, plan) <= 1e-9);
    const double oracle = h2plan::testing::mincost_flow_oracle(inj, topo);
    CHECK(plan.objective_kg_km == doctest::Approx(oracle).epsilon(1e-7));
}

TEST_CASE("detour wins when the direct link is long") {
    std::map<std::string, std::vector<double>> inj = {
        {"a", {10.0}}, {"b", {-10.0}}, {"c", {0.0}}};
    Topology topo;
    topo.hydrogen_adjacency = {{"a", "b", 400.0}, {"a", "c", 100.0}, {"c", "b", 50.0}};
    auto plan = plan_pipelines(inj, topo);
    CHECK(plan.objective_kg_km == doctest::Approx(1500.0).epsilon(1e-7));
}

TEST_CASE("imbalanced injections are a hard error naming the hour") {
    std::map<std::string, std::vector<double>> inj = {{"a", {10.0, 5.0}}, {"b", {-10.0, 0.0}}};
    Topology topo;
    topo.hydrogen_adjacency = {{"a", "b", 100.0}};
    CHECK_THROWS_WITH_AS(plan_pipelines(inj, topo), doctest::Contains("hour 2"),
                         PipelineError);
}

TEST_CASE("random instances match the min-cost-flow oracle") {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> amt(0.0, 100.0), len(20.0, 500.0);
    std::uniform_int_distribution<int> nhours(1, 24);
    const std::vector<std::vector<HydrogenLink>> topologies = {
        {{"a", "b", 0}, {"b", "c", 0}},                                  // path
        {{"a", "b", 0}, {"b", "c", 0}, {"a", "c", 0}},                   // triangle
        {{"a", "b", 0}, {"b", "c", 0}, {"c", "d", 0}, {"a", "d", 0}},    // ring
        {{"a", "b", 0}, {"a", "c", 0}, {"a", "d", 0}},                   // star
    };
    for (int trial = 0; trial < 25; ++trial) {
        auto links = topologies[trial % topologies.size()];
        Topology topo;
        for (auto& l : links) {
            l.length_km = len(rng);
            topo.hydrogen_adjacency.push_back(l);
        }
        const int nreg = links.back().to == "d" || links.back().from == "d" ? 4 : 3;
        std::vector<std::string> regions = {"a", "b", "c", "d"};
        regions.resize(nreg);
        const int T = nhours(rng);
        std::map<std::string, std::vector<double>> inj;
        for (const auto& r : regions) inj[r] = std::vector<double>(T, 0.0);
        for (int t = 0; t < T; ++t) {
            double sum = 0.0;
            for (int r = 0; r + 1 < nreg; ++r) {
                const double v = amt(rng) - 50.0;
                inj[regions[r]][t] = v;
                sum += v;
            }
            inj[regions[nreg - 1]][t] = -sum;
        }
        auto plan = plan_pipelines(inj, topo);
        const double oracle = h2plan::testing::mincost_flow_oracle(inj, topo);
        CHECK_MESSAGE(plan.objective_kg_km ==
                          doctest::Approx(oracle).epsilon(1e-6),
                      "trial ", trial);
        CHECK_MESSAGE(max_nodal_residual(inj, plan) <= 1e-9, "trial ", trial);
    }
}

TEST_CASE("transport cost worked example and linearity") {
    // 1,000 t over a 100 km corridor at 2.484 $/km/GWh and LHV 120 MJ/kg
    PipelinePlan plan;
    CorridorPlan corr;
    corr.from = "a";
    corr.to = "b";
    corr.length_km = 100.0;
    corr.flow_kg.assign(10, 100000.0);  // 1e6 kg total
    corr.capacity_kg_per_h = 100000.0;
    plan.corridors.push_back(corr);
    plan.horizon = 10;
    const double cost = pipeline_cost(plan, 2.484, 120.0);
    CHECK(cost == doctest::Approx(8280.0).epsilon(1.0 / 8280.0));
    CHECK(pipeline_cost(plan, 2.484, 120.0) * 2.0 ==
          doctest::Approx([&] {
              auto doubled = plan;
              for (auto& c : doubled.corridors)
                  for (auto& f : c.flow_kg) f *= 2.0;
              return pipeline_cost(doubled, 2.484, 120.0);
          }()).epsilon(1e-12));
    PipelinePlan empty;
    CHECK(pipeline_cost(empty, 2.484, 120.0) == 0.0);
}
