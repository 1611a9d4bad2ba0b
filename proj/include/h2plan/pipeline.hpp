#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "h2plan/solution.hpp"
#include "h2plan/types.hpp"

namespace h2plan::pipeline {

struct CorridorPlan {
    std::string from, to;
    double length_km = 0.0;
    std::vector<double> flow_kg;   // signed, positive from -> to
    double capacity_kg_per_h = 0.0;  // max_t |flow|
};

struct PipelinePlan {
    std::vector<CorridorPlan> corridors;
    double objective_kg_km = 0.0;  // sum_t sum_c length * |flow|
    double transport_cost_usd = 0.0;
    int horizon = 0;
};

class PipelineError : public std::runtime_error {
  public:
    explicit PipelineError(const std::string& what) : std::runtime_error(what) {}
};

/// Allocates the pooled hydrogen balance to the network: minimizes
/// sum length * |flow| subject to the per-region hourly nodal balance, with
/// |flow| split into two signed parts. All hours solve as one stacked LP;
/// a spanning-tree repair pass then zeroes the nodal residuals exactly.
/// Throws when an hour's injections cannot balance (sum != 0) or a network
/// component is isolated with nonzero imbalance.
PipelinePlan plan_pipelines(const std::map<std::string, std::vector<double>>& injections,
                            const core::Topology& topology);

/// plan_pipelines from a solved planning run.
PipelinePlan plan_pipelines(const assemble::PlanSolution& solution,
                            const core::Topology& topology);

/// rate in $/(km*GWh); energy from mass via the hydrogen LHV.
double pipeline_cost(const PipelinePlan& plan, double rate_usd_per_km_gwh,
                     double lhv_mj_per_kg);

/// Bundled transport tariff.
inline constexpr double kDefaultTransportRate = 2.484;  // $/(km*GWh)

void write_pipeline_csvs(const PipelinePlan& plan, const std::filesystem::path& out_dir);

}  // namespace h2plan::pipeline
