#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "h2plan/model.hpp"
#include "h2plan/solution.hpp"

namespace h2plan::pareto {

struct ParetoOptions {
    int n_points = 8;
    double augmentation_weight = 1e-6;  // slack reward relative to cost scale
    bool log_spaced = false;            // epsilon grid spacing
    solve::SolveOptions solver;
};

struct ParetoPoint {
    double epsilon = 0.0;        // emission cap for this solve (tons)
    double emissions = 0.0;      // achieved tons
    double cost = 0.0;           // total cost $
    double reduction_cost = 0.0; // $/ton vs the min-CO2 anchor; NaN at the anchor
    bool feasible = true;
    assemble::PlanSolution solution;  // populated for feasible points
};

struct Anchors {
    assemble::PlanSolution min_cost;
    assemble::PlanSolution min_co2;  // lexicographic: min CO2, then min cost
    double lexicographic_cap = 0.0;  // emission cap used for the second stage
};

struct ParetoFrontier {
    Anchors anchors;
    std::vector<ParetoPoint> points;  // sorted by emissions descending
    int infeasible_points = 0;
};

/// Two single-objective solves. The min-CO2 anchor re-minimizes cost at the
/// optimal emission level so the frontier endpoint is efficient.
Anchors compute_anchors(const core::ScenarioConfig& scenario,
                        const solve::SolveOptions& options = {});

/// Improved epsilon-constraint frontier: a grid of emission caps between the
/// anchors, each solved as cost-under-cap with a slack-augmented objective
/// so weakly dominated points are avoided. Infeasible grid points are
/// reported, never dropped.
ParetoFrontier frontier(const core::ScenarioConfig& scenario,
                        const ParetoOptions& options = {});

/// `epsilon,emissions_tons,cost_usd,reduction_cost_usd_per_ton` rows.
void write_frontier_csv(const ParetoFrontier& frontier, const std::filesystem::path& path);

}  // namespace h2plan::pareto
