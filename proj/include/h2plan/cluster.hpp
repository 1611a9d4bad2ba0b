#pragma once

#include <string>
#include <vector>

#include "h2plan/lp.hpp"
#include "h2plan/types.hpp"

namespace h2plan::flex {

/// Handles of the continuous commitment variables for one clustered fleet:
/// online / startup / shutdown capacity and dispatch per hour, plus the
/// fleet's total-capacity decision.
struct ClusterVars {
    int capacity = -1;          // total MW, bounds [existing, limit]
    std::vector<int> online;    // O_t
    std::vector<int> startup;   // U_t (capacity that comes online at t)
    std::vector<int> shutdown;  // S_t (capacity that went offline at t)
    std::vector<int> dispatch;  // P_t
};

struct ClusterSpec {
    core::FlexParams flex;
    int horizon = 0;
    bool wrap = true;            // hour T couples to hour 1
    double existing_mw = 0.0;
    double capacity_limit_mw = solve::kInf;
    double initial_online_mw = 0.0;  // O_0, only used when wrap == false
    std::string name;                // deterministic variable/row name stem
};

/// Emits the clustered-commitment constraint fragment for one fleet:
/// capacity bounds, online-capacity balance, start/stop bounds, load range,
/// start/stop-hour output caps, ramp limits, and min up/down windows.
///
/// The balance is written as O_t - O_{t-1} = U_t - S_t with U = startup and
/// S = shutdown capacity; the start/stop-hour and ramp rows use the same
/// naming so that every feasible per-module binary schedule aggregates into
/// the fragment's feasible set (relaxation soundness).
ClusterVars add_cluster(solve::LinearProgram& lp, const ClusterSpec& spec);

/// Per-module exact commitment oracle (3 binaries per module-hour).
struct ModuleVars {
    // [module][hour]
    std::vector<std::vector<int>> on, start, stop, dispatch;
};

struct ModuleFleetSpec {
    core::FlexParams flex;
    int horizon = 0;
    bool wrap = true;
    double module_mw = 0.0;
    int module_count = 0;
    std::string name;
    bool symmetry_breaking = false;  // on_{j,t} >= on_{j+1,t}; identical modules only
};

ModuleVars add_module_fleet(solve::LinearProgram& lp, const ModuleFleetSpec& spec);

/// Aggregates a binary-oracle trajectory into (O, U, S, P) series.
struct AggregateTrajectory {
    std::vector<double> online, startup, shutdown, dispatch;
};
AggregateTrajectory aggregate_modules(const ModuleVars& vars, double module_mw,
                                      const std::vector<double>& x);

/// Relative-difference report between two solves of the same instance.
struct GapItem {
    std::string key;  // e.g. "generation:r1/coal" or "consumption:r1/soec"
    double relaxed = 0.0;
    double exact = 0.0;
    double rel_gap = 0.0;  // |relaxed-exact| / max(|exact|, floor)
};

struct GapReport {
    std::vector<GapItem> items;
    double max_rel_gap = 0.0;
    double objective_relaxed = 0.0;
    double objective_exact = 0.0;
    double objective_gap = 0.0;  // (exact - relaxed) / max(|exact|, 1)
    double relaxed_seconds = 0.0;
    double exact_seconds = 0.0;
};

/// Builds the report from matching key->total maps (relaxed vs exact).
/// Throws if the key sets differ (mismatched instances).
GapReport relaxation_gap(const std::vector<GapItem>& totals, double objective_relaxed,
                         double objective_exact);

}  // namespace h2plan::flex
