#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "h2plan/types.hpp"

namespace h2plan::assemble {

/// One capacity decision row. `existing`/`total` are MW for generation,
/// kg for HS inventories, and kg/h for the compressor columns of an HS row.
struct CapacityDecision {
    std::string region, tech;
    core::TechKind kind = core::TechKind::TU;
    double existing = 0.0, total = 0.0;           // power basis (kg for HS)
    double energy_existing = 0.0, energy_total = 0.0;  // MWh basis (storage only)
    double cop_existing = 0.0, cop_total = 0.0;        // kg/h, HS rows only
    double new_build() const { return total - existing; }
};

struct DispatchSeries {
    std::string quantity;  // dispatch|online|startup|shutdown|charge|discharge|soc|flow|heat_curtailment
    std::string region;    // `from` region for flows
    std::string tech;      // `to` region for flows; empty for heat curtailment
    std::vector<double> values;
};

struct CostBreakdown {
    // component name (tu, wt, pv, es, ec, ht, fc, hs, cop, eb, hst, line) -> $
    std::map<std::string, double> components;
    double water_cost = 0.0;        // inside the ec component
    double oxygen_revenue = 0.0;
    double hydrogen_revenue = 0.0;
    double revenue() const { return oxygen_revenue + hydrogen_revenue; }
    double total() const {
        double c = 0.0;
        for (const auto& [k, v] : components) c += v;
        return c - oxygen_revenue - hydrogen_revenue;
    }
};

struct BalanceResiduals {
    double electric_max = 0.0;   // max over (region, hour), MW
    double heat_max = 0.0;       // MW
    double hydrogen_max = 0.0;   // kg/h (system-wide per hour)
    double storage_cycle_max = 0.0;  // worst |soc wrap error|
    double peak_electric_demand = 0.0;
};

struct PlanSolution {
    std::string scenario_fingerprint;
    core::ObjectiveMode mode = core::ObjectiveMode::MinCost;
    double objective = 0.0;       // solver objective (cost $ or tons CO2)
    std::vector<CapacityDecision> capacities;
    std::vector<DispatchSeries> series;
    CostBreakdown costs;
    double co2_tons = 0.0;
    double renewable_curtailment_mwh = 0.0;
    double heat_curtailment_mwh = 0.0;
    BalanceResiduals residuals;
    // per-region hourly hydrogen net injection (EC + HS discharge - HT - FC
    // - HS charge - demand), the pipeline module's input
    std::map<std::string, std::vector<double>> hydrogen_injection;
    // per-(region,tech) generation/consumption totals for gap reports
    std::map<std::string, double> technology_totals;
    double solve_seconds = 0.0;

    const DispatchSeries* find_series(const std::string& quantity, const std::string& region,
                                      const std::string& tech) const;
};

/// Accounting identities recomputed from the extracted series (never from
/// the LP coefficients): investment + fixed O&M on capacity decisions,
/// variable and startup terms on dispatch, water/oxygen/hydrogen economics.
CostBreakdown cost_breakdown(const core::ScenarioConfig& scenario, const PlanSolution& sol);

/// Emission total from TU dispatch and per-region emission factors. Throws
/// if a technology with nonzero dispatch has no factor configured.
double co2_total(const core::ScenarioConfig& scenario, const PlanSolution& sol);

/// Balance residuals of the extracted series against the scenario data.
BalanceResiduals compute_residuals(const core::ScenarioConfig& scenario,
                                   const PlanSolution& sol);

void write_solution_csvs(const PlanSolution& sol, const std::filesystem::path& out_dir);

}  // namespace h2plan::assemble
