#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "h2plan/cluster.hpp"
#include "h2plan/lp.hpp"
#include "h2plan/solution.hpp"
#include "h2plan/types.hpp"

namespace h2plan::assemble {

enum class Quantity {
    Capacity,      // total installed (power basis; kg for HS)
    EnergyCap,     // storage energy capacity (MWh)
    CopCap,        // compressor capacity paired with an HS tech (kg/h)
    LineCap,       // corridor capacity (MW)
    Online,
    Startup,
    Shutdown,
    Dispatch,
    Charge,
    Discharge,
    Soc,
    HeatCurt,
    Flow,
};

const char* to_string(Quantity q);

struct VarKey {
    Quantity quantity = Quantity::Capacity;
    int region = -1;    // index into scenario.regions
    int tech = -1;      // index into scenario.technologies
    int hour = -1;      // 0-based, -1 for capacity decisions
    int corridor = -1;  // index into topology.corridors (Flow/LineCap)
    auto operator<=>(const VarKey&) const = default;
};

/// The assembled planning LP plus the bidirectional (quantity, region, tech,
/// hour) <-> variable-id index and the scenario fingerprint it was built
/// from.
struct PlanningModel {
    solve::LinearProgram lp;
    core::ScenarioConfig scenario;
    std::string fingerprint;
    core::ObjectiveMode mode = core::ObjectiveMode::MinCost;
    std::optional<double> emission_cap;
    std::map<VarKey, int> index;
    std::vector<VarKey> key_of;  // per variable id

    int var(const VarKey& key) const;        // -1 when absent
    int require_var(const VarKey& key) const;  // throws when absent
};

class ModelError : public std::runtime_error {
  public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Builds the full planning LP: investment and dispatch variables, chain
/// couplings, clustered commitment for TU/CHP/EC/HT/FC fleets, electric /
/// heat / hydrogen balances, renewable availability and surplus bounds,
/// storage dynamics, transmission expansion, RPS, reliability, and the
/// selected objective. `emission_cap` is required for cost-under-cap mode
/// (falls back to scenario.emission_cap).
PlanningModel build_planning_lp(const core::ScenarioConfig& scenario,
                                core::ObjectiveMode mode,
                                std::optional<double> emission_cap = std::nullopt);

/// Binary twin of the planning model for relaxation validation: committed
/// fleets become per-module 3-binary commitment blocks (sized from each
/// technology's `modules` spec; capacity must be fixed at existing), with
/// aggregate online/startup/shutdown/dispatch variables so the shared index
/// and extraction remain identical. Integrality marks route `solve` through
/// branch and bound.
PlanningModel build_exact_milp(const core::ScenarioConfig& scenario, core::ObjectiveMode mode,
                               std::optional<double> emission_cap = std::nullopt);

/// Maps an OPTIMAL primal point back onto the domain: capacities, dispatch
/// series, accounting, residuals. Throws on fingerprint/shape mismatches.
PlanSolution extract_solution(const PlanningModel& model,
                              const solve::SolveResult& result);

}  // namespace h2plan::assemble
