#pragma once

#include <exception>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "h2plan/units.hpp"

namespace h2plan::core {

enum class TechKind {
    TU,    // conventional thermal unit (coal / gas classes)
    CHP,   // combined heat and power thermal unit
    WT,    // wind turbine
    PV,    // photovoltaic
    BES,   // battery storage
    HPS,   // pumped hydro storage
    EC,    // electrolysis cell
    HT,    // hydrogen-fired turbine
    FC,    // fuel cell
    HS,    // hydrogen storage (tank or cavern), capacity in kg
    COP,   // hydrogen compressor, capacity in kg/h
    EB,    // electric boiler
    HST,   // heat storage tank
    Line,  // transmission line (topology-owned; not listed per region)
};

const char* to_string(TechKind k);
std::optional<TechKind> tech_kind_from_string(const std::string& s);

/// Fleets whose hourly on/off behaviour is modelled with online/start/stop
/// capacity variables.
bool is_committed_kind(TechKind k);
bool is_storage_kind(TechKind k);

/// Annual payment per unit of capital at `rate` over `lifetime_years`
/// (capital recovery factor). rate == 0 degenerates to straight-line.
double amortized_cost(double capital, int lifetime_years, double rate);

struct CostParams {
    double capital = 0.0;            // $/MW ($/kg for HS, $/(kg/h) for COP)
    double fixed_om_fraction = 0.0;  // fraction of capital per year
    double variable_om = 0.0;        // $/MWh dispatched
    double startup_cost = 0.0;       // $/MW of started capacity
    int lifetime_years = 1;
    double interest_rate = 0.07;

    double annualized_capital() const {
        return amortized_cost(capital, lifetime_years, interest_rate);
    }
    double fixed_om_per_year() const { return fixed_om_fraction * capital; }
};

struct FlexParams {
    double min_load = 0.0;       // fraction of online capacity
    double max_load = 1.0;
    double ramp_up = 1.0;        // fraction of online capacity per hour
    double ramp_down = 1.0;
    double startup_ramp = 1.0;   // output cap in the first online hour
    double shutdown_ramp = 1.0;  // output cap in the last online hour
    int min_up_hours = 1;
    int min_down_hours = 1;
    // Online capacity at t=0 when the horizon does not wrap, as a fraction
    // of existing capacity. Unset: 1.0 for TU/CHP fleets, 0.0 otherwise.
    std::optional<double> initial_online_fraction;
};

struct ConversionParams {
    double electric_eff = 1.0;     // eta_e
    double waste_heat_eff = 0.0;   // eta_h, applied to (1 - eta_e)
    double water_per_kg_h2 = 0.0;  // kg water per kg H2 (EC)
    double oxygen_per_kg_h2 = 0.0; // kg O2 per kg H2 (EC)
    double cop_mwh_per_kg = 0.0;   // compressor specific energy, MWh/kg moved
    double chp_heat_eff = 0.0;     // eta_h of CHP; heat = P * eta_h / eta_e
};

struct StorageParams {
    double charge_eff = 1.0;
    double discharge_eff = 1.0;
    double loss_rate = 0.0;          // per-hour fraction of inventory
    double energy_capital = 0.0;     // $/MWh (BES/HPS/HST); HS uses cost.capital in $/kg
    double existing_duration_h = 0;  // existing energy = existing power x duration
};

/// Module sizing for the exact binary commitment oracle. Only consulted by
/// the relaxation-validation path; the planning LP never sees modules.
struct ModuleSpec {
    double module_mw = 0.0;
    int module_count = 0;
};

struct TechnologySpec {
    std::string id;
    TechKind kind = TechKind::TU;
    CostParams cost;
    std::optional<FlexParams> flex;      // TU/CHP/EC/HT/FC only
    ConversionParams conv;
    std::optional<StorageParams> storage;  // BES/HPS/HS/HST only
    std::optional<ModuleSpec> modules;
};

struct RegionSpec {
    std::string id;
    std::vector<double> electric_demand;  // MW, length T
    std::vector<double> export_demand;    // MW
    std::vector<double> heat_demand;      // MW
    std::vector<double> hydrogen_demand;  // kg/h
    std::vector<double> wind_cf;          // [0,1]
    std::vector<double> solar_cf;         // [0,1]
    std::map<std::string, double> existing_capacity;  // tech id -> MW (kg for HS, kg/h for COP)
    std::map<std::string, double> build_limit;        // tech id -> cap on total capacity
    std::map<std::string, double> fuel_prices;        // $/native unit, informational
    std::map<std::string, double> emission_factors;   // TU tech id -> ton CO2 / MWh
};

struct Corridor {
    std::string from, to;
    double length_km = 0.0;
    double existing_mw = 0.0;
    double limit_mw = 0.0;
    double capital_per_mw = 0.0;  // $/MW of new capacity
    int lifetime_years = 40;
    double interest_rate = 0.07;
};

struct HydrogenLink {
    std::string from, to;
    double length_km = 0.0;
};

struct Topology {
    std::vector<Corridor> corridors;
    std::vector<HydrogenLink> hydrogen_adjacency;
};

struct PriceBook {
    double water_usd_per_kg = 0.01;
    double oxygen_usd_per_kg = 0.04;
    double hydrogen_usd_per_kg = 2.0;
    double cny_per_usd = units::kDefaultCnyPerUsd;
};

struct ReservePolicy {
    double demand_reserve_fraction = 0.05;  // re_d as a fraction of hourly demand
    double wind_error = 0.10;               // e_WT
    double solar_error = 0.05;              // e_PV
    // Firm-capacity credit series for wind/solar; unset means equal-to-CF.
    std::optional<std::vector<double>> wind_credit;
    std::optional<std::vector<double>> solar_credit;
    std::string es_reserve_rule = "discharge-headroom";
};

enum class ObjectiveMode { MinCost, MinCo2, CostUnderCap };

const char* to_string(ObjectiveMode m);
std::optional<ObjectiveMode> objective_mode_from_string(const std::string& s);

struct ScenarioConfig {
    int schema_version = 1;
    std::string name;
    int horizon_hours = 0;  // T
    std::vector<RegionSpec> regions;
    std::vector<TechnologySpec> technologies;
    Topology topology;
    std::optional<double> rps_gamma;      // Gamma in [0,1]
    std::optional<double> emission_cap;   // tons CO2 over the horizon
    ObjectiveMode objective_mode = ObjectiveMode::MinCost;
    PriceBook price_book;
    ReservePolicy reserve_policy;
    std::set<TechKind> chain_ablation;    // kinds removed from the build
    double lhv_mj_per_kg = units::kDefaultLhvMjPerKg;
    bool commitment_wrap = true;          // hour T couples to hour 1

    const TechnologySpec* find_tech(const std::string& id) const;
    const RegionSpec* find_region(const std::string& id) const;
    int region_index(const std::string& id) const;  // -1 when absent
    bool ablated(TechKind k) const { return chain_ablation.count(k) > 0; }
};

struct Diagnostic {
    std::string path;     // e.g. "regions[1].wind_cf[17]"
    std::string message;
};

/// Checks every type invariant and cross reference. Empty result = valid.
/// Values are already canonical by the time a ScenarioConfig exists, so
/// validation never mutates; it is idempotent by construction.
std::vector<Diagnostic> validate_scenario(const ScenarioConfig& config);

/// Throwing wrapper used by the pipelines that require a valid scenario.
class ScenarioError : public std::exception {
  public:
    explicit ScenarioError(std::vector<Diagnostic> diags);
    const char* what() const noexcept override { return summary_.c_str(); }
    const std::vector<Diagnostic>& diagnostics() const { return diags_; }

  private:
    std::vector<Diagnostic> diags_;
    std::string summary_;
};

void require_valid(const ScenarioConfig& config);

}  // namespace h2plan::core
