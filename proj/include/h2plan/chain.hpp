#pragma once

#include <stdexcept>

#include "h2plan/types.hpp"

namespace h2plan::chain {

/// kg of hydrogen per MWh of electricity at unit efficiency: 3600 / LHV.
double e2h_coefficient(double lhv_mj_per_kg);

struct ChainCoefficients {
    double beta_e2h;  // kg/MWh
    explicit ChainCoefficients(double lhv_mj_per_kg)
        : beta_e2h(e2h_coefficient(lhv_mj_per_kg)) {}
};

struct PowerHeat {
    double power_mw = 0;
    double heat_mw = 0;
};
struct MassHeat {
    double hydrogen_kg_per_h = 0;
    double heat_mw = 0;
};

/// Electrolyzer operating point: hydrogen output and recovered waste heat
/// from electric input P.
MassHeat ec_output(double power_mw, double electric_eff, double waste_heat_eff, double beta);

/// Hydrogen turbine: power and waste heat from hydrogen mass flow.
PowerHeat ht_output(double hydrogen_kg_per_h, double electric_eff, double waste_heat_eff,
                    double beta);

/// Fuel cell cogeneration, same shape as ht_output.
PowerHeat fc_output(double hydrogen_kg_per_h, double electric_eff, double waste_heat_eff,
                    double beta);

/// Surplus renewable power available for electrolysis, clamped at zero.
/// Throws if a dispatch exceeds the available generation.
double ec_surplus_bound(double wind_cf, double wind_capacity_mw, double wind_dispatch_mw,
                        double solar_cf, double solar_capacity_mw, double solar_dispatch_mw);

struct ChainEconomics {
    double water_cost_usd = 0;
    double oxygen_revenue_usd = 0;
    double hydrogen_revenue_usd = 0;
};

/// Water cost, oxygen revenue, and hydrogen sales for a production total Q
/// and a served demand mass.
ChainEconomics chain_economics(double produced_kg, double served_demand_kg,
                               const core::PriceBook& prices, double water_per_kg,
                               double oxygen_per_kg);

/// Pointwise evaluation of the storage inventory recursion: returns soc at
/// t+1 given soc at t and the hour's charge/discharge (kg).
double storage_step(double soc, double charge, double discharge,
                    const core::StorageParams& s);

}  // namespace h2plan::chain
