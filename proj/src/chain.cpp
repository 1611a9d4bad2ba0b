#include "h2plan/chain.hpp"

#include <algorithm>
#include <cmath>

namespace h2plan::chain {

double e2h_coefficient(double lhv_mj_per_kg) {
    if (!(lhv_mj_per_kg > 0.0))
        throw std::invalid_argument("LHV must be positive");
    return 3600.0 / lhv_mj_per_kg;
}

MassHeat ec_output(double power_mw, double electric_eff, double waste_heat_eff, double beta) {
    MassHeat out;
    out.hydrogen_kg_per_h = beta * electric_eff * power_mw;
    out.heat_mw = waste_heat_eff * (1.0 - electric_eff) * power_mw;
    return out;
}

PowerHeat ht_output(double hydrogen_kg_per_h, double electric_eff, double waste_heat_eff,
                    double beta) {
    PowerHeat out;
    const double energy_mwh = hydrogen_kg_per_h / beta;
    out.power_mw = electric_eff * energy_mwh;
    out.heat_mw = waste_heat_eff * (1.0 - electric_eff) * energy_mwh;
    return out;
}

PowerHeat fc_output(double hydrogen_kg_per_h, double electric_eff, double waste_heat_eff,
                    double beta) {
    return ht_output(hydrogen_kg_per_h, electric_eff, waste_heat_eff, beta);
}

double ec_surplus_bound(double wind_cf, double wind_capacity_mw, double wind_dispatch_mw,
                        double solar_cf, double solar_capacity_mw, double solar_dispatch_mw) {
    const double wind_avail = wind_cf * wind_capacity_mw;
    const double solar_avail = solar_cf * solar_capacity_mw;
    const double tol = 1e-9 * (1.0 + wind_avail + solar_avail);
    if (wind_dispatch_mw > wind_avail + tol || solar_dispatch_mw > solar_avail + tol)
        throw std::invalid_argument("renewable dispatch exceeds available generation");
    return std::max(0.0, (wind_avail - wind_dispatch_mw) + (solar_avail - solar_dispatch_mw));
}

ChainEconomics chain_economics(double produced_kg, double served_demand_kg,
                               const core::PriceBook& prices, double water_per_kg,
                               double oxygen_per_kg) {
    ChainEconomics out;
    out.water_cost_usd = water_per_kg * prices.water_usd_per_kg * produced_kg;
    out.oxygen_revenue_usd = oxygen_per_kg * prices.oxygen_usd_per_kg * produced_kg;
    out.hydrogen_revenue_usd = prices.hydrogen_usd_per_kg * served_demand_kg;
    return out;
}

double storage_step(double soc, double charge, double discharge,
                    const core::StorageParams& s) {
    return soc + s.charge_eff * charge - discharge / s.discharge_eff - s.loss_rate * soc;
}

}  // namespace h2plan::chain
