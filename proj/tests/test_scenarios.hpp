// Shared scenario builders for the test suites. Everything here is
// constructed in code so tests do not depend on bundled files.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "h2plan/types.hpp"

namespace h2plan::testing {

using namespace h2plan::core;

inline TechnologySpec make_tu(const std::string& id = "coal") {
    TechnologySpec t;
    t.id = id;
    t.kind = TechKind::TU;
    t.cost.capital = 800e3;  // $/MW
    t.cost.fixed_om_fraction = 0.03;
    t.cost.variable_om = 30.0;
    t.cost.startup_cost = 50.0;
    t.cost.lifetime_years = 30;
    FlexParams f;
    f.min_load = 0.4;
    f.max_load = 1.0;
    f.ramp_up = 0.5;
    f.ramp_down = 0.5;
    f.startup_ramp = 0.5;
    f.shutdown_ramp = 0.5;
    f.min_up_hours = 2;
    f.min_down_hours = 2;
    t.flex = f;
    return t;
}

inline TechnologySpec make_wt() {
    TechnologySpec t;
    t.id = "wt";
    t.kind = TechKind::WT;
    t.cost.capital = 750e3;
    t.cost.fixed_om_fraction = 0.025;
    t.cost.lifetime_years = 25;
    return t;
}

inline TechnologySpec make_pv() {
    TechnologySpec t;
    t.id = "pv";
    t.kind = TechKind::PV;
    t.cost.capital = 500e3;
    t.cost.fixed_om_fraction = 0.02;
    t.cost.lifetime_years = 25;
    return t;
}

inline TechnologySpec make_soec() {
    TechnologySpec t;
    t.id = "soec";
    t.kind = TechKind::EC;
    t.cost.capital = 750e3;
    t.cost.fixed_om_fraction = 0.03;
    t.cost.lifetime_years = 20;
    FlexParams f;
    f.min_load = 0.0;
    f.max_load = 1.0;
    f.ramp_up = 0.3;
    f.ramp_down = 0.3;
    f.startup_ramp = 0.3;
    f.shutdown_ramp = 0.3;
    f.min_up_hours = 2;
    f.min_down_hours = 2;
    t.flex = f;
    t.conv.electric_eff = 0.835;
    t.conv.waste_heat_eff = 0.8;
    t.conv.water_per_kg_h2 = 9.0;
    t.conv.oxygen_per_kg_h2 = 8.0;
    return t;
}

/// Minimal valid scenario: one region, one TU, flat demand.
inline ScenarioConfig tiny_scenario(int T = 2) {
    ScenarioConfig cfg;
    cfg.name = "tiny";
    cfg.horizon_hours = T;
    cfg.technologies = {make_tu()};
    RegionSpec r;
    r.id = "r1";
    r.electric_demand.assign(static_cast<size_t>(T), 100.0);
    r.export_demand.assign(static_cast<size_t>(T), 0.0);
    r.heat_demand.assign(static_cast<size_t>(T), 0.0);
    r.hydrogen_demand.assign(static_cast<size_t>(T), 0.0);
    r.wind_cf.assign(static_cast<size_t>(T), 0.0);
    r.solar_cf.assign(static_cast<size_t>(T), 0.0);
    r.existing_capacity["coal"] = 200.0;
    r.build_limit["coal"] = 400.0;
    r.emission_factors["coal"] = 0.85;
    cfg.regions = {r};
    return cfg;
}

}  // namespace h2plan::testing

// ---------------------------------------------------------------------------
// Full-chain technology set and the two-region desk instance. Parameter
// values follow the bundled technology library (data/technologies.json).

namespace h2plan::testing {

inline TechnologySpec make_chp() {
    TechnologySpec t;
    t.id = "chp";
    t.kind = TechKind::CHP;
    t.cost.capital = 900e3;
    t.cost.fixed_om_fraction = 0.03;
    t.cost.variable_om = 35.0;
    t.cost.startup_cost = 100.0;
    t.cost.lifetime_years = 30;
    FlexParams f;
    f.min_load = 0.4;
    f.max_load = 1.0;
    f.ramp_up = 0.5;
    f.ramp_down = 0.5;
    f.startup_ramp = 0.5;
    f.shutdown_ramp = 0.5;
    f.min_up_hours = 4;
    f.min_down_hours = 2;
    t.flex = f;
    t.conv.electric_eff = 0.45;
    t.conv.chp_heat_eff = 0.30;
    return t;
}

inline TechnologySpec make_bes() {
    TechnologySpec t;
    t.id = "bes";
    t.kind = TechKind::BES;
    t.cost.capital = 100e3;       // $/MW power block
    t.cost.variable_om = 1.0;     // $/MWh throughput
    t.cost.lifetime_years = 15;
    StorageParams s;
    s.charge_eff = 0.95;
    s.discharge_eff = 0.95;
    s.loss_rate = 0.0;
    s.energy_capital = 120e3;     // $/MWh
    s.existing_duration_h = 4.0;
    t.storage = s;
    return t;
}

inline TechnologySpec make_hps() {
    TechnologySpec t;
    t.id = "hps";
    t.kind = TechKind::HPS;
    t.cost.capital = 1200e3;
    t.cost.variable_om = 0.5;
    t.cost.lifetime_years = 40;
    StorageParams s;
    s.charge_eff = 0.9;
    s.discharge_eff = 0.9;
    s.loss_rate = 0.0;
    s.energy_capital = 10e3;
    s.existing_duration_h = 8.0;
    t.storage = s;
    return t;
}

inline TechnologySpec make_aec() {
    TechnologySpec t = make_soec();
    t.id = "aec";
    t.cost.capital = 450e3;
    t.cost.fixed_om_fraction = 0.05;
    t.cost.lifetime_years = 25;
    t.flex->min_load = 0.2;
    t.flex->ramp_up = t.flex->ramp_down = 0.5;
    t.flex->startup_ramp = t.flex->shutdown_ramp = 0.5;
    t.flex->min_up_hours = t.flex->min_down_hours = 1;
    t.conv.electric_eff = 0.75;
    return t;
}

inline TechnologySpec make_ht(const std::string& id = "ht_l") {
    TechnologySpec t;
    t.id = id;
    t.kind = TechKind::HT;
    t.cost.capital = 524e3;  // L size
    t.cost.fixed_om_fraction = 0.024;
    t.cost.variable_om = 2.0;   // $0.002/kWh
    t.cost.startup_cost = 88.0; // $0.088/kW
    t.cost.lifetime_years = 25;
    FlexParams f;
    f.min_load = 0.4;
    f.max_load = 1.0;
    f.ramp_up = 0.5;
    f.ramp_down = 0.5;
    f.startup_ramp = 0.5;
    f.shutdown_ramp = 0.5;
    f.min_up_hours = 6;
    f.min_down_hours = 2;  // desk variant keeps windows short of the horizon
    t.flex = f;
    t.conv.electric_eff = 0.6;
    t.conv.waste_heat_eff = 0.8;
    return t;
}

inline TechnologySpec make_pemfc() {
    TechnologySpec t;
    t.id = "pemfc";
    t.kind = TechKind::FC;
    t.cost.capital = 660e3;
    t.cost.fixed_om_fraction = 0.05;
    t.cost.lifetime_years = 20;
    FlexParams f;
    f.min_load = 0.05;
    f.max_load = 1.0;
    f.ramp_up = 1.0;
    f.ramp_down = 1.0;
    f.startup_ramp = 1.0;
    f.shutdown_ramp = 1.0;
    f.min_up_hours = 1;
    f.min_down_hours = 1;
    t.flex = f;
    t.conv.electric_eff = 0.57;
    t.conv.waste_heat_eff = 0.9;
    return t;
}

inline TechnologySpec make_cavern() {
    TechnologySpec t;
    t.id = "cavern";
    t.kind = TechKind::HS;
    t.cost.capital = 4.5;  // $/kg
    t.cost.fixed_om_fraction = 0.02;
    t.cost.lifetime_years = 30;
    StorageParams s;
    s.charge_eff = 0.95;
    s.discharge_eff = 1.0;
    s.loss_rate = 0.0;
    t.storage = s;
    return t;
}

inline TechnologySpec make_cop() {
    TechnologySpec t;
    t.id = "cop";
    t.kind = TechKind::COP;
    t.cost.capital = 360.0;  // $/(kg/h)
    t.cost.fixed_om_fraction = 0.02;
    t.cost.lifetime_years = 15;
    t.conv.cop_mwh_per_kg = 0.0015;  // 1.5 kWh/kg
    return t;
}

inline TechnologySpec make_eb() {
    TechnologySpec t;
    t.id = "eb";
    t.kind = TechKind::EB;
    t.cost.capital = 125e3;
    t.cost.fixed_om_fraction = 0.012;
    t.cost.lifetime_years = 20;
    t.conv.electric_eff = 0.99;
    return t;
}

inline TechnologySpec make_hst() {
    TechnologySpec t;
    t.id = "hst";
    t.kind = TechKind::HST;
    t.cost.capital = 25e3;
    t.cost.fixed_om_fraction = 0.02;
    t.cost.lifetime_years = 20;
    StorageParams s;
    s.charge_eff = 0.9;
    s.discharge_eff = 1.0;
    s.loss_rate = 0.0;
    s.energy_capital = 3e3;  // $/MWh, bundled default
    s.existing_duration_h = 8.0;
    t.storage = s;
    return t;
}

/// Two-region full-chain desk instance with deterministic synthetic series:
/// wind-rich "north" exporting to load-heavy, solar-rich "south".
inline ScenarioConfig desk_scenario(int T = 48) {
    ScenarioConfig cfg;
    cfg.name = "desk2";
    cfg.horizon_hours = T;
    auto coal = make_tu("coal");
    coal.flex->min_up_hours = 4;
    coal.flex->min_down_hours = 4;
    cfg.technologies = {coal,        make_chp(), make_wt(),  make_pv(),
                        make_bes(),  make_soec(), make_ht(), make_pemfc(),
                        make_cavern(), make_cop(), make_eb(), make_hst()};

    auto series = [&](auto f) {
        std::vector<double> out(static_cast<size_t>(T));
        for (int t = 0; t < T; ++t) out[static_cast<size_t>(t)] = f(t);
        return out;
    };
    const double pi = 3.14159265358979323846;
    const int days = std::max(T / 24, 1);
    auto clampd = [](double v, double lo, double hi) { return std::min(std::max(v, lo), hi); };

    RegionSpec north;
    north.id = "north";
    north.electric_demand = series([&](int t) {
        const int h = t % 24, d = t / 24;
        return 600.0 * (1.0 + 0.22 * std::sin(2 * pi * (h - 15) / 24.0) +
                        0.05 * std::sin(2 * pi * d / days));
    });
    north.export_demand = series([&](int) { return 80.0; });
    north.heat_demand = series([&](int t) {
        const int h = t % 24, d = t / 24;
        return 260.0 + 130.0 * std::cos(2 * pi * h / 24.0) +
               40.0 * std::sin(2 * pi * d / days);
    });
    north.hydrogen_demand = series([&](int) { return 500.0; });
    north.wind_cf = series([&](int t) {
        const int h = t % 24;
        return clampd(0.45 + 0.28 * std::sin(2 * pi * (h + 6) / 24.0) +
                          0.12 * std::sin(2 * pi * t / 37.0),
                      0.08, 0.95);
    });
    north.solar_cf = series([&](int t) {
        const int h = t % 24;
        return h >= 6 && h <= 18 ? 0.6 * std::sin(pi * (h - 6) / 12.0) : 0.0;
    });
    north.existing_capacity = {{"coal", 500}, {"chp", 350},  {"wt", 600},
                               {"pv", 100},   {"bes", 60}};
    north.build_limit = {{"coal", 600},  {"chp", 420},    {"wt", 6000}, {"pv", 2000},
                         {"bes", 3000},  {"soec", 2500},  {"ht_l", 2500},
                         {"pemfc", 2500}, {"cavern", 2e6}, {"cop", 6e4},
                         {"eb", 2500},   {"hst", 2000}};
    north.emission_factors = {{"coal", 0.85}, {"chp", 0.75}};
    north.fuel_prices = {{"coal_usd_per_ton", 37.3}};

    RegionSpec south;
    south.id = "south";
    south.electric_demand = series([&](int t) {
        const int h = t % 24;
        return 900.0 * (1.0 + 0.25 * std::sin(2 * pi * (h - 14) / 24.0));
    });
    south.export_demand = series([&](int) { return 0.0; });
    south.heat_demand = series([&](int t) {
        const int h = t % 24;
        return 160.0 + 80.0 * std::cos(2 * pi * h / 24.0);
    });
    south.hydrogen_demand = series([&](int) { return 400.0; });
    south.wind_cf = series([&](int t) {
        const int h = t % 24;
        return clampd(0.22 + 0.18 * std::sin(2 * pi * (h + 8) / 24.0) +
                          0.10 * std::sin(2 * pi * t / 29.0 + 1.0),
                      0.05, 0.80);
    });
    south.solar_cf = series([&](int t) {
        const int h = t % 24;
        return h >= 6 && h <= 18 ? 0.75 * std::sin(pi * (h - 6) / 12.0) : 0.0;
    });
    south.existing_capacity = {{"coal", 900}, {"chp", 450}, {"wt", 200},
                               {"pv", 300},   {"bes", 60}};
    south.build_limit = {{"coal", 1080}, {"chp", 540},    {"wt", 2500}, {"pv", 6000},
                         {"bes", 3000},  {"soec", 2500},  {"ht_l", 2500},
                         {"pemfc", 2500}, {"cavern", 2e6}, {"cop", 6e4},
                         {"eb", 2500},   {"hst", 2000}};
    south.emission_factors = {{"coal", 0.85}, {"chp", 0.75}};
    south.fuel_prices = {{"coal_usd_per_ton", 80.3}};

    cfg.regions = {north, south};
    cfg.topology.corridors = {{"north", "south", 300.0, 300.0, 2500.0, 120e3, 40, 0.07}};
    cfg.topology.hydrogen_adjacency = {{"north", "south", 300.0}};
    return cfg;
}

}  // namespace h2plan::testing

namespace h2plan::testing {

/// Dispatch-only two-region, 96-hour instance with 2-module committed
/// fleets, used to compare the clustered relaxation against the exact
/// per-module commitment. Every capacity is fixed at its existing value.
inline ScenarioConfig validation_scenario(int T = 96) {
    ScenarioConfig cfg;
    cfg.name = "validate96";
    cfg.horizon_hours = T;

    auto coal = make_tu("coal");
    coal.flex->min_load = 0.5;
    coal.flex->ramp_up = coal.flex->ramp_down = 0.3;
    coal.flex->startup_ramp = coal.flex->shutdown_ramp = 0.5;
    coal.flex->min_up_hours = 8;
    coal.flex->min_down_hours = 8;
    coal.cost.variable_om = 32.0;
    coal.cost.startup_cost = 1500.0;
    coal.modules = ModuleSpec{250.0, 2};

    auto soec = make_soec();
    soec.flex->min_up_hours = 2;
    soec.flex->min_down_hours = 2;
    soec.modules = ModuleSpec{60.0, 2};

    auto ht = make_ht("ht_l");
    ht.flex->min_load = 0.45;
    ht.flex->min_up_hours = 5;
    ht.flex->min_down_hours = 4;
    ht.cost.startup_cost = 600.0;
    ht.modules = ModuleSpec{50.0, 2};

    auto fc = make_pemfc();
    fc.modules = ModuleSpec{25.0, 2};

    cfg.technologies = {coal, soec, ht,          fc,         make_wt(),
                        make_pv(), make_bes(),   make_cavern(), make_cop(),
                        make_eb(), make_hst()};

    auto series = [&](auto f) {
        std::vector<double> out(static_cast<size_t>(T));
        for (int t = 0; t < T; ++t) out[static_cast<size_t>(t)] = f(t);
        return out;
    };
    const double pi = 3.14159265358979323846;

    RegionSpec north;
    north.id = "north";
    north.electric_demand = series([&](int t) {
        const int h = t % 24;
        return 360.0 + 110.0 * std::sin(2 * pi * (h - 15) / 24.0) +
               12.0 * std::sin(2 * pi * t / 31.0);
    });
    north.export_demand = series([&](int) { return 40.0; });
    north.heat_demand = series([&](int t) {
        const int h = t % 24;
        return 110.0 + 55.0 * std::cos(2 * pi * h / 24.0);
    });
    north.hydrogen_demand = series([&](int) { return 200.0; });
    north.wind_cf = series([&](int t) {
        const int h = t % 24;
        const double v = 0.5 + 0.3 * std::sin(2 * pi * (h + 6) / 24.0) +
                         0.10 * std::sin(2 * pi * t / 41.0 + 0.7);
        return std::min(std::max(v, 0.1), 0.95);
    });
    north.solar_cf = series([&](int t) {
        const int h = t % 24;
        return h >= 6 && h <= 18 ? 0.55 * std::sin(pi * (h - 6) / 12.0) : 0.0;
    });
    north.existing_capacity = {{"coal", 500}, {"soec", 120}, {"wt", 900},
                               {"bes", 150},  {"cavern", 60000}, {"cop", 4000},
                               {"eb", 350},   {"hst", 150}};
    north.build_limit = north.existing_capacity;
    north.build_limit["hst"] = 150;
    north.emission_factors = {{"coal", 0.85}};

    RegionSpec south;
    south.id = "south";
    south.electric_demand = series([&](int t) {
        const int h = t % 24;
        return 330.0 + 100.0 * std::sin(2 * pi * (h - 14) / 24.0);
    });
    south.export_demand = series([&](int) { return 0.0; });
    south.heat_demand = series([&](int t) {
        const int h = t % 24;
        return 70.0 + 35.0 * std::cos(2 * pi * h / 24.0);
    });
    south.hydrogen_demand = series([&](int) { return 120.0; });
    south.wind_cf = series([&](int t) {
        const int h = t % 24;
        const double v = 0.25 + 0.15 * std::sin(2 * pi * (h + 8) / 24.0) +
                         0.08 * std::sin(2 * pi * t / 29.0 + 1.0);
        return std::min(std::max(v, 0.05), 0.8);
    });
    south.solar_cf = series([&](int t) {
        const int h = t % 24;
        return h >= 6 && h <= 18 ? 0.7 * std::sin(pi * (h - 6) / 12.0) : 0.0;
    });
    south.existing_capacity = {{"ht_l", 100}, {"pemfc", 50}, {"pv", 450},
                               {"bes", 150},  {"eb", 250},   {"hst", 120}};
    south.build_limit = south.existing_capacity;
    south.emission_factors = {};

    cfg.regions = {north, south};
    cfg.topology.corridors = {{"north", "south", 300.0, 450.0, 450.0, 120e3, 40, 0.07}};
    cfg.topology.hydrogen_adjacency = {{"north", "south", 300.0}};
    return cfg;
}

}  // namespace h2plan::testing
