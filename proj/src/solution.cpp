#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "h2plan/chain.hpp"
#include "h2plan/model.hpp"

#include "json.hpp"

namespace h2plan::assemble {

using core::ScenarioConfig;
using core::TechKind;

namespace {

const char* component_of(TechKind k) {
    switch (k) {
        case TechKind::TU:
        case TechKind::CHP: return "tu";
        case TechKind::WT: return "wt";
        case TechKind::PV: return "pv";
        case TechKind::BES:
        case TechKind::HPS: return "es";
        case TechKind::EC: return "ec";
        case TechKind::HT: return "ht";
        case TechKind::FC: return "fc";
        case TechKind::HS: return "hs";
        case TechKind::COP: return "cop";
        case TechKind::EB: return "eb";
        case TechKind::HST: return "hst";
        case TechKind::Line: return "line";
    }
    return "?";
}

double series_sum(const DispatchSeries* s) {
    if (!s) return 0.0;
    double total = 0.0;
    for (double v : s->values) total += v;
    return total;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

const DispatchSeries* PlanSolution::find_series(const std::string& quantity,
                                                const std::string& region,
                                                const std::string& tech) const {
    for (const auto& s : series)
        if (s.quantity == quantity && s.region == region && s.tech == tech) return &s;
    return nullptr;
}

PlanSolution extract_solution(const PlanningModel& model, const solve::SolveResult& result) {
    if (result.status != solve::SolveStatus::Optimal)
        throw ModelError(std::string("cannot extract a non-optimal result (") +
                         solve::to_string(result.status) + ")");
    if (result.x.size() != model.lp.vars.size())
        throw ModelError("solution vector does not match the model (missing variable values)");

    const ScenarioConfig& cfg = model.scenario;
    const int T = cfg.horizon_hours;
    PlanSolution sol;
    sol.scenario_fingerprint = model.fingerprint;
    sol.mode = model.mode;
    sol.objective = result.objective;

    auto value = [&](const VarKey& key) { return result.x[static_cast<size_t>(model.var(key))]; };
    auto has = [&](VarKey key) { return model.var(key) >= 0; };

    // capacities per (region, tech)
    for (int r = 0; r < static_cast<int>(cfg.regions.size()); ++r) {
        const auto& region = cfg.regions[r];
        for (int i = 0; i < static_cast<int>(cfg.technologies.size()); ++i) {
            if (!has({Quantity::Capacity, r, i, -1, -1})) continue;
            const auto& tech = cfg.technologies[static_cast<size_t>(i)];
            CapacityDecision cap;
            cap.region = region.id;
            cap.tech = tech.id;
            cap.kind = tech.kind;
            auto it = region.existing_capacity.find(tech.id);
            cap.existing = it == region.existing_capacity.end() ? 0.0 : it->second;
            cap.total = value({Quantity::Capacity, r, i, -1, -1});
            if (has({Quantity::EnergyCap, r, i, -1, -1})) {
                cap.energy_total = value({Quantity::EnergyCap, r, i, -1, -1});
                cap.energy_existing = cap.existing * tech.storage->existing_duration_h;
            }
            if (has({Quantity::CopCap, r, i, -1, -1})) {
                cap.cop_total = value({Quantity::CopCap, r, i, -1, -1});
                cap.cop_existing = model.lp.vars[static_cast<size_t>(
                                                     model.var({Quantity::CopCap, r, i, -1, -1}))]
                                       .lb;
            }
            sol.capacities.push_back(std::move(cap));
        }
    }
    for (int c = 0; c < static_cast<int>(cfg.topology.corridors.size()); ++c) {
        if (!has({Quantity::LineCap, -1, -1, -1, c})) continue;
        const auto& cr = cfg.topology.corridors[static_cast<size_t>(c)];
        CapacityDecision cap;
        cap.region = cr.from;
        cap.tech = cr.to;
        cap.kind = TechKind::Line;
        cap.existing = cr.existing_mw;
        cap.total = value({Quantity::LineCap, -1, -1, -1, c});
        sol.capacities.push_back(std::move(cap));
    }

    // hourly series
    auto collect = [&](Quantity q, int r, int i, int corridor, const std::string& region,
                       const std::string& tech) {
        if (!has({q, r, i, 0, corridor})) return;
        DispatchSeries s;
        s.quantity = to_string(q);
        s.region = region;
        s.tech = tech;
        s.values.resize(static_cast<size_t>(T));
        for (int t = 0; t < T; ++t) s.values[static_cast<size_t>(t)] = value({q, r, i, t, corridor});
        sol.series.push_back(std::move(s));
    };
    for (int r = 0; r < static_cast<int>(cfg.regions.size()); ++r) {
        const auto& region = cfg.regions[r];
        for (int i = 0; i < static_cast<int>(cfg.technologies.size()); ++i) {
            const auto& tech = cfg.technologies[static_cast<size_t>(i)];
            for (Quantity q : {Quantity::Dispatch, Quantity::Online, Quantity::Startup,
                               Quantity::Shutdown, Quantity::Charge, Quantity::Discharge,
                               Quantity::Soc})
                collect(q, r, i, -1, region.id, tech.id);
        }
        collect(Quantity::HeatCurt, r, -1, -1, region.id, "");
    }
    for (int c = 0; c < static_cast<int>(cfg.topology.corridors.size()); ++c) {
        const auto& cr = cfg.topology.corridors[static_cast<size_t>(c)];
        collect(Quantity::Flow, -1, -1, c, cr.from, cr.to);
    }

    // hydrogen nodal injections and per-technology totals
    const double beta = chain::e2h_coefficient(cfg.lhv_mj_per_kg);
    for (const auto& region : cfg.regions) {
        std::vector<double> inj(static_cast<size_t>(T), 0.0);
        for (int t = 0; t < T; ++t)
            inj[static_cast<size_t>(t)] -= region.hydrogen_demand[static_cast<size_t>(t)];
        for (const auto& tech : cfg.technologies) {
            const auto* disp = sol.find_series("dispatch", region.id, tech.id);
            if (disp && tech.kind == TechKind::EC)
                for (int t = 0; t < T; ++t)
                    inj[static_cast<size_t>(t)] +=
                        beta * tech.conv.electric_eff * disp->values[static_cast<size_t>(t)];
            if (disp && (tech.kind == TechKind::HT || tech.kind == TechKind::FC))
                for (int t = 0; t < T; ++t)
                    inj[static_cast<size_t>(t)] -=
                        beta / tech.conv.electric_eff * disp->values[static_cast<size_t>(t)];
            if (tech.kind == TechKind::HS) {
                const auto* ch = sol.find_series("charge", region.id, tech.id);
                const auto* dis = sol.find_series("discharge", region.id, tech.id);
                for (int t = 0; t < T; ++t) {
                    if (ch) inj[static_cast<size_t>(t)] -= ch->values[static_cast<size_t>(t)];
                    if (dis) inj[static_cast<size_t>(t)] += dis->values[static_cast<size_t>(t)];
                }
            }
        }
        sol.hydrogen_injection[region.id] = std::move(inj);
    }
    for (const auto& s : sol.series) {
        if (s.quantity == "dispatch") {
            const auto* tech = cfg.find_tech(s.tech);
            if (!tech) continue;
            const bool generation = tech->kind == TechKind::TU || tech->kind == TechKind::CHP ||
                                    tech->kind == TechKind::WT || tech->kind == TechKind::PV ||
                                    tech->kind == TechKind::HT || tech->kind == TechKind::FC;
            const std::string family = generation ? "generation:" : "consumption:";
            sol.technology_totals[family + s.region + "/" + s.tech] = series_sum(&s);
        } else if (s.quantity == "charge") {
            sol.technology_totals["consumption:" + s.region + "/" + s.tech] = series_sum(&s);
        }
    }

    // renewable curtailment = available - dispatched
    for (int r = 0; r < static_cast<int>(cfg.regions.size()); ++r) {
        const auto& region = cfg.regions[r];
        for (const auto& cap : sol.capacities) {
            if (cap.region != region.id) continue;
            if (cap.kind != TechKind::WT && cap.kind != TechKind::PV) continue;
            const auto& cf = cap.kind == TechKind::WT ? region.wind_cf : region.solar_cf;
            const auto* disp = sol.find_series("dispatch", region.id, cap.tech);
            for (int t = 0; t < T; ++t)
                sol.renewable_curtailment_mwh +=
                    cf[static_cast<size_t>(t)] * cap.total -
                    (disp ? disp->values[static_cast<size_t>(t)] : 0.0);
        }
        const auto* hc = sol.find_series("heat_curtailment", region.id, "");
        sol.heat_curtailment_mwh += series_sum(hc);
    }

    sol.costs = cost_breakdown(cfg, sol);
    sol.co2_tons = co2_total(cfg, sol);
    sol.residuals = compute_residuals(cfg, sol);
    return sol;
}

CostBreakdown cost_breakdown(const ScenarioConfig& cfg, const PlanSolution& sol) {
    CostBreakdown out;
    const double beta = chain::e2h_coefficient(cfg.lhv_mj_per_kg);
    const core::TechnologySpec* cop = nullptr;
    for (const auto& t : cfg.technologies)
        if (t.kind == TechKind::COP) cop = &t;

    for (const char* name : {"tu", "wt", "pv", "es", "ec", "ht", "fc", "hs", "cop", "eb",
                             "hst", "line"})
        out.components[name] = 0.0;

    for (const auto& cap : sol.capacities) {
        if (cap.kind == TechKind::Line) {
            for (const auto& cr : cfg.topology.corridors)
                if (cr.from == cap.region && cr.to == cap.tech) {
                    out.components["line"] += core::amortized_cost(cr.capital_per_mw,
                                                                   cr.lifetime_years,
                                                                   cr.interest_rate) *
                                              cap.new_build();
                }
            continue;
        }
        const auto* tech = cfg.find_tech(cap.tech);
        if (!tech) continue;
        const std::string comp = component_of(cap.kind);
        const double a = tech->cost.annualized_capital();
        const double f = tech->cost.fixed_om_per_year();
        if (cap.kind == TechKind::BES || cap.kind == TechKind::HPS) {
            // power + energy investment, no fixed O&M
            const double a_es = core::amortized_cost(tech->storage->energy_capital,
                                                     tech->cost.lifetime_years,
                                                     tech->cost.interest_rate);
            out.components[comp] += a * cap.new_build() +
                                    a_es * (cap.energy_total - cap.energy_existing);
        } else if (cap.kind == TechKind::HST) {
            const double a_es = core::amortized_cost(tech->storage->energy_capital,
                                                     tech->cost.lifetime_years,
                                                     tech->cost.interest_rate);
            out.components[comp] += a * cap.new_build() + f * cap.total +
                                    a_es * (cap.energy_total - cap.energy_existing);
        } else {
            out.components[comp] += a * cap.new_build() + f * cap.total;
        }
        if (cap.kind == TechKind::HS && cop) {
            const double a_cop = cop->cost.annualized_capital();
            const double f_cop = cop->cost.fixed_om_per_year();
            out.components["cop"] +=
                a_cop * (cap.cop_total - cap.cop_existing) + f_cop * cap.cop_total;
        }

        // operating terms
        const auto* disp = sol.find_series("dispatch", cap.region, cap.tech);
        const auto* start = sol.find_series("startup", cap.region, cap.tech);
        const auto* ch = sol.find_series("charge", cap.region, cap.tech);
        const auto* dis = sol.find_series("discharge", cap.region, cap.tech);
        if (tech->cost.variable_om != 0.0) {
            if (disp) out.components[comp] += tech->cost.variable_om * series_sum(disp);
            if (cap.kind == TechKind::BES || cap.kind == TechKind::HPS ||
                cap.kind == TechKind::HST)
                out.components[comp] +=
                    tech->cost.variable_om * (series_sum(ch) + series_sum(dis));
        }
        if (tech->cost.startup_cost != 0.0 && start)
            out.components[comp] += tech->cost.startup_cost * series_sum(start);
        if (cap.kind == TechKind::EC && disp) {
            const double produced = beta * tech->conv.electric_eff * series_sum(disp);
            auto econ = chain::chain_economics(produced, 0.0, cfg.price_book,
                                               tech->conv.water_per_kg_h2,
                                               tech->conv.oxygen_per_kg_h2);
            out.water_cost += econ.water_cost_usd;
            out.components["ec"] += econ.water_cost_usd;
            out.oxygen_revenue += econ.oxygen_revenue_usd;
        }
    }

    double served = 0.0;
    for (const auto& region : cfg.regions)
        for (double v : region.hydrogen_demand) served += v;
    out.hydrogen_revenue = cfg.price_book.hydrogen_usd_per_kg * served;
    return out;
}

double co2_total(const ScenarioConfig& cfg, const PlanSolution& sol) {
    double total = 0.0;
    for (const auto& s : sol.series) {
        if (s.quantity != "dispatch") continue;
        const auto* tech = cfg.find_tech(s.tech);
        if (!tech || (tech->kind != TechKind::TU && tech->kind != TechKind::CHP)) continue;
        const auto* region = cfg.find_region(s.region);
        const double dispatched = series_sum(&s);
        auto it = region->emission_factors.find(s.tech);
        if (it == region->emission_factors.end()) {
            if (dispatched > 1e-6)
                throw ModelError("technology '" + s.tech + "' in region '" + s.region +
                                 "' was dispatched but has no emission factor");
            continue;
        }
        total += it->second * dispatched;
    }
    return total;
}

BalanceResiduals compute_residuals(const ScenarioConfig& cfg, const PlanSolution& sol) {
    BalanceResiduals out;
    const int T = cfg.horizon_hours;
    const double beta = chain::e2h_coefficient(cfg.lhv_mj_per_kg);
    const core::TechnologySpec* cop = nullptr;
    for (const auto& t : cfg.technologies)
        if (t.kind == TechKind::COP) cop = &t;
    const double alpha = cop ? cop->conv.cop_mwh_per_kg : 0.0;

    std::vector<double> h2(static_cast<size_t>(T), 0.0);
    for (const auto& region : cfg.regions) {
        for (int t = 0; t < T; ++t) {
            out.peak_electric_demand =
                std::max(out.peak_electric_demand, region.electric_demand[static_cast<size_t>(t)]);
            h2[static_cast<size_t>(t)] -= region.hydrogen_demand[static_cast<size_t>(t)];
        }
        std::vector<double> e(static_cast<size_t>(T), 0.0), h(static_cast<size_t>(T), 0.0);
        for (int t = 0; t < T; ++t) {
            e[static_cast<size_t>(t)] -= region.electric_demand[static_cast<size_t>(t)] +
                                         region.export_demand[static_cast<size_t>(t)];
            h[static_cast<size_t>(t)] -= region.heat_demand[static_cast<size_t>(t)];
        }
        for (const auto& tech : cfg.technologies) {
            const auto* disp = sol.find_series("dispatch", region.id, tech.id);
            const auto* ch = sol.find_series("charge", region.id, tech.id);
            const auto* dis = sol.find_series("discharge", region.id, tech.id);
            const auto* soc = sol.find_series("soc", region.id, tech.id);
            for (int t = 0; t < T; ++t) {
                const size_t u = static_cast<size_t>(t);
                const double p = disp ? disp->values[u] : 0.0;
                const double c = ch ? ch->values[u] : 0.0;
                const double d = dis ? dis->values[u] : 0.0;
                switch (tech.kind) {
                    case TechKind::TU:
                        e[u] += p;
                        break;
                    case TechKind::CHP:
                        e[u] += p;
                        h[u] += p * tech.conv.chp_heat_eff / tech.conv.electric_eff;
                        break;
                    case TechKind::WT:
                    case TechKind::PV:
                        e[u] += p;
                        break;
                    case TechKind::BES:
                    case TechKind::HPS:
                        e[u] += d - c;
                        break;
                    case TechKind::EC:
                        e[u] -= p;
                        h[u] += tech.conv.waste_heat_eff * (1.0 - tech.conv.electric_eff) * p;
                        h2[u] += beta * tech.conv.electric_eff * p;
                        break;
                    case TechKind::HT:
                    case TechKind::FC:
                        e[u] += p;
                        h[u] += tech.conv.waste_heat_eff * (1.0 - tech.conv.electric_eff) /
                                tech.conv.electric_eff * p;
                        h2[u] -= beta / tech.conv.electric_eff * p;
                        break;
                    case TechKind::HS:
                        e[u] -= alpha * (c + d);
                        h2[u] += d - c;
                        break;
                    case TechKind::EB:
                        e[u] -= p;
                        h[u] += tech.conv.electric_eff * p;
                        break;
                    case TechKind::HST:
                        h[u] += d - c;
                        break;
                    default:
                        break;
                }
            }
            if (soc && tech.storage) {
                const size_t last = static_cast<size_t>(T - 1);
                const double wrap = chain::storage_step(
                    soc->values[last], ch ? ch->values[last] : 0.0,
                    dis ? dis->values[last] : 0.0, *tech.storage);
                out.storage_cycle_max =
                    std::max(out.storage_cycle_max, std::abs(wrap - soc->values[0]));
            }
        }
        const auto* hc = sol.find_series("heat_curtailment", region.id, "");
        for (const auto& s : sol.series) {
            if (s.quantity != "flow") continue;
            for (int t = 0; t < T; ++t) {
                if (s.tech == region.id) e[static_cast<size_t>(t)] += s.values[static_cast<size_t>(t)];
                if (s.region == region.id) e[static_cast<size_t>(t)] -= s.values[static_cast<size_t>(t)];
            }
        }
        for (int t = 0; t < T; ++t) {
            const size_t u = static_cast<size_t>(t);
            if (hc) h[u] -= hc->values[u];
            out.electric_max = std::max(out.electric_max, std::abs(e[u]));
            out.heat_max = std::max(out.heat_max, std::abs(h[u]));
        }
    }
    for (int t = 0; t < T; ++t)
        out.hydrogen_max = std::max(out.hydrogen_max, std::abs(h2[static_cast<size_t>(t)]));
    return out;
}

void write_solution_csvs(const PlanSolution& sol, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream f(out_dir / "capacities.csv");
        f << "region,tech,kind,existing,total,new,energy_existing,energy_total,"
             "cop_existing,cop_total\n";
        for (const auto& c : sol.capacities)
            f << c.region << ',' << c.tech << ',' << to_string(c.kind) << ','
              << fmt(c.existing) << ',' << fmt(c.total) << ',' << fmt(c.new_build()) << ','
              << fmt(c.energy_existing) << ',' << fmt(c.energy_total) << ','
              << fmt(c.cop_existing) << ',' << fmt(c.cop_total) << "\n";
    }
    {
        std::ofstream f(out_dir / "dispatch.csv");
        f << "quantity,region,tech,hour,value\n";
        for (const auto& s : sol.series)
            for (size_t t = 0; t < s.values.size(); ++t)
                f << s.quantity << ',' << s.region << ',' << s.tech << ',' << t + 1 << ','
                  << fmt(s.values[t]) << "\n";
    }
    {
        std::ofstream f(out_dir / "costs.csv");
        f << "component,usd\n";
        for (const auto& [name, usd] : sol.costs.components)
            f << name << ',' << fmt(usd) << "\n";
        f << "oxygen_revenue," << fmt(sol.costs.oxygen_revenue) << "\n";
        f << "hydrogen_revenue," << fmt(sol.costs.hydrogen_revenue) << "\n";
        f << "total," << fmt(sol.costs.total()) << "\n";
    }
    {
        std::ofstream f(out_dir / "hydrogen_nodal.csv");
        f << "region,hour,injection_kg\n";
        for (const auto& [region, inj] : sol.hydrogen_injection)
            for (size_t t = 0; t < inj.size(); ++t)
                f << region << ',' << t + 1 << ',' << fmt(inj[t]) << "\n";
    }
    {
        nlohmann::ordered_json j;
        j["scenario_fingerprint"] = sol.scenario_fingerprint;
        j["objective_mode"] = core::to_string(sol.mode);
        j["objective"] = sol.objective;
        j["total_cost_usd"] = sol.costs.total();
        j["co2_tons"] = sol.co2_tons;
        j["renewable_curtailment_mwh"] = sol.renewable_curtailment_mwh;
        j["heat_curtailment_mwh"] = sol.heat_curtailment_mwh;
        j["residuals"] = {{"electric_max_mw", sol.residuals.electric_max},
                          {"heat_max_mw", sol.residuals.heat_max},
                          {"hydrogen_max_kg", sol.residuals.hydrogen_max},
                          {"storage_cycle_max", sol.residuals.storage_cycle_max},
                          {"peak_electric_demand_mw", sol.residuals.peak_electric_demand}};
        j["solve_seconds"] = sol.solve_seconds;
        std::ofstream f(out_dir / "summary.json");
        f << j.dump(2) << "\n";
    }
}

}  // namespace h2plan::assemble
