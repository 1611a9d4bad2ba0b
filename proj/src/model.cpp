#include "h2plan/model.hpp"

#include <algorithm>
#include <cmath>

#include "h2plan/chain.hpp"
#include "h2plan/scenario_io.hpp"

namespace h2plan::assemble {

using core::ObjectiveMode;
using core::RegionSpec;
using core::ScenarioConfig;
using core::TechKind;
using core::TechnologySpec;
using solve::LinearProgram;
using solve::RowSense;

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::Capacity: return "capacity";
        case Quantity::EnergyCap: return "energy_capacity";
        case Quantity::CopCap: return "cop_capacity";
        case Quantity::LineCap: return "line_capacity";
        case Quantity::Online: return "online";
        case Quantity::Startup: return "startup";
        case Quantity::Shutdown: return "shutdown";
        case Quantity::Dispatch: return "dispatch";
        case Quantity::Charge: return "charge";
        case Quantity::Discharge: return "discharge";
        case Quantity::Soc: return "soc";
        case Quantity::HeatCurt: return "heat_curtailment";
        case Quantity::Flow: return "flow";
    }
    return "?";
}

int PlanningModel::var(const VarKey& key) const {
    auto it = index.find(key);
    return it == index.end() ? -1 : it->second;
}

int PlanningModel::require_var(const VarKey& key) const {
    const int id = var(key);
    if (id < 0) throw ModelError("missing model variable for " + std::string(to_string(key.quantity)));
    return id;
}

namespace {

struct ActiveTech {
    int tech = -1;  // index into cfg.technologies
    double existing = 0.0;
    double limit = 0.0;  // upper bound on total capacity
};

double map_get(const std::map<std::string, double>& m, const std::string& k) {
    auto it = m.find(k);
    return it == m.end() ? 0.0 : it->second;
}

class Builder {
  public:
    Builder(const ScenarioConfig& cfg, PlanningModel& m, bool exact_commitment = false)
        : cfg_(cfg), m_(m), lp_(m.lp), exact_(exact_commitment) {
        beta_ = chain::e2h_coefficient(cfg.lhv_mj_per_kg);
        T_ = cfg.horizon_hours;
    }

    void build(ObjectiveMode mode, std::optional<double> emission_cap);

  private:
    const ScenarioConfig& cfg_;
    PlanningModel& m_;
    LinearProgram& lp_;
    bool exact_ = false;  // per-module binary commitment (oracle mode)
    double beta_ = 30.0;
    int T_ = 0;
    int cop_tech_ = -1;  // index of the compressor technology, if usable

    // accumulated terms for the system-wide rows: qualifying generation, and
    // the gamma-side quantities (loads positive, ES discharge negative via
    // the Phi net-charging slack)
    std::vector<std::pair<int32_t, double>> rps_gen_terms_;
    std::vector<std::pair<int32_t, double>> rps_load_terms_;
    double rps_rhs_const_ = 0.0;
    std::vector<std::pair<int32_t, double>> co2_terms_;

    int reg(Quantity q, int r, int tech, int hour, int corridor, int id) {
        VarKey key{q, r, tech, hour, corridor};
        m_.index.emplace(key, id);
        if (static_cast<int>(m_.key_of.size()) <= id) m_.key_of.resize(id + 1);
        m_.key_of[id] = key;
        return id;
    }

    std::vector<ActiveTech> active(int r, TechKind kind) const {
        std::vector<ActiveTech> out;
        const auto& region = cfg_.regions[r];
        if (cfg_.ablated(kind)) return out;
        for (size_t i = 0; i < cfg_.technologies.size(); ++i) {
            const auto& t = cfg_.technologies[i];
            if (t.kind != kind) continue;
            ActiveTech a;
            a.tech = static_cast<int>(i);
            a.existing = map_get(region.existing_capacity, t.id);
            auto lim = region.build_limit.find(t.id);
            a.limit = lim == region.build_limit.end() ? a.existing : lim->second;
            if (a.limit <= 0.0 && a.existing <= 0.0) continue;
            out.push_back(a);
        }
        return out;
    }

    std::string vn(const char* stem, int r, int tech, int t = -1) const {
        std::string s = std::string(stem) + "_" + cfg_.regions[r].id + "_" +
                        cfg_.technologies[static_cast<size_t>(tech)].id;
        if (t >= 0) s += "_t" + std::to_string(t + 1);
        return s;
    }

    // investment (new build) + fixed O&M cost on a total-capacity variable
    void cap_cost(int var, double existing, const core::CostParams& cost) {
        const double a = cost.annualized_capital();
        const double f = cost.fixed_om_per_year();
        lp_.add_obj(var, a + f);
        lp_.obj_constant -= a * existing;
    }

    void build_committed(int r, TechKind kind);
    void build_renewable(int r, TechKind kind);
    void build_es(int r, TechKind kind);
    void build_hs(int r);
    void build_eb(int r);
    void build_hst(int r);
    void build_lines();
    void build_balances();
    void build_rps();
    void structural_checks();
};

void Builder::build_committed(int r, TechKind kind) {
    for (const auto& a : active(r, kind)) {
        const auto& tech = cfg_.technologies[static_cast<size_t>(a.tech)];
        const std::string stem = cfg_.regions[r].id + "_" + tech.id;
        flex::ClusterVars v;
        if (exact_) {
            // per-module binaries with aggregate O/U/S/P variables so the
            // rest of the model (and extraction) is identical to the
            // clustered path
            if (!tech.modules)
                throw ModelError("exact commitment requires module sizing for '" + tech.id +
                                 "'");
            const double fleet = tech.modules->module_mw * tech.modules->module_count;
            if (std::abs(fleet - a.existing) > 1e-6 * (1.0 + fleet) ||
                a.limit > a.existing + 1e-9)
                throw ModelError("exact commitment needs fixed capacity equal to "
                                 "module_mw * module_count for '" +
                                 tech.id + "'");
            flex::ModuleFleetSpec mspec;
            mspec.flex = *tech.flex;
            mspec.horizon = T_;
            mspec.wrap = cfg_.commitment_wrap;
            mspec.module_mw = tech.modules->module_mw;
            mspec.module_count = tech.modules->module_count;
            mspec.name = stem;
            auto mv = flex::add_module_fleet(lp_, mspec);
            v.capacity = lp_.add_var("cap_" + stem, fleet, fleet);
            v.online.resize(T_);
            v.startup.resize(T_);
            v.shutdown.resize(T_);
            v.dispatch.resize(T_);
            const double kappa = tech.modules->module_mw;
            for (int t = 0; t < T_; ++t) {
                v.online[t] = lp_.add_var("on_" + stem + "_t" + std::to_string(t + 1), 0.0,
                                          solve::kInf);
                v.startup[t] = lp_.add_var("up_" + stem + "_t" + std::to_string(t + 1), 0.0,
                                           solve::kInf);
                v.shutdown[t] = lp_.add_var("dn_" + stem + "_t" + std::to_string(t + 1), 0.0,
                                            solve::kInf);
                v.dispatch[t] = lp_.add_var("p_" + stem + "_t" + std::to_string(t + 1), 0.0,
                                            solve::kInf);
                std::vector<std::pair<int32_t, double>> on_terms{{v.online[t], -1.0}};
                std::vector<std::pair<int32_t, double>> up_terms{{v.startup[t], -1.0}};
                std::vector<std::pair<int32_t, double>> dn_terms{{v.shutdown[t], -1.0}};
                std::vector<std::pair<int32_t, double>> p_terms{{v.dispatch[t], -1.0}};
                for (int j = 0; j < tech.modules->module_count; ++j) {
                    on_terms.emplace_back(mv.on[j][t], kappa);
                    up_terms.emplace_back(mv.start[j][t], kappa);
                    dn_terms.emplace_back(mv.stop[j][t], kappa);
                    p_terms.emplace_back(mv.dispatch[j][t], 1.0);
                }
                lp_.add_row("aggO_" + stem + "_t" + std::to_string(t + 1), RowSense::EQ, 0.0,
                            std::move(on_terms));
                lp_.add_row("aggU_" + stem + "_t" + std::to_string(t + 1), RowSense::EQ, 0.0,
                            std::move(up_terms));
                lp_.add_row("aggS_" + stem + "_t" + std::to_string(t + 1), RowSense::EQ, 0.0,
                            std::move(dn_terms));
                lp_.add_row("aggP_" + stem + "_t" + std::to_string(t + 1), RowSense::EQ, 0.0,
                            std::move(p_terms));
            }
        } else {
            flex::ClusterSpec spec;
            spec.flex = *tech.flex;
            spec.horizon = T_;
            spec.wrap = cfg_.commitment_wrap;
            spec.existing_mw = a.existing;
            spec.capacity_limit_mw = a.limit;
            const double init_frac = tech.flex->initial_online_fraction.value_or(
                (kind == TechKind::TU || kind == TechKind::CHP) ? 1.0 : 0.0);
            spec.initial_online_mw = init_frac * a.existing;
            spec.name = stem;
            v = flex::add_cluster(lp_, spec);
        }
        reg(Quantity::Capacity, r, a.tech, -1, -1, v.capacity);
        for (int t = 0; t < T_; ++t) {
            reg(Quantity::Online, r, a.tech, t, -1, v.online[t]);
            reg(Quantity::Startup, r, a.tech, t, -1, v.startup[t]);
            reg(Quantity::Shutdown, r, a.tech, t, -1, v.shutdown[t]);
            reg(Quantity::Dispatch, r, a.tech, t, -1, v.dispatch[t]);
        }
        cap_cost(v.capacity, a.existing, tech.cost);
        for (int t = 0; t < T_; ++t) {
            if (tech.cost.variable_om != 0.0) lp_.add_obj(v.dispatch[t], tech.cost.variable_om);
            if (tech.cost.startup_cost != 0.0) lp_.add_obj(v.startup[t], tech.cost.startup_cost);
        }
        if (kind == TechKind::TU || kind == TechKind::CHP) {
            const double ec = map_get(cfg_.regions[r].emission_factors, tech.id);
            if (ec != 0.0)
                for (int t = 0; t < T_; ++t) co2_terms_.emplace_back(v.dispatch[t], ec);
        }
    }
}

void Builder::build_renewable(int r, TechKind kind) {
    const auto& region = cfg_.regions[r];
    const auto& cf = kind == TechKind::WT ? region.wind_cf : region.solar_cf;
    for (const auto& a : active(r, kind)) {
        const auto& tech = cfg_.technologies[static_cast<size_t>(a.tech)];
        const int cap = lp_.add_var(vn("cap", r, a.tech), a.existing, a.limit);
        reg(Quantity::Capacity, r, a.tech, -1, -1, cap);
        cap_cost(cap, a.existing, tech.cost);
        for (int t = 0; t < T_; ++t) {
            const int p = lp_.add_var(vn("p", r, a.tech, t), 0.0, solve::kInf);
            reg(Quantity::Dispatch, r, a.tech, t, -1, p);
            lp_.add_row(vn("avail", r, a.tech, t), RowSense::LE, 0.0,
                        {{p, 1.0}, {cap, -cf[static_cast<size_t>(t)]}});
            if (tech.cost.variable_om != 0.0) lp_.add_obj(p, tech.cost.variable_om);
        }
    }
}

void Builder::build_es(int r, TechKind kind) {
    for (const auto& a : active(r, kind)) {
        const auto& tech = cfg_.technologies[static_cast<size_t>(a.tech)];
        const auto& st = *tech.storage;
        const double e_exist = a.existing * st.existing_duration_h;
        const int cap_ps = lp_.add_var(vn("cap", r, a.tech), a.existing, a.limit);
        const int cap_es = lp_.add_var(vn("ecap", r, a.tech), e_exist, solve::kInf);
        reg(Quantity::Capacity, r, a.tech, -1, -1, cap_ps);
        reg(Quantity::EnergyCap, r, a.tech, -1, -1, cap_es);
        // Eq. 34 form: power and energy investment, no fixed O&M
        const double a_ps = core::amortized_cost(tech.cost.capital, tech.cost.lifetime_years,
                                                 tech.cost.interest_rate);
        const double a_es = core::amortized_cost(st.energy_capital, tech.cost.lifetime_years,
                                                 tech.cost.interest_rate);
        lp_.add_obj(cap_ps, a_ps);
        lp_.add_obj(cap_es, a_es);
        lp_.obj_constant -= a_ps * a.existing + a_es * e_exist;

        std::vector<int> ch(T_), dis(T_), soc(T_);
        for (int t = 0; t < T_; ++t) {
            ch[t] = lp_.add_var(vn("pch", r, a.tech, t), 0.0, solve::kInf);
            dis[t] = lp_.add_var(vn("pdis", r, a.tech, t), 0.0, solve::kInf);
            soc[t] = lp_.add_var(vn("soc", r, a.tech, t), 0.0, solve::kInf);
            reg(Quantity::Charge, r, a.tech, t, -1, ch[t]);
            reg(Quantity::Discharge, r, a.tech, t, -1, dis[t]);
            reg(Quantity::Soc, r, a.tech, t, -1, soc[t]);
            if (tech.cost.variable_om != 0.0) {
                lp_.add_obj(ch[t], tech.cost.variable_om);
                lp_.add_obj(dis[t], tech.cost.variable_om);
            }
        }
        for (int t = 0; t < T_; ++t) {
            lp_.add_row(vn("chu", r, a.tech, t), RowSense::LE, 0.0,
                        {{ch[t], 1.0}, {cap_ps, -1.0}});
            lp_.add_row(vn("disu", r, a.tech, t), RowSense::LE, 0.0,
                        {{dis[t], 1.0}, {cap_ps, -1.0}});
            lp_.add_row(vn("socu", r, a.tech, t), RowSense::LE, 0.0,
                        {{soc[t], 1.0}, {cap_es, -1.0}});
            const int nxt = (t + 1) % T_;
            lp_.add_row(vn("sdyn", r, a.tech, t), RowSense::EQ, 0.0,
                        {{soc[nxt], 1.0},
                         {soc[t], -(1.0 - st.loss_rate)},
                         {ch[t], -st.charge_eff},
                         {dis[t], 1.0 / st.discharge_eff}});
        }
    }
}

void Builder::build_hs(int r) {
    if (cop_tech_ < 0) return;  // hydrogen storage needs a compressor technology
    const auto& cop = cfg_.technologies[static_cast<size_t>(cop_tech_)];
    const auto& region = cfg_.regions[r];
    bool first_hs = true;
    for (const auto& a : active(r, TechKind::HS)) {
        const auto& tech = cfg_.technologies[static_cast<size_t>(a.tech)];
        const auto& st = *tech.storage;
        const int cap = lp_.add_var(vn("mcap", r, a.tech), a.existing, a.limit);
        reg(Quantity::Capacity, r, a.tech, -1, -1, cap);
        cap_cost(cap, a.existing, tech.cost);

        // the paired compressor; region-level existing capacity counts once
        const double cop_exist = first_hs ? map_get(region.existing_capacity, cop.id) : 0.0;
        double cop_limit = solve::kInf;
        if (auto it = region.build_limit.find(cop.id); it != region.build_limit.end())
            cop_limit = first_hs ? it->second : it->second - cop_exist;
        first_hs = false;
        const int copcap =
            lp_.add_var(vn("copcap", r, a.tech), cop_exist, std::max(cop_exist, cop_limit));
        reg(Quantity::CopCap, r, a.tech, -1, -1, copcap);
        cap_cost(copcap, cop_exist, cop.cost);

        std::vector<int> ch(T_), dis(T_), soc(T_);
        for (int t = 0; t < T_; ++t) {
            ch[t] = lp_.add_var(vn("mch", r, a.tech, t), 0.0, solve::kInf);
            dis[t] = lp_.add_var(vn("mdis", r, a.tech, t), 0.0, solve::kInf);
            soc[t] = lp_.add_var(vn("msoc", r, a.tech, t), 0.0, solve::kInf);
            reg(Quantity::Charge, r, a.tech, t, -1, ch[t]);
            reg(Quantity::Discharge, r, a.tech, t, -1, dis[t]);
            reg(Quantity::Soc, r, a.tech, t, -1, soc[t]);
        }
        for (int t = 0; t < T_; ++t) {
            lp_.add_row(vn("mchu", r, a.tech, t), RowSense::LE, 0.0,
                        {{ch[t], 1.0}, {copcap, -1.0}});
            lp_.add_row(vn("mdisu", r, a.tech, t), RowSense::LE, 0.0,
                        {{dis[t], 1.0}, {copcap, -1.0}});
            lp_.add_row(vn("msocu", r, a.tech, t), RowSense::LE, 0.0,
                        {{soc[t], 1.0}, {cap, -1.0}});
            // discharge is drawn from start-of-hour inventory
            lp_.add_row(vn("mdrw", r, a.tech, t), RowSense::GE, 0.0,
                        {{soc[t], 1.0}, {dis[t], -1.0}});
            const int nxt = (t + 1) % T_;
            lp_.add_row(vn("msdyn", r, a.tech, t), RowSense::EQ, 0.0,
                        {{soc[nxt], 1.0},
                         {soc[t], -1.0},
                         {ch[t], -st.charge_eff},
                         {dis[t], 1.0 / st.discharge_eff}});
        }
    }
}

void Builder::build_eb(int r) {
    for (const auto& a : active(r, TechKind::EB)) {
        const auto& tech = cfg_.technologies[static_cast<size_t>(a.tech)];
        const int cap = lp_.add_var(vn("cap", r, a.tech), a.existing, a.limit);
        reg(Quantity::Capacity, r, a.tech, -1, -1, cap);
        cap_cost(cap, a.existing, tech.cost);
        for (int t = 0; t < T_; ++t) {
            const int p = lp_.add_var(vn("peb", r, a.tech, t), 0.0, solve::kInf);
            reg(Quantity::Dispatch, r, a.tech, t, -1, p);
            lp_.add_row(vn("ebu", r, a.tech, t), RowSense::LE, 0.0, {{p, 1.0}, {cap, -1.0}});
            if (tech.cost.variable_om != 0.0) lp_.add_obj(p, tech.cost.variable_om);
        }
    }
}

void Builder::build_hst(int r) {
    for (const auto& a : active(r, TechKind::HST)) {
        const auto& tech = cfg_.technologies[static_cast<size_t>(a.tech)];
        const auto& st = *tech.storage;
        const double e_exist = a.existing * st.existing_duration_h;
        const int cap_ps = lp_.add_var(vn("cap", r, a.tech), a.existing, a.limit);
        const int cap_es = lp_.add_var(vn("ecap", r, a.tech), e_exist, solve::kInf);
        reg(Quantity::Capacity, r, a.tech, -1, -1, cap_ps);
        reg(Quantity::EnergyCap, r, a.tech, -1, -1, cap_es);
        cap_cost(cap_ps, a.existing, tech.cost);
        const double a_es = core::amortized_cost(st.energy_capital, tech.cost.lifetime_years,
                                                 tech.cost.interest_rate);
        lp_.add_obj(cap_es, a_es);
        lp_.obj_constant -= a_es * e_exist;

        std::vector<int> ch(T_), dis(T_), soc(T_);
        for (int t = 0; t < T_; ++t) {
            ch[t] = lp_.add_var(vn("hch", r, a.tech, t), 0.0, solve::kInf);
            dis[t] = lp_.add_var(vn("hdis", r, a.tech, t), 0.0, solve::kInf);
            soc[t] = lp_.add_var(vn("hsoc", r, a.tech, t), 0.0, solve::kInf);
            reg(Quantity::Charge, r, a.tech, t, -1, ch[t]);
            reg(Quantity::Discharge, r, a.tech, t, -1, dis[t]);
            reg(Quantity::Soc, r, a.tech, t, -1, soc[t]);
            if (tech.cost.variable_om != 0.0) {
                lp_.add_obj(ch[t], tech.cost.variable_om);
                lp_.add_obj(dis[t], tech.cost.variable_om);
            }
        }
        for (int t = 0; t < T_; ++t) {
            lp_.add_row(vn("hchu", r, a.tech, t), RowSense::LE, 0.0,
                        {{ch[t], 1.0}, {cap_ps, -1.0}});
            lp_.add_row(vn("hdisu", r, a.tech, t), RowSense::LE, 0.0,
                        {{dis[t], 1.0}, {cap_ps, -1.0}});
            lp_.add_row(vn("hsocu", r, a.tech, t), RowSense::LE, 0.0,
                        {{soc[t], 1.0}, {cap_es, -1.0}});
            const int nxt = (t + 1) % T_;
            lp_.add_row(vn("hsdyn", r, a.tech, t), RowSense::EQ, 0.0,
                        {{soc[nxt], 1.0},
                         {soc[t], -(1.0 - st.loss_rate)},
                         {ch[t], -st.charge_eff},
                         {dis[t], 1.0 / st.discharge_eff}});
        }
    }
}

void Builder::build_lines() {
    for (size_t c = 0; c < cfg_.topology.corridors.size(); ++c) {
        const auto& cr = cfg_.topology.corridors[c];
        const std::string stem = cr.from + "_" + cr.to;
        const int cap = lp_.add_var("lcap_" + stem, cr.existing_mw, cr.limit_mw);
        reg(Quantity::LineCap, -1, -1, -1, static_cast<int>(c), cap);
        const double a_l =
            core::amortized_cost(cr.capital_per_mw, cr.lifetime_years, cr.interest_rate);
        lp_.add_obj(cap, a_l);
        lp_.obj_constant -= a_l * cr.existing_mw;
        for (int t = 0; t < T_; ++t) {
            const int f = lp_.add_var("flow_" + stem + "_t" + std::to_string(t + 1),
                                      -cr.limit_mw, cr.limit_mw);
            reg(Quantity::Flow, -1, -1, t, static_cast<int>(c), f);
            lp_.add_row("fpos_" + stem + "_t" + std::to_string(t + 1), RowSense::LE, 0.0,
                        {{f, 1.0}, {cap, -1.0}});
            lp_.add_row("fneg_" + stem + "_t" + std::to_string(t + 1), RowSense::LE, 0.0,
                        {{f, -1.0}, {cap, -1.0}});
        }
    }
}

void Builder::build_balances() {
    const int R = static_cast<int>(cfg_.regions.size());

    // heat curtailment variables (created before balance rows reference them)
    for (int r = 0; r < R; ++r)
        for (int t = 0; t < T_; ++t) {
            const int h = lp_.add_var(
                "hcurt_" + cfg_.regions[r].id + "_t" + std::to_string(t + 1), 0.0, solve::kInf);
            reg(Quantity::HeatCurt, r, -1, t, -1, h);
        }

    for (int r = 0; r < R; ++r) {
        const auto& region = cfg_.regions[r];
        for (int t = 0; t < T_; ++t) {
            std::vector<std::pair<int32_t, double>> e;   // electric balance
            std::vector<std::pair<int32_t, double>> h;   // heat balance
            std::vector<std::pair<int32_t, double>> rel; // reliability LHS-RHS

            for (TechKind kind : {TechKind::TU, TechKind::CHP}) {
                for (const auto& a : active(r, kind)) {
                    const auto& tech = cfg_.technologies[static_cast<size_t>(a.tech)];
                    const int p = m_.require_var({Quantity::Dispatch, r, a.tech, t, -1});
                    e.emplace_back(p, 1.0);
                    if (kind == TechKind::CHP)
                        h.emplace_back(p, tech.conv.chp_heat_eff / tech.conv.electric_eff);
                    const int on = m_.require_var({Quantity::Online, r, a.tech, t, -1});
                    rel.emplace_back(on, tech.flex->max_load);
                }
            }
            for (TechKind kind : {TechKind::WT, TechKind::PV}) {
                const auto& cf = kind == TechKind::WT ? region.wind_cf : region.solar_cf;
                const auto& policy = cfg_.reserve_policy;
                const auto& credit_override =
                    kind == TechKind::WT ? policy.wind_credit : policy.solar_credit;
                const double err = kind == TechKind::WT ? policy.wind_error : policy.solar_error;
                for (const auto& a : active(r, kind)) {
                    const int p = m_.require_var({Quantity::Dispatch, r, a.tech, t, -1});
                    const int cap = m_.require_var({Quantity::Capacity, r, a.tech, -1, -1});
                    e.emplace_back(p, 1.0);
                    rps_gen_terms_.emplace_back(p, 1.0);
                    const double credit = credit_override
                                              ? (*credit_override)[static_cast<size_t>(t)]
                                              : cf[static_cast<size_t>(t)];
                    rel.emplace_back(cap, credit);
                    rel.emplace_back(p, -err);
                }
            }
            for (TechKind kind : {TechKind::BES, TechKind::HPS}) {
                for (const auto& a : active(r, kind)) {
                    const int ch = m_.require_var({Quantity::Charge, r, a.tech, t, -1});
                    const int dis = m_.require_var({Quantity::Discharge, r, a.tech, t, -1});
                    const int cap = m_.require_var({Quantity::Capacity, r, a.tech, -1, -1});
                    e.emplace_back(dis, 1.0);
                    e.emplace_back(ch, -1.0);
                    rps_load_terms_.emplace_back(ch, 1.0);  // Phi_k net charging
                    rps_load_terms_.emplace_back(dis, -1.0);
                    // discharge + headroom = power capacity
                    rel.emplace_back(cap, 1.0);
                }
            }
            for (const auto& a : active(r, TechKind::EC)) {
                const auto& tech = cfg_.technologies[static_cast<size_t>(a.tech)];
                const int p = m_.require_var({Quantity::Dispatch, r, a.tech, t, -1});
                e.emplace_back(p, -1.0);
                h.emplace_back(p, tech.conv.waste_heat_eff * (1.0 - tech.conv.electric_eff));
                rps_load_terms_.emplace_back(p, 1.0);
                rel.emplace_back(p, -1.0);
            }
            for (TechKind kind : {TechKind::HT, TechKind::FC}) {
                for (const auto& a : active(r, kind)) {
                    const auto& tech = cfg_.technologies[static_cast<size_t>(a.tech)];
                    const int p = m_.require_var({Quantity::Dispatch, r, a.tech, t, -1});
                    e.emplace_back(p, 1.0);
                    h.emplace_back(p, tech.conv.waste_heat_eff *
                                          (1.0 - tech.conv.electric_eff) /
                                          tech.conv.electric_eff);
                    rps_gen_terms_.emplace_back(p, 1.0);
                    rel.emplace_back(p, 1.0);
                }
            }
            if (cop_tech_ >= 0) {
                const double alpha =
                    cfg_.technologies[static_cast<size_t>(cop_tech_)].conv.cop_mwh_per_kg;
                for (const auto& a : active(r, TechKind::HS)) {
                    const int ch = m_.require_var({Quantity::Charge, r, a.tech, t, -1});
                    const int dis = m_.require_var({Quantity::Discharge, r, a.tech, t, -1});
                    e.emplace_back(ch, -alpha);
                    e.emplace_back(dis, -alpha);
                    rps_load_terms_.emplace_back(ch, alpha);
                    rps_load_terms_.emplace_back(dis, alpha);
                    rel.emplace_back(ch, -alpha);
                    rel.emplace_back(dis, -alpha);
                }
            }
            for (const auto& a : active(r, TechKind::EB)) {
                const auto& tech = cfg_.technologies[static_cast<size_t>(a.tech)];
                const int p = m_.require_var({Quantity::Dispatch, r, a.tech, t, -1});
                e.emplace_back(p, -1.0);
                h.emplace_back(p, tech.conv.electric_eff);
                rps_load_terms_.emplace_back(p, 1.0);
                rel.emplace_back(p, -1.0);
            }
            for (const auto& a : active(r, TechKind::HST)) {
                const int ch = m_.require_var({Quantity::Charge, r, a.tech, t, -1});
                const int dis = m_.require_var({Quantity::Discharge, r, a.tech, t, -1});
                h.emplace_back(dis, 1.0);
                h.emplace_back(ch, -1.0);
            }
            for (size_t c = 0; c < cfg_.topology.corridors.size(); ++c) {
                const auto& cr = cfg_.topology.corridors[c];
                const int f = m_.require_var({Quantity::Flow, -1, -1, t, static_cast<int>(c)});
                if (cr.to == region.id) {
                    e.emplace_back(f, 1.0);
                    rel.emplace_back(f, 1.0);
                } else if (cr.from == region.id) {
                    e.emplace_back(f, -1.0);
                    rel.emplace_back(f, -1.0);
                }
            }

            const double pd = region.electric_demand[static_cast<size_t>(t)];
            const double pex = region.export_demand[static_cast<size_t>(t)];
            lp_.add_row("ebal_" + region.id + "_t" + std::to_string(t + 1), RowSense::EQ,
                        pd + pex, std::move(e));

            const int hcurt = m_.require_var({Quantity::HeatCurt, r, -1, t, -1});
            h.emplace_back(hcurt, -1.0);
            lp_.add_row("hbal_" + region.id + "_t" + std::to_string(t + 1), RowSense::EQ,
                        region.heat_demand[static_cast<size_t>(t)], std::move(h));

            // reliability: firm capacity minus reserve-adjusted load
            const double re_d = cfg_.reserve_policy.demand_reserve_fraction * pd;
            lp_.add_row("rel_" + region.id + "_t" + std::to_string(t + 1), RowSense::GE,
                        pd + re_d + pex, std::move(rel));

            rps_rhs_const_ += cfg_.rps_gamma.value_or(0.0) * (pd + pex);
        }
    }

    // surplus-renewables bound on electrolysis (per region and hour)
    for (int r = 0; r < R; ++r) {
        const auto& region = cfg_.regions[r];
        auto ecs = active(r, TechKind::EC);
        if (ecs.empty()) continue;
        for (int t = 0; t < T_; ++t) {
            std::vector<std::pair<int32_t, double>> terms;
            for (const auto& a : ecs)
                terms.emplace_back(m_.require_var({Quantity::Dispatch, r, a.tech, t, -1}), 1.0);
            for (TechKind kind : {TechKind::WT, TechKind::PV}) {
                const auto& cf = kind == TechKind::WT ? region.wind_cf : region.solar_cf;
                for (const auto& a : active(r, kind)) {
                    terms.emplace_back(m_.require_var({Quantity::Capacity, r, a.tech, -1, -1}),
                                       -cf[static_cast<size_t>(t)]);
                    terms.emplace_back(m_.require_var({Quantity::Dispatch, r, a.tech, t, -1}),
                                       1.0);
                }
            }
            lp_.add_row("ecsur_" + region.id + "_t" + std::to_string(t + 1), RowSense::LE, 0.0,
                        std::move(terms));
        }
    }

    // system-wide hourly hydrogen balance
    for (int t = 0; t < T_; ++t) {
        std::vector<std::pair<int32_t, double>> terms;
        double rhs = 0.0;
        for (int r = 0; r < R; ++r) {
            rhs += cfg_.regions[r].hydrogen_demand[static_cast<size_t>(t)];
            for (const auto& a : active(r, TechKind::EC)) {
                const auto& tech = cfg_.technologies[static_cast<size_t>(a.tech)];
                terms.emplace_back(m_.require_var({Quantity::Dispatch, r, a.tech, t, -1}),
                                   beta_ * tech.conv.electric_eff);
            }
            for (TechKind kind : {TechKind::HT, TechKind::FC}) {
                for (const auto& a : active(r, kind)) {
                    const auto& tech = cfg_.technologies[static_cast<size_t>(a.tech)];
                    terms.emplace_back(m_.require_var({Quantity::Dispatch, r, a.tech, t, -1}),
                                       -beta_ / tech.conv.electric_eff);
                }
            }
            for (const auto& a : active(r, TechKind::HS)) {
                terms.emplace_back(m_.require_var({Quantity::Discharge, r, a.tech, t, -1}), 1.0);
                terms.emplace_back(m_.require_var({Quantity::Charge, r, a.tech, t, -1}), -1.0);
            }
        }
        if (terms.empty() && rhs == 0.0) continue;
        lp_.add_row("h2bal_t" + std::to_string(t + 1), RowSense::EQ, rhs, std::move(terms));
    }
}

void Builder::build_rps() {
    if (!cfg_.rps_gamma) return;
    const double gamma = *cfg_.rps_gamma;
    std::vector<std::pair<int32_t, double>> terms;
    terms.reserve(rps_gen_terms_.size() + rps_load_terms_.size());
    for (const auto& [var, coeff] : rps_gen_terms_) terms.emplace_back(var, coeff);
    // loads and the Phi net-charging slack move left scaled by -gamma
    for (const auto& [var, coeff] : rps_load_terms_) terms.emplace_back(var, -gamma * coeff);
    lp_.add_row("rps", RowSense::GE, rps_rhs_const_, std::move(terms));
}

void Builder::structural_checks() {
    double h2_demand = 0.0;
    bool any_ec = false;
    for (const auto& r : cfg_.regions)
        for (double v : r.hydrogen_demand) h2_demand += v;
    for (int r = 0; r < static_cast<int>(cfg_.regions.size()); ++r)
        if (!active(r, TechKind::EC).empty()) any_ec = true;
    if (h2_demand > 0.0 && !any_ec)
        throw ModelError(
            "hydrogen demand is positive but no electrolysis capacity can be built");
}

void Builder::build(ObjectiveMode mode, std::optional<double> emission_cap) {
    for (size_t i = 0; i < cfg_.technologies.size(); ++i)
        if (cfg_.technologies[i].kind == TechKind::COP && !cfg_.ablated(TechKind::COP)) {
            cop_tech_ = static_cast<int>(i);
            break;
        }
    structural_checks();

    const int R = static_cast<int>(cfg_.regions.size());
    for (int r = 0; r < R; ++r) {
        build_committed(r, TechKind::TU);
        build_committed(r, TechKind::CHP);
        build_renewable(r, TechKind::WT);
        build_renewable(r, TechKind::PV);
        build_es(r, TechKind::BES);
        build_es(r, TechKind::HPS);
        build_committed(r, TechKind::EC);
        build_committed(r, TechKind::HT);
        build_committed(r, TechKind::FC);
        build_hs(r);
        build_eb(r);
        build_hst(r);
    }
    build_lines();
    build_balances();
    build_rps();

    // EC economics: water cost net of oxygen revenue per unit of production;
    // hydrogen sales for the exogenous demand are an objective constant.
    double h2_demand = 0.0;
    for (const auto& region : cfg_.regions)
        for (double v : region.hydrogen_demand) h2_demand += v;

    if (mode == ObjectiveMode::MinCo2) {
        // replace the accumulated cost objective with Eq. 44
        std::fill(lp_.obj.begin(), lp_.obj.end(), 0.0);
        lp_.obj_constant = 0.0;
        for (const auto& [var, coeff] : co2_terms_) lp_.add_obj(var, coeff);
    } else {
        for (int r = 0; r < R; ++r)
            for (const auto& a : active(r, TechKind::EC)) {
                const auto& tech = cfg_.technologies[static_cast<size_t>(a.tech)];
                const double per_mwh =
                    beta_ * tech.conv.electric_eff *
                    (tech.conv.water_per_kg_h2 * cfg_.price_book.water_usd_per_kg -
                     tech.conv.oxygen_per_kg_h2 * cfg_.price_book.oxygen_usd_per_kg);
                for (int t = 0; t < T_; ++t)
                    lp_.add_obj(m_.require_var({Quantity::Dispatch, r, a.tech, t, -1}), per_mwh);
            }
        lp_.obj_constant -= cfg_.price_book.hydrogen_usd_per_kg * h2_demand;
        if (mode == ObjectiveMode::CostUnderCap) {
            const std::optional<double> cap = emission_cap ? emission_cap : cfg_.emission_cap;
            if (!cap) throw ModelError("cost-under-cap mode requires an emission cap");
            m_.emission_cap = *cap;
            lp_.add_row("co2cap", RowSense::LE, *cap, co2_terms_);
        }
    }
    lp_.canonicalize();
    if (std::string err = lp_.check_well_formed(); !err.empty())
        throw ModelError("assembled LP is malformed: " + err);
}

}  // namespace

PlanningModel build_planning_lp(const ScenarioConfig& scenario, ObjectiveMode mode,
                                std::optional<double> emission_cap) {
    core::require_valid(scenario);
    PlanningModel m;
    m.scenario = scenario;
    m.mode = mode;
    m.fingerprint = core::scenario_fingerprint(scenario);
    Builder builder(scenario, m);
    builder.build(mode, emission_cap);
    return m;
}

PlanningModel build_exact_milp(const ScenarioConfig& scenario, ObjectiveMode mode,
                               std::optional<double> emission_cap) {
    core::require_valid(scenario);
    PlanningModel m;
    m.scenario = scenario;
    m.mode = mode;
    m.fingerprint = core::scenario_fingerprint(scenario);
    Builder builder(scenario, m, /*exact_commitment=*/true);
    builder.build(mode, emission_cap);
    return m;
}

}  // namespace h2plan::assemble
