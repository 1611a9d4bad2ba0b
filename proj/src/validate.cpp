#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include "h2plan/types.hpp"

namespace h2plan::core {
namespace {

struct Checker {
    std::vector<Diagnostic> diags;

    void fail(std::string path, std::string message) {
        diags.push_back({std::move(path), std::move(message)});
    }

    void check(bool ok, const std::string& path, const std::string& message) {
        if (!ok) fail(path, message);
    }
};

bool identifier_like(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-';
    });
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

void check_series(Checker& c, const std::string& path, const std::vector<double>& s,
                  int horizon, bool is_cf) {
    if (static_cast<int>(s.size()) != horizon) {
        std::ostringstream os;
        os << "series length " << s.size() << " does not match horizon_hours " << horizon;
        c.fail(path, os.str());
        return;
    }
    for (size_t i = 0; i < s.size(); ++i) {
        if (!std::isfinite(s[i])) {
            c.fail(path + "[" + std::to_string(i) + "]", "value is not finite");
        } else if (is_cf && (s[i] < 0.0 || s[i] > 1.0)) {
            c.fail(path + "[" + std::to_string(i) + "]", "capacity factor out of [0,1]");
        } else if (!is_cf && s[i] < 0.0) {
            c.fail(path + "[" + std::to_string(i) + "]", "negative value");
        }
    }
}

void check_cost(Checker& c, const std::string& path, const CostParams& cost) {
    c.check(finite_nonneg(cost.capital), path + ".capital", "must be >= 0");
    c.check(finite_nonneg(cost.fixed_om_fraction), path + ".fixed_om_fraction", "must be >= 0");
    c.check(finite_nonneg(cost.variable_om), path + ".variable_om", "must be >= 0");
    c.check(finite_nonneg(cost.startup_cost), path + ".startup_cost", "must be >= 0");
    c.check(cost.lifetime_years >= 1, path + ".lifetime_years", "must be >= 1");
    c.check(finite_nonneg(cost.interest_rate), path + ".interest_rate", "must be >= 0");
}

void check_flex(Checker& c, const std::string& path, const FlexParams& f) {
    c.check(f.min_load >= 0.0 && f.min_load <= f.max_load && f.max_load <= 1.0,
            path, "load range must satisfy 0 <= min_load <= max_load <= 1");
    c.check(f.ramp_up > 0.0 && f.ramp_up <= 1.0, path + ".ramp_up", "must be in (0,1]");
    c.check(f.ramp_down > 0.0 && f.ramp_down <= 1.0, path + ".ramp_down", "must be in (0,1]");
    c.check(f.startup_ramp > 0.0 && f.startup_ramp <= 1.0, path + ".startup_ramp",
            "must be in (0,1]");
    c.check(f.shutdown_ramp > 0.0 && f.shutdown_ramp <= 1.0, path + ".shutdown_ramp",
            "must be in (0,1]");
    c.check(f.min_up_hours >= 1, path + ".min_up_hours", "must be >= 1");
    c.check(f.min_down_hours >= 1, path + ".min_down_hours", "must be >= 1");
    if (f.initial_online_fraction)
        c.check(*f.initial_online_fraction >= 0.0 && *f.initial_online_fraction <= 1.0,
                path + ".initial_online_fraction", "must be in [0,1]");
}

void check_technology(Checker& c, const std::string& path, const TechnologySpec& t) {
    c.check(identifier_like(t.id), path + ".id",
            "technology id must look like an identifier");
    check_cost(c, path + ".cost", t.cost);

    const bool committed = is_committed_kind(t.kind);
    if (committed && !t.flex)
        c.fail(path + ".flex", "committed technology kinds require flex parameters");
    if (!committed && t.flex)
        c.fail(path + ".flex", "flex parameters only apply to TU/CHP/EC/HT/FC");
    if (t.flex) check_flex(c, path + ".flex", *t.flex);

    const bool storagelike = is_storage_kind(t.kind);
    if (storagelike && !t.storage)
        c.fail(path + ".storage", "storage technology kinds require storage parameters");
    if (!storagelike && t.storage)
        c.fail(path + ".storage", "storage parameters only apply to BES/HPS/HS/HST");
    if (t.storage) {
        const auto& s = *t.storage;
        c.check(s.charge_eff > 0.0 && s.charge_eff <= 1.0, path + ".storage.charge_eff",
                "efficiency must be in (0,1]");
        c.check(s.discharge_eff > 0.0 && s.discharge_eff <= 1.0,
                path + ".storage.discharge_eff", "efficiency must be in (0,1]");
        c.check(s.loss_rate >= 0.0 && s.loss_rate < 1.0, path + ".storage.loss_rate",
                "must be in [0,1)");
        if (t.kind == TechKind::HS)
            c.check(s.loss_rate == 0.0, path + ".storage.loss_rate",
                    "hydrogen storage is modelled lossless");
        c.check(finite_nonneg(s.energy_capital), path + ".storage.energy_capital",
                "must be >= 0");
        c.check(finite_nonneg(s.existing_duration_h), path + ".storage.existing_duration_h",
                "must be >= 0");
    }

    const auto& cv = t.conv;
    c.check(cv.electric_eff > 0.0 && cv.electric_eff <= 1.0, path + ".conversion.electric_eff",
            "efficiency must be in (0,1]");
    c.check(cv.waste_heat_eff >= 0.0 && cv.waste_heat_eff <= 1.0,
            path + ".conversion.waste_heat_eff", "must be in [0,1]");
    c.check(finite_nonneg(cv.water_per_kg_h2), path + ".conversion.water_per_kg_h2",
            "must be >= 0");
    c.check(finite_nonneg(cv.oxygen_per_kg_h2), path + ".conversion.oxygen_per_kg_h2",
            "must be >= 0");
    c.check(finite_nonneg(cv.cop_mwh_per_kg), path + ".conversion.cop_mwh_per_kg",
            "must be >= 0");
    c.check(finite_nonneg(cv.chp_heat_eff), path + ".conversion.chp_heat_eff", "must be >= 0");
    if (t.kind == TechKind::CHP)
        c.check(cv.chp_heat_eff > 0.0, path + ".conversion.chp_heat_eff",
                "CHP requires a heat efficiency");

    if (t.modules) {
        c.check(t.modules->module_mw > 0.0, path + ".modules.module_mw", "must be > 0");
        c.check(t.modules->module_count >= 1, path + ".modules.module_count", "must be >= 1");
    }
}

void check_region(Checker& c, const std::string& path, const RegionSpec& r,
                  const ScenarioConfig& cfg) {
    c.check(identifier_like(r.id), path + ".id", "region id must look like an identifier");
    const int T = cfg.horizon_hours;
    check_series(c, path + ".electric_demand", r.electric_demand, T, false);
    check_series(c, path + ".export_demand", r.export_demand, T, false);
    check_series(c, path + ".heat_demand", r.heat_demand, T, false);
    check_series(c, path + ".hydrogen_demand", r.hydrogen_demand, T, false);
    check_series(c, path + ".wind_cf", r.wind_cf, T, true);
    check_series(c, path + ".solar_cf", r.solar_cf, T, true);

    auto check_tech_map = [&](const std::map<std::string, double>& m, const std::string& sub) {
        for (const auto& [tech, value] : m) {
            if (!cfg.find_tech(tech))
                c.fail(path + "." + sub + "." + tech, "unknown technology id");
            c.check(finite_nonneg(value), path + "." + sub + "." + tech, "must be >= 0");
        }
    };
    check_tech_map(r.existing_capacity, "existing_capacity");
    check_tech_map(r.build_limit, "build_limit");
    for (const auto& [tech, ef] : r.emission_factors) {
        if (!cfg.find_tech(tech))
            c.fail(path + ".emission_factors." + tech, "unknown technology id");
        c.check(finite_nonneg(ef), path + ".emission_factors." + tech, "must be >= 0");
    }
    for (const auto& [fuel, p] : r.fuel_prices)
        c.check(finite_nonneg(p), path + ".fuel_prices." + fuel, "must be >= 0");

    for (const auto& [tech, lim] : r.build_limit) {
        auto it = r.existing_capacity.find(tech);
        if (it != r.existing_capacity.end() && it->second > lim)
            c.fail(path + ".build_limit." + tech,
                   "existing capacity exceeds build limit");
    }
}

}  // namespace

std::vector<Diagnostic> validate_scenario(const ScenarioConfig& cfg) {
    Checker c;
    c.check(cfg.schema_version == 1, "schema_version", "unsupported schema version");
    c.check(cfg.horizon_hours >= 2, "horizon_hours", "horizon must be at least 2 hours");
    if (cfg.rps_gamma)
        c.check(*cfg.rps_gamma >= 0.0 && *cfg.rps_gamma <= 1.0, "rps_gamma",
                "must be in [0,1]");
    if (cfg.emission_cap)
        c.check(finite_nonneg(*cfg.emission_cap), "emission_cap", "must be >= 0");
    c.check(cfg.lhv_mj_per_kg > 0.0, "lhv_mj_per_kg", "must be > 0");

    c.check(cfg.price_book.water_usd_per_kg > 0.0, "price_book.water_usd_per_kg", "must be > 0");
    c.check(cfg.price_book.oxygen_usd_per_kg > 0.0, "price_book.oxygen_usd_per_kg",
            "must be > 0");
    c.check(cfg.price_book.hydrogen_usd_per_kg > 0.0, "price_book.hydrogen_usd_per_kg",
            "must be > 0");
    c.check(cfg.price_book.cny_per_usd > 0.0, "price_book.cny_per_usd", "must be > 0");

    const auto& rp = cfg.reserve_policy;
    c.check(rp.demand_reserve_fraction >= 0.0 && rp.demand_reserve_fraction <= 1.0,
            "reserve_policy.demand_reserve_fraction", "must be in [0,1]");
    c.check(rp.wind_error >= 0.0 && rp.wind_error <= 1.0, "reserve_policy.wind_error",
            "must be in [0,1]");
    c.check(rp.solar_error >= 0.0 && rp.solar_error <= 1.0, "reserve_policy.solar_error",
            "must be in [0,1]");
    c.check(rp.es_reserve_rule == "discharge-headroom", "reserve_policy.es_reserve_rule",
            "unknown rule (expected \"discharge-headroom\")");
    if (rp.wind_credit)
        check_series(c, "reserve_policy.wind_credit", *rp.wind_credit, cfg.horizon_hours, true);
    if (rp.solar_credit)
        check_series(c, "reserve_policy.solar_credit", *rp.solar_credit, cfg.horizon_hours,
                     true);

    std::set<std::string> tech_ids;
    for (size_t i = 0; i < cfg.technologies.size(); ++i) {
        const auto& t = cfg.technologies[i];
        std::string path = "technologies[" + std::to_string(i) + "]";
        if (!tech_ids.insert(t.id).second) c.fail(path + ".id", "duplicate technology id");
        check_technology(c, path, t);
    }

    std::set<std::string> region_ids;
    for (size_t i = 0; i < cfg.regions.size(); ++i) {
        const auto& r = cfg.regions[i];
        std::string path = "regions[" + std::to_string(i) + "]";
        if (!region_ids.insert(r.id).second) c.fail(path + ".id", "duplicate region id");
        check_region(c, path, r, cfg);
    }

    for (size_t i = 0; i < cfg.topology.corridors.size(); ++i) {
        const auto& cr = cfg.topology.corridors[i];
        std::string path = "topology.corridors[" + std::to_string(i) + "]";
        if (!cfg.find_region(cr.from)) c.fail(path + ".from", "unknown region id");
        if (!cfg.find_region(cr.to)) c.fail(path + ".to", "unknown region id");
        c.check(cr.from != cr.to, path, "corridor endpoints must differ");
        c.check(cr.length_km > 0.0, path + ".length_km", "must be > 0");
        c.check(finite_nonneg(cr.existing_mw), path + ".existing_mw", "must be >= 0");
        c.check(cr.existing_mw <= cr.limit_mw, path + ".limit_mw",
                "existing line capacity exceeds expansion limit");
        c.check(finite_nonneg(cr.capital_per_mw), path + ".capital_per_mw", "must be >= 0");
        c.check(cr.lifetime_years >= 1, path + ".lifetime_years", "must be >= 1");
    }
    for (size_t i = 0; i < cfg.topology.hydrogen_adjacency.size(); ++i) {
        const auto& l = cfg.topology.hydrogen_adjacency[i];
        std::string path = "topology.hydrogen_adjacency[" + std::to_string(i) + "]";
        if (!cfg.find_region(l.from)) c.fail(path + ".from", "unknown region id");
        if (!cfg.find_region(l.to)) c.fail(path + ".to", "unknown region id");
        c.check(l.from != l.to, path, "link endpoints must differ");
        c.check(l.length_km > 0.0, path + ".length_km", "must be > 0");
    }

    return std::move(c.diags);
}

}  // namespace h2plan::core
