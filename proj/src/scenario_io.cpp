#include "h2plan/scenario_io.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace h2plan::core {
namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

class Collector {
  public:
    void fail(const std::string& path, const std::string& message) {
        diags_.push_back({path, message});
    }
    void throw_if_failed() {
        if (!diags_.empty()) throw ScenarioError(std::move(diags_));
    }
    std::vector<Diagnostic>& diags() { return diags_; }

  private:
    std::vector<Diagnostic> diags_;
};

double get_number(const ordered_json& j, const std::string& key, const std::string& path,
                  Collector& c, double fallback, bool required = false) {
    if (!j.contains(key)) {
        if (required) c.fail(path + "." + key, "missing required field");
        return fallback;
    }
    if (!j[key].is_number()) {
        c.fail(path + "." + key, "expected a number");
        return fallback;
    }
    return j[key].get<double>();
}

int get_int(const ordered_json& j, const std::string& key, const std::string& path,
            Collector& c, int fallback, bool required = false) {
    if (!j.contains(key)) {
        if (required) c.fail(path + "." + key, "missing required field");
        return fallback;
    }
    if (!j[key].is_number_integer()) {
        c.fail(path + "." + key, "expected an integer");
        return fallback;
    }
    return j[key].get<int>();
}

std::string get_string(const ordered_json& j, const std::string& key, const std::string& path,
                       Collector& c, const std::string& fallback, bool required = false) {
    if (!j.contains(key)) {
        if (required) c.fail(path + "." + key, "missing required field");
        return fallback;
    }
    if (!j[key].is_string()) {
        c.fail(path + "." + key, "expected a string");
        return fallback;
    }
    return j[key].get<std::string>();
}

// Accepts either the canonical spelling or a table spelling with the given
// conversion factor. Using both is a config error.
double dual_unit_number(const ordered_json& j, const std::string& canonical,
                        const std::string& table, double factor, const std::string& path,
                        Collector& c, double fallback) {
    const bool has_c = j.contains(canonical);
    const bool has_t = j.contains(table);
    if (has_c && has_t) {
        c.fail(path, "both '" + canonical + "' and '" + table + "' given");
        return fallback;
    }
    if (has_c) return get_number(j, canonical, path, c, fallback);
    if (has_t) return get_number(j, table, path, c, fallback) * factor;
    return fallback;
}

fs::path resolve_csv(const fs::path& rel, const fs::path& base_dir) {
    if (rel.is_absolute()) return rel;
    if (const char* env = std::getenv("H2PLAN_CONFIG_PATH")) {
        fs::path cand = fs::path(env) / rel;
        if (fs::exists(cand)) return cand;
    }
    if (!base_dir.empty()) {
        fs::path cand = base_dir / rel;
        if (fs::exists(cand)) return cand;
    }
    return rel;
}

std::vector<double> get_series(const ordered_json& j, const std::string& key,
                               const std::string& path, Collector& c,
                               const fs::path& base_dir, bool required = true) {
    std::vector<double> out;
    if (!j.contains(key)) {
        if (required) c.fail(path + "." + key, "missing required series");
        return out;
    }
    const auto& v = j[key];
    if (v.is_array()) {
        out.reserve(v.size());
        for (size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) {
                c.fail(path + "." + key + "[" + std::to_string(i) + "]", "expected a number");
                return {};
            }
            out.push_back(v[i].get<double>());
        }
        return out;
    }
    if (v.is_object() && v.contains("csv") && v["csv"].is_string()) {
        fs::path p = resolve_csv(v["csv"].get<std::string>(), base_dir);
        try {
            return read_series_csv(p);
        } catch (const std::exception& e) {
            c.fail(path + "." + key, e.what());
            return {};
        }
    }
    if (v.is_number()) {  // scalar broadcast is intentionally not supported
        c.fail(path + "." + key, "expected an array or {\"csv\": path}, got a scalar");
        return {};
    }
    c.fail(path + "." + key, "expected an array or {\"csv\": path}");
    return out;
}

CostParams parse_cost(const ordered_json& j, const std::string& path, Collector& c,
                      TechKind kind) {
    CostParams cost;
    if (kind == TechKind::HS) {
        cost.capital = get_number(j, "capital_usd_per_kg", path, c, 0.0);
    } else if (kind == TechKind::COP) {
        cost.capital = get_number(j, "capital_usd_per_kg_h", path, c, 0.0);
    } else {
        cost.capital = dual_unit_number(j, "capital_usd_per_mw", "capital_usd_per_kw",
                                        units::kKwPerMw, path, c, 0.0);
    }
    if (j.contains("fixed_om_percent") && j.contains("fixed_om_fraction"))
        c.fail(path, "both 'fixed_om_percent' and 'fixed_om_fraction' given");
    if (j.contains("fixed_om_percent"))
        cost.fixed_om_fraction = get_number(j, "fixed_om_percent", path, c, 0.0) / 100.0;
    else
        cost.fixed_om_fraction = get_number(j, "fixed_om_fraction", path, c, 0.0);
    cost.variable_om = dual_unit_number(j, "variable_om_usd_per_mwh", "variable_om_usd_per_kwh",
                                        units::kKwhPerMwh, path, c, 0.0);
    cost.startup_cost = dual_unit_number(j, "startup_cost_usd_per_mw", "startup_cost_usd_per_kw",
                                         units::kKwPerMw, path, c, 0.0);
    cost.lifetime_years = get_int(j, "lifetime_years", path, c, 1, true);
    cost.interest_rate = get_number(j, "interest_rate", path, c, 0.07);
    return cost;
}

FlexParams parse_flex(const ordered_json& j, const std::string& path, Collector& c) {
    FlexParams f;
    f.min_load = get_number(j, "min_load", path, c, 0.0);
    f.max_load = get_number(j, "max_load", path, c, 1.0);
    f.ramp_up = get_number(j, "ramp_up", path, c, 1.0);
    f.ramp_down = get_number(j, "ramp_down", path, c, 1.0);
    f.startup_ramp = get_number(j, "startup_ramp", path, c, std::max(f.min_load, f.ramp_up));
    f.shutdown_ramp = get_number(j, "shutdown_ramp", path, c, std::max(f.min_load, f.ramp_down));
    f.min_up_hours = get_int(j, "min_up_hours", path, c, 1);
    f.min_down_hours = get_int(j, "min_down_hours", path, c, 1);
    if (j.contains("initial_online_fraction"))
        f.initial_online_fraction = get_number(j, "initial_online_fraction", path, c, 0.0);
    return f;
}

ConversionParams parse_conversion(const ordered_json& j, const std::string& path, Collector& c) {
    ConversionParams cv;
    cv.electric_eff = get_number(j, "electric_eff", path, c, 1.0);
    cv.waste_heat_eff = get_number(j, "waste_heat_eff", path, c, 0.0);
    cv.water_per_kg_h2 = get_number(j, "water_per_kg_h2", path, c, 0.0);
    cv.oxygen_per_kg_h2 = get_number(j, "oxygen_per_kg_h2", path, c, 0.0);
    cv.cop_mwh_per_kg = dual_unit_number(j, "cop_mwh_per_kg", "cop_kwh_per_kg",
                                         1.0 / units::kKwhPerMwh, path, c, 0.0);
    cv.chp_heat_eff = get_number(j, "chp_heat_eff", path, c, 0.0);
    return cv;
}

StorageParams parse_storage(const ordered_json& j, const std::string& path, Collector& c) {
    StorageParams s;
    s.charge_eff = get_number(j, "charge_eff", path, c, 1.0);
    s.discharge_eff = get_number(j, "discharge_eff", path, c, 1.0);
    s.loss_rate = get_number(j, "loss_rate", path, c, 0.0);
    s.energy_capital = dual_unit_number(j, "energy_capital_usd_per_mwh",
                                        "energy_capital_usd_per_kwh", units::kKwhPerMwh,
                                        path, c, 0.0);
    s.existing_duration_h = get_number(j, "existing_duration_h", path, c, 0.0);
    return s;
}

TechnologySpec parse_technology(const ordered_json& j, const std::string& path, Collector& c) {
    TechnologySpec t;
    t.id = get_string(j, "id", path, c, "", true);
    std::string kind = get_string(j, "kind", path, c, "", true);
    if (auto k = tech_kind_from_string(kind)) {
        t.kind = *k;
    } else {
        c.fail(path + ".kind", "unknown technology kind '" + kind + "'");
    }
    if (j.contains("cost")) t.cost = parse_cost(j["cost"], path + ".cost", c, t.kind);
    if (j.contains("flex")) t.flex = parse_flex(j["flex"], path + ".flex", c);
    if (j.contains("conversion"))
        t.conv = parse_conversion(j["conversion"], path + ".conversion", c);
    if (j.contains("storage")) t.storage = parse_storage(j["storage"], path + ".storage", c);
    if (j.contains("modules")) {
        ModuleSpec m;
        m.module_mw = get_number(j["modules"], "module_mw", path + ".modules", c, 0.0, true);
        m.module_count = get_int(j["modules"], "module_count", path + ".modules", c, 0, true);
        t.modules = m;
    }
    return t;
}

std::map<std::string, double> parse_tech_map(const ordered_json& j, const std::string& key,
                                             const std::string& path, Collector& c) {
    std::map<std::string, double> out;
    if (!j.contains(key)) return out;
    if (!j[key].is_object()) {
        c.fail(path + "." + key, "expected an object of tech -> value");
        return out;
    }
    for (const auto& [tech, v] : j[key].items()) {
        if (!v.is_number()) {
            c.fail(path + "." + key + "." + tech, "expected a number");
            continue;
        }
        out[tech] = v.get<double>();
    }
    return out;
}

RegionSpec parse_region(const ordered_json& j, const std::string& path, Collector& c,
                        const fs::path& base_dir) {
    RegionSpec r;
    r.id = get_string(j, "id", path, c, "", true);
    r.electric_demand = get_series(j, "electric_demand", path, c, base_dir);
    r.export_demand = get_series(j, "export_demand", path, c, base_dir, false);
    r.heat_demand = get_series(j, "heat_demand", path, c, base_dir, false);
    r.hydrogen_demand = get_series(j, "hydrogen_demand", path, c, base_dir, false);
    r.wind_cf = get_series(j, "wind_cf", path, c, base_dir, false);
    r.solar_cf = get_series(j, "solar_cf", path, c, base_dir, false);
    r.existing_capacity = parse_tech_map(j, "existing_capacity", path, c);
    r.build_limit = parse_tech_map(j, "build_limit", path, c);
    r.fuel_prices = parse_tech_map(j, "fuel_prices", path, c);
    r.emission_factors = parse_tech_map(j, "emission_factors", path, c);
    return r;
}

Topology parse_topology(const ordered_json& j, const std::string& path, Collector& c) {
    Topology topo;
    if (j.contains("corridors")) {
        for (size_t i = 0; i < j["corridors"].size(); ++i) {
            const auto& cj = j["corridors"][i];
            std::string p = path + ".corridors[" + std::to_string(i) + "]";
            Corridor cr;
            cr.from = get_string(cj, "from", p, c, "", true);
            cr.to = get_string(cj, "to", p, c, "", true);
            cr.length_km = get_number(cj, "length_km", p, c, 0.0, true);
            cr.existing_mw = dual_unit_number(cj, "existing_mw", "existing_gw", 1000.0, p, c, 0.0);
            cr.limit_mw = dual_unit_number(cj, "limit_mw", "limit_gw", 1000.0, p, c, 0.0);
            cr.capital_per_mw = dual_unit_number(cj, "capital_usd_per_mw", "capital_usd_per_kw",
                                                 units::kKwPerMw, p, c, 0.0);
            cr.lifetime_years = get_int(cj, "lifetime_years", p, c, 40);
            cr.interest_rate = get_number(cj, "interest_rate", p, c, 0.07);
            topo.corridors.push_back(cr);
        }
    }
    if (j.contains("hydrogen_adjacency")) {
        for (size_t i = 0; i < j["hydrogen_adjacency"].size(); ++i) {
            const auto& lj = j["hydrogen_adjacency"][i];
            std::string p = path + ".hydrogen_adjacency[" + std::to_string(i) + "]";
            HydrogenLink l;
            l.from = get_string(lj, "from", p, c, "", true);
            l.to = get_string(lj, "to", p, c, "", true);
            l.length_km = get_number(lj, "length_km", p, c, 0.0, true);
            topo.hydrogen_adjacency.push_back(l);
        }
    }
    return topo;
}

ScenarioConfig parse_scenario(const ordered_json& j, Collector& c, const fs::path& base_dir) {
    ScenarioConfig cfg;
    cfg.schema_version = get_int(j, "schema_version", "", c, 1, true);
    cfg.name = get_string(j, "name", "", c, "scenario");
    cfg.horizon_hours = get_int(j, "horizon_hours", "", c, 0, true);
    std::string mode = get_string(j, "objective_mode", "", c, "min-cost");
    if (auto m = objective_mode_from_string(mode)) {
        cfg.objective_mode = *m;
    } else {
        c.fail("objective_mode", "unknown objective mode '" + mode + "'");
    }
    if (j.contains("rps_gamma")) cfg.rps_gamma = get_number(j, "rps_gamma", "", c, 0.0);
    if (j.contains("emission_cap")) cfg.emission_cap = get_number(j, "emission_cap", "", c, 0.0);
    cfg.lhv_mj_per_kg = get_number(j, "lhv_mj_per_kg", "", c, units::kDefaultLhvMjPerKg);
    if (j.contains("commitment_wrap") && j["commitment_wrap"].is_boolean())
        cfg.commitment_wrap = j["commitment_wrap"].get<bool>();

    if (j.contains("chain_ablation")) {
        for (size_t i = 0; i < j["chain_ablation"].size(); ++i) {
            const auto& a = j["chain_ablation"][i];
            std::string p = "chain_ablation[" + std::to_string(i) + "]";
            if (!a.is_string()) {
                c.fail(p, "expected a kind name string");
                continue;
            }
            if (auto k = tech_kind_from_string(a.get<std::string>()))
                cfg.chain_ablation.insert(*k);
            else
                c.fail(p, "unknown technology kind '" + a.get<std::string>() + "'");
        }
    }

    if (j.contains("price_book")) {
        const auto& pj = j["price_book"];
        cfg.price_book.water_usd_per_kg =
            get_number(pj, "water_usd_per_kg", "price_book", c, cfg.price_book.water_usd_per_kg);
        cfg.price_book.oxygen_usd_per_kg = get_number(pj, "oxygen_usd_per_kg", "price_book", c,
                                                      cfg.price_book.oxygen_usd_per_kg);
        cfg.price_book.hydrogen_usd_per_kg = get_number(
            pj, "hydrogen_usd_per_kg", "price_book", c, cfg.price_book.hydrogen_usd_per_kg);
        cfg.price_book.cny_per_usd =
            get_number(pj, "cny_per_usd", "price_book", c, cfg.price_book.cny_per_usd);
    }
    if (j.contains("reserve_policy")) {
        const auto& rj = j["reserve_policy"];
        auto& rp = cfg.reserve_policy;
        rp.demand_reserve_fraction = get_number(rj, "demand_reserve_fraction", "reserve_policy",
                                                c, rp.demand_reserve_fraction);
        rp.wind_error = get_number(rj, "wind_error", "reserve_policy", c, rp.wind_error);
        rp.solar_error = get_number(rj, "solar_error", "reserve_policy", c, rp.solar_error);
        rp.es_reserve_rule =
            get_string(rj, "es_reserve_rule", "reserve_policy", c, rp.es_reserve_rule);
        if (rj.contains("wind_credit"))
            rp.wind_credit = get_series(rj, "wind_credit", "reserve_policy", c, base_dir);
        if (rj.contains("solar_credit"))
            rp.solar_credit = get_series(rj, "solar_credit", "reserve_policy", c, base_dir);
    }

    // Technology library include, then inline technologies (inline wins on id).
    if (j.contains("technologies_from")) {
        fs::path p = resolve_csv(get_string(j, "technologies_from", "", c, ""), base_dir);
        std::ifstream in(p);
        if (!in) {
            c.fail("technologies_from", "cannot open '" + p.string() + "'");
        } else {
            ordered_json lib = ordered_json::parse(in, nullptr, false);
            if (lib.is_discarded() || !lib.contains("technologies")) {
                c.fail("technologies_from", "not a technology library file");
            } else {
                for (size_t i = 0; i < lib["technologies"].size(); ++i)
                    cfg.technologies.push_back(
                        parse_technology(lib["technologies"][i],
                                         "technologies_from[" + std::to_string(i) + "]", c));
            }
        }
    }
    if (j.contains("technologies")) {
        for (size_t i = 0; i < j["technologies"].size(); ++i) {
            auto t = parse_technology(j["technologies"][i],
                                      "technologies[" + std::to_string(i) + "]", c);
            auto prior = std::find_if(cfg.technologies.begin(), cfg.technologies.end(),
                                      [&](const TechnologySpec& e) { return e.id == t.id; });
            if (prior != cfg.technologies.end())
                *prior = std::move(t);
            else
                cfg.technologies.push_back(std::move(t));
        }
    }

    if (j.contains("regions")) {
        for (size_t i = 0; i < j["regions"].size(); ++i)
            cfg.regions.push_back(parse_region(
                j["regions"][i], "regions[" + std::to_string(i) + "]", c, base_dir));
    } else {
        c.fail("regions", "missing required field");
    }
    if (j.contains("topology")) cfg.topology = parse_topology(j["topology"], "topology", c);

    // Demands default to zero series when omitted.
    for (auto& r : cfg.regions) {
        auto fill = [&](std::vector<double>& s) {
            if (s.empty()) s.assign(static_cast<size_t>(std::max(cfg.horizon_hours, 0)), 0.0);
        };
        fill(r.export_demand);
        fill(r.heat_demand);
        fill(r.hydrogen_demand);
        fill(r.wind_cf);
        fill(r.solar_cf);
    }
    return cfg;
}

ordered_json series_json(const std::vector<double>& s) {
    ordered_json a = ordered_json::array();
    for (double v : s) a.push_back(v);
    return a;
}

ordered_json cost_json(const CostParams& c, TechKind kind) {
    ordered_json j;
    if (kind == TechKind::HS)
        j["capital_usd_per_kg"] = c.capital;
    else if (kind == TechKind::COP)
        j["capital_usd_per_kg_h"] = c.capital;
    else
        j["capital_usd_per_mw"] = c.capital;
    j["fixed_om_fraction"] = c.fixed_om_fraction;
    j["variable_om_usd_per_mwh"] = c.variable_om;
    j["startup_cost_usd_per_mw"] = c.startup_cost;
    j["lifetime_years"] = c.lifetime_years;
    j["interest_rate"] = c.interest_rate;
    return j;
}

}  // namespace

ScenarioConfig load_scenario(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ScenarioError(
            std::vector<Diagnostic>{{path.string(), "cannot open scenario file"}});
    std::stringstream buf;
    buf << in.rdbuf();
    return load_scenario_text(buf.str(), path.parent_path());
}

ScenarioConfig load_scenario_text(const std::string& json_text, const fs::path& base_dir) {
    ordered_json j = ordered_json::parse(json_text, nullptr, false);
    if (j.is_discarded())
        throw ScenarioError(std::vector<Diagnostic>{{"", "scenario document is not valid JSON"}});
    Collector c;
    ScenarioConfig cfg = parse_scenario(j, c, base_dir);
    c.throw_if_failed();
    auto diags = validate_scenario(cfg);
    if (!diags.empty()) throw ScenarioError(std::move(diags));
    return cfg;
}

std::string save_scenario(const ScenarioConfig& cfg) {
    ordered_json j;
    j["schema_version"] = cfg.schema_version;
    j["name"] = cfg.name;
    j["horizon_hours"] = cfg.horizon_hours;
    j["objective_mode"] = to_string(cfg.objective_mode);
    if (cfg.rps_gamma) j["rps_gamma"] = *cfg.rps_gamma;
    if (cfg.emission_cap) j["emission_cap"] = *cfg.emission_cap;
    j["lhv_mj_per_kg"] = cfg.lhv_mj_per_kg;
    j["commitment_wrap"] = cfg.commitment_wrap;
    if (!cfg.chain_ablation.empty()) {
        ordered_json a = ordered_json::array();
        for (TechKind k : cfg.chain_ablation) a.push_back(to_string(k));
        j["chain_ablation"] = a;
    }
    j["price_book"] = {{"water_usd_per_kg", cfg.price_book.water_usd_per_kg},
                       {"oxygen_usd_per_kg", cfg.price_book.oxygen_usd_per_kg},
                       {"hydrogen_usd_per_kg", cfg.price_book.hydrogen_usd_per_kg},
                       {"cny_per_usd", cfg.price_book.cny_per_usd}};
    {
        ordered_json r;
        r["demand_reserve_fraction"] = cfg.reserve_policy.demand_reserve_fraction;
        r["wind_error"] = cfg.reserve_policy.wind_error;
        r["solar_error"] = cfg.reserve_policy.solar_error;
        r["es_reserve_rule"] = cfg.reserve_policy.es_reserve_rule;
        if (cfg.reserve_policy.wind_credit)
            r["wind_credit"] = series_json(*cfg.reserve_policy.wind_credit);
        if (cfg.reserve_policy.solar_credit)
            r["solar_credit"] = series_json(*cfg.reserve_policy.solar_credit);
        j["reserve_policy"] = r;
    }

    ordered_json techs = ordered_json::array();
    for (const auto& t : cfg.technologies) {
        ordered_json tj;
        tj["id"] = t.id;
        tj["kind"] = to_string(t.kind);
        tj["cost"] = cost_json(t.cost, t.kind);
        if (t.flex) {
            const auto& f = *t.flex;
            ordered_json fj = {{"min_load", f.min_load},
                               {"max_load", f.max_load},
                               {"ramp_up", f.ramp_up},
                               {"ramp_down", f.ramp_down},
                               {"startup_ramp", f.startup_ramp},
                               {"shutdown_ramp", f.shutdown_ramp},
                               {"min_up_hours", f.min_up_hours},
                               {"min_down_hours", f.min_down_hours}};
            if (f.initial_online_fraction)
                fj["initial_online_fraction"] = *f.initial_online_fraction;
            tj["flex"] = fj;
        }
        tj["conversion"] = {{"electric_eff", t.conv.electric_eff},
                            {"waste_heat_eff", t.conv.waste_heat_eff},
                            {"water_per_kg_h2", t.conv.water_per_kg_h2},
                            {"oxygen_per_kg_h2", t.conv.oxygen_per_kg_h2},
                            {"cop_mwh_per_kg", t.conv.cop_mwh_per_kg},
                            {"chp_heat_eff", t.conv.chp_heat_eff}};
        if (t.storage) {
            const auto& s = *t.storage;
            tj["storage"] = {{"charge_eff", s.charge_eff},
                             {"discharge_eff", s.discharge_eff},
                             {"loss_rate", s.loss_rate},
                             {"energy_capital_usd_per_mwh", s.energy_capital},
                             {"existing_duration_h", s.existing_duration_h}};
        }
        if (t.modules)
            tj["modules"] = {{"module_mw", t.modules->module_mw},
                             {"module_count", t.modules->module_count}};
        techs.push_back(tj);
    }
    j["technologies"] = techs;

    ordered_json regions = ordered_json::array();
    for (const auto& r : cfg.regions) {
        ordered_json rj;
        rj["id"] = r.id;
        rj["electric_demand"] = series_json(r.electric_demand);
        rj["export_demand"] = series_json(r.export_demand);
        rj["heat_demand"] = series_json(r.heat_demand);
        rj["hydrogen_demand"] = series_json(r.hydrogen_demand);
        rj["wind_cf"] = series_json(r.wind_cf);
        rj["solar_cf"] = series_json(r.solar_cf);
        rj["existing_capacity"] = ordered_json(r.existing_capacity);
        rj["build_limit"] = ordered_json(r.build_limit);
        rj["fuel_prices"] = ordered_json(r.fuel_prices);
        rj["emission_factors"] = ordered_json(r.emission_factors);
        regions.push_back(rj);
    }
    j["regions"] = regions;

    ordered_json topo;
    ordered_json corridors = ordered_json::array();
    for (const auto& cr : cfg.topology.corridors) {
        corridors.push_back({{"from", cr.from},
                             {"to", cr.to},
                             {"length_km", cr.length_km},
                             {"existing_mw", cr.existing_mw},
                             {"limit_mw", cr.limit_mw},
                             {"capital_usd_per_mw", cr.capital_per_mw},
                             {"lifetime_years", cr.lifetime_years},
                             {"interest_rate", cr.interest_rate}});
    }
    topo["corridors"] = corridors;
    ordered_json links = ordered_json::array();
    for (const auto& l : cfg.topology.hydrogen_adjacency)
        links.push_back({{"from", l.from}, {"to", l.to}, {"length_km", l.length_km}});
    topo["hydrogen_adjacency"] = links;
    j["topology"] = topo;

    return j.dump(2) + "\n";
}

void save_scenario_file(const ScenarioConfig& cfg, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario file '" + path.string() + "'");
    out << save_scenario(cfg);
}

static std::string sha256_hex(const unsigned char* data, size_t len) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int digest_len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    EVP_DigestUpdate(ctx, data, len);
    EVP_DigestFinal_ex(ctx, digest, &digest_len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(digest_len * 2);
    for (unsigned int i = 0; i < digest_len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string scenario_fingerprint(const ScenarioConfig& cfg) {
    std::string canon = save_scenario(cfg);
    return sha256_hex(reinterpret_cast<const unsigned char*>(canon.data()), canon.size());
}

std::string file_sha256(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    return sha256_hex(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size());
}

std::vector<double> read_series_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open series CSV '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("series CSV '" + path.string() + "' is empty");
    // Tolerate trailing \r from CRLF files.
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line != "hour,value")
        throw std::runtime_error("series CSV '" + path.string() +
                                 "' line 1: expected header 'hour,value'");
    std::vector<double> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("series CSV '" + path.string() + "' line " +
                                     std::to_string(lineno) + ": missing comma");
        try {
            size_t used = 0;
            long hour = std::stol(line.substr(0, comma), &used);
            double value = std::stod(line.substr(comma + 1));
            if (hour != static_cast<long>(out.size()) + 1)
                throw std::runtime_error("hours must be contiguous starting at 1");
            out.push_back(value);
        } catch (const std::exception& e) {
            throw std::runtime_error("series CSV '" + path.string() + "' line " +
                                     std::to_string(lineno) + ": " + e.what());
        }
    }
    if (out.empty())
        throw std::runtime_error("series CSV '" + path.string() + "' has no data rows");
    return out;
}

void write_series_csv(const fs::path& path, const std::vector<double>& values) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write series CSV '" + path.string() + "'");
    out << "hour,value\n";
    char buf[64];
    for (size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.12g\n", i + 1, values[i]);
        out << buf;
    }
}

}  // namespace h2plan::core
