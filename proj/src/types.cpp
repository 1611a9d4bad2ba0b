#include "h2plan/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace h2plan::core {

const char* to_string(TechKind k) {
    switch (k) {
        case TechKind::TU: return "tu";
        case TechKind::CHP: return "chp";
        case TechKind::WT: return "wt";
        case TechKind::PV: return "pv";
        case TechKind::BES: return "bes";
        case TechKind::HPS: return "hps";
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

std::optional<TechKind> tech_kind_from_string(const std::string& s) {
    static const std::map<std::string, TechKind> table = {
        {"tu", TechKind::TU},   {"chp", TechKind::CHP}, {"wt", TechKind::WT},
        {"pv", TechKind::PV},   {"bes", TechKind::BES}, {"hps", TechKind::HPS},
        {"ec", TechKind::EC},   {"ht", TechKind::HT},   {"fc", TechKind::FC},
        {"hs", TechKind::HS},   {"cop", TechKind::COP}, {"eb", TechKind::EB},
        {"hst", TechKind::HST}, {"line", TechKind::Line},
    };
    auto it = table.find(s);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

bool is_committed_kind(TechKind k) {
    return k == TechKind::TU || k == TechKind::CHP || k == TechKind::EC ||
           k == TechKind::HT || k == TechKind::FC;
}

bool is_storage_kind(TechKind k) {
    return k == TechKind::BES || k == TechKind::HPS || k == TechKind::HS ||
           k == TechKind::HST;
}

double amortized_cost(double capital, int lifetime_years, double rate) {
    if (rate == 0.0) return capital / static_cast<double>(lifetime_years);
    const double g = std::pow(1.0 + rate, lifetime_years);
    return capital * rate * g / (g - 1.0);
}

const char* to_string(ObjectiveMode m) {
    switch (m) {
        case ObjectiveMode::MinCost: return "min-cost";
        case ObjectiveMode::MinCo2: return "min-co2";
        case ObjectiveMode::CostUnderCap: return "cost-under-cap";
    }
    return "?";
}

std::optional<ObjectiveMode> objective_mode_from_string(const std::string& s) {
    if (s == "min-cost") return ObjectiveMode::MinCost;
    if (s == "min-co2") return ObjectiveMode::MinCo2;
    if (s == "cost-under-cap") return ObjectiveMode::CostUnderCap;
    return std::nullopt;
}

const TechnologySpec* ScenarioConfig::find_tech(const std::string& id) const {
    for (const auto& t : technologies)
        if (t.id == id) return &t;
    return nullptr;
}

const RegionSpec* ScenarioConfig::find_region(const std::string& id) const {
    for (const auto& r : regions)
        if (r.id == id) return &r;
    return nullptr;
}

int ScenarioConfig::region_index(const std::string& id) const {
    for (size_t i = 0; i < regions.size(); ++i)
        if (regions[i].id == id) return static_cast<int>(i);
    return -1;
}

ScenarioError::ScenarioError(std::vector<Diagnostic> diags) : diags_(std::move(diags)) {
    std::ostringstream os;
    os << "scenario validation failed (" << diags_.size() << " error"
       << (diags_.size() == 1 ? "" : "s") << ")";
    for (size_t i = 0; i < diags_.size() && i < 8; ++i)
        os << "\n  " << diags_[i].path << ": " << diags_[i].message;
    if (diags_.size() > 8) os << "\n  ...";
    summary_ = os.str();
}

void require_valid(const ScenarioConfig& config) {
    auto diags = validate_scenario(config);
    if (!diags.empty()) throw ScenarioError(std::move(diags));
}

}  // namespace h2plan::core
