#include "h2plan/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace h2plan::pareto {

using assemble::PlanSolution;
using assemble::PlanningModel;
using assemble::Quantity;
using core::ObjectiveMode;
using core::ScenarioConfig;
using core::TechKind;

namespace {

PlanSolution solve_mode(const ScenarioConfig& cfg, ObjectiveMode mode,
                        std::optional<double> cap, const solve::SolveOptions& options,
                        double augmentation = 0.0) {
    PlanningModel model = assemble::build_planning_lp(cfg, mode, cap);
    if (augmentation != 0.0) {
        // reward emission slack: cost - delta*(cap - EC_total), implemented
        // by adding delta*ec coefficients on thermal dispatch
        for (int r = 0; r < static_cast<int>(cfg.regions.size()); ++r) {
            const auto& region = cfg.regions[r];
            for (int i = 0; i < static_cast<int>(cfg.technologies.size()); ++i) {
                const auto& tech = cfg.technologies[static_cast<size_t>(i)];
                if (tech.kind != TechKind::TU && tech.kind != TechKind::CHP) continue;
                auto it = region.emission_factors.find(tech.id);
                if (it == region.emission_factors.end() || it->second == 0.0) continue;
                for (int t = 0; t < cfg.horizon_hours; ++t) {
                    const int var = model.var({Quantity::Dispatch, r, i, t, -1});
                    if (var >= 0) model.lp.add_obj(var, augmentation * it->second);
                }
            }
        }
        if (cap) model.lp.obj_constant -= augmentation * *cap;
    }
    auto res = solve::solve(model.lp, options);
    if (res.status != solve::SolveStatus::Optimal)
        throw std::runtime_error(std::string("pareto solve (") + core::to_string(mode) +
                                 ") on scenario '" + cfg.name +
                                 "' ended " + solve::to_string(res.status));
    return assemble::extract_solution(model, res);
}

}  // namespace

Anchors compute_anchors(const ScenarioConfig& cfg, const solve::SolveOptions& options) {
    Anchors out;
    out.min_cost = solve_mode(cfg, ObjectiveMode::MinCost, std::nullopt, options);
    PlanSolution co2_first = solve_mode(cfg, ObjectiveMode::MinCo2, std::nullopt, options);
    // Lexicographic second stage: cheapest plan at the optimal emission
    // level. A cap placed exactly at the unconstrained minimum leaves the
    // cap row doubly degenerate (zero slack, zero dual), so it gets a sliver
    // of headroom relative to the frontier span.
    const double z = co2_first.co2_tons;
    const double span = std::max(0.0, out.min_cost.co2_tons - z);
    const double slack = std::max(1e-6 * span, 1e-9 * (1.0 + std::abs(z)));
    out.lexicographic_cap = z + slack;
    out.min_co2 = solve_mode(cfg, ObjectiveMode::CostUnderCap, out.lexicographic_cap, options);
    return out;
}

ParetoFrontier frontier(const ScenarioConfig& cfg, const ParetoOptions& options) {
    if (options.n_points < 2)
        throw std::invalid_argument("frontier needs at least two points");
    ParetoFrontier out;
    out.anchors = compute_anchors(cfg, options.solver);

    const double ec_max = out.anchors.min_cost.co2_tons;
    const double ec_min = out.anchors.min_co2.co2_tons;
    const double cost_min = out.anchors.min_cost.costs.total();
    const double cost_max = out.anchors.min_co2.costs.total();

    const double range = ec_max - ec_min;
    if (range <= 1e-9 * (1.0 + std::abs(ec_max))) {
        ParetoPoint p;
        p.epsilon = ec_min;
        p.emissions = out.anchors.min_co2.co2_tons;
        p.cost = out.anchors.min_co2.costs.total();
        p.reduction_cost = std::numeric_limits<double>::quiet_NaN();
        p.solution = out.anchors.min_co2;
        out.points.push_back(std::move(p));
        return out;
    }

    const double delta = options.augmentation_weight *
                         std::max(1.0, std::abs(cost_max - cost_min)) /
                         std::max(1.0, range);

    std::vector<double> grid;
    for (int i = 0; i < options.n_points; ++i) {
        double eps;
        if (options.log_spaced && ec_min > 0.0) {
            eps = ec_max * std::pow(ec_min / ec_max,
                                    static_cast<double>(i) / (options.n_points - 1));
        } else {
            eps = ec_max - range * static_cast<double>(i) / (options.n_points - 1);
        }
        grid.push_back(eps);
    }

    for (size_t gi = 0; gi < grid.size(); ++gi) {
        const double eps = grid[gi];
        ParetoPoint p;
        // keep every cap a sliver away from the degenerate geometry and
        // report the cap actually used; the tight end reuses the anchor's
        // cap so the endpoint solve is identical to the anchor
        const double cap = gi + 1 == grid.size() ? out.anchors.lexicographic_cap
                                                 : eps + 1e-6 * range;
        p.epsilon = cap;
        try {
            p.solution = solve_mode(cfg, ObjectiveMode::CostUnderCap, cap, options.solver,
                                    -delta);
            p.emissions = p.solution.co2_tons;
            p.cost = p.solution.costs.total();
        } catch (const std::exception&) {
            p.feasible = false;
            p.emissions = std::numeric_limits<double>::quiet_NaN();
            p.cost = std::numeric_limits<double>::quiet_NaN();
            ++out.infeasible_points;
        }
        out.points.push_back(std::move(p));
    }

    // reduction cost vs the min-CO2 baseline; points within solver noise of
    // the baseline emissions have no defined ratio
    const double base_cost = out.anchors.min_co2.costs.total();
    const double base_ec = out.anchors.min_co2.co2_tons;
    const double ec_noise = std::max(1e-9, 1e-6 * range);
    for (auto& p : out.points) {
        if (!p.feasible || std::abs(base_ec - p.emissions) < ec_noise) {
            p.reduction_cost = std::numeric_limits<double>::quiet_NaN();
        } else {
            p.reduction_cost = (p.cost - base_cost) / (base_ec - p.emissions);
        }
    }
    std::stable_sort(out.points.begin(), out.points.end(),
                     [](const ParetoPoint& a, const ParetoPoint& b) {
                         const double ea = std::isnan(a.emissions) ? a.epsilon : a.emissions;
                         const double eb = std::isnan(b.emissions) ? b.epsilon : b.emissions;
                         return ea > eb;
                     });
    return out;
}

void write_frontier_csv(const ParetoFrontier& frontier, const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write frontier CSV '" + path.string() + "'");
    f << "epsilon,emissions_tons,cost_usd,reduction_cost_usd_per_ton\n";
    char buf[160];
    for (const auto& p : frontier.points) {
        if (!p.feasible) {
            std::snprintf(buf, sizeof(buf), "%.12g,,,infeasible\n", p.epsilon);
            f << buf;
            continue;
        }
        if (std::isnan(p.reduction_cost))
            std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,\n", p.epsilon, p.emissions,
                          p.cost);
        else
            std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g\n", p.epsilon,
                          p.emissions, p.cost, p.reduction_cost);
        f << buf;
    }
}

}  // namespace h2plan::pareto
