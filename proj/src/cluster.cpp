#include "h2plan/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace h2plan::flex {

using solve::LinearProgram;
using solve::RowSense;

namespace {

std::string tname(const std::string& stem, const char* what, int t) {
    return std::string(what) + "_" + stem + "_t" + std::to_string(t + 1);
}

}  // namespace

ClusterVars add_cluster(LinearProgram& lp, const ClusterSpec& spec) {
    const int T = spec.horizon;
    if (T < 2) throw std::invalid_argument("cluster horizon must be at least 2");
    const auto& f = spec.flex;
    ClusterVars v;
    v.capacity = lp.add_var("cap_" + spec.name, spec.existing_mw, spec.capacity_limit_mw);
    v.online.resize(T);
    v.startup.resize(T);
    v.shutdown.resize(T);
    v.dispatch.resize(T);
    for (int t = 0; t < T; ++t) {
        v.online[t] = lp.add_var(tname(spec.name, "on", t), 0.0, solve::kInf);
        v.startup[t] = lp.add_var(tname(spec.name, "up", t), 0.0, solve::kInf);
        v.shutdown[t] = lp.add_var(tname(spec.name, "dn", t), 0.0, solve::kInf);
        v.dispatch[t] = lp.add_var(tname(spec.name, "p", t), 0.0, solve::kInf);
    }

    auto prev = [&](int t) { return (t + T - 1) % T; };
    auto next = [&](int t) { return (t + 1) % T; };

    for (int t = 0; t < T; ++t) {
        // total-capacity bounds on O, U, S and dispatch-vs-online
        lp.add_row(tname(spec.name, "cap", t), RowSense::LE, 0.0,
                   {{v.online[t], 1.0}, {v.capacity, -1.0}});
        lp.add_row(tname(spec.name, "ubU", t), RowSense::LE, 0.0,
                   {{v.startup[t], 1.0}, {v.capacity, -1.0}});
        lp.add_row(tname(spec.name, "ubS", t), RowSense::LE, 0.0,
                   {{v.shutdown[t], 1.0}, {v.capacity, -1.0}});
        lp.add_row(tname(spec.name, "pO", t), RowSense::LE, 0.0,
                   {{v.dispatch[t], 1.0}, {v.online[t], -1.0}});

        // online-capacity balance O_t - O_{t-1} = U_t - S_t
        if (spec.wrap || t > 0) {
            lp.add_row(tname(spec.name, "bal", t), RowSense::EQ, 0.0,
                       {{v.online[t], 1.0},
                        {v.online[prev(t)], -1.0},
                        {v.startup[t], -1.0},
                        {v.shutdown[t], 1.0}});
        } else {
            lp.add_row(tname(spec.name, "bal", t), RowSense::EQ, spec.initial_online_mw,
                       {{v.online[t], 1.0}, {v.startup[t], -1.0}, {v.shutdown[t], 1.0}});
        }

        // load range
        lp.add_row(tname(spec.name, "lmax", t), RowSense::LE, 0.0,
                   {{v.dispatch[t], 1.0}, {v.online[t], -f.max_load}});
        lp.add_row(tname(spec.name, "lmin", t), RowSense::LE, 0.0,
                   {{v.dispatch[t], -1.0}, {v.online[t], f.min_load}});

        // start/stop-hour output cap. The combined row is only sound when a
        // module cannot start at t and stop at t+1, i.e. min_up >= 2;
        // otherwise it splits into separate start and stop caps.
        const bool has_next = spec.wrap || t + 1 < T;
        if (f.min_up_hours >= 2 && has_next) {
            lp.add_row(tname(spec.name, "sscap", t), RowSense::LE, 0.0,
                       {{v.dispatch[t], 1.0},
                        {v.online[t], -f.max_load},
                        {v.startup[t], f.max_load - f.startup_ramp},
                        {v.shutdown[next(t)], f.max_load - f.shutdown_ramp}});
        } else {
            lp.add_row(tname(spec.name, "sucap", t), RowSense::LE, 0.0,
                       {{v.dispatch[t], 1.0},
                        {v.online[t], -f.max_load},
                        {v.startup[t], f.max_load - f.startup_ramp}});
            if (has_next)
                lp.add_row(tname(spec.name, "sdcap", t), RowSense::LE, 0.0,
                           {{v.dispatch[t], 1.0},
                            {v.online[t], -f.max_load},
                            {v.shutdown[next(t)], f.max_load - f.shutdown_ramp}});
        }

        // ramp limits on capacity online through the hour boundary
        if (spec.wrap || t > 0) {
            lp.add_row(tname(spec.name, "rup", t), RowSense::LE, 0.0,
                       {{v.dispatch[t], 1.0},
                        {v.dispatch[prev(t)], -1.0},
                        {v.online[t], -f.ramp_up},
                        {v.startup[t], f.ramp_up - f.startup_ramp},
                        {v.shutdown[t], f.min_load}});
            lp.add_row(tname(spec.name, "rdn", t), RowSense::LE, 0.0,
                       {{v.dispatch[prev(t)], 1.0},
                        {v.dispatch[t], -1.0},
                        {v.online[t], -f.ramp_down},
                        {v.startup[t], f.ramp_down + f.min_load},
                        {v.shutdown[t], -f.shutdown_ramp}});
        }

        // minimum up time: capacity stopping at t+1 must have been online at
        // t without a start in the preceding min_up-1 hours
        if (has_next) {
            std::vector<std::pair<int32_t, double>> terms = {{v.shutdown[next(t)], 1.0},
                                                             {v.online[t], -1.0}};
            const int win_up =
                spec.wrap ? std::min(f.min_up_hours - 2, T - 1) : std::min(f.min_up_hours - 2, t);
            for (int tau = 0; tau <= win_up; ++tau)
                terms.emplace_back(v.startup[(t - tau + T) % T], 1.0);
            lp.add_row(tname(spec.name, "minup", t), RowSense::LE, 0.0, std::move(terms));

            // minimum down time: capacity starting at t+1 must come from
            // capacity offline at t that did not stop in the last min_down-1
            // hours
            std::vector<std::pair<int32_t, double>> dterms = {{v.startup[next(t)], 1.0},
                                                              {v.online[t], 1.0},
                                                              {v.capacity, -1.0}};
            const int win_dn = spec.wrap ? std::min(f.min_down_hours - 2, T - 1)
                                         : std::min(f.min_down_hours - 2, t);
            for (int tau = 0; tau <= win_dn; ++tau)
                dterms.emplace_back(v.shutdown[(t - tau + T) % T], 1.0);
            lp.add_row(tname(spec.name, "mindn", t), RowSense::LE, 0.0, std::move(dterms));
        }
    }
    return v;
}

ModuleVars add_module_fleet(LinearProgram& lp, const ModuleFleetSpec& spec) {
    const int T = spec.horizon;
    const int M = spec.module_count;
    const double cap = spec.module_mw;
    if (T < 2 || M < 1 || cap <= 0.0)
        throw std::invalid_argument("bad module fleet spec");
    const auto& f = spec.flex;

    ModuleVars v;
    v.on.assign(M, {});
    v.start.assign(M, {});
    v.stop.assign(M, {});
    v.dispatch.assign(M, {});
    for (int j = 0; j < M; ++j) {
        const std::string stem = spec.name + "_m" + std::to_string(j + 1);
        for (int t = 0; t < T; ++t) {
            v.on[j].push_back(lp.add_var(tname(stem, "on", t), 0.0, 1.0, 0.0, true));
            v.start[j].push_back(lp.add_var(tname(stem, "su", t), 0.0, 1.0, 0.0, true));
            v.stop[j].push_back(lp.add_var(tname(stem, "sd", t), 0.0, 1.0, 0.0, true));
            v.dispatch[j].push_back(lp.add_var(tname(stem, "p", t), 0.0, solve::kInf));
        }
    }

    auto prev = [&](int t) { return (t + T - 1) % T; };
    auto next = [&](int t) { return (t + 1) % T; };

    for (int j = 0; j < M; ++j) {
        const std::string stem = spec.name + "_m" + std::to_string(j + 1);
        for (int t = 0; t < T; ++t) {
            if (spec.wrap || t > 0) {
                lp.add_row(tname(stem, "logic", t), RowSense::EQ, 0.0,
                           {{v.on[j][t], 1.0},
                            {v.on[j][prev(t)], -1.0},
                            {v.start[j][t], -1.0},
                            {v.stop[j][t], 1.0}});
            } else {
                // initial state: offline before the horizon
                lp.add_row(tname(stem, "logic", t), RowSense::EQ, 0.0,
                           {{v.on[j][t], 1.0}, {v.start[j][t], -1.0}, {v.stop[j][t], 1.0}});
            }
            lp.add_row(tname(stem, "ss", t), RowSense::LE, 1.0,
                       {{v.start[j][t], 1.0}, {v.stop[j][t], 1.0}});
            lp.add_row(tname(stem, "pmax", t), RowSense::LE, 0.0,
                       {{v.dispatch[j][t], 1.0}, {v.on[j][t], -f.max_load * cap}});
            lp.add_row(tname(stem, "pmin", t), RowSense::LE, 0.0,
                       {{v.dispatch[j][t], -1.0}, {v.on[j][t], f.min_load * cap}});
            lp.add_row(tname(stem, "sucap", t), RowSense::LE, 0.0,
                       {{v.dispatch[j][t], 1.0},
                        {v.on[j][t], -f.max_load * cap},
                        {v.start[j][t], (f.max_load - f.startup_ramp) * cap}});
            if (spec.wrap || t + 1 < T)
                lp.add_row(tname(stem, "sdcap", t), RowSense::LE, 0.0,
                           {{v.dispatch[j][t], 1.0},
                            {v.on[j][t], -f.max_load * cap},
                            {v.stop[j][next(t)], (f.max_load - f.shutdown_ramp) * cap}});
            if (spec.wrap || t > 0) {
                lp.add_row(tname(stem, "rup", t), RowSense::LE, 0.0,
                           {{v.dispatch[j][t], 1.0},
                            {v.dispatch[j][prev(t)], -1.0},
                            {v.on[j][prev(t)], -f.ramp_up * cap},
                            {v.start[j][t], -f.startup_ramp * cap}});
                lp.add_row(tname(stem, "rdn", t), RowSense::LE, 0.0,
                           {{v.dispatch[j][prev(t)], 1.0},
                            {v.dispatch[j][t], -1.0},
                            {v.on[j][t], -f.ramp_down * cap},
                            {v.stop[j][t], -f.shutdown_ramp * cap}});
            }
            {
                std::vector<std::pair<int32_t, double>> terms = {{v.on[j][t], -1.0}};
                const int win =
                    spec.wrap ? std::min(f.min_up_hours - 1, T - 1)
                              : std::min(f.min_up_hours - 1, t);
                for (int tau = 0; tau <= win; ++tau)
                    terms.emplace_back(v.start[j][(t - tau + T) % T], 1.0);
                lp.add_row(tname(stem, "minup", t), RowSense::LE, 0.0, std::move(terms));
            }
            {
                std::vector<std::pair<int32_t, double>> terms = {{v.on[j][t], 1.0}};
                const int win =
                    spec.wrap ? std::min(f.min_down_hours - 1, T - 1)
                              : std::min(f.min_down_hours - 1, t);
                for (int tau = 0; tau <= win; ++tau)
                    terms.emplace_back(v.stop[j][(t - tau + T) % T], 1.0);
                lp.add_row(tname(stem, "mindn", t), RowSense::LE, 1.0, std::move(terms));
            }
        }
        if (spec.symmetry_breaking && j > 0)
            for (int t = 0; t < T; ++t)
                lp.add_row(tname(spec.name, ("sym_m" + std::to_string(j + 1)).c_str(), t),
                           RowSense::LE, 0.0, {{v.on[j][t], 1.0}, {v.on[j - 1][t], -1.0}});
    }
    return v;
}

AggregateTrajectory aggregate_modules(const ModuleVars& vars, double module_mw,
                                      const std::vector<double>& x) {
    AggregateTrajectory agg;
    if (vars.on.empty()) return agg;
    const size_t T = vars.on[0].size();
    agg.online.assign(T, 0.0);
    agg.startup.assign(T, 0.0);
    agg.shutdown.assign(T, 0.0);
    agg.dispatch.assign(T, 0.0);
    for (size_t j = 0; j < vars.on.size(); ++j)
        for (size_t t = 0; t < T; ++t) {
            agg.online[t] += module_mw * x[static_cast<size_t>(vars.on[j][t])];
            agg.startup[t] += module_mw * x[static_cast<size_t>(vars.start[j][t])];
            agg.shutdown[t] += module_mw * x[static_cast<size_t>(vars.stop[j][t])];
            agg.dispatch[t] += x[static_cast<size_t>(vars.dispatch[j][t])];
        }
    return agg;
}

GapReport relaxation_gap(const std::vector<GapItem>& totals, double objective_relaxed,
                         double objective_exact) {
    GapReport rep;
    rep.items = totals;
    rep.objective_relaxed = objective_relaxed;
    rep.objective_exact = objective_exact;
    rep.objective_gap =
        (objective_exact - objective_relaxed) / std::max(std::abs(objective_exact), 1.0);
    double scale = 0.0;
    for (const auto& it : rep.items) scale = std::max(scale, std::abs(it.exact));
    // negligible totals are judged against the system scale, not themselves
    const double floor = std::max(1e-12, 1e-3 * scale);
    for (auto& it : rep.items) {
        it.rel_gap = std::abs(it.relaxed - it.exact) / std::max(std::abs(it.exact), floor);
        rep.max_rel_gap = std::max(rep.max_rel_gap, it.rel_gap);
    }
    return rep;
}

}  // namespace h2plan::flex
