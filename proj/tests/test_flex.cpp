#include <cmath>
#include <random>

#include "doctest.h"
#include "h2plan/cluster.hpp"
#include "h2plan/lp.hpp"

using namespace h2plan::flex;
using h2plan::core::FlexParams;
using h2plan::solve::LinearProgram;
using h2plan::solve::RowSense;
using h2plan::solve::SolveStatus;
using h2plan::solve::solve;
using h2plan::solve::solve_relaxation;

namespace {

FlexParams flex_params(double lo, double hi, double ru, double rd, double Ru, double Rd,
                             int tu, int td) {
    FlexParams f;
    f.min_load = lo;
    f.max_load = hi;
    f.ramp_up = ru;
    f.ramp_down = rd;
    f.startup_ramp = Ru;
    f.shutdown_ramp = Rd;
    f.min_up_hours = tu;
    f.min_down_hours = td;
    return f;
}

// Per-module feasible schedule generator (non-wrap, offline history).
struct Schedule {
    std::vector<std::vector<int>> on;        // [module][t]
    std::vector<std::vector<double>> power;  // [module][t]
};

Schedule random_schedule(std::mt19937& rng, const FlexParams& f, int modules, int T,
                         double cap, bool vary_dispatch) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    Schedule s;
    s.on.assign(modules, std::vector<int>(T, 0));
    s.power.assign(modules, std::vector<double>(T, 0.0));
    for (int j = 0; j < modules; ++j) {
        int dwell = 1000;  // long off-history
        bool on = false;
        for (int t = 0; t < T; ++t) {
            if (!on && dwell >= f.min_down_hours && u01(rng) < 0.35) {
                on = true;
                dwell = 0;
            } else if (on && dwell >= f.min_up_hours && u01(rng) < 0.3) {
                on = false;
                dwell = 0;
            }
            s.on[j][t] = on ? 1 : 0;
            ++dwell;
        }
        // dispatch: constant at min load, or a ramp-feasible random walk when
        // the start/stop ramps leave room for it
        double prev = 0.0;
        for (int t = 0; t < T; ++t) {
            if (!s.on[j][t]) {
                prev = 0.0;
                continue;
            }
            const bool started = t == 0 || !s.on[j][t - 1];
            const bool stops_next = t + 1 < T && !s.on[j][t + 1];
            double lo = f.min_load * cap, hi = f.max_load * cap;
            if (started)
                hi = std::min(hi, f.startup_ramp * cap);
            else {
                lo = std::max(lo, prev - f.ramp_down * cap);
                hi = std::min(hi, prev + f.ramp_up * cap);
            }
            if (stops_next) hi = std::min(hi, f.shutdown_ramp * cap);
            double p = vary_dispatch && hi > lo ? lo + (hi - lo) * u01(rng) : lo;
            if (hi < lo) p = lo;  // generator guards ensure this cannot happen
            s.power[j][t] = p;
            prev = p;
        }
    }
    return s;
}

}  // namespace

TEST_CASE("online-capacity balance forces O from U and S") {
    LinearProgram lp;
    ClusterSpec spec;
    spec.flex = flex_params(0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1, 1);
    spec.horizon = 3;
    spec.wrap = false;
    spec.existing_mw = 0.0;
    spec.capacity_limit_mw = 100.0;
    spec.initial_online_mw = 0.0;
    spec.name = "f";
    auto v = add_cluster(lp, spec);
    // pin U_1 = 10, everything else zero
    lp.add_row("pinU1", RowSense::EQ, 10.0, {{v.startup[0], 1.0}});
    for (int t = 0; t < 3; ++t) {
        lp.add_row("pinS" + std::to_string(t), RowSense::EQ, 0.0, {{v.shutdown[t], 1.0}});
        if (t > 0)
            lp.add_row("pinU" + std::to_string(t), RowSense::EQ, 0.0, {{v.startup[t], 1.0}});
    }
    lp.add_obj(v.online[0], 1.0);
    auto lo = solve(lp);
    REQUIRE(lo.status == SolveStatus::Optimal);
    CHECK(lo.x[static_cast<size_t>(v.online[0])] == doctest::Approx(10.0).epsilon(1e-7));

    LinearProgram lp2 = lp;
    lp2.obj[static_cast<size_t>(v.online[0])] = -1.0;
    auto hi = solve(lp2);
    REQUIRE(hi.status == SolveStatus::Optimal);
    CHECK(hi.x[static_cast<size_t>(v.online[0])] == doctest::Approx(10.0).epsilon(1e-7));
}

TEST_CASE("configured initial online capacity without wrap") {
    LinearProgram lp;
    ClusterSpec spec;
    spec.flex = flex_params(0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1, 1);
    spec.horizon = 2;
    spec.wrap = false;
    spec.existing_mw = 60.0;
    spec.capacity_limit_mw = 60.0;
    spec.initial_online_mw = 50.0;
    spec.name = "g";
    auto v = add_cluster(lp, spec);
    lp.add_row("pinU", RowSense::EQ, 0.0, {{v.startup[0], 1.0}});
    lp.add_row("pinS", RowSense::EQ, 0.0, {{v.shutdown[0], 1.0}});
    lp.add_obj(v.online[0], 1.0);
    auto res = solve(lp);
    REQUIRE(res.status == SolveStatus::Optimal);
    CHECK(res.x[static_cast<size_t>(v.online[0])] == doctest::Approx(50.0).epsilon(1e-7));
}

TEST_CASE("load range bounds dispatch against online capacity") {
    for (bool maximize : {false, true}) {
        LinearProgram lp;
        ClusterSpec spec;
        spec.flex = flex_params(0.4, 0.9, 1.0, 1.0, 1.0, 1.0, 1, 1);
        spec.horizon = 2;
        spec.wrap = true;
        spec.existing_mw = 0.0;
        spec.capacity_limit_mw = 50.0;
        spec.name = "f";
        auto v = add_cluster(lp, spec);
        for (int t = 0; t < 2; ++t)
            lp.add_row("pinO" + std::to_string(t), RowSense::EQ, 10.0, {{v.online[t], 1.0}});
        lp.add_obj(v.dispatch[0], maximize ? -1.0 : 1.0);
        auto res = solve(lp);
        REQUIRE(res.status == SolveStatus::Optimal);
        const double p = res.x[static_cast<size_t>(v.dispatch[0])];
        if (maximize)
            CHECK(p == doctest::Approx(9.0).epsilon(1e-6));  // max_load * 10
        else
            CHECK(p == doctest::Approx(4.0).epsilon(1e-6));  // min_load * 10
    }
}

TEST_CASE("cluster row count matches independent enumeration") {
    // T = 24, min_up = 4, min_down = 2, wrap = true.
    const int T = 24;
    LinearProgram lp;
    ClusterSpec spec;
    spec.flex = flex_params(0.3, 1.0, 0.5, 0.5, 0.5, 0.5, 4, 2);
    spec.horizon = T;
    spec.wrap = true;
    spec.name = "f";
    add_cluster(lp, spec);
    // independent count: per hour -- O<=cap, U<=cap, S<=cap, P<=O (4),
    // balance (1), load max/min (2), combined start/stop cap (1),
    // ramp up/down (2), min-up window (1), min-down window (1)
    const int expected = T * (4 + 1 + 2 + 1 + 2 + 1 + 1);
    CHECK(lp.num_rows() == expected);
    // and the min-up rows carry 2 + (min_up - 1) terms each
    int minup_rows = 0;
    for (const auto& row : lp.rows)
        if (row.name.find("minup") == 0) {
            ++minup_rows;
            CHECK(static_cast<int>(row.terms.size()) == 2 + (4 - 1));
        }
    CHECK(minup_rows == T);
}

TEST_CASE("every feasible binary schedule aggregates into the cluster polytope") {
    std::mt19937 rng(20250811);
    struct Config {
        FlexParams f;
        bool vary;
    };
    // one configuration with loose start/stop ramps and varying dispatch,
    // one with tight start/stop ramps at constant min load
    std::vector<Config> configs = {
        {flex_params(0.2, 0.9, 0.3, 0.3, 0.9, 0.9, 3, 2), true},
        {flex_params(0.3, 1.0, 0.4, 0.4, 0.5, 0.5, 2, 3), false},
        {flex_params(0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1, 1), true},
    };
    for (size_t ci = 0; ci < configs.size(); ++ci) {
        const auto& cfgc = configs[ci];
        for (int trial = 0; trial < 40; ++trial) {
            const int T = 12, M = 3;
            const double cap = 10.0;
            Schedule s = random_schedule(rng, cfgc.f, M, T, cap, cfgc.vary);

            LinearProgram lp;
            ClusterSpec spec;
            spec.flex = cfgc.f;
            spec.horizon = T;
            spec.wrap = false;
            spec.existing_mw = 0.0;
            spec.capacity_limit_mw = M * cap;
            spec.initial_online_mw = 0.0;
            spec.name = "f";
            auto v = add_cluster(lp, spec);

            std::vector<double> x(static_cast<size_t>(lp.num_vars()), 0.0);
            x[static_cast<size_t>(v.capacity)] = M * cap;
            for (int t = 0; t < T; ++t) {
                double O = 0, U = 0, S = 0, P = 0;
                for (int j = 0; j < M; ++j) {
                    O += cap * s.on[j][t];
                    const int prev_on = t == 0 ? 0 : s.on[j][t - 1];
                    if (s.on[j][t] && !prev_on) U += cap;
                    if (!s.on[j][t] && prev_on) S += cap;
                    P += s.power[j][t];
                }
                x[static_cast<size_t>(v.online[t])] = O;
                x[static_cast<size_t>(v.startup[t])] = U;
                x[static_cast<size_t>(v.shutdown[t])] = S;
                x[static_cast<size_t>(v.dispatch[t])] = P;
            }
            for (const auto& row : lp.rows) {
                const double viol = lp.row_violation(row, x);
                CHECK_MESSAGE(viol <= 1e-9, "config ", ci, " trial ", trial, " row ",
                              row.name);
            }
        }
    }
}

TEST_CASE("module fleet MILP vs pattern enumeration vs cluster relaxation") {
    // single module, T = 6, min_up = min_down = 2, economic dispatch against
    // a shedding penalty
    const int T = 6;
    const double cap = 10.0;
    const std::vector<double> demand = {2.0, 8.0, 9.0, 3.0, 0.0, 7.0};
    auto f = flex_params(0.3, 1.0, 0.4, 0.4, 0.5, 0.5, 2, 2);

    auto add_economics = [&](LinearProgram& lp, const std::vector<int>& p_t,
                             const std::vector<int>& start_like, double start_weight) {
        for (int t = 0; t < T; ++t) {
            int shed = lp.add_var("shed_t" + std::to_string(t + 1), 0.0, h2plan::solve::kInf, 50.0);
            lp.add_row("bal_t" + std::to_string(t + 1), RowSense::EQ, demand[t],
                       {{p_t[t], 1.0}, {shed, 1.0}});
            lp.add_obj(p_t[t], 5.0);
            if (!start_like.empty()) lp.add_obj(start_like[t], start_weight);
        }
    };

    // exact MILP via branch and bound
    LinearProgram milp;
    ModuleFleetSpec mspec;
    mspec.flex = f;
    mspec.horizon = T;
    mspec.wrap = false;
    mspec.module_mw = cap;
    mspec.module_count = 1;
    mspec.name = "f";
    auto mv = add_module_fleet(milp, mspec);
    {
        std::vector<int> agg_p(T), agg_start(T);
        for (int t = 0; t < T; ++t) {
            agg_p[t] = mv.dispatch[0][t];
            agg_start[t] = mv.start[0][t];
        }
        add_economics(milp, agg_p, agg_start, 20.0 * cap / cap);
    }
    auto exact = solve(milp);
    REQUIRE(exact.status == SolveStatus::Optimal);

    // enumeration oracle over on/off patterns
    double best = 1e100;
    for (int mask = 0; mask < (1 << T); ++mask) {
        // min-up / min-down feasibility with offline history
        bool ok = true;
        int dwell = 1000;
        bool on = false;
        for (int t = 0; t < T && ok; ++t) {
            const bool want = (mask >> t) & 1;
            if (want != on) {
                if (on && dwell < f.min_up_hours) ok = false;
                if (!on && dwell < f.min_down_hours) ok = false;
                on = want;
                dwell = 1;
            } else {
                ++dwell;
            }
        }
        if (!ok) continue;
        LinearProgram fixed = milp;
        for (int t = 0; t < T; ++t) {
            const double want = (mask >> t) & 1 ? 1.0 : 0.0;
            fixed.vars[static_cast<size_t>(mv.on[0][t])].lb = want;
            fixed.vars[static_cast<size_t>(mv.on[0][t])].ub = want;
            fixed.vars[static_cast<size_t>(mv.on[0][t])].integral = false;
            fixed.vars[static_cast<size_t>(mv.start[0][t])].integral = false;
            fixed.vars[static_cast<size_t>(mv.stop[0][t])].integral = false;
        }
        auto sub = solve_relaxation(fixed);
        if (sub.status == SolveStatus::Optimal) best = std::min(best, sub.objective);
    }
    CHECK(exact.objective == doctest::Approx(best).epsilon(1e-6));

    // cluster relaxation bounds the exact optimum from below
    LinearProgram relax;
    ClusterSpec cspec;
    cspec.flex = f;
    cspec.horizon = T;
    cspec.wrap = false;
    cspec.existing_mw = cap;
    cspec.capacity_limit_mw = cap;
    cspec.initial_online_mw = 0.0;
    cspec.name = "f";
    auto cv = add_cluster(relax, cspec);
    add_economics(relax, cv.dispatch, cv.startup, 20.0 / cap);
    auto lo = solve(relax);
    REQUIRE(lo.status == SolveStatus::Optimal);
    CHECK(lo.objective <= exact.objective + 1e-6 * (1.0 + std::abs(exact.objective)));
}

TEST_CASE("relaxation gap report") {
    std::vector<GapItem> items = {{"generation:a", 100.0, 100.0, 0.0},
                                  {"generation:b", 49.0, 50.0, 0.0}};
    auto rep = relaxation_gap(items, 10.0, 10.5);
    CHECK(rep.items[0].rel_gap == doctest::Approx(0.0));
    CHECK(rep.items[1].rel_gap == doctest::Approx(0.02));
    CHECK(rep.max_rel_gap == doctest::Approx(0.02));
    CHECK(rep.objective_gap == doctest::Approx(0.5 / 10.5).epsilon(1e-9));

    auto same = relaxation_gap({{"x", 5.0, 5.0, 0.0}}, 3.0, 3.0);
    CHECK(same.max_rel_gap == doctest::Approx(0.0));
    CHECK(same.objective_gap == doctest::Approx(0.0));
}
