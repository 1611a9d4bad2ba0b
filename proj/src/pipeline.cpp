#include "h2plan/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "h2plan/lp.hpp"
#include "h2plan/units.hpp"

namespace h2plan::pipeline {

using core::Topology;

namespace {

// union-find over region indices for component checks and tree repair
struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

}  // namespace

PipelinePlan plan_pipelines(const std::map<std::string, std::vector<double>>& injections,
                            const Topology& topology) {
    PipelinePlan plan;
    if (injections.empty()) return plan;
    std::vector<std::string> regions;
    for (const auto& [region, series] : injections) regions.push_back(region);
    const int R = static_cast<int>(regions.size());
    const int T = static_cast<int>(injections.begin()->second.size());
    plan.horizon = T;
    auto region_index = [&](const std::string& id) {
        auto it = std::find(regions.begin(), regions.end(), id);
        return it == regions.end() ? -1 : static_cast<int>(it - regions.begin());
    };
    for (const auto& [region, series] : injections)
        if (static_cast<int>(series.size()) != T)
            throw PipelineError("injection series for '" + region + "' has the wrong length");

    // links restricted to regions with known injections
    struct Link {
        int from, to;
        double length;
    };
    std::vector<Link> links;
    for (const auto& adj : topology.hydrogen_adjacency) {
        const int a = region_index(adj.from);
        const int b = region_index(adj.to);
        if (a < 0 || b < 0)
            throw PipelineError("hydrogen link references unknown region '" +
                                (a < 0 ? adj.from : adj.to) + "'");
        links.push_back({a, b, adj.length_km});
        plan.corridors.push_back(
            {adj.from, adj.to, adj.length_km, std::vector<double>(T, 0.0), 0.0});
    }

    // per-hour conservation requires every connected component to balance
    Dsu dsu(R);
    for (const auto& l : links) dsu.unite(l.from, l.to);
    for (int t = 0; t < T; ++t) {
        std::map<int, double> comp_sum;
        double scale = 1.0;
        for (int r = 0; r < R; ++r) {
            const double v = injections.at(regions[r])[t];
            comp_sum[dsu.find(r)] += v;
            scale = std::max(scale, std::abs(v));
        }
        for (const auto& [comp, sum] : comp_sum)
            if (std::abs(sum) > 1e-6 * scale)
                throw PipelineError("hydrogen injections do not balance at hour " +
                                    std::to_string(t + 1) + " (net " + std::to_string(sum) +
                                    " kg/h)");
    }
    if (links.empty()) return plan;  // single region or no pipes: zero flows

    // stacked LP over all hours: flow = fp - fn, minimize sum length*(fp+fn)
    solve::LinearProgram lp;
    std::vector<std::vector<int>> fp(links.size()), fn(links.size());
    for (size_t c = 0; c < links.size(); ++c) {
        fp[c].resize(T);
        fn[c].resize(T);
        for (int t = 0; t < T; ++t) {
            const std::string stem = std::to_string(c) + "_t" + std::to_string(t + 1);
            fp[c][t] = lp.add_var("fp_" + stem, 0.0, solve::kInf, links[c].length);
            fn[c][t] = lp.add_var("fn_" + stem, 0.0, solve::kInf, links[c].length);
        }
    }
    for (int t = 0; t < T; ++t) {
        for (int r = 0; r < R; ++r) {
            std::vector<std::pair<int32_t, double>> terms;
            for (size_t c = 0; c < links.size(); ++c) {
                if (links[c].to == r) {
                    terms.emplace_back(fp[c][t], 1.0);
                    terms.emplace_back(fn[c][t], -1.0);
                } else if (links[c].from == r) {
                    terms.emplace_back(fp[c][t], -1.0);
                    terms.emplace_back(fn[c][t], 1.0);
                }
            }
            if (terms.empty()) continue;  // isolated but balanced region
            lp.add_row("node_" + std::to_string(r) + "_t" + std::to_string(t + 1),
                       solve::RowSense::EQ, -injections.at(regions[r])[t], std::move(terms));
        }
    }
    auto res = solve::solve(lp);
    if (res.status != solve::SolveStatus::Optimal)
        throw PipelineError(std::string("pipeline allocation solve ended ") +
                            solve::to_string(res.status));

    for (size_t c = 0; c < links.size(); ++c)
        for (int t = 0; t < T; ++t)
            plan.corridors[c].flow_kg[t] =
                res.x[static_cast<size_t>(fp[c][t])] - res.x[static_cast<size_t>(fn[c][t])];

    // exact repair: push the residual of each node through a spanning tree so
    // Eq-21-style balances close to the last bit
    {
        Dsu tree(R);
        std::vector<int> tree_links;
        for (size_t c = 0; c < links.size(); ++c)
            if (tree.unite(links[c].from, links[c].to)) tree_links.push_back(static_cast<int>(c));
        // orient the tree by repeated leaf elimination
        for (int t = 0; t < T; ++t) {
            std::vector<double> resid(R, 0.0);
            for (int r = 0; r < R; ++r) {
                resid[r] = injections.at(regions[r])[t];
                for (size_t c = 0; c < links.size(); ++c) {
                    if (links[c].to == r) resid[r] += plan.corridors[c].flow_kg[t];
                    if (links[c].from == r) resid[r] -= plan.corridors[c].flow_kg[t];
                }
            }
            std::vector<int> degree(R, 0);
            std::vector<bool> used(tree_links.size(), false);
            for (int c : tree_links) {
                ++degree[links[c].from];
                ++degree[links[c].to];
            }
            std::vector<int> leaves;
            for (int r = 0; r < R; ++r)
                if (degree[r] == 1) leaves.push_back(r);
            while (!leaves.empty()) {
                const int leaf = leaves.back();
                leaves.pop_back();
                for (size_t k = 0; k < tree_links.size(); ++k) {
                    if (used[k]) continue;
                    const int c = tree_links[k];
                    if (links[c].from != leaf && links[c].to != leaf) continue;
                    used[k] = true;
                    // send the leaf's surplus down this tree edge
                    if (links[c].from == leaf) {
                        plan.corridors[c].flow_kg[t] += resid[leaf];
                        resid[links[c].to] += resid[leaf];
                    } else {
                        plan.corridors[c].flow_kg[t] -= resid[leaf];
                        resid[links[c].from] += resid[leaf];
                    }
                    resid[leaf] = 0.0;
                    const int other = links[c].from == leaf ? links[c].to : links[c].from;
                    if (--degree[other] == 1) leaves.push_back(other);
                    --degree[leaf];
                    break;
                }
            }
        }
    }

    for (size_t c = 0; c < links.size(); ++c) {
        auto& corr = plan.corridors[c];
        for (int t = 0; t < T; ++t) {
            plan.objective_kg_km += corr.length_km * std::abs(corr.flow_kg[t]);
            corr.capacity_kg_per_h = std::max(corr.capacity_kg_per_h, std::abs(corr.flow_kg[t]));
        }
    }
    plan.transport_cost_usd =
        pipeline_cost(plan, kDefaultTransportRate, units::kDefaultLhvMjPerKg);
    return plan;
}

PipelinePlan plan_pipelines(const assemble::PlanSolution& solution, const Topology& topology) {
    return plan_pipelines(solution.hydrogen_injection, topology);
}

double pipeline_cost(const PipelinePlan& plan, double rate_usd_per_km_gwh,
                     double lhv_mj_per_kg) {
    if (!(rate_usd_per_km_gwh > 0.0)) throw PipelineError("transport rate must be positive");
    double cost = 0.0;
    for (const auto& corr : plan.corridors)
        for (double f : corr.flow_kg) {
            const double gwh =
                units::kg_to_mwh(std::abs(f), lhv_mj_per_kg) / units::kMwhPerGwh;
            cost += rate_usd_per_km_gwh * corr.length_km * gwh;
        }
    return cost;
}

void write_pipeline_csvs(const PipelinePlan& plan, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    char buf[96];
    {
        std::ofstream f(out_dir / "pipeline_flows.csv");
        f << "from,to,hour,flow_kg\n";
        for (const auto& corr : plan.corridors)
            for (size_t t = 0; t < corr.flow_kg.size(); ++t) {
                std::snprintf(buf, sizeof(buf), "%zu,%.12g\n", t + 1, corr.flow_kg[t]);
                f << corr.from << ',' << corr.to << ',' << buf;
            }
    }
    {
        std::ofstream f(out_dir / "pipeline_capacity.csv");
        f << "from,to,capacity_kg_per_h,cost_usd_per_year\n";
        for (const auto& corr : plan.corridors) {
            PipelinePlan single;
            single.corridors.push_back(corr);
            const double cost =
                pipeline_cost(single, kDefaultTransportRate, units::kDefaultLhvMjPerKg);
            std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", corr.capacity_kg_per_h, cost);
            f << corr.from << ',' << corr.to << ',' << buf;
        }
    }
}

}  // namespace h2plan::pipeline
