// Independent min-cost-flow oracle for the pipeline planner: shortest-path
// distances (Floyd-Warshall) plus exhaustive enumeration of transportation
// bases between surplus and deficit regions. Uncapacitated linear-cost flow
// decomposes into source->sink shipments along shortest paths, so the
// transportation optimum equals the network optimum.
#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "h2plan/types.hpp"

namespace h2plan::testing {

inline double transport_enum(std::vector<std::pair<int, double>> sources,
                             std::vector<std::pair<int, double>> sinks,
                             const std::vector<std::vector<double>>& dist) {
    // drop exhausted entries
    std::erase_if(sources, [](const auto& s) { return s.second <= 1e-12; });
    std::erase_if(sinks, [](const auto& s) { return s.second <= 1e-12; });
    if (sources.empty() || sinks.empty()) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < sources.size(); ++i) {
        for (size_t j = 0; j < sinks.size(); ++j) {
            auto s2 = sources;
            auto k2 = sinks;
            const double amount = std::min(s2[i].second, k2[j].second);
            const double cost = amount * dist[s2[i].first][k2[j].first];
            s2[i].second -= amount;
            k2[j].second -= amount;
            best = std::min(best, cost + transport_enum(std::move(s2), std::move(k2), dist));
        }
    }
    return best;
}

inline double mincost_flow_oracle(const std::map<std::string, std::vector<double>>& injections,
                                  const core::Topology& topology) {
    std::vector<std::string> regions;
    for (const auto& [r, s] : injections) regions.push_back(r);
    const int R = static_cast<int>(regions.size());
    const int T = static_cast<int>(injections.begin()->second.size());
    auto idx = [&](const std::string& id) {
        for (int i = 0; i < R; ++i)
            if (regions[i] == id) return i;
        return -1;
    };
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> dist(R, std::vector<double>(R, inf));
    for (int i = 0; i < R; ++i) dist[i][i] = 0.0;
    for (const auto& l : topology.hydrogen_adjacency) {
        const int a = idx(l.from), b = idx(l.to);
        dist[a][b] = std::min(dist[a][b], l.length_km);
        dist[b][a] = std::min(dist[b][a], l.length_km);
    }
    for (int k = 0; k < R; ++k)
        for (int i = 0; i < R; ++i)
            for (int j = 0; j < R; ++j)
                dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);

    double total = 0.0;
    for (int t = 0; t < T; ++t) {
        std::vector<std::pair<int, double>> sources, sinks;
        for (int r = 0; r < R; ++r) {
            const double v = injections.at(regions[r])[t];
            if (v > 0) sources.emplace_back(r, v);
            if (v < 0) sinks.emplace_back(r, -v);
        }
        total += transport_enum(std::move(sources), std::move(sinks), dist);
    }
    return total;
}

}  // namespace h2plan::testing
