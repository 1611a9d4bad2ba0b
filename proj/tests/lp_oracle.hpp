// Brute-force LP oracle: enumerates all candidate vertices (n-subsets of
// tight constraints) of a bounded-below polyhedron. Independent of the
// interior-point implementation it is used to check.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <vector>

#include "h2plan/lp.hpp"

namespace h2plan::testing {

struct OracleResult {
    bool feasible = false;
    double objective = 0.0;
    std::vector<double> x;
};

// Requires every variable bounded below (pointed polyhedron), so a nonempty
// feasible set has a vertex and a bounded LP attains its optimum at one.
inline OracleResult enumerate_vertices(const solve::LinearProgram& lp) {
    using Eigen::MatrixXd;
    using Eigen::VectorXd;
    const int n = lp.num_vars();

    struct Facet {
        VectorXd a;
        double b;
        solve::RowSense sense;
    };
    std::vector<Facet> facets;
    for (const auto& row : lp.rows) {
        Facet f;
        f.a = VectorXd::Zero(n);
        for (const auto& [var, coeff] : row.terms) f.a(var) = coeff;
        f.b = row.rhs;
        f.sense = row.sense;
        facets.push_back(std::move(f));
    }
    for (int j = 0; j < n; ++j) {
        const auto& v = lp.vars[static_cast<size_t>(j)];
        if (std::isfinite(v.lb)) {
            Facet f;
            f.a = VectorXd::Zero(n);
            f.a(j) = 1.0;
            f.b = v.lb;
            f.sense = solve::RowSense::GE;
            facets.push_back(std::move(f));
        }
        if (std::isfinite(v.ub)) {
            Facet f;
            f.a = VectorXd::Zero(n);
            f.a(j) = 1.0;
            f.b = v.ub;
            f.sense = solve::RowSense::LE;
            facets.push_back(std::move(f));
        }
    }

    const int F = static_cast<int>(facets.size());
    OracleResult best;
    if (F < n) return best;  // cannot form a vertex; treat as no-vertex

    std::vector<int> pick(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pick[static_cast<size_t>(i)] = i;

    auto try_vertex = [&]() {
        MatrixXd A(n, n);
        VectorXd b(n);
        for (int i = 0; i < n; ++i) {
            A.row(i) = facets[static_cast<size_t>(pick[static_cast<size_t>(i)])].a.transpose();
            b(i) = facets[static_cast<size_t>(pick[static_cast<size_t>(i)])].b;
        }
        Eigen::FullPivLU<MatrixXd> lu(A);
        if (!lu.isInvertible()) return;
        VectorXd x = lu.solve(b);
        // feasibility of every facet
        for (const auto& f : facets) {
            const double act = f.a.dot(x);
            const double tol = 1e-7 * (1.0 + std::abs(f.b));
            if (f.sense == solve::RowSense::LE && act > f.b + tol) return;
            if (f.sense == solve::RowSense::GE && act < f.b - tol) return;
            if (f.sense == solve::RowSense::EQ && std::abs(act - f.b) > tol) return;
        }
        double obj = lp.obj_constant;
        for (int j = 0; j < n; ++j) obj += lp.obj[static_cast<size_t>(j)] * x(j);
        if (!best.feasible || obj < best.objective) {
            best.feasible = true;
            best.objective = obj;
            best.x.assign(x.data(), x.data() + n);
        }
    };

    // iterate n-combinations of facets
    while (true) {
        try_vertex();
        int i = n - 1;
        while (i >= 0 && pick[static_cast<size_t>(i)] == F - n + i) --i;
        if (i < 0) break;
        ++pick[static_cast<size_t>(i)];
        for (int k = i + 1; k < n; ++k)
            pick[static_cast<size_t>(k)] = pick[static_cast<size_t>(k - 1)] + 1;
    }
    return best;
}

}  // namespace h2plan::testing
