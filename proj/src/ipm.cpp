// Bundled LP solver: homogeneous self-dual interior point method with
// Mehrotra predictor-corrector. Deterministic (fixed ordering, single
// threaded), adequate for desk-scale models; production-scale runs go
// through MPS export to an external solver.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <cstdio>
#include <algorithm>
#include <cmath>
#include <vector>

#include "h2plan/lp.hpp"

namespace h2plan::solve {
namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;
using Triplet = Eigen::Triplet<double>;

// Standard form: min c'x  s.t.  A x = b,  0 <= x <= u (u may be +inf),
// assembled from the bounded-variable LP. Column provenance is kept so the
// solution can be mapped back.
struct StdForm {
    SpMat A;            // m x n
    Vec b, c, u;        // u(j) = +inf when unbounded above
    double c0 = 0.0;    // objective constant picked up by shifts/fixings
    int m = 0, n = 0;

    // per original variable: how to rebuild its value
    struct BackMap {
        enum Kind { Fixed, Shifted, Negated, Split } kind = Fixed;
        double base = 0.0;  // fixed value / lower bound / upper bound
        int col = -1;       // primary standard-form column
        int col2 = -1;      // negative part for Split
    };
    std::vector<BackMap> back;
    std::vector<int> row_of;  // original row -> std row (-1 when dropped)
    std::vector<double> row_scale;  // applied scale per std row
    std::vector<double> col_scale;  // applied scale per std column
    double b_scale = 1.0;           // primal magnitude normalization
    double c_scale = 1.0;           // dual magnitude normalization
    bool trivially_infeasible = false;
    std::string infeasible_reason;
};

StdForm build_standard_form(const LinearProgram& lp) {
    StdForm sf;
    const int nv = lp.num_vars();
    sf.back.resize(static_cast<size_t>(nv));

    // Column creation for every non-fixed variable.
    std::vector<double> col_cost;
    std::vector<double> col_ub;
    auto new_col = [&](double cost, double ub) {
        col_cost.push_back(cost);
        col_ub.push_back(ub);
        return static_cast<int>(col_cost.size()) - 1;
    };

    for (int j = 0; j < nv; ++j) {
        const auto& v = lp.vars[static_cast<size_t>(j)];
        auto& bm = sf.back[static_cast<size_t>(j)];
        const double cj = lp.obj[static_cast<size_t>(j)];
        if (v.lb == v.ub) {
            bm.kind = StdForm::BackMap::Fixed;
            bm.base = v.lb;
            sf.c0 += cj * v.lb;
        } else if (std::isfinite(v.lb)) {
            bm.kind = StdForm::BackMap::Shifted;
            bm.base = v.lb;
            bm.col = new_col(cj, std::isfinite(v.ub) ? v.ub - v.lb : kInf);
            sf.c0 += cj * v.lb;
        } else if (std::isfinite(v.ub)) {
            bm.kind = StdForm::BackMap::Negated;  // x = ub - x'
            bm.base = v.ub;
            bm.col = new_col(-cj, kInf);
            sf.c0 += cj * v.ub;
        } else {
            bm.kind = StdForm::BackMap::Split;  // x = p - q
            bm.col = new_col(cj, kInf);
            bm.col2 = new_col(-cj, kInf);
        }
    }

    // Rows: shift rhs by fixed/shifted contributions, add slack columns.
    std::vector<Triplet> trips;
    std::vector<double> rhs;
    sf.row_of.assign(lp.rows.size(), -1);
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        const auto& row = lp.rows[i];
        double b = row.rhs;
        std::vector<std::pair<int, double>> terms;
        for (const auto& [var, coeff] : row.terms) {
            const auto& bm = sf.back[static_cast<size_t>(var)];
            switch (bm.kind) {
                case StdForm::BackMap::Fixed: b -= coeff * bm.base; break;
                case StdForm::BackMap::Shifted:
                    b -= coeff * bm.base;
                    terms.emplace_back(bm.col, coeff);
                    break;
                case StdForm::BackMap::Negated:
                    b -= coeff * bm.base;
                    terms.emplace_back(bm.col, -coeff);
                    break;
                case StdForm::BackMap::Split:
                    terms.emplace_back(bm.col, coeff);
                    terms.emplace_back(bm.col2, -coeff);
                    break;
            }
        }
        if (terms.empty()) {
            const double tol = 1e-9 * (1.0 + std::abs(b));
            bool ok = (row.sense == RowSense::LE && 0.0 <= b + tol) ||
                      (row.sense == RowSense::GE && 0.0 >= b - tol) ||
                      (row.sense == RowSense::EQ && std::abs(b) <= tol);
            if (!ok) {
                sf.trivially_infeasible = true;
                sf.infeasible_reason = "row " + row.name + " is infeasible after fixing";
            }
            continue;
        }
        const int r = static_cast<int>(rhs.size());
        sf.row_of[i] = r;
        for (const auto& [col, coeff] : terms) trips.emplace_back(r, col, coeff);
        if (row.sense == RowSense::LE)
            trips.emplace_back(r, new_col(0.0, kInf), 1.0);
        else if (row.sense == RowSense::GE)
            trips.emplace_back(r, new_col(0.0, kInf), -1.0);
        rhs.push_back(b);
    }

    sf.m = static_cast<int>(rhs.size());
    sf.n = static_cast<int>(col_cost.size());
    sf.A.resize(sf.m, sf.n);
    sf.A.setFromTriplets(trips.begin(), trips.end());
    sf.b = Eigen::Map<Vec>(rhs.data(), sf.m);
    sf.c = Eigen::Map<Vec>(col_cost.data(), sf.n);
    sf.u = Eigen::Map<Vec>(col_ub.data(), sf.n);
    return sf;
}

// Two passes of geometric-mean row/column scaling.
void scale_standard_form(StdForm& sf) {
    sf.row_scale.assign(static_cast<size_t>(sf.m), 1.0);
    sf.col_scale.assign(static_cast<size_t>(sf.n), 1.0);
    if (sf.m == 0 || sf.n == 0) return;
    for (int pass = 0; pass < 2; ++pass) {
        // rows
        std::vector<double> lo(static_cast<size_t>(sf.m), kInf),
            hi(static_cast<size_t>(sf.m), 0.0);
        for (int k = 0; k < sf.A.outerSize(); ++k)
            for (SpMat::InnerIterator it(sf.A, k); it; ++it) {
                const double a = std::abs(it.value());
                if (a == 0.0) continue;
                lo[static_cast<size_t>(it.row())] = std::min(lo[static_cast<size_t>(it.row())], a);
                hi[static_cast<size_t>(it.row())] = std::max(hi[static_cast<size_t>(it.row())], a);
            }
        Vec r(sf.m);
        for (int i = 0; i < sf.m; ++i) {
            const size_t si = static_cast<size_t>(i);
            r(i) = (hi[si] > 0.0) ? 1.0 / std::sqrt(lo[si] * hi[si]) : 1.0;
            sf.row_scale[si] *= r(i);
        }
        sf.A = r.asDiagonal() * sf.A;
        sf.b = r.asDiagonal() * sf.b;
        // columns
        std::vector<double> clo(static_cast<size_t>(sf.n), kInf),
            chi(static_cast<size_t>(sf.n), 0.0);
        for (int k = 0; k < sf.A.outerSize(); ++k)
            for (SpMat::InnerIterator it(sf.A, k); it; ++it) {
                const double a = std::abs(it.value());
                if (a == 0.0) continue;
                clo[static_cast<size_t>(it.col())] = std::min(clo[static_cast<size_t>(it.col())], a);
                chi[static_cast<size_t>(it.col())] = std::max(chi[static_cast<size_t>(it.col())], a);
            }
        Vec s(sf.n);
        for (int j = 0; j < sf.n; ++j) {
            const size_t sj = static_cast<size_t>(j);
            s(j) = (chi[sj] > 0.0) ? 1.0 / std::sqrt(clo[sj] * chi[sj]) : 1.0;
            sf.col_scale[sj] *= s(j);
        }
        sf.A = sf.A * s.asDiagonal();
        for (int j = 0; j < sf.n; ++j) {
            sf.c(j) *= s(j);
            if (std::isfinite(sf.u(j))) sf.u(j) /= s(j);
        }
    }
    // equalize right-hand-side magnitudes per row (coefficient scaling alone
    // leaves mixed-magnitude rhs, which would demand sub-eps accuracy from
    // zero-rhs rows), then normalize the global b/c magnitudes so the unit
    // starting point sees O(1) residuals
    {
        Vec r2(sf.m);
        for (int i = 0; i < sf.m; ++i) {
            r2(i) = 1.0 / std::max(1.0, std::abs(sf.b(i)));
            sf.row_scale[static_cast<size_t>(i)] *= r2(i);
        }
        sf.A = r2.asDiagonal() * sf.A;
        sf.b = r2.asDiagonal() * sf.b;
    }
    sf.b_scale = std::max(1.0, sf.b.lpNorm<Eigen::Infinity>());
    sf.c_scale = std::max(1.0, sf.c.lpNorm<Eigen::Infinity>());
    sf.b /= sf.b_scale;
    sf.c /= sf.c_scale;
    for (int j = 0; j < sf.n; ++j)
        if (std::isfinite(sf.u(j))) sf.u(j) /= sf.b_scale;
}

// Per-row / per-column weights mapping scaled-space residuals to relative
// residuals in the original problem's units, so termination accuracy does
// not depend on how aggressively the instance was scaled.
struct ResidualWeights {
    Vec row;   // |rP_i| * row(i) = original relative primal residual
    Vec ubnd;  // per bounded column k
};

ResidualWeights residual_weights(const StdForm& sf, const std::vector<int>& ucols) {
    ResidualWeights w;
    w.row.resize(sf.m);
    for (int i = 0; i < sf.m; ++i) {
        const double r = sf.row_scale[static_cast<size_t>(i)];
        const double b_orig = sf.b(i) * sf.b_scale / r;
        w.row(i) = sf.b_scale / (r * (1.0 + std::abs(b_orig)));
    }
    w.ubnd.resize(std::max<int>(static_cast<int>(ucols.size()), 1));
    for (size_t k = 0; k < ucols.size(); ++k) {
        const int j = ucols[k];
        const double s = sf.col_scale[static_cast<size_t>(j)];
        const double u_orig = sf.u(j) * s * sf.b_scale;
        w.ubnd(static_cast<Eigen::Index>(k)) = s * sf.b_scale / (1.0 + std::abs(u_orig));
    }
    return w;
}

struct HsdResult {
    SolveStatus status = SolveStatus::IterationLimit;
    Vec x, y;
    int iterations = 0;
    std::string message;
};

// Factors A Theta A^T + reg I with a cached sparsity pattern: the symbolic
// product and the AMD analysis happen once, each iteration only refills
// values and refactorizes.
class NormalSolver {
  public:
    void setup(const SpMat& A, const SpMat& At) {
        A_ = &A;
        At_ = &At;
        const int m = static_cast<int>(A.rows());
        M_ = A * At;  // symbolic pattern (values are overwritten)
        contrib_.clear();
        for (int k = 0; k < A.outerSize(); ++k) {
            for (SpMat::InnerIterator it1(A, k); it1; ++it1)
                for (SpMat::InnerIterator it2(A, k); it2; ++it2)
                    contrib_.push_back(
                        {slot(it1.row(), it2.row()), k, it1.value() * it2.value()});
        }
        diag_slot_.resize(m);
        for (int i = 0; i < m; ++i) diag_slot_[i] = slot(i, i);
        ldlt_.analyzePattern(M_);
    }

    bool factorize(const Vec& theta, double reg) {
        double* vals = M_.valuePtr();
        std::fill(vals, vals + M_.nonZeros(), 0.0);
        for (const auto& c : contrib_) vals[c.slot] += theta(c.k) * c.coeff;
        for (int i = 0; i < static_cast<int>(diag_slot_.size()); ++i)
            vals[diag_slot_[i]] += reg;
        ldlt_.factorize(M_);
        return ldlt_.info() == Eigen::Success;
    }

    Vec solve(const Vec& rhs) const { return ldlt_.solve(rhs); }

    Vec multiply(const Vec& q, const Vec& theta, double reg) const {
        Vec tq = theta.cwiseProduct(At_->operator*(q));
        return (*A_) * tq + reg * q;
    }

  private:
    struct Contribution {
        int64_t slot;
        int32_t k;
        double coeff;
    };
    int64_t slot(int row, int col) const {
        const auto* outer = M_.outerIndexPtr();
        const auto* inner = M_.innerIndexPtr();
        const auto* lo = inner + outer[col];
        const auto* hi = inner + outer[col + 1];
        const auto* it = std::lower_bound(lo, hi, row);
        return it - inner;
    }
    const SpMat* A_ = nullptr;
    const SpMat* At_ = nullptr;
    SpMat M_;
    std::vector<Contribution> contrib_;
    std::vector<int64_t> diag_slot_;
    Eigen::SimplicialLDLT<SpMat> ldlt_;
};

HsdResult hsd_solve(const StdForm& sf, const SolveOptions& opt) {
    HsdResult res;
    const int m = sf.m, n = sf.n;
    const Vec& b = sf.b;
    const Vec& c = sf.c;
    const Vec& u = sf.u;

    std::vector<int> ucols;
    for (int j = 0; j < n; ++j)
        if (std::isfinite(u(j))) ucols.push_back(j);
    const int nu = static_cast<int>(ucols.size());

    Vec x = Vec::Ones(n), z = Vec::Ones(n), y = Vec::Zero(m);
    Vec v = Vec::Ones(std::max(nu, 1)), w = Vec::Ones(std::max(nu, 1));
    for (int k = 0; k < nu; ++k) {
        const double uk = u(ucols[static_cast<size_t>(k)]);
        x(ucols[static_cast<size_t>(k)]) = std::min(1.0, uk / 2.0);
        v(k) = uk - x(ucols[static_cast<size_t>(k)]);
    }
    double tau = 1.0, kappa = 1.0;

    const ResidualWeights weights = residual_weights(sf, ucols);

    const SpMat At = SpMat(sf.A.transpose());
    NormalSolver normal;
    normal.setup(sf.A, At);

    auto uvec_dot = [&](const Vec& wv) {
        double s = 0.0;
        for (int k = 0; k < nu; ++k) s += u(ucols[static_cast<size_t>(k)]) * wv(k);
        return s;
    };

    const double total = n + nu + 1;
    const double mu0 = (x.dot(z) + ((nu > 0) ? v.head(nu).dot(w.head(nu)) : 0.0) + tau * kappa) / total;

    int stall = 0;
    Vec best_x, best_y;
    double best_measure = kInf, best_tau = 1.0;
    // shared exit: adopt the best tracked iterate when it is close enough
    auto finish_with_best = [&](const char* why) {
        if (best_measure <= std::max(50.0 * opt.tolerance, 1e-8)) {
            res.status = SolveStatus::Optimal;
            res.x = best_x / best_tau;
            res.y = best_y / best_tau;
        } else {
            res.status = SolveStatus::IterationLimit;
            res.message = why;
        }
        return res;
    };
    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        res.iterations = iter + 1;

        // residuals
        Vec rP = b * tau - sf.A * x;
        Vec rU(std::max(nu, 1));
        for (int k = 0; k < nu; ++k) {
            const int j = ucols[static_cast<size_t>(k)];
            rU(k) = u(j) * tau - x(j) - v(k);
        }
        Vec wfull = Vec::Zero(n);
        for (int k = 0; k < nu; ++k) wfull(ucols[static_cast<size_t>(k)]) = w(k);
        Vec rD = c * tau - At * y - z + wfull;
        const double uw = (nu > 0) ? uvec_dot(w) : 0.0;
        const double rG = c.dot(x) - b.dot(y) + uw + kappa;

        const double mu = (x.dot(z) + ((nu > 0) ? v.head(nu).dot(w.head(nu)) : 0.0) +
                           tau * kappa) / total;

        // primal feasibility is measured per row in the original problem's
        // relative units (it is what the post-solve verification checks);
        // dual feasibility and gap use the well-scaled system
        double pinf = 0.0;
        for (int i = 0; i < m; ++i)
            pinf = std::max(pinf, std::abs(rP(i)) * weights.row(i));
        for (int k = 0; k < nu; ++k)
            pinf = std::max(pinf, std::abs(rU(k)) * weights.ubnd(k));
        pinf /= tau;
        const double pinf_scaled =
            rP.lpNorm<Eigen::Infinity>() / (tau * (1.0 + b.lpNorm<Eigen::Infinity>()));
        const double dinf =
            rD.lpNorm<Eigen::Infinity>() / (tau * (1.0 + c.lpNorm<Eigen::Infinity>()));
        const double pobj = c.dot(x) / tau;
        const double dobj = (b.dot(y) - uw) / tau;
        const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

        if (opt.verbose) {
            int argmax = -1;
            double worst = 0.0;
            for (int i = 0; i < m; ++i)
                if (std::abs(rP(i)) * weights.row(i) > worst) {
                    worst = std::abs(rP(i)) * weights.row(i);
                    argmax = i;
                }
            std::printf("it %3d mu=%9.2e tau=%9.2e kap=%9.2e pinf=%9.2e dinf=%9.2e gap=%9.2e "
                        "pobj=%12.5e dobj=%12.5e worstrow=%d\n",
                        iter, mu, tau, kappa, pinf, dinf, gap, pobj, dobj, argmax);
        }
        if (pinf <= opt.tolerance && dinf <= opt.tolerance && gap <= opt.tolerance) {
            res.status = SolveStatus::Optimal;
            res.x = x / tau;
            res.y = y / tau;
            return res;
        }
        // tracked fallback: scaled-system residuals at the contract level
        // with a sanity cap on the per-row original-units error, for the
        // degenerate endgames where double precision cannot close the last
        // digits of every row
        const double fallback_measure =
            std::max({pinf_scaled, dinf, gap, 1e-2 * pinf});
        if (fallback_measure < best_measure) {
            best_measure = fallback_measure;
            best_x = x;
            best_y = y;
            best_tau = tau;
        }

        // infeasibility / unboundedness certificates as tau/kappa -> 0
        // (ratio-based, invariant under the homogeneous renormalization)
        if (tau < 1e-8 * kappa) {
            const double cx = c.dot(x);
            const double by = b.dot(y) - uw;
            if (by > 1e-9 * (1.0 + std::abs(cx))) {
                res.status = SolveStatus::Infeasible;
            } else if (cx < -1e-9 * (1.0 + std::abs(by))) {
                res.status = SolveStatus::Unbounded;
            } else {
                res.status = SolveStatus::IterationLimit;
                res.message = "homogeneous model stalled without certificate";
            }
            return res;
        }

        // scaling matrix Theta^{-1} = X^{-1}Z + V^{-1}W (upper-bounded cols)
        Vec theta_inv(n);
        for (int j = 0; j < n; ++j) theta_inv(j) = z(j) / x(j);
        for (int k = 0; k < nu; ++k)
            theta_inv(ucols[static_cast<size_t>(k)]) += w(k) / v(k);
        Vec theta = theta_inv.cwiseInverse();

        double reg = 1e-10;
        {
            bool ok = false;
            for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
                ok = normal.factorize(theta, reg);
                if (!ok) reg *= 1e4;
            }
            if (!ok) return finish_with_best("normal equations factorization failed");
        }

        // iterative refinement against the full normal matrix recovers the
        // accuracy the dense-column splitting gives up at extreme Theta
        auto msolve = [&](const Vec& rhs) {
            Vec q = normal.solve(rhs);
            const double target = 1e-13 * (1.0 + rhs.lpNorm<Eigen::Infinity>());
            for (int pass = 0; pass < 4; ++pass) {
                Vec resid = rhs - normal.multiply(q, theta, reg);
                if (resid.lpNorm<Eigen::Infinity>() <= target) break;
                q += normal.solve(resid);
            }
            return q;
        };

        // c_hat = c - V^{-1}W u ; c_hat2 = c + V^{-1}W u (on bounded cols)
        Vec chat = c, chat2 = c;
        Vec vinvw(std::max(nu, 1));
        for (int k = 0; k < nu; ++k) {
            const int j = ucols[static_cast<size_t>(k)];
            vinvw(k) = w(k) / v(k);
            chat(j) -= vinvw(k) * u(j);
            chat2(j) += vinvw(k) * u(j);
        }
        double uvwu = 0.0;
        for (int k = 0; k < nu; ++k) {
            const int j = ucols[static_cast<size_t>(k)];
            uvwu += u(j) * vinvw(k) * u(j);
        }
        const Vec q2 = msolve(sf.A * (theta.asDiagonal() * chat) + b);

        // One Newton direction for given complementarity targets.
        auto direction = [&](const Vec& rxz, const Vec& rvw, double rtk, Vec& dx, Vec& dv,
                             Vec& dy, Vec& dz, Vec& dw, double& dtau, double& dkappa) {
            // h = rD - X^{-1}rxz + V^{-1}rvw - V^{-1}W rU
            Vec h = rD - (rxz.array() / x.array()).matrix();
            for (int k = 0; k < nu; ++k) {
                const int j = ucols[static_cast<size_t>(k)];
                h(j) += rvw(k) / v(k) - vinvw(k) * rU(k);
            }
            const Vec q1 = msolve(rP + sf.A * (theta.asDiagonal() * h));
            // ghat = rG + u'V^{-1}rvw - u'V^{-1}W rU + rtk/tau
            double ghat = rG + rtk / tau;
            for (int k = 0; k < nu; ++k) {
                const int j = ucols[static_cast<size_t>(k)];
                ghat += u(j) * (rvw(k) / v(k)) - u(j) * vinvw(k) * rU(k);
            }
            const Vec AThetaChat2 = sf.A * (theta.asDiagonal() * chat2);
            const double denom = (b - AThetaChat2).dot(q2) +
                                 chat2.dot(theta.asDiagonal() * chat) + uvwu + kappa / tau;
            const double numer =
                ghat - chat2.dot(theta.asDiagonal() * h) - (b - AThetaChat2).dot(q1);
            dtau = (std::abs(denom) > 1e-300) ? numer / denom : 0.0;
            dy = q1 + dtau * q2;
            dx = theta.asDiagonal() * (At * dy - chat * dtau - h);
            dz = ((rxz - z.cwiseProduct(dx)).array() / x.array()).matrix();
            dv.resize(std::max(nu, 1));
            dw.resize(std::max(nu, 1));
            for (int k = 0; k < nu; ++k) {
                const int j = ucols[static_cast<size_t>(k)];
                dv(k) = rU(k) + u(j) * dtau - dx(j);
                dw(k) = (rvw(k) - w(k) * dv(k)) / v(k);
            }
            dkappa = (rtk - kappa * dtau) / tau;
        };

        auto max_step = [&](const Vec& dx, const Vec& dv, const Vec& dz, const Vec& dw,
                            double dtau, double dkappa) {
            double a = kInf;
            auto lim = [&](double val, double dir) {
                if (dir < 0.0) a = std::min(a, -val / dir);
            };
            for (int j = 0; j < n; ++j) {
                lim(x(j), dx(j));
                lim(z(j), dz(j));
            }
            for (int k = 0; k < nu; ++k) {
                lim(v(k), dv(k));
                lim(w(k), dw(k));
            }
            lim(tau, dtau);
            lim(kappa, dkappa);
            return a;
        };

        // predictor
        Vec rxz = -x.cwiseProduct(z);
        Vec rvw(std::max(nu, 1));
        for (int k = 0; k < nu; ++k) rvw(k) = -v(k) * w(k);
        double rtk = -tau * kappa;
        Vec dx, dv, dy, dz, dw;
        double dtau = 0, dkappa = 0;
        direction(rxz, rvw, rtk, dx, dv, dy, dz, dw, dtau, dkappa);
        const double a_aff = std::min(1.0, max_step(dx, dv, dz, dw, dtau, dkappa));

        double mu_aff = (x + a_aff * dx).dot(z + a_aff * dz);
        for (int k = 0; k < nu; ++k)
            mu_aff += (v(k) + a_aff * dv(k)) * (w(k) + a_aff * dw(k));
        mu_aff += (tau + a_aff * dtau) * (kappa + a_aff * dkappa);
        mu_aff /= total;
        double sigma = std::pow(std::max(0.0, mu_aff / mu), 3);
        sigma = std::clamp(sigma, 1e-8, 1.0 - 1e-8);

        // corrector
        rxz = (Vec::Constant(n, sigma * mu) - x.cwiseProduct(z) - dx.cwiseProduct(dz));
        for (int k = 0; k < nu; ++k)
            rvw(k) = sigma * mu - v(k) * w(k) - dv(k) * dw(k);
        rtk = sigma * mu - tau * kappa - dtau * dkappa;
        direction(rxz, rvw, rtk, dx, dv, dy, dz, dw, dtau, dkappa);

        double alpha = std::min(1.0, 0.99995 * max_step(dx, dv, dz, dw, dtau, dkappa));
        if (!std::isfinite(alpha) || alpha <= 1e-12) {
            if (++stall >= 3) return finish_with_best("step length collapsed");
            alpha = 0.0;
        } else {
            stall = 0;
        }

        x += alpha * dx;
        z += alpha * dz;
        y += alpha * dy;
        for (int k = 0; k < nu; ++k) {
            v(k) += alpha * dv(k);
            w(k) += alpha * dw(k);
        }
        tau += alpha * dtau;
        kappa += alpha * dkappa;

        if (!x.allFinite() || !z.allFinite() || !std::isfinite(tau))
            return finish_with_best("iterate diverged");
        // complementarity has hit the double-precision floor; nothing more
        // can be gained by iterating
        if (mu < 1e-13 * std::max(1.0, mu0)) return finish_with_best("mu floor");

        // the embedding is homogeneous: renormalize so tau stays at 1 and
        // the tau-coupled elimination keeps its conditioning
        if (tau > 10.0 || tau < 0.1) {
            const double s = 1.0 / tau;
            x *= s;
            z *= s;
            y *= s;
            v *= s;
            w *= s;
            kappa *= s;
            tau = 1.0;
        }
    }
    return finish_with_best("iteration limit reached");
}

// Objective-only model (no rows survive): solve by inspection.
SolveResult solve_by_inspection(const LinearProgram& lp, const StdForm& sf) {
    SolveResult out;
    out.x.assign(lp.vars.size(), 0.0);
    for (size_t j = 0; j < lp.vars.size(); ++j) {
        const auto& v = lp.vars[j];
        const double cj = lp.obj[j];
        double val;
        if (cj > 0.0) {
            if (!std::isfinite(v.lb)) {
                out.status = SolveStatus::Unbounded;
                return out;
            }
            val = v.lb;
        } else if (cj < 0.0) {
            if (!std::isfinite(v.ub)) {
                out.status = SolveStatus::Unbounded;
                return out;
            }
            val = v.ub;
        } else {
            val = std::isfinite(v.lb) ? v.lb : (std::isfinite(v.ub) ? v.ub : 0.0);
        }
        out.x[j] = val;
    }
    out.status = SolveStatus::Optimal;
    out.objective = lp.objective_value(out.x);
    out.row_duals.assign(lp.rows.size(), 0.0);
    (void)sf;
    return out;
}

}  // namespace

SolveResult solve_relaxation(const LinearProgram& lp, const SolveOptions& opt) {
    SolveResult out;
    if (std::string err = lp.check_well_formed(); !err.empty()) {
        out.status = SolveStatus::IterationLimit;
        out.message = "malformed LP: " + err;
        return out;
    }
    LinearProgram canon = lp;
    canon.canonicalize();

    StdForm sf = build_standard_form(canon);
    if (sf.trivially_infeasible) {
        out.status = SolveStatus::Infeasible;
        out.message = sf.infeasible_reason;
        return out;
    }
    for (size_t j = 0; j < canon.vars.size(); ++j) {
        // Fixed-variable objective already in c0; nothing else to check here.
        (void)j;
    }
    if (sf.m == 0) return solve_by_inspection(canon, sf);

    scale_standard_form(sf);
    HsdResult h = hsd_solve(sf, opt);
    out.status = h.status;
    out.iterations = h.iterations;
    out.message = h.message;
    if (h.status != SolveStatus::Optimal) return out;

    // Unscale and map back to the original variable space.
    Vec xs = h.x * sf.b_scale;
    for (int j = 0; j < sf.n; ++j) xs(j) *= sf.col_scale[static_cast<size_t>(j)];
    out.x.assign(canon.vars.size(), 0.0);
    for (size_t j = 0; j < canon.vars.size(); ++j) {
        const auto& bm = sf.back[j];
        switch (bm.kind) {
            case StdForm::BackMap::Fixed: out.x[j] = bm.base; break;
            case StdForm::BackMap::Shifted: out.x[j] = bm.base + xs(bm.col); break;
            case StdForm::BackMap::Negated: out.x[j] = bm.base - xs(bm.col); break;
            case StdForm::BackMap::Split: out.x[j] = xs(bm.col) - xs(bm.col2); break;
        }
        // snap to bounds within tolerance so downstream accounting is clean
        const auto& v = canon.vars[j];
        if (std::isfinite(v.lb)) out.x[j] = std::max(out.x[j], v.lb);
        if (std::isfinite(v.ub)) out.x[j] = std::min(out.x[j], v.ub);
    }
    out.row_duals.assign(canon.rows.size(), 0.0);
    for (size_t i = 0; i < canon.rows.size(); ++i) {
        const int r = sf.row_of[i];
        if (r >= 0)
            out.row_duals[i] =
                h.y(r) * sf.row_scale[static_cast<size_t>(r)] * sf.c_scale;
    }
    out.objective = canon.objective_value(out.x);
    return out;
}

// Branch and bound lives in branch_bound.cpp; solve() dispatches there.
SolveResult solve_branch_and_bound(const LinearProgram& lp, const SolveOptions& opt);

SolveResult solve(const LinearProgram& lp, const SolveOptions& opt) {
    if (lp.has_integers()) return solve_branch_and_bound(lp, opt);
    return solve_relaxation(lp, opt);
}

}  // namespace h2plan::solve
