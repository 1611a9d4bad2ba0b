// Exact branch and bound over the interior-point relaxation. Oracle-grade:
// best-bound node selection, most-fractional branching, hard node cap with
// explicit failure. No warm starts; every node is an independent solve.

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "h2plan/lp.hpp"

namespace h2plan::solve {
namespace {

constexpr double kIntTol = 1e-6;

struct Node {
    double bound;  // parent LP objective (lower bound)
    int64_t id;
    std::vector<std::tuple<int, double, double>> fixes;  // (var, lb, ub)
    bool operator<(const Node& other) const {
        if (bound != other.bound) return bound > other.bound;  // min-heap by bound
        return id > other.id;
    }
};

struct BoundGuard {
    LinearProgram& lp;
    std::vector<std::tuple<int, double, double>> saved;
    BoundGuard(LinearProgram& lp_in, const std::vector<std::tuple<int, double, double>>& fixes)
        : lp(lp_in) {
        saved.reserve(fixes.size());
        for (const auto& [var, lb, ub] : fixes) {
            auto& v = lp.vars[static_cast<size_t>(var)];
            saved.emplace_back(var, v.lb, v.ub);
            v.lb = std::max(v.lb, lb);
            v.ub = std::min(v.ub, ub);
        }
    }
    ~BoundGuard() {
        for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
            auto& v = lp.vars[static_cast<size_t>(std::get<0>(*it))];
            v.lb = std::get<1>(*it);
            v.ub = std::get<2>(*it);
        }
    }
};

int most_fractional(const LinearProgram& lp, const std::vector<double>& x, double* frac_out) {
    int best = -1;
    double best_frac = kIntTol;
    for (size_t j = 0; j < lp.vars.size(); ++j) {
        if (!lp.vars[j].integral) continue;
        const double f = std::abs(x[j] - std::round(x[j]));
        if (f > best_frac + 1e-15 && f > best_frac) {
            best_frac = f;
            best = static_cast<int>(j);
        } else if (best == -1 && f > kIntTol) {
            best_frac = f;
            best = static_cast<int>(j);
        }
    }
    if (frac_out) *frac_out = best_frac;
    return best;
}

// Rounds the integer variables of an LP point, fixes them, and re-solves the
// continuous rest. Feasible results become incumbent candidates.
bool rounding_heuristic(LinearProgram& lp, const SolveOptions& opt,
                        const std::vector<double>& x, SolveResult& incumbent) {
    std::vector<std::tuple<int, double, double>> fixes;
    for (size_t j = 0; j < lp.vars.size(); ++j) {
        if (!lp.vars[j].integral) continue;
        double r = std::round(x[j]);
        r = std::clamp(r, lp.vars[j].lb, lp.vars[j].ub);
        fixes.emplace_back(static_cast<int>(j), r, r);
    }
    BoundGuard guard(lp, fixes);
    SolveResult res = solve_relaxation(lp, opt);
    if (res.status != SolveStatus::Optimal) return false;
    if (incumbent.status != SolveStatus::Optimal || res.objective < incumbent.objective) {
        incumbent = res;
        incumbent.status = SolveStatus::Optimal;
        return true;
    }
    return false;
}

}  // namespace

SolveResult solve_branch_and_bound(const LinearProgram& lp_in, const SolveOptions& opt) {
    int n_int = 0;
    for (const auto& v : lp_in.vars) n_int += v.integral ? 1 : 0;
    if (n_int > opt.integer_size_cap)
        throw SizeCapExceeded("integer model has " + std::to_string(n_int) +
                              " marked variables (cap " +
                              std::to_string(opt.integer_size_cap) +
                              "); export for external solve");

    LinearProgram lp = lp_in;  // bounds are mutated per node and restored
    SolveResult incumbent;
    incumbent.status = SolveStatus::IterationLimit;

    std::priority_queue<Node> open;
    open.push({-kInf, 0, {}});
    int64_t next_id = 1;
    int64_t nodes = 0;
    bool any_feasible_relax = false;
    bool root = true;
    SolveStatus root_status = SolveStatus::Infeasible;

    while (!open.empty()) {
        Node node = open.top();
        open.pop();
        if (incumbent.status == SolveStatus::Optimal &&
            node.bound >= incumbent.objective - 1e-9 * (1.0 + std::abs(incumbent.objective)))
            continue;
        if (++nodes > opt.node_cap) {
            SolveResult out = incumbent;
            out.status = SolveStatus::IterationLimit;
            out.nodes = nodes;
            out.message = "node cap exceeded";
            return out;
        }

        BoundGuard guard(lp, node.fixes);
        SolveResult relax = solve_relaxation(lp, opt);
        if (root) {
            root_status = relax.status;
            root = false;
        }
        if (relax.status == SolveStatus::Unbounded) {
            SolveResult out;
            out.status = SolveStatus::Unbounded;
            out.nodes = nodes;
            return out;
        }
        if (relax.status != SolveStatus::Optimal) continue;  // pruned by infeasibility
        any_feasible_relax = true;
        if (incumbent.status == SolveStatus::Optimal &&
            relax.objective >= incumbent.objective -
                                   1e-9 * (1.0 + std::abs(incumbent.objective)))
            continue;

        double frac = 0.0;
        const int branch_var = most_fractional(lp, relax.x, &frac);
        if (branch_var < 0) {
            // integral within tolerance: polish to exact integers
            SolveResult cand = relax;
            for (size_t j = 0; j < lp.vars.size(); ++j)
                if (lp.vars[j].integral) cand.x[j] = std::round(cand.x[j]);
            cand.objective = lp.objective_value(cand.x);
            if (incumbent.status != SolveStatus::Optimal ||
                cand.objective < incumbent.objective)
                incumbent = cand;
            continue;
        }

        // cheap dive when close to integral
        int n_frac = 0;
        for (size_t j = 0; j < lp.vars.size(); ++j)
            if (lp.vars[j].integral &&
                std::abs(relax.x[j] - std::round(relax.x[j])) > kIntTol)
                ++n_frac;
        if (node.fixes.empty() || n_frac <= 3)
            rounding_heuristic(lp, opt, relax.x, incumbent);

        const double xval = relax.x[static_cast<size_t>(branch_var)];
        Node down = node;
        down.bound = relax.objective;
        down.id = next_id++;
        down.fixes.emplace_back(branch_var, -kInf, std::floor(xval));
        Node up = node;
        up.bound = relax.objective;
        up.id = next_id++;
        up.fixes.emplace_back(branch_var, std::ceil(xval), kInf);
        open.push(std::move(down));
        open.push(std::move(up));
    }

    if (incumbent.status == SolveStatus::Optimal) {
        incumbent.nodes = nodes;
        return incumbent;
    }
    SolveResult out;
    out.nodes = nodes;
    out.status = any_feasible_relax ? SolveStatus::Infeasible
                                    : (root_status == SolveStatus::IterationLimit
                                           ? SolveStatus::IterationLimit
                                           : SolveStatus::Infeasible);
    return out;
}

}  // namespace h2plan::solve
