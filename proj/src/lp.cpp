#include "h2plan/lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace h2plan::solve {

int LinearProgram::add_var(std::string name, double lb, double ub, double cost,
                           bool integral) {
    Variable v;
    v.name = std::move(name);
    v.lb = lb;
    v.ub = ub;
    v.integral = integral;
    vars.push_back(std::move(v));
    obj.push_back(cost);
    return static_cast<int>(vars.size()) - 1;
}

int LinearProgram::add_row(std::string name, RowSense sense, double rhs,
                           std::vector<std::pair<int32_t, double>> terms) {
    Row r;
    r.name = std::move(name);
    r.sense = sense;
    r.rhs = rhs;
    r.terms = std::move(terms);
    rows.push_back(std::move(r));
    return static_cast<int>(rows.size()) - 1;
}

bool LinearProgram::has_integers() const {
    return std::any_of(vars.begin(), vars.end(),
                       [](const Variable& v) { return v.integral; });
}

void LinearProgram::canonicalize() {
    for (auto& row : rows) {
        std::sort(row.terms.begin(), row.terms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int32_t, double>> merged;
        merged.reserve(row.terms.size());
        for (const auto& [var, coeff] : row.terms) {
            if (!merged.empty() && merged.back().first == var)
                merged.back().second += coeff;
            else
                merged.emplace_back(var, coeff);
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [](const auto& t) { return t.second == 0.0; }),
                     merged.end());
        row.terms = std::move(merged);
    }
}

std::string LinearProgram::check_well_formed() const {
    if (obj.size() != vars.size()) return "objective size does not match variable count";
    for (size_t j = 0; j < vars.size(); ++j) {
        const auto& v = vars[j];
        if (std::isnan(v.lb) || std::isnan(v.ub)) return "NaN bound on variable " + v.name;
        if (v.lb > v.ub) return "lb > ub on variable " + v.name;
        if (!std::isfinite(obj[j])) return "non-finite objective on variable " + v.name;
    }
    for (const auto& row : rows) {
        if (!std::isfinite(row.rhs)) return "non-finite rhs on row " + row.name;
        for (const auto& [var, coeff] : row.terms) {
            if (var < 0 || var >= num_vars()) return "bad variable index in row " + row.name;
            if (!std::isfinite(coeff)) return "non-finite coefficient in row " + row.name;
        }
    }
    return "";
}

double LinearProgram::row_activity(const Row& row, const std::vector<double>& x) const {
    double a = 0.0;
    for (const auto& [var, coeff] : row.terms) a += coeff * x[static_cast<size_t>(var)];
    return a;
}

double LinearProgram::row_violation(const Row& row, const std::vector<double>& x) const {
    const double a = row_activity(row, x);
    switch (row.sense) {
        case RowSense::LE: return a - row.rhs;
        case RowSense::GE: return row.rhs - a;
        case RowSense::EQ: return std::abs(a - row.rhs);
    }
    return 0.0;
}

double LinearProgram::objective_value(const std::vector<double>& x) const {
    double v = obj_constant;
    for (size_t j = 0; j < vars.size(); ++j) v += obj[j] * x[j];
    return v;
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "OPTIMAL";
        case SolveStatus::Infeasible: return "INFEASIBLE";
        case SolveStatus::Unbounded: return "UNBOUNDED";
        case SolveStatus::IterationLimit: return "ITERATION_LIMIT";
    }
    return "?";
}

VerifyReport verify_point(const LinearProgram& lp, const std::vector<double>& x, double tol) {
    VerifyReport rep;
    rep.objective_recomputed = lp.objective_value(x);
    for (size_t j = 0; j < lp.vars.size(); ++j) {
        const auto& v = lp.vars[j];
        double viol = 0.0;
        if (std::isfinite(v.lb)) viol = std::max(viol, (v.lb - x[j]) / (1.0 + std::abs(v.lb)));
        if (std::isfinite(v.ub)) viol = std::max(viol, (x[j] - v.ub) / (1.0 + std::abs(v.ub)));
        if (viol > rep.max_violation) {
            rep.max_violation = viol;
            rep.worst_row = "bound:" + v.name;
        }
    }
    for (const auto& row : lp.rows) {
        const double viol = lp.row_violation(row, x) / (1.0 + std::abs(row.rhs));
        if (viol > rep.max_violation) {
            rep.max_violation = viol;
            rep.worst_row = row.name;
        }
    }
    rep.ok = rep.max_violation <= tol;
    return rep;
}

}  // namespace h2plan::solve
