#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace h2plan::solve {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense : char { LE = 'L', GE = 'G', EQ = 'E' };

/// Solver-agnostic sparse LP with bounded variables. Integrality marks are
/// honored only by the branch-and-bound oracle path.
struct LinearProgram {
    struct Variable {
        std::string name;
        double lb = 0.0;
        double ub = kInf;
        bool integral = false;
    };
    struct Row {
        std::string name;
        RowSense sense = RowSense::LE;
        double rhs = 0.0;
        std::vector<std::pair<int32_t, double>> terms;
    };

    std::vector<Variable> vars;
    std::vector<Row> rows;
    std::vector<double> obj;      // dense, sized with vars
    double obj_constant = 0.0;    // added to the reported objective

    int add_var(std::string name, double lb, double ub, double cost = 0.0,
                bool integral = false);
    void add_obj(int var, double coeff) { obj[static_cast<size_t>(var)] += coeff; }
    int add_row(std::string name, RowSense sense, double rhs,
                std::vector<std::pair<int32_t, double>> terms);

    int num_vars() const { return static_cast<int>(vars.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }
    bool has_integers() const;

    /// Merges duplicate terms within each row and drops exact zeros.
    void canonicalize();

    /// Structural sanity: finite coefficients, lb <= ub, indices in range.
    /// Returns an explanation or empty string when well formed.
    std::string check_well_formed() const;

    double row_activity(const Row& row, const std::vector<double>& x) const;
    /// Signed violation of a row at x (positive = infeasible amount).
    double row_violation(const Row& row, const std::vector<double>& x) const;
    double objective_value(const std::vector<double>& x) const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(SolveStatus s);

struct SolveOptions {
    double tolerance = 1e-8;     // relative feasibility/gap target
    int max_iterations = 200;    // interior-point iterations
    int64_t node_cap = 100000;   // branch-and-bound node budget
    int integer_size_cap = 20000;  // refuse larger integer models (oracle only)
    bool verbose = false;
};

struct SolveResult {
    SolveStatus status = SolveStatus::IterationLimit;
    double objective = 0.0;
    std::vector<double> x;          // per-variable primal values
    std::vector<double> row_duals;  // per-row dual values (LP path only)
    int iterations = 0;
    int64_t nodes = 0;
    std::string message;
};

/// Deterministic solve. Pure-LP models go to the interior-point method;
/// integrality marks trigger branch and bound over it.
SolveResult solve(const LinearProgram& lp, const SolveOptions& options = {});

/// LP relaxation regardless of integrality marks.
SolveResult solve_relaxation(const LinearProgram& lp, const SolveOptions& options = {});

struct VerifyReport {
    bool ok = true;
    double max_violation = 0.0;        // over rows and bounds, scaled
    std::string worst_row;
    double objective_recomputed = 0.0;
};

/// Re-verifies a primal point against the LP: row violations within
/// tol*(1+|rhs|), bounds within tol*(1+|bound|), objective recomputed.
VerifyReport verify_point(const LinearProgram& lp, const std::vector<double>& x,
                          double tol = 1e-7);

/// Thrown when an integrality-marked model exceeds the configured size cap.
class SizeCapExceeded : public std::runtime_error {
  public:
    explicit SizeCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace h2plan::solve
