#pragma once

#include <filesystem>
#include <string>

#include "h2plan/lp.hpp"

namespace h2plan::solve {

/// Writes free-format MPS. Variable and row names are emitted verbatim, so
/// external solutions map back unambiguously. Throws on name collisions or
/// I/O failure before writing any partial file.
void export_mps(const LinearProgram& lp, const std::filesystem::path& path,
                const std::string& model_name = "h2plan");

std::string mps_text(const LinearProgram& lp, const std::string& model_name = "h2plan");

/// Reads free-format MPS (MIN objective, no RANGES).
LinearProgram import_mps(const std::filesystem::path& path);
LinearProgram parse_mps(const std::string& text);

/// Reads whitespace-separated `name value` lines, maps them onto the LP's
/// variables, re-verifies feasibility (tol on scaled rows), and returns the
/// point as an OPTIMAL result with a recomputed objective. Throws on unknown
/// or missing names and on infeasible points (naming the worst row).
SolveResult import_solution(const std::filesystem::path& path, const LinearProgram& lp,
                            double tol = 1e-7);

}  // namespace h2plan::solve
