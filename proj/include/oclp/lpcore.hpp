#pragma once

#include <string>
#include <utility>
#include <vector>

#include "oclp/report.hpp"

namespace oclp {

/// Equality-form LP:  min c'x  s.t.  A x = b,  x >= 0.  A is dense row-major.
struct StandardFormLP {
    int rows = 0;
    int cols = 0;
    std::vector<double> c;  // cols
    std::vector<double> A;  // rows * cols
    std::vector<double> b;  // rows

    StandardFormLP() = default;
    StandardFormLP(int m, int n) : rows(m), cols(n), c(n, 0.0), A(static_cast<size_t>(m) * n, 0.0), b(m, 0.0) {}

    double& at(int i, int j) { return A[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return A[static_cast<size_t>(i) * cols + j]; }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LPStatus status);

/// Tolerance ladder shared by the solver and every downstream consumer:
/// feasibility and slackness at 1e-9 (relative to data scale), duality gap
/// at 1e-8.
inline constexpr double kLPFeasTol = 1e-9;
inline constexpr double kLPGapTol = 1e-8;

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    std::vector<double> x;  // primal (Optimal only); a vertex of the feasible set
    std::vector<double> y;  // dual multipliers per row (Optimal only)
    double objective = 0.0;

    double primal_residual = 0.0;      // ||Ax - b||_inf
    double dual_residual = 0.0;        // max_j (y'A_j - c_j)_+
    double comp_slack_residual = 0.0;  // max_j |x_j (c_j - y'A_j)|
    double duality_gap = 0.0;          // |c'x - b'y|

    // Pivot log: (entering, leaving) variable indices in order, and the
    // phase-2 objective after each phase-2 pivot (nonincreasing). Identical
    // inputs reproduce this log bitwise.
    std::vector<std::pair<int, int>> pivots;
    std::vector<double> phase2_objectives;
};

struct SolveOptions {
    int max_pivots = 500000;
};

/// Two-phase primal simplex on the full tableau, Bland's rule throughout.
/// Returns vertex solutions with dual certificates. Throws NumericalFailure
/// only when the pivot limit is hit twice (original and perturbed data) —
/// an ill-conditioning signal, not an infeasibility one.
LPSolution solve(const StandardFormLP& lp, const SolveOptions& options = {});

/// Recomputes every residual of an optimal solution straight from (lp, sol),
/// independent of any solver state.
VerificationReport check_certificates(const StandardFormLP& lp, const LPSolution& sol);

/// Plain-text dump: "rows m cols n", then b, then c, then A row-major, one
/// row per line. Shortest round-trip number formatting.
std::string dump(const StandardFormLP& lp);

}  // namespace oclp
