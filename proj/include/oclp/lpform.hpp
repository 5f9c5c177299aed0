#pragma once

#include <span>
#include <vector>

#include "oclp/dp.hpp"
#include "oclp/lpcore.hpp"
#include "oclp/measures.hpp"
#include "oclp/model.hpp"
#include "oclp/report.hpp"

namespace oclp {

/// Finite embodiment of the discounted measure constraints: on a finite state
/// space the continuous test functions reduce to state indicators, so the
/// constraint family becomes one equality row per state,
///
///   sum_u gamma(y',u) - alpha * sum_{f(y,u)=y'} gamma(y,u) = (1-alpha)[y'=y0].
///
/// Summing the rows forces sum gamma = 1, so no normalization row is needed.
/// Row i is state i; column p is canonical pair p; objective is the cost
/// vector.
struct DiscountedLP {
    StandardFormLP lp;
    int y0 = 0;
    double alpha = 0.0;
};

/// Stationary (flow-balanced) measures: one balance row per state plus an
/// explicit normalization row (the last one),
///
///   sum_u gamma(y',u) - sum_{f(y,u)=y'} gamma(y,u) = 0,    sum gamma = 1.
struct AverageLP {
    StandardFormLP lp;
};

/// Dual certificate. Discounted: psi(y) - alpha*psi(f(y,u)) <= g(y,u) on all
/// pairs and (1-alpha)*psi(y0) equals the primal optimum, so psi is directly
/// comparable to V_alpha. Average: mu <= g(y,u) + psi(f(y,u)) - psi(y) on all
/// pairs with mu equal to the primal optimum.
struct DualPotential {
    ValueFunction psi;
    double mu = 0.0;
};

DiscountedLP build_discounted_lp(const FiniteControlSystem& system, int y0, double alpha);
AverageLP build_average_lp(const FiniteControlSystem& system);

struct DiscountedSolution {
    double value = 0.0;           // g*_alpha(y0)
    OccupationalMeasure gamma;    // optimal vertex (an extreme point of W_alpha(y0))
    DualPotential dual;
    LPSolution lp;
};

struct AverageSolution {
    double value = 0.0;           // g*
    OccupationalMeasure gamma;    // optimal stationary vertex
    DualPotential dual;           // (mu, psi) with mu = g*
    LPSolution lp;
};

/// Solves the discounted occupation-measure LP. Infeasibility is impossible
/// for a valid system (every state carries an action) and is reported as an
/// Infeasible error to flag a model bug.
DiscountedSolution solve_discounted(const FiniteControlSystem& system, int y0, double alpha);

AverageSolution solve_average(const FiniteControlSystem& system);

/// min over gamma' in W of rho(gamma, gamma'), as an LP over gamma' plus one
/// split pair per basis function linearizing the absolute values.
double distance_to_W(const OccupationalMeasure& gamma, const FiniteControlSystem& system,
                     const TestFunctionBasis& basis);

/// Same absolute-value template over hull coefficients: min over convex
/// combinations of the candidates of rho(combination, gamma).
double distance_to_hull(const OccupationalMeasure& gamma,
                        std::span<const OccupationalMeasure> candidates,
                        const TestFunctionBasis& basis);

/// Vertices of the W polytope collected from basic optimal solutions under
/// +/- unit objectives per pair and extra seeded random objectives.
/// Deterministic given the seed; complete on small systems.
std::vector<OccupationalMeasure> w_polytope_vertices(const FiniteControlSystem& system,
                                                     int random_objectives = 32,
                                                     unsigned seed = 1);

/// Cross-checks the discounted equality chain at tolerance tol: value
/// iteration, LP primal, LP dual objective agree pairwise, and psi = V_alpha
/// is dual feasible. One-sided records use value >= bound as the pass rule.
VerificationReport verify_theorem_4_1(const FiniteControlSystem& system, int y0, double alpha,
                                      double tol = 1e-8);

}  // namespace oclp
