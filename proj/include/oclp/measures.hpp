#pragma once

#include <span>
#include <vector>

#include "oclp/dp.hpp"
#include "oclp/model.hpp"

namespace oclp {

/// Probability weights over the canonical pair index. Provenance records how
/// the measure was generated.
struct OccupationalMeasure {
    enum class Provenance { Discounted, Horizon, Abstract };

    Provenance provenance = Provenance::Abstract;
    double alpha = 0.0;  // Discounted
    int horizon = 0;     // Horizon
    int start = -1;      // generating initial state, -1 for Abstract
    std::vector<double> weights;

    int size() const { return static_cast<int>(weights.size()); }

    static OccupationalMeasure abstract(std::vector<double> weights) {
        OccupationalMeasure m;
        m.weights = std::move(weights);
        return m;
    }
};

/// Discounted occupational measure of the trajectory driven by a stationary
/// policy: weight(pair) = (1-alpha) * sum_t alpha^t [pair visited at t].
/// The trajectory enters a cycle within |states| steps, so the series is
/// summed in closed form with no truncation.
OccupationalMeasure discounted_occupational_measure(const FiniteControlSystem& system,
                                                    const Policy& policy, int start, double alpha);

/// Same, for a control that plays an explicit action prefix and then follows
/// a stationary policy.
OccupationalMeasure discounted_occupational_measure(const FiniteControlSystem& system,
                                                    std::span<const int> prefix,
                                                    const Policy& tail, int start, double alpha);

/// Empirical pair frequencies over t = 0..S-1 for an explicit control
/// sequence (S = controls.size()).
OccupationalMeasure horizon_occupational_measure(const FiniteControlSystem& system,
                                                 std::span<const int> controls, int start);

/// Policy variant: play the policy for S steps.
OccupationalMeasure horizon_occupational_measure(const FiniteControlSystem& system,
                                                 const Policy& policy, int start, int S);

/// sum_p weights[p] * q[p]; q is a pair-indexed value vector.
double integrate(const OccupationalMeasure& gamma, std::span<const double> q);

/// Weighted test functions defining the truncated metric rho. Every function
/// is bounded by 1 in sup norm over the admissible pairs; weight of q_j is
/// 2^{-j}.
struct TestFunctionBasis {
    std::vector<std::vector<double>> functions;  // J vectors of length num_pairs
    std::vector<double> weights;

    int size() const { return static_cast<int>(functions.size()); }
    int num_pairs() const { return functions.empty() ? 0 : static_cast<int>(functions[0].size()); }
};

/// Canonical basis. Tabular systems: indicators of pairs then of states, in
/// canonical order, repeating when J exceeds their count (so J >= num_pairs
/// separates pairs). Grid systems: monomials in the (y, u) coordinates,
/// enumerated by max exponent level, total degree, then variable order, each
/// rescaled to sup norm 1 over the admissible pairs.
TestFunctionBasis default_basis(const FiniteControlSystem& system, int J);

/// Truncated metric: sum_j 2^{-j} |int q_j d(gamma1 - gamma2)|.
double rho(const OccupationalMeasure& gamma1, const OccupationalMeasure& gamma2,
           const TestFunctionBasis& basis);

/// rho distance from a point to a finite set (min over the set).
double rho_to_set(const OccupationalMeasure& gamma, std::span<const OccupationalMeasure> set,
                  const TestFunctionBasis& basis);

/// Hausdorff semimetric between two finite sets of measures: the larger of
/// the two one-sided sup-inf deviations.
double hausdorff(std::span<const OccupationalMeasure> set1,
                 std::span<const OccupationalMeasure> set2, const TestFunctionBasis& basis);

}  // namespace oclp
