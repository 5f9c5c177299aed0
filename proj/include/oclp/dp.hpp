#pragma once

#include <utility>
#include <vector>

#include "oclp/model.hpp"

namespace oclp {

/// State-indexed real function. The tag records what the values mean:
/// a discounted optimum V_alpha, an S-step optimum V(S, .), or a dual
/// potential psi.
struct ValueFunction {
    enum class Tag { Discounted, Horizon, Potential };

    Tag tag = Tag::Potential;
    double alpha = 0.0;  // Discounted only
    int horizon = 0;     // Horizon only
    std::vector<double> values;

    static ValueFunction discounted(double alpha, std::vector<double> values) {
        return {Tag::Discounted, alpha, 0, std::move(values)};
    }
    static ValueFunction horizon_value(int S, std::vector<double> values) {
        return {Tag::Horizon, 0.0, S, std::move(values)};
    }
    static ValueFunction potential(std::vector<double> values) {
        return {Tag::Potential, 0.0, 0, std::move(values)};
    }

    double operator()(int state) const { return values[state]; }
    int size() const { return static_cast<int>(values.size()); }
};

/// Stationary selector: one admissible action (local index) per state.
struct Policy {
    std::vector<int> choice;

    int operator()(int state) const { return choice[state]; }
    int size() const { return static_cast<int>(choice.size()); }
};

/// One Bellman backup: new(y) = min_u { g(y,u) + alpha * V(f(y,u)) }, with an
/// argmin policy, ties to the smallest action index.
std::pair<ValueFunction, Policy> bellman_backup(const FiniteControlSystem& system,
                                                const ValueFunction& V, double alpha);

struct ValueIterationResult {
    ValueFunction value;
    int iterations = 0;
    double residual = 0.0;  // last sup-norm step, <= tol*(1-alpha)/(2*alpha)
    Policy policy;          // argmin at the final backup
};

/// Iterates the backup from V = 0 until the sup-norm step guarantees
/// ||V - V_alpha||_inf <= tol via the contraction constant. Throws
/// MaxIterExceeded when the threshold is not reached.
ValueIterationResult value_iteration(const FiniteControlSystem& system, double alpha,
                                     double tol = 1e-10, int max_iter = 1000000);

struct FiniteHorizonResult {
    ValueFunction value;                 // V(S, .) exactly, no tolerance
    std::vector<Policy> stage_policies;  // stage_policies[k] is optimal with k+1 steps to go
};

/// Backward recursion V(0,.) = 0, V(k+1,y) = min_u { g + V(k, f(y,u)) }.
/// An optimal open-loop control from y follows stage_policies[S-1], then
/// stage_policies[S-2] at the successor, and so on.
FiniteHorizonResult finite_horizon_value(const FiniteControlSystem& system, int S);

/// (scale * min value, attaining state), smallest state index on ties.
std::pair<double, int> min_over_initial(const ValueFunction& V, double scale);

/// H_psi(y) = min_u { alpha*(psi(f(y,u)) - psi(y)) + g(y,u) }.
ValueFunction h_operator(const FiniteControlSystem& system, const ValueFunction& psi, double alpha);

}  // namespace oclp
