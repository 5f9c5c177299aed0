#include "oclp/dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oclp {

namespace {

void check_defined(const FiniteControlSystem& system, const ValueFunction& V) {
    if (V.size() != system.num_states())
        throw Error(ErrorKind::InternalError, "value function not defined on all states");
}

}  // namespace

std::pair<ValueFunction, Policy> bellman_backup(const FiniteControlSystem& system,
                                                const ValueFunction& V, double alpha) {
    check_defined(system, V);
    int n = system.num_states();
    std::vector<double> out(n);
    Policy policy;
    policy.choice.resize(n);
    for (int s = 0; s < n; ++s) {
        double best = std::numeric_limits<double>::infinity();
        int best_a = 0;
        for (int a = 0; a < system.num_actions(s); ++a) {
            double q = system.cost(s, a) + alpha * V(system.next_state(s, a));
            if (q < best) {
                best = q;
                best_a = a;
            }
        }
        out[s] = best;
        policy.choice[s] = best_a;
    }
    return {ValueFunction::discounted(alpha, std::move(out)), std::move(policy)};
}

ValueIterationResult value_iteration(const FiniteControlSystem& system, double alpha, double tol,
                                     int max_iter) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error(ErrorKind::BadConfig, "alpha must lie in (0,1)");
    if (!(tol > 0.0)) throw Error(ErrorKind::BadConfig, "tol must be positive");

    // sup-step <= threshold implies ||V - V_alpha||_inf <= tol/2 by the
    // alpha/(1-alpha) contraction bound.
    const double threshold = tol * (1.0 - alpha) / (2.0 * alpha);
    ValueFunction V = ValueFunction::discounted(alpha, std::vector<double>(system.num_states(), 0.0));
    for (int k = 1; k <= max_iter; ++k) {
        auto [next, policy] = bellman_backup(system, V, alpha);
        double step = 0.0;
        for (int s = 0; s < system.num_states(); ++s)
            step = std::max(step, std::abs(next(s) - V(s)));
        V = std::move(next);
        if (step <= threshold) return {std::move(V), k, step, std::move(policy)};
    }
    throw Error(ErrorKind::MaxIterExceeded,
                "value iteration did not reach residual " + std::to_string(threshold));
}

FiniteHorizonResult finite_horizon_value(const FiniteControlSystem& system, int S) {
    if (S < 1) throw Error(ErrorKind::BadConfig, "horizon must be >= 1");
    int n = system.num_states();
    std::vector<double> V(n, 0.0);
    FiniteHorizonResult result;
    result.stage_policies.reserve(S);
    for (int k = 0; k < S; ++k) {
        std::vector<double> next(n);
        Policy policy;
        policy.choice.resize(n);
        for (int s = 0; s < n; ++s) {
            double best = std::numeric_limits<double>::infinity();
            int best_a = 0;
            for (int a = 0; a < system.num_actions(s); ++a) {
                double q = system.cost(s, a) + V[system.next_state(s, a)];
                if (q < best) {
                    best = q;
                    best_a = a;
                }
            }
            next[s] = best;
            policy.choice[s] = best_a;
        }
        V = std::move(next);
        result.stage_policies.push_back(std::move(policy));
    }
    result.value = ValueFunction::horizon_value(S, std::move(V));
    return result;
}

std::pair<double, int> min_over_initial(const ValueFunction& V, double scale) {
    if (V.values.empty()) throw Error(ErrorKind::EmptyInput, "empty value function");
    int arg = 0;
    for (int s = 1; s < V.size(); ++s)
        if (V(s) < V(arg)) arg = s;
    return {scale * V(arg), arg};
}

ValueFunction h_operator(const FiniteControlSystem& system, const ValueFunction& psi,
                         double alpha) {
    check_defined(system, psi);
    int n = system.num_states();
    std::vector<double> out(n);
    for (int s = 0; s < n; ++s) {
        double best = std::numeric_limits<double>::infinity();
        for (int a = 0; a < system.num_actions(s); ++a) {
            double v = alpha * (psi(system.next_state(s, a)) - psi(s)) + system.cost(s, a);
            best = std::min(best, v);
        }
        out[s] = best;
    }
    return ValueFunction::potential(std::move(out));
}

}  // namespace oclp
