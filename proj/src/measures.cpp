#include "oclp/measures.hpp"

#include <algorithm>
#include <cmath>

namespace oclp {

namespace {

void check_policy(const FiniteControlSystem& system, const Policy& policy) {
    if (policy.size() != system.num_states())
        throw Error(ErrorKind::InadmissibleControl, "policy not defined on all states");
    for (int s = 0; s < system.num_states(); ++s)
        if (policy(s) < 0 || policy(s) >= system.num_actions(s))
            throw Error(ErrorKind::InadmissibleControl,
                        "policy picks a non-admissible action at " + system.state_label(s));
}

void check_start(const FiniteControlSystem& system, int start) {
    if (start < 0 || start >= system.num_states())
        throw Error(ErrorKind::InadmissibleControl, "unknown initial state");
}

}  // namespace

OccupationalMeasure discounted_occupational_measure(const FiniteControlSystem& system,
                                                    const Policy& policy, int start, double alpha) {
    return discounted_occupational_measure(system, std::span<const int>{}, policy, start, alpha);
}

OccupationalMeasure discounted_occupational_measure(const FiniteControlSystem& system,
                                                    std::span<const int> prefix, const Policy& tail,
                                                    int start, double alpha) {
    check_start(system, start);
    check_policy(system, tail);
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error(ErrorKind::BadConfig, "alpha must lie in (0,1)");

    OccupationalMeasure m;
    m.provenance = OccupationalMeasure::Provenance::Discounted;
    m.alpha = alpha;
    m.start = start;
    m.weights.assign(system.num_pairs(), 0.0);

    const double scale = 1.0 - alpha;
    double discount = 1.0;  // alpha^t
    int state = start;

    for (int u : prefix) {
        if (u < 0 || u >= system.num_actions(state))
            throw Error(ErrorKind::InadmissibleControl,
                        "prefix action not admissible at " + system.state_label(state));
        m.weights[system.pair_id(state, u)] += scale * discount;
        discount *= alpha;
        state = system.next_state(state, u);
    }

    // Under the stationary tail the state determines everything; record the
    // first visit step of each state to find the entry into the cycle.
    std::vector<int> first_seen(system.num_states(), -1);
    std::vector<int> path;  // states visited in the tail phase
    int cursor = state;
    while (first_seen[cursor] == -1) {
        first_seen[cursor] = static_cast<int>(path.size());
        path.push_back(cursor);
        cursor = system.next_state(cursor, tail(cursor));
    }
    const int cycle_begin = first_seen[cursor];
    const int cycle_len = static_cast<int>(path.size()) - cycle_begin;

    // Transient part: individual geometric terms.
    for (int i = 0; i < cycle_begin; ++i) {
        m.weights[system.pair_id(path[i], tail(path[i]))] += scale * discount;
        discount *= alpha;
    }
    // Cycle part: closed-form tail of the geometric series.
    const double cycle_factor = 1.0 - std::pow(alpha, cycle_len);
    for (int i = cycle_begin; i < static_cast<int>(path.size()); ++i) {
        m.weights[system.pair_id(path[i], tail(path[i]))] += scale * discount / cycle_factor;
        discount *= alpha;
    }
    return m;
}

OccupationalMeasure horizon_occupational_measure(const FiniteControlSystem& system,
                                                 std::span<const int> controls, int start) {
    check_start(system, start);
    if (controls.empty()) throw Error(ErrorKind::EmptyInput, "empty control sequence");

    OccupationalMeasure m;
    m.provenance = OccupationalMeasure::Provenance::Horizon;
    m.horizon = static_cast<int>(controls.size());
    m.start = start;
    m.weights.assign(system.num_pairs(), 0.0);

    const double w = 1.0 / static_cast<double>(controls.size());
    int state = start;
    for (int u : controls) {
        if (u < 0 || u >= system.num_actions(state))
            throw Error(ErrorKind::InadmissibleControl,
                        "control not admissible at " + system.state_label(state));
        m.weights[system.pair_id(state, u)] += w;
        state = system.next_state(state, u);
    }
    return m;
}

OccupationalMeasure horizon_occupational_measure(const FiniteControlSystem& system,
                                                 const Policy& policy, int start, int S) {
    check_start(system, start);
    check_policy(system, policy);
    if (S < 1) throw Error(ErrorKind::BadConfig, "horizon must be >= 1");
    std::vector<int> controls(S);
    int state = start;
    for (int t = 0; t < S; ++t) {
        controls[t] = policy(state);
        state = system.next_state(state, controls[t]);
    }
    return horizon_occupational_measure(system, controls, start);
}

double integrate(const OccupationalMeasure& gamma, std::span<const double> q) {
    if (static_cast<int>(q.size()) != gamma.size())
        throw Error(ErrorKind::BasisMismatch, "test function not defined on the pair index");
    double acc = 0.0;
    for (int p = 0; p < gamma.size(); ++p) acc += gamma.weights[p] * q[p];
    return acc;
}

TestFunctionBasis default_basis(const FiniteControlSystem& system, int J) {
    if (J < 1) throw Error(ErrorKind::BadConfig, "basis size must be >= 1");
    TestFunctionBasis basis;
    basis.functions.reserve(J);
    basis.weights.reserve(J);
    const int P = system.num_pairs();
    const int N = system.num_states();

    if (!system.has_coordinates()) {
        for (int j = 0; j < J; ++j) {
            int idx = j % (P + N);
            std::vector<double> q(P, 0.0);
            if (idx < P) {
                q[idx] = 1.0;
            } else {
                int s = idx - P;
                for (int a = 0; a < system.num_actions(s); ++a) q[system.pair_id(s, a)] = 1.0;
            }
            basis.functions.push_back(std::move(q));
        }
    } else {
        // Monomial exponent tuples over (y, u) coordinates: level L holds the
        // tuples with max exponent L, ordered by total degree then by
        // variable precedence (state coordinates before controls).
        const int dim = system.state_dim() + system.control_dim();
        std::vector<std::vector<int>> tuples;
        for (int level = 0; static_cast<int>(tuples.size()) < J; ++level) {
            std::vector<std::vector<int>> at_level;
            std::vector<int> expo(dim, 0);
            while (true) {
                if (*std::max_element(expo.begin(), expo.end()) == level)
                    at_level.push_back(expo);
                int d = dim - 1;
                while (d >= 0 && expo[d] == level) expo[d--] = 0;
                if (d < 0) break;
                ++expo[d];
            }
            std::stable_sort(at_level.begin(), at_level.end(),
                             [](const std::vector<int>& a, const std::vector<int>& b) {
                                 int da = 0, db = 0;
                                 for (int v : a) da += v;
                                 for (int v : b) db += v;
                                 if (da != db) return da < db;
                                 return a > b;  // earlier variables first
                             });
            for (auto& t : at_level) tuples.push_back(std::move(t));
        }
        tuples.resize(J);

        for (const auto& expo : tuples) {
            std::vector<double> q(P);
            double sup = 0.0;
            for (int p = 0; p < P; ++p) {
                auto ref = system.pair(p);
                auto y = system.state_coords(ref.state);
                auto u = system.control_coords(p);
                double v = 1.0;
                for (int d = 0; d < system.state_dim(); ++d)
                    v *= std::pow(y[d], expo[d]);
                for (int d = 0; d < system.control_dim(); ++d)
                    v *= std::pow(u[d], expo[system.state_dim() + d]);
                q[p] = v;
                sup = std::max(sup, std::abs(v));
            }
            if (sup > 0.0)
                for (double& v : q) v /= sup;
            basis.functions.push_back(std::move(q));
        }
    }

    double w = 1.0;
    for (int j = 0; j < J; ++j) {
        w *= 0.5;
        basis.weights.push_back(w);
    }
    return basis;
}

double rho(const OccupationalMeasure& gamma1, const OccupationalMeasure& gamma2,
           const TestFunctionBasis& basis) {
    if (gamma1.size() != gamma2.size() ||
        (basis.size() > 0 && basis.num_pairs() != gamma1.size()))
        throw Error(ErrorKind::BasisMismatch, "measures and basis disagree on the pair index");
    double acc = 0.0;
    for (int j = 0; j < basis.size(); ++j)
        acc += basis.weights[j] *
               std::abs(integrate(gamma1, basis.functions[j]) -
                        integrate(gamma2, basis.functions[j]));
    return acc;
}

double rho_to_set(const OccupationalMeasure& gamma, std::span<const OccupationalMeasure> set,
                  const TestFunctionBasis& basis) {
    if (set.empty()) throw Error(ErrorKind::EmptySet, "distance to an empty set");
    double best = rho(gamma, set[0], basis);
    for (size_t i = 1; i < set.size(); ++i) best = std::min(best, rho(gamma, set[i], basis));
    return best;
}

double hausdorff(std::span<const OccupationalMeasure> set1,
                 std::span<const OccupationalMeasure> set2, const TestFunctionBasis& basis) {
    if (set1.empty() || set2.empty()) throw Error(ErrorKind::EmptySet, "hausdorff of an empty set");
    double d12 = 0.0, d21 = 0.0;
    for (const auto& g : set1) d12 = std::max(d12, rho_to_set(g, set2, basis));
    for (const auto& g : set2) d21 = std::max(d21, rho_to_set(g, set1, basis));
    return std::max(d12, d21);
}

}  // namespace oclp
