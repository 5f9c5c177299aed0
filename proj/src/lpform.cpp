#include "oclp/lpform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

namespace oclp {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::BadConfig, "alpha must lie in (0,1)");
}

void check_state(const FiniteControlSystem& system, int y0) {
    if (y0 < 0 || y0 >= system.num_states())
        throw Error(ErrorKind::BadConfig, "initial state out of range");
}

OccupationalMeasure measure_from_primal(const std::vector<double>& x, int num_pairs) {
    OccupationalMeasure m;
    m.weights.resize(num_pairs);
    for (int p = 0; p < num_pairs; ++p) m.weights[p] = std::max(0.0, x[p]);
    return m;
}

LPSolution solve_or_flag(const StandardFormLP& lp, const char* what) {
    LPSolution sol = solve(lp);
    if (sol.status == LPStatus::Infeasible)
        throw Error(ErrorKind::Infeasible,
                    std::string(what) + " infeasible; the model violates viability");
    if (sol.status == LPStatus::Unbounded)
        throw Error(ErrorKind::InternalError, std::string(what) + " unbounded over a probability set");
    return sol;
}

}  // namespace

DiscountedLP build_discounted_lp(const FiniteControlSystem& system, int y0, double alpha) {
    check_alpha(alpha);
    check_state(system, y0);
    const int N = system.num_states();
    const int P = system.num_pairs();
    DiscountedLP out;
    out.y0 = y0;
    out.alpha = alpha;
    out.lp = StandardFormLP(N, P);
    for (int p = 0; p < P; ++p) {
        auto ref = system.pair(p);
        out.lp.at(ref.state, p) += 1.0;
        out.lp.at(system.pair_next_state(p), p) -= alpha;
        out.lp.c[p] = system.pair_cost(p);
    }
    out.lp.b[y0] = 1.0 - alpha;
    return out;
}

AverageLP build_average_lp(const FiniteControlSystem& system) {
    const int N = system.num_states();
    const int P = system.num_pairs();
    AverageLP out;
    out.lp = StandardFormLP(N + 1, P);
    for (int p = 0; p < P; ++p) {
        auto ref = system.pair(p);
        out.lp.at(ref.state, p) += 1.0;
        out.lp.at(system.pair_next_state(p), p) -= 1.0;
        out.lp.at(N, p) = 1.0;
        out.lp.c[p] = system.pair_cost(p);
    }
    out.lp.b[N] = 1.0;
    return out;
}

DiscountedSolution solve_discounted(const FiniteControlSystem& system, int y0, double alpha) {
    DiscountedLP built = build_discounted_lp(system, y0, alpha);
    DiscountedSolution out;
    out.lp = solve_or_flag(built.lp, "discounted occupation LP");
    out.value = out.lp.objective;
    out.gamma = measure_from_primal(out.lp.x, system.num_pairs());
    out.dual.psi = ValueFunction::potential(out.lp.y);
    out.dual.mu = 0.0;
    return out;
}

AverageSolution solve_average(const FiniteControlSystem& system) {
    AverageLP built = build_average_lp(system);
    AverageSolution out;
    out.lp = solve_or_flag(built.lp, "average occupation LP");
    out.value = out.lp.objective;
    out.gamma = measure_from_primal(out.lp.x, system.num_pairs());
    std::vector<double> psi(out.lp.y.begin(), out.lp.y.begin() + system.num_states());
    out.dual.psi = ValueFunction::potential(std::move(psi));
    out.dual.mu = out.lp.y[system.num_states()];
    return out;
}

namespace {

// Shared absolute-value template: given base columns with fixed rows and a
// target vector c_j = int q_j d(gamma), append one split pair per basis
// function and rows  (weighted moment of the combination) - s+ + s- = c_j.
double solve_moment_distance(StandardFormLP lp, int base_cols,
                             const std::vector<double>& target_moments,
                             const std::vector<std::vector<double>>& moment_rows,
                             const TestFunctionBasis& basis) {
    const int J = basis.size();
    const int base_rows = lp.rows;
    StandardFormLP full(base_rows + J, base_cols + 2 * J);
    for (int i = 0; i < base_rows; ++i) {
        for (int j = 0; j < base_cols; ++j) full.at(i, j) = lp.at(i, j);
        full.b[i] = lp.b[i];
    }
    for (int j = 0; j < J; ++j) {
        for (int k = 0; k < base_cols; ++k) full.at(base_rows + j, k) = moment_rows[j][k];
        full.at(base_rows + j, base_cols + j) = -1.0;
        full.at(base_rows + j, base_cols + J + j) = 1.0;
        full.b[base_rows + j] = target_moments[j];
        full.c[base_cols + j] = basis.weights[j];
        full.c[base_cols + J + j] = basis.weights[j];
    }
    LPSolution sol = solve_or_flag(full, "moment distance LP");
    return sol.objective;
}

}  // namespace

double distance_to_W(const OccupationalMeasure& gamma, const FiniteControlSystem& system,
                     const TestFunctionBasis& basis) {
    if (gamma.size() != system.num_pairs() || basis.num_pairs() != system.num_pairs())
        throw Error(ErrorKind::BasisMismatch, "measure or basis not on this system's pair index");
    AverageLP base = build_average_lp(system);
    const int J = basis.size();
    std::vector<double> targets(J);
    std::vector<std::vector<double>> moment_rows(J);
    for (int j = 0; j < J; ++j) {
        targets[j] = integrate(gamma, basis.functions[j]);
        moment_rows[j] = basis.functions[j];
    }
    return solve_moment_distance(base.lp, system.num_pairs(), targets, moment_rows, basis);
}

double distance_to_hull(const OccupationalMeasure& gamma,
                        std::span<const OccupationalMeasure> candidates,
                        const TestFunctionBasis& basis) {
    if (candidates.empty()) throw Error(ErrorKind::EmptySet, "hull of an empty set");
    const int K = static_cast<int>(candidates.size());
    const int J = basis.size();
    for (const auto& cand : candidates)
        if (cand.size() != gamma.size())
            throw Error(ErrorKind::BasisMismatch, "hull candidates on a different pair index");

    StandardFormLP base(1, K);
    for (int k = 0; k < K; ++k) base.at(0, k) = 1.0;
    base.b[0] = 1.0;

    std::vector<double> targets(J);
    std::vector<std::vector<double>> moment_rows(J, std::vector<double>(K));
    for (int j = 0; j < J; ++j) {
        targets[j] = integrate(gamma, basis.functions[j]);
        for (int k = 0; k < K; ++k) moment_rows[j][k] = integrate(candidates[k], basis.functions[j]);
    }
    return solve_moment_distance(base, K, targets, moment_rows, basis);
}

std::vector<OccupationalMeasure> w_polytope_vertices(const FiniteControlSystem& system,
                                                     int random_objectives, unsigned seed) {
    AverageLP built = build_average_lp(system);
    const int P = system.num_pairs();

    std::vector<OccupationalMeasure> vertices;
    std::map<std::vector<long long>, bool> seen;
    auto add = [&](const std::vector<double>& x) {
        std::vector<long long> key(P);
        for (int p = 0; p < P; ++p) key[p] = std::llround(x[p] * 1e9);
        if (seen.emplace(std::move(key), true).second)
            vertices.push_back(measure_from_primal(x, P));
    };

    StandardFormLP lp = built.lp;
    for (int p = 0; p < P; ++p) {
        for (double sign : {1.0, -1.0}) {
            std::fill(lp.c.begin(), lp.c.end(), 0.0);
            lp.c[p] = sign;
            add(solve_or_flag(lp, "average occupation LP").x);
        }
    }
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int k = 0; k < random_objectives; ++k) {
        for (int p = 0; p < P; ++p) lp.c[p] = unit(rng);
        add(solve_or_flag(lp, "average occupation LP").x);
    }
    return vertices;
}

VerificationReport verify_theorem_4_1(const FiniteControlSystem& system, int y0, double alpha,
                                      double tol) {
    check_alpha(alpha);
    check_state(system, y0);

    ValueIterationResult vi = value_iteration(system, alpha);
    DiscountedSolution lp = solve_discounted(system, y0, alpha);

    const double scaled_v = (1.0 - alpha) * vi.value(y0);
    const double dual_objective = (1.0 - alpha) * lp.dual.psi(y0);

    VerificationReport report;
    report.checks.push_back({"abs(scaled_value_iteration - lp_primal)",
                             std::abs(scaled_v - lp.value), tol,
                             std::abs(scaled_v - lp.value) <= tol});
    report.checks.push_back({"abs(lp_primal - lp_dual)", std::abs(lp.value - dual_objective), tol,
                             std::abs(lp.value - dual_objective) <= tol});

    // Attainment clause: psi = V_alpha is itself dual feasible.
    double min_slack = std::numeric_limits<double>::infinity();
    for (int p = 0; p < system.num_pairs(); ++p) {
        auto ref = system.pair(p);
        double slack = system.pair_cost(p) + alpha * vi.value(system.pair_next_state(p)) -
                       vi.value(ref.state);
        min_slack = std::min(min_slack, slack);
    }
    report.checks.push_back(
        {"min_dual_slack_of_value_function", min_slack, -tol, min_slack >= -tol});

    for (auto& rec : check_certificates(build_discounted_lp(system, y0, alpha).lp, lp.lp).checks)
        report.checks.push_back(std::move(rec));
    return report;
}

}  // namespace oclp
