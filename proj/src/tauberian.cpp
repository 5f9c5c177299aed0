#include "oclp/tauberian.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace oclp {

BoundedSequence::BoundedSequence(std::vector<double> preamble, std::vector<double> cycle)
    : preamble_(std::move(preamble)), cycle_(std::move(cycle)) {
    for (double v : preamble_) {
        if (!std::isfinite(v)) throw Error(ErrorKind::BadConfig, "sequence value not finite");
        bound_ = std::max(bound_, std::abs(v));
    }
    for (double v : cycle_) {
        if (!std::isfinite(v)) throw Error(ErrorKind::BadConfig, "sequence value not finite");
        bound_ = std::max(bound_, std::abs(v));
    }
}

BoundedSequence BoundedSequence::finite(std::vector<double> values) {
    if (values.empty()) throw Error(ErrorKind::EmptyInput, "empty sequence");
    return BoundedSequence(std::move(values), {});
}

BoundedSequence BoundedSequence::periodic(std::vector<double> cycle) {
    if (cycle.empty()) throw Error(ErrorKind::EmptyInput, "empty cycle");
    return BoundedSequence({}, std::move(cycle));
}

BoundedSequence BoundedSequence::eventually_periodic(std::vector<double> preamble,
                                                     std::vector<double> cycle) {
    if (cycle.empty()) throw Error(ErrorKind::EmptyInput, "empty cycle");
    return BoundedSequence(std::move(preamble), std::move(cycle));
}

BoundedSequence BoundedSequence::from_trajectory(const FiniteControlSystem& system,
                                                 const Policy& policy, int start) {
    if (start < 0 || start >= system.num_states())
        throw Error(ErrorKind::InadmissibleControl, "unknown initial state");
    std::vector<int> first_seen(system.num_states(), -1);
    std::vector<double> costs;
    int state = start;
    while (first_seen[state] == -1) {
        first_seen[state] = static_cast<int>(costs.size());
        costs.push_back(system.cost(state, policy(state)));
        state = system.next_state(state, policy(state));
    }
    int cycle_begin = first_seen[state];
    std::vector<double> preamble(costs.begin(), costs.begin() + cycle_begin);
    std::vector<double> cycle(costs.begin() + cycle_begin, costs.end());
    return eventually_periodic(std::move(preamble), std::move(cycle));
}

double BoundedSequence::value(std::int64_t t) const {
    if (t < static_cast<std::int64_t>(preamble_.size())) return preamble_[t];
    if (cycle_.empty())
        throw Error(ErrorKind::BadConfig, "index beyond the end of a finite sequence");
    return cycle_[(t - preamble_.size()) % cycle_.size()];
}

std::int64_t BoundedSequence::finite_length() const {
    if (is_infinite()) throw Error(ErrorKind::BadConfig, "sequence is infinite");
    return static_cast<std::int64_t>(preamble_.size());
}

double abel_mean(const BoundedSequence& seq, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::BadConfig, "alpha must lie in (0,1)");
    if (!seq.is_infinite())
        throw Error(ErrorKind::BadConfig, "abel mean requires an eventually periodic sequence");
    double acc = 0.0;
    double discount = 1.0;
    for (double v : seq.preamble()) {
        acc += discount * v;
        discount *= alpha;
    }
    double cycle_sum = 0.0;
    double w = 1.0;
    for (double v : seq.cycle()) {
        cycle_sum += w * v;
        w *= alpha;
    }
    acc += discount * cycle_sum / (1.0 - std::pow(alpha, seq.cycle().size()));
    return (1.0 - alpha) * acc;
}

CesaroHorizon find_cesaro_horizon(const BoundedSequence& seq, double alpha, double eps) {
    if (!(eps > 0.0)) throw Error(ErrorKind::BadConfig, "eps must be positive");
    CesaroHorizon out;
    out.sigma = abel_mean(seq, alpha);
    const double M = seq.bound();
    const double raw = eps / ((4.0 * M + 4.0 * std::abs(out.sigma) + eps) * (-std::log(alpha)));
    // The integer part can be 0; the lemma asks for a positive integer.
    out.lower_bound = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(raw)));

    constexpr std::int64_t kCap = 1000000000;
    double partial = 0.0;
    for (std::int64_t T = 1; T <= kCap; ++T) {
        partial += seq.value(T - 1);
        if (T < out.lower_bound) continue;
        double average = partial / static_cast<double>(T);
        if (average < out.sigma + eps + 2.0 * M / static_cast<double>(T)) {
            out.T = T;
            out.cesaro_value = average;
            return out;
        }
    }
    throw Error(ErrorKind::InternalError, "cesaro horizon search exceeded the safety cap");
}

GoodStart find_good_start(std::span<const double> values, double sigma, double eps) {
    if (values.empty()) throw Error(ErrorKind::EmptyInput, "empty sequence");
    if (!(eps > 0.0)) throw Error(ErrorKind::BadConfig, "eps must be positive");
    const int t = static_cast<int>(values.size());
    double total = 0.0;
    for (double v : values) total += v;
    const double mean = total / t;
    if (std::abs(mean - sigma) > 1e-12 * std::max(1.0, std::abs(mean)))
        throw Error(ErrorKind::SigmaMismatch, "supplied sigma is not the sequence average");

    // t* from the proof: last prefix whose running average still exceeds
    // sigma + eps. The full prefix never qualifies since its average is sigma.
    int t_star = 0;
    double prefix = 0.0;
    for (int s = 1; s <= t; ++s) {
        prefix += values[s - 1];
        if (prefix / s > sigma + eps) t_star = s;
    }
    if (t_star == t) throw Error(ErrorKind::InternalError, "good start collapsed to the full prefix");

    GoodStart out{t_star, t - t_star};
    const double slack = 1e-12 * std::max(1.0, std::abs(sigma) + eps);
    double suffix = 0.0;
    for (int S = 1; S <= out.l; ++S) {
        suffix += values[t_star + S - 1];
        if (suffix / S > sigma + eps + slack)
            throw Error(ErrorKind::InternalError, "good start postcondition failed");
    }
    return out;
}

SweepResult alpha_sweep(const FiniteControlSystem& system, std::span<const double> alpha_grid) {
    if (alpha_grid.empty()) throw Error(ErrorKind::BadConfig, "empty alpha grid");
    for (size_t i = 0; i < alpha_grid.size(); ++i) {
        if (!(alpha_grid[i] > 0.0 && alpha_grid[i] < 1.0))
            throw Error(ErrorKind::BadConfig, "alpha grid values must lie in (0,1)");
        if (i > 0 && alpha_grid[i] <= alpha_grid[i - 1])
            throw Error(ErrorKind::BadConfig, "alpha grid must be strictly increasing");
    }
    const double g_star = solve_average(system).value;
    SweepResult out;
    for (double alpha : alpha_grid) {
        auto vi = value_iteration(system, alpha);
        auto [value, state] = min_over_initial(vi.value, 1.0 - alpha);
        (void)state;
        out.points.push_back({alpha, value, g_star, std::abs(value - g_star)});
    }
    return out;
}

SweepResult horizon_sweep(const FiniteControlSystem& system, std::span<const int> horizon_grid) {
    if (horizon_grid.empty()) throw Error(ErrorKind::BadConfig, "empty horizon grid");
    for (size_t i = 0; i < horizon_grid.size(); ++i) {
        if (horizon_grid[i] < 1) throw Error(ErrorKind::BadConfig, "horizons must be >= 1");
        if (i > 0 && horizon_grid[i] <= horizon_grid[i - 1])
            throw Error(ErrorKind::BadConfig, "horizon grid must be strictly increasing");
    }
    const double g_star = solve_average(system).value;
    SweepResult out;
    for (int S : horizon_grid) {
        auto fh = finite_horizon_value(system, S);
        auto [value, state] = min_over_initial(fh.value, 1.0 / S);
        (void)state;
        out.points.push_back({static_cast<double>(S), value, g_star, std::abs(value - g_star)});
    }
    return out;
}

std::optional<std::vector<Policy>> try_all_policies(const FiniteControlSystem& system,
                                                    std::int64_t limit) {
    std::int64_t count = 1;
    for (int s = 0; s < system.num_states(); ++s) {
        count *= system.num_actions(s);
        if (count > limit) return std::nullopt;
    }
    std::vector<Policy> out;
    out.reserve(count);
    Policy current;
    current.choice.assign(system.num_states(), 0);
    while (true) {
        out.push_back(current);
        int s = system.num_states() - 1;
        while (s >= 0 && current.choice[s] + 1 == system.num_actions(s)) current.choice[s--] = 0;
        if (s < 0) break;
        ++current.choice[s];
    }
    return out;
}

std::vector<Policy> sample_policies(const FiniteControlSystem& system, int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<Policy> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        Policy p;
        p.choice.resize(system.num_states());
        for (int s = 0; s < system.num_states(); ++s) {
            std::uniform_int_distribution<int> pick(0, system.num_actions(s) - 1);
            p.choice[s] = pick(rng);
        }
        out.push_back(std::move(p));
    }
    return out;
}

SweepResult set_convergence_experiment(const FiniteControlSystem& system, SweepKind kind,
                                       std::span<const double> grid, const SampleSpec& sample,
                                       const TestFunctionBasis& basis) {
    if (grid.empty()) throw Error(ErrorKind::BadConfig, "empty parameter grid");
    for (size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw Error(ErrorKind::BadConfig, "parameter grid must be strictly increasing");

    std::vector<Policy> policies;
    if (auto all = try_all_policies(system, sample.exhaustive_policy_limit))
        policies = std::move(*all);
    else
        policies = sample_policies(system, sample.sampled_policies, sample.seed);

    const auto w_vertices =
        w_polytope_vertices(system, sample.w_vertex_objectives, sample.seed + 1);

    SweepResult out;
    for (double param : grid) {
        std::vector<OccupationalMeasure> cloud;
        cloud.reserve(policies.size() * system.num_states());
        for (const auto& policy : policies) {
            for (int y0 = 0; y0 < system.num_states(); ++y0) {
                if (kind == SweepKind::Alpha) {
                    cloud.push_back(discounted_occupational_measure(system, policy, y0, param));
                } else {
                    int S = static_cast<int>(param);
                    if (S < 1 || static_cast<double>(S) != param)
                        throw Error(ErrorKind::BadConfig, "horizon grid values must be integers >= 1");
                    cloud.push_back(horizon_occupational_measure(system, policy, y0, S));
                }
            }
        }
        double dev_cloud_to_w = 0.0;
        for (const auto& gamma : cloud)
            dev_cloud_to_w = std::max(dev_cloud_to_w, distance_to_W(gamma, system, basis));
        double dev_w_to_hull = 0.0;
        for (const auto& vertex : w_vertices)
            dev_w_to_hull = std::max(dev_w_to_hull, distance_to_hull(vertex, cloud, basis));
        double deviation = std::max(dev_cloud_to_w, dev_w_to_hull);
        out.points.push_back({param, deviation, 0.0, deviation});
    }
    return out;
}

}  // namespace oclp
