#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "oclp/dp.hpp"
#include "oclp/lpform.hpp"
#include "oclp/measures.hpp"
#include "oclp/model.hpp"

namespace oclp {

/// Bounded real sequence, either finite or eventually periodic
/// (preamble + nonempty cycle). Deterministic finite systems generate exactly
/// the eventually periodic kind, which keeps Abel means closed-form.
class BoundedSequence {
  public:
    static BoundedSequence finite(std::vector<double> values);
    static BoundedSequence periodic(std::vector<double> cycle);
    static BoundedSequence eventually_periodic(std::vector<double> preamble,
                                               std::vector<double> cycle);

    /// Cost sequence of the trajectory driven by a stationary policy.
    static BoundedSequence from_trajectory(const FiniteControlSystem& system,
                                           const Policy& policy, int start);

    bool is_infinite() const { return !cycle_.empty(); }
    double value(std::int64_t t) const;
    std::int64_t finite_length() const;  // finite sequences only
    double bound() const { return bound_; }  // exact max |value|
    const std::vector<double>& preamble() const { return preamble_; }
    const std::vector<double>& cycle() const { return cycle_; }

  private:
    BoundedSequence(std::vector<double> preamble, std::vector<double> cycle);

    std::vector<double> preamble_;
    std::vector<double> cycle_;  // empty for finite sequences
    double bound_ = 0.0;
};

/// Abel mean sigma = (1-alpha) sum_t alpha^t g(t), exact via the geometric
/// series over the cycle. Requires an eventually periodic sequence.
double abel_mean(const BoundedSequence& seq, double alpha);

struct CesaroHorizon {
    std::int64_t T = 0;            // smallest qualifying horizon
    std::int64_t lower_bound = 0;  // max(1, [eps / ((4M+4|sigma|+eps)(-ln alpha))])
    double sigma = 0.0;
    double cesaro_value = 0.0;     // (1/T) sum_{t<T} g(t)
};

/// Smallest T >= the integer-part lower bound with
/// (1/T) sum_{t<T} g(t) < sigma + eps + 2M/T. Both properties are re-checked
/// before returning; the search is capped at 1e9 as an internal-bug guard.
CesaroHorizon find_cesaro_horizon(const BoundedSequence& seq, double alpha, double eps);

struct GoodStart {
    int t_star = 0;
    int l = 0;  // t - t_star
};

/// On a finite sequence with average sigma (checked to 1e-12, else
/// SigmaMismatch), returns the largest prefix length whose running average
/// still exceeds sigma + eps (0 if none). Every suffix window starting there
/// then satisfies (1/S) sum q(t*+tau) <= sigma + eps for S = 1..l, which is
/// re-verified before returning.
GoodStart find_good_start(std::span<const double> values, double sigma, double eps);

struct SweepPoint {
    double parameter = 0.0;
    double value = 0.0;
    double reference = 0.0;
    double abs_error = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
};

/// min_y (1-alpha) V_alpha(y) along the alpha grid, with g* from the average
/// LP as the reference value.
SweepResult alpha_sweep(const FiniteControlSystem& system, std::span<const double> alpha_grid);

/// G_S = min_y (1/S) V(S,y) along the horizon grid, same reference.
SweepResult horizon_sweep(const FiniteControlSystem& system, std::span<const int> horizon_grid);

struct SampleSpec {
    int exhaustive_policy_limit = 256;  // enumerate all policies up to this count
    int sampled_policies = 64;          // otherwise sample this many
    unsigned seed = 1;
    int w_vertex_objectives = 32;       // random objectives for W vertex collection
};

/// All stationary policies when there are at most `limit`, nullopt otherwise.
std::optional<std::vector<Policy>> try_all_policies(const FiniteControlSystem& system,
                                                    std::int64_t limit);

/// Seeded uniform policy draws (one independent action choice per state).
std::vector<Policy> sample_policies(const FiniteControlSystem& system, int count, unsigned seed);

enum class SweepKind { Alpha, Horizon };

/// Two-sided Hausdorff deviation between the sampled occupational-measure
/// cloud and W along the grid: max over samples of distance_to_W, and max
/// over W's vertices of the distance to the sample hull. Reference is 0.
SweepResult set_convergence_experiment(const FiniteControlSystem& system, SweepKind kind,
                                       std::span<const double> grid, const SampleSpec& sample,
                                       const TestFunctionBasis& basis);

}  // namespace oclp
