#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "oclp/error.hpp"

namespace oclp {

/// A finite deterministic control system: states, per-state admissible
/// actions, transitions closed under the state set, and bounded costs.
/// Pairs (state, action) are enumerated state-major; that enumeration is the
/// canonical pair index used by measures and LP columns everywhere else.
///
/// Instances are immutable after construction and safe to share across
/// threads.
class FiniteControlSystem {
  public:
    struct PairRef {
        int state;
        int action;  // local index into actions(state)
    };

    int num_states() const { return static_cast<int>(state_labels_.size()); }
    int num_pairs() const { return static_cast<int>(cost_.size()); }
    int num_actions(int state) const { return action_offset_[state + 1] - action_offset_[state]; }

    const std::string& state_label(int state) const { return state_labels_[state]; }
    const std::string& action_label(int state, int action) const {
        return action_labels_[pair_id(state, action)];
    }

    /// -1 when the label is unknown.
    int state_index(std::string_view label) const;

    int pair_id(int state, int action) const { return action_offset_[state] + action; }
    PairRef pair(int pair_id) const;

    int next_state(int state, int action) const { return next_state_[pair_id(state, action)]; }
    double cost(int state, int action) const { return cost_[pair_id(state, action)]; }
    int pair_next_state(int pair_id) const { return next_state_[pair_id]; }
    double pair_cost(int pair_id) const { return cost_[pair_id]; }

    /// Exact max of |cost| over all pairs.
    double cost_bound() const { return cost_bound_; }

    /// Grid-built systems carry the coordinates they were discretized from;
    /// tabular systems do not.
    bool has_coordinates() const { return state_dim_ > 0; }
    int state_dim() const { return state_dim_; }
    int control_dim() const { return control_dim_; }
    std::span<const double> state_coords(int state) const;
    std::span<const double> control_coords(int pair_id) const;

    static FiniteControlSystem from_parts(std::vector<std::string> state_labels,
                                          std::vector<int> action_offset,
                                          std::vector<std::string> action_labels,
                                          std::vector<int> next_state, std::vector<double> cost);

    void attach_coordinates(int state_dim, std::vector<double> state_coords, int control_dim,
                            std::vector<double> control_coords);

  private:
    FiniteControlSystem() = default;

    std::vector<std::string> state_labels_;
    std::vector<int> action_offset_;  // CSR, size num_states()+1
    std::vector<std::string> action_labels_;
    std::vector<int> next_state_;
    std::vector<double> cost_;
    double cost_bound_ = 0.0;
    std::unordered_map<std::string, int> state_lookup_;

    int state_dim_ = 0;
    int control_dim_ = 0;
    std::vector<double> state_coords_;
    std::vector<double> control_coords_;
};

struct TableRow {
    std::string state;
    std::string action;
    std::string next_state;
    double cost = 0.0;
};

/// Builds a system whose admissible pairs are exactly the given rows.
/// State order is first appearance as a row source; a next_state that never
/// appears as a source is rejected (the transition would leave the state
/// set). Throws EmptyInput, DuplicatePair, DanglingTarget.
FiniteControlSystem build_from_table(const std::vector<TableRow>& rows);

/// Box discretization request for continuous dynamics.
struct GridSpec {
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<int> points_per_dim;              // >= 2 each
    std::vector<std::vector<double>> actions;     // finite control grid
};

using DynamicsFn = std::function<std::vector<double>(std::span<const double> y, std::span<const double> u)>;
using CostFn = std::function<double(std::span<const double> y, std::span<const double> u)>;

/// Tabulates f and g on the grid. An action is admissible at a point iff the
/// exact image f(y,u) lies inside the box; admissible images are then snapped
/// to the nearest grid point, ties toward the lexicographically smallest
/// index. States are ordered row-major (last dimension fastest). Throws
/// NoAdmissibleAction listing every state left without actions.
FiniteControlSystem build_grid_system(const GridSpec& spec, const DynamicsFn& f, const CostFn& g);

struct Violation {
    ErrorKind kind;
    std::string subject;  // state or pair identity
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Re-checks every FiniteControlSystem invariant; failures are reported, not
/// thrown.
ValidationReport validate(const FiniteControlSystem& system);

/// Structural equality: labels, pair enumeration, transitions and costs all
/// identical (coordinates are not compared).
bool identical_systems(const FiniteControlSystem& a, const FiniteControlSystem& b);

}  // namespace oclp
