#include "oclp/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "oclp/numfmt.hpp"

namespace oclp {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::DuplicatePair: return "DuplicatePair";
        case ErrorKind::DanglingTarget: return "DanglingTarget";
        case ErrorKind::NoAdmissibleAction: return "NoAdmissibleAction";
        case ErrorKind::InadmissibleControl: return "InadmissibleControl";
        case ErrorKind::BasisMismatch: return "BasisMismatch";
        case ErrorKind::EmptySet: return "EmptySet";
        case ErrorKind::MaxIterExceeded: return "MaxIterExceeded";
        case ErrorKind::NumericalFailure: return "NumericalFailure";
        case ErrorKind::Infeasible: return "Infeasible";
        case ErrorKind::SigmaMismatch: return "SigmaMismatch";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::BadConfig: return "BadConfig";
        case ErrorKind::InternalError: return "InternalError";
    }
    return "UnknownError";
}

int FiniteControlSystem::state_index(std::string_view label) const {
    auto it = state_lookup_.find(std::string(label));
    return it == state_lookup_.end() ? -1 : it->second;
}

FiniteControlSystem::PairRef FiniteControlSystem::pair(int pair_id) const {
    // action_offset_ is sorted; locate the owning state.
    auto it = std::upper_bound(action_offset_.begin(), action_offset_.end(), pair_id);
    int state = static_cast<int>(it - action_offset_.begin()) - 1;
    return {state, pair_id - action_offset_[state]};
}

std::span<const double> FiniteControlSystem::state_coords(int state) const {
    return {state_coords_.data() + static_cast<size_t>(state) * state_dim_,
            static_cast<size_t>(state_dim_)};
}

std::span<const double> FiniteControlSystem::control_coords(int pair_id) const {
    return {control_coords_.data() + static_cast<size_t>(pair_id) * control_dim_,
            static_cast<size_t>(control_dim_)};
}

FiniteControlSystem FiniteControlSystem::from_parts(std::vector<std::string> state_labels,
                                                    std::vector<int> action_offset,
                                                    std::vector<std::string> action_labels,
                                                    std::vector<int> next_state,
                                                    std::vector<double> cost) {
    if (action_offset.size() != state_labels.size() + 1 || action_offset.front() != 0 ||
        !std::is_sorted(action_offset.begin(), action_offset.end()) ||
        action_offset.back() != static_cast<int>(cost.size()) ||
        action_labels.size() != cost.size() || next_state.size() != cost.size()) {
        throw Error(ErrorKind::InternalError, "inconsistent system arrays");
    }
    FiniteControlSystem sys;
    sys.state_labels_ = std::move(state_labels);
    sys.action_offset_ = std::move(action_offset);
    sys.action_labels_ = std::move(action_labels);
    sys.next_state_ = std::move(next_state);
    sys.cost_ = std::move(cost);
    sys.cost_bound_ = 0.0;
    for (double c : sys.cost_) sys.cost_bound_ = std::max(sys.cost_bound_, std::abs(c));
    for (int s = 0; s < sys.num_states(); ++s) sys.state_lookup_[sys.state_labels_[s]] = s;
    return sys;
}

void FiniteControlSystem::attach_coordinates(int state_dim, std::vector<double> state_coords,
                                             int control_dim, std::vector<double> control_coords) {
    if (state_coords.size() != static_cast<size_t>(num_states()) * state_dim ||
        control_coords.size() != static_cast<size_t>(num_pairs()) * control_dim) {
        throw Error(ErrorKind::InternalError, "coordinate arrays do not match system size");
    }
    state_dim_ = state_dim;
    control_dim_ = control_dim;
    state_coords_ = std::move(state_coords);
    control_coords_ = std::move(control_coords);
}

FiniteControlSystem build_from_table(const std::vector<TableRow>& rows) {
    if (rows.empty()) throw Error(ErrorKind::EmptyInput, "no rows");

    // State order = first appearance as a row source.
    std::vector<std::string> states;
    std::unordered_map<std::string, int> index;
    for (const auto& row : rows) {
        if (index.emplace(row.state, static_cast<int>(states.size())).second)
            states.push_back(row.state);
    }

    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& row : rows) {
        if (!seen.emplace(row.state, row.action).second)
            throw Error(ErrorKind::DuplicatePair,
                        "(" + row.state + ", " + row.action + ") listed twice");
        if (!index.contains(row.next_state))
            throw Error(ErrorKind::DanglingTarget, "(" + row.state + ", " + row.action +
                                                       ") targets unknown state '" +
                                                       row.next_state + "'");
    }

    // Group rows by state, keeping each state's actions in input order.
    int n = static_cast<int>(states.size());
    std::vector<std::vector<const TableRow*>> by_state(n);
    for (const auto& row : rows) by_state[index.at(row.state)].push_back(&row);

    std::vector<int> offset(n + 1, 0);
    std::vector<std::string> action_labels;
    std::vector<int> next_state;
    std::vector<double> cost;
    for (int s = 0; s < n; ++s) {
        offset[s + 1] = offset[s] + static_cast<int>(by_state[s].size());
        for (const TableRow* row : by_state[s]) {
            action_labels.push_back(row->action);
            next_state.push_back(index.at(row->next_state));
            cost.push_back(row->cost);
        }
    }
    return FiniteControlSystem::from_parts(std::move(states), std::move(offset),
                                           std::move(action_labels), std::move(next_state),
                                           std::move(cost));
}

namespace {

std::string coords_label(std::span<const double> v) {
    std::string out = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    out += ")";
    return out;
}

// Nearest index along one axis; an exact midpoint goes to the lower index so
// the projected tuple is the lexicographically smallest nearest point.
int project_axis(double v, double lower, double step, int points) {
    double t = (v - lower) / step;
    double base = std::floor(t);
    int i = static_cast<int>(base);
    double frac = t - base;
    if (frac > 0.5) ++i;
    return std::clamp(i, 0, points - 1);
}

}  // namespace

FiniteControlSystem build_grid_system(const GridSpec& spec, const DynamicsFn& f, const CostFn& g) {
    const int dim = static_cast<int>(spec.points_per_dim.size());
    if (dim == 0 || spec.lower.size() != static_cast<size_t>(dim) ||
        spec.upper.size() != static_cast<size_t>(dim))
        throw Error(ErrorKind::BadConfig, "grid bounds and points_per_dim sizes differ");
    for (int d = 0; d < dim; ++d) {
        if (!std::isfinite(spec.lower[d]) || !std::isfinite(spec.upper[d]) ||
            spec.lower[d] >= spec.upper[d])
            throw Error(ErrorKind::BadConfig, "grid bounds must be finite with lower < upper");
        if (spec.points_per_dim[d] < 2)
            throw Error(ErrorKind::BadConfig, "need at least 2 grid points per dimension");
    }
    if (spec.actions.empty()) throw Error(ErrorKind::BadConfig, "action grid is empty");
    const int cdim = static_cast<int>(spec.actions.front().size());
    for (const auto& u : spec.actions)
        if (static_cast<int>(u.size()) != cdim)
            throw Error(ErrorKind::BadConfig, "action vectors have mixed dimensions");

    std::vector<double> step(dim);
    int num_states = 1;
    for (int d = 0; d < dim; ++d) {
        step[d] = (spec.upper[d] - spec.lower[d]) / (spec.points_per_dim[d] - 1);
        num_states *= spec.points_per_dim[d];
    }

    // Row-major point enumeration, last dimension fastest.
    std::vector<double> coords(static_cast<size_t>(num_states) * dim);
    for (int s = 0; s < num_states; ++s) {
        int rem = s;
        for (int d = dim - 1; d >= 0; --d) {
            int i = rem % spec.points_per_dim[d];
            rem /= spec.points_per_dim[d];
            coords[static_cast<size_t>(s) * dim + d] = spec.lower[d] + i * step[d];
        }
    }

    std::vector<std::string> state_labels(num_states);
    for (int s = 0; s < num_states; ++s)
        state_labels[s] = coords_label({coords.data() + static_cast<size_t>(s) * dim,
                                        static_cast<size_t>(dim)});

    std::vector<int> offset(num_states + 1, 0);
    std::vector<std::string> action_labels;
    std::vector<int> next_state;
    std::vector<double> cost;
    std::vector<double> control_coords;
    std::vector<int> starved;

    for (int s = 0; s < num_states; ++s) {
        std::span<const double> y{coords.data() + static_cast<size_t>(s) * dim,
                                  static_cast<size_t>(dim)};
        int count = 0;
        for (const auto& u : spec.actions) {
            std::vector<double> image = f(y, u);
            if (static_cast<int>(image.size()) != dim)
                throw Error(ErrorKind::BadConfig, "dynamics image dimension mismatch");
            bool inside = true;
            for (int d = 0; d < dim; ++d)
                inside = inside && image[d] >= spec.lower[d] && image[d] <= spec.upper[d];
            if (!inside) continue;  // admissibility decided before projection

            int target = 0;
            for (int d = 0; d < dim; ++d) {
                target = target * spec.points_per_dim[d] +
                         project_axis(image[d], spec.lower[d], step[d], spec.points_per_dim[d]);
            }
            action_labels.push_back(coords_label(u));
            next_state.push_back(target);
            cost.push_back(g(y, u));
            control_coords.insert(control_coords.end(), u.begin(), u.end());
            ++count;
        }
        offset[s + 1] = offset[s] + count;
        if (count == 0) starved.push_back(s);
    }

    if (!starved.empty()) {
        std::string msg = "no admissible action at";
        for (int s : starved) msg += " " + state_labels[s];
        throw Error(ErrorKind::NoAdmissibleAction, msg);
    }

    auto sys = FiniteControlSystem::from_parts(std::move(state_labels), std::move(offset),
                                               std::move(action_labels), std::move(next_state),
                                               std::move(cost));
    sys.attach_coordinates(dim, std::move(coords), cdim, std::move(control_coords));
    return sys;
}

ValidationReport validate(const FiniteControlSystem& system) {
    ValidationReport report;
    double max_abs = 0.0;
    for (int s = 0; s < system.num_states(); ++s) {
        if (system.num_actions(s) == 0)
            report.violations.push_back({ErrorKind::NoAdmissibleAction, system.state_label(s),
                                         "state has no admissible action (A2)"});
        for (int a = 0; a < system.num_actions(s); ++a) {
            std::string subject =
                "(" + system.state_label(s) + ", " + system.action_label(s, a) + ")";
            int target = system.next_state(s, a);
            if (target < 0 || target >= system.num_states())
                report.violations.push_back(
                    {ErrorKind::DanglingTarget, subject, "transition leaves the state set"});
            double c = system.cost(s, a);
            if (!std::isfinite(c))
                report.violations.push_back({ErrorKind::InternalError, subject,
                                             "cost is not finite"});
            else
                max_abs = std::max(max_abs, std::abs(c));
        }
    }
    if (system.cost_bound() != max_abs)
        report.violations.push_back({ErrorKind::InternalError, "cost_bound",
                                     "does not equal max |cost| over pairs"});
    // pair_id <-> (state, action) bijection
    for (int p = 0; p < system.num_pairs(); ++p) {
        auto ref = system.pair(p);
        if (ref.state < 0 || ref.state >= system.num_states() || ref.action < 0 ||
            ref.action >= system.num_actions(ref.state) ||
            system.pair_id(ref.state, ref.action) != p) {
            report.violations.push_back({ErrorKind::InternalError, "pair_index",
                                         "enumeration is not a bijection"});
            break;
        }
    }
    return report;
}

bool identical_systems(const FiniteControlSystem& a, const FiniteControlSystem& b) {
    if (a.num_states() != b.num_states() || a.num_pairs() != b.num_pairs()) return false;
    if (a.cost_bound() != b.cost_bound()) return false;
    for (int s = 0; s < a.num_states(); ++s) {
        if (a.state_label(s) != b.state_label(s)) return false;
        if (a.num_actions(s) != b.num_actions(s)) return false;
        for (int u = 0; u < a.num_actions(s); ++u) {
            if (a.action_label(s, u) != b.action_label(s, u)) return false;
            if (a.next_state(s, u) != b.next_state(s, u)) return false;
            if (a.cost(s, u) != b.cost(s, u)) return false;
        }
    }
    return true;
}

}  // namespace oclp
