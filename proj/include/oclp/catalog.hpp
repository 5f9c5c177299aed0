#pragma once

#include <string>
#include <vector>

#include "oclp/model.hpp"
#include "oclp/tauberian.hpp"

namespace oclp {

/// two_state: s0 can stay (cost 1) or jump to the free self-loop s1 (cost 5).
FiniteControlSystem make_two_state();

/// cycle3: a single 3-cycle with costs 0, 1, 2; the only stationary measure
/// is uniform.
FiniteControlSystem make_cycle3();

/// lq1d: 5-point grid on [-1,1], controls {-0.5, 0, 0.5}, integrator
/// dynamics, quadratic cost.
FiniteControlSystem make_lq1d();

const std::vector<std::string>& builtin_model_names();
FiniteControlSystem make_builtin(const std::string& name);  // BadConfig if unknown

/// Named grid dynamics usable from run configurations: "integrator"
/// (f = y + u) and "damped" (f = y/2 + u), both with cost |y|^2 + |u|^2.
struct NamedDynamics {
    DynamicsFn f;
    CostFn g;
};
const std::vector<std::string>& builtin_dynamics_names();
NamedDynamics builtin_dynamics(const std::string& name);

/// Builtin test sequences: "cycle012" (periodic 0,1,2), "spike5" (preamble 5,
/// then zeros), "const1".
const std::vector<std::string>& builtin_sequence_names();
BoundedSequence builtin_sequence(const std::string& name);

}  // namespace oclp
