#include "oclp/catalog.hpp"

namespace oclp {

FiniteControlSystem make_two_state() {
    return build_from_table({
        {"s0", "stay", "s0", 1.0},
        {"s0", "go", "s1", 5.0},
        {"s1", "stay", "s1", 0.0},
    });
}

FiniteControlSystem make_cycle3() {
    return build_from_table({
        {"s0", "next", "s1", 0.0},
        {"s1", "next", "s2", 1.0},
        {"s2", "next", "s0", 2.0},
    });
}

FiniteControlSystem make_lq1d() {
    GridSpec spec;
    spec.lower = {-1.0};
    spec.upper = {1.0};
    spec.points_per_dim = {5};
    spec.actions = {{-0.5}, {0.0}, {0.5}};
    NamedDynamics dyn = builtin_dynamics("integrator");
    return build_grid_system(spec, dyn.f, dyn.g);
}

const std::vector<std::string>& builtin_model_names() {
    static const std::vector<std::string> names = {"two_state", "cycle3", "lq1d"};
    return names;
}

FiniteControlSystem make_builtin(const std::string& name) {
    if (name == "two_state") return make_two_state();
    if (name == "cycle3") return make_cycle3();
    if (name == "lq1d") return make_lq1d();
    throw Error(ErrorKind::BadConfig, "unknown builtin model '" + name + "'");
}

namespace {

double quadratic_cost(std::span<const double> y, std::span<const double> u) {
    double acc = 0.0;
    for (double v : y) acc += v * v;
    for (double v : u) acc += v * v;
    return acc;
}

}  // namespace

const std::vector<std::string>& builtin_dynamics_names() {
    static const std::vector<std::string> names = {"integrator", "damped"};
    return names;
}

NamedDynamics builtin_dynamics(const std::string& name) {
    if (name == "integrator") {
        return {[](std::span<const double> y, std::span<const double> u) {
                    std::vector<double> out(y.begin(), y.end());
                    for (size_t d = 0; d < out.size() && d < u.size(); ++d) out[d] += u[d];
                    return out;
                },
                quadratic_cost};
    }
    if (name == "damped") {
        return {[](std::span<const double> y, std::span<const double> u) {
                    std::vector<double> out(y.begin(), y.end());
                    for (size_t d = 0; d < out.size(); ++d) {
                        out[d] *= 0.5;
                        if (d < u.size()) out[d] += u[d];
                    }
                    return out;
                },
                quadratic_cost};
    }
    throw Error(ErrorKind::BadConfig, "unknown builtin dynamics '" + name + "'");
}

const std::vector<std::string>& builtin_sequence_names() {
    static const std::vector<std::string> names = {"cycle012", "spike5", "const1"};
    return names;
}

BoundedSequence builtin_sequence(const std::string& name) {
    if (name == "cycle012") return BoundedSequence::periodic({0.0, 1.0, 2.0});
    if (name == "spike5") return BoundedSequence::eventually_periodic({5.0}, {0.0});
    if (name == "const1") return BoundedSequence::periodic({1.0});
    throw Error(ErrorKind::BadConfig, "unknown builtin sequence '" + name + "'");
}

}  // namespace oclp
