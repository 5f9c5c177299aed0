#include <doctest.h>

#include "oclp/catalog.hpp"
#include "oclp/model.hpp"

using namespace oclp;

namespace {

GridSpec box1d(int points) {
    GridSpec spec;
    spec.lower = {-1.0};
    spec.upper = {1.0};
    spec.points_per_dim = {points};
    spec.actions = {{-0.5}, {0.0}, {0.5}};
    return spec;
}

}  // namespace

TEST_CASE("build_from_table constructs the two-state model") {
    auto sys = make_two_state();
    CHECK(sys.num_states() == 2);
    CHECK(sys.num_pairs() == 3);
    CHECK(sys.cost_bound() == 5.0);
    CHECK(sys.state_label(0) == "s0");
    CHECK(sys.next_state(0, 1) == 1);  // go
    CHECK(sys.cost(0, 0) == 1.0);
    CHECK(sys.cost(1, 0) == 0.0);
    CHECK(sys.state_index("s1") == 1);
    CHECK(sys.state_index("nope") == -1);
}

TEST_CASE("single self-loop row builds the identity system") {
    auto sys = build_from_table({{"s", "a", "s", 0.0}});
    CHECK(sys.num_states() == 1);
    CHECK(sys.num_pairs() == 1);
    CHECK(sys.cost_bound() == 0.0);
    CHECK(sys.next_state(0, 0) == 0);
}

TEST_CASE("table construction rejections") {
    try {
        build_from_table({});
        FAIL("expected EmptyInput");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyInput);
    }

    std::vector<TableRow> dup = {{"s", "a", "s", 1.0}, {"s", "a", "s", 2.0}};
    CHECK_THROWS_AS(build_from_table(dup), Error);
    try {
        build_from_table(dup);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DuplicatePair);
    }

    std::vector<TableRow> dangling = {{"s", "a", "t", 1.0}};
    try {
        build_from_table(dangling);
        FAIL("expected DanglingTarget");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DanglingTarget);
    }
}

TEST_CASE("grid admissibility is decided before projection") {
    NamedDynamics dyn = builtin_dynamics("integrator");
    auto sys = build_grid_system(box1d(5), dyn.f, dyn.g);
    CHECK(sys.num_states() == 5);
    // At y = 1 only u in {-0.5, 0} stays inside the box.
    int right = sys.state_index("(1)");
    REQUIRE(right >= 0);
    CHECK(sys.num_actions(right) == 2);
    CHECK(sys.action_label(right, 0) == "(-0.5)");
    CHECK(sys.action_label(right, 1) == "(0)");
    // Interior points admit all three controls.
    CHECK(sys.num_actions(sys.state_index("(0)")) == 3);
    // Costs are tabulated pointwise: g(1, -0.5) = 1.25.
    CHECK(sys.cost(right, 0) == 1.25);
    CHECK(sys.cost_bound() == 1.25);
}

TEST_CASE("identity dynamics admit every action everywhere") {
    auto identity = [](std::span<const double> y, std::span<const double>) {
        return std::vector<double>(y.begin(), y.end());
    };
    auto zero = [](std::span<const double>, std::span<const double>) { return 0.0; };
    auto sys = build_grid_system(box1d(5), identity, zero);
    for (int s = 0; s < sys.num_states(); ++s) {
        CHECK(sys.num_actions(s) == 3);
        for (int a = 0; a < sys.num_actions(s); ++a)
            CHECK(sys.next_state(s, a) == s);  // grid points project to themselves
    }
}

TEST_CASE("dynamics that always leave the box report every state") {
    auto zero = [](std::span<const double>, std::span<const double>) { return 0.0; };
    auto shift_by = [](double c) {
        return [c](std::span<const double> y, std::span<const double>) {
            std::vector<double> out(y.begin(), y.end());
            for (double& v : out) v += c;
            return out;
        };
    };
    // +3 exits from everywhere; all five states are reported.
    try {
        build_grid_system(box1d(5), shift_by(3.0), zero);
        FAIL("expected NoAdmissibleAction");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoAdmissibleAction);
        std::string msg = e.what();
        for (const char* label : {"(-1)", "(-0.5)", "(0)", "(0.5)", "(1)"})
            CHECK(msg.find(label) != std::string::npos);
    }
    // +2 exits from everywhere except y = -1, whose image lands exactly on
    // the closed-box boundary and stays admissible.
    try {
        build_grid_system(box1d(5), shift_by(2.0), zero);
        FAIL("expected NoAdmissibleAction");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoAdmissibleAction);
        std::string msg = e.what();
        CHECK(msg.find("(-1)") == std::string::npos);
        CHECK(msg.find("(0.5)") != std::string::npos);
    }
}

TEST_CASE("midpoint images project to the lexicographically smaller point") {
    GridSpec spec = box1d(5);
    spec.actions = {{0.25}, {0.0}};  // from y=0, image 0.25 sits between 0 and 0.5
    auto dyn = builtin_dynamics("integrator");
    auto sys = build_grid_system(spec, dyn.f, dyn.g);
    int origin = sys.state_index("(0)");
    REQUIRE(origin >= 0);
    CHECK(sys.action_label(origin, 0) == "(0.25)");
    CHECK(sys.next_state(origin, 0) == origin);  // tie resolves downward
}

TEST_CASE("validate accepts catalog systems") {
    for (const auto& name : builtin_model_names()) {
        auto sys = make_builtin(name);
        auto report = validate(sys);
        CHECK(report.ok());
    }
}

TEST_CASE("validate reports dangling targets and A2 violations") {
    // Assembled directly so the invariants can actually be broken.
    auto bad = FiniteControlSystem::from_parts({"a", "b"}, {0, 1, 1}, {"u"}, {7}, {1.0});
    auto report = validate(bad);
    REQUIRE(report.violations.size() == 2);
    CHECK(report.violations[0].kind == ErrorKind::DanglingTarget);
    CHECK(report.violations[0].subject == "(a, u)");
    CHECK(report.violations[1].kind == ErrorKind::NoAdmissibleAction);
    CHECK(report.violations[1].subject == "b");
}

TEST_CASE("transitions stay inside the state set forever") {
    for (const auto& name : builtin_model_names()) {
        auto sys = make_builtin(name);
        for (int s = 0; s < sys.num_states(); ++s) {
            int cursor = s;
            for (int t = 0; t < 4 * sys.num_states(); ++t) {
                cursor = sys.next_state(cursor, 0);
                CHECK(cursor >= 0);
                CHECK(cursor < sys.num_states());
            }
        }
    }
}

TEST_CASE("grid construction then validate is always clean") {
    for (const char* dyn_name : {"integrator", "damped"}) {
        NamedDynamics dyn = builtin_dynamics(dyn_name);
        auto sys = build_grid_system(box1d(7), dyn.f, dyn.g);
        CHECK(validate(sys).ok());
        CHECK(sys.has_coordinates());
    }
}

TEST_CASE("2-d grids enumerate row-major with per-axis projection") {
    GridSpec spec;
    spec.lower = {0.0, 0.0};
    spec.upper = {1.0, 1.0};
    spec.points_per_dim = {2, 3};
    spec.actions = {{0.0, 0.0}};
    auto identity = [](std::span<const double> y, std::span<const double>) {
        return std::vector<double>(y.begin(), y.end());
    };
    auto zero = [](std::span<const double>, std::span<const double>) { return 0.0; };
    auto sys = build_grid_system(spec, identity, zero);
    REQUIRE(sys.num_states() == 6);
    CHECK(sys.state_label(0) == "(0,0)");
    CHECK(sys.state_label(1) == "(0,0.5)");  // last dimension fastest
    CHECK(sys.state_label(3) == "(1,0)");
    CHECK(validate(sys).ok());
}
