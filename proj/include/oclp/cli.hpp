#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oclp/model.hpp"

namespace oclp::cli {

/// A fully parsed run request. Exactly one model source is active: a builtin
/// catalog name, a table CSV path, or a grid declaration over a named builtin
/// dynamics.
struct RunConfig {
    std::string subcommand;

    std::string model;  // builtin name, file path, or "grid"
    std::string dynamics = "integrator";
    std::vector<double> grid_lower;
    std::vector<double> grid_upper;
    std::vector<int> grid_points;
    std::vector<std::vector<double>> grid_actions;

    double alpha = 0.9;
    double tol = 1e-8;
    std::string y0;
    std::vector<double> parameter_grid;
    std::string sweep_kind = "alpha";  // set-convergence
    int samples = 64;
    int basis_size = 8;
    unsigned seed = 1;
    double eps = 0.1;
    std::string sequence;  // builtin name or file path

    std::string out_path;  // empty: stdout only
};

FiniteControlSystem resolve_model(const RunConfig& config);

/// Entry point shared by the binary and the tests. args excludes the program
/// name. Exit codes: 0 success, 1 failed verification, 2 bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oclp::cli
