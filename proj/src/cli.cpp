#include "oclp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "oclp/catalog.hpp"
#include "oclp/io.hpp"
#include "oclp/lpform.hpp"
#include "oclp/numfmt.hpp"
#include "oclp/tauberian.hpp"

namespace oclp::cli {

namespace {

using nlohmann::ordered_json;

std::vector<double> parse_double_list(const std::string& text, const std::string& field) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto v = parse_double(item);
        if (!v) throw Error(ErrorKind::BadConfig, field + ": '" + item + "' is not a number");
        out.push_back(*v);
    }
    if (out.empty()) throw Error(ErrorKind::BadConfig, field + ": empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& field) {
    std::vector<int> out;
    for (double v : parse_double_list(text, field)) {
        if (v != std::floor(v))
            throw Error(ErrorKind::BadConfig, field + ": expected integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

// Actions separated by commas; a multi-dimensional control uses ':' between
// components, so 1-D grids keep the natural "-0.5,0,0.5" spelling.
std::vector<std::vector<double>> parse_action_list(const std::string& text,
                                                   const std::string& field) {
    std::vector<std::vector<double>> out;
    std::istringstream in(text);
    std::string group;
    while (std::getline(in, group, ',')) {
        std::vector<double> control;
        std::istringstream comps(group);
        std::string comp;
        while (std::getline(comps, comp, ':')) {
            auto v = parse_double(comp);
            if (!v) throw Error(ErrorKind::BadConfig, field + ": '" + comp + "' is not a number");
            control.push_back(*v);
        }
        if (control.empty()) throw Error(ErrorKind::BadConfig, field + ": empty action");
        out.push_back(std::move(control));
    }
    if (out.empty()) throw Error(ErrorKind::BadConfig, field + ": empty list");
    return out;
}

bool looks_like_path(const std::string& model) {
    return model.find('/') != std::string::npos || model.find('.') != std::string::npos;
}

BoundedSequence parse_sequence_file(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> preamble, cycle;
    bool saw_any = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string tag;
        fields >> tag;
        std::vector<double>* dest = nullptr;
        if (tag == "preamble") dest = &preamble;
        else if (tag == "cycle") dest = &cycle;
        else
            throw Error(ErrorKind::ParseError,
                        "line " + std::to_string(line_no) + ": expected 'preamble' or 'cycle'");
        std::string item;
        while (fields >> item) {
            auto v = parse_double(item);
            if (!v)
                throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": '" +
                                                       item + "' is not a number");
            dest->push_back(*v);
        }
        saw_any = true;
    }
    if (!saw_any) throw Error(ErrorKind::EmptyInput, "no sequence lines");
    if (cycle.empty()) return BoundedSequence::finite(std::move(preamble));
    return BoundedSequence::eventually_periodic(std::move(preamble), std::move(cycle));
}

BoundedSequence resolve_sequence(const RunConfig& config) {
    const auto& names = builtin_sequence_names();
    if (std::find(names.begin(), names.end(), config.sequence) != names.end())
        return builtin_sequence(config.sequence);
    if (config.sequence.empty()) throw Error(ErrorKind::BadConfig, "seq: missing sequence");
    return parse_sequence_file(read_text_file(config.sequence));
}

ordered_json gamma_json(const FiniteControlSystem& system, const OccupationalMeasure& gamma) {
    ordered_json arr = ordered_json::array();
    for (int p = 0; p < system.num_pairs(); ++p) {
        auto ref = system.pair(p);
        arr.push_back({{"pair_id", p},
                       {"state", system.state_label(ref.state)},
                       {"action", system.action_label(ref.state, ref.action)},
                       {"weight", gamma.weights[p]}});
    }
    return arr;
}

void emit(const std::string& text, const RunConfig& config, std::ostream& out) {
    out << text;
    if (!config.out_path.empty()) write_text_file(config.out_path, text);
}

int emit_json(ordered_json doc, bool pass, const RunConfig& config, std::ostream& out) {
    doc["pass"] = pass;
    emit(doc.dump(2) + "\n", config, out);
    return pass ? 0 : 1;
}

int run_solve_discounted(const RunConfig& config, std::ostream& out) {
    FiniteControlSystem system = resolve_model(config);
    int y0 = system.state_index(config.y0);
    if (y0 < 0) throw Error(ErrorKind::BadConfig, "y0: unknown state '" + config.y0 + "'");

    VerificationReport report = verify_theorem_4_1(system, y0, config.alpha, config.tol);
    DiscountedSolution sol = solve_discounted(system, y0, config.alpha);
    auto vi = value_iteration(system, config.alpha);

    ordered_json doc;
    doc["subcommand"] = "solve-discounted";
    doc["model"] = config.model;
    doc["alpha"] = config.alpha;
    doc["y0"] = config.y0;
    doc["scaled_value_iteration"] = (1.0 - config.alpha) * vi.value(y0);
    doc["lp_primal"] = sol.value;
    doc["lp_dual"] = (1.0 - config.alpha) * sol.dual.psi(y0);
    doc["psi_y0"] = sol.dual.psi(y0);
    doc["gamma"] = gamma_json(system, sol.gamma);
    doc["checks"] = report_to_json(report);
    return emit_json(std::move(doc), report.all_pass(), config, out);
}

int run_solve_average(const RunConfig& config, std::ostream& out) {
    FiniteControlSystem system = resolve_model(config);
    AverageSolution sol = solve_average(system);

    VerificationReport report;
    double gap = std::abs(sol.dual.mu - sol.value);
    report.checks.push_back({"abs(mu - g_star)", gap, config.tol, gap <= config.tol});
    double min_slack = std::numeric_limits<double>::infinity();
    for (int p = 0; p < system.num_pairs(); ++p) {
        auto ref = system.pair(p);
        double slack = system.pair_cost(p) + sol.dual.psi(system.pair_next_state(p)) -
                       sol.dual.psi(ref.state) - sol.dual.mu;
        min_slack = std::min(min_slack, slack);
    }
    report.checks.push_back(
        {"min_average_dual_slack", min_slack, -config.tol, min_slack >= -config.tol});
    for (auto& rec : check_certificates(build_average_lp(system).lp, sol.lp).checks)
        report.checks.push_back(std::move(rec));

    ordered_json doc;
    doc["subcommand"] = "solve-average";
    doc["model"] = config.model;
    doc["g_star"] = sol.value;
    doc["mu"] = sol.dual.mu;
    doc["gamma"] = gamma_json(system, sol.gamma);
    doc["checks"] = report_to_json(report);
    return emit_json(std::move(doc), report.all_pass(), config, out);
}

int run_sweep(const RunConfig& config, std::ostream& out, bool horizon) {
    FiniteControlSystem system = resolve_model(config);
    SweepResult sweep;
    if (horizon) {
        std::vector<int> grid;
        for (double v : config.parameter_grid) {
            if (v != std::floor(v) || v < 1)
                throw Error(ErrorKind::BadConfig, "grid: horizons must be integers >= 1");
            grid.push_back(static_cast<int>(v));
        }
        sweep = horizon_sweep(system, grid);
    } else {
        sweep = alpha_sweep(system, config.parameter_grid);
    }
    emit(sweep_to_csv(sweep), config, out);
    return 0;
}

int run_set_convergence(const RunConfig& config, std::ostream& out) {
    FiniteControlSystem system = resolve_model(config);
    SampleSpec sample;
    sample.sampled_policies = config.samples;
    sample.seed = config.seed;
    TestFunctionBasis basis = default_basis(system, config.basis_size);
    SweepKind kind = config.sweep_kind == "horizon" ? SweepKind::Horizon : SweepKind::Alpha;
    SweepResult sweep =
        set_convergence_experiment(system, kind, config.parameter_grid, sample, basis);
    emit(sweep_to_csv(sweep), config, out);
    return 0;
}

int run_tauberian(const RunConfig& config, std::ostream& out) {
    BoundedSequence seq = resolve_sequence(config);
    if (!seq.is_infinite())
        throw Error(ErrorKind::BadConfig,
                    "seq: the tauberian harness needs an eventually periodic sequence");

    CesaroHorizon horizon = find_cesaro_horizon(seq, config.alpha, config.eps);
    const double M = seq.bound();

    // Lemma 5.2 applied to the found Cesaro window.
    std::vector<double> window(static_cast<size_t>(horizon.T));
    double total = 0.0;
    for (std::int64_t t = 0; t < horizon.T; ++t) {
        window[t] = seq.value(t);
        total += window[t];
    }
    const double window_sigma = total / static_cast<double>(horizon.T);
    GoodStart start = find_good_start(window, window_sigma, config.eps);

    VerificationReport report;
    double k2_margin = horizon.cesaro_value -
                       (horizon.sigma + config.eps + 2.0 * M / static_cast<double>(horizon.T));
    report.checks.push_back({"cesaro_inequality_margin", k2_margin, 0.0, k2_margin < 0.0});
    report.checks.push_back({"T_at_least_lower_bound", static_cast<double>(horizon.T),
                             static_cast<double>(horizon.lower_bound),
                             horizon.T >= horizon.lower_bound});
    double max_violation = -std::numeric_limits<double>::infinity();
    double suffix = 0.0;
    for (int S = 1; S <= start.l; ++S) {
        suffix += window[start.t_star + S - 1];
        max_violation = std::max(max_violation, suffix / S - (window_sigma + config.eps));
    }
    double i21_slack = 1e-12 * std::max(1.0, std::abs(window_sigma) + config.eps);
    report.checks.push_back({"good_start_I21_max_violation", max_violation, i21_slack,
                             max_violation <= i21_slack});

    ordered_json doc;
    doc["subcommand"] = "tauberian";
    doc["sequence"] = config.sequence;
    doc["alpha"] = config.alpha;
    doc["eps"] = config.eps;
    doc["sigma"] = horizon.sigma;
    doc["T"] = horizon.T;
    doc["T_lower_bound"] = horizon.lower_bound;
    doc["cesaro_value"] = horizon.cesaro_value;
    doc["window_sigma"] = window_sigma;
    doc["t_star"] = start.t_star;
    doc["l"] = start.l;
    doc["checks"] = report_to_json(report);
    return emit_json(std::move(doc), report.all_pass(), config, out);
}

int run_validate(const RunConfig& config, std::ostream& out) {
    ordered_json doc;
    doc["subcommand"] = "validate";
    doc["model"] = config.model;
    ordered_json violations = ordered_json::array();
    bool ok = true;
    try {
        FiniteControlSystem system = resolve_model(config);
        ValidationReport report = validate(system);
        for (const auto& v : report.violations) {
            violations.push_back({{"kind", to_string(v.kind)},
                                  {"subject", v.subject},
                                  {"message", v.message}});
        }
        ok = report.ok();
        doc["states"] = system.num_states();
        doc["pairs"] = system.num_pairs();
        doc["cost_bound"] = system.cost_bound();
    } catch (const Error& e) {
        // Construction rejections are validation findings here, not bad input.
        if (e.kind() == ErrorKind::DuplicatePair || e.kind() == ErrorKind::DanglingTarget ||
            e.kind() == ErrorKind::NoAdmissibleAction) {
            violations.push_back(
                {{"kind", to_string(e.kind())}, {"subject", ""}, {"message", e.what()}});
            ok = false;
        } else {
            throw;
        }
    }
    doc["violations"] = violations;
    return emit_json(std::move(doc), ok, config, out);
}

int run_export_model(const RunConfig& config, std::ostream& out) {
    FiniteControlSystem system = resolve_model(config);
    emit(table_to_csv(system), config, out);
    return 0;
}

int dispatch(const RunConfig& config, std::ostream& out) {
    if (config.subcommand == "solve-discounted") return run_solve_discounted(config, out);
    if (config.subcommand == "solve-average") return run_solve_average(config, out);
    if (config.subcommand == "sweep-alpha") return run_sweep(config, out, false);
    if (config.subcommand == "sweep-horizon") return run_sweep(config, out, true);
    if (config.subcommand == "set-convergence") return run_set_convergence(config, out);
    if (config.subcommand == "tauberian") return run_tauberian(config, out);
    if (config.subcommand == "validate") return run_validate(config, out);
    if (config.subcommand == "export-model") return run_export_model(config, out);
    throw Error(ErrorKind::BadConfig, "unknown subcommand '" + config.subcommand + "'");
}

void check_ranges(const RunConfig& config) {
    if (!(config.alpha > 0.0 && config.alpha < 1.0))
        throw Error(ErrorKind::BadConfig, "alpha: must lie in (0,1)");
    if (!(config.eps > 0.0)) throw Error(ErrorKind::BadConfig, "eps: must be positive");
    if (config.basis_size < 1) throw Error(ErrorKind::BadConfig, "basis: must be >= 1");
    if (config.samples < 1) throw Error(ErrorKind::BadConfig, "samples: must be >= 1");
    if (!(config.tol > 0.0)) throw Error(ErrorKind::BadConfig, "tol: must be positive");
}

}  // namespace

FiniteControlSystem resolve_model(const RunConfig& config) {
    const auto& names = builtin_model_names();
    if (std::find(names.begin(), names.end(), config.model) != names.end())
        return make_builtin(config.model);
    if (config.model == "grid") {
        GridSpec spec;
        spec.lower = config.grid_lower;
        spec.upper = config.grid_upper;
        spec.points_per_dim = config.grid_points;
        spec.actions = config.grid_actions;
        NamedDynamics dyn = builtin_dynamics(config.dynamics);
        return build_grid_system(spec, dyn.f, dyn.g);
    }
    if (config.model.empty()) throw Error(ErrorKind::BadConfig, "model: missing model source");
    if (!looks_like_path(config.model))
        throw Error(ErrorKind::BadConfig, "model: unknown builtin '" + config.model + "'");
    return load_table(config.model);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    std::string grid_text, lower_text, upper_text, points_text, actions_text;

    CLI::App app{"LP formulations of discounted and long-run-average optimal control on finite systems"};
    app.require_subcommand(1);

    auto add_model = [&](CLI::App* cmd) {
        cmd->add_option("--model", config.model,
                        "builtin name, table CSV path, or 'grid' with --grid-* flags")
            ->required();
        cmd->add_option("--dynamics", config.dynamics, "named dynamics for grid models");
        cmd->add_option("--grid-lower", lower_text, "comma list of lower bounds");
        cmd->add_option("--grid-upper", upper_text, "comma list of upper bounds");
        cmd->add_option("--grid-points", points_text, "comma list of points per dimension");
        cmd->add_option("--grid-actions", actions_text,
                        "comma list of controls; ':' separates vector components");
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", config.out_path, "also write the output to this file");
    };

    CLI::App* sd = app.add_subcommand("solve-discounted",
                                      "discounted LP vs value iteration with certificates");
    add_model(sd);
    add_out(sd);
    sd->add_option("--alpha", config.alpha, "discount factor in (0,1)")->required();
    sd->add_option("--y0", config.y0, "initial state label")->required();
    sd->add_option("--tol", config.tol, "agreement tolerance");

    CLI::App* sa = app.add_subcommand("solve-average", "long-run-average LP with dual (mu, psi)");
    add_model(sa);
    add_out(sa);
    sa->add_option("--tol", config.tol, "agreement tolerance");

    CLI::App* sw_a = app.add_subcommand("sweep-alpha", "min_y (1-alpha) V_alpha(y) along a grid");
    add_model(sw_a);
    add_out(sw_a);
    sw_a->add_option("--grid", grid_text, "comma list of alphas")->required();

    CLI::App* sw_h = app.add_subcommand("sweep-horizon", "G_S along a horizon grid");
    add_model(sw_h);
    add_out(sw_h);
    sw_h->add_option("--grid", grid_text, "comma list of horizons")->required();

    CLI::App* sc = app.add_subcommand("set-convergence",
                                      "Hausdorff deviation of occupational measures from W");
    add_model(sc);
    add_out(sc);
    sc->add_option("--grid", grid_text, "comma list of parameters")->required();
    sc->add_option("--kind", config.sweep_kind, "alpha | horizon")
        ->check(CLI::IsMember({"alpha", "horizon"}));
    sc->add_option("--samples", config.samples, "sampled policies when not exhaustive");
    sc->add_option("--basis", config.basis_size, "test-function count J");
    sc->add_option("--seed", config.seed, "sampling seed");

    CLI::App* tb = app.add_subcommand("tauberian", "Abel mean, Cesaro horizon, good start");
    add_out(tb);
    tb->add_option("--seq", config.sequence, "builtin sequence name or sequence file")->required();
    tb->add_option("--alpha", config.alpha, "discount factor in (0,1)")->required();
    tb->add_option("--eps", config.eps, "epsilon for both lemmas")->required();

    CLI::App* va = app.add_subcommand("validate", "model invariant report");
    add_model(va);
    add_out(va);

    CLI::App* ex = app.add_subcommand("export-model", "write the model table CSV");
    add_model(ex);
    add_out(ex);

    std::vector<std::string> argv_store;
    argv_store.push_back("oclp");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        config.subcommand = app.get_subcommands().front()->get_name();
        if (!grid_text.empty()) config.parameter_grid = parse_double_list(grid_text, "grid");
        if (!lower_text.empty()) config.grid_lower = parse_double_list(lower_text, "grid-lower");
        if (!upper_text.empty()) config.grid_upper = parse_double_list(upper_text, "grid-upper");
        if (!points_text.empty()) config.grid_points = parse_int_list(points_text, "grid-points");
        if (!actions_text.empty())
            config.grid_actions = parse_action_list(actions_text, "grid-actions");
        check_ranges(config);
        return dispatch(config, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::BadConfig:
            case ErrorKind::ParseError:
            case ErrorKind::EmptyInput:
            case ErrorKind::DuplicatePair:
            case ErrorKind::DanglingTarget:
            case ErrorKind::NoAdmissibleAction:
            case ErrorKind::InadmissibleControl:
                return 2;
            default:
                return 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace oclp::cli
