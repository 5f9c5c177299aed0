#include "oclp/lpcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oclp/error.hpp"
#include "oclp/numfmt.hpp"

namespace oclp {

const char* to_string(LPStatus status) {
    switch (status) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Infeasible: return "infeasible";
        case LPStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

constexpr double kEpsPivot = 1e-9;    // pivot element magnitude
constexpr double kEpsReduced = 1e-9;  // entering-candidate threshold

struct PivotLimit {};  // internal: pivot budget exhausted

// Full-tableau simplex working state. Columns: 0..n-1 original variables,
// n..n+m-1 artificials; one extra rhs column. Cost rows hold reduced costs
// with -objective in the rhs cell, so a pivot updates them like any row.
class Tableau {
  public:
    Tableau(const StandardFormLP& lp, const SolveOptions& options)
        : m_(lp.rows), n_(lp.cols), width_(lp.cols + lp.rows + 1), options_(options) {
        rows_.assign(m_, std::vector<double>(width_, 0.0));
        row_sign_.assign(m_, 1.0);
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            double sign = lp.b[i] < 0.0 ? -1.0 : 1.0;
            row_sign_[i] = sign;
            for (int j = 0; j < n_; ++j) rows_[i][j] = sign * lp.at(i, j);
            rows_[i][n_ + i] = 1.0;
            rows_[i][width_ - 1] = sign * lp.b[i];
            basis_[i] = n_ + i;
        }
        phase2_cost_.assign(width_, 0.0);
        for (int j = 0; j < n_; ++j) phase2_cost_[j] = lp.c[j];
        // Phase-1 reduced costs under the artificial basis: -(column sums),
        // zero on the artificials themselves; rhs cell = -(sum of b).
        phase1_cost_.assign(width_, 0.0);
        for (int j = 0; j < width_; ++j) {
            if (j >= n_ && j < n_ + m_) continue;
            double sum = 0.0;
            for (int i = 0; i < m_; ++i) sum += rows_[i][j];
            phase1_cost_[j] = -sum;
        }
    }

    // Phase 1: minimize the artificial sum. Returns the residual infeasibility.
    double run_phase1(LPSolution& log) {
        simplex_loop(phase1_cost_, /*allow_artificials=*/true, log, nullptr);
        return -phase1_cost_[width_ - 1];
    }

    // Pivot basic artificials onto original columns; rows that cannot be
    // repaired are redundant and get dropped.
    void drive_out_artificials(LPSolution& log) {
        std::vector<int> redundant;
        for (int r = 0; r < m_; ++r) {
            if (basis_[r] < n_) continue;
            int col = -1;
            for (int j = 0; j < n_; ++j) {
                if (std::abs(rows_[r][j]) > kEpsPivot) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) {
                log.pivots.emplace_back(col, basis_[r]);
                pivot(r, col);
            } else {
                redundant.push_back(r);
            }
        }
        for (auto it = redundant.rbegin(); it != redundant.rend(); ++it) {
            int r = *it;
            dropped_rows_.push_back(artificial_of_row(r));
            rows_.erase(rows_.begin() + r);
            basis_.erase(basis_.begin() + r);
            --m_;
        }
    }

    bool run_phase2(LPSolution& log) {
        return simplex_loop(phase2_cost_, /*allow_artificials=*/false, log,
                            &log.phase2_objectives);
    }

    void extract(const StandardFormLP& lp, LPSolution& sol) const {
        sol.x.assign(n_, 0.0);
        for (int r = 0; r < m_; ++r)
            if (basis_[r] < n_) sol.x[basis_[r]] = rows_[r][width_ - 1];
        // The artificial column block of the tableau is B^{-1}, so the
        // phase-2 reduced cost of artificial i is -y_i (sign-normalized).
        sol.y.assign(lp.rows, 0.0);
        for (int i = 0; i < lp.rows; ++i) {
            if (std::find(dropped_rows_.begin(), dropped_rows_.end(), i) != dropped_rows_.end())
                continue;  // redundant row, multiplier 0
            sol.y[i] = -phase2_cost_[n_ + i] * row_sign_[i];
        }
    }

  private:
    int artificial_of_row(int r) const {
        // After deletions row indices shift; artificials keep their column,
        // which identifies the original row.
        return basis_[r] - n_;
    }

    void pivot(int r, int s) {
        auto& prow = rows_[r];
        const double inv = 1.0 / prow[s];
        for (double& v : prow) v *= inv;
        prow[s] = 1.0;
        auto eliminate = [&](std::vector<double>& row) {
            double factor = row[s];
            if (factor == 0.0) return;
            for (int j = 0; j < width_; ++j) row[j] -= factor * prow[j];
            row[s] = 0.0;
        };
        for (int i = 0; i < m_; ++i)
            if (i != r) eliminate(rows_[i]);
        eliminate(phase1_cost_);
        eliminate(phase2_cost_);
        basis_[r] = s;
    }

    // Bland's rule: entering = smallest-index negative reduced cost; leaving
    // = min ratio, ties by smallest basic variable index. Returns false on
    // an unbounded direction.
    bool simplex_loop(std::vector<double>& cost, bool allow_artificials, LPSolution& log,
                      std::vector<double>* objectives) {
        while (true) {
            if (static_cast<int>(log.pivots.size()) > options_.max_pivots) throw PivotLimit{};
            int entering = -1;
            const int limit = allow_artificials ? n_ + m_ : n_;
            for (int j = 0; j < limit; ++j) {
                if (cost[j] < -kEpsReduced) {
                    entering = j;
                    break;
                }
            }
            if (entering < 0) return true;

            int leaving_row = -1;
            double best_ratio = 0.0;
            for (int r = 0; r < m_; ++r) {
                double d = rows_[r][entering];
                if (d <= kEpsPivot) continue;
                double ratio = rows_[r][width_ - 1] / d;
                if (leaving_row < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[r] < basis_[leaving_row])) {
                    leaving_row = r;
                    best_ratio = ratio;
                }
            }
            if (leaving_row < 0) return false;

            log.pivots.emplace_back(entering, basis_[leaving_row]);
            pivot(leaving_row, entering);
            if (objectives) objectives->push_back(-phase2_cost_[width_ - 1]);
        }
    }

    int m_;
    int n_;
    int width_;
    SolveOptions options_;
    std::vector<std::vector<double>> rows_;
    std::vector<double> phase1_cost_;
    std::vector<double> phase2_cost_;
    std::vector<double> row_sign_;
    std::vector<int> basis_;
    std::vector<int> dropped_rows_;
};

void fill_residuals(const StandardFormLP& lp, LPSolution& sol) {
    double primal = 0.0;
    for (int i = 0; i < lp.rows; ++i) {
        double acc = -lp.b[i];
        for (int j = 0; j < lp.cols; ++j) acc += lp.at(i, j) * sol.x[j];
        primal = std::max(primal, std::abs(acc));
    }
    double dual = 0.0, slack = 0.0, cx = 0.0, by = 0.0;
    for (int j = 0; j < lp.cols; ++j) {
        double ya = 0.0;
        for (int i = 0; i < lp.rows; ++i) ya += sol.y[i] * lp.at(i, j);
        dual = std::max(dual, ya - lp.c[j]);
        slack = std::max(slack, std::abs(sol.x[j] * (lp.c[j] - ya)));
        cx += lp.c[j] * sol.x[j];
    }
    for (int i = 0; i < lp.rows; ++i) by += lp.b[i] * sol.y[i];
    sol.primal_residual = primal;
    sol.dual_residual = dual;
    sol.comp_slack_residual = slack;
    sol.duality_gap = std::abs(cx - by);
    sol.objective = cx;
}

LPSolution solve_once(const StandardFormLP& lp, const SolveOptions& options) {
    LPSolution sol;
    Tableau tab(lp, options);

    double b_scale = 1.0;
    for (double v : lp.b) b_scale = std::max(b_scale, std::abs(v));
    double infeas = tab.run_phase1(sol);
    if (infeas > kLPFeasTol * b_scale * 10.0) {
        sol.status = LPStatus::Infeasible;
        sol.objective = std::numeric_limits<double>::quiet_NaN();
        return sol;
    }
    tab.drive_out_artificials(sol);
    if (!tab.run_phase2(sol)) {
        sol.status = LPStatus::Unbounded;
        sol.objective = -std::numeric_limits<double>::infinity();
        return sol;
    }
    sol.status = LPStatus::Optimal;
    tab.extract(lp, sol);
    fill_residuals(lp, sol);
    return sol;
}

void check_dimensions(const StandardFormLP& lp) {
    if (lp.rows < 1 || lp.cols < 1 || lp.c.size() != static_cast<size_t>(lp.cols) ||
        lp.b.size() != static_cast<size_t>(lp.rows) ||
        lp.A.size() != static_cast<size_t>(lp.rows) * lp.cols)
        throw Error(ErrorKind::BadConfig, "inconsistent LP dimensions");
    for (double v : lp.c)
        if (!std::isfinite(v)) throw Error(ErrorKind::BadConfig, "non-finite objective entry");
    for (double v : lp.b)
        if (!std::isfinite(v)) throw Error(ErrorKind::BadConfig, "non-finite rhs entry");
    for (double v : lp.A)
        if (!std::isfinite(v)) throw Error(ErrorKind::BadConfig, "non-finite matrix entry");
}

}  // namespace

LPSolution solve(const StandardFormLP& lp, const SolveOptions& options) {
    check_dimensions(lp);
    try {
        return solve_once(lp, options);
    } catch (const PivotLimit&) {
        // One deterministic retry with the rhs nudged off the degenerate
        // vertex, then residuals re-checked against the original data.
        StandardFormLP nudged = lp;
        for (int i = 0; i < lp.rows; ++i)
            nudged.b[i] += 1e-11 * (i + 1) * (1.0 + std::abs(lp.b[i]));
        LPSolution sol;
        try {
            sol = solve_once(nudged, options);
        } catch (const PivotLimit&) {
            throw Error(ErrorKind::NumericalFailure, "pivot breakdown after perturbation retry");
        }
        if (sol.status != LPStatus::Optimal) return sol;
        fill_residuals(lp, sol);
        double b_scale = 1.0;
        for (double v : lp.b) b_scale = std::max(b_scale, std::abs(v));
        if (sol.primal_residual > kLPFeasTol * b_scale * 100.0)
            throw Error(ErrorKind::NumericalFailure, "pivot breakdown after perturbation retry");
        return sol;
    }
}

VerificationReport check_certificates(const StandardFormLP& lp, const LPSolution& sol) {
    if (sol.status != LPStatus::Optimal)
        throw Error(ErrorKind::BadConfig, "certificates require an optimal solution");
    LPSolution fresh = sol;
    fill_residuals(lp, fresh);

    double b_scale = 1.0;
    for (double v : lp.b) b_scale = std::max(b_scale, std::abs(v));
    double c_scale = 1.0;
    for (double v : lp.c) c_scale = std::max(c_scale, std::abs(v));
    double x_min = 0.0;
    for (double v : fresh.x) x_min = std::min(x_min, v);

    VerificationReport report;
    report.checks.push_back({"primal_feasibility", fresh.primal_residual,
                             kLPFeasTol * (1.0 + b_scale),
                             fresh.primal_residual <= kLPFeasTol * (1.0 + b_scale)});
    report.checks.push_back(
        {"variable_nonnegativity", x_min, -kLPFeasTol, x_min >= -kLPFeasTol});
    report.checks.push_back({"dual_feasibility", fresh.dual_residual,
                             kLPFeasTol * (1.0 + c_scale),
                             fresh.dual_residual <= kLPFeasTol * (1.0 + c_scale)});
    double gap_bound = kLPGapTol * (1.0 + std::abs(fresh.objective));
    report.checks.push_back(
        {"duality_gap", fresh.duality_gap, gap_bound, fresh.duality_gap <= gap_bound});
    double slack_bound = kLPGapTol * (1.0 + std::abs(fresh.objective));
    report.checks.push_back({"complementary_slackness", fresh.comp_slack_residual, slack_bound,
                             fresh.comp_slack_residual <= slack_bound});
    return report;
}

std::string dump(const StandardFormLP& lp) {
    std::string out = "rows " + std::to_string(lp.rows) + " cols " + std::to_string(lp.cols) + "\n";
    auto append_vec = [&out](const std::vector<double>& v) {
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) out += " ";
            out += format_double(v[i]);
        }
        out += "\n";
    };
    append_vec(lp.b);
    append_vec(lp.c);
    for (int i = 0; i < lp.rows; ++i) {
        for (int j = 0; j < lp.cols; ++j) {
            if (j) out += " ";
            out += format_double(lp.at(i, j));
        }
        out += "\n";
    }
    return out;
}

}  // namespace oclp
