#include "cqc/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace cqc {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kZeroTol = 1e-10;

// Dense tableau: rows = constraints, last row = objective (maximization, the
// reduced costs are stored negated the usual textbook way: we maximize, so we
// pivot while some reduced cost is > tol).
struct Tableau {
    Eigen::MatrixXd t;           // (m+1) x (ncols+1); last column is RHS
    std::vector<int> basis;      // basic column per row

    int rows() const { return static_cast<int>(t.rows()) - 1; }
    int cols() const { return static_cast<int>(t.cols()) - 1; }

    void pivot(int row, int col) {
        t.row(row) /= t(row, col);
        for (int r = 0; r < static_cast<int>(t.rows()); ++r) {
            if (r == row) continue;
            const double factor = t(r, col);
            if (factor != 0.0) t.row(r) -= factor * t.row(row);
        }
        basis[row] = col;
    }

    // Bland's rule; returns false when no entering column exists (optimal).
    bool step(int restrict_cols) {
        int enter = -1;
        for (int c = 0; c < restrict_cols; ++c) {
            if (t(rows(), c) > kPivotTol) {
                enter = c;
                break;
            }
        }
        if (enter < 0) return false;
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int r = 0; r < rows(); ++r) {
            if (t(r, enter) > kPivotTol) {
                const double ratio = t(r, cols()) / t(r, enter);
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && (leave < 0 || basis[r] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = r;
                }
            }
        }
        if (leave < 0) throw ResourceError("simplex: unbounded direction");
        pivot(leave, enter);
        return true;
    }
};

}  // namespace

LpResult solve_lp_max(const Eigen::VectorXd& c,
                      const Eigen::MatrixXd& a_ub, const Eigen::VectorXd& b_ub,
                      const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq,
                      const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
    const int n = static_cast<int>(c.size());
    if (lower.size() != n || upper.size() != n)
        throw ValidationError("solve_lp_max: bound size mismatch");
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || lower[i] > upper[i])
            throw ValidationError("solve_lp_max: bounds must be finite with lower <= upper");
    }

    // Shift to y = x - lower >= 0 and collect all rows as <=, >=, or =.
    struct Row {
        Eigen::VectorXd a;
        double b;
        int type;  // 0: <=, 1: >=, 2: =
    };
    std::vector<Row> rowset;
    for (int r = 0; r < a_ub.rows(); ++r)
        rowset.push_back({a_ub.row(r).transpose(), b_ub[r] - a_ub.row(r).dot(lower), 0});
    for (int r = 0; r < a_eq.rows(); ++r)
        rowset.push_back({a_eq.row(r).transpose(), b_eq[r] - a_eq.row(r).dot(lower), 2});
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e[i] = 1.0;
        rowset.push_back({e, upper[i] - lower[i], 0});
    }
    for (auto& row : rowset) {
        if (row.b < 0.0) {
            row.a = -row.a;
            row.b = -row.b;
            if (row.type == 0)
                row.type = 1;
            else if (row.type == 1)
                row.type = 0;
        }
    }

    const int m = static_cast<int>(rowset.size());
    int n_slack = 0, n_art = 0;
    for (const auto& row : rowset) {
        if (row.type != 2) ++n_slack;
        if (row.type != 0) ++n_art;
    }
    const int total = n + n_slack + n_art;

    Tableau tab;
    tab.t = Eigen::MatrixXd::Zero(m + 1, total + 1);
    tab.basis.assign(m, -1);
    int slack_at = n, art_at = n + n_slack;
    std::vector<int> art_cols;
    for (int r = 0; r < m; ++r) {
        tab.t.block(r, 0, 1, n) = rowset[r].a.transpose();
        tab.t(r, total) = rowset[r].b;
        if (rowset[r].type == 0) {
            tab.t(r, slack_at) = 1.0;
            tab.basis[r] = slack_at++;
        } else if (rowset[r].type == 1) {
            tab.t(r, slack_at++) = -1.0;
        }
        if (rowset[r].type != 0) {
            tab.t(r, art_at) = 1.0;
            tab.basis[r] = art_at;
            art_cols.push_back(art_at);
            ++art_at;
        }
    }

    LpResult out;

    // Phase 1: maximize -(sum of artificials).
    if (n_art > 0) {
        for (int col : art_cols) tab.t(m, col) = -1.0;
        for (int r = 0; r < m; ++r)
            if (tab.t(m, tab.basis[r]) != 0.0) tab.t.row(m) += tab.t.row(r);
        long iterations = 0;
        while (tab.step(total)) {
            if (++iterations > 200000) throw ConvergenceError("simplex: phase 1 stalled", 0.0, 0.0);
        }
        // RHS of the objective row carries the negated phase-1 value, i.e. the
        // residual infeasibility sum(artificials) >= 0.
        if (tab.t(m, total) > 1e-7) {
            out.status = LpResult::Status::Infeasible;
            return out;
        }
        // Drive remaining artificials out of the basis where possible.
        for (int r = 0; r < m; ++r) {
            if (tab.basis[r] >= n + n_slack && tab.t(r, total) < kZeroTol) {
                for (int cidx = 0; cidx < n + n_slack; ++cidx) {
                    if (std::abs(tab.t(r, cidx)) > kPivotTol) {
                        tab.pivot(r, cidx);
                        break;
                    }
                }
            }
        }
        for (int col : art_cols) tab.t.col(col).setZero();
    }

    // Phase 2 objective.
    tab.t.row(m).setZero();
    tab.t.block(m, 0, 1, n) = c.transpose();
    for (int r = 0; r < m; ++r) {
        const double coeff = tab.t(m, tab.basis[r]);
        if (coeff != 0.0) tab.t.row(m) -= coeff * tab.t.row(r);
    }
    long iterations = 0;
    try {
        while (tab.step(n + n_slack)) {
            if (++iterations > 200000) throw ConvergenceError("simplex: phase 2 stalled", 0.0, 0.0);
        }
    } catch (const ResourceError&) {
        out.status = LpResult::Status::Unbounded;
        return out;
    }

    Eigen::VectorXd y = Eigen::VectorXd::Zero(total);
    for (int r = 0; r < m; ++r)
        if (tab.basis[r] >= 0) y[tab.basis[r]] = tab.t(r, total);
    out.x = y.head(n) + lower;
    out.objective = c.dot(out.x);
    out.status = LpResult::Status::Optimal;
    return out;
}

}  // namespace cqc
