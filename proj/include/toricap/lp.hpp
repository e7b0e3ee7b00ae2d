/**
 * @file lp.hpp
 * @brief Dense two-phase simplex solver for tiny linear programs.
 *
 * Every program this library generates has a handful of rows and columns
 * (membership tests, geodesic evaluations), so a full-tableau method with
 * Bland's rule is both sufficient and exactly reproducible across runs.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace toricap::lp {

enum class Status { optimal, infeasible, unbounded };

struct Options {
    double opt_tol = 1e-10;    ///< reduced-cost threshold for optimality
    double feas_tol = 1e-10;   ///< phase-1 objective threshold for feasibility
    double pivot_tol = 1e-11;  ///< smallest pivot magnitude accepted
    int max_iterations = 10000;
};

struct Result {
    Status status = Status::infeasible;
    double objective = 0.0;
    std::vector<double> x;       ///< structural variable values (optimal only)
    double infeasibility = 0.0;  ///< phase-1 optimum when infeasible
};

/**
 * @brief Maximizes c.x subject to A x <= b, x >= 0.
 *
 * Phase 1 introduces artificial variables for rows with negative right-hand
 * sides and drives their sum to zero; phase 2 optimizes the real objective.
 * Entering and leaving variables follow Bland's rule (lowest index), which
 * keeps the pivot sequence finite and deterministic.
 */
class SimplexSolver {
public:
    explicit SimplexSolver(Options opts = {}) : opts_(opts) {}

    Result maximize(const std::vector<std::vector<double>>& a,
                    const std::vector<double>& b,
                    const std::vector<double>& c) {
        const std::size_t m = a.size();
        const std::size_t n = c.size();
        for (const auto& row : a) {
            if (row.size() != n) throw std::invalid_argument("lp: ragged constraint matrix");
        }
        if (b.size() != m) throw std::invalid_argument("lp: rhs size mismatch");

        // Column layout: [structural | slack | artificial]; rhs kept at the back.
        art_begin_ = n + m;
        std::size_t n_art = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (b[i] < 0.0) ++n_art;
        }
        const std::size_t cols = n + m + n_art;

        rows_.assign(m, std::vector<double>(cols + 1, 0.0));
        basis_.assign(m, 0);
        allowed_.assign(cols, true);
        std::size_t art = art_begin_;
        for (std::size_t i = 0; i < m; ++i) {
            const double sign = b[i] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n; ++j) rows_[i][j] = sign * a[i][j];
            rows_[i][n + i] = sign;
            rows_[i][cols] = sign * b[i];
            if (b[i] < 0.0) {
                rows_[i][art] = 1.0;
                basis_[i] = art++;
            } else {
                basis_[i] = n + i;
            }
        }

        Result res;
        if (n_art > 0) {
            std::vector<double> phase1(cols, 0.0);
            for (std::size_t j = art_begin_; j < cols; ++j) phase1[j] = -1.0;
            if (run(phase1) != Status::optimal) {
                throw std::runtime_error("lp: phase 1 terminated abnormally");
            }
            const double infeas = std::max(0.0, -value_);
            if (infeas > opts_.feas_tol) {
                res.status = Status::infeasible;
                res.infeasibility = infeas;
                return res;
            }
            for (std::size_t j = art_begin_; j < cols; ++j) allowed_[j] = false;
            expel_basic_artificials();
        }

        std::vector<double> full(cols, 0.0);
        std::copy(c.begin(), c.end(), full.begin());
        const Status s2 = run(full);
        if (s2 == Status::unbounded) {
            res.status = s2;
            return res;
        }
        res.status = Status::optimal;
        res.objective = value_;
        res.x.assign(n, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            if (basis_[i] < n) res.x[basis_[i]] = rows_[i].back();
        }
        return res;
    }

private:
    // Runs the simplex loop for one objective; reduced costs are rebuilt from
    // the basis each iteration, which costs nothing at these sizes and avoids
    // incremental drift.
    Status run(const std::vector<double>& obj) {
        const std::size_t cols = allowed_.size();
        std::vector<double> red(cols);
        for (int iter = 0; iter < opts_.max_iterations; ++iter) {
            value_ = 0.0;
            for (std::size_t j = 0; j < cols; ++j) red[j] = -obj[j];
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const double cb = obj[basis_[i]];
                if (cb == 0.0) continue;
                for (std::size_t j = 0; j < cols; ++j) red[j] += cb * rows_[i][j];
                value_ += cb * rows_[i].back();
            }

            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j) {
                if (allowed_[j] && red[j] < -opts_.opt_tol) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols) return Status::optimal;

            std::size_t leave = rows_.size();
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const double coef = rows_[i][enter];
                if (coef <= opts_.pivot_tol) continue;
                const double ratio = rows_[i].back() / coef;
                const double tie = 1e-12 * std::max(1.0, std::abs(best));
                if (leave == rows_.size() || ratio < best - tie) {
                    best = ratio;
                    leave = i;
                } else if (ratio <= best + tie && basis_[i] < basis_[leave]) {
                    leave = i;
                }
            }
            if (leave == rows_.size()) return Status::unbounded;
            pivot(leave, enter);
        }
        throw std::runtime_error("lp: iteration limit exceeded");
    }

    void pivot(std::size_t r, std::size_t jcol) {
        auto& prow = rows_[r];
        const double piv = prow[jcol];
        for (double& v : prow) v /= piv;
        prow[jcol] = 1.0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r) continue;
            auto& row = rows_[i];
            const double f = row[jcol];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * prow[j];
            row[jcol] = 0.0;
        }
        basis_[r] = jcol;
    }

    // Pivots basic artificials out at zero level where possible. A row whose
    // non-artificial coefficients all vanish is linearly dependent; it stays
    // inert because every admissible pivot column has a ~zero entry there.
    void expel_basic_artificials() {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (basis_[i] < art_begin_) continue;
            for (std::size_t j = 0; j < art_begin_; ++j) {
                if (allowed_[j] && std::abs(rows_[i][j]) > opts_.pivot_tol) {
                    pivot(i, j);
                    break;
                }
            }
            if (basis_[i] >= art_begin_) rows_[i].back() = 0.0;
        }
    }

    Options opts_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::size_t> basis_;
    std::vector<bool> allowed_;
    std::size_t art_begin_ = 0;
    double value_ = 0.0;
};

/// One-shot convenience wrapper around SimplexSolver.
inline Result maximize(const std::vector<std::vector<double>>& a,
                       const std::vector<double>& b,
                       const std::vector<double>& c,
                       const Options& opts = {}) {
    return SimplexSolver(opts).maximize(a, b, c);
}

}  // namespace toricap::lp
