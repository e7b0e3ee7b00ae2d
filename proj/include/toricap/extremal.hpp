/**
 * @file extremal.hpp
 * @brief Weighted relative extremal functions of toric compacts and the
 *        plurisubharmonic geodesics between them, evaluated through Legendre
 *        duality.
 *
 * For u = c * omega_K with Q the log-image of K, the Legendre image of the
 * convex descent of u is max{h_Q + c, 0}. The geodesic between two such
 * endpoints therefore evaluates, at a strictly negative point s, as
 *
 *   sup_{a >= 0}  <a,s> - (1-t) max{h_{Q0}(a)+c0, 0} - t max{h_{Q1}(a)+c1, 0},
 *
 * a linear program in (a, w0, w1) with w_j >= <a,g> + c_j over the
 * generators g of Q_j. The value lies in [-c_t, 0) with c_t = (1-t)c0 + tc1.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "toricap/lp.hpp"
#include "toricap/orthant.hpp"

namespace toricap {

/// Pair (Q, c) standing for the weighted extremal function c * omega_K.
struct WeightedExtremal {
    GeneratorSet set;
    double weight;

    WeightedExtremal(GeneratorSet q, double c) : set(std::move(q)), weight(c) {
        if (!(weight > 0.0)) throw std::invalid_argument("WeightedExtremal: weight must be > 0");
    }
};

/// Endpoints of a geodesic; the interpolated weight is affine in t.
struct GeodesicSpec {
    WeightedExtremal u0;
    WeightedExtremal u1;

    GeodesicSpec(WeightedExtremal a, WeightedExtremal b) : u0(std::move(a)), u1(std::move(b)) {
        if (u0.set.dim() != u1.set.dim())
            throw std::invalid_argument("GeodesicSpec: dimension mismatch");
    }

    int dim() const { return u0.set.dim(); }
    double weight_at(double t) const { return (1.0 - t) * u0.weight + t * u1.weight; }
};

/// Legendre image max{h_Q(a) + c, 0} of a weighted extremal function.
inline double legendre_image(const WeightedExtremal& u, const Point& a) {
    return std::max(support_function(u.set, a) + u.weight, 0.0);
}

namespace detail {

/// Points closer to the orthant boundary than this are rejected; the
/// supremum defining the geodesic is only attained for strictly negative s.
inline constexpr double kInteriorGuard = 1e-9;

inline void require_interior(const Point& s, int dim, const char* what) {
    require_dim(dim, s, what);
    for (double v : s) {
        if (!(v <= -kInteriorGuard))
            throw std::invalid_argument(std::string(what) +
                                        ": point must be strictly negative componentwise");
    }
}

inline void require_unit_interval(double t, const char* what) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument(std::string(what) + ": t outside [0,1]");
}

}  // namespace detail

/**
 * @brief Value of the geodesic at time t and log-point s (all coordinates
 *        strictly negative).
 *
 * Solved as: maximize <a,s> - (1-t) w0 - t w1 over a >= 0, w_j >= 0,
 * w_j >= <a,g> + c_j for every generator g of Q_j. An unbounded program
 * signals a violated precondition on s.
 */
inline double eval_geodesic(const GeodesicSpec& spec, double t, const Point& s) {
    detail::require_unit_interval(t, "eval_geodesic");
    detail::require_interior(s, spec.dim(), "eval_geodesic");
    const std::size_t n = static_cast<std::size_t>(spec.dim());
    const auto& g0 = spec.u0.set.generators();
    const auto& g1 = spec.u1.set.generators();

    std::vector<std::vector<double>> a;
    std::vector<double> b;
    a.reserve(g0.size() + g1.size());
    b.reserve(g0.size() + g1.size());
    for (const auto& g : g0) {
        std::vector<double> row(n + 2, 0.0);
        std::copy(g.begin(), g.end(), row.begin());
        row[n] = -1.0;
        a.push_back(std::move(row));
        b.push_back(-spec.u0.weight);
    }
    for (const auto& g : g1) {
        std::vector<double> row(n + 2, 0.0);
        std::copy(g.begin(), g.end(), row.begin());
        row[n + 1] = -1.0;
        a.push_back(std::move(row));
        b.push_back(-spec.u1.weight);
    }
    std::vector<double> c(n + 2, 0.0);
    std::copy(s.begin(), s.end(), c.begin());
    c[n] = -(1.0 - t);
    c[n + 1] = -t;

    const auto res = lp::maximize(a, b, c);
    if (res.status == lp::Status::unbounded)
        throw std::runtime_error("eval_geodesic: program unbounded (s not strictly negative?)");
    if (res.status != lp::Status::optimal)
        throw std::runtime_error("eval_geodesic: evaluation program failed");
    return res.objective;
}

/// c * (convex descent of omega_K) at s; the geodesic with equal endpoints.
inline double eval_extremal(const GeneratorSet& q, double c, const Point& s) {
    return eval_geodesic(GeodesicSpec(WeightedExtremal(q, c), WeightedExtremal(q, c)), 0.5, s);
}

/**
 * @brief Geodesic minimum m_t = -c_t.
 *
 * Two complete sets in the negative orthant always intersect (any point below
 * both generator lists), so the minimum equals -c_t unconditionally in this
 * model. Cross-validated against the evaluation program at an interpolated
 * generator unless `validate` is false.
 */
inline double geodesic_min(const GeodesicSpec& spec, double t, bool validate = true) {
    detail::require_unit_interval(t, "geodesic_min");
    const double m = -spec.weight_at(t);
    if (validate) {
        const auto& g0 = spec.u0.set.generators().front();
        const auto& g1 = spec.u1.set.generators().front();
        Point s(g0.size());
        for (std::size_t k = 0; k < s.size(); ++k) s[k] = (1.0 - t) * g0[k] + t * g1[k];
        const double v = eval_geodesic(spec, t, s);
        if (std::abs(v - m) > 1e-9)
            throw std::runtime_error("geodesic_min: cross-validation against evaluation failed");
    }
    return m;
}

/// Whether s belongs to the contact set at time t: the geodesic value sits on
/// its minimum -c_t up to tol. Off the interpolated set the value is strictly
/// larger, so this agrees with membership away from a tol-scaled boundary band.
inline bool contact_set_test(const GeodesicSpec& spec, double t, const Point& s,
                             double tol = 1e-6) {
    if (!(tol > 0.0)) throw std::invalid_argument("contact_set_test: tol must be > 0");
    return eval_geodesic(spec, t, s) <= -spec.weight_at(t) + tol;
}

/**
 * @brief Brute-force lower bound for eval_geodesic on a regular grid of
 *        evaluation points.
 *
 * The supremum over a >= 0 is restricted to a finite grid on [0, 2/eps]^n,
 * so every stored value is a lower bound of the true one. The objective is
 * piecewise linear in a with per-coordinate slope bounded by
 * |s_k| + max |g_k|, and any near-maximizing a satisfies
 * sum_k a_k <= c_t / eps; hence for c_t <= 2 the box contains a maximizer
 * and the restriction loses at most
 *     gap_bound = (h/2) * sum_k (L + max |g_k|),
 * with h the a-grid step. For c_t > 2 the values stay valid lower bounds but
 * the gap bound no longer applies.
 */
struct LltOracleGrid {
    int dim = 0;
    int points_per_axis = 0;
    std::vector<double> s_axis;   ///< shared axis values, ascending
    std::vector<double> values;   ///< row-major, first axis slowest
    double gap_bound = 0.0;

    std::size_t size() const { return values.size(); }

    /// Evaluation point for a flat row-major index.
    Point point_at(std::size_t flat) const {
        Point s(static_cast<std::size_t>(dim));
        const std::size_t n = static_cast<std::size_t>(points_per_axis);
        for (int k = dim - 1; k >= 0; --k) {
            s[static_cast<std::size_t>(k)] = s_axis[flat % n];
            flat /= n;
        }
        return s;
    }
};

inline LltOracleGrid grid_llt_oracle(const GeodesicSpec& spec, double t, double box_extent,
                                     double box_margin, int points_per_axis) {
    detail::require_unit_interval(t, "grid_llt_oracle");
    if (!(box_extent > box_margin && box_margin > 0.0) || points_per_axis < 16)
        throw std::invalid_argument("grid_llt_oracle: degenerate grid");
    const int n = spec.dim();
    const std::size_t np = static_cast<std::size_t>(points_per_axis);
    const double a_max = 2.0 / box_margin;
    const double a_step = a_max / static_cast<double>(np - 1);

    std::size_t total = 1;
    for (int k = 0; k < n; ++k) total *= np;

    // Penalty terms are independent of s: precompute them per a-grid node.
    std::vector<double> a_flat(total * static_cast<std::size_t>(n));
    std::vector<double> penalty(total);
    const auto& g0 = spec.u0.set.generators();
    const auto& g1 = spec.u1.set.generators();
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        double* a = &a_flat[idx * static_cast<std::size_t>(n)];
        for (int k = n - 1; k >= 0; --k) {
            a[k] = static_cast<double>(rest % np) * a_step;
            rest /= np;
        }
        double h0 = -std::numeric_limits<double>::infinity();
        for (const auto& g : g0) {
            double d = 0.0;
            for (int k = 0; k < n; ++k) d += a[k] * g[static_cast<std::size_t>(k)];
            h0 = std::max(h0, d);
        }
        double h1 = -std::numeric_limits<double>::infinity();
        for (const auto& g : g1) {
            double d = 0.0;
            for (int k = 0; k < n; ++k) d += a[k] * g[static_cast<std::size_t>(k)];
            h1 = std::max(h1, d);
        }
        penalty[idx] = (1.0 - t) * std::max(h0 + spec.u0.weight, 0.0) +
                       t * std::max(h1 + spec.u1.weight, 0.0);
    }

    LltOracleGrid grid;
    grid.dim = n;
    grid.points_per_axis = points_per_axis;
    grid.s_axis.resize(np);
    for (std::size_t i = 0; i < np; ++i)
        grid.s_axis[i] = -box_extent + (box_extent - box_margin) * static_cast<double>(i) /
                                           static_cast<double>(np - 1);
    grid.values.resize(total);

    Point s(static_cast<std::size_t>(n));
    for (std::size_t sidx = 0; sidx < total; ++sidx) {
        std::size_t rest = sidx;
        for (int k = n - 1; k >= 0; --k) {
            s[static_cast<std::size_t>(k)] = grid.s_axis[rest % np];
            rest /= np;
        }
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t idx = 0; idx < total; ++idx) {
            const double* a = &a_flat[idx * static_cast<std::size_t>(n)];
            double v = -penalty[idx];
            for (int k = 0; k < n; ++k) v += a[k] * s[static_cast<std::size_t>(k)];
            best = std::max(best, v);
        }
        grid.values[sidx] = best;
    }

    double slope_sum = 0.0;
    for (int k = 0; k < n; ++k) {
        double gk = 0.0;
        for (const auto& g : g0) gk = std::max(gk, std::abs(g[static_cast<std::size_t>(k)]));
        for (const auto& g : g1) gk = std::max(gk, std::abs(g[static_cast<std::size_t>(k)]));
        slope_sum += box_extent + gk;
    }
    grid.gap_bound = 0.5 * a_step * slope_sum;
    return grid;
}

/// Detects the geodesic equality case: c0 * Q1 and c1 * Q0 represent the same
/// set (mutual containment of generators within tol).
inline bool equality_case_detect(const GeodesicSpec& spec, double tol = 1e-9) {
    const GeneratorSet a = scale(spec.u1.set, spec.u0.weight);
    const GeneratorSet b = scale(spec.u0.set, spec.u1.weight);
    for (const auto& g : a.generators())
        if (!contains(b, g, tol)) return false;
    for (const auto& g : b.generators())
        if (!contains(a, g, tol)) return false;
    return true;
}

}  // namespace toricap
