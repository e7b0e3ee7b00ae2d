/**
 * @file orthant.hpp
 * @brief Complete convex sets in the negative/positive orthants and their
 *        copolar duality.
 *
 * A GeneratorSet represents Q = conv(generators) + R^n_- with all generator
 * coordinates strictly negative; it is the logarithmic image of a complete
 * logarithmically convex toric compact inside the unit polydisk. Its copolar
 * Q° = {x : <x,y> <= -1 for all y in Q} is a complete convex set in the
 * positive orthant, represented by a HalfSpaceSet whose normals are exactly
 * the generators of Q. Both types are immutable; all operations are pure.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toricap/lp.hpp"

namespace toricap {

using Point = std::vector<double>;

/// Default strict-negativity margin enforced on user-facing construction.
inline constexpr double kDefaultMargin = 1e-9;

namespace detail {

inline double dot(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

inline double min_abs_coord(const std::vector<Point>& points) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : points)
        for (double v : p) m = std::min(m, std::abs(v));
    return m;
}

inline void require_dim(int dim, const Point& p, const char* what) {
    if (static_cast<int>(p.size()) != dim)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

// Membership of s in conv(gens) + R^n_-: exists lambda >= 0, sum lambda = 1,
// with s <= sum lambda_i g_i componentwise. One and two generators have
// closed-form answers; larger sets go through the simplex solver, with `tol`
// as the feasibility threshold in both cases.
inline bool contained_in(const std::vector<Point>& gens, const Point& s, double tol) {
    const std::size_t m = gens.size();
    const std::size_t n = s.size();
    if (m == 1) {
        for (std::size_t k = 0; k < n; ++k)
            if (s[k] > gens[0][k] + tol) return false;
        return true;
    }
    if (m == 2) {
        double lo = 0.0, hi = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double d = gens[0][k] - gens[1][k];
            const double r = s[k] - gens[1][k] - tol;
            if (d > tol) {
                lo = std::max(lo, r / d);
            } else if (d < -tol) {
                hi = std::min(hi, r / d);
            } else if (r > 0.0) {
                return false;
            }
        }
        return lo <= hi + tol;
    }
    // rows: sum_i (-g_i[k]) lambda_i <= -s[k];  sum lambda <= 1;  -sum lambda <= -1
    std::vector<std::vector<double>> a(n + 2, std::vector<double>(m, 0.0));
    std::vector<double> b(n + 2, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < m; ++i) a[k][i] = -gens[i][k];
        b[k] = -s[k];
    }
    for (std::size_t i = 0; i < m; ++i) {
        a[n][i] = 1.0;
        a[n + 1][i] = -1.0;
    }
    b[n] = 1.0;
    b[n + 1] = -1.0;
    lp::Options opts;
    opts.feas_tol = tol;
    const auto res = lp::maximize(a, b, std::vector<double>(m, 0.0), opts);
    return res.status == lp::Status::optimal;
}

}  // namespace detail

/**
 * @brief V-representation of a complete convex set in the negative orthant.
 *
 * Invariant: every coordinate of every generator is <= -margin < 0, so the
 * represented set stays strictly inside the orthant and its copolar has a
 * bounded complement.
 */
class GeneratorSet {
public:
    GeneratorSet(int dim, std::vector<Point> generators, double margin = kDefaultMargin)
        : dim_(dim), generators_(std::move(generators)), margin_(margin) {
        if (dim_ < 1) throw std::invalid_argument("GeneratorSet: dimension must be >= 1");
        if (generators_.empty()) throw std::invalid_argument("GeneratorSet: no generators");
        if (!(margin_ > 0.0)) throw std::invalid_argument("GeneratorSet: margin must be > 0");
        for (const auto& g : generators_) {
            detail::require_dim(dim_, g, "GeneratorSet");
            for (double v : g) {
                if (!(v <= -margin_))
                    throw std::invalid_argument(
                        "GeneratorSet: generator coordinate above -margin");
            }
        }
    }

    int dim() const { return dim_; }
    const std::vector<Point>& generators() const { return generators_; }
    std::size_t size() const { return generators_.size(); }
    double margin() const { return margin_; }

private:
    int dim_;
    std::vector<Point> generators_;
    double margin_;
};

/**
 * @brief H-representation of a complete convex set in the positive orthant:
 *        P = {x >= 0 : <x,g> <= -1 for every normal g}.
 *
 * All normal coordinates are <= -margin < 0, so P is nonempty (any large
 * positive point is feasible) and R^n_+ \ P is bounded.
 */
class HalfSpaceSet {
public:
    HalfSpaceSet(int dim, std::vector<Point> normals, double margin = kDefaultMargin)
        : dim_(dim), normals_(std::move(normals)), margin_(margin) {
        if (dim_ < 1) throw std::invalid_argument("HalfSpaceSet: dimension must be >= 1");
        if (normals_.empty()) throw std::invalid_argument("HalfSpaceSet: no normals");
        if (!(margin_ > 0.0)) throw std::invalid_argument("HalfSpaceSet: margin must be > 0");
        for (const auto& g : normals_) {
            detail::require_dim(dim_, g, "HalfSpaceSet");
            for (double v : g) {
                if (!(v <= -margin_))
                    throw std::invalid_argument("HalfSpaceSet: normal coordinate above -margin");
            }
        }
    }

    int dim() const { return dim_; }
    const std::vector<Point>& normals() const { return normals_; }
    std::size_t size() const { return normals_.size(); }
    double margin() const { return margin_; }

    /// Whether x (componentwise >= 0) satisfies every copolar constraint.
    bool feasible(const Point& x) const {
        detail::require_dim(dim_, x, "HalfSpaceSet::feasible");
        for (const auto& g : normals_)
            if (detail::dot(x, g) > -1.0) return false;
        return true;
    }

private:
    int dim_;
    std::vector<Point> normals_;
    double margin_;
};

namespace detail {

// Builds a set whose margin is inherited from `hint` but never overstates the
// actual coordinate bound (interpolation and scaling can shave an ulp).
inline GeneratorSet derived_set(int dim, std::vector<Point> gens, double hint) {
    const double margin = std::min(hint, min_abs_coord(gens));
    return GeneratorSet(dim, std::move(gens), margin);
}

}  // namespace detail

/// Support function h_Q(a) = max over generators of <a,g>, for a >= 0.
/// Recession directions of Q only decrease the product against a nonnegative
/// direction, so the maximum over generators is exact.
inline double support_function(const GeneratorSet& q, const Point& a) {
    detail::require_dim(q.dim(), a, "support_function");
    for (double v : a) {
        if (v < 0.0)
            throw std::invalid_argument("support_function: direction has a negative coordinate");
    }
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& g : q.generators()) best = std::max(best, detail::dot(a, g));
    return best;
}

/// Membership of s in the represented set, decided by a small feasibility
/// program with threshold `tol`.
inline bool contains(const GeneratorSet& q, const Point& s, double tol = 1e-10) {
    detail::require_dim(q.dim(), s, "contains");
    return detail::contained_in(q.generators(), s, tol);
}

/**
 * @brief Canonical V-representation: drops every generator contained in the
 *        set spanned by the others.
 *
 * Exact duplicates are merged first (first occurrence kept); containment is
 * then tested in input order against the currently surviving generators, so
 * the output is deterministic for a given input order.
 */
inline GeneratorSet reduce(const GeneratorSet& q) {
    std::vector<Point> gens;
    gens.reserve(q.size());
    for (const auto& g : q.generators()) {
        if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    }
    std::size_t i = 0;
    while (i < gens.size() && gens.size() > 1) {
        std::vector<Point> others;
        others.reserve(gens.size() - 1);
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (j != i) others.push_back(gens[j]);
        if (detail::contained_in(others, gens[i], 1e-10)) {
            gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    return GeneratorSet(q.dim(), std::move(gens), q.margin());
}

/// Minkowski interpolation Q_t = (1-t) Q_0 + t Q_1, reduced. Its support
/// function is the same affine combination of the endpoint support functions.
inline GeneratorSet interpolate(const GeneratorSet& q0, const GeneratorSet& q1, double t) {
    if (q0.dim() != q1.dim()) throw std::invalid_argument("interpolate: dimension mismatch");
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("interpolate: t outside [0,1]");
    std::vector<Point> combos;
    combos.reserve(q0.size() * q1.size());
    for (const auto& g : q0.generators()) {
        for (const auto& h : q1.generators()) {
            Point p(q0.dim());
            for (int k = 0; k < q0.dim(); ++k) p[k] = (1.0 - t) * g[k] + t * h[k];
            combos.push_back(std::move(p));
        }
    }
    return reduce(detail::derived_set(q0.dim(), std::move(combos),
                                      std::min(q0.margin(), q1.margin())));
}

/// Homothety lambda * Q for lambda > 0.
inline GeneratorSet scale(const GeneratorSet& q, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("scale: factor must be > 0");
    std::vector<Point> gens = q.generators();
    for (auto& g : gens)
        for (double& v : g) v *= lambda;
    return detail::derived_set(q.dim(), std::move(gens), lambda * q.margin());
}

/// Copolar Q° = {x >= 0 : <x,y> <= -1 for all y in Q}. Constraints at the
/// generators suffice: recession directions of Q only lower <x,y> for x >= 0.
inline HalfSpaceSet copolar(const GeneratorSet& q) {
    return HalfSpaceSet(q.dim(), q.generators(), q.margin());
}

/// Inverse direction of the involution: the complete set whose copolar is P.
inline GeneratorSet copolar_inverse(const HalfSpaceSet& p) {
    return reduce(GeneratorSet(p.dim(), p.normals(), p.margin()));
}

/// Copolar combination ((1-t) P_0° + t P_1°)°, the dual of Minkowski
/// interpolation of the underlying generator sets.
inline HalfSpaceSet copolar_add(const HalfSpaceSet& p0, const HalfSpaceSet& p1, double t) {
    if (p0.dim() != p1.dim()) throw std::invalid_argument("copolar_add: dimension mismatch");
    return copolar(interpolate(copolar_inverse(p0), copolar_inverse(p1), t));
}

}  // namespace toricap
