/**
 * @file covolume.hpp
 * @brief Covolumes of complete convex sets in the positive orthant and the
 *        capacity of toric compacts through the covolume dictionary.
 *
 * The covolume of P is the Euclidean volume of R^n_+ \ P (plain volume; the
 * n! factor appears only in `capacity`). The exact path decomposes the
 * bounded polytope P ∩ [0,M]^n by signed facet recursion; the Monte Carlo
 * path samples the bounding box with a counter-based stream so estimates are
 * reproducible bit for bit for a fixed seed.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "toricap/orthant.hpp"
#include "toricap/rng.hpp"

namespace toricap {

enum class VolumeMethod { exact, monte_carlo };

struct CovolumeResult {
    double value = 0.0;
    VolumeMethod method = VolumeMethod::exact;
    double std_err = 0.0;    ///< 0 on the exact path
    long long samples = 0;   ///< 0 on the exact path
};

/// Side length M of a box [0,M]^n containing R^n_+ \ P: a point outside P
/// violates some constraint <x,g> > -1, which forces x_k < 1/|g_k| for all k.
inline double bounding_box(const HalfSpaceSet& p) {
    double m = 0.0;
    for (const auto& g : p.normals())
        for (double v : g) m = std::max(m, 1.0 / std::abs(v));
    return m;
}

namespace detail {

inline constexpr double kGeomTol = 1e-12;

/**
 * Volume of {x : a_i . x <= b_i}, assumed bounded, by facet recursion:
 * n * Vol equals the sum over constraints of (signed offset) * (facet
 * measure), and each facet is measured by eliminating its largest-magnitude
 * coordinate and correcting by the norm ratio. Rows are normalized and
 * duplicates dropped at every level (a duplicated row would count its facet
 * twice); degenerate pivots cannot occur on unit rows. Empty facets recurse
 * to zero, so redundant constraints contribute nothing.
 */
inline double polytope_volume(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = a.empty() ? 0 : a.front().size();
    std::size_t keep = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double norm = 0.0;
        for (double v : a[i]) norm += v * v;
        norm = std::sqrt(norm);
        if (norm < kGeomTol) {
            if (b[i] < -kGeomTol) return 0.0;  // 0 <= b[i] fails: empty set
            continue;
        }
        for (double& v : a[i]) v /= norm;
        if (keep != i) a[keep] = std::move(a[i]);
        b[keep] = b[i] / norm;
        ++keep;
    }
    a.resize(keep);
    b.resize(keep);

    std::vector<bool> dup(keep, false);
    for (std::size_t i = 0; i < keep; ++i) {
        if (dup[i]) continue;
        for (std::size_t j = i + 1; j < keep; ++j) {
            if (dup[j] || std::abs(b[i] - b[j]) > kGeomTol) continue;
            bool same = true;
            for (std::size_t k = 0; k < n && same; ++k)
                same = std::abs(a[i][k] - a[j][k]) <= kGeomTol;
            if (same) dup[j] = true;
        }
    }

    if (n == 1) {
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < keep; ++i) {
            if (dup[i]) continue;
            if (a[i][0] > 0.0) hi = std::min(hi, b[i] / a[i][0]);
            else lo = std::max(lo, b[i] / a[i][0]);
        }
        if (!std::isfinite(hi) || !std::isfinite(lo))
            throw std::runtime_error("polytope_volume: unbounded interval");
        return std::max(0.0, hi - lo);
    }

    double acc = 0.0;
    for (std::size_t i = 0; i < keep; ++i) {
        if (dup[i]) continue;
        std::size_t piv = 0;
        for (std::size_t k = 1; k < n; ++k)
            if (std::abs(a[i][k]) > std::abs(a[i][piv])) piv = k;
        const double apiv = a[i][piv];  // |apiv| >= 1/sqrt(n) on a unit row

        std::vector<std::vector<double>> sub_a;
        std::vector<double> sub_b;
        sub_a.reserve(keep - 1);
        sub_b.reserve(keep - 1);
        for (std::size_t l = 0; l < keep; ++l) {
            if (l == i || dup[l]) continue;
            const double f = a[l][piv] / apiv;
            std::vector<double> row;
            row.reserve(n - 1);
            for (std::size_t k = 0; k < n; ++k) {
                if (k == piv) continue;
                row.push_back(a[l][k] - f * a[i][k]);
            }
            sub_a.push_back(std::move(row));
            sub_b.push_back(b[l] - f * b[i]);
        }
        acc += b[i] / std::abs(apiv) * polytope_volume(std::move(sub_a), std::move(sub_b));
    }
    return acc / static_cast<double>(n);
}

inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

inline bool outside(const HalfSpaceSet& p, const Point& x) {
    for (const auto& g : p.normals())
        if (dot(x, g) > -1.0) return true;
    return false;
}

}  // namespace detail

/// Exact covolume M^n - Vol(P ∩ [0,M]^n); supported for dim <= 4.
inline CovolumeResult covolume_exact(const HalfSpaceSet& p) {
    const int n = p.dim();
    if (n > 4)
        throw std::invalid_argument(
            "covolume_exact: dimension > 4 not supported on the exact path; use covolume_mc");
    const double m = bounding_box(p);
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    a.reserve(2 * static_cast<std::size_t>(n) + p.size());
    for (int k = 0; k < n; ++k) {
        std::vector<double> lo(n, 0.0), hi(n, 0.0);
        lo[k] = -1.0;
        hi[k] = 1.0;
        a.push_back(std::move(lo));
        b.push_back(0.0);
        a.push_back(std::move(hi));
        b.push_back(m);
    }
    for (const auto& g : p.normals()) {
        a.push_back(g);
        b.push_back(-1.0);
    }
    const double inside = detail::polytope_volume(std::move(a), std::move(b));
    CovolumeResult r;
    r.value = std::max(0.0, std::pow(m, n) - inside);
    return r;
}

/// Monte Carlo covolume estimate over [0,M]^n. Sample i depends only on
/// (seed, i), so the result is identical however the loop is scheduled.
inline CovolumeResult covolume_mc(const HalfSpaceSet& p, long long samples, std::uint64_t seed) {
    if (samples < 1000) throw std::invalid_argument("covolume_mc: need at least 1000 samples");
    const int n = p.dim();
    const double m = bounding_box(p);
    long long hits = 0;
    Point x(static_cast<std::size_t>(n));
    for (long long i = 0; i < samples; ++i) {
        const std::uint64_t base = static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n);
        for (int k = 0; k < n; ++k)
            x[static_cast<std::size_t>(k)] =
                m * rng::uniform_at(seed, base + static_cast<std::uint64_t>(k));
        if (detail::outside(p, x)) ++hits;
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(samples);
    const double box = std::pow(m, n);
    CovolumeResult r;
    r.method = VolumeMethod::monte_carlo;
    r.samples = samples;
    r.value = box * frac;
    r.std_err = box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
    return r;
}

inline CovolumeResult covolume(const HalfSpaceSet& p, VolumeMethod method,
                               long long samples = 1000000, std::uint64_t seed = 0) {
    return method == VolumeMethod::exact ? covolume_exact(p) : covolume_mc(p, samples, seed);
}

/// Monge-Ampère capacity of the toric compact with log-image Q, relative to
/// the unit polydisk: n! times the covolume of the copolar.
inline CovolumeResult capacity(const GeneratorSet& q, VolumeMethod method = VolumeMethod::exact,
                               long long samples = 1000000, std::uint64_t seed = 0) {
    CovolumeResult r = covolume(copolar(q), method, samples, seed);
    const double f = detail::factorial(q.dim());
    r.value *= f;
    r.std_err *= f;
    return r;
}

/// Pluripotential energy of the weighted extremal function c * omega_K:
/// E(c * omega_K) = -c^{n+1} Cap(K).
inline double weighted_energy(const GeneratorSet& q, double c,
                              VolumeMethod method = VolumeMethod::exact,
                              long long samples = 1000000, std::uint64_t seed = 0) {
    if (!(c > 0.0)) throw std::invalid_argument("weighted_energy: weight must be > 0");
    return -std::pow(c, q.dim() + 1) * capacity(q, method, samples, seed).value;
}

}  // namespace toricap
