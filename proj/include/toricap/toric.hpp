/**
 * @file toric.hpp
 * @brief Reinhardt compacts in the unit polydisk: log/radius translation,
 *        geometric means, and Euclidean volumes.
 *
 * A Reinhardt compact is determined by its moduli; here it is specified
 * either as a polydisk (radii in (0,1)^n) or directly by the generators of
 * its logarithmic image. Volumes use the change of variables u_k = |z_k|^2:
 *
 *   Vol_{2n}(K) = pi^n * Vol_n({u in (0,1]^n : log u in 2Q}),
 *
 * exact for single-generator sets (product of squared radii) and Monte Carlo
 * over the unit cube otherwise.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "toricap/covolume.hpp"
#include "toricap/orthant.hpp"
#include "toricap/rng.hpp"

namespace toricap {

class ReinhardtSpec {
public:
    enum class Kind { polydisk, log_generators };

    static ReinhardtSpec make_polydisk(std::vector<double> radii) {
        if (radii.empty()) throw std::invalid_argument("ReinhardtSpec: no radii");
        for (double r : radii) {
            if (!(r > 0.0 && r < 1.0))
                throw std::invalid_argument("ReinhardtSpec: radii must lie in (0,1)");
            if (!(std::log(r) <= -kDefaultMargin))
                throw std::invalid_argument("ReinhardtSpec: radius too close to 1");
        }
        const int n = static_cast<int>(radii.size());
        return ReinhardtSpec(Kind::polydisk, n, std::move(radii), std::nullopt);
    }

    static ReinhardtSpec make_log_generators(GeneratorSet q) {
        const int n = q.dim();
        return ReinhardtSpec(Kind::log_generators, n, {}, std::move(q));
    }

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }

    const std::vector<double>& radii() const {
        if (kind_ != Kind::polydisk)
            throw std::logic_error("ReinhardtSpec: not a polydisk");
        return radii_;
    }

    const GeneratorSet& log_generators() const {
        if (kind_ != Kind::log_generators)
            throw std::logic_error("ReinhardtSpec: not a generator spec");
        return *gens_;
    }

private:
    ReinhardtSpec(Kind k, int dim, std::vector<double> radii, std::optional<GeneratorSet> q)
        : kind_(k), dim_(dim), radii_(std::move(radii)), gens_(std::move(q)) {}

    Kind kind_;
    int dim_;
    std::vector<double> radii_;
    std::optional<GeneratorSet> gens_;
};

/// Logarithmic image: a polydisk maps to the single generator (log rho_k).
inline GeneratorSet log_image(const ReinhardtSpec& spec) {
    if (spec.kind() == ReinhardtSpec::Kind::log_generators) return spec.log_generators();
    Point g;
    g.reserve(spec.radii().size());
    for (double r : spec.radii()) g.push_back(std::log(r));
    return detail::derived_set(spec.dim(), {std::move(g)}, kDefaultMargin);
}

/// Geometric mean K_0^{1-t} K_1^t: coordinatewise products of moduli, i.e.
/// Minkowski interpolation of the log-images.
inline ReinhardtSpec geometric_mean(const ReinhardtSpec& a, const ReinhardtSpec& b, double t) {
    if (a.dim() != b.dim()) throw std::invalid_argument("geometric_mean: dimension mismatch");
    return ReinhardtSpec::make_log_generators(interpolate(log_image(a), log_image(b), t));
}

/// 2n-dimensional Euclidean volume of the Reinhardt compact.
inline CovolumeResult volume(const ReinhardtSpec& spec, VolumeMethod method,
                             long long samples = 1000000, std::uint64_t seed = 0) {
    const int n = spec.dim();
    const double pin = std::pow(std::acos(-1.0), n);
    if (method == VolumeMethod::exact) {
        CovolumeResult r;
        if (spec.kind() == ReinhardtSpec::Kind::polydisk) {
            double prod = 1.0;
            for (double rho : spec.radii()) prod *= rho * rho;
            r.value = pin * prod;
            return r;
        }
        const GeneratorSet& q = spec.log_generators();
        if (q.size() == 1) {
            double prod = 1.0;
            for (double g : q.generators().front()) prod *= std::exp(2.0 * g);
            r.value = pin * prod;
            return r;
        }
        throw std::invalid_argument(
            "volume: exact path needs a single-generator (polydisk) set; use monte_carlo");
    }
    if (samples < 1000) throw std::invalid_argument("volume: need at least 1000 samples");
    const GeneratorSet q = log_image(spec);
    const GeneratorSet q2 = scale(q, 2.0);
    // Tight sampling box: in coordinate k the u-set lies under
    // exp(2 max_i g_i[k]), the square of the set's largest k-th modulus.
    // Sampling the unit cube instead can make the hit rate vanish for small
    // sets in higher dimension.
    Point ubox(static_cast<std::size_t>(n));
    double boxvol = 1.0;
    for (int k = 0; k < n; ++k) {
        double mx = -std::numeric_limits<double>::infinity();
        for (const auto& g : q.generators()) mx = std::max(mx, g[static_cast<std::size_t>(k)]);
        ubox[static_cast<std::size_t>(k)] = std::exp(2.0 * mx);
        boxvol *= ubox[static_cast<std::size_t>(k)];
    }
    long long hits = 0;
    Point s(static_cast<std::size_t>(n));
    for (long long i = 0; i < samples; ++i) {
        const std::uint64_t base = static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n);
        for (int k = 0; k < n; ++k) {
            const double u = ubox[static_cast<std::size_t>(k)] *
                             rng::uniform_open_at(seed, base + static_cast<std::uint64_t>(k));
            s[static_cast<std::size_t>(k)] = std::log(u);
        }
        if (contains(q2, s)) ++hits;
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(samples);
    const double prefactor = pin * boxvol;
    CovolumeResult r;
    r.method = VolumeMethod::monte_carlo;
    r.samples = samples;
    r.value = prefactor * frac;
    // At the boundaries the binomial plug-in error is zero, which would make
    // any downstream 3-sigma comparison vacuous; report the rule-of-three
    // bound instead.
    if (hits == 0 || hits == samples) {
        r.std_err = prefactor * 3.0 / static_cast<double>(samples);
    } else {
        r.std_err = prefactor * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
    }
    return r;
}

/// Exact volume when the set is polydisk-like, Monte Carlo otherwise.
inline CovolumeResult volume_auto(const ReinhardtSpec& spec, long long samples = 1000000,
                                  std::uint64_t seed = 0) {
    const bool exact_ok = spec.kind() == ReinhardtSpec::Kind::polydisk ||
                          spec.log_generators().size() == 1;
    return volume(spec, exact_ok ? VolumeMethod::exact : VolumeMethod::monte_carlo, samples,
                  seed);
}

}  // namespace toricap
