/**
 * @file harness.hpp
 * @brief Experiment runner: capacity curves over a t-grid, weight
 *        equilibration, inequality checks, and machine-readable reports.
 *
 * For a pair of toric sets with log-images Q_0, Q_1 and weights (c_0, c_1),
 * each grid point t produces Q_t = (1-t)Q_0 + tQ_1 together with its
 * capacity, covolume, V = Cap^{-1/(n+1)}, rho = 1/V, the weighted
 * Brunn-Minkowski slack and the log-convexity slack. Slacks are signed
 * (pass means slack >= -tol) and never clamped. Monte Carlo rows carry a
 * standard error that the checks fold into their tolerances.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "toricap/covolume.hpp"
#include "toricap/extremal.hpp"
#include "toricap/orthant.hpp"
#include "toricap/rng.hpp"
#include "toricap/toric.hpp"

namespace toricap {

struct Tolerances {
    double ineq_slack = 1e-9;  ///< allowed negative slack in inequality checks
    double exact_eq = 1e-12;   ///< tolerance for identities on the exact path
};

enum class WeightMode { explicit_weights, equilibrated };

struct ExperimentConfig {
    int n;
    ReinhardtSpec set0;
    ReinhardtSpec set1;
    WeightMode weight_mode = WeightMode::equilibrated;
    double c0 = 1.0;
    double c1 = 1.0;
    std::vector<double> t_grid;
    VolumeMethod method = VolumeMethod::exact;
    long long samples = 1000000;
    std::uint64_t seed = 12345;
    Tolerances tolerances;
};

/// Uniform grid {0, 1/(count-1), ..., 1}.
inline std::vector<double> uniform_grid(int count) {
    if (count < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        g[static_cast<std::size_t>(i)] = static_cast<double>(i) / static_cast<double>(count - 1);
    return g;
}

// ---------------------------------------------------------------------------
// JSON interface
// ---------------------------------------------------------------------------

inline ReinhardtSpec parse_set(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("set: expected an object");
    const bool has_poly = j.contains("polydisk");
    const bool has_gens = j.contains("generators");
    if (has_poly == has_gens)
        throw std::invalid_argument("set: exactly one of \"polydisk\"/\"generators\" expected");
    for (const auto& item : j.items()) {
        if (item.key() != "polydisk" && item.key() != "generators")
            throw std::invalid_argument("set: unknown key \"" + item.key() + "\"");
    }
    if (has_poly) {
        const auto& arr = j.at("polydisk");
        if (!arr.is_array() || arr.empty())
            throw std::invalid_argument("set: \"polydisk\" must be a nonempty array");
        return ReinhardtSpec::make_polydisk(arr.get<std::vector<double>>());
    }
    const auto& arr = j.at("generators");
    if (!arr.is_array() || arr.empty())
        throw std::invalid_argument("set: \"generators\" must be a nonempty array of points");
    std::vector<Point> gens;
    gens.reserve(arr.size());
    for (const auto& row : arr) {
        if (!row.is_array() || row.empty())
            throw std::invalid_argument("set: generator must be a nonempty array");
        gens.push_back(row.get<Point>());
    }
    const int dim = static_cast<int>(gens.front().size());
    return ReinhardtSpec::make_log_generators(GeneratorSet(dim, std::move(gens)));
}

inline nlohmann::json set_to_json(const ReinhardtSpec& spec) {
    nlohmann::json j;
    if (spec.kind() == ReinhardtSpec::Kind::polydisk) {
        j["polydisk"] = spec.radii();
    } else {
        j["generators"] = spec.log_generators().generators();
    }
    return j;
}

inline VolumeMethod parse_method(const std::string& name) {
    if (name == "exact") return VolumeMethod::exact;
    if (name == "mc" || name == "monte_carlo") return VolumeMethod::monte_carlo;
    throw std::invalid_argument("method: expected \"exact\" or \"monte_carlo\", got \"" + name +
                                "\"");
}

inline ExperimentConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: expected an object");
    static const char* known[] = {"n",      "set0",    "set1", "weights", "t_grid",
                                  "t_count", "method", "samples", "seed", "tolerances"};
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || item.key() == k;
        if (!ok) throw std::invalid_argument("config: unknown key \"" + item.key() + "\"");
    }
    if (!j.contains("n") || !j.at("n").is_number_integer())
        throw std::invalid_argument("config: integer \"n\" required");
    const int n = j.at("n").get<int>();
    if (n < 1) throw std::invalid_argument("config: n must be >= 1");
    if (!j.contains("set0") || !j.contains("set1"))
        throw std::invalid_argument("config: \"set0\" and \"set1\" required");

    ExperimentConfig cfg{n, parse_set(j.at("set0")), parse_set(j.at("set1"))};
    if (cfg.set0.dim() != n || cfg.set1.dim() != n)
        throw std::invalid_argument("config: set dimension disagrees with n");

    if (j.contains("weights")) {
        const auto& w = j.at("weights");
        if (w.is_string() && w.get<std::string>() == "equilibrated") {
            cfg.weight_mode = WeightMode::equilibrated;
        } else if (w.is_array() && w.size() == 2) {
            cfg.weight_mode = WeightMode::explicit_weights;
            cfg.c0 = w.at(0).get<double>();
            cfg.c1 = w.at(1).get<double>();
            if (!(cfg.c0 > 0.0 && cfg.c1 > 0.0))
                throw std::invalid_argument("config: weights must be positive");
        } else {
            throw std::invalid_argument(
                "config: \"weights\" must be [c0, c1] or \"equilibrated\"");
        }
    }

    if (j.contains("t_grid") && j.contains("t_count"))
        throw std::invalid_argument("config: give \"t_grid\" or \"t_count\", not both");
    if (j.contains("t_grid")) {
        const auto& g = j.at("t_grid");
        if (!g.is_array() || g.empty())
            throw std::invalid_argument("config: \"t_grid\" must be a nonempty array");
        cfg.t_grid = g.get<std::vector<double>>();
        for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
            if (!(cfg.t_grid[i] >= 0.0 && cfg.t_grid[i] <= 1.0))
                throw std::invalid_argument("config: t values must lie in [0,1]");
            if (i > 0 && cfg.t_grid[i] < cfg.t_grid[i - 1])
                throw std::invalid_argument("config: t_grid must be sorted ascending");
        }
    } else if (j.contains("t_count")) {
        if (!j.at("t_count").is_number_integer())
            throw std::invalid_argument("config: \"t_count\" must be an integer");
        cfg.t_grid = uniform_grid(j.at("t_count").get<int>());
    } else {
        cfg.t_grid = uniform_grid(11);
    }

    if (j.contains("method")) cfg.method = parse_method(j.at("method").get<std::string>());
    if (j.contains("samples")) {
        if (!j.at("samples").is_number_integer())
            throw std::invalid_argument("config: \"samples\" must be an integer");
        cfg.samples = j.at("samples").get<long long>();
        if (cfg.samples < 1000)
            throw std::invalid_argument("config: \"samples\" must be >= 1000");
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        if (!t.is_object()) throw std::invalid_argument("config: \"tolerances\" must be object");
        for (const auto& item : t.items()) {
            if (item.key() == "ineq_slack") cfg.tolerances.ineq_slack = item.value().get<double>();
            else if (item.key() == "exact_eq") cfg.tolerances.exact_eq = item.value().get<double>();
            else throw std::invalid_argument("config: unknown tolerance \"" + item.key() + "\"");
        }
    }
    return cfg;
}

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["n"] = cfg.n;
    j["set0"] = set_to_json(cfg.set0);
    j["set1"] = set_to_json(cfg.set1);
    if (cfg.weight_mode == WeightMode::equilibrated) j["weights"] = "equilibrated";
    else j["weights"] = {cfg.c0, cfg.c1};
    j["t_grid"] = cfg.t_grid;
    j["method"] = cfg.method == VolumeMethod::exact ? "exact" : "monte_carlo";
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["tolerances"] = {{"ineq_slack", cfg.tolerances.ineq_slack},
                       {"exact_eq", cfg.tolerances.exact_eq}};
    return j;
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

inline ExperimentConfig load_config(const std::string& path) {
    return parse_config(load_json_file(path));
}

inline ReinhardtSpec load_set(const std::string& path) {
    nlohmann::json j = load_json_file(path);
    if (!j.is_object()) throw std::invalid_argument(path + ": expected a JSON object");
    j.erase("n");  // optional dimension annotation on standalone set files
    return parse_set(j);
}

// ---------------------------------------------------------------------------
// Capacity curve
// ---------------------------------------------------------------------------

struct CurveRow {
    double t = 0.0;
    double c_t = 0.0;
    double cap = 0.0;
    double covol = 0.0;
    double V = 0.0;
    double rho = 0.0;
    double bm_slack = 0.0;
    double logconv_slack = 0.0;
    double std_err = 0.0;
    std::string error;  ///< nonempty when this row failed numerically

    bool ok() const { return error.empty(); }
};

struct CurveSummary {
    /// Smallest chord gap of V over interior grid points (equilibrated runs
    /// only, NaN otherwise); concavity requires every gap <= tolerance.
    double concavity_min_second_difference = std::numeric_limits<double>::quiet_NaN();
    bool equality_case = false;
};

struct CapacityReport {
    ExperimentConfig config;  ///< weights resolved to numbers
    GeneratorSet q0;
    GeneratorSet q1;
    double cap0 = 0.0;
    double cap1 = 0.0;
    double cap0_std_err = 0.0;
    double cap1_std_err = 0.0;
    std::vector<CurveRow> rows;
    CurveSummary summary;
};

/// Weights with c_0 = 1 and c_0^{n+1} Cap_0 = c_1^{n+1} Cap_1.
inline std::pair<double, double> equilibrate_weights(const GeneratorSet& q0,
                                                     const GeneratorSet& q1,
                                                     VolumeMethod method = VolumeMethod::exact,
                                                     long long samples = 1000000,
                                                     std::uint64_t seed = 0) {
    if (q0.dim() != q1.dim())
        throw std::invalid_argument("equilibrate_weights: dimension mismatch");
    const double cap0 = capacity(q0, method, samples, seed).value;
    const double cap1 = capacity(q1, method, samples, seed).value;
    if (!(cap0 > 0.0) || !(cap1 > 0.0) || !std::isfinite(cap0) || !std::isfinite(cap1))
        throw std::runtime_error("equilibrate_weights: zero or failed capacity");
    return {1.0, std::pow(cap0 / cap1, 1.0 / (q0.dim() + 1))};
}

namespace detail {

// Chord gap of V at an interior grid point: positive means the chord lies
// above the function there, i.e. a concavity violation.
struct ChordGap {
    double gap = 0.0;
    double sigma = 0.0;  // propagated standard error of the gap
    double t = 0.0;
};

inline std::vector<ChordGap> chord_gaps(const std::vector<CurveRow>& rows, int n) {
    std::vector<const CurveRow*> ok;
    for (const auto& r : rows)
        if (r.ok()) ok.push_back(&r);
    std::vector<ChordGap> gaps;
    for (std::size_t i = 1; i + 1 < ok.size(); ++i) {
        const CurveRow& a = *ok[i - 1];
        const CurveRow& b = *ok[i];
        const CurveRow& c = *ok[i + 1];
        const double w = (c.t - b.t) / (c.t - a.t);
        const auto sigma_v = [n](const CurveRow& r) {
            return r.cap > 0.0 ? r.V * r.std_err / ((n + 1) * r.cap) : 0.0;
        };
        ChordGap g;
        g.t = b.t;
        g.gap = w * a.V + (1.0 - w) * c.V - b.V;
        g.sigma = w * sigma_v(a) + (1.0 - w) * sigma_v(c) + sigma_v(b);
        gaps.push_back(g);
    }
    return gaps;
}

}  // namespace detail

inline CapacityReport run_capacity_curve(const ExperimentConfig& cfg) {
    GeneratorSet q0 = reduce(log_image(cfg.set0));
    GeneratorSet q1 = reduce(log_image(cfg.set1));
    if (q0.dim() != cfg.n || q1.dim() != cfg.n)
        throw std::invalid_argument("run_capacity_curve: set dimension disagrees with n");
    const int n = cfg.n;
    const double fact = detail::factorial(n);

    const CovolumeResult cov0 = covolume(copolar(q0), cfg.method, cfg.samples, cfg.seed);
    const CovolumeResult cov1 = covolume(copolar(q1), cfg.method, cfg.samples, cfg.seed);
    const double cap0 = fact * cov0.value;
    const double cap1 = fact * cov1.value;
    if (!(cap0 > 0.0) || !(cap1 > 0.0))
        throw std::runtime_error("run_capacity_curve: endpoint capacity vanished");

    CapacityReport rep{cfg, q0, q1};
    rep.cap0 = cap0;
    rep.cap1 = cap1;
    rep.cap0_std_err = fact * cov0.std_err;
    rep.cap1_std_err = fact * cov1.std_err;

    double c0 = cfg.c0, c1 = cfg.c1;
    if (cfg.weight_mode == WeightMode::equilibrated) {
        c0 = 1.0;
        c1 = std::pow(cap0 / cap1, 1.0 / (n + 1));
    }
    rep.config.c0 = c0;
    rep.config.c1 = c1;

    const double lhs0 = std::pow(c0, n + 1) * cap0;
    const double lhs1 = std::pow(c1, n + 1) * cap1;
    for (double t : cfg.t_grid) {
        CurveRow row;
        row.t = t;
        row.c_t = (1.0 - t) * c0 + t * c1;
        try {
            const GeneratorSet qt = interpolate(q0, q1, t);
            const CovolumeResult cr = covolume(copolar(qt), cfg.method, cfg.samples, cfg.seed);
            row.covol = cr.value;
            row.cap = fact * cr.value;
            row.std_err = fact * cr.std_err;
            if (!(row.cap > 0.0)) throw std::runtime_error("capacity vanished");
            row.V = std::pow(row.cap, -1.0 / (n + 1));
            row.rho = std::pow(row.cap, 1.0 / (n + 1));
            row.bm_slack = (1.0 - t) * lhs0 + t * lhs1 - std::pow(row.c_t, n + 1) * row.cap;
            row.logconv_slack = std::pow(cap0, 1.0 - t) * std::pow(cap1, t) - row.cap;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rep.rows.push_back(std::move(row));
    }

    rep.summary.equality_case = equality_case_detect(
        GeodesicSpec(WeightedExtremal(q0, c0), WeightedExtremal(q1, c1)), 1e-9);
    if (cfg.weight_mode == WeightMode::equilibrated) {
        const auto gaps = detail::chord_gaps(rep.rows, n);
        double mn = std::numeric_limits<double>::quiet_NaN();
        for (const auto& g : gaps) mn = std::isnan(mn) ? g.gap : std::min(mn, g.gap);
        rep.summary.concavity_min_second_difference = mn;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;  ///< most violating quantity (sign depends on check)
    std::string detail;
};

struct ConcavityResult {
    bool pass = false;
    double min_second_difference = 0.0;
    double max_second_difference = 0.0;
};

/// Weighted Brunn-Minkowski: every row must have slack >= -(tol + 3 sigma).
inline CheckResult check_weighted_bm(const CapacityReport& rep) {
    CheckResult res{"weighted_bm"};
    const int n = rep.config.n;
    const double tol = rep.config.tolerances.ineq_slack;
    const double c0 = rep.config.c0, c1 = rep.config.c1;
    bool any = false;
    res.pass = true;
    res.worst = std::numeric_limits<double>::infinity();
    for (const auto& row : rep.rows) {
        if (!row.ok()) continue;
        any = true;
        const double sigma = (1.0 - row.t) * std::pow(c0, n + 1) * rep.cap0_std_err +
                             row.t * std::pow(c1, n + 1) * rep.cap1_std_err +
                             std::pow(row.c_t, n + 1) * row.std_err;
        res.worst = std::min(res.worst, row.bm_slack);
        if (row.bm_slack < -(tol + 3.0 * sigma)) {
            res.pass = false;
            res.detail = "violated at t=" + std::to_string(row.t) +
                         ", slack=" + std::to_string(row.bm_slack);
        }
    }
    if (!any) {
        res.pass = false;
        res.detail = "no valid rows";
    }
    return res;
}

/// Concavity of V(t) = Cap_t^{-1/(n+1)} on the grid (equilibrated mode only).
inline ConcavityResult check_concavity(const CapacityReport& rep) {
    if (rep.config.weight_mode != WeightMode::equilibrated)
        throw std::invalid_argument("check_concavity: requires equilibrated weights");
    const auto gaps = detail::chord_gaps(rep.rows, rep.config.n);
    if (gaps.empty()) throw std::invalid_argument("check_concavity: need at least 3 grid points");
    ConcavityResult res;
    res.pass = true;
    res.min_second_difference = std::numeric_limits<double>::infinity();
    res.max_second_difference = -std::numeric_limits<double>::infinity();
    const double tol = rep.config.tolerances.ineq_slack;
    for (const auto& g : gaps) {
        res.min_second_difference = std::min(res.min_second_difference, g.gap);
        res.max_second_difference = std::max(res.max_second_difference, g.gap);
        if (g.gap > tol + 3.0 * g.sigma) res.pass = false;
    }
    return res;
}

/// Logarithmic convexity: Cap_t <= Cap_0^{1-t} Cap_1^t up to tolerance.
inline CheckResult check_logconvexity(const CapacityReport& rep) {
    CheckResult res{"logconvexity"};
    const double tol = rep.config.tolerances.ineq_slack;
    bool any = false;
    res.pass = true;
    res.worst = std::numeric_limits<double>::infinity();
    for (const auto& row : rep.rows) {
        if (!row.ok()) continue;
        any = true;
        const double geo = std::pow(rep.cap0, 1.0 - row.t) * std::pow(rep.cap1, row.t);
        const double sigma = geo * ((1.0 - row.t) * rep.cap0_std_err / rep.cap0 +
                                    row.t * rep.cap1_std_err / rep.cap1) +
                             row.std_err;
        res.worst = std::min(res.worst, row.logconv_slack);
        if (row.logconv_slack < -(tol + 3.0 * sigma)) {
            res.pass = false;
            res.detail = "violated at t=" + std::to_string(row.t);
        }
    }
    if (!any) {
        res.pass = false;
        res.detail = "no valid rows";
    }
    return res;
}

/// Reverse Brunn-Minkowski for Euclidean volumes of the geometric means:
/// Vol(K_t) >= Vol_0^{1-t} Vol_1^t within 3x the propagated sampling error.
inline CheckResult check_volume_reverse_bm(const ExperimentConfig& cfg) {
    CheckResult res{"volume_reverse_bm"};
    const CovolumeResult v0 = volume_auto(cfg.set0, cfg.samples, cfg.seed);
    const CovolumeResult v1 = volume_auto(cfg.set1, cfg.samples, cfg.seed);
    res.pass = true;
    res.worst = std::numeric_limits<double>::infinity();
    for (double t : cfg.t_grid) {
        const ReinhardtSpec kt = geometric_mean(cfg.set0, cfg.set1, t);
        const CovolumeResult vt = volume_auto(kt, cfg.samples, cfg.seed);
        const double rhs = std::pow(v0.value, 1.0 - t) * std::pow(v1.value, t);
        const double sigma_rhs =
            rhs * std::sqrt(std::pow((1.0 - t) * v0.std_err / v0.value, 2) +
                            std::pow(t * v1.std_err / v1.value, 2));
        const double slack = vt.value - rhs;
        res.worst = std::min(res.worst, slack);
        if (slack < -(3.0 * (vt.std_err + sigma_rhs) + 1e-12 * std::max(1.0, rhs))) {
            res.pass = false;
            res.detail = "violated at t=" + std::to_string(t);
        }
    }
    return res;
}

/**
 * @brief Covolume form of the weighted inequality via copolar addition, plus
 *        the dictionary identity n! Covol(P_t) = Cap(Q_t).
 *
 * P_t is built through copolar_add from P_j = Q_j°, which must reproduce the
 * capacity rows exactly (componentwise the same polytopes), so the identity
 * is enforced at exact_eq even on the Monte Carlo path.
 */
inline CheckResult check_copolar_add(const CapacityReport& rep) {
    CheckResult res{"copolar_add"};
    const ExperimentConfig& cfg = rep.config;
    const int n = cfg.n;
    const double fact = detail::factorial(n);
    const HalfSpaceSet p0 = copolar(rep.q0);
    const HalfSpaceSet p1 = copolar(rep.q1);
    const CovolumeResult cov0 = covolume(p0, cfg.method, cfg.samples, cfg.seed);
    const CovolumeResult cov1 = covolume(p1, cfg.method, cfg.samples, cfg.seed);
    const double lhs0 = std::pow(cfg.c0, n + 1) * cov0.value;
    const double lhs1 = std::pow(cfg.c1, n + 1) * cov1.value;
    res.pass = true;
    res.worst = std::numeric_limits<double>::infinity();
    for (const auto& row : rep.rows) {
        if (!row.ok()) continue;
        const HalfSpaceSet pt = copolar_add(p0, p1, row.t);
        if (p0.size() == 1 && p1.size() == 1 && pt.size() != 1) {
            res.pass = false;
            res.detail = "copolar sum of cosimplices is not a cosimplex";
            continue;
        }
        const CovolumeResult cv = covolume(pt, cfg.method, cfg.samples, cfg.seed);
        const double dict = std::abs(fact * cv.value - row.cap);
        if (dict > cfg.tolerances.exact_eq * std::max(1.0, row.cap)) {
            res.pass = false;
            res.detail = "dictionary identity violated at t=" + std::to_string(row.t);
        }
        const double sigma = (1.0 - row.t) * std::pow(cfg.c0, n + 1) * cov0.std_err +
                             row.t * std::pow(cfg.c1, n + 1) * cov1.std_err +
                             std::pow(row.c_t, n + 1) * cv.std_err;
        const double slack = (1.0 - row.t) * lhs0 + row.t * lhs1 -
                             std::pow(row.c_t, n + 1) * cv.value;
        res.worst = std::min(res.worst, slack);
        if (slack < -(cfg.tolerances.ineq_slack + 3.0 * sigma)) {
            res.pass = false;
            res.detail = "covolume inequality violated at t=" + std::to_string(row.t);
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// CSV report
// ---------------------------------------------------------------------------

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

inline std::string to_csv(const CapacityReport& rep) {
    std::string out = "t,c_t,cap,covol,V,rho,bm_slack,logconv_slack,std_err\n";
    for (const auto& r : rep.rows) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        const bool ok = r.ok();
        out += detail::fmt17(r.t);
        out += ',';
        out += detail::fmt17(r.c_t);
        for (double v : {ok ? r.cap : nan, ok ? r.covol : nan, ok ? r.V : nan, ok ? r.rho : nan,
                         ok ? r.bm_slack : nan, ok ? r.logconv_slack : nan,
                         ok ? r.std_err : nan}) {
            out += ',';
            out += detail::fmt17(v);
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random suite
// ---------------------------------------------------------------------------

/// Random reduced set with 1-4 generators, coordinates uniform in [-3, -0.2];
/// keeps every instance on the exact covolume path for n <= 3.
inline GeneratorSet random_generator_set(rng::Stream& stream, int dim) {
    const int count = 1 + static_cast<int>(stream.next_below(4));
    std::vector<Point> gens;
    gens.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Point g(static_cast<std::size_t>(dim));
        for (auto& v : g) v = stream.next_in(-3.0, -0.2);
        gens.push_back(std::move(g));
    }
    return reduce(GeneratorSet(dim, std::move(gens), 0.2));
}

struct SelftestOptions {
    int instances = 100;
    std::uint64_t seed = 1;
    double tol = 1e-9;
};

struct SelftestReport {
    bool pass = true;
    int instances_run = 0;
    std::string failure;  ///< dump of the first offending instance
};

/**
 * @brief Randomized property suite: copolar involution, the capacity scaling
 *        law, the weighted inequality with arbitrary weights, concavity and
 *        log-convexity under equilibration, and the covolume dictionary.
 *
 * Stops at the first violation and reports the offending instance as JSON.
 */
inline SelftestReport run_selftest(const SelftestOptions& opts) {
    SelftestReport rep;
    rng::Stream stream(opts.seed);
    for (int inst = 0; inst < opts.instances; ++inst) {
        const int n = 1 + static_cast<int>(stream.next_below(3));
        const GeneratorSet q0 = random_generator_set(stream, n);
        const GeneratorSet q1 = random_generator_set(stream, n);
        const double c0 = stream.next_in(0.5, 2.0);
        const double c1 = stream.next_in(0.5, 2.0);
        const double lam = stream.next_in(0.5, 2.0);

        ExperimentConfig cfg{n, ReinhardtSpec::make_log_generators(q0),
                             ReinhardtSpec::make_log_generators(q1)};
        cfg.weight_mode = WeightMode::explicit_weights;
        cfg.c0 = c0;
        cfg.c1 = c1;
        cfg.t_grid = uniform_grid(11);
        cfg.tolerances.ineq_slack = opts.tol;

        const auto fail = [&](const std::string& why) {
            rep.pass = false;
            rep.failure = "instance " + std::to_string(inst) + ": " + why + "\n" +
                          config_to_json(cfg).dump(2);
            rep.instances_run = inst + 1;
        };

        for (const GeneratorSet* q : {&q0, &q1}) {
            const GeneratorSet back = copolar_inverse(copolar(*q));
            auto a = q->generators();
            auto b = back.generators();
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            bool same = a.size() == b.size();
            for (std::size_t i = 0; same && i < a.size(); ++i)
                for (std::size_t k = 0; same && k < a[i].size(); ++k)
                    same = std::abs(a[i][k] - b[i][k]) <= 1e-12;
            if (!same) {
                fail("copolar involution broke");
                return rep;
            }
        }

        const double cap_base = capacity(q0).value;
        const double cap_scaled = capacity(scale(q0, lam)).value;
        if (std::abs(cap_scaled - std::pow(lam, -n) * cap_base) >
            1e-9 * std::max(1.0, cap_base)) {
            fail("capacity scaling law broke (lambda=" + std::to_string(lam) + ")");
            return rep;
        }

        const CapacityReport curve = run_capacity_curve(cfg);
        const CheckResult bm = check_weighted_bm(curve);
        if (!bm.pass) {
            fail("weighted_bm: " + bm.detail);
            return rep;
        }
        const CheckResult dict = check_copolar_add(curve);
        if (!dict.pass) {
            fail("copolar_add: " + dict.detail);
            return rep;
        }

        ExperimentConfig eq = cfg;
        eq.weight_mode = WeightMode::equilibrated;
        const CapacityReport eq_curve = run_capacity_curve(eq);
        const ConcavityResult conc = check_concavity(eq_curve);
        if (!conc.pass) {
            fail("concavity: max second difference " +
                 std::to_string(conc.max_second_difference));
            return rep;
        }
        const CheckResult lc = check_logconvexity(eq_curve);
        if (!lc.pass) {
            fail("logconvexity: " + lc.detail);
            return rep;
        }
        rep.instances_run = inst + 1;
    }
    return rep;
}

}  // namespace toricap
