// Command-line front end: capacities, covolumes and volumes of toric sets,
// capacity curves over a t-grid, the inequality checks, and the randomized
// self-test suite.
//
// Exit codes: 0 pass, 1 inequality violation, 2 invalid input,
// 3 numeric failure.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "toricap/harness.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNumericFailure = 3;

struct CommonOptions {
    std::string method;
    std::optional<long long> samples;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--method", opts.method, "exact|mc")
        ->check(CLI::IsMember({"exact", "mc", "monte_carlo"}));
    cmd->add_option("--samples", opts.samples, "Monte Carlo sample count");
    cmd->add_option("--seed", opts.seed, "Monte Carlo / suite seed");
    cmd->add_option("--tol", opts.tol, "inequality slack tolerance");
}

void apply_overrides(toricap::ExperimentConfig& cfg, const CommonOptions& opts) {
    if (!opts.method.empty()) cfg.method = toricap::parse_method(opts.method);
    if (opts.samples) cfg.samples = *opts.samples;
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.tol) cfg.tolerances.ineq_slack = *opts.tol;
}

toricap::VolumeMethod method_or(const CommonOptions& opts, toricap::VolumeMethod fallback) {
    return opts.method.empty() ? fallback : toricap::parse_method(opts.method);
}

void print_result(const char* label, const toricap::CovolumeResult& r) {
    std::printf("%s = %.17g\n", label, r.value);
    if (r.method == toricap::VolumeMethod::monte_carlo) {
        std::printf("method = monte_carlo\nstd_err = %.17g\nsamples = %lld\n", r.std_err,
                    r.samples);
    } else {
        std::printf("method = exact\n");
    }
}

int run_capacity(const std::string& path, const CommonOptions& opts, bool covolume_only) {
    const toricap::ReinhardtSpec spec = toricap::load_set(path);
    const toricap::GeneratorSet q = toricap::reduce(toricap::log_image(spec));
    const auto method = method_or(opts, toricap::VolumeMethod::exact);
    const long long samples = opts.samples.value_or(1000000);
    const std::uint64_t seed = opts.seed.value_or(12345);
    if (covolume_only) {
        const auto r = toricap::covolume(toricap::copolar(q), method, samples, seed);
        print_result("covolume", r);
    } else {
        const auto r = toricap::capacity(q, method, samples, seed);
        print_result("capacity", r);
    }
    return kExitPass;
}

int run_volume(const std::string& path, const CommonOptions& opts) {
    const toricap::ReinhardtSpec spec = toricap::load_set(path);
    const long long samples = opts.samples.value_or(1000000);
    const std::uint64_t seed = opts.seed.value_or(12345);
    toricap::CovolumeResult r;
    if (opts.method.empty()) {
        r = toricap::volume_auto(spec, samples, seed);
    } else {
        r = toricap::volume(spec, toricap::parse_method(opts.method), samples, seed);
    }
    print_result("volume", r);
    return kExitPass;
}

int run_curve(const std::string& path, const std::string& csv_path,
              const CommonOptions& opts) {
    toricap::ExperimentConfig cfg = toricap::load_config(path);
    apply_overrides(cfg, opts);
    const toricap::CapacityReport rep = toricap::run_capacity_curve(cfg);
    const std::string csv = toricap::to_csv(rep);
    if (csv_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output file: " + csv_path);
        out << csv;
        std::printf("wrote %s\n", csv_path.c_str());
    }
    for (const auto& row : rep.rows) {
        if (!row.ok()) {
            std::fprintf(stderr, "numeric failure at t=%.17g: %s\n", row.t, row.error.c_str());
            return kExitNumericFailure;
        }
    }
    return kExitPass;
}

void print_check(const std::string& name, bool pass, double worst) {
    std::printf("[%s] %-18s worst slack = %.3e\n", pass ? "pass" : "FAIL", name.c_str(), worst);
}

int run_check(const std::string& path, const CommonOptions& opts) {
    toricap::ExperimentConfig cfg = toricap::load_config(path);
    apply_overrides(cfg, opts);
    const toricap::CapacityReport rep = toricap::run_capacity_curve(cfg);

    const auto bm = toricap::check_weighted_bm(rep);
    const auto lc = toricap::check_logconvexity(rep);
    const auto ca = toricap::check_copolar_add(rep);
    const auto vol = toricap::check_volume_reverse_bm(cfg);

    // Concavity is defined for equilibrated weights; for explicit-weight
    // configs it is checked on an equilibrated re-run of the same pair.
    toricap::ConcavityResult conc;
    if (cfg.weight_mode == toricap::WeightMode::equilibrated) {
        conc = toricap::check_concavity(rep);
    } else {
        toricap::ExperimentConfig eq = cfg;
        eq.weight_mode = toricap::WeightMode::equilibrated;
        conc = toricap::check_concavity(toricap::run_capacity_curve(eq));
    }

    print_check("weighted_bm", bm.pass, bm.worst);
    print_check("concavity", conc.pass, conc.max_second_difference);
    print_check("logconvexity", lc.pass, lc.worst);
    print_check("volume_reverse_bm", vol.pass, vol.worst);
    print_check("copolar_add", ca.pass, ca.worst);
    std::printf("equality_case = %s\n", rep.summary.equality_case ? "true" : "false");

    const bool violated = !bm.pass || !conc.pass || !lc.pass || !vol.pass || !ca.pass;
    if (violated) {
        std::fprintf(stderr, "offending instance:\n%s\n",
                     toricap::config_to_json(rep.config).dump(2).c_str());
        for (const auto& c : {bm, lc, ca, vol}) {
            if (!c.pass && !c.detail.empty())
                std::fprintf(stderr, "%s: %s\n", c.name.c_str(), c.detail.c_str());
        }
        return kExitViolation;
    }
    for (const auto& row : rep.rows) {
        if (!row.ok()) {
            std::fprintf(stderr, "numeric failure at t=%.17g: %s\n", row.t, row.error.c_str());
            return kExitNumericFailure;
        }
    }
    return kExitPass;
}

int run_selftest(int count, const CommonOptions& opts) {
    toricap::SelftestOptions sopts;
    sopts.instances = count;
    if (opts.seed) sopts.seed = *opts.seed;
    if (opts.tol) sopts.tol = *opts.tol;
    const toricap::SelftestReport rep = toricap::run_selftest(sopts);
    if (!rep.pass) {
        std::fprintf(stderr, "selftest FAILED after %d instance(s):\n%s\n", rep.instances_run,
                     rep.failure.c_str());
        return kExitViolation;
    }
    std::printf("selftest passed (%d instances, seed %llu)\n", rep.instances_run,
                static_cast<unsigned long long>(sopts.seed));
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capacities of toric compact sets via covolumes and copolar duality"};
    app.require_subcommand(1);

    std::string set_path, config_path, csv_path;
    int selftest_count = 100;
    CommonOptions opts;

    auto* cap = app.add_subcommand("capacity", "capacity of a toric set");
    cap->add_option("set", set_path, "set JSON file")->required();
    add_common(cap, opts);

    auto* cov = app.add_subcommand("covolume", "covolume of the copolar of the log-image");
    cov->add_option("set", set_path, "set JSON file")->required();
    add_common(cov, opts);

    auto* vol = app.add_subcommand("volume", "Euclidean volume of a toric set");
    vol->add_option("set", set_path, "set JSON file")->required();
    add_common(vol, opts);

    auto* curve = app.add_subcommand("curve", "capacity curve over a t-grid");
    curve->add_option("config", config_path, "experiment config JSON")->required();
    curve->add_option("--csv", csv_path, "write the curve to this CSV file");
    add_common(curve, opts);

    auto* check = app.add_subcommand("check", "run all inequality checks");
    check->add_option("config", config_path, "experiment config JSON")->required();
    add_common(check, opts);

    auto* self = app.add_subcommand("selftest", "randomized property suite");
    self->add_option("--count", selftest_count, "number of random instances");
    add_common(self, opts);

    try {
        app.parse(argc, argv);
        if (cap->parsed()) return run_capacity(set_path, opts, false);
        if (cov->parsed()) return run_capacity(set_path, opts, true);
        if (vol->parsed()) return run_volume(set_path, opts);
        if (curve->parsed()) return run_curve(config_path, csv_path, opts);
        if (check->parsed()) return run_check(config_path, opts);
        if (self->parsed()) return run_selftest(selftest_count, opts);
        return kExitInvalidInput;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitInvalidInput;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return kExitInvalidInput;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return kExitNumericFailure;
    }
}
