// lagrep command-line front end: builds the frequency-uniform series
// representation for -u'' + q u = w^2 u and reproduces the standard
// constant-potential experiment battery.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lagrep/experiment.hpp"
#include "lagrep/repro.hpp"

namespace {

// exit codes: 0 ok, 2 usage, 3 potential parse, 4 numeric/domain,
// 5 io, 6 validation failure
constexpr int kExitParse = 3;
constexpr int kExitDomain = 4;
constexpr int kExitIo = 5;
constexpr int kExitValidation = 6;

struct CommonOpts {
    std::string potential = "one";
    double d = 1.0;
    std::size_t grid = 5001;
    int N = 100;
    std::string omega = "0";
    std::string shift;
    std::string out = "lagrep_out";
    std::string format = "csv";
    std::string config;
    std::size_t x_stride = 1;
    double rk_tol = 1e-12;
};

void add_common(CLI::App* app, CommonOpts& o) {
    app->add_option("--potential", o.potential,
                    "potential q(x): expression, builtin name, or @file.csv");
    app->add_option("--d", o.d, "interval length (solves on [0, d])");
    app->add_option("--grid", o.grid, "number of grid nodes");
    app->add_option("--N", o.N, "series truncation order");
    app->add_option("--omega", o.omega, "omega: v | re,im | v1;v2;... | min:max:count[:log]");
    app->add_option("--shift", o.shift, "spectral shift lambda[,omega0_im]");
    app->add_option("--out", o.out, "output directory");
    app->add_option("--format", o.format, "output format (csv)");
    app->add_option("--config", o.config, "reload configuration from a manifest.json");
    app->add_option("--x-stride", o.x_stride, "x subsampling stride for sweep error evaluation");
    app->add_option("--rk-tol", o.rk_tol, "oracle tolerance for nonconstant potentials");
}

lagrep::ExperimentConfig to_config(const CLI::App* app, const CommonOpts& o,
                                   std::vector<std::string> outputs) {
    lagrep::ExperimentConfig cfg;
    if (!o.config.empty()) cfg = lagrep::load_config_from_manifest(o.config);
    const auto used = [&](const std::string& flag) { return app->count(flag) > 0; };
    if (o.config.empty() || used("--potential")) cfg.potential_spec = o.potential;
    if (o.config.empty() || used("--d")) cfg.d = o.d;
    if (o.config.empty() || used("--grid")) cfg.grid_size = o.grid;
    if (o.config.empty() || used("--N")) cfg.N = o.N;
    if (o.config.empty() || used("--omega")) cfg.omega = lagrep::OmegaSpec::parse(o.omega);
    if (o.config.empty() || used("--out")) cfg.out_dir = o.out;
    if (o.config.empty() || used("--format")) cfg.format = o.format;
    if (o.config.empty() || used("--x-stride")) cfg.x_stride = o.x_stride;
    if (o.config.empty() || used("--rk-tol")) cfg.rk_tol = o.rk_tol;
    if (used("--shift") || (o.config.empty() && !o.shift.empty())) {
        lagrep::ShiftSpec s;
        const std::size_t comma = o.shift.find(',');
        s.lambda = std::stod(o.shift.substr(0, comma));
        if (comma != std::string::npos) s.omega0_im = std::stod(o.shift.substr(comma + 1));
        cfg.shift = s;
    }
    if (!outputs.empty()) cfg.outputs = std::move(outputs);
    return cfg;
}

void print_report(const lagrep::ExperimentReport& report) {
    for (const auto& t : report.timings)
        std::printf("  %-22s %10.1f ms\n", t.stage.c_str(), t.ms);
    for (const auto& [k, v] : report.scalars)
        std::printf("  %-32s %s\n", k.c_str(), lagrep::format_double(v).c_str());
    for (const auto& f : report.files_written) std::printf("  wrote %s\n", f.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frequency-uniform series solver for -u'' + q(x) u = w^2 u on [0, d]"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* coeffs = app.add_subcommand("coeffs", "build coefficients and their diagnostics");
    add_common(coeffs, o);
    std::vector<std::string> coeff_outputs = {"decay", "sum_rule"};
    coeffs->add_option("--outputs", coeff_outputs,
                       "artifacts: coefficients, decay, sum_rule, all");

    auto* solve = app.add_subcommand("solve", "evaluate u_N at given omega(s)");
    add_common(solve, o);

    auto* sweep = app.add_subcommand("sweep", "error-vs-omega sweep against the oracle");
    add_common(sweep, o);

    auto* kernel = app.add_subcommand("kernel", "kernel slice A(x, x-t) and moments");
    add_common(kernel, o);
    double kernel_x = 1.0;
    int kernel_jmax = 1;
    std::string kernel_t = "0:8:161";
    kernel->add_option("--x", kernel_x, "slice position x");
    kernel->add_option("--t", kernel_t, "t grid: min:max:count");
    kernel->add_option("--moments", kernel_jmax, "compute moments j = 0..jmax");

    auto* validate = app.add_subcommand("validate", "run invariant checks for a potential");
    add_common(validate, o);

    auto* repro = app.add_subcommand(
        "repro-example1", "run the constant-potential battery and check acceptance thresholds");
    add_common(repro, o);
    bool quick = false;
    repro->add_flag("--quick", quick, "skip the large-N stages (smoke mode)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (coeffs->parsed()) {
            auto cfg = to_config(coeffs, o, coeff_outputs);
            auto report = lagrep::run_experiment(cfg, "coeffs");
            print_report(report);
            return 0;
        }
        if (solve->parsed()) {
            auto cfg = to_config(solve, o, {"solution"});
            auto report = lagrep::run_experiment(cfg, "solve");
            print_report(report);
            return 0;
        }
        if (sweep->parsed()) {
            auto cfg = to_config(sweep, o, {"sweep"});
            auto report = lagrep::run_experiment(cfg, "sweep");
            print_report(report);
            return 0;
        }
        if (kernel->parsed()) {
            auto cfg = to_config(kernel, o, {});
            return lagrep::run_kernel_command(cfg, kernel_x, kernel_t, kernel_jmax);
        }
        if (validate->parsed()) {
            auto cfg = to_config(validate, o, {});
            const bool ok = lagrep::run_validate_command(cfg);
            return ok ? 0 : kExitValidation;
        }
        if (repro->parsed()) {
            auto cfg = to_config(repro, o, {});
            const bool ok = lagrep::run_repro_example1(cfg.out_dir, quick);
            return ok ? 0 : kExitValidation;
        }
    } catch (const lagrep::PotentialParseError& e) {
        std::cerr << "potential parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
