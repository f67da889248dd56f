#include "lagrep/repro.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "lagrep/laguerre.hpp"
#include "lagrep/oracles.hpp"

namespace lagrep {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct SweepErrors {
    std::vector<cplx> omegas;
    std::vector<double> max_abs;       // max over x per omega
    std::vector<double> max_rel;
    std::vector<double> end_abs;       // error at x = d per omega
    double peak = 0.0;                 // max over omegas of max_abs
    double peak_omega = 0.0;
    double elapsed_s = 0.0;
};

// lazily built shared stages of the battery
class Battery {
public:
    explicit Battery(const std::string& out_dir) : out_dir_(out_dir) {
        grid_ = make_uniform_grid(1.0, 5001);
        q_ = PotentialProfile(grid_, std::vector<double>(grid_.size(), 1.0));
    }

    const Grid& grid() const { return grid_; }
    const PotentialProfile& q() const { return q_; }
    const std::string& out_dir() const { return out_dir_; }

    std::shared_ptr<const ParticularBasis> basis() {
        if (!basis_) basis_ = std::make_shared<const ParticularBasis>(build_particular_basis(q_));
        return basis_;
    }

    const std::vector<cplx>& omega_grid() {
        if (omegas_.empty()) omegas_ = log_linear_omega_grid(1000.0, 1001, 500);
        return omegas_;
    }

    const SweepErrors& sweep100() {
        if (!sweep100_) sweep100_ = run_sweep(100);
        return *sweep100_;
    }

    const SweepErrors& sweep10k() {
        if (!sweep10k_) sweep10k_ = run_sweep(10000);
        return *sweep10k_;
    }

    const StreamDiagnostics& stream100k() {
        if (!stream100k_) {
            stream100k_ =
                stream_coefficients(basis(), 100000, {0, 10, 100, 1000, 10000, 100000});
        }
        return *stream100k_;
    }

    SweepErrors run_sweep(int N) {
        const auto t0 = Clock::now();
        const auto& omegas = omega_grid();
        SweepSolutions sols = (N <= 2000)
                                  ? sweep_solutions(coefficients(N), omegas, N)
                                  : sweep_solutions(basis(), omegas, N);
        SweepErrors se;
        se.omegas = omegas;
        se.max_abs.assign(omegas.size(), 0.0);
        se.max_rel.assign(omegas.size(), 0.0);
        se.end_abs.assign(omegas.size(), 0.0);
        const std::size_t msel = sols.x_indices.size();
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t ws = 0; ws < static_cast<std::ptrdiff_t>(omegas.size()); ++ws) {
            const auto w = static_cast<std::size_t>(ws);
            const OracleSolution oracle = constant_q_solution(1.0, omegas[w], grid_);
            double ma = 0.0, mr = 0.0;
            for (std::size_t i = 0; i < msel; ++i) {
                const cplx o = oracle.values[sols.x_indices[i]];
                const double e = std::abs(sols.value(w, i) - o);
                ma = std::max(ma, e);
                mr = std::max(mr, e / std::max(1e-300, std::abs(o)));
            }
            se.max_abs[w] = ma;
            se.max_rel[w] = mr;
            se.end_abs[w] = std::abs(sols.value(w, msel - 1) - oracle.values[grid_.size() - 1]);
        }
        for (std::size_t w = 0; w < omegas.size(); ++w) {
            if (se.max_abs[w] > se.peak) {
                se.peak = se.max_abs[w];
                se.peak_omega = omegas[w].real();
            }
        }
        se.elapsed_s = seconds_since(t0);
        if (!out_dir_.empty())
            write_sweep_csv(out_dir_, "sweep_N" + std::to_string(N) + ".csv", omegas, se.max_abs,
                            se.max_rel);
        return se;
    }

    const CoefficientTable& coefficients(int N) {
        if (!table_ || table_->max_index() < N) table_ = coefficients_recurrent(basis(), N);
        return *table_;
    }

    // error of the sweep at omega = +-target
    static std::pair<double, double> errors_at(const SweepErrors& se, double target,
                                               bool endpoint) {
        double pos = 0.0, neg = 0.0;
        for (std::size_t w = 0; w < se.omegas.size(); ++w) {
            const double re = se.omegas[w].real();
            const double e = endpoint ? se.end_abs[w] : se.max_abs[w];
            if (std::abs(re - target) < 1e-9) pos = std::max(pos, e);
            if (std::abs(re + target) < 1e-9) neg = std::max(neg, e);
        }
        return {pos, neg};
    }

private:
    std::string out_dir_;
    Grid grid_;
    PotentialProfile q_;
    std::shared_ptr<const ParticularBasis> basis_;
    std::vector<cplx> omegas_;
    std::optional<SweepErrors> sweep100_;
    std::optional<SweepErrors> sweep10k_;
    std::optional<StreamDiagnostics> stream100k_;
    std::optional<CoefficientTable> table_;
};

CheckResult criterion_1(Battery& b) {
    const SweepErrors& se = b.sweep100();
    const auto [pos_end, neg_end] = Battery::errors_at(se, 1000.0, true);
    const auto [pos_max, neg_max] = Battery::errors_at(se, 1000.0, false);
    const double end_err = std::max(pos_end, neg_end);
    const double maxx_err = std::max(pos_max, neg_max);
    const bool pass = se.peak <= 5e-3 && end_err <= 1e-5 && se.elapsed_s < 60.0;
    return {1, "omega-sweep accuracy, N=100",
            pass,
            fmt("max err over x,omega = %.3e (<= 5e-3); err@|omega|=1000 at x=d = %.3e (<= 1e-5),"
                " max over x = %.3e; runtime %.1fs (< 60s)",
                se.peak, end_err, maxx_err, se.elapsed_s)};
}

CheckResult criterion_2(Battery& b) {
    const SweepErrors& se = b.sweep100();
    const auto [pos_max, neg_max] = Battery::errors_at(se, 1000.0, false);
    const double err1000 = std::max(pos_max, neg_max);
    const double ratio = se.peak / std::max(1e-300, err1000);
    const double loc = std::abs(se.peak_omega);
    const bool pass = loc >= 2.0 && loc <= 50.0 && ratio >= 100.0;
    return {2, "error peak near the origin, N=100", pass,
            fmt("argmax at |omega| = %.3g (in [2, 50]); peak/err(1000) = %.1f (>= 100)", loc,
                ratio)};
}

CheckResult criterion_3(Battery& b) {
    const double peak100 = b.sweep100().peak;
    const SweepErrors& se = b.sweep10k();
    const double loc = std::abs(se.peak_omega);
    const bool pass = se.peak <= peak100 / 10.0 && loc >= 20.0 && loc <= 300.0 &&
                      se.elapsed_s < 600.0;
    return {3, "large-N sweep, N=10^4", pass,
            fmt("max err = %.3e (<= %.3e = N=100 peak / 10); argmax at |omega| = %.3g"
                " (in [20, 300]); runtime %.0fs (< 600s, incl. coefficient build)",
                se.peak, peak100 / 10.0, loc, se.elapsed_s)};
}

CheckResult criterion_4(Battery& b) {
    const cplx omega(0.0, -0.25);
    const CoefficientTable& table = b.coefficients(30);
    const SolutionEvaluation ev = evaluate_solution(table, omega, 30);
    const OracleSolution oracle = constant_q_solution(1.0, omega, b.grid());
    double abs_err = 0.0, rel_err = 0.0;
    for (std::size_t j = 0; j < b.grid().size(); ++j) {
        const double e = std::abs(ev.values[j] - oracle.values[j]);
        abs_err = std::max(abs_err, e);
        rel_err = std::max(rel_err, e / std::abs(oracle.values[j]));
    }
    if (!b.out_dir().empty())
        write_solution_csv(b.out_dir(), "solution_omega_m0.25i_N30.csv", b.grid(),
                           ev.values.values(), oracle.values.values());
    const bool pass = abs_err <= 1e-12 && rel_err <= 1e-12;
    return {4, "complex-omega fast convergence, omega=-i/4, N=30", pass,
            fmt("max abs err = %.3e, max rel err = %.3e (both <= 1e-12)", abs_err, rel_err)};
}

CheckResult criterion_5(Battery& b) {
    // omega^2 = -100.0625 via omega0 = -i/4, lambda = 100
    const cplx omega_target(0.0, -std::sqrt(100.0625));
    ShiftOptions opts;
    opts.omega0 = cplx(0.0, -0.25);
    const ShiftedSolveResult res = shifted_solve(b.q(), omega_target, 30, 100.0, opts);
    const OracleSolution oracle = constant_q_solution(101.0, res.omega0, b.grid());
    double abs_err = 0.0, rel_err = 0.0;
    for (std::size_t j = 0; j < b.grid().size(); ++j) {
        const double e = std::abs(res.eval.values[j] - oracle.values[j]);
        abs_err = std::max(abs_err, e);
        rel_err = std::max(rel_err, e / std::abs(oracle.values[j]));
    }
    if (!b.out_dir().empty())
        write_solution_csv(b.out_dir(), "solution_shifted_N30.csv", b.grid(),
                           res.eval.values.values(), oracle.values.values());
    const bool pass = rel_err <= 1e-12;
    return {5, "spectral shift, omega^2=-100.0625, N=30", pass,
            fmt("max rel err = %.3e (<= 1e-12); max abs err = %.3e (|u| ~ 1.2e4; eps-limited)",
                rel_err, abs_err)};
}

CheckResult criterion_6(Battery& b) {
    const auto& diag = b.stream100k();
    const double r100 = diag.residual_at.at(100);
    const double r1k = diag.residual_at.at(1000);
    const double r10k = diag.residual_at.at(10000);
    const bool pass = r100 > r1k && r1k > r10k && r10k <= r100 / 5.0;
    return {6, "sum rule residual decreasing", pass,
            fmt("residual(10^2)=%.4e > residual(10^3)=%.4e > residual(10^4)=%.4e;"
                " factor 10^2->10^4 = %.1f (>= 5)",
                r100, r1k, r10k, r100 / r10k)};
}

CheckResult criterion_7(Battery& b) {
    const auto& diag = b.stream100k();
    const double r10k = diag.residual_at.at(10000);
    const double r100k = diag.residual_at.at(100000);
    if (!b.out_dir().empty()) {
        write_decay_csv(b.out_dir(), diag.decay);
        write_sum_rule_csv(b.out_dir(), diag.residual_at);
    }
    const bool pass = r100k <= r10k;
    return {7, "streaming build of 10^5 coefficients", pass,
            fmt("residual(10^5)=%.4e <= residual(10^4)=%.4e; streaming (two rows resident)",
                r100k, r10k)};
}

CheckResult criterion_8(Battery& b) {
    const char* potentials[] = {"1", "x", "x^2 + sin(3*x)"};
    double worst = 0.0;
    std::string worst_q = "";
    for (const char* pspec : potentials) {
        const PotentialProfile q = PotentialExpr::parse(pspec).sample(b.grid());
        auto basis = std::make_shared<const ParticularBasis>(build_particular_basis(q));
        const FormalPowers fp = build_formal_powers(basis, 21);
        const CoefficientTable direct = coefficients_direct(fp, 20);
        const CoefficientTable recurrent = coefficients_recurrent(basis, 20);
        for (int n = 0; n <= 20; ++n) {
            const double dn = direct.a[static_cast<std::size_t>(n)].max_abs_diff(
                recurrent.a[static_cast<std::size_t>(n)]);
            if (dn > worst) {
                worst = dn;
                worst_q = pspec;
            }
        }
    }
    const bool pass = worst <= 1e-8;
    return {8, "direct/recurrent coefficient equivalence, n<=20", pass,
            fmt("max sup-norm disagreement = %.3e (<= 1e-8), worst at q = %s", worst,
                worst_q.c_str())};
}

CheckResult criterion_9(Battery& b) {
    // (a) omega = 0 collapses to f0
    const CoefficientTable& table = b.coefficients(100);
    const SolutionEvaluation at0 = evaluate_solution(table, 0.0, 100);
    const double err_f0 = at0.values.max_abs_diff(b.basis()->f0);
    // (b) q = 0 gives exp(-i omega x)
    const PotentialProfile q0(b.grid(), std::vector<double>(b.grid().size(), 0.0));
    auto basis0 = std::make_shared<const ParticularBasis>(build_particular_basis(q0));
    const CoefficientTable table0 = coefficients_recurrent(basis0, 50);
    double err_exp = 0.0;
    for (double w : {1.0, 10.0, 100.0}) {
        const SolutionEvaluation ev = evaluate_solution(table0, w, 50);
        const OracleSolution oracle = constant_q_solution(0.0, w, b.grid());
        err_exp = std::max(err_exp, ev.values.max_abs_diff(oracle.values));
    }
    // (c) a_n(0) = 0 exactly
    double a0_mag = 0.0;
    for (const auto& row : table.a) a0_mag = std::max(a0_mag, std::abs(row[0]));
    for (const auto& row : table0.a) a0_mag = std::max(a0_mag, std::abs(row[0]));
    const bool pass = err_f0 <= 1e-13 && err_exp <= 1e-12 && a0_mag == 0.0;
    return {9, "identity collapses", pass,
            fmt("|u(0,.) - f0| = %.3e (<= 1e-13); q=0: |u - e^{-iwx}| = %.3e (<= 1e-12)"
                " for w in {1,10,100}; max |a_n(0)| = %.1e (= 0 exactly)",
                err_f0, err_exp, a0_mag)};
}

CheckResult criterion_10(Battery& b) {
    const CoefficientTable& table = b.coefficients(200);
    const FormalPowers fp = build_formal_powers(b.basis(), 80);
    double worst = 0.0, worst_omega = 0.0;
    std::ostringstream samples;
    for (int i = 0; i <= 20; ++i) {
        const double w = -5.0 + 0.5 * i;
        const SolutionEvaluation lag = evaluate_solution(table, w, 200);
        const SppsSolution spps = spps_solution(fp, w, 80);
        const double e = lag.values.max_abs_diff(spps.values);
        if (std::abs(std::abs(w) - 5.0) < 1e-12 || std::abs(std::abs(w) - 3.0) < 1e-12 ||
            std::abs(std::abs(w) - 2.0) < 1e-12) {
            if (w > 0) samples << fmt(" e(%.0f)=%.1e", w, e);
        }
        if (e > worst) {
            worst = e;
            worst_omega = w;
        }
    }
    const bool pass = worst <= 1e-9;
    return {10, "SPPS cross-check, N=200 vs M=80, |omega|<=5", pass,
            fmt("max disagreement = %.3e at omega=%.1f (required <= 1e-9;%s;"
                " truncation tail |z|^N with |z|=|w|/sqrt(1+w^2) dominates above |omega|~2.5)",
                worst, worst_omega, samples.str().c_str())};
}

CheckResult criterion_11(Battery& b) {
    const CoefficientTable& table = b.coefficients(2000);
    const double ref0 = std::cosh(1.0) - 1.0;
    const double ref1 = std::sinh(1.0) - 1.0;
    const double m0 = std::abs(kernel_moment(table, 1.0, 0, 2000) - ref0) / ref0;
    const double m1 = std::abs(kernel_moment(table, 1.0, 1, 2000) - ref1) / ref1;
    double slice_err = 0.0;
    for (double x : {0.5, 1.0}) {
        const KernelSlice ks = kernel_slice(b.basis(), x, {0.0}, 10000);
        slice_err = std::max(slice_err, std::abs(ks.values[0] - 0.5 * x));
    }
    const bool pass = m0 <= 1e-6 && m1 <= 1e-6 && slice_err <= 1e-3;
    return {11, "kernel diagnostics", pass,
            fmt("moment relerr j=0: %.2e, j=1: %.2e (<= 1e-6, N=2000, x=1);"
                " slice(t=0, N=10^4) vs q-integral: %.2e (<= 1e-3, x in {0.5, 1})",
                m0, m1, slice_err)};
}

}  // namespace

BatteryResult run_example1_battery(const std::vector<int>& criteria, const std::string& out_dir,
                                   bool print) {
    Battery b(out_dir);
    std::vector<int> selected = criteria;
    if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};

    BatteryResult result;
    for (int c : selected) {
        CheckResult r;
        switch (c) {
            case 1: r = criterion_1(b); break;
            case 2: r = criterion_2(b); break;
            case 3: r = criterion_3(b); break;
            case 4: r = criterion_4(b); break;
            case 5: r = criterion_5(b); break;
            case 6: r = criterion_6(b); break;
            case 7: r = criterion_7(b); break;
            case 8: r = criterion_8(b); break;
            case 9: r = criterion_9(b); break;
            case 10: r = criterion_10(b); break;
            case 11: r = criterion_11(b); break;
            default: throw std::invalid_argument("unknown criterion number");
        }
        if (print) {
            std::printf("%-4s C%-2d %s: %s\n", r.pass ? "PASS" : "FAIL", r.criterion,
                        r.name.c_str(), r.detail.c_str());
            std::fflush(stdout);
        }
        result.checks.push_back(std::move(r));
    }
    return result;
}

bool run_repro_example1(const std::string& out_dir, bool quick) {
    std::vector<int> criteria;
    if (quick) criteria = {1, 2, 4, 5, 8, 9, 10};
    std::printf("constant-potential battery (q = 1 on [0,1], 5001 nodes)%s\n",
                quick ? " [quick mode: large-N checks skipped]" : "");

    // quadrature-convergence report at two grid sizes
    for (std::size_t m : {std::size_t{2001}, std::size_t{5001}}) {
        const Grid g = make_uniform_grid(1.0, m);
        const PotentialProfile q(g, std::vector<double>(m, 1.0));
        auto basis = std::make_shared<const ParticularBasis>(build_particular_basis(q));
        const CoefficientTable t = coefficients_recurrent(basis, 100);
        std::printf("  grid %5zu: sum-rule residual(N=100) = %s\n", m,
                    format_double(sum_rule_residual(t, 100)).c_str());
    }

    const BatteryResult r = run_example1_battery(criteria, out_dir, true);
    std::printf("%zu/%zu checks passed\n",
                static_cast<std::size_t>(std::count_if(r.checks.begin(), r.checks.end(),
                                                       [](const CheckResult& c) { return c.pass; })),
                r.checks.size());
    return r.all_pass();
}

int run_kernel_command(const ExperimentConfig& cfg, double x, const std::string& t_spec,
                       int jmax) {
    const PotentialExpr expr = PotentialExpr::parse(cfg.potential_spec);
    const Grid grid = make_uniform_grid(cfg.d, cfg.grid_size);
    const PotentialProfile q = expr.sample(grid);
    auto basis = std::make_shared<const ParticularBasis>(build_particular_basis(q));

    // t grid: min:max:count
    double tmin = 0.0, tmax = 8.0;
    std::size_t tcount = 161;
    {
        std::istringstream ss(t_spec);
        std::string a, bs, c;
        std::getline(ss, a, ':');
        std::getline(ss, bs, ':');
        std::getline(ss, c, ':');
        if (!a.empty()) tmin = std::stod(a);
        if (!bs.empty()) tmax = std::stod(bs);
        if (!c.empty()) tcount = std::stoul(c);
    }
    std::vector<double> ts(tcount);
    for (std::size_t i = 0; i < tcount; ++i)
        ts[i] = tmin + (tmax - tmin) * (tcount == 1 ? 0.0 : double(i) / double(tcount - 1));

    const KernelSlice ks = kernel_slice(basis, x, ts, cfg.N);
    std::string path;
    {
        namespace fsys = std::filesystem;
        fsys::create_directories(cfg.out_dir);
        path = (fsys::path(cfg.out_dir) / "kernel.csv").string();
        std::ofstream out(path, std::ios::binary);
        out << "t,re,im\n";
        for (std::size_t i = 0; i < ts.size(); ++i)
            out << format_double(ts[i]) << ',' << format_double(ks.values[i].real()) << ','
                << format_double(ks.values[i].imag()) << '\n';
    }
    std::printf("wrote %s (slice at x = %s)\n", path.c_str(), format_double(ks.x).c_str());

    if (jmax >= 0) {
        const int Nm = std::min(cfg.N, 4000);  // moment rule size stays manageable
        const CoefficientTable table = coefficients_recurrent(basis, Nm);
        const FormalPowers fp = build_formal_powers(basis, jmax);
        const std::size_t jx = static_cast<std::size_t>(
            std::llround(ks.x / grid.spacing()));
        namespace fsys = std::filesystem;
        const std::string mpath = (fsys::path(cfg.out_dir) / "kernel_moments.csv").string();
        std::ofstream out(mpath, std::ios::binary);
        out << "j,re,im,ref_re,ref_im,abs_err\n";
        for (int j = 0; j <= jmax; ++j) {
            const cplx mom = kernel_moment(table, ks.x, j, Nm);
            const cplx ref = fp.phi[static_cast<std::size_t>(j)].values()[jx] -
                             std::pow(cplx(ks.x, 0.0), j);
            out << j << ',' << format_double(mom.real()) << ',' << format_double(mom.imag())
                << ',' << format_double(ref.real()) << ',' << format_double(ref.imag()) << ','
                << format_double(std::abs(mom - ref)) << '\n';
        }
        std::printf("wrote %s (N = %d)\n", mpath.c_str(), Nm);
    }
    return 0;
}

bool run_validate_command(const ExperimentConfig& cfg) {
    const PotentialExpr expr = PotentialExpr::parse(cfg.potential_spec);
    const Grid grid = make_uniform_grid(cfg.d, cfg.grid_size);
    const PotentialProfile q = expr.sample(grid);
    auto basis = std::make_shared<const ParticularBasis>(build_particular_basis(q));

    bool all = true;
    const auto check = [&](const char* name, bool ok, const std::string& detail) {
        std::printf("%-4s %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
        all = all && ok;
    };

    check("wronskian", wronskian_defect(*basis) <= 1e-9,
          fmt("max |f0 f1' - f0' f1 - 1| = %.3e (<= 1e-9)", wronskian_defect(*basis)));

    const double min_f = [&] {
        double m = 1e300;
        for (const cplx& v : basis->f.values()) m = std::min(m, std::abs(v));
        return m;
    }();
    check("nonvanishing f", min_f > 0.0, fmt("min |f0 + i f1| = %.3e", min_f));

    const int K = 12;
    const FormalPowers fp = build_formal_powers(basis, K);
    const FormalPowers fp_direct = [&]() -> FormalPowers {
        try {
            return build_formal_powers(basis, K, FormalPowerPath::direct_f0);
        } catch (const std::domain_error&) {
            return FormalPowers{};  // f0 vanishes somewhere; conversion path only
        }
    }();
    if (!fp_direct.phi.empty()) {
        double dmax = 0.0;
        for (int k = 0; k <= K; ++k)
            dmax = std::max(dmax, fp.phi[static_cast<std::size_t>(k)].max_abs_diff(
                                      fp_direct.phi[static_cast<std::size_t>(k)]));
        check("formal-power paths agree", dmax <= 1e-9, fmt("max diff = %.3e (<= 1e-9)", dmax));
    }
    double phi0_err = 0.0;
    for (int k = 1; k <= K; ++k)
        phi0_err = std::max(phi0_err, std::abs(fp.phi[static_cast<std::size_t>(k)][0]));
    check("phi_k(0) = 0", phi0_err == 0.0, fmt("max |phi_k(0)| = %.1e", phi0_err));

    const int N = std::min(cfg.N, 1000);
    const CoefficientTable table = coefficients_recurrent(basis, N);
    const double a0_err = table.a[0].max_abs_diff(basis->f0 - cplx(1.0, 0.0));
    check("a_0 = f0 - 1", a0_err == 0.0, fmt("max diff = %.1e", a0_err));

    double an0 = 0.0;
    for (const auto& row : table.a) an0 = std::max(an0, std::abs(row[0]));
    check("a_n(0) = 0", an0 == 0.0, fmt("max |a_n(0)| = %.1e", an0));

    const SolutionEvaluation at0 = evaluate_solution(table, 0.0, N);
    check("u(omega=0) = f0", at0.values.max_abs_diff(basis->f0) <= 1e-12,
          fmt("max diff = %.3e (<= 1e-12)", at0.values.max_abs_diff(basis->f0)));

    const int Nd = std::min(N, 12);
    const FormalPowers fp_for_direct = build_formal_powers(basis, Nd + 1);
    const CoefficientTable direct = coefficients_direct(fp_for_direct, Nd);
    double dd = 0.0;
    for (int n = 0; n <= Nd; ++n)
        dd = std::max(dd, direct.a[static_cast<std::size_t>(n)].max_abs_diff(
                              table.a[static_cast<std::size_t>(n)]));
    check("direct vs recurrent (n<=12)", dd <= 1e-8, fmt("max sup diff = %.3e (<= 1e-8)", dd));

    return all;
}

}  // namespace lagrep
