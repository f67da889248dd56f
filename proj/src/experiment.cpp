#include "lagrep/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <type_traits>

#include <json.hpp>

namespace lagrep {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

class StageClock {
public:
    explicit StageClock(ExperimentReport& report) : report_(&report) {}

    template <typename F>
    auto time(const std::string& stage, F&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            record(stage, t0);
        } else {
            auto r = fn();
            record(stage, t0);
            return r;
        }
    }

private:
    void record(const std::string& stage, std::chrono::steady_clock::time_point t0) {
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        report_->timings.push_back({stage, ms});
    }

    ExperimentReport* report_;
};

bool wants(const ExperimentConfig& cfg, const std::string& artifact) {
    if (cfg.outputs.empty()) return false;
    for (const auto& o : cfg.outputs)
        if (o == artifact || o == "all") return true;
    return false;
}

std::ofstream open_out(const std::string& dir, const std::string& name, std::string& path_out) {
    fs::create_directories(dir);
    path_out = (fs::path(dir) / name).string();
    std::ofstream out(path_out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + path_out);
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::vector<cplx> OmegaSpec::expand() const {
    if (kind == Kind::list) return values;
    if (count < 1) throw std::invalid_argument("omega sweep needs at least one point");
    std::vector<cplx> out;
    out.reserve(count);
    if (log_spacing) {
        if (!(min > 0.0) || !(max > min))
            throw std::invalid_argument("log omega sweep needs 0 < min < max");
        const double lmin = std::log10(min), lmax = std::log10(max);
        for (std::size_t i = 0; i < count; ++i) {
            const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            out.emplace_back(std::pow(10.0, lmin + t * (lmax - lmin)), 0.0);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            out.emplace_back(min + t * (max - min), 0.0);
        }
    }
    return out;
}

OmegaSpec OmegaSpec::parse(const std::string& text) {
    OmegaSpec spec;
    if (text.find(':') != std::string::npos) {
        spec.kind = Kind::sweep;
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            const std::size_t p = text.find(':', start);
            parts.push_back(text.substr(start, p - start));
            if (p == std::string::npos) break;
            start = p + 1;
        }
        if (parts.size() < 3 || parts.size() > 4)
            throw std::invalid_argument("omega sweep must be min:max:count[:log]");
        spec.min = std::stod(parts[0]);
        spec.max = std::stod(parts[1]);
        spec.count = static_cast<std::size_t>(std::stoul(parts[2]));
        if (parts.size() == 4) {
            if (parts[3] == "log")
                spec.log_spacing = true;
            else if (parts[3] == "linear")
                spec.log_spacing = false;
            else
                throw std::invalid_argument("omega sweep spacing must be linear or log");
        }
        return spec;
    }
    spec.kind = Kind::list;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t p = text.find(';', start);
        std::string item = text.substr(start, p == std::string::npos ? p : p - start);
        if (!item.empty()) {
            const std::size_t comma = item.find(',');
            if (comma == std::string::npos)
                spec.values.emplace_back(std::stod(item), 0.0);
            else
                spec.values.emplace_back(std::stod(item.substr(0, comma)),
                                         std::stod(item.substr(comma + 1)));
        }
        if (p == std::string::npos) break;
        start = p + 1;
    }
    if (spec.values.empty()) throw std::invalid_argument("empty omega specification");
    return spec;
}

std::string OmegaSpec::to_string() const {
    if (kind == Kind::sweep) {
        std::string s = format_double(min) + ":" + format_double(max) + ":" +
                        std::to_string(count);
        if (log_spacing) s += ":log";
        return s;
    }
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ';';
        s += format_double(values[i].real());
        if (values[i].imag() != 0.0) s += "," + format_double(values[i].imag());
    }
    return s;
}

std::vector<cplx> log_linear_omega_grid(double max, std::size_t linear, std::size_t per_side,
                                        double log_min) {
    std::vector<cplx> omegas;
    omegas.reserve(linear + 2 * per_side);
    for (std::size_t i = 0; i < linear; ++i) {
        const double t = linear == 1 ? 0.0 : static_cast<double>(i) / (linear - 1);
        omegas.emplace_back(-max + 2.0 * max * t, 0.0);
    }
    const double lmin = std::log10(log_min), lmax = std::log10(max);
    for (std::size_t i = 0; i < per_side; ++i) {
        const double t = per_side == 1 ? 0.0 : static_cast<double>(i) / (per_side - 1);
        const double mag = std::pow(10.0, lmin + t * (lmax - lmin));
        omegas.emplace_back(mag, 0.0);
        omegas.emplace_back(-mag, 0.0);
    }
    std::sort(omegas.begin(), omegas.end(),
              [](const cplx& a, const cplx& b) { return a.real() < b.real(); });
    return omegas;
}

std::string write_decay_csv(const std::string& dir, const std::vector<double>& decay) {
    std::string path;
    auto out = open_out(dir, "decay.csv", path);
    out << "n,max_abs\n";
    for (std::size_t n = 0; n < decay.size(); ++n)
        out << n << ',' << format_double(decay[n]) << '\n';
    return path;
}

std::string write_sum_rule_csv(const std::string& dir, const std::map<int, double>& residuals) {
    std::string path;
    auto out = open_out(dir, "sum_rule.csv", path);
    out << "N,residual\n";
    for (const auto& [n, r] : residuals) out << n << ',' << format_double(r) << '\n';
    return path;
}

std::string write_coefficients_csv(const std::string& dir, const CoefficientTable& table) {
    std::string path;
    auto out = open_out(dir, "coefficients.csv", path);
    out << "n,x,re,im\n";
    const Grid& grid = table.grid();
    for (int n = 0; n <= table.max_index(); ++n) {
        const auto& row = table.a[static_cast<std::size_t>(n)].values();
        for (std::size_t j = 0; j < row.size(); ++j)
            out << n << ',' << format_double(grid.node(j)) << ',' << format_double(row[j].real())
                << ',' << format_double(row[j].imag()) << '\n';
    }
    return path;
}

std::string write_sweep_csv(const std::string& dir, const std::string& name,
                            const std::vector<cplx>& omegas,
                            const std::vector<double>& max_abs_err,
                            const std::vector<double>& max_rel_err) {
    std::string path;
    auto out = open_out(dir, name, path);
    out << "omega_re,omega_im,max_abs_err,max_rel_err\n";
    for (std::size_t i = 0; i < omegas.size(); ++i)
        out << format_double(omegas[i].real()) << ',' << format_double(omegas[i].imag()) << ','
            << format_double(max_abs_err[i]) << ',' << format_double(max_rel_err[i]) << '\n';
    return path;
}

std::string write_solution_csv(const std::string& dir, const std::string& name,
                               const Grid& grid, const std::vector<cplx>& u,
                               const std::vector<cplx>& oracle) {
    std::string path;
    auto out = open_out(dir, name, path);
    out << "x,re_u,im_u,re_oracle,im_oracle\n";
    for (std::size_t j = 0; j < u.size(); ++j) {
        out << format_double(grid.node(j)) << ',' << format_double(u[j].real()) << ','
            << format_double(u[j].imag()) << ',';
        if (j < oracle.size())
            out << format_double(oracle[j].real()) << ',' << format_double(oracle[j].imag());
        else
            out << "nan,nan";
        out << '\n';
    }
    return path;
}

std::string write_manifest_json(const std::string& dir, const ExperimentReport& report,
                                const std::string& command) {
    std::string path;
    auto out = open_out(dir, "manifest.json", path);
    const ExperimentConfig& cfg = report.config;
    json j;
    j["tool"] = "lagrep";
    j["version"] = "0.1.0";
    j["command"] = command;
    json c;
    c["potential"] = cfg.potential_spec;
    c["d"] = cfg.d;
    c["grid"] = cfg.grid_size;
    c["N"] = cfg.N;
    c["omega"] = cfg.omega.to_string();
    if (cfg.shift) {
        json s;
        s["lambda"] = cfg.shift->lambda;
        if (cfg.shift->omega0_im) s["omega0_im"] = *cfg.shift->omega0_im;
        c["shift"] = s;
    }
    c["outputs"] = cfg.outputs;
    c["out"] = cfg.out_dir;
    c["format"] = cfg.format;
    c["x_stride"] = cfg.x_stride;
    c["rk_tol"] = cfg.rk_tol;
    j["config"] = c;
    json t;
    for (const auto& st : report.timings) t[st.stage] = st.ms;
    j["timings_ms"] = t;
    j["files"] = report.files_written;
    json s;
    for (const auto& [k, v] : report.scalars) s[k] = v;
    j["results"] = s;
    out << j.dump(2) << '\n';
    return path;
}

ExperimentConfig load_config_from_manifest(const std::string& path, std::string* command) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read manifest: " + path);
    json j = json::parse(in);
    if (command && j.contains("command")) *command = j["command"].get<std::string>();
    const json& c = j.at("config");
    ExperimentConfig cfg;
    cfg.potential_spec = c.at("potential").get<std::string>();
    cfg.d = c.at("d").get<double>();
    cfg.grid_size = c.at("grid").get<std::size_t>();
    cfg.N = c.at("N").get<int>();
    cfg.omega = OmegaSpec::parse(c.at("omega").get<std::string>());
    if (c.contains("shift")) {
        ShiftSpec s;
        s.lambda = c["shift"].at("lambda").get<double>();
        if (c["shift"].contains("omega0_im")) s.omega0_im = c["shift"]["omega0_im"].get<double>();
        cfg.shift = s;
    }
    if (c.contains("outputs")) cfg.outputs = c["outputs"].get<std::vector<std::string>>();
    cfg.out_dir = c.value("out", ".");
    cfg.format = c.value("format", "csv");
    cfg.x_stride = c.value("x_stride", std::size_t{1});
    cfg.rk_tol = c.value("rk_tol", 1e-12);
    return cfg;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const std::string& command) {
    if (!(cfg.d > 0.0)) throw std::invalid_argument("d must be positive");
    if (cfg.N < 0) throw std::invalid_argument("N must be nonnegative");
    if (cfg.format != "csv") throw std::invalid_argument("only csv output is supported");

    ExperimentReport report;
    report.config = cfg;
    StageClock clock(report);

    const PotentialExpr expr = PotentialExpr::parse(cfg.potential_spec);
    const Grid grid = make_uniform_grid(cfg.d, cfg.grid_size);
    const PotentialProfile q = expr.sample(grid);
    double const_q = 0.0;
    const bool q_const = expr.is_constant(&const_q);

    auto basis = clock.time("basis_ms", [&] {
        return std::make_shared<const ParticularBasis>(build_particular_basis(q));
    });

    const std::vector<cplx> omegas = cfg.omega.expand();
    for (const cplx& w : omegas)
        if (std::abs(w - cplx(0.0, -1.0)) < 1e-12)
            throw std::domain_error("omega = -i is a pole of the representation");

    const auto oracle_for = [&](cplx w) -> std::vector<cplx> {
        if (q_const) return constant_q_solution(const_q, w, grid).values.values();
        return rk_solution(q, w, cfg.rk_tol).values.values();
    };

    if (cfg.shift) {
        // shifted solve: one result per omega
        std::size_t idx = 0;
        for (const cplx& w : omegas) {
            ShiftOptions opts;
            if (cfg.shift->omega0_im) opts.omega0 = cplx(0.0, *cfg.shift->omega0_im);
            auto res = clock.time("shifted_solve_ms", [&] {
                return shifted_solve(q, w, cfg.N, cfg.shift->lambda, opts);
            });
            report.scalars["omega0_im"] = res.omega0.imag();
            report.scalars["omega0_re"] = res.omega0.real();
            report.scalars["target_omega_sq_re"] = res.target_omega_sq.real();
            std::vector<cplx> oracle;
            if (q_const)
                oracle = constant_q_solution(const_q + res.lambda, res.omega0, grid).values.values();
            if (wants(cfg, "solution"))
                report.files_written.push_back(write_solution_csv(
                    cfg.out_dir, "solution_" + std::to_string(idx) + ".csv", grid,
                    res.eval.values.values(), oracle));
            if (!oracle.empty()) {
                double abs_err = 0.0, rel_err = 0.0;
                for (std::size_t j = 0; j < grid.size(); ++j) {
                    const double e = std::abs(res.eval.values[j] - oracle[j]);
                    abs_err = std::max(abs_err, e);
                    rel_err = std::max(rel_err, e / std::max(1e-300, std::abs(oracle[j])));
                }
                report.scalars["shift_max_abs_err"] = abs_err;
                report.scalars["shift_max_rel_err"] = rel_err;
            }
            ++idx;
        }
        report.files_written.push_back(write_manifest_json(cfg.out_dir, report, command));
        return report;
    }

    const bool need_sweep = wants(cfg, "sweep");
    const bool need_solution = wants(cfg, "solution");
    const bool need_table =
        wants(cfg, "coefficients") || need_solution || (need_sweep && cfg.N <= 2000);

    std::optional<CoefficientTable> table;
    StreamDiagnostics diag;
    if (need_table) {
        table = clock.time("coefficients_ms",
                           [&] { return coefficients_recurrent(basis, cfg.N); });
        diag.decay = coefficient_decay(*table);
        for (int cp : {0, 1, 10, 100, 1000, 10000, 100000}) {
            if (cp <= cfg.N) diag.residual_at[cp] = sum_rule_residual(*table, cp);
        }
        if (!diag.residual_at.count(cfg.N)) diag.residual_at[cfg.N] = sum_rule_residual(*table, cfg.N);
    } else {
        std::vector<int> cps = {0, 1, 10, 100, 1000, 10000, 100000, cfg.N};
        diag = clock.time("coefficients_ms", [&] { return stream_coefficients(basis, cfg.N, cps); });
    }
    report.scalars["sum_rule_residual_at_N"] = diag.residual_at.at(cfg.N);

    if (wants(cfg, "decay"))
        report.files_written.push_back(write_decay_csv(cfg.out_dir, diag.decay));
    if (wants(cfg, "sum_rule"))
        report.files_written.push_back(write_sum_rule_csv(cfg.out_dir, diag.residual_at));
    if (wants(cfg, "coefficients"))
        report.files_written.push_back(write_coefficients_csv(cfg.out_dir, *table));

    if (need_sweep) {
        auto sols = clock.time("sweep_ms", [&] {
            return table ? sweep_solutions(*table, omegas, cfg.N, cfg.x_stride)
                         : sweep_solutions(basis, omegas, cfg.N, cfg.x_stride);
        });
        std::vector<double> max_abs(omegas.size(), 0.0), max_rel(omegas.size(), 0.0);
        clock.time("sweep_oracle_ms", [&] {
            for (std::size_t w = 0; w < omegas.size(); ++w) {
                const std::vector<cplx> oracle = oracle_for(omegas[w]);
                for (std::size_t i = 0; i < sols.x_indices.size(); ++i) {
                    const cplx o = oracle[sols.x_indices[i]];
                    const double e = std::abs(sols.value(w, i) - o);
                    max_abs[w] = std::max(max_abs[w], e);
                    max_rel[w] = std::max(max_rel[w], e / std::max(1e-300, std::abs(o)));
                }
            }
        });
        report.files_written.push_back(
            write_sweep_csv(cfg.out_dir, "sweep.csv", omegas, max_abs, max_rel));
        double peak = 0.0;
        std::size_t peak_idx = 0;
        for (std::size_t w = 0; w < omegas.size(); ++w)
            if (max_abs[w] > peak) peak = max_abs[w], peak_idx = w;
        report.scalars["sweep_peak_abs_err"] = peak;
        report.scalars["sweep_peak_omega"] = omegas.empty() ? 0.0 : omegas[peak_idx].real();
    }

    if (need_solution && !cfg.shift) {
        std::size_t idx = 0;
        for (const cplx& w : omegas) {
            auto ev = clock.time("evaluate_ms", [&] { return evaluate_solution(*table, w, cfg.N); });
            const std::vector<cplx> oracle = oracle_for(w);
            double abs_err = 0.0;
            for (std::size_t j = 0; j < grid.size(); ++j)
                abs_err = std::max(abs_err, std::abs(ev.values[j] - oracle[j]));
            report.scalars["solution_" + std::to_string(idx) + "_max_abs_err"] = abs_err;
            report.files_written.push_back(
                write_solution_csv(cfg.out_dir, "solution_" + std::to_string(idx) + ".csv", grid,
                                   ev.values.values(), oracle));
            ++idx;
        }
    }

    report.files_written.push_back(write_manifest_json(cfg.out_dir, report, command));
    return report;
}

}  // namespace lagrep
