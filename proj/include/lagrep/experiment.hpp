#ifndef LAGREP_EXPERIMENT_HPP
#define LAGREP_EXPERIMENT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lagrep/oracles.hpp"
#include "lagrep/potential_expr.hpp"
#include "lagrep/solution.hpp"

namespace lagrep {

// omega specification: a single value, an explicit list, or a sweep
struct OmegaSpec {
    enum class Kind { list, sweep } kind = Kind::list;
    std::vector<cplx> values;                    // list (also holds the single case)
    double min = 0.0, max = 0.0;                 // sweep bounds
    std::size_t count = 0;                       // sweep point count
    bool log_spacing = false;

    std::vector<cplx> expand() const;
    // "v", "re,im", "v1;v2;...", "min:max:count[:log]"
    static OmegaSpec parse(const std::string& text);
    std::string to_string() const;
};

struct ShiftSpec {
    double lambda = 0.0;
    std::optional<double> omega0_im;  // purely imaginary omega0 override
};

struct ExperimentConfig {
    std::string potential_spec = "one";
    double d = 1.0;
    std::size_t grid_size = 5001;
    int N = 100;
    OmegaSpec omega;
    std::optional<ShiftSpec> shift;
    std::vector<std::string> outputs;  // subset of known artifact names
    std::string out_dir = ".";
    std::string format = "csv";
    std::size_t x_stride = 1;          // sweep error evaluation stride
    double rk_tol = 1e-12;             // oracle tolerance for nonconstant q
};

struct StageTiming {
    std::string stage;
    double ms = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<StageTiming> timings;
    std::vector<std::string> files_written;
    std::map<std::string, double> scalars;  // named summary numbers
    bool ok = true;
};

// Full pipeline for one configuration: parse q, build the basis and
// coefficients, evaluate the requested omegas, attach diagnostics, write the
// requested artifacts into config.out_dir.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const std::string& command);

// 17-significant-digit scientific notation; round-trips doubles exactly.
std::string format_double(double v);

// CSV writers (header row + fixed formatting). Each returns the path written.
std::string write_decay_csv(const std::string& dir, const std::vector<double>& decay);
std::string write_sum_rule_csv(const std::string& dir, const std::map<int, double>& residuals);
std::string write_coefficients_csv(const std::string& dir, const CoefficientTable& table);
std::string write_sweep_csv(const std::string& dir, const std::string& name,
                            const std::vector<cplx>& omegas,
                            const std::vector<double>& max_abs_err,
                            const std::vector<double>& max_rel_err);
std::string write_solution_csv(const std::string& dir, const std::string& name,
                               const Grid& grid, const std::vector<cplx>& u,
                               const std::vector<cplx>& oracle);
std::string write_manifest_json(const std::string& dir, const ExperimentReport& report,
                                const std::string& command);

// Reload the config echo of a manifest produced by write_manifest_json.
ExperimentConfig load_config_from_manifest(const std::string& path, std::string* command = nullptr);

// The omega grid used by the reproduction battery: `linear` equispaced
// points over [-max, max] plus `per_side` log-spaced magnitudes per sign.
std::vector<cplx> log_linear_omega_grid(double max, std::size_t linear, std::size_t per_side,
                                        double log_min = 0.1);

}  // namespace lagrep

#endif
