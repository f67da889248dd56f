#ifndef LAGREP_REPRO_HPP
#define LAGREP_REPRO_HPP

#include <string>
#include <vector>

#include "lagrep/experiment.hpp"

namespace lagrep {

struct CheckResult {
    int criterion = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct BatteryResult {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// The constant-potential experiment battery (q = 1 on [0, 1], 5001 nodes):
// numbered accuracy/scale checks with pinned thresholds, one result line
// each. `criteria` selects check numbers (empty = all 11); artifacts land in
// out_dir when nonempty; set print for a live pass/fail table.
BatteryResult run_example1_battery(const std::vector<int>& criteria, const std::string& out_dir,
                                   bool print);

// CLI entry points.
bool run_repro_example1(const std::string& out_dir, bool quick);
int run_kernel_command(const ExperimentConfig& cfg, double x, const std::string& t_spec,
                       int jmax);
bool run_validate_command(const ExperimentConfig& cfg);

}  // namespace lagrep

#endif
