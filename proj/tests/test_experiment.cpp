#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lagrep/experiment.hpp"

using namespace lagrep;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("float formatting round-trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("omega spec parsing") {
    const OmegaSpec single = OmegaSpec::parse("2.5");
    CHECK(single.values.size() == 1);
    CHECK(single.values[0] == cplx(2.5, 0.0));

    const OmegaSpec complex_one = OmegaSpec::parse("0,-0.25");
    CHECK(complex_one.values[0] == cplx(0.0, -0.25));

    const OmegaSpec list = OmegaSpec::parse("1;2;3,0.5");
    CHECK(list.values.size() == 3);
    CHECK(list.values[2] == cplx(3.0, 0.5));

    const OmegaSpec sweep = OmegaSpec::parse("-10:10:21");
    const auto pts = sweep.expand();
    CHECK(pts.size() == 21);
    CHECK(pts.front() == cplx(-10.0, 0.0));
    CHECK(pts.back() == cplx(10.0, 0.0));
    CHECK(pts[10] == cplx(0.0, 0.0));

    const OmegaSpec logs = OmegaSpec::parse("0.1:1000:5:log");
    const auto lp = logs.expand();
    CHECK(lp.size() == 5);
    CHECK(lp[0].real() == doctest::Approx(0.1));
    CHECK(lp[2].real() == doctest::Approx(10.0));
    CHECK(lp[4].real() == doctest::Approx(1000.0));

    CHECK_THROWS_AS(OmegaSpec::parse("1:2"), std::invalid_argument);
    CHECK_THROWS_AS(OmegaSpec::parse("-1:10:5:log").expand(), std::invalid_argument);

    for (const char* spec : {"2.5", "0,-0.25", "1;2;3,0.5", "-10:10:21", "0.1:1000:5:log"}) {
        const OmegaSpec s = OmegaSpec::parse(spec);
        const OmegaSpec back = OmegaSpec::parse(s.to_string());
        CHECK(back.expand().size() == s.expand().size());
    }
}

TEST_CASE("log+linear omega grid") {
    const auto g = log_linear_omega_grid(1000.0, 1001, 500);
    CHECK(g.size() == 2001);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i].real() >= g[i - 1].real());
    CHECK(g.front().real() == -1000.0);
    CHECK(g.back().real() == 1000.0);
}

TEST_CASE("experiment run writes artifacts and a loadable manifest") {
    TempDir dir("lagrep_test_run");
    ExperimentConfig cfg;
    cfg.potential_spec = "one";
    cfg.d = 1.0;
    cfg.grid_size = 201;
    cfg.N = 12;
    cfg.omega = OmegaSpec::parse("0:5:6");
    cfg.outputs = {"decay", "sum_rule", "sweep"};
    cfg.out_dir = dir.path.string();

    const ExperimentReport report = run_experiment(cfg, "sweep");
    CHECK(report.files_written.size() == 4);  // decay, sum_rule, sweep, manifest
    CHECK(fs::exists(dir.path / "decay.csv"));
    CHECK(fs::exists(dir.path / "sum_rule.csv"));
    CHECK(fs::exists(dir.path / "sweep.csv"));
    CHECK(fs::exists(dir.path / "manifest.json"));

    const std::string decay = slurp((dir.path / "decay.csv").string());
    CHECK(decay.rfind("n,max_abs\n", 0) == 0);
    // first row: n = 0, max |a_0| = cosh(1) - 1
    const std::size_t row0 = decay.find("\n0,") + 3;
    CHECK(std::stod(decay.substr(row0)) == doctest::Approx(std::cosh(1.0) - 1.0).epsilon(1e-10));

    const std::string sweep = slurp((dir.path / "sweep.csv").string());
    CHECK(std::count(sweep.begin(), sweep.end(), '\n') == 7);  // header + 6 rows

    std::string command;
    const ExperimentConfig back = load_config_from_manifest((dir.path / "manifest.json").string(),
                                                            &command);
    CHECK(command == "sweep");
    CHECK(back.potential_spec == cfg.potential_spec);
    CHECK(back.grid_size == cfg.grid_size);
    CHECK(back.N == cfg.N);
    CHECK(back.omega.expand().size() == 6);
}

TEST_CASE("identical config reproduces identical csv bytes") {
    TempDir dir1("lagrep_det_a");
    TempDir dir2("lagrep_det_b");
    ExperimentConfig cfg;
    cfg.potential_spec = "x^2 + sin(3*x)";
    cfg.grid_size = 301;
    cfg.N = 10;
    cfg.omega = OmegaSpec::parse("0.5:20:7");
    cfg.outputs = {"decay", "sum_rule", "sweep"};
    cfg.out_dir = dir1.path.string();
    cfg.rk_tol = 1e-10;
    run_experiment(cfg, "sweep");

    // re-run from the manifest into a second directory
    ExperimentConfig cfg2 = load_config_from_manifest((dir1.path / "manifest.json").string());
    cfg2.out_dir = dir2.path.string();
    run_experiment(cfg2, "sweep");

    for (const char* name : {"decay.csv", "sum_rule.csv", "sweep.csv"}) {
        CHECK(slurp((dir1.path / name).string()) == slurp((dir2.path / name).string()));
    }
}

TEST_CASE("shifted experiment") {
    TempDir dir("lagrep_shift_run");
    ExperimentConfig cfg;
    cfg.potential_spec = "1";
    cfg.grid_size = 501;
    cfg.N = 30;
    cfg.omega = OmegaSpec::parse("0,-10.003124511871277");  // omega^2 ~ -100.0625
    ShiftSpec shift;
    shift.lambda = 100.0;
    shift.omega0_im = -0.25;
    cfg.shift = shift;
    cfg.outputs = {"solution"};
    cfg.out_dir = dir.path.string();
    const ExperimentReport report = run_experiment(cfg, "solve");
    CHECK(report.scalars.count("shift_max_rel_err"));
    CHECK(report.scalars.at("shift_max_rel_err") <= 1e-11);
    CHECK(fs::exists(dir.path / "solution_0.csv"));
}
