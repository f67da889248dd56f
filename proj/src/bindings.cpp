#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lagrep/experiment.hpp"
#include "lagrep/laguerre.hpp"
#include "lagrep/oracles.hpp"
#include "lagrep/repro.hpp"
#include "lagrep/solution.hpp"

namespace py = pybind11;
using namespace lagrep;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

py::array_t<cplx> to_array(const std::vector<cplx>& v) {
    py::array_t<cplx> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

SampledFunction function_from_array(const Grid& grid, py::array_t<cplx, py::array::c_style | py::array::forcecast> values) {
    if (values.ndim() != 1) throw std::invalid_argument("values must be one-dimensional");
    std::vector<cplx> v(values.data(), values.data() + values.size());
    return SampledFunction(grid, std::move(v));
}

PotentialProfile profile_from_array(const Grid& grid, py::array_t<double, py::array::c_style | py::array::forcecast> values) {
    if (values.ndim() != 1) throw std::invalid_argument("values must be one-dimensional");
    std::vector<double> v(values.data(), values.data() + values.size());
    return PotentialProfile(grid, std::move(v));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "frequency-uniform series solver for -u'' + q(x) u = w^2 u";

    py::class_<Grid>(m, "Grid")
        .def_property_readonly("nodes", [](const Grid& g) { return to_array(g.nodes()); })
        .def_property_readonly("extent", &Grid::extent)
        .def_property_readonly("spacing", &Grid::spacing)
        .def("__len__", &Grid::size)
        .def("__eq__", [](const Grid& a, const Grid& b) { return a == b; });

    py::class_<SampledFunction>(m, "SampledFunction")
        .def_property_readonly("grid", &SampledFunction::grid)
        .def_property_readonly("values",
                               [](const SampledFunction& f) { return to_array(f.values()); })
        .def("max_abs", &SampledFunction::max_abs)
        .def("max_abs_diff", &SampledFunction::max_abs_diff)
        .def("__len__", &SampledFunction::size);

    py::class_<PotentialProfile>(m, "PotentialProfile")
        .def_property_readonly("grid", [](const PotentialProfile& p) { return p.grid; })
        .def_property_readonly("values",
                               [](const PotentialProfile& p) { return to_array(p.values); });

    py::class_<PotentialExpr>(m, "PotentialExpr")
        .def_static("parse", &PotentialExpr::parse, py::arg("spec"))
        .def("__call__", &PotentialExpr::operator(), py::arg("x"))
        .def("__str__", &PotentialExpr::to_string)
        .def("sample", &PotentialExpr::sample, py::arg("grid"))
        .def("is_constant", [](const PotentialExpr& e) -> py::object {
            double v = 0.0;
            if (e.is_constant(&v)) return py::float_(v);
            return py::none();
        });

    py::class_<ParticularBasis, std::shared_ptr<ParticularBasis>>(m, "ParticularBasis")
        .def_readonly("f0", &ParticularBasis::f0)
        .def_readonly("f1", &ParticularBasis::f1)
        .def_readonly("f", &ParticularBasis::f)
        .def_readonly("f_prime", &ParticularBasis::f_prime)
        .def_readonly("fprime0", &ParticularBasis::fprime0)
        .def("wronskian_defect", [](const ParticularBasis& b) { return wronskian_defect(b); });

    py::class_<FormalPowers>(m, "FormalPowers")
        .def_property_readonly("max_order", &FormalPowers::max_order)
        .def("phi", [](const FormalPowers& fp, int k) {
            if (k < 0 || k > fp.max_order()) throw std::out_of_range("formal power index");
            return fp.phi[static_cast<std::size_t>(k)];
        });

    py::class_<CoefficientTable>(m, "CoefficientTable")
        .def_property_readonly("max_index", &CoefficientTable::max_index)
        .def_property_readonly("method",
                               [](const CoefficientTable& t) {
                                   return t.method == CoefficientMethod::direct ? "direct"
                                                                                : "recurrent";
                               })
        .def("a", [](const CoefficientTable& t, int n) {
            if (n < 0 || n > t.max_index()) throw std::out_of_range("coefficient index");
            return t.a[static_cast<std::size_t>(n)];
        });

    py::class_<SolutionEvaluation>(m, "SolutionEvaluation")
        .def_readonly("omega", &SolutionEvaluation::omega)
        .def_readonly("N", &SolutionEvaluation::N)
        .def_readonly("values", &SolutionEvaluation::values)
        .def_readonly("sum_rule_residual", &SolutionEvaluation::sum_rule_residual);

    py::class_<KernelSlice>(m, "KernelSlice")
        .def_readonly("x", &KernelSlice::x)
        .def_property_readonly("t_nodes", [](const KernelSlice& k) { return to_array(k.t_nodes); })
        .def_property_readonly("values", [](const KernelSlice& k) { return to_array(k.values); });

    py::class_<OracleSolution>(m, "OracleSolution")
        .def_readonly("omega", &OracleSolution::omega)
        .def_readonly("values", &OracleSolution::values)
        .def_readonly("est_accuracy", &OracleSolution::est_accuracy)
        .def_property_readonly("method", [](const OracleSolution& s) {
            return s.method == OracleMethod::closed_form_constant ? "closed_form_constant"
                                                                  : "rk_adaptive";
        });

    py::class_<ShiftedSolveResult>(m, "ShiftedSolveResult")
        .def_readonly("eval", &ShiftedSolveResult::eval)
        .def_readonly("omega0", &ShiftedSolveResult::omega0)
        .def_readonly("lambda_shift", &ShiftedSolveResult::lambda)
        .def_readonly("target_omega_sq", &ShiftedSolveResult::target_omega_sq);

    py::class_<SweepSolutions>(m, "SweepSolutions")
        .def_property_readonly("omegas", [](const SweepSolutions& s) { return to_array(s.omegas); })
        .def_property_readonly("x_indices",
                               [](const SweepSolutions& s) {
                                   py::array_t<std::size_t> a(
                                       static_cast<py::ssize_t>(s.x_indices.size()));
                                   std::copy(s.x_indices.begin(), s.x_indices.end(),
                                             a.mutable_data());
                                   return a;
                               })
        .def_property_readonly("values", [](const SweepSolutions& s) {
            py::array_t<cplx> a({s.omegas.size(), s.x_indices.size()});
            std::copy(s.values.begin(), s.values.end(), a.mutable_data());
            return a;
        });

    m.def("make_uniform_grid", &make_uniform_grid, py::arg("d"), py::arg("m"));
    m.def("sampled_function", &function_from_array, py::arg("grid"), py::arg("values"));
    m.def("potential_profile", &profile_from_array, py::arg("grid"), py::arg("values"));
    m.def("cumulative_integral",
          py::overload_cast<const SampledFunction&>(&cumulative_integral), py::arg("f"));
    m.def("laguerre_eval", &laguerre_eval, py::arg("n"), py::arg("t"));
    m.def("gauss_laguerre", [](int n) {
        const GaussLaguerreRule r = GaussLaguerreRule::build(n);
        std::vector<double> w(r.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            w[i] = r.scaled_weights[i] * std::exp(-0.5 * r.nodes[i]);
        return py::make_tuple(to_array(r.nodes), to_array(w));
    }, py::arg("n"), "plain nodes and weights for the e^{-t} measure");

    m.def("build_particular_basis",
          [](const PotentialProfile& q) {
              return std::make_shared<ParticularBasis>(build_particular_basis(q));
          },
          py::arg("q"));
    m.def("build_formal_powers",
          [](std::shared_ptr<ParticularBasis> basis, int K, const std::string& path) {
              const FormalPowerPath p = path == "direct_f0" ? FormalPowerPath::direct_f0
                                                            : FormalPowerPath::nonvanishing_f;
              return build_formal_powers(std::move(basis), K, p);
          },
          py::arg("basis"), py::arg("K"), py::arg("path") = "nonvanishing_f");
    m.def("spps_solution",
          [](const FormalPowers& fp, cplx omega, int M) {
              return spps_solution(fp, omega, M).values;
          },
          py::arg("fp"), py::arg("omega"), py::arg("M"));

    m.def("coefficients_recurrent",
          [](std::shared_ptr<ParticularBasis> basis, int N) {
              return coefficients_recurrent(std::move(basis), N);
          },
          py::arg("basis"), py::arg("N"));
    m.def("coefficients_direct", &coefficients_direct, py::arg("fp"), py::arg("N"));
    m.def("stream_diagnostics",
          [](std::shared_ptr<ParticularBasis> basis, int N, const std::vector<int>& checkpoints) {
              const StreamDiagnostics d = stream_coefficients(std::move(basis), N, checkpoints);
              py::dict res;
              res["decay"] = to_array(d.decay);
              py::dict r;
              for (const auto& [k, v] : d.residual_at) r[py::int_(k)] = v;
              res["residual_at"] = r;
              return res;
          },
          py::arg("basis"), py::arg("N"), py::arg("checkpoints") = std::vector<int>{});

    m.def("evaluate_solution", &evaluate_solution, py::arg("coeffs"), py::arg("omega"),
          py::arg("N"));
    m.def("sum_rule_residual",
          py::overload_cast<const CoefficientTable&, int>(&sum_rule_residual), py::arg("coeffs"),
          py::arg("N"));
    m.def("coefficient_decay",
          [](const CoefficientTable& t) { return to_array(coefficient_decay(t)); },
          py::arg("coeffs"));
    m.def("kernel_slice",
          [](const CoefficientTable& t, double x, const std::vector<double>& ts, int N) {
              return kernel_slice(t, x, ts, N);
          },
          py::arg("coeffs"), py::arg("x"), py::arg("t_nodes"), py::arg("N"));
    m.def("kernel_moment", &kernel_moment, py::arg("coeffs"), py::arg("x"), py::arg("j"),
          py::arg("N"));
    m.def("uniform_error_bound",
          [](const CoefficientTable& t, int N, cplx omega) -> py::object {
              const auto b = uniform_error_bound(t, N, omega);
              if (!b) return py::none();
              return py::float_(*b);
          },
          py::arg("coeffs"), py::arg("N"), py::arg("omega"));
    m.def("sweep_solutions",
          [](const CoefficientTable& t, const std::vector<cplx>& omegas, int N,
             std::size_t x_stride) { return sweep_solutions(t, omegas, N, x_stride); },
          py::arg("coeffs"), py::arg("omegas"), py::arg("N"), py::arg("x_stride") = 1);
    m.def("shifted_solve",
          [](const PotentialProfile& q, cplx omega, int N, double lambda,
             std::optional<cplx> omega0, bool allow_any_root) {
              ShiftOptions opts;
              opts.omega0 = omega0;
              opts.allow_any_root = allow_any_root;
              return shifted_solve(q, omega, N, lambda, opts);
          },
          py::arg("q"), py::arg("omega"), py::arg("N"), py::arg("lambda_shift"),
          py::arg("omega0") = std::nullopt, py::arg("allow_any_root") = false);

    m.def("constant_q_solution", &constant_q_solution, py::arg("c"), py::arg("omega"),
          py::arg("grid"));
    m.def("rk_solution", &rk_solution, py::arg("q"), py::arg("omega"), py::arg("tol") = 1e-12);

    m.def("run_example1_battery",
          [](const std::vector<int>& criteria, const std::string& out_dir, bool verbose) {
              const BatteryResult r = run_example1_battery(criteria, out_dir, verbose);
              py::list checks;
              for (const auto& c : r.checks) {
                  py::dict d;
                  d["criterion"] = c.criterion;
                  d["name"] = c.name;
                  d["pass"] = c.pass;
                  d["detail"] = c.detail;
                  checks.append(d);
              }
              return checks;
          },
          py::arg("criteria") = std::vector<int>{}, py::arg("out_dir") = std::string(),
          py::arg("verbose") = false);

#ifdef LAGREP_VERSION
    m.attr("__version__") = LAGREP_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
