#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lagrep/oracles.hpp"
#include "lagrep/solution.hpp"

using namespace lagrep;

namespace {

const Grid kGrid = make_uniform_grid(1.0, 5001);

std::shared_ptr<const ParticularBasis> basis_for_constant(double c) {
    const PotentialProfile q(kGrid, std::vector<double>(kGrid.size(), c));
    return std::make_shared<const ParticularBasis>(build_particular_basis(q));
}

}  // namespace

TEST_CASE("series collapse at omega = 0 and the initial condition") {
    auto b = basis_for_constant(1.0);
    const CoefficientTable t = coefficients_recurrent(b, 50);
    const SolutionEvaluation ev = evaluate_solution(t, 0.0, 50);
    CHECK(ev.values.max_abs_diff(b->f0) <= 1e-13);
    for (cplx w : {cplx(3.0, 0.0), cplx(0.0, -0.2), cplx(700.0, 0.0)}) {
        const SolutionEvaluation e2 = evaluate_solution(t, w, 50);
        CHECK(std::abs(e2.values[0] - cplx(1.0)) == 0.0);
    }
}

TEST_CASE("discrete initial slope equals -i omega for every N") {
    // all a_n'(0) vanish, so the prefactor supplies the whole slope
    auto b = basis_for_constant(1.0);
    const CoefficientTable t = coefficients_recurrent(b, 100);
    const double h = kGrid.spacing();
    const double c[7] = {-49.0 / 20, 6.0, -15.0 / 2, 20.0 / 3, -15.0 / 4, 6.0 / 5, -1.0 / 6};
    for (cplx w : {cplx(3.0, 0.0), cplx(-11.0, 0.0), cplx(0.0, -0.25)}) {
        for (int N : {0, 7, 100}) {
            const SolutionEvaluation ev = evaluate_solution(t, w, N);
            cplx d0 = 0.0;
            for (int i = 0; i < 7; ++i) d0 += c[i] * ev.values[static_cast<std::size_t>(i)];
            d0 /= h;
            CHECK(std::abs(d0 - cplx(0.0, -1.0) * w) <= 1e-8);
        }
    }
}

TEST_CASE("q = 0, omega = 7, N = 0 reproduces the plane wave") {
    auto b0 = basis_for_constant(0.0);
    const CoefficientTable t = coefficients_recurrent(b0, 0);
    const SolutionEvaluation ev = evaluate_solution(t, 7.0, 0);
    double err = 0.0;
    for (std::size_t j = 0; j < kGrid.size(); ++j)
        err = std::max(err, std::abs(ev.values[j] - std::exp(cplx(0.0, -7.0 * kGrid.node(j)))));
    CHECK(err == 0.0);
}

TEST_CASE("q = 1, omega = 5 at x = 1 matches cos k - (5i/k) sin k, k = sqrt(24)") {
    auto b = basis_for_constant(1.0);
    const CoefficientTable t = coefficients_recurrent(b, 2000);
    const SolutionEvaluation ev = evaluate_solution(t, 5.0, 2000);
    const double k = std::sqrt(24.0);
    const cplx ref = cplx(std::cos(k), 0.0) - cplx(0.0, 5.0 / k) * std::sin(k);
    CHECK(std::abs(ev.values[kGrid.size() - 1] - ref) <= 1e-12);
    const OracleSolution oracle = constant_q_solution(1.0, 5.0, kGrid);
    CHECK(std::abs(oracle.values[kGrid.size() - 1] - ref) <= 1e-15);
}

TEST_CASE("omega = -i is rejected as the pole") {
    auto b = basis_for_constant(1.0);
    const CoefficientTable t = coefficients_recurrent(b, 5);
    CHECK_THROWS_AS(evaluate_solution(t, cplx(0.0, -1.0), 5), std::domain_error);
    CHECK_THROWS_AS(evaluate_solution(t, 1.0, 6), std::invalid_argument);
}

TEST_CASE("sweep solutions match single evaluations") {
    auto b = basis_for_constant(1.0);
    const CoefficientTable t = coefficients_recurrent(b, 300);
    const std::vector<cplx> omegas = {cplx(0.0, 0.0), cplx(2.5, 0.0), cplx(-17.0, 0.0),
                                      cplx(0.0, -0.25), cplx(440.0, 0.0)};
    const SweepSolutions s_table = sweep_solutions(t, omegas, 300);
    const SweepSolutions s_stream = sweep_solutions(b, omegas, 300);
    REQUIRE(s_table.x_indices.size() == kGrid.size());
    for (std::size_t w = 0; w < omegas.size(); ++w) {
        const SolutionEvaluation ev = evaluate_solution(t, omegas[w], 300);
        double e_tab = 0.0, e_str = 0.0;
        for (std::size_t j = 0; j < kGrid.size(); ++j) {
            e_tab = std::max(e_tab, std::abs(s_table.value(w, j) - ev.values[j]));
            e_str = std::max(e_str, std::abs(s_stream.value(w, j) - ev.values[j]));
        }
        CHECK(e_tab <= 1e-13 * std::max(1.0, ev.values.max_abs()));
        CHECK(e_str <= 1e-13 * std::max(1.0, ev.values.max_abs()));
    }
}

TEST_CASE("strided sweep keeps the endpoint") {
    auto b = basis_for_constant(1.0);
    const CoefficientTable t = coefficients_recurrent(b, 10);
    const SweepSolutions s = sweep_solutions(t, {cplx(1.0, 0.0)}, 10, 7);
    CHECK(s.x_indices.front() == 0);
    CHECK(s.x_indices.back() == kGrid.size() - 1);
}

TEST_CASE("kernel slice") {
    auto b1 = basis_for_constant(1.0);
    const CoefficientTable t = coefficients_recurrent(b1, 400);

    SUBCASE("q = 0 slice vanishes") {
        auto b0 = basis_for_constant(0.0);
        const CoefficientTable t0 = coefficients_recurrent(b0, 50);
        const KernelSlice ks = kernel_slice(t0, 1.0, {0.0, 0.5, 1.0, 3.0}, 50);
        for (const cplx& v : ks.values) CHECK(std::abs(v) == 0.0);
    }
    SUBCASE("single-term value at N = 0") {
        const KernelSlice ks = kernel_slice(t, 1.0, {1.0}, 0);
        const double ref = (std::cosh(1.0) - 1.0) * std::exp(-1.0);  // a_0(1) L_0(1) e^-1
        CHECK(ks.values[0].real() == doctest::Approx(ref).epsilon(1e-12));
    }
    SUBCASE("table and streaming variants agree") {
        const std::vector<double> ts = {0.0, 0.3, 1.7};
        const KernelSlice a = kernel_slice(t, 0.5, ts, 400);
        const KernelSlice s = kernel_slice(b1, 0.5, ts, 400);
        for (std::size_t i = 0; i < ts.size(); ++i)
            CHECK(std::abs(a.values[i] - s.values[i]) <= 1e-13);
    }
}

TEST_CASE("kernel moments converge to phi_j - x^j") {
    auto b = basis_for_constant(1.0);
    const CoefficientTable t = coefficients_recurrent(b, 800);
    const cplx m0 = kernel_moment(t, 1.0, 0, 800);
    const cplx m1 = kernel_moment(t, 1.0, 1, 800);
    CHECK(std::abs(m0 - cplx(std::cosh(1.0) - 1.0)) <= 1e-7);
    CHECK(std::abs(m1 - cplx(std::sinh(1.0) - 1.0)) <= 1e-7);

    auto b0 = basis_for_constant(0.0);
    const CoefficientTable t0 = coefficients_recurrent(b0, 100);
    CHECK(std::abs(kernel_moment(t0, 1.0, 2, 100)) <= 1e-12);
}

TEST_CASE("uniform error bound surrogate") {
    auto b = basis_for_constant(1.0);
    const CoefficientTable t = coefficients_recurrent(b, 2000);

    SUBCASE("real omega factor is exactly one") {
        const auto full = uniform_error_bound(t, 100, 0.0);
        const auto at_low = uniform_error_bound(t, 100, 1234.5);
        REQUIRE(full.has_value());
        REQUIRE(at_low.has_value());
        CHECK(*full == *at_low);  // independent of real omega
    }
    SUBCASE("boundary blow-up and inapplicability") {
        const auto near = uniform_error_bound(t, 100, cplx(0.0, -0.499));
        const auto at_real = uniform_error_bound(t, 100, 0.0);
        REQUIRE(near.has_value());
        CHECK(*near > 20.0 * *at_real);  // 1/sqrt(0.002) ~ 22.4
        CHECK(!uniform_error_bound(t, 100, cplx(0.0, -0.5)).has_value());
        CHECK(!uniform_error_bound(t, 100, cplx(3.0, -0.7)).has_value());
    }
    SUBCASE("surrogate dominates the observed truncation error at moderate omega") {
        const auto sur = uniform_error_bound(t, 100, 10.0);
        REQUIRE(sur.has_value());
        const SolutionEvaluation ev = evaluate_solution(t, 10.0, 100);
        const OracleSolution oracle = constant_q_solution(1.0, 10.0, kGrid);
        CHECK(ev.values.max_abs_diff(oracle.values) < *sur);
    }
    SUBCASE("decay-based surrogate with a deep tail dominates the sweep error") {
        const StreamDiagnostics diag = stream_coefficients(b, 10000);
        const auto sur = uniform_error_bound(diag.decay, 100, 0.0, kGrid.extent());
        REQUIRE(sur.has_value());
        const CoefficientTable t100 = coefficients_recurrent(b, 100);
        for (double w : {1.0, 9.9, 48.0, 1000.0}) {
            const SolutionEvaluation ev = evaluate_solution(t100, w, 100);
            const OracleSolution oracle = constant_q_solution(1.0, w, kGrid);
            CHECK(ev.values.max_abs_diff(oracle.values) < *sur);
        }
    }
}

TEST_CASE("shifted solve") {
    const PotentialProfile q(kGrid, std::vector<double>(kGrid.size(), 1.0));

    SUBCASE("lambda = 0 reproduces evaluate_solution") {
        const ShiftedSolveResult r = shifted_solve(q, 4.0, 60, 0.0);
        CHECK(r.omega0 == cplx(4.0, 0.0));
        auto b = std::make_shared<const ParticularBasis>(build_particular_basis(q));
        const CoefficientTable t = coefficients_recurrent(b, 60);
        const SolutionEvaluation ev = evaluate_solution(t, 4.0, 60);
        CHECK(r.eval.values.max_abs_diff(ev.values) == 0.0);
    }
    SUBCASE("negative omega and lambda = 0 picks the matching root") {
        const ShiftedSolveResult r = shifted_solve(q, -4.0, 10, 0.0);
        CHECK(r.omega0 == cplx(-4.0, 0.0));
    }
    SUBCASE("fast-strip root is selected") {
        // omega^2 = -100.0625, lambda = 100 -> omega0 = -i/4
        const cplx omega(0.0, -std::sqrt(100.0625));
        const ShiftedSolveResult r = shifted_solve(q, omega, 30, 100.0);
        CHECK(r.omega0.real() == doctest::Approx(0.0));
        CHECK(r.omega0.imag() == doctest::Approx(-0.25).epsilon(1e-12));
        const OracleSolution oracle = constant_q_solution(101.0, r.omega0, kGrid);
        double rel = 0.0;
        for (std::size_t j = 0; j < kGrid.size(); ++j)
            rel = std::max(rel, std::abs(r.eval.values[j] - oracle.values[j]) /
                                    std::abs(oracle.values[j]));
        CHECK(rel <= 1e-12);
    }
    SUBCASE("lambda = 0 at omega0 = -i/4 matches the closed form at N = 30") {
        const ShiftedSolveResult r = shifted_solve(q, cplx(0.0, -0.25), 30, 0.0);
        const OracleSolution oracle = constant_q_solution(1.0, cplx(0.0, -0.25), kGrid);
        CHECK(r.eval.values.max_abs_diff(oracle.values) <= 1e-12);
    }
    SUBCASE("no admissible root is an error unless overridden") {
        // omega^2 + lambda is negative with |omega0| > 1/2: imaginary root
        // outside the fast strip and not real
        const cplx omega(0.0, -2.0);  // omega^2 = -4, omega0^2 = -3
        CHECK_THROWS_AS(shifted_solve(q, omega, 5, 1.0), std::domain_error);
        const ShiftedSolveResult r = shifted_solve(q, omega, 5, 1.0, {std::nullopt, true});
        // only +i sqrt(3) is allowed (the -i root has Im <= -1/2)
        CHECK(r.omega0.imag() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    }
}
