#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lagrep/oracles.hpp"
#include "lagrep/spps.hpp"

using namespace lagrep;

namespace {

PotentialProfile make_q(const Grid& g, double (*fn)(double)) {
    std::vector<double> v(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) v[j] = fn(g.node(j));
    return PotentialProfile(g, std::move(v));
}

const Grid kGrid = make_uniform_grid(1.0, 5001);

}  // namespace

TEST_CASE("basis for q = 0: f0 = 1, f1 = x") {
    const PotentialProfile q(kGrid, std::vector<double>(kGrid.size(), 0.0));
    const ParticularBasis b = build_particular_basis(q);
    for (std::size_t j = 0; j < kGrid.size(); j += 617) {
        CHECK(b.f0[j] == cplx(1.0));
        CHECK(b.f1[j].real() == doctest::Approx(kGrid.node(j)).epsilon(1e-15));
    }
}

TEST_CASE("basis for q = 1: f0 = cosh, f1 = sinh") {
    const PotentialProfile q(kGrid, std::vector<double>(kGrid.size(), 1.0));
    const ParticularBasis b = build_particular_basis(q);
    double e0 = 0.0, e1 = 0.0, ef = 0.0;
    for (std::size_t j = 0; j < kGrid.size(); ++j) {
        const double x = kGrid.node(j);
        e0 = std::max(e0, std::abs(b.f0[j] - cplx(std::cosh(x))));
        e1 = std::max(e1, std::abs(b.f1[j] - cplx(std::sinh(x))));
        ef = std::max(ef, std::abs(b.f[j] - cplx(std::cosh(x), std::sinh(x))));
    }
    CHECK(e0 <= 1e-13);
    CHECK(e1 <= 1e-13);
    CHECK(ef <= 2e-13);
    CHECK(b.f0[0] == cplx(1.0));
    CHECK(b.f1[0] == cplx(0.0));
    CHECK(wronskian_defect(b) <= 1e-9);
    // f' = sinh + i cosh
    double ep = 0.0;
    for (std::size_t j = 0; j < kGrid.size(); ++j) {
        const double x = kGrid.node(j);
        ep = std::max(ep, std::abs(b.f_prime[j] - cplx(std::sinh(x), std::cosh(x))));
    }
    CHECK(ep <= 1e-12);
}

TEST_CASE("basis for q = x matches the adaptive RK oracle") {
    const PotentialProfile q = make_q(kGrid, [](double x) { return x; });
    const ParticularBasis b = build_particular_basis(q);
    // f0 solves u'' = (q - w^2) u with w = 0, u(0) = 1, u'(0) = 0 = -i*0
    const OracleSolution rk = rk_solution(q, 0.0, 1e-13);
    CHECK(b.f0.max_abs_diff(rk.values) <= 1e-10);
}

TEST_CASE("recursive integrals for constant potentials") {
    SUBCASE("f0 = 1 gives X^(n) = x^n") {
        const SampledFunction one = constant_function(kGrid, 1.0);
        const auto X = recursive_integrals(one, 5, RecursiveVariant::X);
        for (int n = 0; n <= 5; ++n) {
            double err = 0.0;
            for (std::size_t j = 0; j < kGrid.size(); ++j)
                err = std::max(err,
                               std::abs(X[static_cast<std::size_t>(n)][j] -
                                        cplx(std::pow(kGrid.node(j), n))));
            CHECK(err <= 1e-13);
        }
    }
    SUBCASE("f0 = cosh: X^(1) = tanh, X^(2) = sinh^2") {
        std::vector<cplx> ch(kGrid.size());
        for (std::size_t j = 0; j < kGrid.size(); ++j) ch[j] = std::cosh(kGrid.node(j));
        const auto X = recursive_integrals(SampledFunction(kGrid, ch), 2, RecursiveVariant::X);
        double e1 = 0.0, e2 = 0.0;
        for (std::size_t j = 0; j < kGrid.size(); ++j) {
            const double x = kGrid.node(j);
            e1 = std::max(e1, std::abs(X[1][j] - cplx(std::tanh(x))));
            const double sh = std::sinh(x);
            e2 = std::max(e2, std::abs(X[2][j] - cplx(sh * sh)));
        }
        CHECK(e1 <= 1e-13);
        CHECK(e2 <= 1e-13);
    }
    SUBCASE("vanishing f0 is rejected") {
        std::vector<cplx> v(kGrid.size());
        for (std::size_t j = 0; j < kGrid.size(); ++j) v[j] = kGrid.node(j) - 0.5;
        CHECK_THROWS_AS(recursive_integrals(SampledFunction(kGrid, v), 3, RecursiveVariant::X),
                        std::domain_error);
    }
}

TEST_CASE("formal powers") {
    SUBCASE("q = 0: phi_k = x^k via the nonvanishing-f path") {
        const PotentialProfile q(kGrid, std::vector<double>(kGrid.size(), 0.0));
        auto b = std::make_shared<const ParticularBasis>(build_particular_basis(q));
        const FormalPowers fp = build_formal_powers(b, 8);
        for (int k = 0; k <= 8; ++k) {
            double err = 0.0;
            for (std::size_t j = 0; j < kGrid.size(); ++j)
                err = std::max(err, std::abs(fp.phi[static_cast<std::size_t>(k)][j] -
                                             cplx(std::pow(kGrid.node(j), k))));
            CHECK(err <= 2e-13);
        }
    }
    SUBCASE("q = 1: phi_0 = cosh, phi_1 = sinh; both construction paths agree") {
        const PotentialProfile q(kGrid, std::vector<double>(kGrid.size(), 1.0));
        auto b = std::make_shared<const ParticularBasis>(build_particular_basis(q));
        const FormalPowers fp = build_formal_powers(b, 12);
        const FormalPowers fd = build_formal_powers(b, 12, FormalPowerPath::direct_f0);
        double e0 = 0.0, e1 = 0.0, agree = 0.0;
        for (std::size_t j = 0; j < kGrid.size(); ++j) {
            const double x = kGrid.node(j);
            e0 = std::max(e0, std::abs(fp.phi[0][j] - cplx(std::cosh(x))));
            e1 = std::max(e1, std::abs(fp.phi[1][j] - cplx(std::sinh(x))));
        }
        for (int k = 0; k <= 12; ++k)
            agree = std::max(agree, fp.phi[static_cast<std::size_t>(k)].max_abs_diff(
                                        fd.phi[static_cast<std::size_t>(k)]));
        CHECK(e0 <= 1e-12);
        CHECK(e1 <= 1e-12);
        CHECK(agree <= 1e-9);
        // phi_k(0) = 0 for k >= 1, phi_0(0) = 1
        CHECK(fp.phi[0][0] == cplx(1.0));
        for (int k = 1; k <= 12; ++k) CHECK(std::abs(fp.phi[static_cast<std::size_t>(k)][0]) == 0.0);
    }
}

TEST_CASE("spps solution") {
    const PotentialProfile q1(kGrid, std::vector<double>(kGrid.size(), 1.0));
    auto b = std::make_shared<const ParticularBasis>(build_particular_basis(q1));

    SUBCASE("omega = 0 returns f0") {
        const FormalPowers fp = build_formal_powers(b, 10);
        const SppsSolution s = spps_solution(fp, 0.0, 10);
        CHECK(s.values.max_abs_diff(b->f0) <= 1e-13);
    }
    SUBCASE("q = 0, omega = 2: exponential Taylor series") {
        const PotentialProfile q0(kGrid, std::vector<double>(kGrid.size(), 0.0));
        auto b0 = std::make_shared<const ParticularBasis>(build_particular_basis(q0));
        const FormalPowers fp = build_formal_powers(b0, 40);
        const SppsSolution s = spps_solution(fp, 2.0, 40);
        double err = 0.0;
        for (std::size_t j = 0; j < kGrid.size(); ++j) {
            const cplx ref = std::exp(cplx(0.0, -2.0 * kGrid.node(j)));
            err = std::max(err, std::abs(s.values[j] - ref));
        }
        CHECK(err <= 1e-12);
    }
    SUBCASE("q = 1, omega = 3 matches the closed-form oracle") {
        const FormalPowers fp = build_formal_powers(b, 60);
        const SppsSolution s = spps_solution(fp, 3.0, 60);
        const OracleSolution oracle = constant_q_solution(1.0, 3.0, kGrid);
        CHECK(s.values.max_abs_diff(oracle.values) <= 1e-10);
    }
    SUBCASE("initial values: u(0) = 1, discrete u'(0) = -i omega") {
        const FormalPowers fp = build_formal_powers(b, 40);
        const cplx omega(2.0, 0.0);
        const SppsSolution s = spps_solution(fp, omega, 40);
        CHECK(std::abs(s.values[0] - cplx(1.0)) == 0.0);
        // 6th-order one-sided first derivative
        const double h = kGrid.spacing();
        const double c[7] = {-49.0 / 20, 6.0, -15.0 / 2, 20.0 / 3, -15.0 / 4, 6.0 / 5, -1.0 / 6};
        cplx d0 = 0.0;
        for (int i = 0; i < 7; ++i) d0 += c[i] * s.values[static_cast<std::size_t>(i)];
        d0 /= h;
        CHECK(std::abs(d0 - cplx(0.0, -2.0)) <= 1e-9);
    }
    SUBCASE("truncation beyond available powers is rejected") {
        const FormalPowers fp = build_formal_powers(b, 5);
        CHECK_THROWS_AS(spps_solution(fp, 1.0, 6), std::invalid_argument);
    }
}
