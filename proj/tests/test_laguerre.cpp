#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lagrep/laguerre.hpp"

using namespace lagrep;

TEST_CASE("laguerre polynomial values") {
    CHECK(laguerre_eval(0, 0.7) == 1.0);
    CHECK(laguerre_eval(1, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(laguerre_eval(2, 1.0) == doctest::Approx(1.0 - 2.0 + 0.5).epsilon(1e-14));

    // explicit sum oracle: L_5(1/2) = sum_k (-1)^k C(5,k) (1/2)^k / k!
    double ref = 0.0, comb = 1.0, pw = 1.0, fact = 1.0;
    for (int k = 0; k <= 5; ++k) {
        ref += ((k % 2 == 0) ? 1.0 : -1.0) * comb * pw / fact;
        comb *= static_cast<double>(5 - k) / (k + 1.0);
        pw *= 0.5;
        fact *= (k + 1.0);
    }
    CHECK(ref == doctest::Approx(-0.4455729166666667).epsilon(1e-15));
    CHECK(laguerre_eval(5, 0.5) == doctest::Approx(ref).epsilon(1e-14));

    CHECK(laguerre_eval(0, 0.0) == 1.0);
    CHECK(laguerre_eval(7, 0.0) == doctest::Approx(1.0).epsilon(1e-14));  // L_n(0) = 1
}

TEST_CASE("scaled laguerre column matches bare recurrence") {
    std::vector<double> col;
    scaled_laguerre_column(20, 1.3, col);
    const double s = std::exp(-0.65);
    for (int n = 0; n <= 20; ++n)
        CHECK(col[static_cast<std::size_t>(n)] ==
              doctest::Approx(laguerre_eval(n, 1.3) * s).epsilon(1e-13));
    // |L_n(t) e^{-t/2}| <= 1
    for (double t : {0.0, 1.0, 17.5, 133.0, 801.0}) {
        scaled_laguerre_column(500, t, col);
        for (double v : col) CHECK(std::abs(v) <= 1.0 + 1e-12);
    }
}

TEST_CASE("gauss-laguerre n=20 reference values") {
    // frozen from an independent orthogonal-polynomial implementation
    const GaussLaguerreRule rule = GaussLaguerreRule::build(20);
    REQUIRE(rule.size() == 20);
    CHECK(rule.nodes[0] == doctest::Approx(7.0539889691988753e-02).epsilon(1e-13));
    CHECK(rule.nodes[19] == doctest::Approx(6.6524416525615749e+01).epsilon(1e-13));
    // first plain weight w_0 = v_0 e^{-t_0/2}
    const double w0 = rule.scaled_weights[0] * std::exp(-0.5 * rule.nodes[0]);
    CHECK(w0 == doctest::Approx(1.6874680185111224e-01).epsilon(1e-12));
}

TEST_CASE("gauss-laguerre moments") {
    // sum_i v_i t_i^k e^{-t_i/2} = k! for k <= 2n-1
    for (int n : {6, 64, 700, 1100}) {
        const GaussLaguerreRule rule = GaussLaguerreRule::build(n);
        for (std::size_t i = 1; i < rule.size(); ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        for (int k : {0, 1, 2, 7, 19}) {
            if (k > 2 * n - 1) continue;
            double mom = 0.0, fact = 1.0;
            for (int j = 2; j <= k; ++j) fact *= j;
            for (std::size_t i = 0; i < rule.size(); ++i)
                mom += rule.scaled_weights[i] * std::pow(rule.nodes[i], k) *
                       std::exp(-0.5 * rule.nodes[i]);
            CHECK(mom == doctest::Approx(fact).epsilon(n > 500 ? 1e-9 : 1e-12));
        }
    }
}
