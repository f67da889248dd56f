#include "lagrep/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace lagrep {

namespace {

// sin(z)/z, series near the origin
cplx sinc(cplx z) {
    if (std::abs(z) < 1e-4) {
        const cplx z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

// local cubic interpolation of tabulated q on its uniform grid
class CubicSampler {
public:
    explicit CubicSampler(const PotentialProfile& q) : q_(&q.values), grid_(&q.grid) {}

    double operator()(double x) const {
        const std::vector<double>& v = *q_;
        const std::size_t m = v.size();
        const double h = grid_->spacing();
        double u = x / h;
        auto j = static_cast<std::ptrdiff_t>(std::floor(u));
        j = std::clamp<std::ptrdiff_t>(j - 1, 0, static_cast<std::ptrdiff_t>(m) - 4);
        const double s = u - static_cast<double>(j);  // in [~1, ~2] for interior points
        const double c0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
        const double c1 = s * (s - 2.0) * (s - 3.0) / 2.0;
        const double c2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
        const double c3 = s * (s - 1.0) * (s - 2.0) / 6.0;
        return c0 * v[j] + c1 * v[j + 1] + c2 * v[j + 2] + c3 * v[j + 3];
    }

private:
    const std::vector<double>* q_;
    const Grid* grid_;
};

using State = std::array<cplx, 2>;  // (u, u')

State axpy(const State& y, double h, const State& k) {
    return {y[0] + h * k[0], y[1] + h * k[1]};
}

}  // namespace

OracleSolution constant_q_solution(double c, cplx omega, const Grid& grid) {
    const cplx k = std::sqrt(omega * omega - c);
    std::vector<cplx> u(grid.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double x = grid.node(j);
        const cplx kx = k * x;
        u[j] = std::cos(kx) - cplx(0.0, 1.0) * omega * x * sinc(kx);
    }
    OracleSolution sol;
    sol.omega = omega;
    sol.values = SampledFunction(grid, std::move(u));
    sol.method = OracleMethod::closed_form_constant;
    sol.est_accuracy = 1e-15;
    return sol;
}

OracleSolution rk_solution(const PotentialProfile& q, cplx omega, double tol) {
    if (tol < 1e-13) throw std::invalid_argument("rk_solution: tol below 1e-13");
    const Grid& grid = q.grid;
    const double d = grid.extent();
    CubicSampler qs(q);
    const cplx w2 = omega * omega;
    const auto rhs = [&](double x, const State& y) -> State {
        return {y[1], (qs(x) - w2) * y[0]};
    };

    // Dormand-Prince 5(4)
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                     a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    // dense-output weights
    constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                     d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                     d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    std::vector<cplx> out(grid.size());
    State y = {cplx(1.0, 0.0), cplx(0.0, -1.0) * omega};
    out[0] = y[0];
    std::size_t next = 1;

    double x = 0.0;
    double h = std::min(1e-3, d);
    const double scale_freq = std::abs(omega) + 1.0;
    h = std::min(h, 0.1 / scale_freq);
    double err_old = 1e-4;
    State k1 = rhs(x, y);
    const double hmin = 1e-14 * d;
    int steps = 0;
    while (x < d) {
        if (++steps > 10000000) throw std::runtime_error("rk_solution: step limit exceeded");
        h = std::min(h, d - x);
        if (h < hmin) throw std::runtime_error("rk_solution: step size underflow");
        const State k2 = rhs(x + c2 * h, axpy(y, h * a21, k1));
        const State k3 = rhs(x + c3 * h, {y[0] + h * (a31 * k1[0] + a32 * k2[0]),
                                          y[1] + h * (a31 * k1[1] + a32 * k2[1])});
        const State k4 = rhs(x + c4 * h, {y[0] + h * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]),
                                          y[1] + h * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1])});
        const State k5 =
            rhs(x + c5 * h, {y[0] + h * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
                             y[1] + h * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1])});
        const State k6 = rhs(
            x + h, {y[0] + h * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0]),
                    y[1] + h * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1])});
        const State y1 = {
            y[0] + h * (a71 * k1[0] + a73 * k3[0] + a74 * k4[0] + a75 * k5[0] + a76 * k6[0]),
            y[1] + h * (a71 * k1[1] + a73 * k3[1] + a74 * k4[1] + a75 * k5[1] + a76 * k6[1])};
        const State k7 = rhs(x + h, y1);

        double err = 0.0;
        for (int c = 0; c < 2; ++c) {
            const cplx e = h * (e1 * k1[c] + e3 * k3[c] + e4 * k4[c] + e5 * k5[c] + e6 * k6[c] +
                                e7 * k7[c]);
            const double sc = tol + tol * std::max(std::abs(y[c]), std::abs(y1[c]));
            const double r = std::abs(e) / sc;
            err += r * r;
        }
        err = std::sqrt(err / 2.0);

        if (err <= 1.0) {
            // accept; fill grid nodes inside (x, x+h] from the dense interpolant
            while (next < grid.size() && grid.node(next) <= x + h * (1.0 + 1e-12)) {
                const double xi = grid.node(next);
                const double th = std::clamp((xi - x) / h, 0.0, 1.0);
                const double th1 = 1.0 - th;
                cplx rcont[5];
                {
                    const cplx ydiff = y1[0] - y[0];
                    const cplx bspl = h * k1[0] - ydiff;
                    rcont[0] = y[0];
                    rcont[1] = ydiff;
                    rcont[2] = bspl;
                    rcont[3] = ydiff - h * k7[0] - bspl;
                    rcont[4] = h * (d1 * k1[0] + d3 * k3[0] + d4 * k4[0] + d5 * k5[0] +
                                    d6 * k6[0] + d7 * k7[0]);
                }
                out[next] =
                    rcont[0] +
                    th * (rcont[1] + th1 * (rcont[2] + th * (rcont[3] + th1 * rcont[4])));
                ++next;
            }
            x += h;
            y = y1;
            k1 = k7;  // FSAL
            const double fac =
                0.9 * std::pow(err > 0 ? err : 1e-16, -0.7 / 5.0) * std::pow(err_old, 0.4 / 5.0);
            h *= std::clamp(fac, 0.2, 5.0);
            err_old = std::max(err, 1e-4);
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }
    // only the endpoint can be epsilon-missed by the dense fill
    if (next + 1 < grid.size())
        throw std::logic_error("rk_solution: dense output missed interior nodes");
    if (next < grid.size()) out[next] = y[0];

    OracleSolution sol;
    sol.omega = omega;
    sol.values = SampledFunction(grid, std::move(out));
    sol.method = OracleMethod::rk_adaptive;
    sol.est_accuracy = 10.0 * tol;
    return sol;
}

}  // namespace lagrep
