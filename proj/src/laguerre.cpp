#include "lagrep/laguerre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lagrep {

double laguerre_eval(int n, double t) {
    if (n < 0) throw std::invalid_argument("laguerre_eval: negative order");
    if (t < 0.0) throw std::invalid_argument("laguerre_eval: negative argument");
    double lm1 = 0.0, l = 1.0;
    for (int k = 0; k < n; ++k) {
        const double lp1 = ((2.0 * k + 1.0 - t) * l - k * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

void scaled_laguerre_column(int n_max, double t, std::vector<double>& out) {
    out.resize(static_cast<std::size_t>(n_max) + 1);
    double lm1 = 0.0, l = std::exp(-0.5 * t);
    out[0] = l;
    for (int k = 0; k < n_max; ++k) {
        const double lp1 = ((2.0 * k + 1.0 - t) * l - k * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
        out[static_cast<std::size_t>(k) + 1] = l;
    }
}

namespace {

// Evaluate L_n(t) and L_{n-1}(t) up to a common scale 2^(1200 e): ratios and
// Newton steps are scale-invariant, and the weight formula only needs
// log|L_{n}|. Rescaling keeps the recurrence inside double range for any n, t.
struct ScaledPair {
    double l;      // L_n / scale
    double lm1;    // L_{n-1} / scale
    int rescales;  // scale = kRescale^rescales
};

constexpr double kRescale = 1e250;
constexpr double kInvRescale = 1e-250;

ScaledPair laguerre_pair_scaled(int n, double t) {
    double lm1 = 0.0, l = 1.0;
    int e = 0;
    for (int k = 0; k < n; ++k) {
        const double lp1 = ((2.0 * k + 1.0 - t) * l - k * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
        const double a = std::fabs(l);
        if (a > kRescale) {
            l *= kInvRescale;
            lm1 *= kInvRescale;
            ++e;
        } else if (a > 0.0 && a < kInvRescale) {
            l *= kRescale;
            lm1 *= kRescale;
            --e;
        }
    }
    return {l, lm1, e};
}

}  // namespace

GaussLaguerreRule GaussLaguerreRule::build(int n) {
    if (n < 1) throw std::invalid_argument("Gauss-Laguerre rule needs n >= 1");
    GaussLaguerreRule rule;
    rule.nodes.resize(n);
    rule.scaled_weights.resize(n);
    const double log_rescale = std::log(kRescale);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            z = 3.0 / (1.0 + 2.4 * n);
        } else if (i == 1) {
            z = rule.nodes[0] + 15.0 / (1.0 + 2.5 * n);
        } else {
            const double ai = i - 1;
            z = rule.nodes[i - 1] +
                ((1.0 + 2.55 * ai) / (1.9 * ai)) * (rule.nodes[i - 1] - rule.nodes[i - 2]);
        }
        bool converged = false;
        double prev_dz = 1e300;
        for (int it = 0; it < 100; ++it) {
            const ScaledPair p = laguerre_pair_scaled(n, z);
            // L'_n(t) = n (L_n(t) - L_{n-1}(t)) / t, same scale as p
            const double dl = n * (p.l - p.lm1) / z;
            const double dz = p.l / dl;
            z -= dz;
            const double mag = std::fabs(dz);
            if (mag <= 1e-14 * std::max(std::fabs(z), 1.0) ||
                (mag >= prev_dz && prev_dz <= 1e-9 * std::max(std::fabs(z), 1.0))) {
                converged = true;  // at or below the rounding floor
                break;
            }
            prev_dz = mag;
        }
        if (!converged) throw std::runtime_error("Gauss-Laguerre node failed to converge");
        if (i > 0 && z <= rule.nodes[i - 1])
            throw std::runtime_error("Gauss-Laguerre nodes out of order");
        rule.nodes[i] = z;
        // w_i = t_i / ((n+1)^2 L_{n+1}(t_i)^2); store v_i = w_i e^{t_i/2}
        const ScaledPair q = laguerre_pair_scaled(n + 1, z);
        const double logL = std::log(std::fabs(q.l)) + q.rescales * log_rescale;
        const double logv = std::log(z) + 0.5 * z - 2.0 * (std::log(n + 1.0) + logL);
        rule.scaled_weights[i] = logv > -745.0 ? std::exp(logv) : 0.0;
    }
    return rule;
}

}  // namespace lagrep
