#ifndef LAGREP_LAGUERRE_HPP
#define LAGREP_LAGUERRE_HPP

#include <cstddef>
#include <vector>

namespace lagrep {

// L_n(t) by the three-term recurrence (k+1)L_{k+1} = (2k+1-t)L_k - k L_{k-1}.
double laguerre_eval(int n, double t);

// l_n(t) = L_n(t) e^{-t/2}; bounded by 1 for all t >= 0, usable where the
// bare polynomial would overflow. Fills values for n = 0..n_max.
void scaled_laguerre_column(int n_max, double t, std::vector<double>& out);

// Gauss-Laguerre rule for int_0^inf g(t) e^{-t} dt = sum_i weight_i g(t_i).
// Weights are stored premultiplied by e^{t_i/2} ("scaled_weights"), so
//   integral = sum_i scaled_weights[i] * [g(t_i) e^{-t_i/2}]
// which stays representable when g grows like e^{t/2} (truncated Laguerre
// series do). Scaled weights that underflow are clamped to zero; the
// corresponding true contributions are below double range.
struct GaussLaguerreRule {
    std::vector<double> nodes;
    std::vector<double> scaled_weights;

    std::size_t size() const { return nodes.size(); }

    // Newton iteration with marching initial guesses; exact for polynomial
    // integrands of degree <= 2n-1. Throws std::runtime_error if a root
    // fails to converge.
    static GaussLaguerreRule build(int n);
};

}  // namespace lagrep

#endif
