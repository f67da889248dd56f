#ifndef LAGREP_SOLUTION_HPP
#define LAGREP_SOLUTION_HPP

#include <optional>

#include "lagrep/coefficients.hpp"

namespace lagrep {

// u_N(w, x) with its attached diagnostics. values(0) = 1 for every w; at
// w = 0 the series collapses to f0.
struct SolutionEvaluation {
    cplx omega;
    int N = 0;
    SampledFunction values;
    double sum_rule_residual = 0.0;
};

// The representation evaluated in z = i w/(1 - i w):
//   u_N = e^{-i w x} (1 + (1 - i w)^{-1} sum_{n<=N} a_n(x) (-z)^n).
// |z| < 1 for real w and throughout Im w > -1/2, so the powers cannot
// overflow. w = -i is the pole of the prefactor and is rejected.
SolutionEvaluation evaluate_solution(const CoefficientTable& coeffs, cplx omega, int N);

// Same sum evaluated for many omegas at once over selected grid columns
// (x index stride). Row w of `values` is u_N(omega_w, .). Coefficients are
// consumed in blocks so the N = 10^4..10^5 regime never holds a full table.
struct SweepSolutions {
    std::vector<cplx> omegas;
    std::vector<std::size_t> x_indices;
    std::vector<cplx> values;  // row-major, omegas.size() x x_indices.size()

    cplx value(std::size_t w, std::size_t xi) const {
        return values[w * x_indices.size() + xi];
    }
};

SweepSolutions sweep_solutions(const CoefficientTable& coeffs, const std::vector<cplx>& omegas,
                               int N, std::size_t x_stride = 1);
SweepSolutions sweep_solutions(std::shared_ptr<const ParticularBasis> basis,
                               const std::vector<cplx>& omegas, int N,
                               std::size_t x_stride = 1);

// Kernel slice A(x, x - t) = sum_{n<=N} a_n(x) L_n(t) e^{-t}, evaluated
// stably as [a_n l_n(t)] e^{-t/2}.
struct KernelSlice {
    double x = 0.0;
    std::vector<double> t_nodes;
    std::vector<cplx> values;
};

KernelSlice kernel_slice(const CoefficientTable& coeffs, double x,
                         const std::vector<double>& t_nodes, int N);
// Streaming variant for large N (single x column tracked while recursing).
KernelSlice kernel_slice(std::shared_ptr<const ParticularBasis> basis, double x,
                         const std::vector<double>& t_nodes, int N);

// int_0^inf A(x, x-t) (x-t)^j dt by Gauss-Laguerre applied to the truncated
// series; the rule size is raised until degree N + j is integrated exactly.
// Converges to phi_j(x) - x^j as N grows.
cplx kernel_moment(const CoefficientTable& coeffs, double x, int j, int N);

// Parseval tail surrogate for the truncation bound:
//   (sum_{n=N+1}^{Nmax} max_x |a_n|^2)^{1/2} * e^{max(0, Im w) d} / sqrt(1 + 2 Im w)
// using the coefficients the table actually holds beyond N -- a lower-bound
// surrogate, not a certified bound. nullopt when Im w <= -1/2 (outside the
// estimate's validity).
std::optional<double> uniform_error_bound(const CoefficientTable& coeffs, int N, cplx omega);
std::optional<double> uniform_error_bound(const std::vector<double>& decay, int N, cplx omega,
                                          double d);

// Spectral-shift solve: rewrites -u'' + (q + lambda) u = w0^2 u with
// w0^2 = w^2 + lambda and evaluates the representation for the shifted
// potential at w0. The result solves the original equation at spectral
// parameter w^2 but carries the shifted initial slope u'(0) = -i w0.
struct ShiftOptions {
    std::optional<cplx> omega0;   // explicit root override
    bool allow_any_root = false;  // accept roots outside the preferred regimes
};

struct ShiftedSolveResult {
    SolutionEvaluation eval;
    cplx omega0;
    double lambda = 0.0;
    cplx target_omega_sq;
};

ShiftedSolveResult shifted_solve(const PotentialProfile& q, cplx omega, int N, double lambda,
                                 const ShiftOptions& opts = {});

}  // namespace lagrep

#endif
