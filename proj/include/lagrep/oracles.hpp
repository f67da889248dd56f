#ifndef LAGREP_ORACLES_HPP
#define LAGREP_ORACLES_HPP

#include "lagrep/grid.hpp"

namespace lagrep {

enum class OracleMethod { closed_form_constant, rk_adaptive };

// Reference solution of -u'' + q u = w^2 u, u(0) = 1, u'(0) = -i w,
// used only for verification.
struct OracleSolution {
    cplx omega;
    SampledFunction values;
    OracleMethod method = OracleMethod::closed_form_constant;
    double est_accuracy = 0.0;
};

// q = c constant: u = cos(kx) - (i w/k) sin(kx), k = sqrt(w^2 - c).
// Even in k, so the branch does not matter; the k -> 0 limit (w^2 = c)
// degenerates smoothly to 1 - i w x via a series for sin(kx)/k.
OracleSolution constant_q_solution(double c, cplx omega, const Grid& grid);

// Dormand-Prince 5(4) with PI step control and 4th-order dense output
// sampled on the grid; atol = rtol = tol. q is evaluated between nodes by
// local cubic interpolation (exact for polynomial q up to degree 3).
// Cost grows with |w|; step-size underflow throws std::runtime_error.
OracleSolution rk_solution(const PotentialProfile& q, cplx omega, double tol);

}  // namespace lagrep

#endif
