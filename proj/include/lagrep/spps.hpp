#ifndef LAGREP_SPPS_HPP
#define LAGREP_SPPS_HPP

#include <memory>
#include <vector>

#include "lagrep/grid.hpp"

namespace lagrep {

// Particular solutions of f'' = q f:
//   f0(0) = 1, f0'(0) = 0      f1(0) = 0, f1'(0) = 1
// and the nonvanishing combination f = f0 + i f1 (q real guarantees f has no
// zeros). f_prime comes from the integral identity f' = f'(0) + int_0^x q f,
// preserving quadrature-order accuracy.
struct ParticularBasis {
    PotentialProfile q;
    SampledFunction f0;
    SampledFunction f1;
    SampledFunction f;
    SampledFunction f_prime;
    cplx fprime0{0.0, 1.0};

    const Grid& grid() const { return q.grid; }
};

// Builds f0, f1 by Picard iteration: Y_0 = seed, Y_{k+1} = double cumulative
// integral of q Y_k, summed until the sup-norm increment drops below 1e-15
// (relative) or the iteration cap is hit, in which case it throws
// std::runtime_error (refine the grid or shrink the interval).
ParticularBasis build_particular_basis(const PotentialProfile& q);

enum class RecursiveVariant { X, Xtilde };

// The two weighted recursive-integral ladders:
//   X^(0) = 1,  X^(n) = n int_0^x X^(n-1) (f0^2)^{(-1)^n}
//   same with exponent (-1)^(n-1) for the Xtilde variant.
// f0 may be complex (the nonvanishing f path); a zero of f0 on the grid
// trips the division floor (std::domain_error).
std::vector<SampledFunction> recursive_integrals(const SampledFunction& f0, int n_max,
                                                 RecursiveVariant variant);

enum class FormalPowerPath {
    nonvanishing_f,  // Phi_k from f = f0 + i f1, converted (default)
    direct_f0,       // phi_k straight from f0 (requires f0 nonvanishing)
};

struct FormalPowers {
    std::vector<SampledFunction> phi;  // phi[k], k = 0..K
    std::shared_ptr<const ParticularBasis> basis;

    int max_order() const { return static_cast<int>(phi.size()) - 1; }
};

// Formal powers phi_0..phi_K associated with f0. The default path builds the
// powers of the nonvanishing f and converts
//   phi_k = Phi_k (k odd),  Phi_k - f'(0)/(k+1) Phi_{k+1} (k even),
// which needs no zero detection; the direct path exists for agreement tests.
FormalPowers build_formal_powers(std::shared_ptr<const ParticularBasis> basis, int K,
                                 FormalPowerPath path = FormalPowerPath::nonvanishing_f);

struct SppsSolution {
    SampledFunction values;
    double last_term_max_abs;  // tail-size diagnostic: max |c_M phi_M|
};

// Power series in the spectral parameter: sum_{n<=M} (-i w)^n phi_n / n!,
// accumulated with c_n = c_{n-1} (-i w)/n so n! never materializes.
SppsSolution spps_solution(const FormalPowers& fp, cplx omega, int M);

// max over nodes of |f0 f1' - f0' f1 - 1|; conservation diagnostic.
double wronskian_defect(const ParticularBasis& basis);

}  // namespace lagrep

#endif
