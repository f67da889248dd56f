#include "lagrep/spps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lagrep {

namespace {

constexpr int kPicardCap = 200;

// sum of Y_k with Y_{k+1} = iint q Y_k
SampledFunction picard_sum(const PotentialProfile& q, SampledFunction seed) {
    SampledFunction qf = q.as_function();
    SampledFunction term = std::move(seed);
    SampledFunction acc = term;
    for (int it = 0; it < kPicardCap; ++it) {
        term = cumulative_integral(cumulative_integral(qf * term));
        acc = acc + term;
        if (term.max_abs() < 1e-15 * std::max(1.0, acc.max_abs())) return acc;
    }
    throw std::runtime_error(
        "particular-solution iteration did not converge; refine the grid or reduce the interval");
}

}  // namespace

ParticularBasis build_particular_basis(const PotentialProfile& q) {
    const Grid& grid = q.grid;
    SampledFunction ones = constant_function(grid, 1.0);
    std::vector<cplx> xv(grid.size());
    for (std::size_t j = 0; j < xv.size(); ++j) xv[j] = grid.node(j);
    SampledFunction xfun(grid, std::move(xv));

    ParticularBasis b;
    b.q = q;
    b.f0 = picard_sum(q, ones);
    b.f1 = picard_sum(q, xfun);
    b.f = b.f0 + cplx(0.0, 1.0) * b.f1;
    b.fprime0 = cplx(0.0, 1.0);
    b.f_prime = cumulative_integral(q.as_function() * b.f) + b.fprime0;
    return b;
}

std::vector<SampledFunction> recursive_integrals(const SampledFunction& f0, int n_max,
                                                 RecursiveVariant variant) {
    if (n_max < 0) throw std::invalid_argument("recursive_integrals: negative n_max");
    SampledFunction f2 = f0 * f0;
    SampledFunction inv_f2 = reciprocal(f2);
    std::vector<SampledFunction> xs;
    xs.reserve(static_cast<std::size_t>(n_max) + 1);
    xs.push_back(constant_function(f0.grid(), 1.0));
    for (int n = 1; n <= n_max; ++n) {
        // X: odd n uses f0^-2; Xtilde: odd n uses f0^2
        const bool use_inverse =
            (variant == RecursiveVariant::X) ? (n % 2 == 1) : (n % 2 == 0);
        const SampledFunction& w = use_inverse ? inv_f2 : f2;
        xs.push_back(cplx(static_cast<double>(n), 0.0) * cumulative_integral(xs.back() * w));
    }
    return xs;
}

FormalPowers build_formal_powers(std::shared_ptr<const ParticularBasis> basis, int K,
                                 FormalPowerPath path) {
    if (!basis) throw std::invalid_argument("build_formal_powers: null basis");
    if (K < 0) throw std::invalid_argument("build_formal_powers: negative order");

    FormalPowers fp;
    fp.basis = basis;
    fp.phi.reserve(static_cast<std::size_t>(K) + 1);

    if (path == FormalPowerPath::direct_f0) {
        auto X = recursive_integrals(basis->f0, K, RecursiveVariant::X);
        auto Xt = recursive_integrals(basis->f0, K, RecursiveVariant::Xtilde);
        for (int k = 0; k <= K; ++k)
            fp.phi.push_back(basis->f0 * (k % 2 == 1 ? X[k] : Xt[k]));
        return fp;
    }

    // powers of the nonvanishing f, then the parity conversion; Phi_{K+1} is
    // needed for the last even index
    auto X = recursive_integrals(basis->f, K + 1, RecursiveVariant::X);
    auto Xt = recursive_integrals(basis->f, K + 1, RecursiveVariant::Xtilde);
    std::vector<SampledFunction> Phi;
    Phi.reserve(static_cast<std::size_t>(K) + 2);
    for (int k = 0; k <= K + 1; ++k)
        Phi.push_back(basis->f * (k % 2 == 1 ? X[k] : Xt[k]));
    for (int k = 0; k <= K; ++k) {
        if (k % 2 == 1)
            fp.phi.push_back(Phi[k]);
        else
            fp.phi.push_back(Phi[k] - (basis->fprime0 / static_cast<double>(k + 1)) * Phi[k + 1]);
    }
    return fp;
}

SppsSolution spps_solution(const FormalPowers& fp, cplx omega, int M) {
    if (M < 0 || M > fp.max_order())
        throw std::invalid_argument("spps_solution: truncation exceeds available formal powers");
    std::vector<cplx> acc(fp.phi[0].size(), 0.0);
    cplx c = 1.0;
    double last = 0.0;
    for (int n = 0; n <= M; ++n) {
        const auto& phin = fp.phi[static_cast<std::size_t>(n)].values();
        last = 0.0;
        for (std::size_t j = 0; j < acc.size(); ++j) {
            const cplx term = c * phin[j];
            acc[j] += term;
            last = std::max(last, std::abs(term));
        }
        c *= cplx(0.0, -1.0) * omega / static_cast<double>(n + 1);
    }
    return {SampledFunction(fp.phi[0].grid(), std::move(acc)), last};
}

double wronskian_defect(const ParticularBasis& basis) {
    // f0' and f1' by the same integral identity used for f'
    SampledFunction qf = basis.q.as_function();
    SampledFunction f0p = cumulative_integral(qf * basis.f0);
    SampledFunction f1p = cumulative_integral(qf * basis.f1) + cplx(1.0, 0.0);
    SampledFunction w = basis.f0 * f1p - f0p * basis.f1;
    return (w - cplx(1.0, 0.0)).max_abs();
}

}  // namespace lagrep
