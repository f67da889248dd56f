#ifndef LAGREP_COEFFICIENTS_HPP
#define LAGREP_COEFFICIENTS_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "lagrep/spps.hpp"

namespace lagrep {

enum class CoefficientMethod { direct, recurrent };

// Series coefficients a_0(x)..a_N(x) of the kernel expansion, held as full
// rows. For very large N prefer CoefficientStream, which keeps one row.
struct CoefficientTable {
    std::vector<SampledFunction> a;
    CoefficientMethod method = CoefficientMethod::recurrent;
    std::shared_ptr<const ParticularBasis> basis;

    int max_index() const { return static_cast<int>(a.size()) - 1; }
    const Grid& grid() const { return basis->grid(); }
};

// Explicit formula in terms of formal powers,
//   a_n = sum_{j<=n} (-1)^j (phi_j - x^j) sum_{k=j}^n (-1)^k C(n,k,j) x^{k-j},
//   C(n,k,j) = n!/((n-k)! k! (k-j)! j!)  (incremental-ratio evaluation).
// Alternating sums lose digits as n grows; capped at N <= 30. The recurrent
// path is the production path, this one is its independent oracle.
constexpr int direct_method_cap = 30;
CoefficientTable coefficients_direct(const FormalPowers& fp, int N);

// Recurrent integration procedure:
//   a_0 = f0 - 1
//   a_n = a_{n-1} - 2 f int_0^x a_{n-1}/f + 2 f int_0^x f^-2 int_0^t f' a_{n-1}
// a_n(0) = 0 holds exactly by construction.
CoefficientTable coefficients_recurrent(std::shared_ptr<const ParticularBasis> basis, int N);

// Lazily yields a_0, a_1, ... without retaining past rows; the reciprocals
// 1/f, 1/f^2 are formed once. Rows are finite-checked as they are produced.
class CoefficientStream {
public:
    explicit CoefficientStream(std::shared_ptr<const ParticularBasis> basis);

    int index() const { return n_; }
    const std::vector<cplx>& current() const { return a_; }
    const Grid& grid() const { return basis_->grid(); }
    const ParticularBasis& basis() const { return *basis_; }
    std::shared_ptr<const ParticularBasis> basis_ptr() const { return basis_; }

    void advance();

private:
    std::shared_ptr<const ParticularBasis> basis_;
    std::vector<cplx> f_, fp_, inv_f_, inv_f2_;
    std::vector<cplx> a_, t1_, t2_, t3_;
    double h_;
    int n_ = 0;
};

// Streaming diagnostics over a_0..a_N:
//   decay[n]      = max_x |a_n(x)|
//   residual_at   = max_x |1/2 int_0^x q - sum_{n<=N'} a_n(x)| at checkpoints
// (the sum-rule quantity of the kernel diagonal). The optional row sink sees
// every coefficient row as it is produced.
struct StreamDiagnostics {
    std::vector<double> decay;
    std::map<int, double> residual_at;
};

using CoefficientRowSink =
    std::function<void(int n, const std::vector<cplx>& row)>;

StreamDiagnostics stream_coefficients(std::shared_ptr<const ParticularBasis> basis, int N,
                                      const std::vector<int>& residual_checkpoints = {},
                                      const CoefficientRowSink& sink = nullptr);

// max over nodes of |1/2 int_0^x q - sum_{n<=N} a_n(x)|
double sum_rule_residual(const CoefficientTable& coeffs, const PotentialProfile& q, int N);
double sum_rule_residual(const CoefficientTable& coeffs, int N);

// per-n sup norms, the coefficient-decay diagnostic
std::vector<double> coefficient_decay(const CoefficientTable& coeffs);

}  // namespace lagrep

#endif
