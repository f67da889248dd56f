#include "lagrep/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lagrep {

CoefficientTable coefficients_direct(const FormalPowers& fp, int N) {
    if (N < 0) throw std::invalid_argument("coefficients_direct: negative order");
    if (N > direct_method_cap)
        throw std::invalid_argument("coefficients_direct: N above the stability cap (30)");
    if (fp.max_order() < N)
        throw std::invalid_argument("coefficients_direct: not enough formal powers");

    const Grid& grid = fp.basis->grid();
    const std::size_t m = grid.size();
    CoefficientTable table;
    table.method = CoefficientMethod::direct;
    table.basis = fp.basis;
    table.a.reserve(static_cast<std::size_t>(N) + 1);

    std::vector<double> x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = grid.node(i);

    std::vector<cplx> row(m);
    std::vector<double> xj(m), xkj(m), inner(m);
    for (int n = 0; n <= N; ++n) {
        std::fill(row.begin(), row.end(), cplx(0.0));
        std::fill(xj.begin(), xj.end(), 1.0);
        double cjj = 1.0;  // C(n,j,j) = binom(n,j)/j!
        for (int j = 0; j <= n; ++j) {
            std::fill(inner.begin(), inner.end(), 0.0);
            std::fill(xkj.begin(), xkj.end(), 1.0);
            double c = cjj;
            for (int k = j; k <= n; ++k) {
                const double sk = (k % 2 == 0) ? c : -c;
                for (std::size_t i = 0; i < m; ++i) inner[i] += sk * xkj[i];
                if (k < n) {
                    for (std::size_t i = 0; i < m; ++i) xkj[i] *= x[i];
                    c *= static_cast<double>(n - k) /
                         (static_cast<double>(k + 1) * static_cast<double>(k + 1 - j));
                }
            }
            const auto& phij = fp.phi[static_cast<std::size_t>(j)].values();
            const double sj = (j % 2 == 0) ? 1.0 : -1.0;
            for (std::size_t i = 0; i < m; ++i) row[i] += sj * (phij[i] - xj[i]) * inner[i];
            if (j < n) {
                for (std::size_t i = 0; i < m; ++i) xj[i] *= x[i];
                cjj *= static_cast<double>(n - j) /
                       (static_cast<double>(j + 1) * static_cast<double>(j + 1));
            }
        }
        row[0] = 0.0;  // exact: every term carries a factor phi_j(0) - 0^j = 0
        table.a.emplace_back(grid, row);
    }
    return table;
}

CoefficientStream::CoefficientStream(std::shared_ptr<const ParticularBasis> basis)
    : basis_(std::move(basis)) {
    if (!basis_) throw std::invalid_argument("CoefficientStream: null basis");
    const std::size_t m = basis_->grid().size();
    h_ = basis_->grid().spacing();
    f_ = basis_->f.values();
    fp_ = basis_->f_prime.values();
    inv_f_ = reciprocal(basis_->f).values();
    SampledFunction f2 = basis_->f * basis_->f;
    inv_f2_ = reciprocal(f2).values();
    a_.resize(m);
    t1_.resize(m);
    t2_.resize(m);
    t3_.resize(m);
    const auto& f0 = basis_->f0.values();
    for (std::size_t j = 0; j < m; ++j) a_[j] = f0[j] - 1.0;
}

void CoefficientStream::advance() {
    const std::size_t m = a_.size();
    for (std::size_t j = 0; j < m; ++j) t2_[j] = a_[j] * inv_f_[j];
    detail::cumulative_integral_raw(t2_.data(), m, h_, t1_.data());  // t1 = int a/f
    for (std::size_t j = 0; j < m; ++j) t2_[j] = fp_[j] * a_[j];
    detail::cumulative_integral_raw(t2_.data(), m, h_, t3_.data());  // t3 = int f' a
    for (std::size_t j = 0; j < m; ++j) t2_[j] = t3_[j] * inv_f2_[j];
    detail::cumulative_integral_raw(t2_.data(), m, h_, t3_.data());  // t3 = int f^-2 int f' a
    for (std::size_t j = 0; j < m; ++j) a_[j] -= 2.0 * f_[j] * (t1_[j] - t3_[j]);
    a_[0] = 0.0;
    ++n_;
    for (std::size_t j = 0; j < m; ++j) {
        if (!std::isfinite(a_[j].real()) || !std::isfinite(a_[j].imag()))
            throw std::domain_error("coefficient recurrence produced non-finite values");
    }
}

CoefficientTable coefficients_recurrent(std::shared_ptr<const ParticularBasis> basis, int N) {
    if (N < 0) throw std::invalid_argument("coefficients_recurrent: negative order");
    CoefficientStream stream(std::move(basis));
    CoefficientTable table;
    table.method = CoefficientMethod::recurrent;
    table.basis = stream.basis_ptr();
    table.a.reserve(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) {
        if (n > 0) stream.advance();
        table.a.emplace_back(stream.grid(), stream.current());
    }
    return table;
}

StreamDiagnostics stream_coefficients(std::shared_ptr<const ParticularBasis> basis, int N,
                                      const std::vector<int>& residual_checkpoints,
                                      const CoefficientRowSink& sink) {
    if (N < 0) throw std::invalid_argument("stream_coefficients: negative order");
    CoefficientStream stream(std::move(basis));
    const std::size_t m = stream.grid().size();
    const PotentialProfile& q = stream.basis().q;

    std::vector<double> half_int_q =
        cumulative_integral(q.values, stream.grid().spacing());
    for (double& v : half_int_q) v *= 0.5;

    std::vector<cplx> running_sum(m, 0.0);
    StreamDiagnostics diag;
    diag.decay.resize(static_cast<std::size_t>(N) + 1);
    std::vector<char> want(static_cast<std::size_t>(N) + 1, 0);
    for (int c : residual_checkpoints)
        if (c >= 0 && c <= N) want[static_cast<std::size_t>(c)] = 1;

    for (int n = 0; n <= N; ++n) {
        if (n > 0) stream.advance();
        const auto& row = stream.current();
        double mx = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            running_sum[j] += row[j];
            mx = std::max(mx, std::abs(row[j]));
        }
        diag.decay[static_cast<std::size_t>(n)] = mx;
        if (want[static_cast<std::size_t>(n)]) {
            double r = 0.0;
            for (std::size_t j = 0; j < m; ++j)
                r = std::max(r, std::abs(half_int_q[j] - running_sum[j]));
            diag.residual_at[n] = r;
        }
        if (sink) sink(n, row);
    }
    return diag;
}

double sum_rule_residual(const CoefficientTable& coeffs, const PotentialProfile& q, int N) {
    if (N < 0 || N > coeffs.max_index())
        throw std::invalid_argument("sum_rule_residual: N outside table");
    if (q.grid != coeffs.grid()) throw std::invalid_argument("grid mismatch");
    const std::size_t m = q.grid.size();
    std::vector<double> int_q = cumulative_integral(q.values, q.grid.spacing());
    std::vector<cplx> sum(m, 0.0);
    for (int n = 0; n <= N; ++n) {
        const auto& row = coeffs.a[static_cast<std::size_t>(n)].values();
        for (std::size_t j = 0; j < m; ++j) sum[j] += row[j];
    }
    double r = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        r = std::max(r, std::abs(0.5 * int_q[j] - sum[j]));
    return r;
}

double sum_rule_residual(const CoefficientTable& coeffs, int N) {
    return sum_rule_residual(coeffs, coeffs.basis->q, N);
}

std::vector<double> coefficient_decay(const CoefficientTable& coeffs) {
    std::vector<double> d(coeffs.a.size());
    for (std::size_t n = 0; n < coeffs.a.size(); ++n) d[n] = coeffs.a[n].max_abs();
    return d;
}

}  // namespace lagrep
