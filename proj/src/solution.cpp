#include "lagrep/solution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lagrep/laguerre.hpp"

namespace lagrep {

namespace {

constexpr double kPoleTolerance = 1e-14;

cplx check_omega(cplx omega) {
    if (std::abs(cplx(1.0, 0.0) - cplx(0.0, 1.0) * omega) < kPoleTolerance)
        throw std::domain_error("omega = -i is a pole of the representation");
    return omega;
}

cplx neg_z(cplx omega) {
    const cplx one_minus_iw = cplx(1.0, 0.0) - cplx(0.0, 1.0) * omega;
    return -(cplx(0.0, 1.0) * omega) / one_minus_iw;
}

std::size_t nearest_node(const Grid& grid, double x) {
    if (x < 0.0 || x > grid.extent() * (1.0 + 1e-12))
        throw std::invalid_argument("x outside the grid interval");
    const double j = x / grid.spacing();
    const auto idx = static_cast<std::size_t>(std::llround(j));
    return std::min(idx, grid.size() - 1);
}

// Accumulates S[w][x] = sum_n a_n(x) (-z_w)^n from coefficient rows fed in
// order. Rows are transposed into SoA blocks; the flush kernel tiles over
// omegas so coefficient blocks stream once per 16-omega tile.
class SweepAccumulator {
public:
    static constexpr std::size_t block_rows = 256;
    static constexpr std::size_t omega_tile = 16;

    SweepAccumulator(std::vector<cplx> omegas, std::vector<std::size_t> x_indices)
        : omegas_(std::move(omegas)), xidx_(std::move(x_indices)), msel_(xidx_.size()) {
        const std::size_t W = omegas_.size();
        negz_re_.resize(W);
        negz_im_.resize(W);
        pw_re_.assign(W, 1.0);
        pw_im_.assign(W, 0.0);
        for (std::size_t w = 0; w < W; ++w) {
            const cplx nz = neg_z(check_omega(omegas_[w]));
            negz_re_[w] = nz.real();
            negz_im_[w] = nz.imag();
        }
        acc_re_.assign(W * msel_, 0.0);
        acc_im_.assign(W * msel_, 0.0);
        blk_re_.resize(block_rows * msel_);
        blk_im_.resize(block_rows * msel_);
        p_re_.resize(block_rows * W);
        p_im_.resize(block_rows * W);
    }

    void push_row(const std::vector<cplx>& full_row) {
        double* br = &blk_re_[fill_ * msel_];
        double* bi = &blk_im_[fill_ * msel_];
        for (std::size_t i = 0; i < msel_; ++i) {
            const cplx v = full_row[xidx_[i]];
            br[i] = v.real();
            bi[i] = v.imag();
        }
        if (++fill_ == block_rows) flush();
    }

    SweepSolutions finalize(const Grid& grid) {
        flush();
        const std::size_t W = omegas_.size();
        SweepSolutions out;
        out.omegas = omegas_;
        out.x_indices = xidx_;
        out.values.resize(W * msel_);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t ws = 0; ws < static_cast<std::ptrdiff_t>(W); ++ws) {
            const auto w = static_cast<std::size_t>(ws);
            const cplx omega = omegas_[w];
            const cplx inv = 1.0 / (cplx(1.0, 0.0) - cplx(0.0, 1.0) * omega);
            for (std::size_t i = 0; i < msel_; ++i) {
                const cplx s(acc_re_[w * msel_ + i], acc_im_[w * msel_ + i]);
                const cplx phase = std::exp(cplx(0.0, -1.0) * omega * grid.node(xidx_[i]));
                out.values[w * msel_ + i] = phase * (1.0 + inv * s);
            }
        }
        return out;
    }

private:
    void flush() {
        if (fill_ == 0) return;
        const std::size_t W = omegas_.size();
        const std::size_t B = fill_;
        for (std::size_t b = 0; b < B; ++b) {
            double* pr = &p_re_[b * W];
            double* pi = &p_im_[b * W];
            for (std::size_t w = 0; w < W; ++w) {
                pr[w] = pw_re_[w];
                pi[w] = pw_im_[w];
                const double nr = pw_re_[w] * negz_re_[w] - pw_im_[w] * negz_im_[w];
                const double ni = pw_re_[w] * negz_im_[w] + pw_im_[w] * negz_re_[w];
                pw_re_[w] = nr;
                pw_im_[w] = ni;
            }
        }
        const std::ptrdiff_t tiles =
            static_cast<std::ptrdiff_t>((W + omega_tile - 1) / omega_tile);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t t = 0; t < tiles; ++t) {
            const std::size_t w0 = static_cast<std::size_t>(t) * omega_tile;
            const std::size_t w1 = std::min(w0 + omega_tile, W);
            for (std::size_t b = 0; b < B; ++b) {
                const double* br = &blk_re_[b * msel_];
                const double* bi = &blk_im_[b * msel_];
                for (std::size_t w = w0; w < w1; ++w) {
                    const double pr = p_re_[b * W + w];
                    const double pi = p_im_[b * W + w];
                    double* ar = &acc_re_[w * msel_];
                    double* ai = &acc_im_[w * msel_];
                    for (std::size_t i = 0; i < msel_; ++i) {
                        ar[i] += br[i] * pr - bi[i] * pi;
                        ai[i] += br[i] * pi + bi[i] * pr;
                    }
                }
            }
        }
        fill_ = 0;
    }

    std::vector<cplx> omegas_;
    std::vector<std::size_t> xidx_;
    std::size_t msel_;
    std::vector<double> negz_re_, negz_im_, pw_re_, pw_im_;
    std::vector<double> acc_re_, acc_im_;
    std::vector<double> blk_re_, blk_im_;
    std::vector<double> p_re_, p_im_;
    std::size_t fill_ = 0;
};

std::vector<std::size_t> strided_indices(std::size_t m, std::size_t stride) {
    if (stride == 0) throw std::invalid_argument("x stride must be positive");
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < m; j += stride) idx.push_back(j);
    if (idx.back() != m - 1) idx.push_back(m - 1);
    return idx;
}

}  // namespace

SolutionEvaluation evaluate_solution(const CoefficientTable& coeffs, cplx omega, int N) {
    if (N < 0 || N > coeffs.max_index())
        throw std::invalid_argument("evaluate_solution: N outside the coefficient table");
    check_omega(omega);
    const Grid& grid = coeffs.grid();
    const std::size_t m = grid.size();
    const cplx nz = neg_z(omega);
    const cplx inv = 1.0 / (cplx(1.0, 0.0) - cplx(0.0, 1.0) * omega);

    std::vector<cplx> s(m, 0.0);
    cplx p = 1.0;
    for (int n = 0; n <= N; ++n) {
        const auto& row = coeffs.a[static_cast<std::size_t>(n)].values();
        for (std::size_t j = 0; j < m; ++j) s[j] += row[j] * p;
        p *= nz;
    }
    std::vector<cplx> u(m);
    for (std::size_t j = 0; j < m; ++j)
        u[j] = std::exp(cplx(0.0, -1.0) * omega * grid.node(j)) * (1.0 + inv * s[j]);

    SolutionEvaluation ev;
    ev.omega = omega;
    ev.N = N;
    ev.values = SampledFunction(grid, std::move(u));
    ev.sum_rule_residual = sum_rule_residual(coeffs, N);
    return ev;
}

SweepSolutions sweep_solutions(const CoefficientTable& coeffs, const std::vector<cplx>& omegas,
                               int N, std::size_t x_stride) {
    if (N < 0 || N > coeffs.max_index())
        throw std::invalid_argument("sweep_solutions: N outside the coefficient table");
    const Grid& grid = coeffs.grid();
    SweepAccumulator acc(omegas, strided_indices(grid.size(), x_stride));
    for (int n = 0; n <= N; ++n) acc.push_row(coeffs.a[static_cast<std::size_t>(n)].values());
    return acc.finalize(grid);
}

SweepSolutions sweep_solutions(std::shared_ptr<const ParticularBasis> basis,
                               const std::vector<cplx>& omegas, int N, std::size_t x_stride) {
    if (N < 0) throw std::invalid_argument("sweep_solutions: negative order");
    CoefficientStream stream(std::move(basis));
    const Grid& grid = stream.grid();
    SweepAccumulator acc(omegas, strided_indices(grid.size(), x_stride));
    for (int n = 0; n <= N; ++n) {
        if (n > 0) stream.advance();
        acc.push_row(stream.current());
    }
    return acc.finalize(grid);
}

KernelSlice kernel_slice(const CoefficientTable& coeffs, double x,
                         const std::vector<double>& t_nodes, int N) {
    if (N < 0 || N > coeffs.max_index())
        throw std::invalid_argument("kernel_slice: N outside the coefficient table");
    const std::size_t jx = nearest_node(coeffs.grid(), x);
    std::vector<cplx> column(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) column[static_cast<std::size_t>(n)] = coeffs.a[static_cast<std::size_t>(n)].values()[jx];

    KernelSlice slice;
    slice.x = coeffs.grid().node(jx);
    slice.t_nodes = t_nodes;
    slice.values.resize(t_nodes.size());
    std::vector<double> ln;
    for (std::size_t i = 0; i < t_nodes.size(); ++i) {
        const double t = t_nodes[i];
        if (t < 0.0) throw std::invalid_argument("kernel_slice: negative t");
        scaled_laguerre_column(N, t, ln);
        cplx s = 0.0;
        for (int n = 0; n <= N; ++n) s += column[static_cast<std::size_t>(n)] * ln[static_cast<std::size_t>(n)];
        slice.values[i] = s * std::exp(-0.5 * t);
    }
    return slice;
}

KernelSlice kernel_slice(std::shared_ptr<const ParticularBasis> basis, double x,
                         const std::vector<double>& t_nodes, int N) {
    if (N < 0) throw std::invalid_argument("kernel_slice: negative order");
    CoefficientStream stream(std::move(basis));
    const std::size_t jx = nearest_node(stream.grid(), x);
    for (double t : t_nodes)
        if (t < 0.0) throw std::invalid_argument("kernel_slice: negative t");

    // run the three-term recurrence for l_n(t) alongside the coefficient
    // stream; only one scalar per t node is retained
    const std::size_t T = t_nodes.size();
    std::vector<double> lm1(T, 0.0), l(T), acc_re(T, 0.0), acc_im(T, 0.0);
    for (std::size_t i = 0; i < T; ++i) l[i] = std::exp(-0.5 * t_nodes[i]);
    for (int n = 0; n <= N; ++n) {
        if (n > 0) {
            stream.advance();
            for (std::size_t i = 0; i < T; ++i) {
                const double t = t_nodes[i];
                const double k = n - 1;
                const double lp1 = ((2.0 * k + 1.0 - t) * l[i] - k * lm1[i]) / (k + 1.0);
                lm1[i] = l[i];
                l[i] = lp1;
            }
        }
        const cplx an = stream.current()[jx];
        for (std::size_t i = 0; i < T; ++i) {
            acc_re[i] += an.real() * l[i];
            acc_im[i] += an.imag() * l[i];
        }
    }
    KernelSlice slice;
    slice.x = stream.grid().node(jx);
    slice.t_nodes = t_nodes;
    slice.values.resize(T);
    for (std::size_t i = 0; i < T; ++i)
        slice.values[i] = cplx(acc_re[i], acc_im[i]) * std::exp(-0.5 * t_nodes[i]);
    return slice;
}

cplx kernel_moment(const CoefficientTable& coeffs, double x, int j, int N) {
    if (j < 0) throw std::invalid_argument("kernel_moment: negative power");
    if (N < 0 || N > coeffs.max_index())
        throw std::invalid_argument("kernel_moment: N outside the coefficient table");
    const std::size_t jx = nearest_node(coeffs.grid(), x);
    const double xv = coeffs.grid().node(jx);
    std::vector<cplx> column(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n)
        column[static_cast<std::size_t>(n)] = coeffs.a[static_cast<std::size_t>(n)].values()[jx];

    // enough nodes to integrate the degree N + j integrand exactly
    const int rule_size = (N + j) / 2 + 1;
    const GaussLaguerreRule rule = GaussLaguerreRule::build(rule_size);

    cplx moment = 0.0;
    std::vector<double> ln;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double v = rule.scaled_weights[i];
        if (v == 0.0) continue;
        const double t = rule.nodes[i];
        scaled_laguerre_column(N, t, ln);
        cplx g = 0.0;
        for (int n = 0; n <= N; ++n) g += column[static_cast<std::size_t>(n)] * ln[static_cast<std::size_t>(n)];
        moment += v * g * std::pow(xv - t, j);
    }
    return moment;
}

std::optional<double> uniform_error_bound(const std::vector<double>& decay, int N, cplx omega,
                                          double d) {
    if (omega.imag() <= -0.5) return std::nullopt;
    double tail_sq = 0.0;
    for (std::size_t n = static_cast<std::size_t>(N) + 1; n < decay.size(); ++n)
        tail_sq += decay[n] * decay[n];
    const double factor =
        std::exp(std::max(0.0, omega.imag()) * d) / std::sqrt(1.0 + 2.0 * omega.imag());
    return std::sqrt(tail_sq) * factor;
}

std::optional<double> uniform_error_bound(const CoefficientTable& coeffs, int N, cplx omega) {
    if (N < 0 || N > coeffs.max_index())
        throw std::invalid_argument("uniform_error_bound: N outside the coefficient table");
    return uniform_error_bound(coefficient_decay(coeffs), N, omega, coeffs.grid().extent());
}

ShiftedSolveResult shifted_solve(const PotentialProfile& q, cplx omega, int N, double lambda,
                                 const ShiftOptions& opts) {
    const cplx target_sq = omega * omega;
    const cplx omega0_sq = target_sq + lambda;
    cplx omega0;
    if (opts.omega0) {
        omega0 = *opts.omega0;
        if (std::abs(omega0 * omega0 - omega0_sq) >
            1e-9 * (1.0 + std::abs(omega0_sq)))
            throw std::invalid_argument("shifted_solve: omega0 override inconsistent with omega^2 + lambda");
    } else {
        const cplx r = std::sqrt(omega0_sq);
        const auto admissible = [](cplx c) {
            const double re = c.real(), im = c.imag();
            if (std::abs(im) <= 1e-12 * (1.0 + std::abs(re))) return true;  // real root
            if (std::abs(re) <= 1e-12 * (1.0 + std::abs(im)) && im > -0.5 && im < 0.0)
                return true;  // fast-convergence strip
            return false;
        };
        const cplx cand[2] = {r, -r};
        bool found = false;
        double best = 0.0;
        for (const cplx& c : cand) {
            if (!admissible(c)) continue;
            const double dist = std::abs(c - omega);
            if (!found || dist < best) {
                omega0 = c;
                best = dist;
                found = true;
            }
        }
        if (!found) {
            if (!opts.allow_any_root)
                throw std::domain_error(
                    "shifted_solve: no root of omega^2 + lambda is real or in the fast strip "
                    "-1/2 < Im < 0; pass an explicit omega0 or allow any root");
            for (const cplx& c : cand) {
                if (c.imag() <= -0.5) continue;
                const double dist = std::abs(c - omega);
                if (!found || dist < best) {
                    omega0 = c;
                    best = dist;
                    found = true;
                }
            }
            if (!found)
                throw std::domain_error("shifted_solve: both roots have Im <= -1/2");
        }
    }
    check_omega(omega0);

    std::vector<double> shifted(q.values);
    for (double& v : shifted) v += lambda;
    PotentialProfile qs(q.grid, std::move(shifted));
    auto basis = std::make_shared<const ParticularBasis>(build_particular_basis(qs));
    CoefficientTable table = coefficients_recurrent(basis, N);

    ShiftedSolveResult res;
    res.eval = evaluate_solution(table, omega0, N);
    res.omega0 = omega0;
    res.lambda = lambda;
    res.target_omega_sq = target_sq;
    return res;
}

}  // namespace lagrep
