#include "lagrep/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lagrep {

namespace {

void check_finite(const std::vector<cplx>& v) {
    for (const cplx& z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::domain_error("sampled function has non-finite values");
    }
}

void check_same_grid(const SampledFunction& f, const SampledFunction& g) {
    if (f.grid() != g.grid()) throw std::invalid_argument("grid mismatch");
}

}  // namespace

Grid make_uniform_grid(double d, std::size_t m) {
    if (!(d > 0.0)) throw std::invalid_argument("grid extent must be positive");
    if (m < Grid::min_nodes)
        throw std::invalid_argument("too few nodes: need at least " +
                                    std::to_string(Grid::min_nodes));
    std::vector<double> nodes(m);
    const double h = d / static_cast<double>(m - 1);
    for (std::size_t j = 0; j < m; ++j) nodes[j] = static_cast<double>(j) * h;
    nodes[0] = 0.0;
    nodes[m - 1] = d;
    Grid g;
    g.nodes_ = std::make_shared<const std::vector<double>>(std::move(nodes));
    g.h_ = h;
    return g;
}

SampledFunction::SampledFunction(Grid grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_.valid()) throw std::invalid_argument("sampled function needs a grid");
    if (values_.size() != grid_.size())
        throw std::invalid_argument("value count does not match grid");
    check_finite(values_);
}

double SampledFunction::max_abs() const {
    double m = 0.0;
    for (const cplx& z : values_) m = std::max(m, std::abs(z));
    return m;
}

double SampledFunction::max_abs_diff(const SampledFunction& other) const {
    check_same_grid(*this, other);
    double m = 0.0;
    for (std::size_t j = 0; j < values_.size(); ++j)
        m = std::max(m, std::abs(values_[j] - other.values_[j]));
    return m;
}

PotentialProfile::PotentialProfile(Grid g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (!grid.valid()) throw std::invalid_argument("potential needs a grid");
    if (values.size() != grid.size())
        throw std::invalid_argument("value count does not match grid");
    for (double q : values)
        if (!std::isfinite(q)) throw std::domain_error("potential has non-finite values");
}

SampledFunction PotentialProfile::as_function() const {
    std::vector<cplx> v(values.begin(), values.end());
    return SampledFunction(grid, std::move(v));
}

SampledFunction constant_function(const Grid& grid, cplx value) {
    return SampledFunction(grid, std::vector<cplx>(grid.size(), value));
}

SampledFunction operator+(const SampledFunction& f, const SampledFunction& g) {
    check_same_grid(f, g);
    std::vector<cplx> v(f.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f[j] + g[j];
    return SampledFunction(f.grid(), std::move(v));
}

SampledFunction operator-(const SampledFunction& f, const SampledFunction& g) {
    check_same_grid(f, g);
    std::vector<cplx> v(f.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f[j] - g[j];
    return SampledFunction(f.grid(), std::move(v));
}

SampledFunction operator*(const SampledFunction& f, const SampledFunction& g) {
    check_same_grid(f, g);
    std::vector<cplx> v(f.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f[j] * g[j];
    return SampledFunction(f.grid(), std::move(v));
}

SampledFunction operator*(cplx s, const SampledFunction& f) {
    std::vector<cplx> v(f.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = s * f[j];
    return SampledFunction(f.grid(), std::move(v));
}

SampledFunction operator+(const SampledFunction& f, cplx s) {
    std::vector<cplx> v(f.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f[j] + s;
    return SampledFunction(f.grid(), std::move(v));
}

SampledFunction operator-(const SampledFunction& f, cplx s) { return f + (-s); }

SampledFunction divide(const SampledFunction& f, const SampledFunction& g, double floor) {
    check_same_grid(f, g);
    std::vector<cplx> v(f.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (std::abs(g[j]) < floor) throw std::domain_error("vanishing denominator");
        v[j] = f[j] / g[j];
    }
    return SampledFunction(f.grid(), std::move(v));
}

SampledFunction reciprocal(const SampledFunction& g, double floor) {
    std::vector<cplx> v(g.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (std::abs(g[j]) < floor) throw std::domain_error("vanishing denominator");
        v[j] = 1.0 / g[j];
    }
    return SampledFunction(g.grid(), std::move(v));
}

SampledFunction operator/(const SampledFunction& f, const SampledFunction& g) {
    return divide(f, g);
}

namespace detail {

// Weights of the degree-5 Lagrange interpolant on six consecutive uniform
// nodes, integrated over one interval. Row p integrates over [t_p, t_{p+1}]
// of the stencil; rows 0,1 / 3,4 handle the boundary intervals, row 2 is the
// centered interior rule. Exact rationals.
constexpr double kW[5][6] = {
    {95.0 / 288.0, 1427.0 / 1440.0, -133.0 / 240.0, 241.0 / 720.0, -173.0 / 1440.0, 3.0 / 160.0},
    {-3.0 / 160.0, 637.0 / 1440.0, 511.0 / 720.0, -43.0 / 240.0, 77.0 / 1440.0, -11.0 / 1440.0},
    {11.0 / 1440.0, -31.0 / 480.0, 401.0 / 720.0, 401.0 / 720.0, -31.0 / 480.0, 11.0 / 1440.0},
    {-11.0 / 1440.0, 77.0 / 1440.0, -43.0 / 240.0, 511.0 / 720.0, 637.0 / 1440.0, -3.0 / 160.0},
    {3.0 / 160.0, -173.0 / 1440.0, 241.0 / 720.0, -133.0 / 240.0, 1427.0 / 1440.0, 95.0 / 288.0},
};

void cumulative_integral_raw(const cplx* f, std::size_t m, double h, cplx* out) {
    out[0] = 0.0;
    cplx acc = 0.0;
    // boundary intervals at the left
    for (std::size_t j = 0; j < 2; ++j) {
        const double* w = kW[j];
        cplx inc = 0.0;
        for (int i = 0; i < 6; ++i) inc += w[i] * f[i];
        acc += h * inc;
        out[j + 1] = acc;
    }
    // interior
    const double* w = kW[2];
    for (std::size_t j = 2; j + 3 < m; ++j) {
        const cplx* s = f + (j - 2);
        cplx inc = w[0] * s[0] + w[1] * s[1] + w[2] * s[2] + w[3] * s[3] + w[4] * s[4] + w[5] * s[5];
        acc += h * inc;
        out[j + 1] = acc;
    }
    // boundary intervals at the right
    for (std::size_t j = m - 3; j < m - 1; ++j) {
        const double* w2 = kW[j - (m - 6)];
        const cplx* s = f + (m - 6);
        cplx inc = 0.0;
        for (int i = 0; i < 6; ++i) inc += w2[i] * s[i];
        acc += h * inc;
        out[j + 1] = acc;
    }
}

}  // namespace detail

SampledFunction cumulative_integral(const SampledFunction& f) {
    std::vector<cplx> out(f.size());
    detail::cumulative_integral_raw(f.values().data(), f.size(), f.grid().spacing(), out.data());
    return SampledFunction(f.grid(), std::move(out));
}

std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
    std::vector<cplx> tmp(f.begin(), f.end()), out(f.size());
    detail::cumulative_integral_raw(tmp.data(), tmp.size(), h, out.data());
    std::vector<double> r(f.size());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = out[j].real();
    return r;
}

}  // namespace lagrep
