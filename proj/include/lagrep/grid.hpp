#ifndef LAGREP_GRID_HPP
#define LAGREP_GRID_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace lagrep {

using cplx = std::complex<double>;

// Uniform spatial grid on [0, d]. Node 0 is exactly 0; spacing is d/(m-1).
// Shared immutable storage, cheap to copy. All sampled data in the library
// lives on one of these.
class Grid {
public:
    static constexpr std::size_t min_nodes = 9;

    Grid() = default;

    double extent() const { return nodes_->back(); }
    double spacing() const { return h_; }
    std::size_t size() const { return nodes_->size(); }
    const std::vector<double>& nodes() const { return *nodes_; }
    double node(std::size_t j) const { return (*nodes_)[j]; }
    bool valid() const { return nodes_ != nullptr; }

    // Grids compare equal when they share storage or have identical nodes.
    friend bool operator==(const Grid& a, const Grid& b) {
        if (a.nodes_ == b.nodes_) return true;
        if (!a.nodes_ || !b.nodes_) return false;
        return *a.nodes_ == *b.nodes_;
    }
    friend bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }

    friend Grid make_uniform_grid(double d, std::size_t m);

private:
    std::shared_ptr<const std::vector<double>> nodes_;
    double h_ = 0.0;
};

// Builds the uniform grid {0, d/(m-1), ..., d}. Throws std::invalid_argument
// for d <= 0 or m < Grid::min_nodes ("too few nodes").
Grid make_uniform_grid(double d, std::size_t m);

// Complex-valued function sampled on a grid. Values are validated to be
// finite at construction; operations that could overflow surface here.
class SampledFunction {
public:
    SampledFunction() = default;
    SampledFunction(Grid grid, std::vector<cplx> values);

    const Grid& grid() const { return grid_; }
    const std::vector<cplx>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    cplx operator[](std::size_t j) const { return values_[j]; }

    // max over nodes of |value|
    double max_abs() const;
    // max over nodes of |this - other|
    double max_abs_diff(const SampledFunction& other) const;

private:
    Grid grid_;
    std::vector<cplx> values_;
};

// Real-valued potential samples q(x_j) on a grid.
struct PotentialProfile {
    PotentialProfile() = default;
    PotentialProfile(Grid grid, std::vector<double> values);

    SampledFunction as_function() const;

    Grid grid;
    std::vector<double> values;
};

SampledFunction constant_function(const Grid& grid, cplx value);

// Elementwise arithmetic; both operands must live on the same grid.
SampledFunction operator+(const SampledFunction& f, const SampledFunction& g);
SampledFunction operator-(const SampledFunction& f, const SampledFunction& g);
SampledFunction operator*(const SampledFunction& f, const SampledFunction& g);
SampledFunction operator*(cplx s, const SampledFunction& f);
SampledFunction operator+(const SampledFunction& f, cplx s);
SampledFunction operator-(const SampledFunction& f, cplx s);

// Division floor: |g| below this anywhere signals "vanishing denominator"
// (std::domain_error). The default follows the library-wide floor used for
// the 1/f and 1/f^2 factors.
constexpr double default_division_floor = 1e-14;
SampledFunction divide(const SampledFunction& f, const SampledFunction& g,
                       double floor = default_division_floor);
SampledFunction reciprocal(const SampledFunction& g,
                           double floor = default_division_floor);
SampledFunction operator/(const SampledFunction& f, const SampledFunction& g);

// F(x_j) ~ int_0^{x_j} f, F(0) = 0 exactly. Per-interval integration of the
// local 6-point Lagrange interpolant: node-exact for polynomials of degree
// <= 5, global order 6 in the spacing.
SampledFunction cumulative_integral(const SampledFunction& f);
std::vector<double> cumulative_integral(const std::vector<double>& f, double h);

namespace detail {
// In-place kernels without construction-time validation; the streaming
// coefficient recurrence uses these and validates once per emitted row.
void cumulative_integral_raw(const cplx* f, std::size_t m, double h, cplx* out);
}  // namespace detail

}  // namespace lagrep

#endif
