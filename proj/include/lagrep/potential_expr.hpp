#ifndef LAGREP_POTENTIAL_EXPR_HPP
#define LAGREP_POTENTIAL_EXPR_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "lagrep/grid.hpp"

namespace lagrep {

// Parse failure with the byte offset of the offending token.
class PotentialParseError : public std::runtime_error {
public:
    PotentialParseError(const std::string& msg, std::size_t offset);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// q(x) given as an expression over {x, literals, + - * / ^, sin, cos, exp,
// cosh, sinh, sqrt, abs}, a builtin name ("zero", "one"), or "@file.csv"
// (two-column x,q samples, strictly increasing x starting at 0, interpolated
// cubically onto the target grid).
class PotentialExpr {
public:
    // precedence: ^ (right assoc) > unary - > * / > + -
    static PotentialExpr parse(const std::string& spec);

    double operator()(double x) const;
    std::string to_string() const;

    // samples onto a grid; throws std::domain_error if any value is not finite
    PotentialProfile sample(const Grid& grid) const;

    // true when the expression is a literal constant (value reported via out
    // param); drives closed-form oracle selection
    bool is_constant(double* value = nullptr) const;

    struct Node;

private:
    std::shared_ptr<const Node> root_;
};

}  // namespace lagrep

#endif
