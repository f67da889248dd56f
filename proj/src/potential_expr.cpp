#include "lagrep/potential_expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lagrep {

PotentialParseError::PotentialParseError(const std::string& msg, std::size_t offset)
    : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}

namespace {

enum class Op { add, sub, mul, div, pow };
enum class Fn { sin, cos, exp, cosh, sinh, sqrt, abs };

const char* fn_name(Fn f) {
    switch (f) {
        case Fn::sin: return "sin";
        case Fn::cos: return "cos";
        case Fn::exp: return "exp";
        case Fn::cosh: return "cosh";
        case Fn::sinh: return "sinh";
        case Fn::sqrt: return "sqrt";
        case Fn::abs: return "abs";
    }
    return "?";
}

double fn_eval(Fn f, double v) {
    switch (f) {
        case Fn::sin: return std::sin(v);
        case Fn::cos: return std::cos(v);
        case Fn::exp: return std::exp(v);
        case Fn::cosh: return std::cosh(v);
        case Fn::sinh: return std::sinh(v);
        case Fn::sqrt: return std::sqrt(v);
        case Fn::abs: return std::fabs(v);
    }
    return 0.0;
}

}  // namespace

struct PotentialExpr::Node {
    enum class Kind { number, variable, unary_minus, binary, call, samples } kind;
    double number = 0.0;
    Op op = Op::add;
    Fn fn = Fn::sin;
    std::shared_ptr<const Node> lhs, rhs, arg;
    // samples: tabulated (x, q) pairs from a file
    std::vector<double> xs, qs;
    std::string source;  // "@path" spelling for samples
};

namespace {

using Node = PotentialExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::number;
    n->number = v;
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr run() {
        NodePtr e = expression();
        skip_ws();
        if (pos_ != s_.size()) throw PotentialParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    // expression := term (('+'|'-') term)*
    NodePtr expression() {
        NodePtr e = term();
        for (;;) {
            if (eat('+'))
                e = binary(Op::add, e, term());
            else if (eat('-'))
                e = binary(Op::sub, e, term());
            else
                return e;
        }
    }

    // term := unary (('*'|'/') unary)*
    NodePtr term() {
        NodePtr e = unary();
        for (;;) {
            if (eat('*'))
                e = binary(Op::mul, e, unary());
            else if (eat('/'))
                e = binary(Op::div, e, unary());
            else
                return e;
        }
    }

    // unary := '-' unary | power
    NodePtr unary() {
        if (eat('-')) {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::unary_minus;
            n->arg = unary();
            return n;
        }
        return power();
    }

    // power := primary ('^' unary)?   (right associative, exponent may be signed)
    NodePtr power() {
        NodePtr base = primary();
        if (eat('^')) return binary(Op::pow, base, unary());
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= s_.size()) throw PotentialParseError("unexpected end of input", pos_);
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expression();
            if (!eat(')')) throw PotentialParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw PotentialParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr number() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        while (end < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.'))
            ++end;
        if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
            std::size_t e2 = end + 1;
            if (e2 < s_.size() && (s_[e2] == '+' || s_[e2] == '-')) ++e2;
            if (e2 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e2]))) {
                ++e2;
                while (e2 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e2]))) ++e2;
                end = e2;
            }
        }
        try {
            std::size_t used = 0;
            const double v = std::stod(s_.substr(start, end - start), &used);
            if (used != end - start) throw std::invalid_argument("");
            pos_ = end;
            return make_number(v);
        } catch (const std::exception&) {
            throw PotentialParseError("malformed number", start);
        }
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
        const std::string name = s_.substr(start, end - start);
        pos_ = end;
        if (name == "x") {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::variable;
            return n;
        }
        if (name == "zero") return make_number(0.0);
        if (name == "one") return make_number(1.0);
        static const std::pair<const char*, Fn> fns[] = {
            {"sin", Fn::sin},   {"cos", Fn::cos},   {"exp", Fn::exp},  {"cosh", Fn::cosh},
            {"sinh", Fn::sinh}, {"sqrt", Fn::sqrt}, {"abs", Fn::abs}};
        for (const auto& [fname, fv] : fns) {
            if (name == fname) {
                if (!eat('(')) throw PotentialParseError("expected '(' after function name", pos_);
                NodePtr a = expression();
                if (!eat(')')) throw PotentialParseError("expected ')'", pos_);
                auto n = std::make_shared<Node>();
                n->kind = Node::Kind::call;
                n->fn = fv;
                n->arg = a;
                return n;
            }
        }
        throw PotentialParseError("unknown identifier '" + name + "'", start);
    }

    static NodePtr binary(Op op, NodePtr l, NodePtr r) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::binary;
        n->op = op;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

NodePtr load_samples(const std::string& spec) {
    const std::string path = spec.substr(1);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open potential file: " + path);
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::samples;
    n->source = spec;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        for (char& c : line)
            if (c == ',' || c == ';') c = ' ';
        std::istringstream ls(line);
        double x, q;
        if (!(ls >> x >> q)) {
            if (lineno == 1) continue;  // tolerate a header row
            throw std::runtime_error("malformed sample line " + std::to_string(lineno) + " in " +
                                     path);
        }
        n->xs.push_back(x);
        n->qs.push_back(q);
    }
    if (n->xs.size() < 4)
        throw std::runtime_error("potential file needs at least 4 samples: " + path);
    if (n->xs.front() != 0.0)
        throw std::runtime_error("potential samples must start at x = 0: " + path);
    for (std::size_t i = 1; i < n->xs.size(); ++i)
        if (!(n->xs[i] > n->xs[i - 1]))
            throw std::runtime_error("potential sample abscissae must be strictly increasing: " +
                                     path);
    return n;
}

double eval_node(const Node& n, double x);

double eval_samples(const Node& n, double x) {
    const auto& xs = n.xs;
    const auto& qs = n.qs;
    if (x <= xs.front()) return qs.front();
    if (x >= xs.back()) return qs.back();
    // locate, then 4-point Lagrange on the neighborhood
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::ptrdiff_t j = (it - xs.begin()) - 1;
    j = std::clamp<std::ptrdiff_t>(j - 1, 0, static_cast<std::ptrdiff_t>(xs.size()) - 4);
    double r = 0.0;
    for (int a = 0; a < 4; ++a) {
        double term = qs[j + a];
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            term *= (x - xs[j + b]) / (xs[j + a] - xs[j + b]);
        }
        r += term;
    }
    return r;
}

double eval_node(const Node& n, double x) {
    switch (n.kind) {
        case Node::Kind::number: return n.number;
        case Node::Kind::variable: return x;
        case Node::Kind::unary_minus: return -eval_node(*n.arg, x);
        case Node::Kind::call: return fn_eval(n.fn, eval_node(*n.arg, x));
        case Node::Kind::samples: return eval_samples(n, x);
        case Node::Kind::binary: {
            const double a = eval_node(*n.lhs, x);
            const double b = eval_node(*n.rhs, x);
            switch (n.op) {
                case Op::add: return a + b;
                case Op::sub: return a - b;
                case Op::mul: return a * b;
                case Op::div: return a / b;
                case Op::pow: return std::pow(a, b);
            }
        }
    }
    return 0.0;
}

int precedence_of(const Node& n) {
    switch (n.kind) {
        case Node::Kind::binary:
            switch (n.op) {
                case Op::add:
                case Op::sub: return 1;
                case Op::mul:
                case Op::div: return 2;
                case Op::pow: return 4;
            }
            return 1;
        case Node::Kind::unary_minus: return 3;
        default: return 5;
    }
}

void print_node(const Node& n, std::ostream& os) {
    const auto paren = [&](const Node& child, bool strict) {
        const bool need = strict ? precedence_of(child) <= precedence_of(n)
                                 : precedence_of(child) < precedence_of(n);
        if (need) os << '(';
        print_node(child, os);
        if (need) os << ')';
    };
    switch (n.kind) {
        case Node::Kind::number: {
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << n.number;
            os << tmp.str();
            return;
        }
        case Node::Kind::variable: os << 'x'; return;
        case Node::Kind::unary_minus:
            os << '-';
            paren(*n.arg, false);
            return;
        case Node::Kind::call:
            os << fn_name(n.fn) << '(';
            print_node(*n.arg, os);
            os << ')';
            return;
        case Node::Kind::samples: os << n.source; return;
        case Node::Kind::binary: {
            const char* sym = n.op == Op::add   ? " + "
                              : n.op == Op::sub ? " - "
                              : n.op == Op::mul ? "*"
                              : n.op == Op::div ? "/"
                                                : "^";
            paren(*n.lhs, n.op == Op::pow);
            os << sym;
            paren(*n.rhs, n.op != Op::pow);
            return;
        }
    }
}

}  // namespace

PotentialExpr PotentialExpr::parse(const std::string& spec) {
    PotentialExpr e;
    std::size_t first = 0;
    while (first < spec.size() && std::isspace(static_cast<unsigned char>(spec[first]))) ++first;
    if (first == spec.size()) throw PotentialParseError("empty potential specification", 0);
    if (spec[first] == '@') {
        e.root_ = load_samples(spec.substr(first));
        return e;
    }
    e.root_ = Parser(spec).run();
    return e;
}

double PotentialExpr::operator()(double x) const { return eval_node(*root_, x); }

std::string PotentialExpr::to_string() const {
    std::ostringstream os;
    print_node(*root_, os);
    return os.str();
}

PotentialProfile PotentialExpr::sample(const Grid& grid) const {
    std::vector<double> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = eval_node(*root_, grid.node(j));
        if (!std::isfinite(v[j]))
            throw std::domain_error("potential evaluates to a non-finite value at x = " +
                                    std::to_string(grid.node(j)));
    }
    return PotentialProfile(grid, std::move(v));
}

namespace {

bool depends_on_x(const Node& n) {
    switch (n.kind) {
        case Node::Kind::number: return false;
        case Node::Kind::variable:
        case Node::Kind::samples: return true;
        case Node::Kind::unary_minus:
        case Node::Kind::call: return depends_on_x(*n.arg);
        case Node::Kind::binary: return depends_on_x(*n.lhs) || depends_on_x(*n.rhs);
    }
    return true;
}

}  // namespace

bool PotentialExpr::is_constant(double* value) const {
    if (depends_on_x(*root_)) return false;
    if (value) *value = eval_node(*root_, 0.0);
    return true;
}

}  // namespace lagrep
