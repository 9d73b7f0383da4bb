#pragma once

// Symbolic scalar expressions over chart coordinates.
//
// An Expression is an immutable, reference-counted AST. Variables carry both
// their name and their position in the owning coordinate list, so evaluation
// takes a plain span of coordinate values. All operations are pure.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cartanflat {

enum class Op : std::uint8_t {
    constant,
    variable,
    neg,
    sin,
    cos,
    tan,
    sinh,
    cosh,
    tanh,
    exp,
    log,
    sqrt,
    atan,
    add,
    sub,
    mul,
    div,
    pow,
};

bool is_unary(Op op) noexcept;
bool is_binary(Op op) noexcept;
/// Function-call name for unary functions ("sin", ...); empty for others.
std::string_view function_name(Op op) noexcept;

struct ExprNode;

class Expression {
public:
    /// The constant 0.
    Expression();

    static Expression constant(double value);
    static Expression variable(std::string name, std::size_t index);
    /// Raw node construction without simplification (used by the parser and
    /// by generators that need exact structure).
    static Expression unary(Op op, Expression arg);
    static Expression binary(Op op, Expression lhs, Expression rhs);

    Op op() const noexcept;
    double value() const noexcept;
    const std::string& name() const noexcept;
    std::size_t index() const noexcept;
    const Expression& lhs() const noexcept;
    const Expression& rhs() const noexcept;

    bool is_constant() const noexcept { return op() == Op::constant; }
    bool is_constant(double v) const noexcept { return is_constant() && value() == v; }

    /// Throws DomainError instead of producing a non-finite value.
    double evaluate(std::span<const double> point) const;

    /// Node count of the tree (shared subtrees counted once per use).
    std::size_t size() const noexcept;
    /// Highest variable index referenced plus one; 0 for closed expressions.
    std::size_t arity() const noexcept;

    std::string str() const;

    friend bool structurally_equal(const Expression& a, const Expression& b) noexcept;
    friend struct ExprNode;

private:
    explicit Expression(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
    Op op = Op::constant;
    double value = 0.0;
    std::size_t index = 0;
    std::string name;
    // Children are empty handles on leaves.
    Expression a{nullptr};
    Expression b{nullptr};
    std::size_t size = 1;
    std::size_t arity = 0;
};

/// Parses `text` against the declared coordinate names. `pi` is a recognised
/// constant unless it is itself declared as a coordinate.
///
/// Precedence, highest first: `^`, unary minus, `*` `/`, `+` `-`. Binary
/// operators are left associative except `^`, whose exponent must reduce to
/// a constant.
Expression parse(std::string_view text, std::span<const std::string> vars);

/// Exact derivative with respect to the coordinate at `index`.
Expression differentiate(const Expression& e, std::size_t index);
/// Exact derivative with respect to the coordinate called `name`.
Expression differentiate(const Expression& e, std::string_view name);

std::string to_string(const Expression& e);

// Simplifying constructors: fold constants and drop 0/1 identities.
namespace sym {

Expression num(double v);
Expression add(const Expression& a, const Expression& b);
Expression sub(const Expression& a, const Expression& b);
Expression mul(const Expression& a, const Expression& b);
Expression div(const Expression& a, const Expression& b);
Expression neg(const Expression& a);
Expression pow(const Expression& a, double exponent);
Expression apply(Op fn, const Expression& a);

inline Expression sin(const Expression& a) { return apply(Op::sin, a); }
inline Expression cos(const Expression& a) { return apply(Op::cos, a); }
inline Expression tan(const Expression& a) { return apply(Op::tan, a); }
inline Expression sinh(const Expression& a) { return apply(Op::sinh, a); }
inline Expression cosh(const Expression& a) { return apply(Op::cosh, a); }
inline Expression tanh(const Expression& a) { return apply(Op::tanh, a); }
inline Expression exp(const Expression& a) { return apply(Op::exp, a); }
inline Expression log(const Expression& a) { return apply(Op::log, a); }
inline Expression sqrt(const Expression& a) { return apply(Op::sqrt, a); }
inline Expression atan(const Expression& a) { return apply(Op::atan, a); }

inline Expression operator+(const Expression& a, const Expression& b) { return add(a, b); }
inline Expression operator-(const Expression& a, const Expression& b) { return sub(a, b); }
inline Expression operator*(const Expression& a, const Expression& b) { return mul(a, b); }
inline Expression operator/(const Expression& a, const Expression& b) { return div(a, b); }
inline Expression operator-(const Expression& a) { return neg(a); }
inline Expression operator*(double a, const Expression& b) { return mul(num(a), b); }
inline Expression operator+(double a, const Expression& b) { return add(num(a), b); }

/// Sum of a list, skipping zeros.
Expression sum(std::span<const Expression> terms);

}  // namespace sym

}  // namespace cartanflat
