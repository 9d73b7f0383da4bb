#include "cartanflat/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <numbers>

#include "cartanflat/errors.hpp"

namespace cartanflat {

namespace {

struct FunctionEntry {
    std::string_view name;
    Op op;
};

constexpr std::array<FunctionEntry, 11> kFunctions{{
    {"sin", Op::sin},
    {"cos", Op::cos},
    {"tan", Op::tan},
    {"sinh", Op::sinh},
    {"cosh", Op::cosh},
    {"tanh", Op::tanh},
    {"exp", Op::exp},
    {"log", Op::log},
    {"sqrt", Op::sqrt},
    {"atan", Op::atan},
    {"neg", Op::neg},
}};

const Expression& zero_expression() {
    static const Expression zero = Expression::constant(0.0);
    return zero;
}

double checked(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string("non-finite result in ") + what);
    }
    return v;
}

double apply_unary(Op op, double x) {
    switch (op) {
        case Op::neg: return -x;
        case Op::sin: return std::sin(x);
        case Op::cos: return std::cos(x);
        case Op::tan: return checked(std::tan(x), "tan");
        case Op::sinh: return checked(std::sinh(x), "sinh");
        case Op::cosh: return checked(std::cosh(x), "cosh");
        case Op::tanh: return std::tanh(x);
        case Op::exp: return checked(std::exp(x), "exp");
        case Op::log:
            if (!(x > 0.0)) throw DomainError("log of non-positive value");
            return std::log(x);
        case Op::sqrt:
            if (x < 0.0) throw DomainError("sqrt of negative value");
            return std::sqrt(x);
        case Op::atan: return std::atan(x);
        default: break;
    }
    throw DomainError("not a unary operator");
}

double apply_binary(Op op, double a, double b) {
    switch (op) {
        case Op::add: return checked(a + b, "+");
        case Op::sub: return checked(a - b, "-");
        case Op::mul: return checked(a * b, "*");
        case Op::div:
            if (b == 0.0) throw DomainError("division by zero");
            return checked(a / b, "/");
        case Op::pow:
            if (a == 0.0 && b < 0.0) throw DomainError("division by zero in negative power");
            if (a < 0.0 && b != std::trunc(b)) {
                throw DomainError("negative base with non-integer exponent");
            }
            if (b == 2.0) return checked(a * a, "^");
            return checked(std::pow(a, b), "^");
        default: break;
    }
    throw DomainError("not a binary operator");
}

double eval_node(const ExprNode& n, std::span<const double> p) {
    switch (n.op) {
        case Op::constant: return n.value;
        case Op::variable:
            if (n.index >= p.size()) {
                throw DomainError("no value supplied for coordinate '" + n.name + "'");
            }
            return p[n.index];
        case Op::add:
        case Op::sub:
        case Op::mul:
        case Op::div:
        case Op::pow:
            return apply_binary(n.op, n.a.evaluate(p), n.b.evaluate(p));
        default: return apply_unary(n.op, n.a.evaluate(p));
    }
}

// ---------------------------------------------------------------------------
// Printing

int precedence(const Expression& e) {
    switch (e.op()) {
        case Op::add:
        case Op::sub: return 1;
        case Op::mul:
        case Op::div: return 2;
        case Op::neg: return 3;
        case Op::pow: return 4;
        case Op::constant: return (e.value() < 0.0 || std::signbit(e.value())) ? 3 : 5;
        default: return 5;
    }
}

void format_number(double v, std::string& out) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), ptr);
}

void print(const Expression& e, int min_prec, std::string& out);

void print_operand(const Expression& e, int min_prec, std::string& out) {
    if (precedence(e) < min_prec) {
        out.push_back('(');
        print(e, 0, out);
        out.push_back(')');
    } else {
        print(e, min_prec, out);
    }
}

void print(const Expression& e, int /*min_prec*/, std::string& out) {
    switch (e.op()) {
        case Op::constant: format_number(e.value(), out); return;
        case Op::variable: out += e.name(); return;
        case Op::neg:
            out.push_back('-');
            // A literal directly after unary minus would re-parse as a
            // negative constant, so keep it parenthesised.
            if (e.lhs().is_constant() && !std::signbit(e.lhs().value())) {
                out.push_back('(');
                print(e.lhs(), 0, out);
                out.push_back(')');
            } else {
                print_operand(e.lhs(), 3, out);
            }
            return;
        case Op::add:
        case Op::sub:
            print_operand(e.lhs(), 1, out);
            out += e.op() == Op::add ? " + " : " - ";
            print_operand(e.rhs(), 2, out);
            return;
        case Op::mul:
        case Op::div:
            print_operand(e.lhs(), 2, out);
            out += e.op() == Op::mul ? "*" : "/";
            print_operand(e.rhs(), 3, out);
            return;
        case Op::pow:
            print_operand(e.lhs(), 5, out);
            out.push_back('^');
            print_operand(e.rhs(), 3, out);
            return;
        default:
            out += function_name(e.op());
            out.push_back('(');
            print(e.lhs(), 0, out);
            out.push_back(')');
            return;
    }
}

// ---------------------------------------------------------------------------
// Parsing

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind = Tok::end;
    std::size_t offset = 0;
    std::string_view text;
    double number = 0.0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { tokens_ = run(); }
    const std::vector<Token>& tokens() const { return tokens_; }

private:
    std::vector<Token> run() {
        std::vector<Token> out;
        std::size_t i = 0;
        while (i < src_.size()) {
            const char c = src_[i];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                ++i;
                continue;
            }
            Token t;
            t.offset = i;
            if ((c >= '0' && c <= '9') || c == '.') {
                std::size_t j = i;
                while (j < src_.size() && ((src_[j] >= '0' && src_[j] <= '9') || src_[j] == '.')) ++j;
                if (j < src_.size() && (src_[j] == 'e' || src_[j] == 'E')) {
                    std::size_t k = j + 1;
                    if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
                    if (k < src_.size() && src_[k] >= '0' && src_[k] <= '9') {
                        while (k < src_.size() && src_[k] >= '0' && src_[k] <= '9') ++k;
                        j = k;
                    }
                }
                t.kind = Tok::number;
                t.text = src_.substr(i, j - i);
                auto [ptr, ec] = std::from_chars(src_.data() + i, src_.data() + j, t.number);
                if (ec != std::errc() || ptr != src_.data() + j) {
                    throw SyntaxError("malformed number '" + std::string(t.text) + "'", i);
                }
                if (!std::isfinite(t.number)) {
                    throw SyntaxError("number out of range", i);
                }
                i = j;
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i;
                while (j < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_')) {
                    ++j;
                }
                t.kind = Tok::ident;
                t.text = src_.substr(i, j - i);
                i = j;
            } else {
                switch (c) {
                    case '+': t.kind = Tok::plus; break;
                    case '-': t.kind = Tok::minus; break;
                    case '*': t.kind = Tok::star; break;
                    case '/': t.kind = Tok::slash; break;
                    case '^': t.kind = Tok::caret; break;
                    case '(': t.kind = Tok::lparen; break;
                    case ')': t.kind = Tok::rparen; break;
                    default:
                        throw SyntaxError(std::string("unexpected character '") + c + "'", i);
                }
                t.text = src_.substr(i, 1);
                ++i;
            }
            out.push_back(t);
        }
        Token end;
        end.kind = Tok::end;
        end.offset = src_.size();
        out.push_back(end);
        return out;
    }

    std::string_view src_;
    std::vector<Token> tokens_;
};

class Parser {
public:
    Parser(std::string_view src, std::span<const std::string> vars)
        : lexer_(src), toks_(lexer_.tokens()), vars_(vars) {}

    Expression run() {
        Expression e = expression();
        if (peek().kind != Tok::end) {
            throw SyntaxError("unexpected token '" + std::string(peek().text) + "'", peek().offset);
        }
        return e;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token& take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    void expect(Tok kind, const char* what) {
        if (peek().kind != kind) {
            throw SyntaxError(std::string("expected ") + what, peek().offset);
        }
        ++pos_;
    }

    Expression expression() {
        Expression lhs = term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const Op op = take().kind == Tok::plus ? Op::add : Op::sub;
            lhs = Expression::binary(op, lhs, term());
        }
        return lhs;
    }

    Expression term() {
        Expression lhs = unary();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            const Op op = take().kind == Tok::star ? Op::mul : Op::div;
            lhs = Expression::binary(op, lhs, unary());
        }
        return lhs;
    }

    Expression unary() {
        if (peek().kind == Tok::minus) {
            take();
            // "-2" is a negative literal; "-2^2" is -(2^2).
            if (peek().kind == Tok::number && peek(1).kind != Tok::caret) {
                return Expression::constant(-take().number);
            }
            return Expression::unary(Op::neg, unary());
        }
        if (peek().kind == Tok::plus) {
            take();
            return unary();
        }
        return power();
    }

    Expression power() {
        Expression base = primary();
        if (peek().kind == Tok::caret) {
            const std::size_t at = take().offset;
            Expression exponent = unary();
            if (!exponent.is_constant()) {
                if (exponent.arity() != 0 || !closed(exponent)) {
                    throw SyntaxError("exponent must be a constant", at + 1);
                }
                double v = 0.0;
                try {
                    v = exponent.evaluate({});
                } catch (const DomainError&) {
                    throw SyntaxError("exponent does not evaluate to a finite constant", at + 1);
                }
                exponent = Expression::constant(v);
            }
            return Expression::binary(Op::pow, base, exponent);
        }
        return base;
    }

    static bool closed(const Expression& e) {
        if (e.op() == Op::variable) return false;
        if (is_binary(e.op())) return closed(e.lhs()) && closed(e.rhs());
        if (is_unary(e.op())) return closed(e.lhs());
        return true;
    }

    Expression primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::number: take(); return Expression::constant(t.number);
            case Tok::lparen: {
                take();
                Expression e = expression();
                expect(Tok::rparen, "')'");
                return e;
            }
            case Tok::ident: {
                take();
                if (peek().kind == Tok::lparen) {
                    for (const auto& f : kFunctions) {
                        if (f.name == t.text && f.op != Op::neg) {
                            take();
                            Expression arg = expression();
                            expect(Tok::rparen, "')'");
                            return Expression::unary(f.op, arg);
                        }
                    }
                    throw UnknownIdentifier(std::string(t.text));
                }
                for (std::size_t i = 0; i < vars_.size(); ++i) {
                    if (vars_[i] == t.text) return Expression::variable(vars_[i], i);
                }
                if (t.text == "pi") return Expression::constant(std::numbers::pi);
                throw UnknownIdentifier(std::string(t.text));
            }
            case Tok::end: throw SyntaxError("unexpected end of input", t.offset);
            default:
                throw SyntaxError("unexpected token '" + std::string(t.text) + "'", t.offset);
        }
    }

    Lexer lexer_;
    const std::vector<Token>& toks_;
    std::span<const std::string> vars_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Differentiation

template <typename Match>
Expression derive(const Expression& e, const Match& match) {
    using namespace sym;
    switch (e.op()) {
        case Op::constant: return num(0.0);
        case Op::variable: return num(match(e) ? 1.0 : 0.0);
        default: break;
    }
    const Expression& u = e.lhs();
    const Expression du = derive(u, match);
    if (is_binary(e.op())) {
        const Expression& v = e.rhs();
        switch (e.op()) {
            case Op::add: return add(du, derive(v, match));
            case Op::sub: return sub(du, derive(v, match));
            case Op::mul: return add(mul(du, v), mul(u, derive(v, match)));
            case Op::div: {
                const Expression dv = derive(v, match);
                if (dv.is_constant(0.0)) return div(du, v);
                return div(sub(mul(du, v), mul(u, dv)), pow(v, 2.0));
            }
            case Op::pow: {
                const double c = v.value();
                return mul(mul(num(c), pow(u, c - 1.0)), du);
            }
            default: break;
        }
    }
    if (du.is_constant(0.0)) return num(0.0);
    switch (e.op()) {
        case Op::neg: return neg(du);
        case Op::sin: return mul(du, cos(u));
        case Op::cos: return neg(mul(du, sin(u)));
        case Op::tan: return div(du, pow(cos(u), 2.0));
        case Op::sinh: return mul(du, cosh(u));
        case Op::cosh: return mul(du, sinh(u));
        case Op::tanh: return div(du, pow(cosh(u), 2.0));
        case Op::exp: return mul(du, e);
        case Op::log: return div(du, u);
        case Op::sqrt: return div(du, mul(num(2.0), e));
        case Op::atan: return div(du, add(num(1.0), pow(u, 2.0)));
        default: break;
    }
    return num(0.0);
}

}  // namespace

bool is_unary(Op op) noexcept {
    return op >= Op::neg && op <= Op::atan;
}

bool is_binary(Op op) noexcept {
    return op >= Op::add && op <= Op::pow;
}

std::string_view function_name(Op op) noexcept {
    for (const auto& f : kFunctions) {
        if (f.op == op && op != Op::neg) return f.name;
    }
    return {};
}

Expression::Expression() : node_(zero_expression().node_) {}

Expression Expression::constant(double value) {
    auto n = std::make_shared<ExprNode>();
    n->op = Op::constant;
    n->value = value;
    return Expression(std::move(n));
}

Expression Expression::variable(std::string name, std::size_t index) {
    auto n = std::make_shared<ExprNode>();
    n->op = Op::variable;
    n->name = std::move(name);
    n->index = index;
    n->arity = index + 1;
    return Expression(std::move(n));
}

Expression Expression::unary(Op op, Expression arg) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->size = arg.size() + 1;
    n->arity = arg.arity();
    n->a = std::move(arg);
    return Expression(std::move(n));
}

Expression Expression::binary(Op op, Expression lhs, Expression rhs) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->size = lhs.size() + rhs.size() + 1;
    n->arity = std::max(lhs.arity(), rhs.arity());
    n->a = std::move(lhs);
    n->b = std::move(rhs);
    return Expression(std::move(n));
}

Op Expression::op() const noexcept { return node_->op; }
double Expression::value() const noexcept { return node_->value; }
const std::string& Expression::name() const noexcept { return node_->name; }
std::size_t Expression::index() const noexcept { return node_->index; }
const Expression& Expression::lhs() const noexcept { return node_->a; }
const Expression& Expression::rhs() const noexcept { return node_->b; }
std::size_t Expression::size() const noexcept { return node_->size; }
std::size_t Expression::arity() const noexcept { return node_->arity; }

double Expression::evaluate(std::span<const double> point) const {
    return eval_node(*node_, point);
}

std::string Expression::str() const {
    std::string out;
    print(*this, 0, out);
    return out;
}

std::string to_string(const Expression& e) { return e.str(); }

bool structurally_equal(const Expression& a, const Expression& b) noexcept {
    if (a.node_ == b.node_) return true;
    const ExprNode& x = *a.node_;
    const ExprNode& y = *b.node_;
    if (x.op != y.op) return false;
    switch (x.op) {
        case Op::constant: return std::memcmp(&x.value, &y.value, sizeof(double)) == 0;
        case Op::variable: return x.name == y.name && x.index == y.index;
        default: break;
    }
    if (!structurally_equal(x.a, y.a)) return false;
    return !is_binary(x.op) || structurally_equal(x.b, y.b);
}

Expression parse(std::string_view text, std::span<const std::string> vars) {
    std::size_t first = 0;
    while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
    if (first == text.size()) throw SyntaxError("empty expression", 0);
    return Parser(text, vars).run();
}

Expression differentiate(const Expression& e, std::size_t index) {
    return derive(e, [index](const Expression& v) { return v.index() == index; });
}

Expression differentiate(const Expression& e, std::string_view name) {
    return derive(e, [name](const Expression& v) { return v.name() == name; });
}

namespace sym {

namespace {

Expression fold_or(Op op, const Expression& a, const Expression& b) {
    if (a.is_constant() && b.is_constant()) {
        try {
            return Expression::constant(apply_binary(op, a.value(), b.value()));
        } catch (const DomainError&) {
        }
    }
    return Expression::binary(op, a, b);
}

}  // namespace

Expression num(double v) { return Expression::constant(v); }

Expression add(const Expression& a, const Expression& b) {
    if (a.is_constant(0.0)) return b;
    if (b.is_constant(0.0)) return a;
    if (b.op() == Op::neg) return sub(a, b.lhs());
    return fold_or(Op::add, a, b);
}

Expression sub(const Expression& a, const Expression& b) {
    if (b.is_constant(0.0)) return a;
    if (a.is_constant(0.0)) return neg(b);
    if (b.op() == Op::neg) return add(a, b.lhs());
    return fold_or(Op::sub, a, b);
}

Expression mul(const Expression& a, const Expression& b) {
    if (a.is_constant(0.0) || b.is_constant(0.0)) return num(0.0);
    if (a.is_constant(1.0)) return b;
    if (b.is_constant(1.0)) return a;
    if (a.is_constant(-1.0)) return neg(b);
    if (b.is_constant(-1.0)) return neg(a);
    if (a.op() == Op::neg && b.op() == Op::neg) return mul(a.lhs(), b.lhs());
    if (a.op() == Op::neg) return neg(mul(a.lhs(), b));
    if (b.op() == Op::neg) return neg(mul(a, b.lhs()));
    if (b.is_constant() && !a.is_constant()) return fold_or(Op::mul, b, a);
    return fold_or(Op::mul, a, b);
}

Expression div(const Expression& a, const Expression& b) {
    if (b.is_constant(1.0)) return a;
    if (a.is_constant(0.0) && !b.is_constant(0.0)) return num(0.0);
    if (b.is_constant(-1.0)) return neg(a);
    if (a.op() == Op::neg) return neg(div(a.lhs(), b));
    return fold_or(Op::div, a, b);
}

Expression neg(const Expression& a) {
    if (a.is_constant()) return num(-a.value());
    if (a.op() == Op::neg) return a.lhs();
    return Expression::unary(Op::neg, a);
}

Expression pow(const Expression& a, double exponent) {
    if (exponent == 1.0) return a;
    if (exponent == 0.0) return num(1.0);
    return fold_or(Op::pow, a, num(exponent));
}

Expression apply(Op fn, const Expression& a) {
    if (fn == Op::neg) return neg(a);
    if (a.is_constant()) {
        try {
            return Expression::constant(apply_unary(fn, a.value()));
        } catch (const DomainError&) {
        }
    }
    return Expression::unary(fn, a);
}

Expression sum(std::span<const Expression> terms) {
    Expression acc = num(0.0);
    for (const auto& t : terms) acc = add(acc, t);
    return acc;
}

}  // namespace sym

}  // namespace cartanflat
