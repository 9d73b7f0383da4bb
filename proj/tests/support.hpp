#pragma once

// Test-only oracles and generators. Nothing here calls the library's
// derivative code: derivatives are central differences of plain evaluations.

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cartanflat/errors.hpp"
#include "cartanflat/expr.hpp"
#include "cartanflat/metric.hpp"
#include "cartanflat/random.hpp"

namespace oracle {

using cartanflat::Mat;
using cartanflat::Vec;

inline double central_difference(const std::function<double(std::span<const double>)>& f,
                                 std::vector<double> p, std::size_t i, double h) {
    const double x = p[i];
    p[i] = x + h;
    const double up = f(p);
    p[i] = x - h;
    const double down = f(p);
    return (up - down) / (2.0 * h);
}

inline Mat metric_at(const cartanflat::ChartMetric& m, std::vector<double> p) { return m.at(p); }

/// ∂_k g by fourth-order central differences of evaluated g.
inline Mat metric_partial(const cartanflat::ChartMetric& m, std::vector<double> p, std::size_t k,
                          double h = 1e-4) {
    const double x = p[k];
    auto at = [&](double s) {
        p[k] = x + s;
        return m.at(p);
    };
    const Mat d = (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
    p[k] = x;
    return d;
}

/// Γ^k_ij from finite-difference metric derivatives; out[k](i, j).
inline std::vector<Mat> christoffel(const cartanflat::ChartMetric& m, const std::vector<double>& p,
                                    double h = 1e-4) {
    const std::size_t n = m.dim();
    const Mat ginv = m.at(p).inverse();
    std::vector<Mat> dg;
    for (std::size_t k = 0; k < n; ++k) dg.push_back(metric_partial(m, p, k, h));
    std::vector<Mat> out(n, Mat::Zero(n, n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < n; ++l)
                    out[k](i, j) += 0.5 * ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
    return out;
}

/// 2D Gaussian curvature by the Brioschi formula with finite-difference
/// metric derivatives (E = g11, F = g12, G = g22).
inline double brioschi(const cartanflat::ChartMetric& m, std::vector<double> p, double h = 1e-3) {
    auto g = [&](double du, double dv) {
        std::vector<double> q{p[0] + du, p[1] + dv};
        return m.at(q);
    };
    auto comp = [&](int a, int b, double du, double dv) { return g(du, dv)(a, b); };
    auto d_u = [&](int a, int b) { return (comp(a, b, h, 0) - comp(a, b, -h, 0)) / (2 * h); };
    auto d_v = [&](int a, int b) { return (comp(a, b, 0, h) - comp(a, b, 0, -h)) / (2 * h); };
    auto d_uu = [&](int a, int b) {
        return (comp(a, b, h, 0) - 2 * comp(a, b, 0, 0) + comp(a, b, -h, 0)) / (h * h);
    };
    auto d_vv = [&](int a, int b) {
        return (comp(a, b, 0, h) - 2 * comp(a, b, 0, 0) + comp(a, b, 0, -h)) / (h * h);
    };
    auto d_uv = [&](int a, int b) {
        return (comp(a, b, h, h) - comp(a, b, h, -h) - comp(a, b, -h, h) + comp(a, b, -h, -h)) /
               (4 * h * h);
    };
    const double E = comp(0, 0, 0, 0), F = comp(0, 1, 0, 0), G = comp(1, 1, 0, 0);
    const double Eu = d_u(0, 0), Ev = d_v(0, 0), Fu = d_u(0, 1), Fv = d_v(0, 1), Gu = d_u(1, 1),
                 Gv = d_v(1, 1);
    const double Evv = d_vv(0, 0), Fuv = d_uv(0, 1), Guu = d_uu(1, 1);
    Eigen::Matrix3d a, b;
    a << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev, Fv - 0.5 * Gu, E, F, 0.5 * Gv, F, G;
    b << 0, 0.5 * Ev, 0.5 * Gu, 0.5 * Ev, E, F, 0.5 * Gu, F, G;
    const double det = E * G - F * F;
    return (a.determinant() - b.determinant()) / (det * det);
}

/// Random expression trees for the round-trip property: any node shape the
/// grammar can express, including negative constants and nested powers.
class AnyTree {
public:
    AnyTree(std::uint64_t seed, std::size_t vars) : rng_(seed), vars_(vars) {}

    cartanflat::Expression make(int depth) {
        using cartanflat::Expression;
        using cartanflat::Op;
        const double roll = rng_.unit();
        if (depth == 0 || roll < 0.2) return leaf();
        if (roll < 0.5) {
            static const Op unary[] = {Op::neg,  Op::sin, Op::cos,  Op::tan, Op::sinh, Op::cosh,
                                       Op::tanh, Op::exp, Op::log,  Op::sqrt, Op::atan};
            return Expression::unary(unary[rng_.below(11)], make(depth - 1));
        }
        static const Op binary[] = {Op::add, Op::sub, Op::mul, Op::div, Op::pow};
        const Op op = binary[rng_.below(5)];
        if (op == Op::pow) return Expression::binary(op, make(depth - 1), constant());
        return Expression::binary(op, make(depth - 1), make(depth - 1));
    }

private:
    cartanflat::Expression constant() {
        static const double special[] = {0.0, 1.0, -1.0, 2.0, 0.5, -0.5, 1e-7, 3.0e8, 0.1, -2.5e-12, 1.0 / 3.0};
        if (rng_.unit() < 0.4) return cartanflat::Expression::constant(special[rng_.below(11)]);
        const double mag = std::pow(10.0, rng_.uniform(-6.0, 6.0));
        return cartanflat::Expression::constant(rng_.unit() < 0.5 ? -mag : mag);
    }

    cartanflat::Expression leaf() {
        if (rng_.unit() < 0.4) return constant();
        const std::size_t i = rng_.below(vars_);
        return cartanflat::Expression::variable("x" + std::to_string(i + 1), i);
    }

    cartanflat::Rng rng_;
    std::size_t vars_;
};

/// Random trees whose values and derivatives stay moderate on [-1, 1]^vars,
/// for comparing symbolic derivatives with central differences. Each node
/// carries a bound on |value|; log, sqrt, division and real powers only see
/// arguments known to be ≥ 1.
class TameTree {
public:
    struct Node {
        cartanflat::Expression e;
        double bound;     // |e| ≤ bound
        bool at_least_1;  // e ≥ 1
    };

    TameTree(std::uint64_t seed, std::size_t vars) : rng_(seed), vars_(vars) {}

    Node make(int depth) {
        using cartanflat::Expression;
        using cartanflat::Op;
        const double roll = rng_.unit();
        if (depth == 0 || roll < 0.2) return leaf();
        if (roll < 0.55) {
            Node a = make(depth - 1);
            switch (rng_.below(9)) {
                case 0: return {Expression::unary(Op::sin, a.e), 1.0, false};
                case 1: return {Expression::unary(Op::cos, a.e), 1.0, false};
                case 2: return {Expression::unary(Op::atan, a.e), 1.6, false};
                case 3: return {Expression::unary(Op::tanh, a.e), 1.0, false};
                case 4: return {Expression::unary(Op::neg, a.e), a.bound, false};
                case 5: {
                    Node b = squash(a);
                    return {Expression::unary(Op::exp, b.e), std::exp(b.bound), false};
                }
                case 6: {
                    Node b = squash(a);
                    return {Expression::unary(Op::cosh, b.e), std::cosh(b.bound), true};
                }
                case 7: {
                    Node b = positive(a);
                    return {Expression::unary(Op::log, b.e), std::log(b.bound), false};
                }
                default: {
                    Node b = positive(a);
                    return {Expression::unary(Op::sqrt, b.e), std::sqrt(b.bound), true};
                }
            }
        }
        Node a = make(depth - 1);
        Node b = make(depth - 1);
        switch (rng_.below(6)) {
            case 0: return {Expression::binary(Op::add, a.e, b.e), a.bound + b.bound, a.at_least_1 && b.at_least_1};
            case 1: return {Expression::binary(Op::sub, a.e, b.e), a.bound + b.bound, false};
            case 2: return {Expression::binary(Op::mul, a.e, b.e), a.bound * b.bound, a.at_least_1 && b.at_least_1};
            case 3: {
                Node d = positive(b);
                return {Expression::binary(Op::div, a.e, d.e), a.bound, false};
            }
            case 4: {
                const double k = static_cast<double>(1 + rng_.below(3));
                return {Expression::binary(Op::pow, a.e, Expression::constant(k)), std::pow(a.bound, k), false};
            }
            default: {
                Node d = positive(a);
                const double k = rng_.unit() < 0.5 ? -1.5 : 0.5;
                return {Expression::binary(Op::pow, d.e, Expression::constant(k)),
                        k > 0 ? std::pow(d.bound, k) : 1.0, k > 0};
            }
        }
    }

private:
    // 1 + a², always ≥ 1.
    Node positive(const Node& a) {
        using cartanflat::Expression;
        using cartanflat::Op;
        if (a.at_least_1) return a;
        return {Expression::binary(Op::add, Expression::constant(1.0),
                                   Expression::binary(Op::pow, a.e, Expression::constant(2.0))),
                1.0 + a.bound * a.bound, true};
    }

    // Keeps exp/cosh arguments in [-1.6, 1.6].
    Node squash(const Node& a) {
        using cartanflat::Expression;
        using cartanflat::Op;
        if (a.bound <= 1.6) return a;
        return {Expression::unary(Op::atan, a.e), 1.6, false};
    }

    Node leaf() {
        using cartanflat::Expression;
        if (rng_.unit() < 0.3) {
            const double c = std::round(rng_.uniform(-3.0, 3.0) * 100.0) / 100.0;
            return {Expression::constant(c), std::abs(c), c >= 1.0};
        }
        const std::size_t i = rng_.below(vars_);
        return {Expression::variable("x" + std::to_string(i + 1), i), 1.0, false};
    }

    cartanflat::Rng rng_;
    std::size_t vars_;
};

}  // namespace oracle
