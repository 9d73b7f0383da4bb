#include "cartanflat/transport.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "cartanflat/errors.hpp"
#include "cartanflat/sasaki.hpp"

namespace cartanflat {

using namespace sym;

namespace {

const std::vector<std::string>& time_variable() {
    static const std::vector<std::string> vars{"t"};
    return vars;
}

}  // namespace

ChartCurve::ChartCurve(std::vector<Expression> coords, double t0, double t1, double samples_per_unit)
    : coords_(std::move(coords)), t0_(t0), t1_(t1), samples_(samples_per_unit) {
    if (coords_.empty()) throw DimensionError("curve needs at least one coordinate");
    if (!(samples_ > 0.0)) throw StepError("samples per unit must be positive");
    for (const auto& c : coords_) {
        if (c.arity() > 1) throw DimensionError("curve coordinates may only depend on t");
        velocity_.push_back(differentiate(c, std::size_t{0}));
    }
}

ChartCurve ChartCurve::from_text(const std::vector<std::string>& coords, double t0, double t1,
                                 double samples_per_unit) {
    std::vector<Expression> parsed;
    for (const auto& c : coords) parsed.push_back(parse(c, time_variable()));
    return ChartCurve(std::move(parsed), t0, t1, samples_per_unit);
}

ChartCurve ChartCurve::segment(std::span<const double> a, std::span<const double> b,
                               double samples_per_unit) {
    if (a.size() != b.size()) throw DimensionError("segment endpoints differ in dimension");
    const Expression t = Expression::variable("t", 0);
    std::vector<Expression> coords;
    for (std::size_t i = 0; i < a.size(); ++i) coords.push_back(add(num(a[i]), mul(num(b[i] - a[i]), t)));
    return ChartCurve(std::move(coords), 0.0, 1.0, samples_per_unit);
}

ChartCurve ChartCurve::circle(std::span<const double> center, double radius, std::size_t i,
                              std::size_t j, double samples_per_unit) {
    const Expression t = Expression::variable("t", 0);
    std::vector<Expression> coords;
    for (double c : center) coords.push_back(num(c));
    coords.at(i) = add(num(center[i]), mul(num(radius), cos(t)));
    coords.at(j) = add(num(center[j]), mul(num(radius), sin(t)));
    return ChartCurve(std::move(coords), 0.0, 2.0 * std::numbers::pi, samples_per_unit);
}

std::vector<double> ChartCurve::point(double t) const {
    const double arg[1] = {t};
    std::vector<double> out;
    out.reserve(coords_.size());
    for (const auto& c : coords_) out.push_back(c.evaluate(arg));
    return out;
}

Vec ChartCurve::velocity(double t) const {
    const double arg[1] = {t};
    Vec out(velocity_.size());
    for (std::size_t i = 0; i < velocity_.size(); ++i) out[i] = velocity_[i].evaluate(arg);
    return out;
}

std::size_t ChartCurve::steps() const {
    const double length = std::abs(t1_ - t0_);
    if (length == 0.0) return 0;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(samples_ * length)));
}

ChartCurve ChartCurve::reversed() const {
    // c(t0 + t1 − s) for s ∈ [t0, t1]
    const Expression s = sub(num(t0_ + t1_), Expression::variable("t", 0));
    std::vector<Expression> coords;
    for (const auto& c : coords_) {
        // substitute by rebuilding the expression tree
        std::function<Expression(const Expression&)> subst = [&](const Expression& e) -> Expression {
            if (e.op() == Op::variable) return s;
            if (e.op() == Op::constant) return e;
            if (is_binary(e.op())) return Expression::binary(e.op(), subst(e.lhs()), subst(e.rhs()));
            return Expression::unary(e.op(), subst(e.lhs()));
        };
        coords.push_back(subst(c));
    }
    return ChartCurve(std::move(coords), t0_, t1_, samples_);
}

namespace {

Mat generator(const MatrixOneForm& a, const Chart& chart, const ChartCurve& curve, double t) {
    const std::vector<double> p = curve.point(t);
    if (!chart.contains(p)) {
        throw StepError("curve leaves the chart domain at t = " + std::to_string(t));
    }
    return -a.apply(p, curve.velocity(t));
}

template <typename Visit>
Mat integrate(const MatrixOneForm& a, const Chart& chart, const ChartCurve& curve, Visit visit) {
    if (curve.dim() != chart.dim() || a.dim() != chart.dim()) {
        throw DimensionError("curve, form and chart dimensions differ");
    }
    const std::size_t m = a.size();
    Mat P = Mat::Identity(m, m);
    const std::size_t steps = curve.steps();
    visit(curve.t0(), P);
    if (steps == 0) return P;
    const double h = (curve.t1() - curve.t0()) / static_cast<double>(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = curve.t0() + h * static_cast<double>(k);
        const Mat k1 = generator(a, chart, curve, t) * P;
        const Mat k2 = generator(a, chart, curve, t + 0.5 * h) * (P + 0.5 * h * k1);
        const Mat k3 = generator(a, chart, curve, t + 0.5 * h) * (P + 0.5 * h * k2);
        const Mat k4 = generator(a, chart, curve, t + h) * (P + h * k3);
        P += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        visit(k + 1 == steps ? curve.t1() : t + h, P);
    }
    return P;
}

}  // namespace

Mat transport_matrix(const MatrixOneForm& a, const Chart& chart, const ChartCurve& curve) {
    return integrate(a, chart, curve, [](double, const Mat&) {});
}

Vec parallel_transport(const MatrixOneForm& a, const Chart& chart, const ChartCurve& curve,
                       const Vec& v0) {
    if (static_cast<std::size_t>(v0.size()) != a.size()) {
        throw DimensionError("fiber vector size does not match the connection");
    }
    if (curve.steps() == 0) return v0;
    return transport_matrix(a, chart, curve) * v0;
}

Vec parallel_transport(Variant v, const FrameField& f, const ChartCurve& curve, const Vec& v0) {
    return parallel_transport(bundle_connection_form(BundleConnection::of(v), f), f.metric().chart(),
                              curve, v0);
}

std::vector<TransportSample> transport_path(const MatrixOneForm& a, const Chart& chart,
                                            const ChartCurve& curve) {
    std::vector<TransportSample> out;
    integrate(a, chart, curve, [&](double t, const Mat& P) {
        out.push_back(TransportSample{t, curve.point(t), P});
    });
    return out;
}

Mat holonomy(const MatrixOneForm& a, const Chart& chart, const ChartCurve& loop) {
    const auto start = loop.point(loop.t0());
    const auto end = loop.point(loop.t1());
    for (std::size_t i = 0; i < start.size(); ++i) {
        if (std::abs(start[i] - end[i]) > 1e-12) throw NonClosedLoop("loop endpoints differ");
    }
    return transport_matrix(a, chart, loop);
}

Mat holonomy(Variant v, const FrameField& f, const ChartCurve& loop) {
    return holonomy(bundle_connection_form(BundleConnection::of(v), f), f.metric().chart(), loop);
}

double ambient_product(Variant v, const Vec& x, const Vec& y) {
    const Vec eta = BundleConnection::of(v).fiber_signs(static_cast<std::size_t>(x.size()) - 1);
    return (eta.array() * x.array() * y.array()).sum();
}

namespace {

Vec e_axis(std::size_t n) {
    Vec e = Vec::Zero(static_cast<Eigen::Index>(n + 1));
    e[static_cast<Eigen::Index>(n)] = 1.0;
    return e;
}

}  // namespace

Development develop(Variant v, const FrameField& f, std::span<const double> base,
                    std::span<const double> target, const std::optional<ChartCurve>& path,
                    const std::optional<ChartCurve>& second_path, DevelopOptions opts) {
    const std::size_t n = f.dim();
    const MatrixOneForm a = bundle_connection_form(BundleConnection::of(v), f);
    const Chart& chart = f.metric().chart();
    const ChartCurve route = path ? *path : ChartCurve::segment(base, target);

    auto develop_on = [&](const ChartCurve& c) {
        return parallel_transport(a, chart, c.reversed(), e_axis(n));
    };

    Development out;
    out.point = develop_on(route);

    const FlatnessProbe probe(f, v);
    const std::size_t samples = std::max<std::size_t>(2, opts.curvature_samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = route.t0() + (route.t1() - route.t0()) * static_cast<double>(k) /
                                          static_cast<double>(samples - 1);
        if (probe.residual(route.point(t)) > opts.flatness_tolerance) {
            out.curvature_warning = true;
            break;
        }
    }
    if (second_path) {
        const Vec other = develop_on(*second_path);
        out.path_discrepancy = (other - out.point).cwiseAbs().maxCoeff();
        out.path_dependent = out.path_discrepancy > opts.path_tolerance;
    }
    return out;
}

std::vector<DevelopedSample> develop_along(Variant v, const FrameField& f, const ChartCurve& curve) {
    const std::size_t n = f.dim();
    const MatrixOneForm a = bundle_connection_form(BundleConnection::of(v), f);
    std::vector<DevelopedSample> out;
    for (const auto& s : transport_path(a, f.metric().chart(), curve)) {
        out.push_back(DevelopedSample{s.t, s.point, s.transport.partialPivLu().solve(e_axis(n))});
    }
    return out;
}

}  // namespace cartanflat
