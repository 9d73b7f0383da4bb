#include "cartanflat/zcr.hpp"

#include <algorithm>
#include <cmath>

#include "cartanflat/errors.hpp"
#include "cartanflat/sasaki.hpp"

namespace cartanflat {

using namespace sym;

UField::UField(Chart chart, Expression u) : chart_(std::move(chart)), u_(std::move(u)) {
    if (chart_.dim() != 2) throw DimensionError("u fields live on two-dimensional charts");
    if (u_.arity() > 2) throw DimensionError("u may only depend on the two chart coordinates");
    ux_ = differentiate(u_, std::size_t{0});
    uy_ = differentiate(u_, std::size_t{1});
    uxy_ = differentiate(ux_, std::size_t{1});
}

UField UField::from_text(Chart chart, std::string_view text) {
    Expression u = chart.parse(text);
    return UField(std::move(chart), std::move(u));
}

PseudosphericalTriple pseudospherical_triple(const UField& f) {
    const Expression half = mul(num(0.5), f.u());
    const Expression c = cos(half);
    const Expression s = sin(half);
    return PseudosphericalTriple{
        ScalarOneForm{{c, c}},
        ScalarOneForm{{s, neg(s)}},
        ScalarOneForm{{mul(num(-0.5), f.u_x()), mul(num(0.5), f.u_y())}},
    };
}

ZeroCurvatureCheck::ZeroCurvatureCheck(UField u)
    : u_(std::move(u)),
      triple_(pseudospherical_triple(u_)),
      structure_(triple_.omega1, triple_.omega2, triple_.phi),
      curvature_(sasaki_form(triple_.omega1, triple_.omega2, triple_.phi,
                             LieBasis::of(Presentation::so21))) {}

double ZeroCurvatureCheck::zcr_residual(std::span<const double> p) const {
    return curvature_.wedge_route(p).max_abs();
}

double ZeroCurvatureCheck::pde_residual(std::span<const double> p) const {
    return std::abs(u_.u_xy().evaluate(p) - std::sin(u_.u().evaluate(p)));
}

double ZeroCurvatureCheck::gauss_defect(std::span<const double> p) const {
    return structure_.dphi(p) + structure_.volume(p);
}

double ZeroCurvatureCheck::gauss_link_residual(std::span<const double> p) const {
    return std::abs(std::abs(gauss_defect(p)) - pde_residual(p));
}

double ZeroCurvatureCheck::structural_residual(std::span<const double> p) const {
    return structure_.residual(p);
}

double ZeroCurvatureCheck::metric_residual(std::span<const double> p) const {
    const Vec a = triple_.omega1.evaluate(p);
    const Vec b = triple_.omega2.evaluate(p);
    const Mat induced = a * a.transpose() + b * b.transpose();
    const double c = std::cos(u_.u().evaluate(p));
    Mat expected(2, 2);
    expected << 1.0, c, c, 1.0;
    return (induced - expected).cwiseAbs().maxCoeff();
}

namespace {

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

EquivalenceReport equivalence_scan(const ZeroCurvatureCheck& check, std::size_t per_axis,
                                   double floor) {
    EquivalenceReport out;
    const Chart& chart = check.field().chart();
    out.zcr = grid_max(chart, per_axis, [&](std::span<const double> p) {
        const double r = check.zcr_residual(p);
        out.zcr_values.push_back(r);
        return r;
    });
    out.pde = grid_max(chart, per_axis, [&](std::span<const double> p) {
        const double r = check.pde_residual(p);
        out.pde_values.push_back(r);
        return r;
    });
    for (std::size_t i = 0; i < out.zcr_values.size(); ++i) {
        const double z = out.zcr_values[i];
        const double d = out.pde_values[i];
        const bool zb = z > floor, db = d > floor;
        if (zb != db) ++out.one_sided_points;
        if (!zb || !db) continue;
        out.zcr_over_pde = std::max(out.zcr_over_pde.value_or(0.0), z / d);
        out.pde_over_zcr = std::max(out.pde_over_zcr.value_or(0.0), d / z);
    }
    out.correlation = pearson(out.zcr_values, out.pde_values);
    return out;
}

}  // namespace cartanflat
