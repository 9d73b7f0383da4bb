#include "cartanflat/bundle.hpp"

#include <cmath>

#include "cartanflat/errors.hpp"

namespace cartanflat {

using namespace sym;

const char* to_string(Variant v) noexcept { return v == Variant::h ? "h" : "s"; }

Variant parse_variant(std::string_view text) {
    if (text == "h") return Variant::h;
    if (text == "s") return Variant::s;
    throw Error("variant must be \"h\" or \"s\", got \"" + std::string(text) + "\"");
}

Vec BundleConnection::fiber_signs(std::size_t n) const {
    Vec out = Vec::Ones(static_cast<Eigen::Index>(n + 1));
    out[static_cast<Eigen::Index>(n)] = fiber_sign;
    return out;
}

BundleSection::BundleSection(std::vector<Expression> xi, Expression f)
    : xi_(std::move(xi)), f_(std::move(f)) {
    const std::size_t n = xi_.size();
    dxi_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (const auto& c : xi_) dxi_[k].push_back(differentiate(c, k));
        df_.push_back(differentiate(f_, k));
    }
}

BundleSection BundleSection::coordinate(std::size_t n, std::size_t k) {
    std::vector<Expression> xi(n, num(0.0));
    xi.at(k) = num(1.0);
    return BundleSection(std::move(xi), num(0.0));
}

BundleSection BundleSection::unit(std::size_t n) {
    return BundleSection(std::vector<Expression>(n, num(0.0)), num(1.0));
}

BundleSection BundleSection::random_polynomial(std::size_t n, Rng& rng) {
    auto poly = [&] {
        std::vector<Expression> terms{num(rng.uniform(-1.0, 1.0))};
        for (std::size_t k = 0; k < n; ++k) {
            const Expression xk = Expression::variable("x" + std::to_string(k + 1), k);
            terms.push_back(mul(num(rng.uniform(-1.0, 1.0)), xk));
            for (std::size_t l = k; l < n; ++l) {
                const Expression xl = Expression::variable("x" + std::to_string(l + 1), l);
                terms.push_back(mul(num(rng.uniform(-1.0, 1.0)), mul(xk, xl)));
            }
        }
        return sum(terms);
    };
    std::vector<Expression> xi;
    for (std::size_t a = 0; a < n; ++a) xi.push_back(poly());
    Expression f = poly();
    return BundleSection(std::move(xi), std::move(f));
}

Vec BundleSection::xi_at(std::span<const double> p) const {
    Vec out(dim());
    for (std::size_t a = 0; a < dim(); ++a) out[a] = xi_[a].evaluate(p);
    return out;
}

Mat BundleSection::dxi_at(std::span<const double> p) const {
    Mat out(dim(), dim());
    for (std::size_t k = 0; k < dim(); ++k) {
        for (std::size_t a = 0; a < dim(); ++a) out(a, k) = dxi_[k][a].evaluate(p);
    }
    return out;
}

Vec BundleSection::df_at(std::span<const double> p) const {
    Vec out(dim());
    for (std::size_t k = 0; k < dim(); ++k) out[k] = df_[k].evaluate(p);
    return out;
}

double fiber_inner(const BundleConnection& c, const Mat& g, const SectionValue& a,
                   const SectionValue& b) {
    return a.xi.dot(g * b.xi) + c.fiber_sign * a.e * b.e;
}

namespace {

/// ∇̃_X applied to a section known at p through its value and its
/// directional derivative along X.
SectionValue connect(const BundleConnection& c, const Mat& g, const Christoffel& gamma,
                     const Vec& x, const SectionValue& value, const SectionValue& along_x) {
    const std::size_t n = gamma.dim();
    Vec gamma_x = Vec::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
        if (x[k] == 0.0) continue;
        gamma_x += x[k] * (gamma.along(k) * value.xi);
    }
    SectionValue out;
    out.xi = along_x.xi + gamma_x + value.e * x;
    out.e = along_x.e + c.coupling * x.dot(g * value.xi);
    return out;
}

Vec unit_vector(std::size_t n, std::size_t k) {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(n));
    v[static_cast<Eigen::Index>(k)] = 1.0;
    return v;
}

}  // namespace

SectionValue covariant_derivative(const BundleConnection& c, const ChartMetric& m,
                                  const BundleSection& s, const Vec& x, std::span<const double> p) {
    if (s.dim() != m.dim() || static_cast<std::size_t>(x.size()) != m.dim()) {
        throw DimensionError("section and direction must match the chart dimension");
    }
    const MetricJet jet = m.jet(p, 1);
    const Christoffel gamma = christoffel(jet);
    const SectionValue value{s.xi_at(p), s.f_at(p)};
    const SectionValue along{s.dxi_at(p) * x, s.df_at(p).dot(x)};
    return connect(c, jet.g, gamma, x, value, along);
}

BundleCurvatureValue bundle_curvature(const BundleConnection& c, const ChartMetric& m,
                                      const BundleSection& s, std::size_t i, std::size_t j,
                                      std::span<const double> p, FiniteDifference fd) {
    const std::size_t n = m.dim();
    if (i >= n || j >= n) throw DimensionError("coordinate index out of range");
    const Vec ei = unit_vector(n, i);
    const Vec ej = unit_vector(n, j);

    // Outer derivative ∇̃_a of the inner field q ↦ ∇̃_b s (q).
    auto outer = [&](std::size_t a, const Vec& ea, const Vec& eb) {
        const double extent = m.chart().domain()[a].extent();
        const double h = fd.relative_step * extent;
        if (!(h >= 1e-8 * extent)) throw StepError("finite-difference step below 1e-8 of the domain scale");
        std::vector<double> q(p.begin(), p.end());
        auto inner_at = [&](double offset) {
            q[a] = p[a] + offset;
            return covariant_derivative(c, m, s, eb, q);
        };
        const SectionValue d1 = (inner_at(h) - inner_at(-h)) * (1.0 / (2.0 * h));
        const SectionValue d2 = (inner_at(0.5 * h) - inner_at(-0.5 * h)) * (1.0 / h);
        const SectionValue along = (d2 * 4.0 - d1) * (1.0 / 3.0);
        q[a] = p[a];
        const SectionValue value = covariant_derivative(c, m, s, eb, q);
        const MetricJet jet = m.jet(p, 1);
        return connect(c, jet.g, christoffel(jet), ea, value, along);
    };
    if (i == j) return SectionValue{Vec::Zero(static_cast<Eigen::Index>(n)), 0.0};
    return outer(i, ei, ej) - outer(j, ej, ei);
}

Mat bundle_curvature_operator(const BundleConnection& c, const ChartMetric& m, std::size_t i,
                              std::size_t j, std::span<const double> p, FiniteDifference fd) {
    const std::size_t n = m.dim();
    Mat out(n + 1, n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const BundleSection s = k < n ? BundleSection::coordinate(n, k) : BundleSection::unit(n);
        const SectionValue v = bundle_curvature(c, m, s, i, j, p, fd);
        out.block(0, static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n), 1) = v.xi;
        out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) = v.e;
    }
    return out;
}

double bundle_curvature_frame_residual(const BundleConnection& c, const FrameField& f,
                                       std::span<const double> p, FiniteDifference fd) {
    const ChartMetric& m = f.metric();
    const std::size_t n = m.dim();
    const Mat E = f.frame_at(p);
    Mat T = Mat::Identity(n + 1, n + 1);
    T.topLeftCorner(n, n) = E;
    const Mat T_inv = T.inverse();
    CurvatureTwoForm coordinate_form(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            coordinate_form.set(i, j, T_inv * bundle_curvature_operator(c, m, i, j, p, fd) * T);
        }
    }
    return coordinate_form.in_frame(E).max_abs();
}

Vec identity_rhs(const BundleConnection& c, const ChartMetric& m, const Vec& xi, std::size_t i,
                 std::size_t j, std::span<const double> p) {
    const std::size_t n = m.dim();
    const MetricJet jet = m.jet(p);
    const RiemannTensor r = riemann(jet);
    const Vec ei = unit_vector(n, i);
    const Vec ej = unit_vector(n, j);
    return r.apply(ei, ej, xi) - constant_curvature_tensor(jet.g, c.model_curvature(), ei, ej, xi);
}

IdentityReport identity_residual(const BundleConnection& c, const ChartMetric& m,
                                 std::span<const double> p, std::size_t trials,
                                 std::uint64_t seed, FiniteDifference fd) {
    const std::size_t n = m.dim();
    const MetricJet jet = m.jet(p);
    const RiemannTensor r = riemann(jet);
    IdentityReport report;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::stream(seed, t);
        const BundleSection s = BundleSection::random_polynomial(n, rng);
        const Vec xi = s.xi_at(p);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const SectionValue lhs = bundle_curvature(c, m, s, i, j, p, fd);
                const Vec ei = unit_vector(n, i);
                const Vec ej = unit_vector(n, j);
                const Vec rhs = r.apply(ei, ej, xi) -
                                constant_curvature_tensor(jet.g, c.model_curvature(), ei, ej, xi);
                report.max_vector_residual =
                    std::max(report.max_vector_residual, (lhs.xi - rhs).cwiseAbs().maxCoeff());
                report.max_e_component = std::max(report.max_e_component, std::abs(lhs.e));
            }
        }
    }
    report.max_residual = std::max(report.max_vector_residual, report.max_e_component);
    return report;
}

double metric_compatibility_residual(const BundleConnection& c, const ChartMetric& m,
                                     const BundleSection& s1, const BundleSection& s2,
                                     const Vec& x, std::span<const double> p) {
    const std::size_t n = m.dim();
    std::vector<Expression> terms;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            terms.push_back(mul(m.component(a, b), mul(s1.xi()[a], s2.xi()[b])));
        }
    }
    terms.push_back(mul(num(c.fiber_sign), mul(s1.f(), s2.f())));
    const Expression pairing = sum(terms);
    double lhs = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (x[k] != 0.0) lhs += x[k] * differentiate(pairing, k).evaluate(p);
    }
    const Mat g = m.at(p);
    const SectionValue v1{s1.xi_at(p), s1.f_at(p)};
    const SectionValue v2{s2.xi_at(p), s2.f_at(p)};
    const SectionValue d1 = covariant_derivative(c, m, s1, x, p);
    const SectionValue d2 = covariant_derivative(c, m, s2, x, p);
    return std::abs(lhs - fiber_inner(c, g, d1, v2) - fiber_inner(c, g, v1, d2));
}

namespace {

ExprMatrix tangent_block(const ConnectionFormMatrix& w, std::size_t k, std::size_t size) {
    const std::size_t n = w.dim();
    ExprMatrix a(size, size);
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t col = row + 1; col < n; ++col) {
            // entry (row, col) = ω_col^row
            const Expression& v = w(col, row).components[k];
            a(row, col) = v;
            a(col, row) = neg(v);
        }
    }
    return a;
}

}  // namespace

MatrixOneForm bundle_connection_form(const BundleConnection& c, const FrameField& f) {
    const std::size_t n = f.dim();
    const ConnectionFormMatrix w = connection_form(f);
    std::vector<ExprMatrix> comps;
    for (std::size_t k = 0; k < n; ++k) {
        ExprMatrix a = tangent_block(w, k, n + 1);
        for (std::size_t i = 0; i < n; ++i) {
            a(i, n) = f.coframe()(i, k);
            a(n, i) = mul(num(c.coupling), f.coframe()(i, k));
        }
        comps.push_back(std::move(a));
    }
    return MatrixOneForm(std::move(comps));
}

std::vector<Mat> bundle_connection_matrix(const BundleConnection& c, const FrameField& f,
                                          std::span<const double> p) {
    f.metric().check_positive_definite(p);
    return bundle_connection_form(c, f).evaluate(p);
}

MatrixOneForm levi_civita_form(const FrameField& f) {
    const std::size_t n = f.dim();
    const ConnectionFormMatrix w = connection_form(f);
    std::vector<ExprMatrix> comps;
    for (std::size_t k = 0; k < n; ++k) comps.push_back(tangent_block(w, k, n));
    return MatrixOneForm(std::move(comps));
}

}  // namespace cartanflat
