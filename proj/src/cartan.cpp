#include "cartanflat/cartan.hpp"

#include <cmath>

#include "cartanflat/errors.hpp"

namespace cartanflat {

using namespace sym;

Mat ExprMatrix::evaluate(std::span<const double> p) const {
    Mat out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c).evaluate(p);
    }
    return out;
}

ExprMatrix ExprMatrix::derivative(std::size_t var) const {
    ExprMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = differentiate(data_[i], var);
    return out;
}

Vec ScalarOneForm::evaluate(std::span<const double> p) const {
    Vec out(components.size());
    for (std::size_t k = 0; k < components.size(); ++k) out[k] = components[k].evaluate(p);
    return out;
}

ScalarOneForm ScalarOneForm::differential(const Expression& f, std::size_t dim) {
    ScalarOneForm out;
    for (std::size_t k = 0; k < dim; ++k) out.components.push_back(differentiate(f, k));
    return out;
}

Expression ScalarTwoForm::coefficient(std::size_t i, std::size_t j) const {
    if (i == j) return num(0.0);
    if (i < j) return upper_[i * n_ + j];
    return neg(upper_[j * n_ + i]);
}

void ScalarTwoForm::set(std::size_t i, std::size_t j, Expression c) {
    if (i == j) throw DimensionError("two-form diagonal is identically zero");
    if (i < j) {
        upper_[i * n_ + j] = std::move(c);
    } else {
        upper_[j * n_ + i] = neg(c);
    }
}

Mat ScalarTwoForm::evaluate(std::span<const double> p) const {
    Mat out = Mat::Zero(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            const double v = upper_[i * n_ + j].evaluate(p);
            out(i, j) = v;
            out(j, i) = -v;
        }
    }
    return out;
}

ScalarTwoForm exterior_derivative(const ScalarOneForm& w) {
    const std::size_t n = w.dim();
    ScalarTwoForm out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            out.set(i, j, sub(differentiate(w.components[j], i), differentiate(w.components[i], j)));
        }
    }
    return out;
}

ScalarTwoForm wedge(const ScalarOneForm& a, const ScalarOneForm& b) {
    const std::size_t n = a.dim();
    if (b.dim() != n) throw DimensionError("wedge of one-forms of different dimension");
    ScalarTwoForm out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            out.set(i, j,
                    sub(mul(a.components[i], b.components[j]), mul(a.components[j], b.components[i])));
        }
    }
    return out;
}

FrameField::FrameField(ChartMetric metric, ExprMatrix frame, ExprMatrix coframe)
    : metric_(std::move(metric)), frame_(std::move(frame)), coframe_(std::move(coframe)) {
    const std::size_t n = metric_.dim();
    if (frame_.rows() != n || frame_.cols() != n || coframe_.rows() != n || coframe_.cols() != n) {
        throw DimensionError("frame and coframe must be n x n");
    }
}

ScalarOneForm FrameField::coframe_form(std::size_t i) const {
    ScalarOneForm out;
    for (std::size_t k = 0; k < dim(); ++k) out.components.push_back(coframe_(i, k));
    return out;
}

FrameField orthonormal_frame(const ChartMetric& m) {
    const std::size_t n = m.dim();
    // Lower Cholesky factor L, g = L Lᵀ.
    ExprMatrix L(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Expression diag = m.component(j, j);
        for (std::size_t k = 0; k < j; ++k) diag = sub(diag, pow(L(j, k), 2.0));
        L(j, j) = sqrt(diag);
        for (std::size_t i = j + 1; i < n; ++i) {
            Expression off = m.component(i, j);
            for (std::size_t k = 0; k < j; ++k) off = sub(off, mul(L(i, k), L(j, k)));
            L(i, j) = div(off, L(j, j));
        }
    }
    ExprMatrix coframe(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) coframe(i, k) = L(k, i);
    }
    // Back substitution for the upper-triangular inverse.
    ExprMatrix frame(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        frame(j, j) = div(num(1.0), coframe(j, j));
        for (std::size_t i = j; i-- > 0;) {
            Expression s = num(0.0);
            for (std::size_t k = i + 1; k <= j; ++k) s = add(s, mul(coframe(i, k), frame(k, j)));
            frame(i, j) = neg(div(s, coframe(i, i)));
        }
    }
    return FrameField(m, std::move(frame), std::move(coframe));
}

Mat ConnectionFormMatrix::apply(std::span<const double> p, const Vec& x) const {
    Mat out(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) out(i, j) = (*this)(i, j).apply(p, x);
    }
    return out;
}

ConnectionFormMatrix connection_form(const FrameField& f) {
    const ChartMetric& m = f.metric();
    const std::size_t n = m.dim();
    const ExprMatrix& E = f.frame();
    std::vector<ExprMatrix> dE;
    for (std::size_t k = 0; k < n; ++k) dE.push_back(E.derivative(k));
    // Christoffel symbols of the first kind, Γ_{b,kc} = ½(∂_k g_cb + ∂_c g_kb − ∂_b g_kc).
    auto first_kind = [&](std::size_t b, std::size_t k, std::size_t c) {
        return mul(num(0.5), sub(add(m.first_derivative(k, c, b), m.first_derivative(c, k, b)),
                                 m.first_derivative(b, k, c)));
    };
    std::vector<Expression> gamma(n * n * n);
    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t c = 0; c < n; ++c) gamma[(b * n + k) * n + c] = first_kind(b, k, c);
        }
    }
    // ω_i^j(∂_k) = g(∂_k e_i, e_j) + Γ_{b,kc} e_i^c e_j^b
    ConnectionFormMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                std::vector<Expression> terms;
                for (std::size_t a = 0; a < n; ++a) {
                    for (std::size_t b = 0; b < n; ++b) {
                        terms.push_back(mul(m.component(a, b), mul(dE[k](a, i), E(b, j))));
                    }
                }
                for (std::size_t b = 0; b < n; ++b) {
                    for (std::size_t c = 0; c < n; ++c) {
                        terms.push_back(mul(gamma[(b * n + k) * n + c], mul(E(c, i), E(b, j))));
                    }
                }
                out(i, j).components[k] = sum(terms);
            }
        }
    }
    return out;
}

StructureEquations::StructureEquations(ScalarOneForm w1, ScalarOneForm w2, ScalarOneForm phi)
    : w1_(std::move(w1)),
      w2_(std::move(w2)),
      phi_(std::move(phi)),
      dw1_(exterior_derivative(w1_)),
      dw2_(exterior_derivative(w2_)),
      dphi_(exterior_derivative(phi_)) {
    if (w1_.dim() != 2 || w2_.dim() != 2 || phi_.dim() != 2) {
        throw DimensionError("structural equations are two-dimensional");
    }
}

namespace {

StructureEquations from_frame(const FrameField& f) {
    if (f.dim() != 2) throw DimensionError("structural equations need a 2D frame");
    const ConnectionFormMatrix w = connection_form(f);
    return StructureEquations(f.coframe_form(0), f.coframe_form(1), w(1, 0));
}

double wedge12(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

}  // namespace

StructureEquations::StructureEquations(const FrameField& f) : StructureEquations(from_frame(f)) {}

double StructureEquations::residual(std::span<const double> p) const {
    const Vec a = w1_.evaluate(p);
    const Vec b = w2_.evaluate(p);
    const Vec c = phi_.evaluate(p);
    const double r1 = dw1_.coefficient(0, 1).evaluate(p) - wedge12(b, c);
    const double r2 = dw2_.coefficient(0, 1).evaluate(p) + wedge12(a, c);
    return std::max(std::abs(r1), std::abs(r2));
}

double StructureEquations::dphi(std::span<const double> p) const {
    return dphi_.coefficient(0, 1).evaluate(p);
}

double StructureEquations::volume(std::span<const double> p) const {
    return wedge12(w1_.evaluate(p), w2_.evaluate(p));
}

double StructureEquations::gauss_curvature(std::span<const double> p) const {
    const double vol = volume(p);
    if (!(std::abs(vol) > 1e-12)) {
        throw SingularMetric("coframe volume form vanishes", {p.begin(), p.end()});
    }
    return dphi(p) / vol;
}

double structural_residual(const FrameField& f, std::span<const double> p) {
    return StructureEquations(f).residual(p);
}

double structural_residual(const FrameField& f, const ScalarOneForm& phi,
                           std::span<const double> p) {
    if (f.dim() != 2) throw DimensionError("structural equations need a 2D frame");
    return StructureEquations(f.coframe_form(0), f.coframe_form(1), phi).residual(p);
}

double gauss_curvature(const FrameField& f, std::span<const double> p) {
    if (f.dim() != 2) throw DimensionError("Gaussian curvature needs a 2D frame");
    f.metric().check_positive_definite(p);
    return StructureEquations(f).gauss_curvature(p);
}

}  // namespace cartanflat
