#include "cartanflat/forms.hpp"

#include "cartanflat/errors.hpp"

namespace cartanflat {

MatrixOneForm::MatrixOneForm(std::vector<ExprMatrix> components)
    : components_(std::move(components)) {
    if (components_.empty()) throw DimensionError("matrix one-form needs at least one component");
    const std::size_t m = components_.front().rows();
    for (const auto& c : components_) {
        if (c.rows() != m || c.cols() != m) {
            throw DimensionError("matrix one-form components must share one square size");
        }
    }
}

std::vector<Mat> MatrixOneForm::evaluate(std::span<const double> p) const {
    std::vector<Mat> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c.evaluate(p));
    return out;
}

Mat MatrixOneForm::apply(std::span<const double> p, const Vec& x) const {
    Mat out = Mat::Zero(size(), size());
    for (std::size_t k = 0; k < dim(); ++k) {
        if (x[k] != 0.0) out += x[k] * components_[k].evaluate(p);
    }
    return out;
}

void CurvatureTwoForm::set(std::size_t i, std::size_t j, const Mat& v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = -v;
}

double CurvatureTwoForm::max_abs() const {
    double best = 0.0;
    for (const auto& m : data_) best = std::max(best, m.cwiseAbs().maxCoeff());
    return best;
}

CurvatureTwoForm CurvatureTwoForm::in_frame(const Mat& frame) const {
    CurvatureTwoForm out(n_, m_);
    for (std::size_t a = 0; a < n_; ++a) {
        for (std::size_t b = a + 1; b < n_; ++b) {
            Mat acc = Mat::Zero(m_, m_);
            for (std::size_t i = 0; i < n_; ++i) {
                for (std::size_t j = 0; j < n_; ++j) {
                    if (i == j) continue;
                    const double w = frame(i, a) * frame(j, b);
                    if (w != 0.0) acc += w * (*this)(i, j);
                }
            }
            out.set(a, b, acc);
        }
    }
    return out;
}

CurvatureField::CurvatureField(MatrixOneForm a) : a_(std::move(a)) {
    const std::size_t n = a_.dim();
    da_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) da_[i].push_back(a_.component(j).derivative(i));
    }
}

CurvatureTwoForm CurvatureField::exterior_part(std::span<const double> p) const {
    const std::size_t n = a_.dim();
    CurvatureTwoForm out(n, a_.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, da_[i][j].evaluate(p) - da_[j][i].evaluate(p));
    }
    return out;
}

CurvatureTwoForm CurvatureField::wedge_route(std::span<const double> p) const {
    const std::size_t n = a_.dim();
    const std::vector<Mat> a = a_.evaluate(p);
    const CurvatureTwoForm d = exterior_part(p);
    CurvatureTwoForm out(n, a_.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Mat aa = a[i] * a[j] - a[j] * a[i];
            out.set(i, j, d(i, j) + aa);
        }
    }
    return out;
}

CurvatureTwoForm CurvatureField::bracket_route(std::span<const double> p) const {
    const std::size_t n = a_.dim();
    const std::vector<Mat> a = a_.evaluate(p);
    const CurvatureTwoForm d = exterior_part(p);
    CurvatureTwoForm out(n, a_.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Mat bracket = commutator(a[i], a[j]) - commutator(a[j], a[i]);
            out.set(i, j, d(i, j) + 0.5 * bracket);
        }
    }
    return out;
}

double algebra_defect(const std::vector<Mat>& components, const Vec& signs) {
    const Mat eta = signs.asDiagonal();
    double worst = 0.0;
    for (const auto& a : components) {
        worst = std::max(worst, (a.transpose() * eta + eta * a).cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace cartanflat
