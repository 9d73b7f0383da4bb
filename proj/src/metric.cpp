#include "cartanflat/metric.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cartanflat/errors.hpp"

namespace cartanflat {

namespace {

std::vector<double> to_vector(std::span<const double> p) { return {p.begin(), p.end()}; }

}  // namespace

Chart::Chart(std::vector<std::string> coords, std::vector<Interval> domain, double margin)
    : coords_(std::move(coords)), domain_(std::move(domain)), margin_(margin) {
    if (coords_.size() < 2) throw DimensionError("chart dimension must be at least 2");
    if (domain_.size() != coords_.size()) {
        throw DimensionError("chart needs one interval per coordinate");
    }
    if (std::set<std::string>(coords_.begin(), coords_.end()).size() != coords_.size()) {
        throw DimensionError("chart coordinate names must be distinct");
    }
    for (const auto& iv : domain_) {
        if (!(iv.hi > iv.lo) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
            throw DimensionError("chart interval is degenerate");
        }
    }
    if (!(margin_ >= 0.0 && margin_ < 0.5)) throw DimensionError("chart margin must lie in [0, 0.5)");
}

bool Chart::contains(std::span<const double> p) const noexcept {
    if (p.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!(p[i] >= domain_[i].lo && p[i] <= domain_[i].hi)) return false;
    }
    return true;
}

Interval Chart::sampling_interval(std::size_t i) const {
    const Interval& iv = domain_.at(i);
    const double m = margin_ * iv.extent();
    return {iv.lo + m, iv.hi - m};
}

std::vector<std::vector<double>> Chart::grid(std::size_t per_axis) const {
    if (per_axis < 2) throw DimensionError("grid needs at least 2 points per axis");
    std::vector<std::vector<double>> axes(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        const Interval s = sampling_interval(i);
        for (std::size_t k = 0; k < per_axis; ++k) {
            axes[i].push_back(s.lo + s.extent() * static_cast<double>(k) /
                                         static_cast<double>(per_axis - 1));
        }
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < dim(); ++i) total *= per_axis;
    std::vector<std::vector<double>> out;
    out.reserve(total);
    std::vector<std::size_t> idx(dim(), 0);
    for (std::size_t c = 0; c < total; ++c) {
        std::vector<double> p(dim());
        for (std::size_t i = 0; i < dim(); ++i) p[i] = axes[i][idx[i]];
        out.push_back(std::move(p));
        for (std::size_t i = dim(); i-- > 0;) {
            if (++idx[i] < per_axis) break;
            idx[i] = 0;
        }
    }
    return out;
}

Expression Chart::parse(std::string_view text) const { return cartanflat::parse(text, coords_); }

ChartMetric::ChartMetric(Chart chart, std::vector<std::vector<Expression>> g)
    : chart_(std::move(chart)), g_(std::move(g)) {
    const std::size_t n = dim();
    if (g_.size() != n) throw DimensionError("metric must be n x n");
    for (const auto& row : g_) {
        if (row.size() != n) throw DimensionError("metric must be n x n");
        for (const auto& e : row) {
            if (e.arity() > n) throw DimensionError("metric references an undeclared coordinate");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!structurally_equal(g_[i][j], g_[j][i])) {
                throw DimensionError("metric is not symmetric: g" + std::to_string(i + 1) +
                                     std::to_string(j + 1) + " differs from g" +
                                     std::to_string(j + 1) + std::to_string(i + 1));
            }
        }
    }
    dg_.resize(n * n * n);
    ddg_.resize(n * n * n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                Expression d = differentiate(g_[i][j], k);
                dg_[k * n * n + flat(i, j)] = d;
                dg_[k * n * n + flat(j, i)] = d;
                for (std::size_t l = k; l < n; ++l) {
                    Expression dd = differentiate(d, l);
                    for (auto [a, b] : {std::pair{k, l}, std::pair{l, k}}) {
                        ddg_[(a * n + b) * n * n + flat(i, j)] = dd;
                        ddg_[(a * n + b) * n * n + flat(j, i)] = dd;
                    }
                }
            }
        }
    }
}

ChartMetric ChartMetric::from_text(Chart chart, const std::vector<std::vector<std::string>>& g) {
    std::vector<std::vector<Expression>> parsed;
    for (const auto& row : g) {
        std::vector<Expression> r;
        for (const auto& s : row) r.push_back(chart.parse(s));
        parsed.push_back(std::move(r));
    }
    return ChartMetric(std::move(chart), std::move(parsed));
}

const Expression& ChartMetric::first_derivative(std::size_t k, std::size_t i, std::size_t j) const {
    return dg_[k * dim() * dim() + flat(i, j)];
}

const Expression& ChartMetric::second_derivative(std::size_t k, std::size_t l, std::size_t i,
                                                 std::size_t j) const {
    return ddg_[(k * dim() + l) * dim() * dim() + flat(i, j)];
}

Mat ChartMetric::at(std::span<const double> p) const {
    const std::size_t n = dim();
    Mat g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            g(i, j) = g(j, i) = g_[i][j].evaluate(p);
        }
    }
    return g;
}

void ChartMetric::check_positive_definite(std::span<const double> p) const {
    const Mat g = at(p);
    Eigen::SelfAdjointEigenSolver<Mat> eig(g, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() > 1e-10)) {
        throw SingularMetric("metric is not positive definite", to_vector(p));
    }
}

MetricJet ChartMetric::jet(std::span<const double> p, int order) const {
    const std::size_t n = dim();
    MetricJet j;
    j.n = n;
    j.g = at(p);
    Eigen::SelfAdjointEigenSolver<Mat> eig(j.g, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() > 1e-10)) {
        throw SingularMetric("metric is not positive definite", to_vector(p));
    }
    Eigen::PartialPivLU<Mat> lu(j.g);
    const double scale = std::pow(j.g.cwiseAbs().maxCoeff(), static_cast<double>(n));
    if (std::abs(lu.determinant()) < 1e-12 * scale) {
        throw SingularMetric("metric is singular", to_vector(p));
    }
    j.g_inv = lu.inverse();
    j.dg.assign(n, Mat::Zero(n, n));
    j.ddg.assign(n, std::vector<Mat>(n, Mat::Zero(n, n)));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a; b < n; ++b) {
                j.dg[k](a, b) = j.dg[k](b, a) = first_derivative(k, a, b).evaluate(p);
            }
        }
        for (std::size_t l = k; order >= 2 && l < n; ++l) {
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = a; b < n; ++b) {
                    const double v = second_derivative(k, l, a, b).evaluate(p);
                    j.ddg[k][l](a, b) = j.ddg[k][l](b, a) = v;
                }
            }
            j.ddg[l][k] = j.ddg[k][l];
        }
    }
    return j;
}

double ChartMetric::inner(std::span<const double> p, const Vec& x, const Vec& y) const {
    return x.dot(at(p) * y);
}

Mat Christoffel::along(std::size_t i) const {
    Mat out(n_, n_);
    for (std::size_t k = 0; k < n_; ++k) {
        for (std::size_t m = 0; m < n_; ++m) out(k, m) = (*this)(k, i, m);
    }
    return out;
}

namespace {

// Γ_{l,ij} = ½(∂_i g_jl + ∂_j g_il − ∂_l g_ij)
double first_kind(const std::vector<Mat>& dg, std::size_t l, std::size_t i, std::size_t j) {
    return 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
}

}  // namespace

Christoffel christoffel(const MetricJet& jet) {
    const std::size_t n = jet.n;
    Christoffel gamma(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                double s = 0.0;
                for (std::size_t l = 0; l < n; ++l) s += jet.g_inv(k, l) * first_kind(jet.dg, l, i, j);
                gamma(k, i, j) = s;
                gamma(k, j, i) = s;
            }
        }
    }
    return gamma;
}

Christoffel christoffel(const ChartMetric& m, std::span<const double> p) {
    return christoffel(m.jet(p, 1));
}

std::vector<Christoffel> christoffel_derivatives(const MetricJet& jet) {
    const std::size_t n = jet.n;
    std::vector<Christoffel> out(n, Christoffel(n));
    for (std::size_t m = 0; m < n; ++m) {
        const Mat d_inv = -jet.g_inv * jet.dg[m] * jet.g_inv;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    double s = 0.0;
                    for (std::size_t l = 0; l < n; ++l) {
                        const double d_first = 0.5 * (jet.ddg[m][i](j, l) + jet.ddg[m][j](i, l) -
                                                      jet.ddg[m][l](i, j));
                        s += d_inv(k, l) * first_kind(jet.dg, l, i, j) + jet.g_inv(k, l) * d_first;
                    }
                    out[m](k, i, j) = s;
                    out[m](k, j, i) = s;
                }
            }
        }
    }
    return out;
}

RiemannTensor riemann(const MetricJet& jet) {
    const std::size_t n = jet.n;
    const Christoffel gamma = christoffel(jet);
    const std::vector<Christoffel> dgamma = christoffel_derivatives(jet);
    RiemannTensor r(n);
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    double v = dgamma[i](l, j, k) - dgamma[j](l, i, k);
                    for (std::size_t m = 0; m < n; ++m) {
                        v += gamma(l, i, m) * gamma(m, j, k) - gamma(l, j, m) * gamma(m, i, k);
                    }
                    r(l, k, i, j) = v;
                    r(l, k, j, i) = -v;
                }
            }
        }
    }
    return r;
}

RiemannTensor riemann(const ChartMetric& m, std::span<const double> p) { return riemann(m.jet(p)); }

Vec RiemannTensor::apply(const Vec& x, const Vec& y, const Vec& z) const {
    Vec out = Vec::Zero(static_cast<Eigen::Index>(n_));
    for (std::size_t l = 0; l < n_; ++l) {
        double s = 0.0;
        for (std::size_t k = 0; k < n_; ++k) {
            for (std::size_t i = 0; i < n_; ++i) {
                for (std::size_t j = 0; j < n_; ++j) s += (*this)(l, k, i, j) * x[i] * y[j] * z[k];
            }
        }
        out[l] = s;
    }
    return out;
}

Vec constant_curvature_tensor(const Mat& g, double K, const Vec& x, const Vec& y, const Vec& z) {
    return K * (y.dot(g * z) * x - x.dot(g * z) * y);
}

Vec constant_curvature_tensor(const ChartMetric& m, double K, const Vec& x, const Vec& y,
                              const Vec& z, std::span<const double> p) {
    return constant_curvature_tensor(m.at(p), K, x, y, z);
}

double sectional_curvature(const MetricJet& jet, const RiemannTensor& r, const Vec& x,
                           const Vec& y) {
    const double area = x.dot(jet.g * x) * y.dot(jet.g * y) - std::pow(x.dot(jet.g * y), 2);
    if (!(std::abs(area) > 1e-14)) throw DimensionError("sectional curvature of a degenerate plane");
    return r.apply(x, y, y).dot(jet.g * x) / area;
}

double sectional_curvature(const ChartMetric& m, std::span<const double> p, const Vec& x,
                           const Vec& y) {
    const MetricJet jet = m.jet(p);
    return sectional_curvature(jet, riemann(jet), x, y);
}

}  // namespace cartanflat
