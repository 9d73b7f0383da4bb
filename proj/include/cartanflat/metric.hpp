#pragma once

// Coordinate charts, Riemannian metrics given as expression matrices, and the
// pointwise Levi-Civita data (Christoffel symbols, Riemann tensor) derived
// from them. Metric derivatives are taken symbolically once, at construction.

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cartanflat/expr.hpp"

namespace cartanflat {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    double extent() const noexcept { return hi - lo; }
};

class Chart {
public:
    /// Throws DimensionError for n < 2, duplicate names, or degenerate intervals.
    Chart(std::vector<std::string> coords, std::vector<Interval> domain, double margin = 0.05);

    std::size_t dim() const noexcept { return coords_.size(); }
    const std::vector<std::string>& coords() const noexcept { return coords_; }
    const std::vector<Interval>& domain() const noexcept { return domain_; }
    double margin() const noexcept { return margin_; }

    bool contains(std::span<const double> p) const noexcept;
    /// Sampling interval for axis i: the domain with `margin` of its extent
    /// removed at each end.
    Interval sampling_interval(std::size_t i) const;
    /// Regular grid with `per_axis` points per coordinate inside the sampling
    /// box, in row-major order (last coordinate varies fastest).
    std::vector<std::vector<double>> grid(std::size_t per_axis) const;

    Expression parse(std::string_view text) const;

private:
    std::vector<std::string> coords_;
    std::vector<Interval> domain_;
    double margin_;
};

/// Metric value and its first and second partial derivatives at one point.
struct MetricJet {
    std::size_t n = 0;
    Mat g;
    Mat g_inv;
    std::vector<Mat> dg;                 // dg[k] = ∂_k g
    std::vector<std::vector<Mat>> ddg;   // ddg[k][l] = ∂_k ∂_l g
};

class ChartMetric {
public:
    /// `g` must be n x n and structurally symmetric.
    ChartMetric(Chart chart, std::vector<std::vector<Expression>> g);
    static ChartMetric from_text(Chart chart, const std::vector<std::vector<std::string>>& g);

    const Chart& chart() const noexcept { return chart_; }
    std::size_t dim() const noexcept { return chart_.dim(); }
    const Expression& component(std::size_t i, std::size_t j) const { return g_[i][j]; }
    /// ∂_k g_ij
    const Expression& first_derivative(std::size_t k, std::size_t i, std::size_t j) const;
    /// ∂_k ∂_l g_ij
    const Expression& second_derivative(std::size_t k, std::size_t l, std::size_t i,
                                        std::size_t j) const;

    /// Evaluated metric matrix, no definiteness check.
    Mat at(std::span<const double> p) const;
    /// Throws SingularMetric unless the evaluated metric is symmetric positive
    /// definite with minimum eigenvalue above 1e-10.
    void check_positive_definite(std::span<const double> p) const;
    /// Jet at p up to `order` (1 or 2); checks definiteness and invertibility.
    MetricJet jet(std::span<const double> p, int order = 2) const;

    double inner(std::span<const double> p, const Vec& x, const Vec& y) const;

private:
    std::size_t flat(std::size_t i, std::size_t j) const { return i * dim() + j; }

    Chart chart_;
    std::vector<std::vector<Expression>> g_;
    std::vector<Expression> dg_;   // [k][i][j]
    std::vector<Expression> ddg_;  // [k][l][i][j]
};

/// Γ^k_ij stored densely; (k, i, j) indexing.
class Christoffel {
public:
    explicit Christoffel(std::size_t n) : n_(n), data_(n * n * n, 0.0) {}
    std::size_t dim() const noexcept { return n_; }
    double& operator()(std::size_t k, std::size_t i, std::size_t j) { return data_[(k * n_ + i) * n_ + j]; }
    double operator()(std::size_t k, std::size_t i, std::size_t j) const {
        return data_[(k * n_ + i) * n_ + j];
    }
    /// Matrix (Γ_i)^k_m = Γ^k_im, so that ∇_{∂i} ξ = ∂_i ξ + Γ_i ξ.
    Mat along(std::size_t i) const;

private:
    std::size_t n_;
    std::vector<double> data_;
};

/// R^l_kij with R(∂_i, ∂_j)∂_k = R^l_kij ∂_l.
class RiemannTensor {
public:
    explicit RiemannTensor(std::size_t n) : n_(n), data_(n * n * n * n, 0.0) {}
    std::size_t dim() const noexcept { return n_; }
    double& operator()(std::size_t l, std::size_t k, std::size_t i, std::size_t j) {
        return data_[((l * n_ + k) * n_ + i) * n_ + j];
    }
    double operator()(std::size_t l, std::size_t k, std::size_t i, std::size_t j) const {
        return data_[((l * n_ + k) * n_ + i) * n_ + j];
    }
    /// R(X, Y) Z
    Vec apply(const Vec& x, const Vec& y, const Vec& z) const;

private:
    std::size_t n_;
    std::vector<double> data_;
};

Christoffel christoffel(const MetricJet& jet);
Christoffel christoffel(const ChartMetric& m, std::span<const double> p);
/// Derivatives ∂_m Γ^k_ij, indexed [m](k, i, j).
std::vector<Christoffel> christoffel_derivatives(const MetricJet& jet);

RiemannTensor riemann(const MetricJet& jet);
RiemannTensor riemann(const ChartMetric& m, std::span<const double> p);

/// K (g(Y,Z) X − g(X,Z) Y)
Vec constant_curvature_tensor(const ChartMetric& m, double K, const Vec& x, const Vec& y,
                              const Vec& z, std::span<const double> p);
Vec constant_curvature_tensor(const Mat& g, double K, const Vec& x, const Vec& y, const Vec& z);

/// g(R(X,Y)Y, X) / (g(X,X) g(Y,Y) − g(X,Y)²)
double sectional_curvature(const ChartMetric& m, std::span<const double> p, const Vec& x,
                           const Vec& y);
double sectional_curvature(const MetricJet& jet, const RiemannTensor& r, const Vec& x,
                           const Vec& y);

}  // namespace cartanflat
