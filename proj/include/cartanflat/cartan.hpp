#pragma once

// Moving frames and scalar exterior calculus on a chart.
//
// Conventions:
//   * FrameField::frame() column j holds the ∂-components of e_j;
//     FrameField::coframe() row i holds the dx-components of ω^i.
//   * ConnectionFormMatrix entry (i, j) is ω_i^j, with ∇e_i = ω_i^j ⊗ e_j,
//     i.e. ω_i^j(X) = g(∇_X e_i, e_j).
//   * In two dimensions φ := ω_2^1, so that dω^1 = ω^2 ∧ φ, dω^2 = −ω^1 ∧ φ
//     and dφ = K ω^1 ∧ ω^2.

#include <cstddef>
#include <span>
#include <vector>

#include "cartanflat/expr.hpp"
#include "cartanflat/metric.hpp"

namespace cartanflat {

class ExprMatrix {
public:
    ExprMatrix() = default;
    ExprMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, sym::num(0.0)) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Expression& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Expression& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Mat evaluate(std::span<const double> p) const;
    ExprMatrix derivative(std::size_t var) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Expression> data_;
};

/// Σ_k c_k dx^k
struct ScalarOneForm {
    std::vector<Expression> components;

    std::size_t dim() const noexcept { return components.size(); }
    Vec evaluate(std::span<const double> p) const;
    double apply(std::span<const double> p, const Vec& x) const { return evaluate(p).dot(x); }
    /// Exterior derivative of a 0-form f.
    static ScalarOneForm differential(const Expression& f, std::size_t dim);
};

/// Σ_{i<j} c_ij dx^i ∧ dx^j; stored on the upper triangle, c_ji = −c_ij.
class ScalarTwoForm {
public:
    explicit ScalarTwoForm(std::size_t n) : n_(n), upper_(n * n, sym::num(0.0)) {}

    std::size_t dim() const noexcept { return n_; }
    /// Coefficient of dx^i ∧ dx^j for any i, j (antisymmetric).
    Expression coefficient(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, Expression c);
    /// Antisymmetric coefficient matrix at p.
    Mat evaluate(std::span<const double> p) const;

private:
    std::size_t n_;
    std::vector<Expression> upper_;
};

/// (dω)_ij = ∂_i ω_j − ∂_j ω_i
ScalarTwoForm exterior_derivative(const ScalarOneForm& w);
/// (α ∧ β)_ij = α_i β_j − α_j β_i
ScalarTwoForm wedge(const ScalarOneForm& a, const ScalarOneForm& b);

class FrameField {
public:
    FrameField(ChartMetric metric, ExprMatrix frame, ExprMatrix coframe);

    const ChartMetric& metric() const noexcept { return metric_; }
    std::size_t dim() const noexcept { return metric_.dim(); }
    const ExprMatrix& frame() const noexcept { return frame_; }
    const ExprMatrix& coframe() const noexcept { return coframe_; }
    /// ω^i as a one-form.
    ScalarOneForm coframe_form(std::size_t i) const;

    Mat frame_at(std::span<const double> p) const { return frame_.evaluate(p); }
    Mat coframe_at(std::span<const double> p) const { return coframe_.evaluate(p); }

private:
    ChartMetric metric_;
    ExprMatrix frame_;
    ExprMatrix coframe_;
};

/// Index-ordered Gram–Schmidt on (∂_1, …, ∂_n), done symbolically as a
/// Cholesky factorisation g = Θᵀ Θ with Θ upper triangular; E = Θ⁻¹.
/// Definiteness is checked where the frame is evaluated, not here.
FrameField orthonormal_frame(const ChartMetric& m);

class ConnectionFormMatrix {
public:
    explicit ConnectionFormMatrix(std::size_t n)
        : n_(n), entries_(n * n, ScalarOneForm{std::vector<Expression>(n, sym::num(0.0))}) {}

    std::size_t dim() const noexcept { return n_; }
    /// ω_i^j
    const ScalarOneForm& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    ScalarOneForm& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    /// Matrix of ω_i^j(X) at p.
    Mat apply(std::span<const double> p, const Vec& x) const;

private:
    std::size_t n_;
    std::vector<ScalarOneForm> entries_;
};

ConnectionFormMatrix connection_form(const FrameField& f);

/// The data of the 2D structural equations: ω^1, ω^2, φ and their exterior
/// derivatives, prepared once for repeated pointwise queries.
class StructureEquations {
public:
    StructureEquations(ScalarOneForm w1, ScalarOneForm w2, ScalarOneForm phi);
    /// Built from an orthonormal frame, φ = ω_2^1. Throws DimensionError for n ≠ 2.
    explicit StructureEquations(const FrameField& f);

    const ScalarOneForm& omega1() const noexcept { return w1_; }
    const ScalarOneForm& omega2() const noexcept { return w2_; }
    const ScalarOneForm& phi() const noexcept { return phi_; }

    /// max(|dω^1 − ω^2∧φ|, |dω^2 + ω^1∧φ|) at p.
    double residual(std::span<const double> p) const;
    /// Coefficient of dx^1∧dx^2 in dφ.
    double dphi(std::span<const double> p) const;
    /// Coefficient of dx^1∧dx^2 in ω^1∧ω^2.
    double volume(std::span<const double> p) const;
    /// K with dφ = K ω^1∧ω^2; throws SingularMetric where ω^1∧ω^2 vanishes.
    double gauss_curvature(std::span<const double> p) const;

private:
    ScalarOneForm w1_, w2_, phi_;
    ScalarTwoForm dw1_, dw2_, dphi_;
};

/// Throws DimensionError for n ≠ 2.
double structural_residual(const FrameField& f, std::span<const double> p);
/// Residual with a caller-supplied φ in place of ω_2^1.
double structural_residual(const FrameField& f, const ScalarOneForm& phi,
                           std::span<const double> p);
double gauss_curvature(const FrameField& f, std::span<const double> p);

}  // namespace cartanflat
