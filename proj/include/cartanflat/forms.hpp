#pragma once

// Matrix-valued differential forms: A = Σ_k A_k dx^k and its curvature
// Ω = dA + A∧A, with Ω_ij = ∂_i A_j − ∂_j A_i + [A_i, A_j].

#include <cstddef>
#include <span>
#include <vector>

#include "cartanflat/cartan.hpp"

namespace cartanflat {

class MatrixOneForm {
public:
    /// `components[k]` is the m x m coefficient of dx^k.
    explicit MatrixOneForm(std::vector<ExprMatrix> components);

    std::size_t dim() const noexcept { return components_.size(); }
    std::size_t size() const noexcept { return components_.front().rows(); }
    const ExprMatrix& component(std::size_t k) const { return components_.at(k); }

    std::vector<Mat> evaluate(std::span<const double> p) const;
    /// A(X) at p.
    Mat apply(std::span<const double> p, const Vec& x) const;

private:
    std::vector<ExprMatrix> components_;
};

/// Ω_ij for all i, j at one point (Ω_ii = 0, Ω_ji = −Ω_ij).
class CurvatureTwoForm {
public:
    CurvatureTwoForm(std::size_t n, std::size_t m)
        : n_(n), m_(m), data_(n * n, Mat::Zero(m, m)) {}

    std::size_t dim() const noexcept { return n_; }
    std::size_t size() const noexcept { return m_; }
    const Mat& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, const Mat& v);

    /// Largest absolute entry over all Ω_ij.
    double max_abs() const;
    /// Ω(e_a, e_b) = Σ_ij E_ia E_jb Ω_ij for frame matrix E (columns e_a).
    CurvatureTwoForm in_frame(const Mat& frame) const;

private:
    std::size_t n_, m_;
    std::vector<Mat> data_;
};

/// A together with its symbolic partial derivatives, for pointwise curvature.
class CurvatureField {
public:
    explicit CurvatureField(MatrixOneForm a);

    const MatrixOneForm& form() const noexcept { return a_; }
    /// dA + A∧A, with (A∧A)_ij = A_i A_j − A_j A_i.
    CurvatureTwoForm wedge_route(std::span<const double> p) const;
    /// dA + ½[A, A], with [B, C]_ij = [B_i, C_j] − [B_j, C_i].
    CurvatureTwoForm bracket_route(std::span<const double> p) const;
    /// ∂_i A_j − ∂_j A_i only.
    CurvatureTwoForm exterior_part(std::span<const double> p) const;

private:
    MatrixOneForm a_;
    std::vector<std::vector<ExprMatrix>> da_;  // da_[i][j] = ∂_i A_j
};

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

/// max_k |A_kᵀ η + η A_k| for η = diag(signs).
double algebra_defect(const std::vector<Mat>& components, const Vec& signs);

}  // namespace cartanflat
