#pragma once

// Connections on F = TM ⊕ E, E the trivial line bundle with unit section e.
//
//   ∇̃_X(ξ + f e) = ∇_X ξ + f X + (X(f) + κ g(X, ξ)) e
//   g̃(ξ₁ + f₁e, ξ₂ + f₂e) = g(ξ₁, ξ₂) + σ f₁ f₂
//
// with (κ, σ) = (+1, −1) for the hyperbolic variant h and (−1, +1) for the
// spherical variant s. Curvature satisfies R̃(X,Y)ξ̃ = R(X,Y)ξ − R_{−κ}(X,Y)ξ,
// so h is flat exactly on curvature −1 and s exactly on curvature +1.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cartanflat/cartan.hpp"
#include "cartanflat/forms.hpp"
#include "cartanflat/metric.hpp"
#include "cartanflat/random.hpp"

namespace cartanflat {

enum class Variant { h, s };

const char* to_string(Variant v) noexcept;
/// Accepts "h" or "s"; throws Error otherwise.
Variant parse_variant(std::string_view text);

struct BundleConnection {
    double coupling = 1.0;    // κ, sign of the g(X, ξ) term
    double fiber_sign = -1.0; // σ, sign of the fiber metric on E

    static BundleConnection of(Variant v) noexcept {
        return v == Variant::h ? BundleConnection{1.0, -1.0} : BundleConnection{-1.0, 1.0};
    }
    /// Curvature of the space form on which this connection is flat.
    double model_curvature() const noexcept { return -coupling; }
    /// Diagonal of η in the basis (e_1, …, e_n, e).
    Vec fiber_signs(std::size_t n) const;
};

/// ξ + f e with ξ, f given as expressions on the chart.
class BundleSection {
public:
    BundleSection(std::vector<Expression> xi, Expression f);

    std::size_t dim() const noexcept { return xi_.size(); }
    const std::vector<Expression>& xi() const noexcept { return xi_; }
    const Expression& f() const noexcept { return f_; }

    /// Constant coordinate field ∂_k (f = 0) and the unit section e.
    static BundleSection coordinate(std::size_t n, std::size_t k);
    static BundleSection unit(std::size_t n);
    /// Components and f are independent polynomials of degree ≤ 2 in the
    /// coordinates with coefficients drawn uniformly from [-1, 1].
    static BundleSection random_polynomial(std::size_t n, Rng& rng);

    Vec xi_at(std::span<const double> p) const;
    double f_at(std::span<const double> p) const { return f_.evaluate(p); }
    /// Matrix with column k = ∂_k ξ at p.
    Mat dxi_at(std::span<const double> p) const;
    Vec df_at(std::span<const double> p) const;

private:
    std::vector<Expression> xi_;
    Expression f_;
    std::vector<std::vector<Expression>> dxi_;  // dxi_[k][a] = ∂_k ξ^a
    std::vector<Expression> df_;
};

/// Pointwise value of a section: vector part in the ∂ basis and e-component.
struct SectionValue {
    Vec xi;
    double e = 0.0;

    SectionValue operator-(const SectionValue& o) const { return {xi - o.xi, e - o.e}; }
    SectionValue operator+(const SectionValue& o) const { return {xi + o.xi, e + o.e}; }
    SectionValue operator*(double k) const { return {xi * k, e * k}; }
    double max_abs() const { return std::max(xi.cwiseAbs().maxCoeff(), std::abs(e)); }
};

using BundleCurvatureValue = SectionValue;

double fiber_inner(const BundleConnection& c, const Mat& g, const SectionValue& a,
                   const SectionValue& b);

SectionValue covariant_derivative(const BundleConnection& c, const ChartMetric& m,
                                  const BundleSection& s, const Vec& x, std::span<const double> p);

struct FiniteDifference {
    /// Step as a fraction of the coordinate's domain extent.
    double relative_step = 1e-4;
};

/// R̃(∂_i, ∂_j) s at p, computed as ∇̃_i ∇̃_j s − ∇̃_j ∇̃_i s where the outer
/// derivative of the inner field is a Richardson-extrapolated central
/// difference. Independent of the Riemann tensor pipeline.
BundleCurvatureValue bundle_curvature(const BundleConnection& c, const ChartMetric& m,
                                      const BundleSection& s, std::size_t i, std::size_t j,
                                      std::span<const double> p, FiniteDifference fd = {});

/// (n+1) x (n+1) matrix of R̃(∂_i, ∂_j) in the basis (∂_1, …, ∂_n, e).
Mat bundle_curvature_operator(const BundleConnection& c, const ChartMetric& m, std::size_t i,
                              std::size_t j, std::span<const double> p, FiniteDifference fd = {});

/// Largest entry of R̃(e_a, e_b) over a < b, in the orthonormal basis
/// (e_1, …, e_n, e), from the finite-difference curvature.
double bundle_curvature_frame_residual(const BundleConnection& c, const FrameField& f,
                                       std::span<const double> p, FiniteDifference fd = {});

/// R(∂_i,∂_j)ξ − R_K(∂_i,∂_j)ξ with K the connection's model curvature, from
/// the symbolic Riemann tensor.
Vec identity_rhs(const BundleConnection& c, const ChartMetric& m, const Vec& xi, std::size_t i,
                 std::size_t j, std::span<const double> p);

struct IdentityReport {
    double max_residual = 0.0;      // max of the two below
    double max_vector_residual = 0.0;
    double max_e_component = 0.0;
};

/// Compares bundle_curvature with identity_rhs for `trials` seeded random
/// sections over all coordinate pairs i < j.
IdentityReport identity_residual(const BundleConnection& c, const ChartMetric& m,
                                 std::span<const double> p, std::size_t trials,
                                 std::uint64_t seed, FiniteDifference fd = {});

/// |X g̃(s1, s2) − g̃(∇̃_X s1, s2) − g̃(s1, ∇̃_X s2)| at p.
double metric_compatibility_residual(const BundleConnection& c, const ChartMetric& m,
                                     const BundleSection& s1, const BundleSection& s2,
                                     const Vec& x, std::span<const double> p);

/// Connection matrix in the frame (e_1, …, e_n, e): entry (c, a) is the
/// coefficient of b_c in ∇̃ b_a. The TM block carries ω_a^c, the last column
/// ω^c and the last row κ ω^a.
MatrixOneForm bundle_connection_form(const BundleConnection& c, const FrameField& f);
std::vector<Mat> bundle_connection_matrix(const BundleConnection& c, const FrameField& f,
                                          std::span<const double> p);
/// The TM block alone (Levi-Civita connection in the frame).
MatrixOneForm levi_civita_form(const FrameField& f);

}  // namespace cartanflat
