#pragma once

// Zero-curvature checks for u_xy = sin u through the pseudospherical coframe
//   ω¹ = cos(u/2)(dx + dy),  ω² = sin(u/2)(dx − dy),  φ = (u_y dy − u_x dx)/2,
// whose so(2,1) form A = σ₁ω¹ + σ₂ω² + σ₃φ is flat exactly on solutions.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cartanflat/forms.hpp"
#include "cartanflat/scan.hpp"

namespace cartanflat {

/// u(x, y) on a two-dimensional chart, with its symbolic partials.
class UField {
public:
    UField(Chart chart, Expression u);
    static UField from_text(Chart chart, std::string_view text);

    const Chart& chart() const noexcept { return chart_; }
    const Expression& u() const noexcept { return u_; }
    const Expression& u_x() const noexcept { return ux_; }
    const Expression& u_y() const noexcept { return uy_; }
    const Expression& u_xy() const noexcept { return uxy_; }

private:
    Chart chart_;
    Expression u_, ux_, uy_, uxy_;
};

struct PseudosphericalTriple {
    ScalarOneForm omega1, omega2, phi;
};

PseudosphericalTriple pseudospherical_triple(const UField& u);

/// All pointwise residuals for one u, prepared once.
class ZeroCurvatureCheck {
public:
    explicit ZeroCurvatureCheck(UField u);

    const UField& field() const noexcept { return u_; }
    const PseudosphericalTriple& triple() const noexcept { return triple_; }

    /// Max entry of dA + A∧A at p, coordinate components.
    double zcr_residual(std::span<const double> p) const;
    /// |u_xy − sin u| at p.
    double pde_residual(std::span<const double> p) const;
    /// Coefficient of dx∧dy in dφ + ω¹∧ω².
    double gauss_defect(std::span<const double> p) const;
    /// | |gauss_defect| − pde_residual |.
    double gauss_link_residual(std::span<const double> p) const;
    /// Structural-equation residual of the triple.
    double structural_residual(std::span<const double> p) const;
    /// Max entry of (ω¹)² + (ω²)² − (dx² + 2 cos u dx dy + dy²).
    double metric_residual(std::span<const double> p) const;

private:
    UField u_;
    PseudosphericalTriple triple_;
    StructureEquations structure_;
    CurvatureField curvature_;
};

struct EquivalenceReport {
    ScanResult zcr;
    ScanResult pde;
    std::vector<double> zcr_values;  // grid order
    std::vector<double> pde_values;
    /// Smallest C, C' with zcr ≤ C·pde and pde ≤ C'·zcr at every grid point
    /// where both residuals exceed `floor`; empty when no point qualifies.
    std::optional<double> zcr_over_pde;
    std::optional<double> pde_over_zcr;
    /// Grid points where one residual exceeds `floor` and the other does not.
    std::size_t one_sided_points = 0;
    /// Pearson correlation of the paired residuals; empty if either is constant.
    std::optional<double> correlation;
};

EquivalenceReport equivalence_scan(const ZeroCurvatureCheck& check, std::size_t per_axis,
                                   double floor = 1e-12);

}  // namespace cartanflat
