#pragma once

// The 2D Sasaki connection form A = σ₁ω¹ + σ₂ω² + σ₃φ in three Lie-algebra
// presentations, its curvature, and flatness scans.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "cartanflat/bundle.hpp"
#include "cartanflat/cartan.hpp"
#include "cartanflat/forms.hpp"
#include "cartanflat/scan.hpp"

namespace cartanflat {

enum class Presentation { sl2, so21, so3 };

const char* to_string(Presentation p) noexcept;

/// Three basis matrices stored as integer numerators over a common
/// denominator, so commutators can be checked exactly.
class LieBasis {
public:
    static LieBasis of(Presentation p);

    Presentation presentation() const noexcept { return tag_; }
    std::size_t size() const noexcept { return size_; }
    int denominator() const noexcept { return denom_; }
    /// Numerator entries of basis element a, row-major.
    const std::vector<long long>& numerator(std::size_t a) const { return num_.at(a); }
    Mat matrix(std::size_t a) const;

    /// Structure constants: [σ_a, σ_b] = Σ_c table[a][b][c] σ_c.
    using Table = std::array<std::array<std::array<int, 3>, 3>, 3>;
    /// The table the presentation is expected to satisfy.
    Table expected_table() const;
    /// True when every commutator matches `expected_table()` in exact
    /// integer arithmetic.
    bool commutators_exact() const;

    /// Coordinates of x in this basis (least squares).
    Vec coordinates(const Mat& x) const;
    /// Largest violation of the presentation's algebra constraint by x
    /// (trace for sl2, η-antisymmetry for so21, antisymmetry for so3).
    double membership_defect(const Mat& x) const;

private:
    Presentation tag_ = Presentation::so21;
    std::size_t size_ = 3;
    int denom_ = 1;
    std::array<std::vector<long long>, 3> num_;
};

/// A assembled from (ω¹, ω², φ) in the given presentation.
MatrixOneForm sasaki_form(const ScalarOneForm& w1, const ScalarOneForm& w2,
                          const ScalarOneForm& phi, const LieBasis& basis);
/// A from a 2D orthonormal frame (φ = ω_2^1); throws DimensionError for n ≠ 2.
MatrixOneForm sasaki_form(const FrameField& f, const LieBasis& basis);

CurvatureField curvature_form(const MatrixOneForm& a);

/// h pairs with so(2,1), s with so(3).
Presentation presentation_for(Variant v) noexcept;

/// Pointwise flatness residual: max entry of the curvature evaluated on pairs
/// of orthonormal frame vectors. Uses the Sasaki form for n = 2 and the
/// bundle connection matrix otherwise.
class FlatnessProbe {
public:
    FlatnessProbe(const ChartMetric& m, Variant v);
    FlatnessProbe(const FrameField& f, Variant v);
    double residual(std::span<const double> p) const;
    const FrameField& frame() const noexcept { return frame_; }

private:
    FrameField frame_;
    CurvatureField curvature_;
};

ScanResult flatness_scan(const ChartMetric& m, Variant v, std::size_t per_axis);

}  // namespace cartanflat
