#pragma once

// Parallel transport in a frame presentation, holonomy around loops, and the
// developing map into the ambient (pseudo-)Euclidean space.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cartanflat/bundle.hpp"
#include "cartanflat/forms.hpp"

namespace cartanflat {

/// t ↦ c(t) in chart coordinates, t ∈ [t0, t1].
class ChartCurve {
public:
    ChartCurve(std::vector<Expression> coords, double t0, double t1,
               double samples_per_unit = 256.0);
    /// Parses coordinate expressions in the single variable `t`.
    static ChartCurve from_text(const std::vector<std::string>& coords, double t0, double t1,
                                double samples_per_unit = 256.0);
    /// Straight segment from a to b, t ∈ [0, 1].
    static ChartCurve segment(std::span<const double> a, std::span<const double> b,
                              double samples_per_unit = 256.0);
    /// Circle of the given radius about `center` in coordinates (i, j).
    static ChartCurve circle(std::span<const double> center, double radius, std::size_t i = 0,
                             std::size_t j = 1, double samples_per_unit = 256.0);

    std::size_t dim() const noexcept { return coords_.size(); }
    double t0() const noexcept { return t0_; }
    double t1() const noexcept { return t1_; }
    double samples_per_unit() const noexcept { return samples_; }
    std::vector<double> point(double t) const;
    Vec velocity(double t) const;
    /// Number of RK4 steps for the full parameter interval.
    std::size_t steps() const;
    ChartCurve reversed() const;

private:
    std::vector<Expression> coords_;
    std::vector<Expression> velocity_;
    double t0_, t1_, samples_;
};

/// Transport matrix P with v(t1) = P v(t0) for v' = −A(c'(t)) v, classical
/// RK4 with curve.steps() fixed steps. Throws StepError if the curve leaves
/// the chart domain at any stage point.
Mat transport_matrix(const MatrixOneForm& a, const Chart& chart, const ChartCurve& curve);
Vec parallel_transport(const MatrixOneForm& a, const Chart& chart, const ChartCurve& curve,
                       const Vec& v0);
Vec parallel_transport(Variant v, const FrameField& f, const ChartCurve& curve, const Vec& v0);

/// Samples (t, P(t)) at every RK4 step, starting with (t0, I).
struct TransportSample {
    double t = 0.0;
    std::vector<double> point;
    Mat transport;
};
std::vector<TransportSample> transport_path(const MatrixOneForm& a, const Chart& chart,
                                            const ChartCurve& curve);

/// Throws NonClosedLoop unless the endpoints agree within 1e-12.
Mat holonomy(const MatrixOneForm& a, const Chart& chart, const ChartCurve& loop);
Mat holonomy(Variant v, const FrameField& f, const ChartCurve& loop);

/// Σ η_a x_a y_a with η = diag(1, …, 1, σ).
double ambient_product(Variant v, const Vec& x, const Vec& y);

struct Development {
    Vec point;                         // in the base fiber frame (e_1..e_n, e)
    bool curvature_warning = false;    // metric not of curvature ∓1 along the path
    bool path_dependent = false;       // a second path disagreed beyond tolerance
    double path_discrepancy = 0.0;
};

struct DevelopOptions {
    double flatness_tolerance = 1e-6;
    double path_tolerance = 1e-6;
    std::size_t curvature_samples = 17;
};

/// Φ(target): the value e(target) transported back along `path` to the base
/// fiber. `path` runs from base to target; a straight segment is used when
/// absent. A second path, when supplied, is used for the path-dependence flag.
Development develop(Variant v, const FrameField& f, std::span<const double> base,
                    std::span<const double> target, const std::optional<ChartCurve>& path = {},
                    const std::optional<ChartCurve>& second_path = {}, DevelopOptions opts = {});

/// Developed points at every step of `curve`, starting at its base point.
struct DevelopedSample {
    double t = 0.0;
    std::vector<double> point;
    Vec ambient;
};
std::vector<DevelopedSample> develop_along(Variant v, const FrameField& f, const ChartCurve& curve);

}  // namespace cartanflat
