#pragma once

// Catalog of named charts and metrics. Every preset is described by plain
// expression text so it can be echoed into reports and reproduced from a
// config file.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cartanflat/metric.hpp"

namespace cartanflat {

struct PresetParams {
    double a = 0.3;                          // conformal_bump amplitude
    double c = -1.0;                         // constant_curvature value
    std::string u = "4*atan(exp(x1 + x2))";  // pseudospherical field
    std::uint64_t seed = 1;                  // random
    std::size_t dim = 2;                     // random
};

struct PresetInfo {
    std::string name;
    std::string description;
    std::vector<std::string> coords;
    std::vector<Interval> domain;
    std::vector<std::vector<std::string>> metric;
    /// Constant sectional curvature, when the preset has one.
    bool has_constant_curvature = false;
    double curvature = 0.0;
};

std::vector<std::string> preset_names();
/// Throws Error for unknown names.
PresetInfo preset_info(std::string_view name, const PresetParams& params = {});
ChartMetric preset_metric(std::string_view name, const PresetParams& params = {});
ChartMetric metric_from_info(const PresetInfo& info, double margin = 0.05);

/// g = Pᵀ P with P = I + 0.3 M(x), M_ij = c sin(a·x + d) for seeded
/// coefficients in [-1, 1]; positive definite on [-1, 1]^dim for dim ≤ 3.
PresetInfo random_analytic_metric_info(std::size_t dim, std::uint64_t seed);
ChartMetric random_analytic_metric(std::size_t dim, std::uint64_t seed);

std::string format_double(double v);

}  // namespace cartanflat
