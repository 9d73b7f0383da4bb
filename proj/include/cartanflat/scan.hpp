#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cartanflat/metric.hpp"

namespace cartanflat {

struct ScanResult {
    double max_residual = 0.0;
    std::vector<double> argmax;  // first maximiser in row-major grid order
    std::size_t points = 0;
};

/// Evaluates `residual` on chart.grid(per_axis) and keeps the largest value.
ScanResult grid_max(const Chart& chart, std::size_t per_axis,
                    const std::function<double(std::span<const double>)>& residual);

}  // namespace cartanflat
