#include "cartanflat/scan.hpp"

namespace cartanflat {

ScanResult grid_max(const Chart& chart, std::size_t per_axis,
                    const std::function<double(std::span<const double>)>& residual) {
    ScanResult out;
    for (const auto& p : chart.grid(per_axis)) {
        const double r = residual(p);
        if (out.points == 0 || r > out.max_residual) {
            out.max_residual = r;
            out.argmax = p;
        }
        ++out.points;
    }
    return out;
}

}  // namespace cartanflat
