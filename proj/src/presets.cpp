#include "cartanflat/presets.hpp"

#include <array>
#include <charconv>
#include <numbers>

#include "cartanflat/errors.hpp"
#include "cartanflat/random.hpp"

namespace cartanflat {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::string> coord_names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
    return out;
}

std::vector<std::vector<std::string>> diagonal(const std::vector<std::string>& entries) {
    const std::size_t n = entries.size();
    std::vector<std::vector<std::string>> g(n, std::vector<std::string>(n, "0"));
    for (std::size_t i = 0; i < n; ++i) g[i][i] = entries[i];
    return g;
}

PresetInfo make(std::string name, std::string description, std::vector<Interval> domain,
                std::vector<std::vector<std::string>> metric) {
    PresetInfo info;
    info.name = std::move(name);
    info.description = std::move(description);
    info.coords = coord_names(domain.size());
    info.domain = std::move(domain);
    info.metric = std::move(metric);
    return info;
}

PresetInfo with_curvature(PresetInfo info, double k) {
    info.has_constant_curvature = true;
    info.curvature = k;
    return info;
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

std::vector<std::string> preset_names() {
    return {"euclidean2",    "euclidean3",     "sphere2",         "sphere3",
            "half_plane",    "poincare_disk",  "hyperbolic3",     "conformal_bump",
            "pseudospherical", "constant_curvature", "random"};
}

PresetInfo preset_info(std::string_view name, const PresetParams& params) {
    if (name == "euclidean2") {
        return with_curvature(make("euclidean2", "flat plane", {{-1, 1}, {-1, 1}}, diagonal({"1", "1"})),
                              0.0);
    }
    if (name == "euclidean3") {
        return with_curvature(make("euclidean3", "flat 3-space", {{-1, 1}, {-1, 1}, {-1, 1}},
                                   diagonal({"1", "1", "1"})),
                              0.0);
    }
    if (name == "sphere2") {
        return with_curvature(make("sphere2", "unit 2-sphere, polar chart (x1 polar, x2 azimuth)",
                                   {{0.15, kPi - 0.15}, {0.0, 2 * kPi}},
                                   diagonal({"1", "sin(x1)^2"})),
                              1.0);
    }
    if (name == "sphere3") {
        return with_curvature(
            make("sphere3", "unit 3-sphere, hyperspherical chart",
                 {{0.15, kPi - 0.15}, {0.15, kPi - 0.15}, {0.0, 2 * kPi}},
                 diagonal({"1", "sin(x1)^2", "sin(x1)^2*sin(x2)^2"})),
            1.0);
    }
    if (name == "half_plane") {
        return with_curvature(make("half_plane", "upper half-plane model of the hyperbolic plane",
                                   {{-2, 2}, {0.2, 5}}, diagonal({"1/x2^2", "1/x2^2"})),
                              -1.0);
    }
    if (name == "poincare_disk") {
        const std::string f = "4/(1 - x1^2 - x2^2)^2";
        return with_curvature(make("poincare_disk", "Poincare disk, square chart inside radius 0.9",
                                   {{-0.63, 0.63}, {-0.63, 0.63}}, diagonal({f, f})),
                              -1.0);
    }
    if (name == "hyperbolic3") {
        const std::string f = "1/x3^2";
        return with_curvature(make("hyperbolic3", "upper half-space model of hyperbolic 3-space",
                                   {{-2, 2}, {-2, 2}, {0.2, 5}}, diagonal({f, f, f})),
                              -1.0);
    }
    if (name == "conformal_bump") {
        const std::string f = "exp(2*" + format_double(params.a) + "*exp(-x1^2 - x2^2))";
        return make("conformal_bump", "conformal metric exp(2 a exp(-|x|^2)) times identity",
                    {{-2, 2}, {-2, 2}}, diagonal({f, f}));
    }
    if (name == "pseudospherical") {
        const std::string c = "cos(" + params.u + ")";
        return make("pseudospherical", "metric dx^2 + 2 cos(u) dx dy + dy^2 induced by u",
                    {{0.2, 2}, {0.2, 2}}, {{"1", c}, {c, "1"}});
    }
    if (name == "constant_curvature") {
        const std::string f = "4/(1 + " + format_double(params.c) + "*(x1^2 + x2^2))^2";
        return with_curvature(make("constant_curvature",
                                   "stereographic metric of constant curvature c",
                                   {{-0.6, 0.6}, {-0.6, 0.6}}, diagonal({f, f})),
                              params.c);
    }
    if (name == "random") return random_analytic_metric_info(params.dim, params.seed);
    throw Error("unknown preset '" + std::string(name) + "'");
}

ChartMetric metric_from_info(const PresetInfo& info, double margin) {
    return ChartMetric::from_text(Chart(info.coords, info.domain, margin), info.metric);
}

ChartMetric preset_metric(std::string_view name, const PresetParams& params) {
    return metric_from_info(preset_info(name, params));
}

PresetInfo random_analytic_metric_info(std::size_t dim, std::uint64_t seed) {
    if (dim < 2 || dim > 3) throw DimensionError("random analytic metrics are defined for dim 2 and 3");
    Rng rng(seed);
    const auto names = coord_names(dim);
    std::vector<std::vector<std::string>> p(dim, std::vector<std::string>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const double c = rng.uniform(-1.0, 1.0);
            std::string arg = format_double(rng.uniform(-1.0, 1.0));
            for (std::size_t k = 0; k < dim; ++k) {
                arg += " + " + format_double(rng.uniform(-1.0, 1.0)) + "*" + names[k];
            }
            const bool use_cos = rng.below(2) == 1;
            std::string entry = "0.3*" + format_double(c) + "*" + (use_cos ? "cos(" : "sin(") + arg + ")";
            if (i == j) entry = "1 + " + entry;
            p[i][j] = "(" + entry + ")";
        }
    }
    std::vector<std::vector<std::string>> g(dim, std::vector<std::string>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            std::string s;
            for (std::size_t k = 0; k < dim; ++k) {
                if (k) s += " + ";
                s += p[k][i] + "*" + p[k][j];
            }
            g[i][j] = g[j][i] = s;
        }
    }
    std::vector<Interval> domain(dim, Interval{-1.0, 1.0});
    return make("random", "seeded random analytic metric (seed " + std::to_string(seed) + ")",
                std::move(domain), std::move(g));
}

ChartMetric random_analytic_metric(std::size_t dim, std::uint64_t seed) {
    return metric_from_info(random_analytic_metric_info(dim, seed));
}

}  // namespace cartanflat
