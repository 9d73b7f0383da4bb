#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cartanflat/errors.hpp"
#include "cartanflat/presets.hpp"
#include "cartanflat/transport.hpp"
#include "support.hpp"

using namespace cartanflat;
using std::numbers::pi;

namespace {

Vec e_axis(std::size_t n) { return Vec::Unit(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n)); }

double deviation(const Mat& m) { return (m - Mat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff(); }

// cosh of the hyperbolic distance in the upper half-plane
double cosh_distance(std::span<const double> a, std::span<const double> b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1];
    return 1.0 + (dx * dx + dy * dy) / (2.0 * a[1] * b[1]);
}

// base → target with a sideways bulge, homotopic to the straight segment
ChartCurve bent(std::span<const double> a, std::span<const double> b, double bulge) {
    auto fmt = [](double v) { return format_double(v); };
    return ChartCurve::from_text(
        {fmt(a[0]) + " + " + fmt(b[0] - a[0]) + "*t + " + fmt(bulge) + "*sin(pi*t)",
         fmt(a[1]) + " + " + fmt(b[1] - a[1]) + "*t"},
        0.0, 1.0);
}

}  // namespace

TEST_CASE("curves") {
    const ChartCurve c = ChartCurve::from_text({"1 + t^2", "2*t"}, 0.0, 2.0, 10.0);
    CHECK(c.steps() == 20);
    CHECK(c.point(1.5)[0] == 3.25);
    CHECK(c.velocity(1.5)[0] == 3.0);
    CHECK(c.velocity(1.5)[1] == 2.0);
    const ChartCurve r = c.reversed();
    CHECK(r.point(0.0) == c.point(2.0));
    CHECK(r.point(2.0) == c.point(0.0));
    CHECK(r.velocity(0.5)[0] == doctest::Approx(-c.velocity(1.5)[0]));
    CHECK_THROWS_AS(ChartCurve::from_text({"x"}, 0, 1), UnknownIdentifier);
}

TEST_CASE("transport basics") {
    const FrameField h = orthonormal_frame(preset_metric("half_plane"));
    Vec v0(3);
    v0 << 0.3, -0.2, 1.1;
    const std::vector<double> a{0.5, 1.0};
    const ChartCurve still = ChartCurve::segment(a, a);
    CHECK(parallel_transport(Variant::h, h, ChartCurve::from_text({"0.5", "1"}, 0.3, 0.3), v0) == v0);
    CHECK((parallel_transport(Variant::h, h, still, v0) - v0).cwiseAbs().maxCoeff() < 1e-14);

    const ChartCurve wiggle = ChartCurve::from_text({"0.5 + sin(3*t)", "1 + t^2"}, 0.0, 1.5);
    double drift = 0.0;
    const MatrixOneForm form = bundle_connection_form(BundleConnection::of(Variant::h), h);
    for (const auto& s : transport_path(form, h.metric().chart(), wiggle)) {
        const Vec v = s.transport * e_axis(2);
        drift = std::max(drift, std::abs(ambient_product(Variant::h, v, v) + 1.0));
    }
    CHECK(drift <= 1e-8);

    const FrameField s = orthonormal_frame(preset_metric("sphere2"));
    const ChartCurve equator = ChartCurve::from_text({"pi/2", "t"}, 0.0, pi / 2);
    const Vec w = parallel_transport(Variant::s, s, equator, e_axis(2));
    CHECK(ambient_product(Variant::s, w, w) == doctest::Approx(1.0).epsilon(1e-8));

    const ChartCurve exits = ChartCurve::from_text({"0", "1 - t"}, 0.0, 1.0);
    CHECK_THROWS_AS(parallel_transport(Variant::h, h, exits, v0), StepError);
}

TEST_CASE("holonomy") {
    const FrameField h = orthonormal_frame(preset_metric("half_plane"));
    const std::vector<double> c{0.0, 2.0};
    CHECK(deviation(holonomy(Variant::h, h, ChartCurve::circle(c, 0.3))) <= 1e-6);
    CHECK(deviation(holonomy(Variant::s, h, ChartCurve::circle(c, 0.3))) > 1e-2);
    CHECK_THROWS_AS(holonomy(Variant::h, h, ChartCurve::segment(c, std::vector<double>{0.1, 2.0})), NonClosedLoop);

    // Levi-Civita holonomy around a latitude: rotation by 2π(1 − cos θ₀).
    // The loop closes on the sphere, not in the chart (φ runs 0 → 2π), and the
    // frame is φ-independent, so the transport matrix is the holonomy.
    const FrameField s = orthonormal_frame(preset_metric("sphere2"));
    const MatrixOneForm lc = levi_civita_form(s);
    for (double theta : {pi / 3, pi / 4, 1.2}) {
        const ChartCurve loop = ChartCurve::from_text({format_double(theta), "t"}, 0.0, 2 * pi);
        const Mat r = transport_matrix(lc, s.metric().chart(), loop);
        const double angle = 2 * pi * (1 - std::cos(theta));
        Mat expected(2, 2);
        expected << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
        const double err = std::min((r - expected).cwiseAbs().maxCoeff(), (r - expected.transpose()).cwiseAbs().maxCoeff());
        CAPTURE(theta);
        CHECK(err <= 1e-4);
    }

    // flat plane, h: holonomy deviation ≈ enclosed area, since |Ω₁₂| = 1
    const FrameField e = orthonormal_frame(preset_metric("euclidean2"));
    for (double r : {0.02, 0.05, 0.1}) {
        const double dev = deviation(holonomy(Variant::h, e, ChartCurve::circle(std::vector<double>{0.0, 0.0}, r)));
        const double area = pi * r * r;
        CAPTURE(r);
        CHECK(dev >= area / 2);
        CHECK(dev <= area * 2);
    }
}

TEST_CASE("holonomy of flat connections around seeded loops") {
    Rng rng(2024);
    double worst = 0.0;
    const FrameField h = orthonormal_frame(preset_metric("poincare_disk"));
    const FrameField s = orthonormal_frame(preset_metric("sphere2"));
    for (int k = 0; k < 10; ++k) {
        const std::vector<double> ch{rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2)};
        worst = std::max(worst, deviation(holonomy(Variant::h, h, ChartCurve::circle(ch, rng.uniform(0.05, 0.35)))));
        const std::vector<double> cs{rng.uniform(1.0, 2.1), rng.uniform(2.0, 4.0)};
        worst = std::max(worst, deviation(holonomy(Variant::s, s, ChartCurve::circle(cs, rng.uniform(0.1, 0.6)))));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("developing map") {
    const FrameField h = orthonormal_frame(preset_metric("half_plane"));
    const std::vector<double> base{0.0, 1.0};
    CHECK((develop(Variant::h, h, base, base).point - e_axis(2)).cwiseAbs().maxCoeff() < 1e-14);

    const std::vector<double> up{0.0, std::exp(1.0)};
    const Development d = develop(Variant::h, h, base, up);
    CHECK(ambient_product(Variant::h, e_axis(2), d.point) == doctest::Approx(-std::cosh(1.0)).epsilon(1e-9));
    CHECK(ambient_product(Variant::h, d.point, d.point) == doctest::Approx(-1.0).epsilon(1e-7));
    CHECK_FALSE(d.curvature_warning);

    const FrameField s = orthonormal_frame(preset_metric("sphere2"));
    const std::vector<double> sb{pi / 2, 0.0}, st{pi / 2, pi / 2};
    const Development ds = develop(Variant::s, s, sb, st);
    CHECK(std::abs(ds.point.dot(e_axis(2))) <= 1e-6);
    CHECK(ds.point.squaredNorm() == doctest::Approx(1.0).epsilon(1e-7));

    // hyperbolic distances between seeded pairs
    Rng rng(77);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const std::vector<double> a{rng.uniform(-1.5, 1.5), rng.uniform(0.5, 3.0)};
        const std::vector<double> b{rng.uniform(-1.5, 1.5), rng.uniform(0.5, 3.0)};
        const Vec pa = develop(Variant::h, h, base, a).point;
        const Vec pb = develop(Variant::h, h, base, b).point;
        worst = std::max(worst, std::abs(ambient_product(Variant::h, pa, pb) + cosh_distance(a, b)));
    }
    CHECK(worst <= 1e-5);
}

TEST_CASE("development is path independent exactly when flat") {
    const FrameField h = orthonormal_frame(preset_metric("half_plane"));
    const std::vector<double> a{-1.0, 1.0}, b{1.0, 2.5};
    const Development flat = develop(Variant::h, h, a, b, std::nullopt, bent(a, b, 0.4));
    CHECK_FALSE(flat.path_dependent);
    CHECK(flat.path_discrepancy <= 1e-6);

    const FrameField bump = orthonormal_frame(preset_metric("conformal_bump"));
    const std::vector<double> c{-1.0, -0.2}, e{1.0, 0.3};
    const Development curved = develop(Variant::h, bump, c, e, std::nullopt, bent(c, e, 0.8));
    CHECK(curved.curvature_warning);
    CHECK(curved.path_dependent);
    CHECK(curved.path_discrepancy > 1e-3);
    CHECK(ambient_product(Variant::h, curved.point, curved.point) == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("development is an isometry") {
    for (auto [name, v] : std::vector<std::pair<const char*, Variant>>{{"poincare_disk", Variant::h}, {"sphere2", Variant::s}}) {
        const FrameField f = orthonormal_frame(preset_metric(name));
        const ChartCurve c = std::string(name) == "sphere2"
                                 ? ChartCurve::from_text({"1 + 0.5*t", "2 + sin(t)"}, 0.0, 1.0, 512)
                                 : ChartCurve::from_text({"-0.3 + 0.5*t", "0.2*cos(3*t)"}, 0.0, 1.0, 512);
        const auto samples = develop_along(v, f, c);
        double worst = 0.0, quadric = 0.0;
        const double sigma = BundleConnection::of(v).fiber_sign;
        for (std::size_t k = 1; k + 1 < samples.size(); ++k) {
            const double dt = samples[k + 1].t - samples[k - 1].t;
            const Vec dphi = (samples[k + 1].ambient - samples[k - 1].ambient) / dt;
            const Vec vel = c.velocity(samples[k].t);
            const double speed2 = vel.dot(f.metric().at(samples[k].point) * vel);
            worst = std::max(worst, std::abs(ambient_product(v, dphi, dphi) - speed2));
            quadric = std::max(quadric, std::abs(ambient_product(v, samples[k].ambient, samples[k].ambient) - sigma));
        }
        CAPTURE(name);
        CHECK(worst <= 1e-5);
        CHECK(quadric <= 1e-7);
    }
}
