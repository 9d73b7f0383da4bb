#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cartanflat/errors.hpp"
#include "cartanflat/presets.hpp"
#include "cartanflat/sasaki.hpp"
#include "support.hpp"

using namespace cartanflat;

namespace {

Mat mat3(std::initializer_list<double> v) {
    Mat m(3, 3);
    auto it = v.begin();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = *it++;
    return m;
}

// Ω_12 by central differences of the evaluated A_k fields (step 1e-5).
Mat omega12_fd(const MatrixOneForm& a, std::vector<double> p) {
    const double h = 1e-5;
    auto comp = [&](std::size_t k, std::size_t axis, double s) {
        std::vector<double> q = p;
        q[axis] += s;
        return a.evaluate(q)[k];
    };
    const Mat d1a2 = (comp(1, 0, h) - comp(1, 0, -h)) / (2 * h);
    const Mat d2a1 = (comp(0, 1, h) - comp(0, 1, -h)) / (2 * h);
    const auto at = a.evaluate(p);
    return d1a2 - d2a1 + at[0] * at[1] - at[1] * at[0];
}

}  // namespace

TEST_CASE("basis matrices") {
    const LieBasis sl2 = LieBasis::of(Presentation::sl2);
    Mat s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0, -0.5, -0.5, 0;
    s2 << 0.5, 0, 0, -0.5;
    s3 << 0, 0.5, -0.5, 0;
    CHECK(sl2.matrix(0) == s1);
    CHECK(sl2.matrix(1) == s2);
    CHECK(sl2.matrix(2) == s3);

    const LieBasis so21 = LieBasis::of(Presentation::so21);
    CHECK(so21.matrix(0) == mat3({0, 0, 1, 0, 0, 0, 1, 0, 0}));
    CHECK(so21.matrix(1) == mat3({0, 0, 0, 0, 0, 1, 0, 1, 0}));
    CHECK(so21.matrix(2) == mat3({0, 1, 0, -1, 0, 0, 0, 0, 0}));

    const LieBasis so3 = LieBasis::of(Presentation::so3);
    CHECK(so3.matrix(0) == mat3({0, 0, 1, 0, 0, 0, -1, 0, 0}));
    CHECK(so3.matrix(1) == mat3({0, 0, 0, 0, 0, 1, 0, -1, 0}));
}

TEST_CASE("commutator tables in exact arithmetic") {
    for (Presentation p : {Presentation::sl2, Presentation::so21, Presentation::so3}) {
        CAPTURE(to_string(p));
        CHECK(LieBasis::of(p).commutators_exact());
    }
    // table for sl2 and so(2,1): [1,2] = 3, [2,3] = -1, [3,1] = -2
    const auto t = LieBasis::of(Presentation::so21).expected_table();
    CHECK(t[0][1][2] == 1);
    CHECK(t[1][2][0] == -1);
    CHECK(t[2][0][1] == -1);
    // independent floating check
    const LieBasis b = LieBasis::of(Presentation::sl2);
    CHECK(commutator(b.matrix(0), b.matrix(1)) == b.matrix(2));
    CHECK(commutator(b.matrix(1), b.matrix(2)) == -b.matrix(0));
    CHECK(commutator(b.matrix(2), b.matrix(0)) == -b.matrix(1));
}

TEST_CASE("assembled form layout") {
    const FrameField h = orthonormal_frame(preset_metric("half_plane"));
    const MatrixOneForm a = sasaki_form(h, LieBasis::of(Presentation::so21));
    const auto at = a.evaluate(std::vector<double>{0.0, 1.0});
    CHECK((at[0] - mat3({0, -1, 1, 1, 0, 0, 1, 0, 0})).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((at[1] - mat3({0, 0, 0, 0, 0, 1, 0, 1, 0})).cwiseAbs().maxCoeff() < 1e-15);

    // entries for a generic metric: (1,3) = (3,1) = ω¹, (1,2) = −(2,1) = φ
    const ChartMetric m = random_analytic_metric(2, 9);
    const FrameField f = orthonormal_frame(m);
    const MatrixOneForm g = sasaki_form(f, LieBasis::of(Presentation::so21));
    const ScalarOneForm phi = connection_form(f)(1, 0);
    const std::vector<double> p{0.1, 0.2};
    for (std::size_t k = 0; k < 2; ++k) {
        const Mat ak = g.evaluate(p)[k];
        CHECK(ak(0, 2) == doctest::Approx(f.coframe_at(p)(0, k)));
        CHECK(ak(2, 0) == ak(0, 2));
        CHECK(ak(1, 2) == doctest::Approx(f.coframe_at(p)(1, k)));
        CHECK(ak(0, 1) == doctest::Approx(phi.evaluate(p)[k]));
        CHECK(ak(1, 0) == -ak(0, 1));
    }

    // so(3) carries −ω¹, −ω² in the last row
    const Mat s = sasaki_form(f, LieBasis::of(Presentation::so3)).evaluate(p)[0];
    CHECK(s(2, 0) == -s(0, 2));
    CHECK(s(2, 1) == -s(1, 2));

    // sl2: coefficient of ω¹ is σ₁
    const ScalarOneForm dx{{sym::num(1.0), sym::num(0.0)}};
    const ScalarOneForm zero{{sym::num(0.0), sym::num(0.0)}};
    const MatrixOneForm unit = sasaki_form(dx, zero, zero, LieBasis::of(Presentation::sl2));
    CHECK(unit.evaluate(p)[0] == LieBasis::of(Presentation::sl2).matrix(0));

    CHECK_THROWS_AS(sasaki_form(orthonormal_frame(preset_metric("sphere3")), LieBasis::of(Presentation::so3)),
                    DimensionError);
}

TEST_CASE("assembled forms stay in their algebra") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const FrameField f = orthonormal_frame(random_analytic_metric(2, seed));
        for (Presentation pr : {Presentation::sl2, Presentation::so21, Presentation::so3}) {
            const LieBasis b = LieBasis::of(pr);
            const MatrixOneForm a = sasaki_form(f, b);
            double worst = 0.0;
            for (const auto& p : f.metric().chart().grid(6))
                for (const Mat& ak : a.evaluate(p)) worst = std::max(worst, b.membership_defect(ak));
            CHECK(worst <= 1e-12);
        }
    }
}

TEST_CASE("curvature routes agree") {
    const FrameField f = orthonormal_frame(random_analytic_metric(2, 5));
    const CurvatureField c(sasaki_form(f, LieBasis::of(Presentation::so21)));
    for (const auto& p : f.metric().chart().grid(5)) {
        const CurvatureTwoForm w = c.wedge_route(p);
        const CurvatureTwoForm b = c.bracket_route(p);
        CHECK((w(0, 1) - b(0, 1)).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK((w(0, 1) + w(1, 0)).cwiseAbs().maxCoeff() == 0.0);
        CHECK(w(0, 0).isZero(0.0));
        CHECK((w(0, 1) - omega12_fd(c.form(), p)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("flat plane has unit curvature in so(2,1)") {
    const FrameField e = orthonormal_frame(preset_metric("euclidean2"));
    const CurvatureField c(sasaki_form(e, LieBasis::of(Presentation::so21)));
    const Mat o = c.wedge_route(std::vector<double>{0.3, -0.4})(0, 1);
    CHECK(o == LieBasis::of(Presentation::so21).matrix(2));
    CHECK(std::abs(o(0, 1)) == 1.0);
    CHECK(std::abs(o(1, 0)) == 1.0);
    CHECK(o(0, 2) == 0.0);
    CHECK(o.cwiseAbs().maxCoeff() == 1.0);
}

TEST_CASE("flatness scans") {
    CHECK(flatness_scan(preset_metric("half_plane"), Variant::h, 20).max_residual <= 1e-9);
    CHECK(flatness_scan(preset_metric("sphere2"), Variant::s, 20).max_residual <= 1e-9);
    CHECK(flatness_scan(preset_metric("half_plane"), Variant::s, 20).max_residual >= 1.0);
    CHECK(flatness_scan(preset_metric("half_plane"), Variant::s, 20).max_residual == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(flatness_scan(preset_metric("conformal_bump"), Variant::h, 20).max_residual > 0.01);

    const ScanResult r = flatness_scan(preset_metric("conformal_bump"), Variant::h, 21);
    CHECK(r.points == 441);
    REQUIRE(r.argmax.size() == 2);
    // the bump is centred, so the first maximiser in row-major order is a
    // grid point of maximal |K + 1|; it must repeat exactly
    const ScanResult again = flatness_scan(preset_metric("conformal_bump"), Variant::h, 21);
    CHECK(again.argmax == r.argmax);
    CHECK(again.max_residual == r.max_residual);
}

TEST_CASE("presentations vanish together") {
    for (const char* name : {"half_plane", "conformal_bump", "sphere2"}) {
        const FrameField f = orthonormal_frame(preset_metric(name));
        const LieBasis sl2 = LieBasis::of(Presentation::sl2);
        const LieBasis so21 = LieBasis::of(Presentation::so21);
        const CurvatureField a(sasaki_form(f, sl2));
        const CurvatureField b(sasaki_form(f, so21));
        double worst = 0.0;
        for (const auto& p : f.metric().chart().grid(8)) {
            const Vec ca = sl2.coordinates(a.wedge_route(p)(0, 1));
            const Vec cb = so21.coordinates(b.wedge_route(p)(0, 1));
            worst = std::max(worst, (ca - cb).cwiseAbs().maxCoeff());
        }
        CAPTURE(name);
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("flat exactly at the model curvature") {
    double previous_h = -1.0;
    std::vector<double> h_res, s_res;
    const std::vector<double> family{-1.0, -0.5, 0.0, 0.5, 1.0};
    for (double c : family) {
        PresetParams params;
        params.c = c;
        const ChartMetric m = preset_metric("constant_curvature", params);
        h_res.push_back(flatness_scan(m, Variant::h, 12).max_residual);
        s_res.push_back(flatness_scan(m, Variant::s, 12).max_residual);
    }
    for (std::size_t i = 0; i < family.size(); ++i) {
        CAPTURE(family[i]);
        CHECK((h_res[i] <= 1e-8) == (family[i] == -1.0));
        CHECK((s_res[i] <= 1e-8) == (family[i] == 1.0));
        CHECK(h_res[i] == doctest::Approx(std::abs(family[i] + 1.0)).epsilon(1e-9).scale(1.0));
        CHECK(s_res[i] == doctest::Approx(std::abs(family[i] - 1.0)).epsilon(1e-9).scale(1.0));
        if (i > 0) CHECK(h_res[i] > previous_h);
        previous_h = h_res[i];
    }
    for (std::size_t i = 1; i < family.size(); ++i) CHECK(s_res[i] < s_res[i - 1]);
}
