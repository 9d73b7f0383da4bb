#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "cartanflat/zcr.hpp"
#include "support.hpp"

using namespace cartanflat;
using std::numbers::pi;

namespace {

const std::string kKink = "4*atan(exp(x + y))";

Chart square() { return Chart({"x", "y"}, {{-2.0, 2.0}, {-2.0, 2.0}}); }

ZeroCurvatureCheck check(const std::string& u) { return ZeroCurvatureCheck(UField::from_text(square(), u)); }

// perturbed kinks, none of which solve u_xy = sin u
const std::vector<std::string> kPerturbed{
    kKink + " + 0.01*x",
    kKink + " + 0.01*x*y",
    "1.01*(" + kKink + ")",
    kKink + " + 0.02*sin(x - 2*y)",
    kKink + " + 0.005*(x^2 + y)",
};

}  // namespace

TEST_CASE("kink derivatives against closed forms") {
    // ξ = x + y: u' = 2 sech ξ, u'' = −2 sech ξ tanh ξ = sin u
    const UField u = UField::from_text(square(), kKink);
    double worst = 0.0, pde = 0.0;
    for (const auto& p : square().grid(21)) {
        const double xi = p[0] + p[1];
        const double sech = 1.0 / std::cosh(xi);
        worst = std::max(worst, std::abs(u.u_x().evaluate(p) - 2 * sech));
        worst = std::max(worst, std::abs(u.u_xy().evaluate(p) + 2 * sech * std::tanh(xi)));
        pde = std::max(pde, std::abs(-2 * sech * std::tanh(xi) - std::sin(4 * std::atan(std::exp(xi)))));
    }
    CHECK(worst <= 1e-12);
    CHECK(pde <= 1e-12);
}

TEST_CASE("pointwise residuals") {
    const ZeroCurvatureCheck kink = check(kKink);
    CHECK(kink.zcr_residual(std::vector<double>{0.3, -0.1}) <= 1e-9);
    CHECK(kink.pde_residual(std::vector<double>{0.0, 0.0}) <= 1e-12);

    const ZeroCurvatureCheck xy = check("x*y");
    const std::vector<double> half{0.5, 0.5};
    CHECK(xy.zcr_residual(half) >= 1e-2);
    CHECK(xy.pde_residual(half) == doctest::Approx(1.0 - std::sin(0.25)).epsilon(1e-14));

    const ZeroCurvatureCheck zero = check("0");
    const ZeroCurvatureCheck right = check("pi/2");
    for (const auto& p : square().grid(5)) {
        CHECK(zero.zcr_residual(p) <= 1e-12);
        CHECK(zero.pde_residual(p) == 0.0);
        CHECK(right.pde_residual(p) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(right.zcr_residual(p) > 0.1);
    }
}

TEST_CASE("triple identities hold for any u") {
    std::vector<UField> fields;
    for (const char* f : {"4*atan(exp(x + y))", "x*y", "sin(x)*cos(2*y) + x", "x^3 - y^2 + 1", "exp(x/3)*y"})
        fields.push_back(UField::from_text(square(), f));
    const Chart numbered({"x1", "x2"}, {{-2.0, 2.0}, {-2.0, 2.0}});
    oracle::TameTree gen(31, 2);
    while (fields.size() < 10) fields.emplace_back(numbered, gen.make(3).e);
    for (const UField& u : fields) {
        const ZeroCurvatureCheck c(u);
        const std::string f = to_string(u.u());
        double structural = 0.0, metric = 0.0;
        for (const auto& p : u.chart().grid(7)) {
            structural = std::max(structural, c.structural_residual(p));
            metric = std::max(metric, c.metric_residual(p));
        }
        CAPTURE(f);
        CHECK(structural <= 1e-9);
        CHECK(metric <= 1e-10);
    }
}

TEST_CASE("gauss link") {
    for (const std::string& f : {kKink, std::string("x*y"), kPerturbed[0], kPerturbed[3], std::string("sin(x) + y")}) {
        const ZeroCurvatureCheck c = check(f);
        double worst = 0.0;
        std::size_t used = 0;
        for (const auto& p : square().grid(21)) {
            if (std::abs(std::sin(c.field().u().evaluate(p))) <= 0.1) continue;
            ++used;
            worst = std::max(worst, c.gauss_link_residual(p));
            CHECK(c.gauss_defect(p) == doctest::Approx(c.field().u_xy().evaluate(p) - std::sin(c.field().u().evaluate(p)))
                                           .epsilon(1e-12)
                                           .scale(1.0));
        }
        CAPTURE(f);
        CHECK(used > 0);
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("equivalence scans") {
    const EquivalenceReport kink = equivalence_scan(check(kKink), 21);
    CHECK(kink.zcr.points == 441);
    CHECK(kink.zcr.max_residual <= 1e-8);
    CHECK(kink.pde.max_residual <= 1e-8);

    for (const auto& f : kPerturbed) {
        const EquivalenceReport r = equivalence_scan(check(f), 21);
        CAPTURE(f);
        CHECK(r.zcr.max_residual >= 1e-4);
        CHECK(r.pde.max_residual >= 1e-4);
        REQUIRE(r.correlation.has_value());
        CHECK(*r.correlation > 0.9);
        REQUIRE(r.zcr_over_pde.has_value());
        REQUIRE(r.pde_over_zcr.has_value());
        // both residuals vanish together: each bounds the other
        for (std::size_t k = 0; k < r.zcr_values.size(); ++k) {
            CHECK(r.zcr_values[k] <= *r.zcr_over_pde * r.pde_values[k] + 1e-12);
            CHECK(r.pde_values[k] <= *r.pde_over_zcr * r.zcr_values[k] + 1e-12);
            CHECK((r.zcr_values[k] <= 1e-8) == (r.pde_values[k] <= 1e-8));
        }
    }

    const EquivalenceReport small = equivalence_scan(check(kPerturbed[0]), 21);
    CHECK(small.zcr.max_residual <= 1e-1);
    CHECK(small.pde.max_residual <= 1e-1);

    const EquivalenceReport flat = equivalence_scan(check("pi/2"), 5);
    CHECK(flat.pde.max_residual == doctest::Approx(1.0));
    CHECK(flat.zcr.max_residual > 0.1);
}
