#include "einlike/errors.hpp"
#include "einlike/metric.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace einlike;

namespace {

MetricField sphere2() {
    const std::vector<std::string> c{"theta", "phi"};
    return MetricField::diagonal(
        c, {ScalarExpr::number(1.0, c), ScalarExpr::parse("sin(theta)^2", c)},
        Signature::riemannian);
}

} // namespace

TEST_CASE("constant metric evaluates to itself") {
    const std::vector<std::string> c{"x", "y"};
    const MetricField m = MetricField::diagonal(
        c, {ScalarExpr::number(1.0, c), ScalarExpr::number(1.0, c)}, Signature::riemannian);
    const MetricValue v = metric_eval(m, std::array<double, 2>{3.0, -1.0});
    CHECK(v.g(0, 0) == 1.0);
    CHECK(v.g(1, 1) == 1.0);
    CHECK(v.g(0, 1) == 0.0);
    CHECK(v.det == doctest::Approx(1.0));
}

TEST_CASE("sphere metric at the equator") {
    const MetricValue v = metric_eval(sphere2(), std::array<double, 2>{M_PI / 2, 0.3});
    CHECK(v.g(1, 1) == doctest::Approx(1.0));
    CHECK(v.g_inv(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("coordinate degeneracy raises a singular-metric error") {
    CHECK_THROWS_AS(metric_eval(sphere2(), std::array<double, 2>{0.0, 0.3}), GeometryError);
}

TEST_CASE("declared signature is checked against eigenvalue signs") {
    const std::vector<std::string> c{"t", "x"};
    const MetricField wrong = MetricField::diagonal(
        c, {ScalarExpr::number(1.0, c), ScalarExpr::number(1.0, c)}, Signature::lorentzian);
    CHECK_THROWS_AS(metric_eval(wrong, std::array<double, 2>{0.0, 0.0}), GeometryError);

    const MetricField mink = MetricField::diagonal(
        c, {ScalarExpr::number(-1.0, c), ScalarExpr::number(1.0, c)}, Signature::lorentzian);
    const MetricValue v = metric_eval(mink, std::array<double, 2>{0.0, 0.0});
    CHECK(v.det == doctest::Approx(-1.0));
}

TEST_CASE("inverse satisfies g g_inv = identity on a curved metric") {
    const std::vector<std::string> c{"x", "y", "z"};
    std::vector<ScalarExpr> upper;
    const char* comps[] = {"1+0.2*y^2", "0.1*x", "0.05*z", "2+0.1*z^2", "0.08*y", "1.5+0.1*x^2"};
    for (const char* s : comps) upper.push_back(ScalarExpr::parse(s, c));
    const MetricField m(c, upper, Signature::riemannian);
    const MetricValue v = metric_eval(m, std::array<double, 3>{0.4, -0.3, 0.7});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += v.g(i, k) * v.g_inv(k, j);
            CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
        }
}

TEST_CASE("component storage mirrors the upper triangle") {
    const std::vector<std::string> c{"x", "y"};
    std::vector<ScalarExpr> upper{ScalarExpr::number(1.0, c), ScalarExpr::parse("0.5*x", c),
                                  ScalarExpr::number(2.0, c)};
    const MetricField m(c, upper, Signature::riemannian);
    CHECK(m.component(1, 0).serialize() == m.component(0, 1).serialize());
    CHECK_THROWS_AS(MetricField(c, {ScalarExpr::number(1.0, c)}, Signature::riemannian),
                    InputError);
}
