#include "einlike/errors.hpp"
#include "einlike/warped.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace einlike;
using namespace einlike::testing;

namespace {

FactorSpec line_factor(const std::string& coord, const std::string& warping) {
    const std::vector<std::string> c{coord};
    return FactorSpec{coord, MetricField::diagonal(c, {ScalarExpr::number(1.0, c)},
                                                   Signature::riemannian),
                      ScalarExpr::parse(warping, c)};
}

} // namespace

TEST_CASE("doubly warped assembly") {
    SUBCASE("singly warped product gives the hyperbolic plane metric") {
        const ProductSpec spec = build_doubly_warped(line_factor("x", "exp(x)"), line_factor("y", "1"));
        const MetricValue v = metric_eval(spec.assembled, std::array<double, 2>{0.5, 2.0});
        CHECK(v.g(0, 0) == doctest::Approx(1.0));
        CHECK(v.g(1, 1) == doctest::Approx(std::exp(1.0)));
        CHECK(v.g(0, 1) == 0.0);
    }
    SUBCASE("unit warpings give the direct product") {
        const ProductSpec spec = build_doubly_warped(line_factor("x", "1"), line_factor("y", "1"));
        const MetricValue v = metric_eval(spec.assembled, std::array<double, 2>{0.5, 2.0});
        CHECK(v.g(0, 0) == 1.0);
        CHECK(v.g(1, 1) == 1.0);
    }
    SUBCASE("both warpings act on the opposite block") {
        const ProductSpec spec =
            build_doubly_warped(line_factor("x", "exp(x)"), line_factor("y", "cosh(y)"));
        const MetricValue v = metric_eval(spec.assembled, std::array<double, 2>{0.3, 0.7});
        CHECK(v.g(0, 0) == doctest::Approx(std::cosh(0.7) * std::cosh(0.7)));
        CHECK(v.g(1, 1) == doctest::Approx(std::exp(0.6)));
    }
    SUBCASE("coordinate collisions are rejected") {
        CHECK_THROWS_AS(build_doubly_warped(line_factor("x", "1"), line_factor("x", "1")),
                        InputError);
    }
}

TEST_CASE("f_diamond follows its definition") {
    // factor (R, dx^2) inside a product whose other factor is 2-dimensional
    const ProductSpec spec2 = build_doubly_warped(
        line_factor("x", "x+5"),  // positive on the sample box
        FactorSpec{"M2", MetricField::diagonal({"y", "z"},
                                               {ScalarExpr::number(1.0, {"y", "z"}),
                                                ScalarExpr::number(1.0, {"y", "z"})},
                                               Signature::riemannian),
                   ScalarExpr::number(1.0, {"y", "z"})});
    // f = x + 5: lap f = 0, |grad f|^2 = 1, n_other = 2 -> diamond = 1
    CHECK(f_diamond(spec2, 1, std::array<double, 1>{1.0}) == doctest::Approx(1.0));

    // f = e^x with a 3-dimensional opposite factor: diamond = 3 e^{2x}
    const std::vector<std::string> c3{"u", "v", "w"};
    std::vector<ScalarExpr> ones;
    for (int i = 0; i < 3; ++i) ones.push_back(ScalarExpr::number(1.0, c3));
    const ProductSpec spec3 = build_doubly_warped(
        line_factor("x", "exp(x)"),
        FactorSpec{"M2", MetricField::diagonal(c3, ones, Signature::riemannian),
                   ScalarExpr::number(1.0, c3)});
    CHECK(f_diamond(spec3, 1, std::array<double, 1>{0.0}) == doctest::Approx(3.0));

    // constant warping: diamond vanishes
    const ProductSpec specc = build_doubly_warped(line_factor("x", "2"), line_factor("y", "1"));
    CHECK(f_diamond(specc, 1, std::array<double, 1>{0.4}) == doctest::Approx(0.0));
}

TEST_CASE("F tensor is the scaled Hessian") {
    const ProductSpec specc = build_doubly_warped(line_factor("x", "1"), line_factor("y", "1"));
    CHECK(F_tensor(specc, 1, std::array<double, 1>{0.2})(0, 0) == doctest::Approx(0.0));

    const ProductSpec spec2 = build_doubly_warped(
        line_factor("x", "exp(x)"),
        FactorSpec{"M2", MetricField::diagonal({"y", "z"},
                                               {ScalarExpr::number(1.0, {"y", "z"}),
                                                ScalarExpr::number(1.0, {"y", "z"})},
                                               Signature::riemannian),
                   ScalarExpr::number(1.0, {"y", "z"})});
    // F_xx = n_j H^f/f = 2 e^x / e^x = 2 at every x
    CHECK(F_tensor(spec2, 1, std::array<double, 1>{0.8})(0, 0) == doctest::Approx(2.0));
    CHECK(F_tensor(spec2, 1, std::array<double, 1>{-1.1})(0, 0) == doctest::Approx(2.0));

    // linear warping on a flat factor has a vanishing Hessian
    const ProductSpec specl = build_doubly_warped(line_factor("x", "x+4"), line_factor("y", "1"));
    CHECK(F_tensor(specl, 1, std::array<double, 1>{0.0})(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("Ricci blocks against the intrinsic product computation") {
    SUBCASE("hyperbolic plane as a singly warped product") {
        const ProductSpec spec = build_doubly_warped(line_factor("x", "exp(x)"), line_factor("y", "1"));
        const std::vector<double> p{0.4, 1.2};
        const RicciBlocks blocks = product_ricci_blocks(spec, p);
        const CurvaturePack pack = curvature(spec.assembled, p);
        CHECK(blocks.block11(0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(blocks.block22(0, 0) == doctest::Approx(-std::exp(0.8)).epsilon(1e-12));
        CHECK(blocks.mixed_at(0, 0) == doctest::Approx(0.0).scale(1.0));
        CHECK(blocks.block11(0, 0) == doctest::Approx(pack.ricci(0, 0)).epsilon(1e-12));
        CHECK(blocks.block22(0, 0) == doctest::Approx(pack.ricci(1, 1)).epsilon(1e-12));
    }
    SUBCASE("direct products reduce to factor Riccis") {
        SplitMix64 rng(111);
        FactorSpec f1{"M1", random_metric(rng, {"u", "v"}), ScalarExpr::number(1.0, {"u", "v"})};
        FactorSpec f2{"M2", random_metric(rng, {"p", "q"}), ScalarExpr::number(1.0, {"p", "q"})};
        const ProductSpec spec = build_doubly_warped(f1, f2);
        const std::vector<double> p = random_point(rng, 4);
        const RicciBlocks blocks = product_ricci_blocks(spec, p);
        const CurvaturePack p1 = curvature(spec.factor1.metric, spec.factor_point(1, p));
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                CHECK(blocks.block11(a, b) == doctest::Approx(p1.ricci(a, b)).epsilon(1e-12).scale(1.0));
                CHECK(blocks.mixed_at(a, b) == doctest::Approx(0.0).scale(1.0));
            }
    }
    SUBCASE("mixed block of a 3-dimensional product is rank one with the stated value") {
        // M1 = R^2 flat with f1 = e^{x1}, M2 = R with f2 = e^y, n = 3:
        // mixed (d_x1, d_y) component = (3 - 2) * 1 * 1 = 1
        const std::vector<std::string> c2{"x1", "x2"};
        FactorSpec f1{"M1",
                      MetricField::diagonal(c2, {ScalarExpr::number(1.0, c2),
                                                 ScalarExpr::number(1.0, c2)},
                                            Signature::riemannian),
                      ScalarExpr::parse("exp(x1)", c2)};
        FactorSpec f2 = line_factor("y", "exp(y)");
        const ProductSpec spec = build_doubly_warped(f1, f2);
        const std::vector<double> p{0.3, -0.2, 0.5};
        const RicciBlocks blocks = product_ricci_blocks(spec, p);
        CHECK(blocks.mixed_at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(blocks.mixed_at(1, 0) == doctest::Approx(0.0).scale(1.0));
        const CurvaturePack pack = curvature(spec.assembled, p);
        CHECK(pack.ricci(0, 2) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("random products match componentwise") {
        SplitMix64 rng(222);
        for (int trial = 0; trial < 4; ++trial) {
            const int n1 = 1 + static_cast<int>(rng.next() % 2);
            const int n2 = 1 + static_cast<int>(rng.next() % 2);
            const ProductSpec spec = random_product(rng, n1, n2);
            const std::vector<double> p = random_point(rng, n1 + n2);
            const RicciBlocks blocks = product_ricci_blocks(spec, p);
            const CurvaturePack pack = curvature(spec.assembled, p);
            double scale = 1.0;
            for (double v : pack.ricci.a) scale = std::max(scale, std::abs(v));
            for (int a = 0; a < n1; ++a)
                for (int b = 0; b < n1; ++b)
                    CHECK(std::abs(blocks.block11(a, b) - pack.ricci(a, b)) < 1e-7 * scale);
            for (int a = 0; a < n2; ++a)
                for (int b = 0; b < n2; ++b)
                    CHECK(std::abs(blocks.block22(a, b) - pack.ricci(n1 + a, n1 + b)) <
                          1e-7 * scale);
            for (int a = 0; a < n1; ++a)
                for (int c = 0; c < n2; ++c)
                    CHECK(std::abs(blocks.mixed_at(a, c) - pack.ricci(a, n1 + c)) < 1e-7 * scale);
        }
    }
}

TEST_CASE("restriction identity for the covariant Ricci derivative") {
    SUBCASE("direct product reduces to the factor derivative") {
        SplitMix64 rng(333);
        FactorSpec f1{"M1", random_metric(rng, {"u", "v"}), ScalarExpr::number(1.0, {"u", "v"})};
        FactorSpec f2{"M2", random_metric(rng, {"p", "q"}), ScalarExpr::number(1.0, {"p", "q"})};
        const ProductSpec spec = build_doubly_warped(f1, f2);
        const std::vector<double> p = random_point(rng, 4);
        const std::vector<double> x{0.3, -0.7}, y{1.0, 0.2}, z{-0.4, 0.6};
        const double got = nabla_ricci_restriction(spec, 1, p, x, y, z);
        const CurvaturePack fp = curvature(spec.factor1.metric, spec.factor_point(1, p));
        double expected = 0.0;
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    expected += fp.nabla_ricci(k, i, j) * x[static_cast<std::size_t>(k)] *
                                y[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(j)];
        CHECK(got == doctest::Approx(expected).epsilon(1e-10).scale(1.0));
    }
    SUBCASE("sphere factors with unit warpings give zero") {
        const std::vector<std::string> cs{"theta", "phi"};
        FactorSpec s2{"S2",
                      MetricField::diagonal(cs, {ScalarExpr::number(1.0, cs),
                                                 ScalarExpr::parse("sin(theta)^2", cs)},
                                            Signature::riemannian),
                      ScalarExpr::number(1.0, cs)};
        const std::vector<std::string> ct{"alpha", "beta"};
        FactorSpec s2b{"S2b",
                       MetricField::diagonal(ct, {ScalarExpr::number(1.0, ct),
                                                  ScalarExpr::parse("sin(alpha)^2", ct)},
                                             Signature::riemannian),
                       ScalarExpr::number(1.0, ct)};
        const ProductSpec spec = build_doubly_warped(s2, s2b);
        const std::vector<double> p{1.1, 0.4, 0.9, 2.2};
        const std::vector<double> x{0.5, -0.5}, y{0.1, 0.8}, z{0.7, 0.7};
        CHECK(std::abs(nabla_ricci_restriction(spec, 1, p, x, y, z)) < 1e-12);
        CHECK(std::abs(nabla_ricci_restriction(spec, 2, p, x, y, z)) < 1e-12);
    }
    SUBCASE("random products match the intrinsic derivative") {
        SplitMix64 rng(444);
        for (int trial = 0; trial < 4; ++trial) {
            const ProductSpec spec = random_product(rng, 2, 2);
            const std::vector<double> p = random_point(rng, 4);
            const CurvaturePack pack = curvature(spec.assembled, p);
            for (int factor = 1; factor <= 2; ++factor) {
                const std::vector<double> x = draw_vector(rng, 2);
                const std::vector<double> y = draw_vector(rng, 2);
                const std::vector<double> z = draw_vector(rng, 2);
                const double formula = nabla_ricci_restriction(spec, factor, p, x, y, z);
                const std::vector<double> xl = spec.lift_vector(factor, x);
                const std::vector<double> yl = spec.lift_vector(factor, y);
                const std::vector<double> zl = spec.lift_vector(factor, z);
                double intrinsic = 0.0;
                for (int k = 0; k < 4; ++k)
                    for (int i = 0; i < 4; ++i)
                        for (int j = 0; j < 4; ++j)
                            intrinsic += pack.nabla_ricci(k, i, j) * xl[static_cast<std::size_t>(k)] *
                                         yl[static_cast<std::size_t>(i)] * zl[static_cast<std::size_t>(j)];
                CHECK(std::abs(formula - intrinsic) < 1e-7 * std::max(1.0, std::abs(intrinsic)));
            }
        }
    }
}

TEST_CASE("scalar curvature consistency of the blocks") {
    SplitMix64 rng(555);
    const ProductSpec spec = random_product(rng, 2, 1);
    const std::vector<double> p = random_point(rng, 3);
    const RicciBlocks blocks = product_ricci_blocks(spec, p);
    const CurvaturePack pack = curvature(spec.assembled, p);
    // g^{ij} over the block structure: factor blocks carry 1/f_j^2 g_i^{-1}
    const CurvaturePack p1 = curvature(spec.factor1.metric, spec.factor_point(1, p));
    const CurvaturePack p2 = curvature(spec.factor2.metric, spec.factor_point(2, p));
    const double f1 = spec.factor1.warping.eval(spec.factor_point(1, p));
    const double f2 = spec.factor2.warping.eval(spec.factor_point(2, p));
    double scal = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) scal += p1.g_inv(a, b) / (f2 * f2) * blocks.block11(a, b);
    scal += p2.g_inv(0, 0) / (f1 * f1) * blocks.block22(0, 0);
    CHECK(scal == doctest::Approx(pack.scalar).epsilon(1e-8).scale(std::max(1.0, std::abs(scal))));
}

TEST_CASE("spacetime assembly") {
    const std::vector<std::string> cb{"x", "y", "z"};
    std::vector<ScalarExpr> flat;
    for (int i = 0; i < 3; ++i) flat.push_back(ScalarExpr::number(1.0, cb));
    const MetricField base = MetricField::diagonal(cb, flat, Signature::riemannian);

    SUBCASE("unit functions give Minkowski space") {
        const SpacetimeSpec st{ScalarExpr::parse("1", {"t"}), base, ScalarExpr::number(1.0, cb)};
        const MetricField m = build_spacetime(st);
        const MetricValue v = metric_eval(m, std::array<double, 4>{0.0, 1.0, 2.0, 3.0});
        CHECK(v.g(0, 0) == doctest::Approx(-1.0));
        CHECK(v.g(1, 1) == doctest::Approx(1.0));
        CHECK(m.signature() == Signature::lorentzian);
    }
    SUBCASE("expanding GRW slicing") {
        const SpacetimeSpec st{ScalarExpr::parse("exp(t)", {"t"}), base,
                               ScalarExpr::number(1.0, cb)};
        const MetricValue v = metric_eval(build_spacetime(st), std::array<double, 4>{0.5, 0, 0, 0});
        CHECK(v.g(1, 1) == doctest::Approx(std::exp(1.0)));
    }
    SUBCASE("static spacetime") {
        const SpacetimeSpec st{ScalarExpr::parse("1", {"t"}), base,
                               ScalarExpr::parse("exp(0.3*x)", cb)};
        const MetricValue v = metric_eval(build_spacetime(st), std::array<double, 4>{0.0, 1.0, 0, 0});
        CHECK(v.g(0, 0) == doctest::Approx(-std::exp(0.6)));
    }
}

TEST_CASE("spacetime Ricci blocks against the intrinsic Lorentzian computation") {
    const std::vector<std::string> cb{"x", "y", "z"};
    std::vector<ScalarExpr> flat;
    for (int i = 0; i < 3; ++i) flat.push_back(ScalarExpr::number(1.0, cb));
    const MetricField base = MetricField::diagonal(cb, flat, Signature::riemannian);

    SUBCASE("direct product: everything vanishes") {
        const SpacetimeSpec st{ScalarExpr::parse("1", {"t"}), base, ScalarExpr::number(1.0, cb)};
        const SpacetimeBlocks b = spacetime_ricci_blocks(st, std::array<double, 4>{0.1, 0.2, 0.3, 0.4});
        CHECK(b.tt_formula == doctest::Approx(0.0).scale(1.0));
        CHECK(b.uv_residual < 1e-12);
        CHECK(b.tu_residual < 1e-12);
        CHECK(b.tt_finding == "match");
    }
    SUBCASE("de Sitter slicing shows the documented tt sign flip") {
        const SpacetimeSpec st{ScalarExpr::parse("exp(t)", {"t"}), base,
                               ScalarExpr::number(1.0, cb)};
        const SpacetimeBlocks b = spacetime_ricci_blocks(st, std::array<double, 4>{0.0, 0.2, -0.3, 0.1});
        CHECK(b.tt_formula == doctest::Approx(3.0).epsilon(1e-10));
        CHECK(b.tt_intrinsic == doctest::Approx(-3.0).epsilon(1e-10));
        CHECK(b.tt_finding == "sign_flip");
        CHECK(b.uv_residual < 1e-10);
        CHECK(b.tu_residual < 1e-12);  // GRW: U(ln f) = 0
    }
    SUBCASE("generic doubly warped spacetime: UV and tU blocks still match") {
        const SpacetimeSpec st{ScalarExpr::parse("1+0.2*t^2", {"t"}),
                               MetricField::diagonal(cb,
                                                     {ScalarExpr::parse("1+0.1*y^2", cb),
                                                      ScalarExpr::parse("1+0.15*z^2", cb),
                                                      ScalarExpr::parse("1+0.05*x^2", cb)},
                                                     Signature::riemannian),
                               ScalarExpr::parse("exp(0.3*x)", cb)};
        const SpacetimeBlocks b = spacetime_ricci_blocks(st, std::array<double, 4>{0.3, 0.2, -0.1, 0.4});
        CHECK(b.uv_residual < 1e-10);
        CHECK(b.tu_residual < 1e-10);
        CHECK(b.sigma_diamond_positive == -b.sigma_diamond_lorentzian);
    }
}

TEST_CASE("block formulas hold for pseudo-Riemannian factors and larger products") {
    SUBCASE("Lorentzian first factor") {
        const std::vector<std::string> c1{"t", "x"};
        std::vector<ScalarExpr> up1{ScalarExpr::parse("-(1+0.1*x^2)", c1),
                                    ScalarExpr::parse("0.05*t", c1),
                                    ScalarExpr::parse("1+0.2*t^2", c1)};
        FactorSpec f1{"L", MetricField(c1, up1, Signature::lorentzian),
                      ScalarExpr::parse("exp(0.2*x)", c1)};
        const std::vector<std::string> c2{"p", "q"};
        std::vector<ScalarExpr> up2{ScalarExpr::parse("1+0.2*q^2", c2),
                                    ScalarExpr::parse("0.1*sin(p)", c2),
                                    ScalarExpr::parse("1+0.15*p^2", c2)};
        FactorSpec f2{"M", MetricField(c2, up2, Signature::riemannian),
                      ScalarExpr::parse("cosh(0.3*p)", c2)};
        const ProductSpec spec = build_doubly_warped(f1, f2);
        CHECK(spec.assembled.signature() == Signature::lorentzian);

        SplitMix64 rng(2025);
        for (int s = 0; s < 3; ++s) {
            const std::vector<double> p = random_point(rng, 4, -0.6, 0.6);
            const RicciBlocks blocks = product_ricci_blocks(spec, p);
            const CurvaturePack pack = curvature(spec.assembled, p);
            double scale = 1.0;
            for (double v : pack.ricci.a) scale = std::max(scale, std::abs(v));
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    CHECK(std::abs(blocks.block11(a, b) - pack.ricci(a, b)) < 1e-10 * scale);
                    CHECK(std::abs(blocks.block22(a, b) - pack.ricci(2 + a, 2 + b)) < 1e-10 * scale);
                    CHECK(std::abs(blocks.mixed_at(a, b) - pack.ricci(a, 2 + b)) < 1e-10 * scale);
                }
            const std::vector<double> x = draw_vector(rng, 2);
            const std::vector<double> y = draw_vector(rng, 2);
            const std::vector<double> z = draw_vector(rng, 2);
            const double formula = nabla_ricci_restriction(spec, 1, p, x, y, z);
            const std::vector<double> xl = spec.lift_vector(1, x);
            const std::vector<double> yl = spec.lift_vector(1, y);
            const std::vector<double> zl = spec.lift_vector(1, z);
            double intrinsic = 0.0;
            for (int k = 0; k < 4; ++k)
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        intrinsic += pack.nabla_ricci(k, i, j) * xl[static_cast<std::size_t>(k)] *
                                     yl[static_cast<std::size_t>(i)] * zl[static_cast<std::size_t>(j)];
            CHECK(std::abs(formula - intrinsic) < 1e-9 * std::max(1.0, std::abs(intrinsic)));
        }
    }
    SUBCASE("five-dimensional product") {
        SplitMix64 rng(606060);
        const ProductSpec spec = random_product(rng, 2, 3);
        const std::vector<double> p = random_point(rng, 5, -0.7, 0.7);
        const RicciBlocks blocks = product_ricci_blocks(spec, p);
        const CurvaturePack pack = curvature(spec.assembled, p);
        double scale = 1.0;
        for (double v : pack.ricci.a) scale = std::max(scale, std::abs(v));
        for (int a = 0; a < 2; ++a)
            for (int cc = 0; cc < 3; ++cc)
                CHECK(std::abs(blocks.mixed_at(a, cc) - pack.ricci(a, 2 + cc)) < 1e-9 * scale);
        const std::vector<double> x = draw_vector(rng, 3);
        const std::vector<double> y = draw_vector(rng, 3);
        const std::vector<double> z = draw_vector(rng, 3);
        const double formula = nabla_ricci_restriction(spec, 2, p, x, y, z);
        const std::vector<double> xl = spec.lift_vector(2, x);
        const std::vector<double> yl = spec.lift_vector(2, y);
        const std::vector<double> zl = spec.lift_vector(2, z);
        double intrinsic = 0.0;
        for (int k = 0; k < 5; ++k)
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j)
                    intrinsic += pack.nabla_ricci(k, i, j) * xl[static_cast<std::size_t>(k)] *
                                 yl[static_cast<std::size_t>(i)] * zl[static_cast<std::size_t>(j)];
        CHECK(std::abs(formula - intrinsic) < 1e-9 * std::max(1.0, std::abs(intrinsic)));
    }
}
