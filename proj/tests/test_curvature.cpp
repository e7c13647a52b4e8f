#include "einlike/curvature.hpp"
#include "einlike/errors.hpp"
#include "fd_oracle.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace einlike;
using namespace einlike::testing;

namespace {

MetricField sphere2() {
    const std::vector<std::string> c{"theta", "phi"};
    return MetricField::diagonal(
        c, {ScalarExpr::number(1.0, c), ScalarExpr::parse("sin(theta)^2", c)},
        Signature::riemannian);
}

MetricField hyperbolic2() {
    const std::vector<std::string> c{"x", "y"};
    return MetricField::diagonal(c, {ScalarExpr::number(1.0, c), ScalarExpr::parse("exp(2*x)", c)},
                                 Signature::riemannian);
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

TEST_CASE("unit sphere curvature") {
    const std::vector<double> p{M_PI / 3, 0.4};
    const CurvaturePack pack = curvature(sphere2(), p);
    CHECK(pack.scalar == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(pack.ricci(1, 1) == doctest::Approx(0.75).epsilon(1e-12));  // sin^2(pi/3)
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(pack.ricci(i, j) == doctest::Approx(pack.g(i, j)).epsilon(1e-12).scale(1.0));
    CHECK(max_abs(pack.nabla_ricci.v) < 1e-13);
    CHECK(!pack.weyl_defined);

    // Christoffel entries at theta = pi/4 against the finite-difference oracle
    const std::vector<double> q{M_PI / 4, 0.4};
    const CurvaturePack at4 = curvature(sphere2(), q);
    CHECK(at4.gamma(0, 1, 1) == doctest::Approx(-0.5).epsilon(1e-12));  // Gamma^theta_phiphi
    CHECK(at4.gamma(1, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));   // Gamma^phi_thetaphi
    const OraclePack oracle = oracle_curvature(sphere2(), q);
    CHECK(at4.gamma(0, 1, 1) == doctest::Approx(oracle.gamma(0, 1, 1)).epsilon(1e-8));
    CHECK(at4.gamma(1, 0, 1) == doctest::Approx(oracle.gamma(1, 0, 1)).epsilon(1e-8));
    const Tensor3 gam = christoffel(sphere2(), q);
    CHECK(gam(0, 1, 1) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(gam(1, 1, 0) == doctest::Approx(1.0).epsilon(1e-12));  // symmetric lower pair
}

TEST_CASE("hyperbolic plane is Einstein with R = -2") {
    const std::vector<double> p{0.3, -0.8};
    const CurvaturePack pack = curvature(hyperbolic2(), p);
    CHECK(pack.scalar == doctest::Approx(-2.0).epsilon(1e-12));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(pack.ricci(i, j) == doctest::Approx(-pack.g(i, j)).epsilon(1e-12).scale(1.0));
}

TEST_CASE("flat space has an all-zero pack") {
    const std::vector<std::string> c{"x", "y", "z"};
    const MetricField flat = MetricField::diagonal(
        c, {ScalarExpr::number(1.0, c), ScalarExpr::number(1.0, c), ScalarExpr::number(1.0, c)},
        Signature::riemannian);
    const CurvaturePack pack = curvature(flat, std::array<double, 3>{0.1, 0.2, 0.3});
    CHECK(max_abs(pack.gamma.v) == 0.0);
    CHECK(max_abs(pack.riemann.v) == 0.0);
    CHECK(max_abs(pack.ricci.a) == 0.0);
    CHECK(pack.scalar == 0.0);
    CHECK(max_abs(pack.nabla_ricci.v) == 0.0);
    CHECK(max_abs(pack.cotton.v) == 0.0);
}

TEST_CASE("one-dimensional metrics are flat") {
    const std::vector<std::string> c{"x"};
    const MetricField m =
        MetricField::diagonal(c, {ScalarExpr::parse("exp(2*x)", c)}, Signature::riemannian);
    const CurvaturePack pack = curvature(m, std::array<double, 1>{0.3});
    CHECK(max_abs(pack.riemann.v) == 0.0);
    CHECK(pack.scalar == 0.0);
    CHECK(max_abs(pack.cotton.v) == 0.0);
}

TEST_CASE("scalar field calculus") {
    const std::vector<std::string> cxy{"x", "y"};
    const MetricField flat = MetricField::diagonal(
        cxy, {ScalarExpr::number(1.0, cxy), ScalarExpr::number(1.0, cxy)}, Signature::riemannian);
    const ScalarFieldCalculus r2 = scalar_field_calculus(
        flat, ScalarExpr::parse("x^2+y^2", cxy), std::array<double, 2>{1.5, -0.5});
    CHECK(r2.grad[0] == doctest::Approx(3.0));
    CHECK(r2.grad[1] == doctest::Approx(-1.0));
    CHECK(r2.hess(0, 0) == doctest::Approx(2.0));
    CHECK(r2.hess(1, 1) == doctest::Approx(2.0));
    CHECK(r2.hess(0, 1) == doctest::Approx(0.0).scale(1.0));
    CHECK(r2.laplacian == doctest::Approx(4.0));

    const std::vector<std::string> cx{"x"};
    const MetricField line =
        MetricField::diagonal(cx, {ScalarExpr::number(1.0, cx)}, Signature::riemannian);
    const ScalarFieldCalculus ex =
        scalar_field_calculus(line, ScalarExpr::parse("exp(x)", cx), std::array<double, 1>{0.7});
    CHECK(ex.hess(0, 0) == doctest::Approx(std::exp(0.7)));
    CHECK(ex.laplacian == doctest::Approx(std::exp(0.7)));

    // cos(theta) is a Laplace eigenfunction on the sphere: lap = -2 cos(theta)
    const std::vector<std::string> cs{"theta", "phi"};
    const ScalarFieldCalculus sc = scalar_field_calculus(
        sphere2(), ScalarExpr::parse("cos(theta)", cs), std::array<double, 2>{M_PI / 4, 1.0});
    CHECK(sc.laplacian == doctest::Approx(-2.0 * std::cos(M_PI / 4)).epsilon(1e-10));
}

TEST_CASE("conformal rescale") {
    SplitMix64 rng(404);
    const MetricField m = random_metric(rng, {"a", "b", "u", "v"});
    const std::vector<double> p = random_point(rng, 4);

    SUBCASE("identity factor leaves values unchanged") {
        const ScalarExpr one = ScalarExpr::number(1.0, m.coord_names());
        const CurvaturePack before = curvature(m, p);
        const CurvaturePack after = curvature(conformal_rescale(m, one), p);
        for (std::size_t i = 0; i < before.g.a.size(); ++i)
            CHECK(after.g.a[i] == doctest::Approx(before.g.a[i]).epsilon(1e-14).scale(1.0));
        CHECK(after.scalar == doctest::Approx(before.scalar).epsilon(1e-12).scale(1.0));
    }

    SUBCASE("rescaled flat space is conformally flat") {
        const std::vector<std::string> c4{"a", "b", "u", "v"};
        std::vector<ScalarExpr> ones;
        for (int i = 0; i < 4; ++i) ones.push_back(ScalarExpr::number(1.0, c4));
        const MetricField flat = MetricField::diagonal(c4, ones, Signature::riemannian);
        const ScalarExpr phi = ScalarExpr::parse("exp(a)", c4);
        const CurvaturePack pack = curvature(conformal_rescale(flat, phi), p);
        CHECK(max_abs(pack.weyl.v) < 1e-12);
        CHECK(std::abs(pack.scalar) > 0.1);  // curvature itself does not vanish
    }

    SUBCASE("constant factor scales R by 1/lambda^2 and keeps mixed Riemann") {
        const ScalarExpr two = ScalarExpr::number(2.0, m.coord_names());
        const CurvaturePack before = curvature(m, p);
        const CurvaturePack after = curvature(conformal_rescale(m, two), p);
        CHECK(after.scalar == doctest::Approx(before.scalar / 4.0).epsilon(1e-10).scale(1.0));
        for (std::size_t i = 0; i < before.riemann.v.size(); ++i)
            CHECK(after.riemann.v[i] ==
                  doctest::Approx(before.riemann.v[i]).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("curvature identities on random metrics") {
    SplitMix64 rng(9090);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 3);
        const MetricField m = random_metric(rng, numbered_coords("x", n));
        const std::vector<double> p = random_point(rng, n);
        const CurvaturePack pack = curvature(m, p);

        double riem_scale = std::max(1.0, max_abs(pack.riemann.v));
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        CHECK(std::abs(pack.riemann(l, i, j, k) + pack.riemann(l, j, k, i) +
                                       pack.riemann(l, k, i, j)) < 1e-9 * riem_scale);

        for (int j = 0; j < n; ++j) {
            double lhs = 0.0;
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i) lhs += pack.g_inv(k, i) * pack.nabla_ricci(k, i, j);
            CHECK(lhs == doctest::Approx(0.5 * pack.scalar_grad[static_cast<std::size_t>(j)])
                             .epsilon(1e-7)
                             .scale(std::max(1.0, std::abs(lhs))));
        }
    }
}

TEST_CASE("Weyl contractions vanish and the divergence matches the Cotton tensor") {
    SplitMix64 rng(515);
    for (int n : {4, 5}) {
        const MetricField m = random_metric(rng, numbered_coords("x", n));
        const std::vector<double> p = random_point(rng, n);
        const CurvaturePack pack = curvature(m, p);
        REQUIRE(pack.weyl_defined);
        const double wscale = std::max(1.0, max_abs(pack.weyl.v));
        for (int s1 = 0; s1 < 4; ++s1)
            for (int s2 = s1 + 1; s2 < 4; ++s2)
                for (int f1 = 0; f1 < n; ++f1)
                    for (int f2 = 0; f2 < n; ++f2) {
                        double tr = 0.0;
                        for (int u = 0; u < n; ++u)
                            for (int w = 0; w < n; ++w) {
                                int idx[4];
                                int fi = 0;
                                const int freev[2] = {f1, f2};
                                for (int slot = 0; slot < 4; ++slot)
                                    idx[slot] = slot == s1 ? u : slot == s2 ? w : freev[fi++];
                                tr += pack.g_inv(u, w) * pack.weyl(idx[0], idx[1], idx[2], idx[3]);
                            }
                        CHECK(std::abs(tr) < 1e-9 * wscale);
                    }
        const double c = (n - 3.0) / (n - 2.0);
        const double cscale = std::max(1.0, max_abs(pack.cotton.v));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    CHECK(std::abs(pack.weyl_div(i, j, k) - c * pack.cotton(i, j, k)) <
                          1e-7 * cscale);
    }
}

TEST_CASE("conformal divergence identity at random points") {
    SplitMix64 rng(616);
    const MetricField m = random_metric(rng, {"a", "b", "u", "v"});
    const ScalarExpr phi = ScalarExpr::parse("exp(a)", m.coord_names());
    for (int trial = 0; trial < 3; ++trial) {
        const std::vector<double> p = random_point(rng, 4);
        const ConformalCheck c = conformal_c02_check(m, phi, p);
        CHECK(c.residual < 1e-6 * std::max(1.0, std::max(c.lhs_norm, c.rhs_norm)));
        // the opposite-direction reading must NOT hold on a generic metric
        CHECK(c.residual_flipped_sign > 100 * c.residual);
    }
}

TEST_CASE("jet pipeline matches the finite-difference oracle") {
    SplitMix64 rng(2718);
    for (int n : {2, 3, 4}) {
        const MetricField m = random_metric(rng, numbered_coords("x", n));
        const std::vector<double> p = random_point(rng, n, -0.8, 0.8);
        const CurvaturePack pack = curvature(m, p);
        const OraclePack oracle = oracle_curvature(m, p);
        const OracleComparison cmp = compare_with_oracle(pack, oracle);
        INFO("worst component: ", cmp.worst_component);
        CHECK(cmp.worst < 1e-5);
    }
}
