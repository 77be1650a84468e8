#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "reference.hpp"
#include "steklov/bessel.hpp"
#include "steklov/errors.hpp"

using namespace steklov;
using bessel::BesselKind;

namespace {

const double kOrders[] = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 7.25, 12.0};
const double kArgs[] = {1e-3, 0.05, 0.5, 1.0, 1.9, 2.0, 2.1, 5.0, 10.0, 33.3, 100.0, 1000.0};

}  // namespace

TEST_CASE("values and first derivatives against Boost") {
    for (double nu : kOrders) {
        for (double z : kArgs) {
            CAPTURE(nu);
            CAPTURE(z);
            const auto p = bessel::bessel_jy(nu, z);
            const double m = reference::modulus(nu, z);
            const double mp = std::hypot(reference::Jk(nu, z, 1), reference::Yk(nu, z, 1));
            CHECK(reference::rel(p.j, reference::J(nu, z), m) < 1e-12);
            CHECK(reference::rel(p.y, reference::Y(nu, z), m) < 1e-12);
            CHECK(reference::rel(p.jp, reference::Jk(nu, z, 1), mp) < 1e-12);
            CHECK(reference::rel(p.yp, reference::Yk(nu, z, 1), mp) < 1e-12);
        }
    }
}

TEST_CASE("small-argument J keeps relative accuracy") {
    // Away from zeros J is positive and tiny here; compare relatively.
    for (double nu : {1.0, 3.0, 7.25}) {
        const double z = 1e-3;
        CHECK(bessel::bessel_jy(nu, z).j == doctest::Approx(reference::J(nu, z)).epsilon(1e-13));
    }
}

TEST_CASE("Wronskian") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> nu_dist(0.0, 20.0);
    std::uniform_real_distribution<double> logz(-3.0, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const double nu = nu_dist(rng);
        const double z = std::pow(10.0, logz(rng));
        const auto p = bessel::bessel_jy(nu, z);
        const double w = p.j * p.yp - p.y * p.jp;
        const double want = 2.0 / (std::numbers::pi * z);
        CAPTURE(nu);
        CAPTURE(z);
        CHECK(std::abs(w - want) / want < 1e-11);
    }
}

TEST_CASE("higher derivatives against the binomial formula") {
    for (double nu : {0.0, 0.5, 2.0, 3.5, 6.0}) {
        for (double z : {0.5, 1.0, 2.0, 5.0, 10.0}) {
            const auto jd = bessel::bessel_derivs(BesselKind::FirstKind, nu, z, 8);
            const auto yd = bessel::bessel_derivs(BesselKind::SecondKind, nu, z, 8);
            REQUIRE(jd.size() == 9);
            for (int k = 0; k <= 8; ++k) {
                CAPTURE(nu);
                CAPTURE(z);
                CAPTURE(k);
                const double jr = reference::Jk(nu, z, k);
                const double yr = reference::Yk(nu, z, k);
                const double scale = std::hypot(jr, yr);
                CHECK(reference::rel(jd[k], jr, scale) < 1e-10);
                CHECK(reference::rel(yd[k], yr, scale) < 1e-10);
                CHECK(bessel::bessel_deriv(BesselKind::FirstKind, nu, z, k) == jd[k]);
            }
        }
    }
}

TEST_CASE("derivative order cap") {
    CHECK_THROWS_AS(bessel::bessel_deriv(BesselKind::FirstKind, 1.0, 1.0, 9), UnsupportedOrderError);
    CHECK_THROWS_AS(bessel::bessel_derivs(BesselKind::SecondKind, 1.0, 1.0, -1), DomainError);
}

TEST_CASE("ODE residual of evaluated solutions") {
    for (double nu : kOrders) {
        for (double z : {0.3, 1.0, 4.0, 25.0}) {
            CHECK(bessel::evaluate(BesselKind::FirstKind, nu, z, 2).ode_residual() < 1e-13);
            CHECK(bessel::evaluate(BesselKind::SecondKind, nu, z, 2).ode_residual() < 1e-13);
        }
    }
}

TEST_CASE("derivative coefficients reproduce finite differences") {
    // y^(k+1) is the derivative of y^(k); check with a central difference.
    const double nu = 2.5;
    const double z = 3.0;
    const double h = 1e-4;
    for (int k = 1; k <= 6; ++k) {
        const double fd = (bessel::bessel_deriv(BesselKind::FirstKind, nu, z + h, k) -
                           bessel::bessel_deriv(BesselKind::FirstKind, nu, z - h, k)) /
                          (2.0 * h);
        CHECK(bessel::bessel_deriv(BesselKind::FirstKind, nu, z, k + 1) == doctest::Approx(fd).epsilon(1e-6));
    }
    const auto c2 = bessel::ode_derivative_coefficients(nu, 2);
    // y'' = -(1 - nu^2/z^2) y - y'/z
    CHECK(c2.eval_a(z) == doctest::Approx(-(1.0 - nu * nu / (z * z))));
    CHECK(c2.eval_b(z) == doctest::Approx(-1.0 / z));
}

TEST_CASE("ratio expansion remainder is fifth order") {
    const double nu = 2.0;
    const double r1 = bessel::ratio_expansion_r3(nu, 0.1);
    const double r2 = bessel::ratio_expansion_r3(nu, 0.05);
    CHECK(std::log2(r1 / r2) == doctest::Approx(5.0).epsilon(0.01));
    // Direct evaluation against Boost where cancellation is mild.
    const double z = 2.5;
    const double want = reference::J(nu, z) / reference::Jk(nu, z, 1) - z / nu -
                        z * z * z / (2.0 * nu * nu * (1.0 + nu));
    CHECK(bessel::ratio_expansion_r3(nu, z) == doctest::Approx(want).epsilon(1e-10));
    // The series branch and the direct branch meet near z = 2.
    const double below = bessel::ratio_expansion_r3(nu, 2.0 - 1e-9);
    const double above = bessel::ratio_expansion_r3(nu, 2.0 + 1e-9);
    CHECK(below == doctest::Approx(above).epsilon(1e-8));
    CHECK_THROWS_AS(bessel::ratio_expansion_r3(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(bessel::ratio_expansion_r3(1.0, std::sqrt(3.0)), DomainError);
}

TEST_CASE("Temme gamma combinations") {
    for (double mu : {-0.5, -0.2, 1e-9, 0.3, 0.5}) {
        double g1 = 0.0, g2 = 0.0, gp = 0.0, gm = 0.0;
        bessel::detail::temme_gammas(mu, g1, g2, gp, gm);
        CHECK(gp == doctest::Approx(1.0 / std::tgamma(1.0 + mu)).epsilon(1e-14));
        CHECK(gm == doctest::Approx(1.0 / std::tgamma(1.0 - mu)).epsilon(1e-14));
        CHECK(g2 == doctest::Approx(0.5 * (gm + gp)).epsilon(1e-14));
        if (std::abs(mu) > 0.1) CHECK(g1 == doctest::Approx((gm - gp) / (2.0 * mu)).epsilon(1e-12));
    }
}

TEST_CASE("ascending series oracle") {
    // J_nu(z) = sum_m (-1)^m (z/2)^(2m+nu) / (m! Gamma(m+nu+1)), summed until
    // the terms stop contributing; fine for z <= 5.
    auto series = [](double nu, double z) {
        double term = std::pow(0.5 * z, nu) / std::tgamma(nu + 1.0);
        double sum = term;
        for (int m = 1; m < 200 && std::abs(term) > 1e-18 * std::abs(sum); ++m) {
            term *= -(0.25 * z * z) / (m * (m + nu));
            sum += term;
        }
        return sum;
    };
    CHECK(bessel::bessel_jy(0.0, 1.0).j == doctest::Approx(0.7651976866).epsilon(1e-10));
    CHECK(bessel::bessel_jy(0.0, 1.0).y == doctest::Approx(0.0882569642).epsilon(1e-9));
    CHECK(bessel::bessel_jy(0.0, 1.0).jp == doctest::Approx(-0.4400505857).epsilon(1e-10));
    for (double nu : {0.0, 0.5, 1.0, 2.5, 4.0}) {
        for (double z : {0.1, 1.0, 3.0, 5.0}) {
            CAPTURE(nu);
            CAPTURE(z);
            CHECK(std::abs(bessel::bessel_jy(nu, z).j - series(nu, z)) < 1e-14);
            // J_0' = -J_1
            if (nu == 0.0) CHECK(std::abs(bessel::bessel_jy(0.0, z).jp + series(1.0, z)) < 1e-14);
        }
    }
}
