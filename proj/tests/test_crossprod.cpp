#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "json.hpp"
#include "reference.hpp"
#include "steklov/crossprod.hpp"
#include "steklov/errors.hpp"

using namespace steklov;
using namespace steklov::crossprod;

namespace {

// Literal cross-product from Boost values.
double boost_cross(CrossKind kind, double nu, double z) {
    const int first = kind.family == CrossFamily::YJ ? 0 : 1;
    return reference::Yk(nu, z, first) * reference::Jk(nu, z, kind.k) -
           reference::Jk(nu, z, first) * reference::Yk(nu, z, kind.k);
}

double boost_scale(CrossKind kind, double nu, double z) {
    const int first = kind.family == CrossFamily::YJ ? 0 : 1;
    return std::abs(reference::Yk(nu, z, first) * reference::Jk(nu, z, kind.k)) +
           std::abs(reference::Jk(nu, z, first) * reference::Yk(nu, z, kind.k));
}

const CrossFamily kFamilies[] = {CrossFamily::YJ, CrossFamily::YprimeJ};

}  // namespace

TEST_CASE("polynomials in nu") {
    const NuPolynomial p({Rational(1), Rational(0), Rational(2)});  // 1 + 2 nu^2
    CHECK(p.degree() == 2);
    CHECK(p(3.0) == 19.0);
    CHECK(p(Rational(1, 2)) == Rational(3, 2));
    const NuPolynomial q = p.shifted(Rational(1));  // 1 + 2 (nu+1)^2 = 3 + 4 nu + 2 nu^2
    CHECK(q == NuPolynomial({Rational(3), Rational(4), Rational(2)}));
    CHECK((p - p).is_zero());
    CHECK((p * p)(2.0) == 81.0);
    CHECK(NuPolynomial({Rational(0), Rational(0)}).is_zero());
    CHECK(NuPolynomial::monomial(Rational(-3), 2)(2.0) == -12.0);
}

TEST_CASE("the first-order forms are the Wronskian and zero") {
    const SymbolicLaurent r1 = closed_form_symbolic({CrossFamily::YJ, 1});
    REQUIRE(r1.coeffs.size() == 1);
    CHECK(r1.coeffs.at(0) == NuPolynomial::constant(Rational(-1)));
    CHECK(closed_form_symbolic({CrossFamily::YprimeJ, 1}).coeffs.empty());
    for (double z : {0.5, 2.0, 10.0})
        CHECK(evaluate(closed_form({CrossFamily::YJ, 1}, 1.3), z) ==
              doctest::Approx(-2.0 / (std::numbers::pi * z)));
}

TEST_CASE("closed forms against Boost cross-products") {
    for (CrossFamily fam : kFamilies) {
        for (int k = 1; k <= 4; ++k) {
            for (int i = 0; i <= 10; ++i) {
                const double nu = 0.5 * i;
                for (double z : {0.5, 1.0, 2.0, 5.0, 10.0}) {
                    const CrossKind kind{fam, k};
                    CAPTURE(family_name(fam));
                    CAPTURE(k);
                    CAPTURE(nu);
                    CAPTURE(z);
                    const double got = evaluate(closed_form(kind, nu), z);
                    CHECK(std::abs(got - boost_cross(kind, nu, z)) / boost_scale(kind, nu, z) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("recursion reproduces the closed forms symbolically") {
    for (CrossFamily fam : kFamilies)
        for (int k = 1; k <= 4; ++k)
            CHECK(recursive_form_symbolic({fam, k}) == closed_form_symbolic({fam, k}));
}

TEST_CASE("recursive forms for k = 5..8 against direct evaluation") {
    for (CrossFamily fam : kFamilies) {
        for (int k = 5; k <= 8; ++k) {
            for (double nu : {0.0, 1.0, 2.5, 4.0}) {
                for (double z : {1.0, 2.0, 5.0, 10.0}) {
                    const CrossKind kind{fam, k};
                    const double got = evaluate(recursive_form(kind, nu), z);
                    const double want = direct_cross_product(kind, nu, z);
                    CAPTURE(k);
                    CAPTURE(nu);
                    CAPTURE(z);
                    CHECK(std::abs(got - want) / product_scale(kind, nu, z) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("differentiating a YJ form gives the next YprimeJ relation") {
    // d/dz (Y J^(k) - J Y^(k)) = (Y' J^(k) - J' Y^(k)) + (Y J^(k+1) - J Y^(k+1)).
    const double nu = 1.5;
    const double z = 3.0;
    for (int k = 1; k <= 6; ++k) {
        const auto yj = recursive_form({CrossFamily::YJ, k}, nu);
        const double d = evaluate(yj, z);
        const double h = 1e-5;
        const double fd = (evaluate(yj, z + h) - evaluate(yj, z - h)) / (2.0 * h);
        const double rhs = evaluate(recursive_form({CrossFamily::YprimeJ, k}, nu), z) +
                           evaluate(recursive_form({CrossFamily::YJ, k + 1}, nu), z);
        CHECK(fd == doctest::Approx(rhs).epsilon(1e-7));
        CHECK(std::isfinite(d));
    }
}

TEST_CASE("order limits") {
    CHECK_THROWS_AS(closed_form({CrossFamily::YJ, 5}, 1.0), UnsupportedOrderError);
    CHECK_THROWS_AS(closed_form({CrossFamily::YJ, 0}, 1.0), UnsupportedOrderError);
    CHECK_THROWS_AS(recursive_form({CrossFamily::YprimeJ, 9}, 1.0), UnsupportedOrderError);
    CHECK_NOTHROW(recursive_form({CrossFamily::YprimeJ, 8}, 1.0));
}

TEST_CASE("Laurent derivative") {
    LaurentForm f;
    f.constant_term = 2.0;
    f.inverse_power_coeffs = {{1, 3.0}, {2, -1.0}};
    const LaurentForm d = f.derivative();
    CHECK(d.constant_term == 0.0);
    const double z = 1.7;
    CHECK(d.bracket(z) == doctest::Approx(-3.0 / (z * z) + 2.0 / (z * z * z)));
}

TEST_CASE("json export") {
    const auto form = closed_form({CrossFamily::YprimeJ, 2}, 2.0);
    const auto j = nlohmann::json::parse(to_json({CrossFamily::YprimeJ, 2}, 2.0, form));
    CHECK(j["k"] == 2);
    CHECK(j["family"] == family_name(CrossFamily::YprimeJ));
    CHECK(j["nu"] == 2.0);
    CHECK(j["c0"] == -1.0);
    REQUIRE(j["terms"].size() == 1);
    CHECK(j["terms"][0]["m"] == 2);
    CHECK(j["terms"][0]["c"] == 4.0);
}
