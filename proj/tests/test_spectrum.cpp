#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/special_functions/binomial.hpp>

#include "steklov/errors.hpp"
#include "steklov/model.hpp"
#include "steklov/spectrum.hpp"

using namespace steklov;
using model::Mass;
using model::ProblemConfig;

TEST_CASE("disc and ball spectra") {
    for (int l = 0; l <= 10; ++l) {
        const auto e2 = spectrum::steklov_eigenvalue(ProblemConfig(2, Mass::times_pi(1.0), l));
        CHECK(e2.value == 2.0 * l);
        CHECK(e2.multiplicity == (l == 0 ? 1 : 2));
        const auto e3 = spectrum::steklov_eigenvalue(ProblemConfig(3, Mass::times_pi(4.0), l));
        CHECK(e3.value == static_cast<double>(l));
        CHECK(e3.multiplicity == 2 * l + 1);
    }
    CHECK_THROWS_AS(spectrum::steklov_eigenvalue(ProblemConfig(1, Mass::absolute(2.0), 1)), DomainError);
}

TEST_CASE("multiplicity equals the harmonic-space dimension") {
    // dim H_l(S^{N-1}) = C(l+N-1, N-1) - C(l+N-3, N-1)
    for (int n = 2; n <= 9; ++n) {
        for (int l = 0; l <= 12; ++l) {
            const double top = boost::math::binomial_coefficient<double>(l + n - 1, n - 1);
            const double low = l >= 2 ? boost::math::binomial_coefficient<double>(l + n - 3, n - 1) : 0.0;
            CAPTURE(n);
            CAPTURE(l);
            CHECK(spectrum::multiplicity(n, l) == static_cast<long long>(top - low));
        }
    }
    // Exact for large arguments.
    CHECK(spectrum::multiplicity(30, 40).str() == "15833862062669479752");
}

TEST_CASE("slope formula values") {
    CHECK(spectrum::slope_formula(2, 1, 2.0) == doctest::Approx(7.0 / 3.0));
    CHECK(spectrum::slope_formula(2, 2, 4.0) == doctest::Approx(8.0));
    CHECK(spectrum::slope_formula(3, 1, 1.0) == doctest::Approx(0.8));
    CHECK(spectrum::slope_formula(3, 2, 2.0) == doctest::Approx(64.0 / 21.0));
    CHECK(spectrum::slope_at_zero(ProblemConfig(2, Mass::times_pi(1.0), 0)) == 0.0);
    CHECK(spectrum::interval_eigenvalue(2.0) == 1.0);
    CHECK(spectrum::interval_slope(2.0) == doctest::Approx(4.0 / 3.0));
    CHECK(spectrum::slope_formula(1, 1, 1.0) == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("slope from the expansion coefficients matches the formula") {
    for (int n = 2; n <= 5; ++n) {
        for (int l = 1; l <= 5; ++l) {
            const ProblemConfig cfg(n, Mass::times_pi(1.7), l);
            CAPTURE(n);
            CAPTURE(l);
            CHECK(spectrum::slope_from_expansion(cfg) ==
                  doctest::Approx(spectrum::slope_at_zero(cfg)).epsilon(1e-12));
        }
    }
}

TEST_CASE("interval slope equals the general formula at N = 1, l = 1") {
    for (double m : {0.5, 1.0, 2.0, 3.7, 10.0}) {
        const double lambda1 = spectrum::interval_eigenvalue(m);
        CHECK(lambda1 == doctest::Approx(2.0 / m));
        CHECK(spectrum::interval_slope(m) == doctest::Approx(spectrum::slope_formula(1, 1, lambda1)).epsilon(1e-15));
    }
}
