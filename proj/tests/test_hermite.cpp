#include <cmath>

#include "doctest.h"
#include "edgeworth/gauss_hermite.hpp"
#include "edgeworth/hermite.hpp"
#include "edgeworth/oracle.hpp"

using namespace edgeworth;

TEST_CASE("gaussian_pdf reference values") {
    CHECK(gaussian_pdf(0.0, VarianceParam(1.0)) ==
          doctest::Approx(0.3989422804014327).epsilon(1e-15));
    CHECK(gaussian_pdf(0.0, VarianceParam(0.5)) ==
          doctest::Approx(0.5641895835477563).epsilon(1e-15));
    CHECK(gaussian_pdf(3.0, VarianceParam(1.0)) ==
          gaussian_pdf(-3.0, VarianceParam(1.0)));
    CHECK(gaussian_pdf(2.5, VarianceParam(0.3)) > 0.0);
}

TEST_CASE("gaussian_pdf input validation") {
    CHECK_THROWS_AS(VarianceParam(0.0), std::invalid_argument);
    CHECK_THROWS_AS(VarianceParam(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(VarianceParam(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_pdf(std::nan(""), VarianceParam(1.0)),
                    std::invalid_argument);
}

TEST_CASE("hermite_h reference values") {
    CHECK(hermite_h(1, 1.0, VarianceParam(1.0)) == doctest::Approx(1.0));
    CHECK(hermite_h(3, 1.0, VarianceParam(1.0)) == doctest::Approx(-2.0));
    CHECK(hermite_h(5, 0.0, VarianceParam(0.5)) == 0.0);
    CHECK(hermite_h(3, 2.0, VarianceParam(0.5)) == doctest::Approx(40.0));
    CHECK_THROWS_AS(hermite_h(9, 0.0, VarianceParam(1.0)), std::invalid_argument);
}

TEST_CASE("hermite recurrence matches k-fold derivatives of phi") {
    for (int k : {1, 2, 3, 4, 5}) CHECK(symbolic_diff_check(k) < 1e-5);
}

TEST_CASE("orthogonality moments of H_k under phi") {
    // int z^j H_k phi dz = 0 for j < k and k! for j = k.
    for (double v : {0.1, 0.5, 1.0, 4.0}) {
        const VarianceParam vp(v);
        for (int k = 0; k <= 5; ++k) {
            double factorial = 1.0;
            for (int j = 0; j <= k; ++j) {
                const double got = gaussian_expectation(
                    [&](double z) {
                        return std::pow(z, j) * hermite_h(k, z, vp);
                    },
                    v, 64);
                const double want = (j == k) ? factorial : 0.0;
                CHECK(std::abs(got - want) < 1e-9);
                factorial *= (j + 1.0);
            }
        }
    }
}

TEST_CASE("qn_density") {
    const VarianceParam v05(0.5);
    SUBCASE("zero corrections reduce to the Gaussian") {
        for (double z : {-2.0, 0.0, 0.7}) {
            CHECK(qn_density(z, v05, 0.0, 0.0, 0.0, 7) ==
                  gaussian_pdf(z, v05));
        }
    }
    SUBCASE("odd corrections vanish at z = 0") {
        CHECK(qn_density(0.0, v05, 0.0, 1.0 / 6.0, 0.0, 1) ==
              doctest::Approx(0.5641895835477563));
    }
    SUBCASE("explicit H3 value at z=1, n=4") {
        // 1 + (1/2)(1/6) H3(1, 0.5) = 1 - 1/3
        const double want = gaussian_pdf(1.0, v05) * (2.0 / 3.0);
        CHECK(qn_density(1.0, v05, 0.0, 1.0 / 6.0, 0.0, 4) ==
              doctest::Approx(want).epsilon(1e-14));
    }
    SUBCASE("mass preservation") {
        for (double a1 : {0.0, 0.4}) {
            for (double a5 : {0.0, -0.2}) {
                const double mass = gaussian_expectation(
                    [&](double z) {
                        return qn_density(z, v05, a1, 0.25, a5, 9) /
                               gaussian_pdf(z, v05);
                    },
                    0.5, 64);
                CHECK(std::abs(mass - 1.0) < 1e-8);
            }
        }
    }
    SUBCASE("may be negative in the tails, never clamped") {
        CHECK(qn_density(6.0, VarianceParam(1.0), 0.0, -40.0, 0.0, 1) < 0.0);
    }
}

TEST_CASE("gauss-hermite rule sanity") {
    const auto& rule = gauss_hermite_rule(64);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
    // E[Z^2] = v
    CHECK(gaussian_expectation([](double z) { return z * z; }, 1.7) ==
          doctest::Approx(1.7).epsilon(1e-12));
}
