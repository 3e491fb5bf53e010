#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "dropsim/elliptic.hpp"

using dropsim::complete_elliptic;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("m = 0 gives K = E = pi/2") {
    const auto ke = complete_elliptic(0.0);
    CHECK(ke.K == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(ke.E == doctest::Approx(kPi / 2).epsilon(1e-15));
}

TEST_CASE("reference values at m = 0.5") {
    const auto ke = complete_elliptic(0.5);
    CHECK(ke.K == doctest::Approx(1.8540746773013719).epsilon(1e-12));
    CHECK(ke.E == doctest::Approx(1.3506438810476755).epsilon(1e-12));
}

TEST_CASE("near the logarithmic divergence") {
    const double m = 1.0 - 1e-12;
    const auto ke = complete_elliptic(m);
    CHECK(std::isfinite(ke.K));
    CHECK(ke.K > 14.0);
    // K ~ 0.5 log(16/(1-m)) with an O(1-m) correction.
    CHECK(ke.K == doctest::Approx(0.5 * std::log(16.0 / (1.0 - m))).epsilon(1e-9));
    CHECK(std::isfinite(ke.E));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(complete_elliptic(-1e-12), std::domain_error);
    CHECK_THROWS_AS(complete_elliptic(1.0), std::domain_error);
    CHECK_THROWS_AS(complete_elliptic(1.5), std::domain_error);
}

TEST_CASE("Legendre relation") {
    for (double m = 0.1; m < 0.95; m += 0.1) {
        const auto a = complete_elliptic(m);
        const auto b = complete_elliptic(1.0 - m);
        const double legendre = a.E * b.K + b.E * a.K - a.K * b.K;
        CHECK(legendre == doctest::Approx(kPi / 2).epsilon(1e-10));
    }
}

TEST_CASE("monotonic in m") {
    double prev_k = complete_elliptic(0.0).K;
    double prev_e = complete_elliptic(0.0).E;
    for (double m = 0.05; m < 1.0 - 1e-6; m += 0.05) {
        const auto ke = complete_elliptic(m);
        CHECK(ke.K > prev_k);
        CHECK(ke.E < prev_e);
        prev_k = ke.K;
        prev_e = ke.E;
    }
}

TEST_CASE("agreement with the standard library implementation") {
    for (double m = 0.0; m < 0.999; m += 0.013) {
        const auto ke = complete_elliptic(m);
        const double k = std::sqrt(m);
        CHECK(ke.K == doctest::Approx(std::comp_ellint_1(k)).epsilon(1e-12));
        CHECK(ke.E == doctest::Approx(std::comp_ellint_2(k)).epsilon(1e-12));
    }
}
