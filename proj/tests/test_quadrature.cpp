#include <cmath>
#include <random>

#include "doctest.h"
#include "su11/quadrature.hpp"

using namespace su11;

TEST_CASE("adaptive Simpson on smooth integrands") {
    CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-11));
    CHECK(adaptive_simpson([](double x) { return std::exp(-x * x); }, 0.0, 5.0, 1e-12) ==
          doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-11));
    CHECK(adaptive_simpson([](double) { return 1.0; }, 2.0, 2.0, 1e-12) == 0.0);
}

TEST_CASE("adaptive Simpson handles mildly peaked integrands") {
    // int_0^1 1/sqrt(x+1e-4) dx
    const double exact = 2.0 * (std::sqrt(1.0 + 1e-4) - std::sqrt(1e-4));
    CHECK(adaptive_simpson([](double x) { return 1.0 / std::sqrt(x + 1e-4); }, 0.0, 1.0, 1e-10) ==
          doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("cumulative cache agrees with direct quadrature at random points") {
    auto f = [](double t) { return std::cos(t) * std::exp(-0.1 * t); };
    const CumulativeIntegral cum(f, 20.0, 1e-10);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(0.0, 20.0);
    for (int i = 0; i < 40; ++i) {
        const double t = d(rng);
        const double direct = adaptive_simpson(f, 0.0, t, 1e-12);
        CHECK(cum(t) == doctest::Approx(direct).epsilon(1e-9));
    }
    CHECK(cum(0.0) == 0.0);
}

TEST_CASE("cumulative cache refuses extrapolation") {
    const CumulativeIntegral cum([](double) { return 1.0; }, 1.0, 1e-10);
    CHECK_THROWS_AS(cum(1.5), DomainError);
    CHECK_THROWS_AS(cum(-0.1), DomainError);
    CHECK(cum(1.0) == doctest::Approx(1.0));
}

TEST_CASE("invalid construction") {
    CHECK_THROWS_AS(CumulativeIntegral([](double) { return 1.0; }, 0.0, 1e-10), InputError);
}
