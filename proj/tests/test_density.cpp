#include <cmath>
#include <random>

#include "doctest.h"
#include "su11/density.hpp"

using namespace su11;

namespace {

// random valid Cayley-Klein pair: a = cosh(l) e^{i alpha}, b = sinh(l) e^{i beta}
CayleyKlein random_ck(std::mt19937& rng) {
    std::uniform_real_distribution<double> lam(0.0, 2.0);
    std::uniform_real_distribution<double> ph(-M_PI, M_PI);
    const double l = lam(rng);
    return {std::cosh(l) * std::exp(Complex(0, ph(rng))),
            std::sinh(l) * std::exp(Complex(0, ph(rng))), 0.0};
}

} // namespace

TEST_CASE("identity propagator leaves any state unchanged") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        Eigen::Vector2cd psi(Complex(d(rng), d(rng)), Complex(d(rng), d(rng)));
        const DensityMatrix2 rho0 = DensityMatrix2::from_state(psi);
        const DensityMatrix2 rho1 = evolve_density(CayleyKlein::identity(), rho0);
        CHECK((rho1.rho - rho0.rho).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("ground-state evolution gives diagonal (|b|^2, |a|^2)/(|a|^2+|b|^2)") {
    std::mt19937 rng(12);
    for (int i = 0; i < 50; ++i) {
        const CayleyKlein ck = random_ck(rng);
        const double a2 = std::norm(ck.a), b2 = std::norm(ck.b);
        const DensityMatrix2 rho = evolve_density(ck, DensityMatrix2::ground());
        CHECK(rho.rho(0, 0).real() == doctest::Approx(b2 / (a2 + b2)).epsilon(1e-12));
        CHECK(rho.rho(1, 1).real() == doctest::Approx(a2 / (a2 + b2)).epsilon(1e-12));
        CHECK(rho.valid());
    }
}

TEST_CASE("|b|^2 = 1/2 puts a quarter of the population in |+>") {
    const CayleyKlein ck{std::sqrt(1.5), Complex(0, -std::sqrt(0.5)), 0.0};
    const DensityMatrix2 rho = evolve_density(ck, DensityMatrix2::ground());
    CHECK(rho.rho(0, 0).real() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(transition_probability(ck) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("transition probability: limits and monotonicity") {
    CHECK(transition_probability(CayleyKlein::identity()) == 0.0);
    // saturates at 1/2 from below
    double prev = -1.0;
    for (double l = 0.0; l < 12.0; l += 0.25) {
        const CayleyKlein ck{std::cosh(l), std::sinh(l), 0.0};
        const double p = transition_probability(ck);
        CHECK(p < 0.5);
        CHECK(p >= prev);
        prev = p;
    }
    const CayleyKlein big{std::cosh(20.0), std::sinh(20.0), 0.0};
    CHECK(transition_probability(big) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("expectations: initial point and closed-form sigma_z") {
    const auto e0 = expectations(CayleyKlein::identity(), M_PI / 2, 0.0, 0.0);
    CHECK(e0.sigma_z == doctest::Approx(-1.0));
    CHECK(e0.sigma_x == doctest::Approx(0.0));

    const CayleyKlein half{std::sqrt(1.5), Complex(0, std::sqrt(0.5)), 0.0};
    CHECK(expectations(half, M_PI / 2, 0.0, 0.0).sigma_z == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("sigma_z closed formula agrees with Tr{rho sigma_z} on random inputs") {
    std::mt19937 rng(13);
    const Matrix2c sz = pauli_z();
    for (int i = 0; i < 50; ++i) {
        const CayleyKlein ck = random_ck(rng);
        const DensityMatrix2 rho = evolve_density(ck, DensityMatrix2::ground());
        const double trace_route = (rho.rho * sz).trace().real();
        const double formula = expectations(ck, 0.0, 0.0, 0.0).sigma_z;
        CHECK(formula == doctest::Approx(trace_route).epsilon(1e-12));
    }
}

TEST_CASE("evolved states keep Hermiticity, unit trace and positivity") {
    std::mt19937 rng(14);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        Eigen::Vector2cd psi(Complex(d(rng), d(rng)), Complex(d(rng), d(rng)));
        if (psi.norm() < 1e-3) continue;
        const DensityMatrix2 rho = evolve_density(random_ck(rng), DensityMatrix2::from_state(psi));
        CHECK(rho.valid());
    }
}
