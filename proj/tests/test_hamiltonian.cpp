#include <cmath>
#include <random>

#include "doctest.h"
#include "su11/cayley_klein.hpp"
#include "su11/hamiltonian.hpp"

using namespace su11;

namespace {

Su11Hamiltonian constant_model(double big, double w, double phi) {
    return {[big](double) { return big; }, [w](double) { return w; },
            [phi](double) { return phi; }, [](double) { return 0.0; }};
}

} // namespace

TEST_CASE("assemble: vanishing off-diagonal gives diag(Omega, -Omega)") {
    const Matrix2c m = assemble_hamiltonian(constant_model(1.0, 0.0, 0.0), 0.3);
    CHECK(m(0, 0) == Complex(1, 0));
    CHECK(m(1, 1) == Complex(-1, 0));
    CHECK(m(0, 1) == Complex(0, 0));
    CHECK(m(1, 0) == Complex(0, 0));
}

TEST_CASE("assemble: PT form at phi_omega = pi/2") {
    const double g = 0.7, w = 0.4;
    const Matrix2c m = assemble_hamiltonian(constant_model(g, w, M_PI / 2), 0.0);
    CHECK(std::abs(m(0, 1) - Complex(0, -w)) < 1e-15);
    CHECK(std::abs(m(1, 0) - Complex(0, -w)) < 1e-15);
    CHECK(m(0, 0).real() == doctest::Approx(g));
    CHECK(std::abs(m.trace()) < 1e-15);
}

TEST_CASE("assemble: Omega=0, |omega|=1, phi=0 is -i sigma_y") {
    const Matrix2c m = assemble_hamiltonian(constant_model(0.0, 1.0, 0.0), 0.0);
    CHECK(m(0, 0) == Complex(0, 0));
    CHECK(m(0, 1) == Complex(-1, 0));
    CHECK(m(1, 0) == Complex(1, 0));
}

TEST_CASE("assemble: negative |omega| rejected") {
    CHECK_THROWS_AS(assemble_hamiltonian(constant_model(1.0, -0.5, 0.0), 0.0), DomainError);
}

TEST_CASE("pseudo-Hermiticity eta H eta = H^dag holds exactly for random parameters") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const Matrix2c m =
            assemble_hamiltonian(constant_model(d(rng), std::abs(d(rng)), d(rng)), 0.0);
        CHECK(is_pseudo_hermitian(m, 0.0));
    }
}

TEST_CASE("su(1,1) membership") {
    SUBCASE("identity") { CHECK(check_su11_membership(Matrix2c::Identity(), 1e-12)); }
    SUBCASE("cosh/sinh Cayley-Klein pair") {
        const CayleyKlein ck{std::cosh(1.0), Complex(0, -std::sinh(1.0)), 0.0};
        CHECK(check_su11_membership(ck.matrix(), 1e-12));
    }
    SUBCASE("SU(2) rotation fails") {
        const double c = std::cos(M_PI / 6), s = std::sin(M_PI / 6);
        Matrix2c u;
        u << c, -s, s, c;  // rotation by pi/3 about y: real off-diagonal entry
        CHECK_FALSE(check_su11_membership(u, 1e-8));
    }
    SUBCASE("singular input throws") {
        CHECK_THROWS_AS(check_su11_membership(Matrix2c::Zero(), 1e-12), SingularityError);
    }
}

TEST_CASE("spectrum classification across the quasi-Hermitian boundary") {
    CHECK(classify_spectrum(2.0, 1.0) == SpectrumKind::Real);
    CHECK(classify_spectrum(1.0, 2.0) == SpectrumKind::ComplexConjugatePair);
    CHECK(classify_spectrum(1.0, 1.0) == SpectrumKind::Degenerate);
}

TEST_CASE("PtModel sign rule for phi_omega") {
    PtModel acute{1.0, M_PI / 4, [](double) { return 1.0; }};
    CHECK(acute.phi_omega() == doctest::Approx(M_PI / 2));
    PtModel obtuse{1.0, 3 * M_PI / 4, [](double) { return 1.0; }};
    CHECK(obtuse.phi_omega() == doctest::Approx(-M_PI / 2));
    CHECK(obtuse.omega_abs() == doctest::Approx(std::sin(3 * M_PI / 4)));
}
