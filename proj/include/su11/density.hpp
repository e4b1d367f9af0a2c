#pragma once

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "su11/cayley_klein.hpp"
#include "su11/errors.hpp"

namespace su11 {

/// 2x2 density matrix: Hermitian, unit trace, positive semidefinite.
struct DensityMatrix2 {
    Matrix2c rho;

    static constexpr double kHermTol = 1e-12;
    static constexpr double kTraceTol = 1e-12;
    static constexpr double kPsdFloor = -1e-12;

    bool valid() const {
        if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermTol) return false;
        if (std::abs(rho.trace() - Complex(1, 0)) > kTraceTol) return false;
        Eigen::SelfAdjointEigenSolver<Matrix2c> es(rho, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff() >= kPsdFloor;
    }

    /// |-><-| in the basis (|+>, |->).
    static DensityMatrix2 ground() {
        Matrix2c m = Matrix2c::Zero();
        m(1, 1) = 1;
        return {m};
    }

    static DensityMatrix2 from_state(const Eigen::Vector2cd& psi) {
        Eigen::Vector2cd n = psi.normalized();
        return {n * n.adjoint()};
    }
};

/// Trace-normalized non-unitary evolution rho(t) = U rho0 U^dag / Tr{U rho0 U^dag}.
inline DensityMatrix2 evolve_density(const CayleyKlein& ck, const DensityMatrix2& rho0) {
    const Matrix2c u = ck.matrix();
    Matrix2c num = u * rho0.rho * u.adjoint();
    const double tr = num.trace().real();
    if (!(tr > 0))
        throw NormalizationError("Tr{U rho0 U^dag} <= 0");
    // symmetrize away round-off in the Hermitian part
    num = Complex(0.5, 0) * (num + Matrix2c(num.adjoint()));
    return {num / tr};
}

/// Probability of finding the system in |+> starting from |->:
/// P = |b|^2 / (1 + 2|b|^2), always < 1/2.
inline double transition_probability(const CayleyKlein& ck) {
    const double b2 = std::norm(ck.b);
    return b2 / (1.0 + 2.0 * b2);
}

struct PauliExpectations {
    double sigma_z;
    double sigma_x;
};

/// Closed-form <sigma_z>, <sigma_x> for the initial state |-><-|.
/// kappa = 2 int_0^t |omega| dt'.
inline PauliExpectations expectations(const CayleyKlein& ck, double phi_omega,
                                      double theta, double kappa) {
    const double a2 = std::norm(ck.a);
    const double b2 = std::norm(ck.b);
    const double k2 = kappa * kappa;
    return {-1.0 / (a2 + b2),
            std::sqrt(k2 / (1.0 + k2)) * std::cos(phi_omega - theta - M_PI / 2)};
}

} // namespace su11
