#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "su11/errors.hpp"

namespace su11 {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using TimeFunc = std::function<double(double)>;

inline Matrix2c pauli_x() {
    Matrix2c m;
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix2c pauli_y() {
    Matrix2c m;
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

inline Matrix2c pauli_z() {
    Matrix2c m;
    m << 1, 0, 0, -1;
    return m;
}

/// Traceless su(1,1) Hamiltonian given by the triple (Omega, |omega|, phi_omega),
/// in the canonical basis (|+>, |->):
///
///     H(t) = [ Omega(t)      -omega(t)  ]      omega = |omega| e^{i phi_omega}
///            [ omega*(t)     -Omega(t)  ]
///
/// All quantities are dimensionless; time is measured in units of 1/Omega.
struct Su11Hamiltonian {
    TimeFunc omega_big;      // Omega(t)
    TimeFunc omega_abs;      // |omega|(t), >= 0
    TimeFunc phi_omega;      // phi_omega(t), radians
    TimeFunc phi_omega_dot;  // d/dt phi_omega

    Matrix2c operator()(double t) const;
};

inline Matrix2c assemble_hamiltonian(const Su11Hamiltonian& h, double t) {
    const double w = h.omega_abs(t);
    if (!(w >= 0.0) || !std::isfinite(w))
        throw DomainError("omega_abs must be finite and nonnegative");
    const double big = h.omega_big(t);
    const Complex omega = w * std::exp(Complex(0, h.phi_omega(t)));
    Matrix2c m;
    m << big, -omega, std::conj(omega), -big;
    return m;
}

inline Matrix2c Su11Hamiltonian::operator()(double t) const {
    return assemble_hamiltonian(*this, t);
}

/// eta H eta^-1 == H^dagger with eta = diag(+1,-1); holds exactly for any
/// matrix assembled from real (Omega, |omega|, phi_omega).
inline bool is_pseudo_hermitian(const Matrix2c& h, double tol = 0.0) {
    const Matrix2c eta = pauli_z();
    return ((eta * h * eta - h.adjoint()).cwiseAbs().maxCoeff()) <= tol;
}

/// True iff U is a unit-determinant matrix with sigma_z U^dagger sigma_z = U^-1.
inline bool check_su11_membership(const Matrix2c& u, double tol) {
    const Complex det = u.determinant();
    if (std::abs(det) < 1e-300)
        throw SingularityError("singular matrix has no SU(1,1) membership");
    const Matrix2c sz = pauli_z();
    const Matrix2c lhs = sz * u.adjoint() * sz;
    const Matrix2c rhs = u.inverse();
    const double dev = (lhs - rhs).cwiseAbs().maxCoeff();
    return dev <= tol && std::abs(det - Complex(1, 0)) <= tol;
}

enum class SpectrumKind { Real, ComplexConjugatePair, Degenerate };

/// Instantaneous eigenvalues are +-sqrt(Omega^2 - |omega|^2): real in the
/// quasi-Hermitian region |omega|^2 < Omega^2, a complex-conjugate pair outside.
inline SpectrumKind classify_spectrum(double omega_big, double omega_abs) {
    const double disc = omega_big * omega_big - omega_abs * omega_abs;
    if (disc > 0) return SpectrumKind::Real;
    if (disc < 0) return SpectrumKind::ComplexConjugatePair;
    return SpectrumKind::Degenerate;
}

/// Sink-source two-box model: constant gain-loss modulus r, mixing angle theta,
/// time-dependent coupling gamma(t). Maps onto the su(1,1) form with
/// Omega = gamma, |omega| = |r sin(theta)| and phi_omega = +-pi/2.
struct PtModel {
    double r;
    double theta;  // in (0, pi)
    TimeFunc gamma;

    double omega_abs() const { return std::abs(r * std::sin(theta)); }
    double phi_omega() const { return theta <= M_PI / 2 ? M_PI / 2 : -M_PI / 2; }

    Su11Hamiltonian hamiltonian() const {
        const double w = omega_abs();
        const double phi = phi_omega();
        return Su11Hamiltonian{gamma, [w](double) { return w; },
                               [phi](double) { return phi; },
                               [](double) { return 0.0; }};
    }
};

} // namespace su11
