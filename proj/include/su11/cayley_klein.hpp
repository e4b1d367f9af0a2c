#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "su11/errors.hpp"
#include "su11/hamiltonian.hpp"

namespace su11 {

/// Cayley-Klein parameters (a, b) of an SU(1,1) propagator
///
///     U = [  a   -b  ]          |a|^2 - |b|^2 = 1
///         [ -b*   a* ]
struct CayleyKlein {
    Complex a;
    Complex b;
    double t = 0.0;

    double det_defect() const {
        return std::norm(a) - std::norm(b) - 1.0;
    }

    bool valid(double tol = 1e-10) const {
        return std::abs(det_defect()) <= tol;
    }

    Matrix2c matrix() const {
        Matrix2c u;
        u << a, -b, -std::conj(b), std::conj(a);
        return u;
    }

    static CayleyKlein identity(double t = 0.0) { return {Complex(1, 0), Complex(0, 0), t}; }

    static CayleyKlein from_matrix(const Matrix2c& u, double t = 0.0) {
        return {u(0, 0), -u(0, 1), t};
    }
};

/// X = i b / a; the determinant constraint becomes |a|^2 (1 - |X|^2) = 1,
/// so |X| < 1 always.
inline Complex x_function(const CayleyKlein& ck) {
    return Complex(0, 1) * ck.b / ck.a;
}

} // namespace su11
