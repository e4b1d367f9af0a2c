#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "su11/cayley_klein.hpp"
#include "su11/density.hpp"
#include "su11/errors.hpp"
#include "su11/hamiltonian.hpp"

namespace su11 {

struct PropagationResult {
    std::vector<double> times;
    std::vector<Matrix2c> U_samples;
    double est_error = 0.0;

    double max_det_drift() const {
        double d = 0.0;
        for (const auto& u : U_samples)
            d = std::max(d, std::abs(u.determinant() - Complex(1, 0)));
        return d;
    }

    CayleyKlein cayley_klein(std::size_t i) const {
        return CayleyKlein::from_matrix(U_samples[i], times[i]);
    }
};

/// Adaptive Dormand-Prince 5(4) integration of i dU/dt = H(t) U, U(0) = 1,
/// stepping exactly onto the requested sample times (no dense interpolation
/// error at the output points). det U = 1 is conserved since Tr H = 0.
inline PropagationResult integrate_schrodinger(const Su11Hamiltonian& h,
                                               const std::vector<double>& sample_times,
                                               double tol) {
    if (tol < 1e-12 || tol > 1e-4) throw InputError("tol must lie in [1e-12, 1e-4]");
    if (sample_times.empty()) throw InputError("empty sample grid");

    auto rhs = [&h](double t, const Matrix2c& u) -> Matrix2c {
        return Complex(0, -1) * (assemble_hamiltonian(h, t) * u);
    };

    // Dormand-Prince 5(4) tableau
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    PropagationResult res;
    res.times = sample_times;
    res.U_samples.reserve(sample_times.size());

    double t = sample_times.front();
    Matrix2c u = Matrix2c::Identity();
    if (t != 0.0) throw InputError("sample grid must start at t = 0");
    res.U_samples.push_back(u);

    const double t_end = sample_times.back();
    const double span = std::max(t_end - t, 1e-12);
    double hstep = std::min(1e-3, span);
    std::size_t next = 1;
    Matrix2c k1 = rhs(t, u);

    while (next < sample_times.size()) {
        const double t_target = sample_times[next];
        bool hit = false;
        if (t + hstep >= t_target) {
            hstep = t_target - t;
            hit = true;
        }
        const double dt = hstep;

        const Matrix2c k2 = rhs(t + c2 * dt, u + dt * (a21 * k1));
        const Matrix2c k3 = rhs(t + c3 * dt, u + dt * (a31 * k1 + a32 * k2));
        const Matrix2c k4 = rhs(t + c4 * dt, u + dt * (a41 * k1 + a42 * k2 + a43 * k3));
        const Matrix2c k5 = rhs(t + c5 * dt, u + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Matrix2c k6 =
            rhs(t + dt, u + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Matrix2c u5 = u + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Matrix2c k7 = rhs(t + dt, u5);
        const Matrix2c errm =
            dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double scale = std::max(1.0, u.cwiseAbs().maxCoeff());
        const double err = errm.cwiseAbs().maxCoeff() / (tol * scale);

        if (err <= 1.0) {
            t += dt;
            u = u5;
            k1 = k7;  // FSAL
            res.est_error += errm.cwiseAbs().maxCoeff();
            if (hit) {
                res.U_samples.push_back(u);
                ++next;
            }
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        hstep = dt * fac;
        if (hstep < 1e-14 * span)
            throw StiffnessError("step size underflow in Schrodinger integration", t);
    }
    return res;
}

/// Residual of the nonlinear density-matrix equation
///   rho_dot = -i[K, rho] - {Gamma, rho} + 2 rho Tr{rho Gamma}
/// with K = (H + H^dag)/2, Gamma = i(H - H^dag)/2, for a uniformly sampled
/// trajectory. rho_dot is a 4th-order central difference; the four end samples
/// are excluded from the max.
inline double nonlinear_residual(const Su11Hamiltonian& h, const std::vector<double>& times,
                                 const std::vector<DensityMatrix2>& traj) {
    const std::size_t n = times.size();
    if (n < 9 || traj.size() != n) throw InputError("need at least 9 uniform samples");
    const double dt = times[1] - times[0];
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const Matrix2c drho = (traj[i - 2].rho - 8.0 * traj[i - 1].rho + 8.0 * traj[i + 1].rho -
                               traj[i + 2].rho) /
                              (12.0 * dt);
        const Matrix2c ham = assemble_hamiltonian(h, times[i]);
        const Matrix2c k = 0.5 * (ham + Matrix2c(ham.adjoint()));
        const Matrix2c g = Complex(0, 0.5) * (ham - Matrix2c(ham.adjoint()));
        const Matrix2c& rho = traj[i].rho;
        const Matrix2c rhs = Complex(0, -1) * (k * rho - rho * k) - (g * rho + rho * g) +
                             2.0 * (rho * g).trace() * rho;
        worst = std::max(worst, (drho - rhs).cwiseAbs().maxCoeff());
    }
    return worst;
}

/// Comparison of a closed-form solution against a numeric propagation.
/// Moduli are compared with a scaled deviation |dm| / max(1, m) since the
/// SU(1,1) entries grow without bound; phases are compared through the
/// convention-free bilinear a b*.
struct ComparisonReport {
    double max_mod_dev_a = 0.0;
    double max_mod_dev_b = 0.0;
    double max_phase_drift = 0.0;  // radians, from arg(a b*)
    double tolerance = 0.0;
    bool pass = false;

    double max_mod_dev() const { return std::max(max_mod_dev_a, max_mod_dev_b); }
};

inline ComparisonReport compare_solutions(const std::function<CayleyKlein(double)>& analytic,
                                          const PropagationResult& numeric, double tol) {
    ComparisonReport rep;
    rep.tolerance = tol;
    for (std::size_t i = 0; i < numeric.times.size(); ++i) {
        const CayleyKlein num = numeric.cayley_klein(i);
        const CayleyKlein ana = analytic(numeric.times[i]);
        const double ma_n = std::abs(num.a), ma_a = std::abs(ana.a);
        const double mb_n = std::abs(num.b), mb_a = std::abs(ana.b);
        rep.max_mod_dev_a = std::max(rep.max_mod_dev_a, std::abs(ma_n - ma_a) / std::max(1.0, ma_a));
        rep.max_mod_dev_b = std::max(rep.max_mod_dev_b, std::abs(mb_n - mb_a) / std::max(1.0, mb_a));
        const Complex bil_n = num.a * std::conj(num.b);
        const Complex bil_a = ana.a * std::conj(ana.b);
        if (std::abs(bil_n) > 1e-9 && std::abs(bil_a) > 1e-9) {
            double dphi = std::arg(bil_n / bil_a);
            rep.max_phase_drift = std::max(rep.max_phase_drift, std::abs(dphi));
        }
    }
    rep.pass = rep.max_mod_dev() <= tol;
    return rep;
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    v.back() = b;
    return v;
}

} // namespace su11
