#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <random>
#include <utility>

#include "su11/cayley_klein.hpp"
#include "su11/errors.hpp"
#include "su11/hamiltonian.hpp"
#include "su11/quadrature.hpp"

namespace su11 {

/// The freely chosen real function Theta(t) with Theta(0) = 0, together with
/// its exact derivative. The derivative is a required input; it is checked
/// against central differences at construction, not computed numerically.
struct ThetaSchedule {
    TimeFunc theta;
    TimeFunc theta_dot;
    double t_max;

    ThetaSchedule(TimeFunc th, TimeFunc th_dot, double tmax)
        : theta(std::move(th)), theta_dot(std::move(th_dot)), t_max(tmax) {
        if (!(t_max > 0)) throw InputError("t_max must be positive");
        if (theta(0.0) != 0.0) throw InputError("Theta(0) must be exactly 0");
        std::mt19937 rng(20240815u);
        std::uniform_real_distribution<double> dist(0.0, t_max);
        for (int i = 0; i < 20; ++i) {
            const double t = dist(rng);
            const double h = 1e-5 * std::max(1.0, t);
            const double fd = (theta(t + h) - theta(t - h)) / (2.0 * h);
            const double d = theta_dot(t);
            const double scale = std::max({1.0, std::abs(d), std::abs(fd)});
            if (std::abs(fd - d) > 1e-6 * scale)
                throw InputError("theta_dot inconsistent with theta");
        }
    }
};

/// A solvable model: the pair (Theta, omega) fixes Lambda_Theta and R by
/// quadrature and induces the Omega(t) that makes the dynamics exactly
/// solvable. Cumulative integrals are cached at construction; construction is
/// single-threaded, queries afterwards are read-only.
class SolvableModel {
public:
    static constexpr double kGuard = 1e-6;       // |2 Lambda| below this: limit form
    static constexpr double kSingular = 1e-12;   // genuine singularity test
    static constexpr double kLambdaTol = 1e-10;
    static constexpr double kScriptRTol = 1e-9;

    SolvableModel(ThetaSchedule theta, TimeFunc omega_abs, TimeFunc phi_omega,
                  TimeFunc phi_omega_dot,
                  std::optional<TimeFunc> lambda_closed_form = std::nullopt)
        : theta_(std::move(theta)),
          omega_abs_(std::move(omega_abs)),
          phi_omega_(std::move(phi_omega)),
          phi_omega_dot_(std::move(phi_omega_dot)),
          lambda_closed_(std::move(lambda_closed_form)) {
        const double tmax = theta_.t_max;
        if (!lambda_closed_) {
            auto th = theta_.theta;
            auto w = omega_abs_;
            lambda_cache_ = CumulativeIntegral(
                [th, w](double t) { return w(t) * std::cos(th(t)); }, tmax, kLambdaTol);
        }
        kappa_cache_ = CumulativeIntegral(omega_abs_, tmax, kLambdaTol);
        // the cached integrand must be self-contained (no `this` capture), so
        // that SolvableModel stays safely movable and copyable
        TimeFunc lam = lambda_closed_ ? *lambda_closed_ : TimeFunc(lambda_cache_);
        auto th = theta_.theta;
        auto thd = theta_.theta_dot;
        auto w = omega_abs_;
        r_cache_ = CumulativeIntegral(
            [lam, th, thd, w](double t) {
                return r_integrand(w(t), std::sin(th(t)), 2.0 * lam(t), thd(t));
            },
            tmax, kScriptRTol);
    }

    double t_max() const { return theta_.t_max; }
    const ThetaSchedule& theta_schedule() const { return theta_; }
    double theta(double t) const { return theta_.theta(t); }
    double theta_dot(double t) const { return theta_.theta_dot(t); }
    double omega_abs(double t) const { return omega_abs_(t); }
    double phi_omega(double t) const { return phi_omega_(t); }
    double phi_omega_dot(double t) const { return phi_omega_dot_(t); }

    /// Lambda_Theta(t) = int_0^t |omega| cos(Theta) dt'
    double lambda_theta(double t) const {
        check_domain(t);
        if (lambda_closed_) return (*lambda_closed_)(t);
        return lambda_cache_(t);
    }

    /// kappa(t) = 2 int_0^t |omega| dt'
    double kappa(double t) const {
        check_domain(t);
        return 2.0 * kappa_cache_(t);
    }

    /// R(t) = int_0^t |omega| sin(Theta) / sinh(2 Lambda_Theta) dt'
    double script_r(double t) const {
        check_domain(t);
        return r_cache_(t);
    }

    /// The Omega(t) that satisfies the solvability condition
    /// Theta_dot + 2|omega| sin(Theta) coth(2 Lambda) = 2 Omega + phi_omega_dot.
    double induced_omega_big(double t) const {
        check_domain(t);
        const double w = omega_abs_(t);
        const double s = std::sin(theta_.theta(t));
        const double l2 = 2.0 * lambda_theta(t);
        double term;  // 2|omega| sin(Theta) coth(2 Lambda)
        if (std::abs(l2) >= kGuard) {
            term = 2.0 * w * s / std::tanh(l2);
        } else if (l2 != 0.0) {
            guard_singularity(l2, s);
            term = 2.0 * w * s / l2;
        } else {
            guard_singularity(l2, s);
            term = theta_.theta_dot(t);  // limit of 2|omega| sin(Theta)/(2 Lambda)
        }
        return 0.5 * (theta_.theta_dot(t) + term - phi_omega_dot_(t));
    }

    /// Exact Cayley-Klein solution:
    ///   a =    cosh(Lambda) exp[i((phi-phi0)/2 - Theta/2 - R)]
    ///   b = -i sinh(Lambda) exp[i((phi+phi0)/2 - Theta/2 + R)]
    CayleyKlein cayley_klein_solution(double t) const {
        check_domain(t);
        const double lam = lambda_theta(t);
        const double r = script_r(t);
        const double th = theta_.theta(t);
        const double phi = phi_omega_(t);
        const double phi0 = phi_omega_(0.0);
        const Complex a =
            std::cosh(lam) * std::exp(Complex(0, 0.5 * (phi - phi0) - 0.5 * th - r));
        const Complex b = Complex(0, -1) * std::sinh(lam) *
                          std::exp(Complex(0, 0.5 * (phi + phi0) - 0.5 * th + r));
        return {a, b, t};
    }

    /// Full Hamiltonian with the induced Omega.
    Su11Hamiltonian induced_hamiltonian() const {
        return Su11Hamiltonian{[this](double t) { return induced_omega_big(t); },
                               omega_abs_, phi_omega_, phi_omega_dot_};
    }

private:
    void check_domain(double t) const {
        if (t < 0 || t > theta_.t_max * (1.0 + 1e-12))
            throw DomainError("time outside [0, t_max]");
    }

    static void guard_singularity(double l2, double s) {
        if (std::abs(std::sinh(l2)) < kSingular && std::abs(s) > kGuard)
            throw SolvabilityBreakdown("Lambda -> 0 with sin(Theta) finite: integrand singular");
    }

    static double r_integrand(double w, double s, double l2, double thd) {
        if (std::abs(l2) >= kGuard) return w * s / std::sinh(l2);
        guard_singularity(l2, s);
        if (l2 != 0.0) return w * s / l2;
        return 0.5 * thd;  // L'Hopital at an exact zero of Lambda
    }

    ThetaSchedule theta_;
    TimeFunc omega_abs_;
    TimeFunc phi_omega_;
    TimeFunc phi_omega_dot_;
    std::optional<TimeFunc> lambda_closed_;
    CumulativeIntegral lambda_cache_;
    CumulativeIntegral kappa_cache_;
    CumulativeIntegral r_cache_;
};

} // namespace su11
