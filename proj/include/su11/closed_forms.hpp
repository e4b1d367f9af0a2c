#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <utility>

#include "su11/cayley_klein.hpp"
#include "su11/errors.hpp"
#include "su11/quadrature.hpp"
#include "su11/solvable.hpp"

namespace su11 {

// ---------------------------------------------------------------------------
// Example 1: constant |omega| = w, Theta = arctan(kappa), kappa = 2wt.
// Lambda = R = arcsinh(kappa)/2, induced Omega = w[1 + 1/(1+kappa^2)].
// (The solvability recipe forces this Omega; differentiating the closed form
// confirms it. The commonly quoted variant w[1 + 1/(2(1+kappa^2))] does not
// reproduce the same dynamics; ex1_gamma below keeps that figure-style curve.)
// ---------------------------------------------------------------------------

struct Example1Model {
    double w;

    explicit Example1Model(double w_) : w(w_) {
        if (!(w > 0)) throw InputError("Example 1 requires w > 0");
    }

    double kappa(double t) const { return 2.0 * w * t; }
    double theta(double t) const { return std::atan(kappa(t)); }
    double theta_dot(double t) const {
        const double k = kappa(t);
        return 2.0 * w / (1.0 + k * k);
    }
    double lambda(double t) const { return 0.5 * std::asinh(kappa(t)); }
    double script_r(double t) const { return 0.5 * std::asinh(kappa(t)); }

    double omega_big(double t) const {
        const double k = kappa(t);
        return w * (1.0 + 1.0 / (1.0 + k * k));
    }

    SolvableModel solvable_model(double t_max) const {
        const double ww = w;
        return SolvableModel(
            ThetaSchedule([ww](double t) { return std::atan(2.0 * ww * t); },
                          [ww](double t) {
                              const double k = 2.0 * ww * t;
                              return 2.0 * ww / (1.0 + k * k);
                          },
                          t_max),
            [ww](double) { return ww; }, [](double) { return M_PI / 2; },
            [](double) { return 0.0; },
            TimeFunc([ww](double t) { return 0.5 * std::asinh(2.0 * ww * t); }));
    }
};

/// The printed closed form:
///   a = sqrt((sqrt(1+k^2)+1)/2) exp[-i(Theta/2 + R)]
///   b = sqrt((sqrt(1+k^2)-1)/2) exp[-i(Theta/2 - R)]
inline CayleyKlein ex1_solution(const Example1Model& m, double t) {
    const double k = m.kappa(t);
    const double root = std::sqrt(1.0 + k * k);
    const double th = std::atan(k);
    const double r = 0.5 * std::asinh(k);
    const Complex a = std::sqrt(0.5 * (root + 1.0)) * std::exp(Complex(0, -(0.5 * th + r)));
    const Complex b = std::sqrt(0.5 * (root - 1.0)) * std::exp(Complex(0, -(0.5 * th - r)));
    return {a, b, t};
}

/// gamma(tau)/w starts at 3/2 and decreases monotonically to 1.
inline double ex1_gamma(const Example1Model& m, double tau) {
    return 0.5 * m.w * (2.0 + 1.0 / (1.0 + tau * tau));
}

// ---------------------------------------------------------------------------
// Example 2: Lambda = arcsinh(kappa/2), Theta = arctan(kappa/2),
// R = arctan(kappa/2)/2. Solvability reduces to Omega = |omega|.
// ---------------------------------------------------------------------------

inline CayleyKlein ex2_solution(double kappa) {
    if (kappa < 0) throw DomainError("Example 2 requires kappa >= 0");
    const double h = 0.5 * kappa;
    const double th = std::atan(h);
    const double r = 0.5 * std::atan(h);
    const Complex a = std::sqrt(1.0 + h * h) * std::exp(Complex(0, -(0.5 * th + r)));
    const Complex b = h * std::exp(Complex(0, -(0.5 * th - r)));
    return {a, b, kappa};
}

struct Example2Model {
    double w;

    explicit Example2Model(double w_) : w(w_) {
        if (!(w > 0)) throw InputError("Example 2 requires w > 0");
    }

    double kappa(double t) const { return 2.0 * w * t; }
    CayleyKlein solution(double t) const {
        CayleyKlein ck = ex2_solution(kappa(t));
        ck.t = t;
        return ck;
    }

    SolvableModel solvable_model(double t_max) const {
        const double ww = w;
        return SolvableModel(
            ThetaSchedule([ww](double t) { return std::atan(ww * t); },
                          [ww](double t) {
                              const double x = ww * t;
                              return ww / (1.0 + x * x);
                          },
                          t_max),
            [ww](double) { return ww; }, [](double) { return M_PI / 2; },
            [](double) { return 0.0; },
            TimeFunc([ww](double t) { return std::asinh(ww * t); }));
    }
};

// ---------------------------------------------------------------------------
// The cos^2-modulated preset: |omega| = w0 cos^2(tau), Theta = tau, tau = w0 t.
// Lambda has the closed antiderivative sin(tau) - sin^3(tau)/3; R is numeric.
// ---------------------------------------------------------------------------

inline SolvableModel fig2_preset(double w0, double t_max) {
    if (!(w0 > 0)) throw InputError("fig2 preset requires w0 > 0");
    return SolvableModel(
        ThetaSchedule([w0](double t) { return w0 * t; }, [w0](double) { return w0; }, t_max),
        [w0](double t) {
            const double c = std::cos(w0 * t);
            return w0 * c * c;
        },
        [](double) { return M_PI / 2; }, [](double) { return 0.0; },
        TimeFunc([w0](double t) {
            const double s = std::sin(w0 * t);
            return s - s * s * s / 3.0;
        }));
}

// ---------------------------------------------------------------------------
// Appendix-B nu-family: solvability condition 2 Omega + phi_omega_dot = 2 nu |omega|.
// Oscillatory for nu > 1, hyperbolic for nu < 1, sin x/x limits at nu = 1.
// ---------------------------------------------------------------------------

enum class NuRegime { Oscillatory, Hyperbolic, Boundary };

namespace detail {

constexpr double kNuBoundary = 1e-6;  // switch to series when |nu^2-1| below this

/// sin(sqrt(mu) x)/sqrt(mu), continued to sinh for mu < 0.
inline double stretched_sin(double mu, double x) {
    if (mu > kNuBoundary) {
        const double s = std::sqrt(mu);
        return std::sin(s * x) / s;
    }
    if (mu < -kNuBoundary) {
        const double s = std::sqrt(-mu);
        return std::sinh(s * x) / s;
    }
    const double x2 = x * x;
    return x * (1.0 - mu * x2 / 6.0 + mu * mu * x2 * x2 / 120.0);
}

/// cos(sqrt(mu) x), continued to cosh for mu < 0.
inline double stretched_cos(double mu, double x) {
    if (mu > kNuBoundary) return std::cos(std::sqrt(mu) * x);
    if (mu < -kNuBoundary) return std::cosh(std::sqrt(-mu) * x);
    const double x2 = x * x;
    return 1.0 - mu * x2 / 2.0 + mu * mu * x2 * x2 / 24.0;
}

} // namespace detail

class NuFamilyModel {
public:
    NuFamilyModel(double nu, TimeFunc omega_abs, double phi_omega0, double t_max)
        : nu_(nu), omega_abs_(std::move(omega_abs)), phi_omega0_(phi_omega0), t_max_(t_max) {
        if (!(nu >= 0)) throw InputError("nu must be nonnegative");
        integral_cache_ = CumulativeIntegral(omega_abs_, t_max, 1e-10);
    }

    /// Constant-|omega| model with the integral taken analytically.
    NuFamilyModel(double nu, double w, double phi_omega0, double t_max)
        : nu_(nu), omega_abs_([w](double) { return w; }), phi_omega0_(phi_omega0),
          t_max_(t_max), constant_w_(w) {
        if (!(nu >= 0)) throw InputError("nu must be nonnegative");
        if (!(w >= 0)) throw InputError("|omega| must be nonnegative");
    }

    double nu() const { return nu_; }
    double phi_omega0() const { return phi_omega0_; }
    double t_max() const { return t_max_; }
    double omega_abs(double t) const { return omega_abs_(t); }

    NuRegime regime() const {
        const double mu = nu_ * nu_ - 1.0;
        if (std::abs(mu) < detail::kNuBoundary) return NuRegime::Boundary;
        return mu > 0 ? NuRegime::Oscillatory : NuRegime::Hyperbolic;
    }

    /// int_0^t |omega| dt'
    double omega_integral(double t) const {
        if (constant_w_) return *constant_w_ * t;
        return integral_cache_(t);
    }

    /// Omega from the solvability condition with phi_omega_dot = 0.
    double omega_big(double t) const { return nu_ * omega_abs_(t); }

    Su11Hamiltonian hamiltonian() const {
        const double nu = nu_;
        auto w = omega_abs_;
        const double phi0 = phi_omega0_;
        return Su11Hamiltonian{[nu, w](double t) { return nu * w(t); }, w,
                               [phi0](double) { return phi0; }, [](double) { return 0.0; }};
    }

private:
    double nu_;
    TimeFunc omega_abs_;
    double phi_omega0_;
    double t_max_;
    std::optional<double> constant_w_;
    CumulativeIntegral integral_cache_;
};

/// Branch-unwrapped phi_nu; continuous and increasing for nu > 1 with |omega| > 0.
/// For nu < 1 the tan(ix) = i tanh(x) continuation gives a bounded real phase.
inline double nu_phi(const NuFamilyModel& m, double t) {
    const double nu = m.nu();
    const double mu = nu * nu - 1.0;
    const double integral = m.omega_integral(t);
    if (std::abs(mu) < detail::kNuBoundary) return std::atan(nu * integral);
    if (mu > 0) {
        const double s = std::sqrt(mu);
        const double x = s * integral;
        // lift by pi per crossing of pi/2 + k pi in the tan argument
        const double k = std::floor(x / M_PI + 0.5);
        return std::atan(nu / s * std::tan(x)) + k * M_PI;
    }
    const double s = std::sqrt(-mu);
    return std::atan(nu * std::tanh(s * integral) / s);
}

/// Closed-form Cayley-Klein solution of the nu-family (both regimes, with the
/// analytic nu = 1 limit):
///   a = [C - i nu S] exp[i(phi_omega - phi0)/2],  b = -i S exp[i(phi_omega + phi0)/2]
/// where S, C are sin/ sinh-type functions of Lambda_nu.
inline CayleyKlein nu_solution(const NuFamilyModel& m, double t) {
    const double mu = m.nu() * m.nu() - 1.0;
    const double integral = m.omega_integral(t);
    const double s = detail::stretched_sin(mu, integral);
    const double c = detail::stretched_cos(mu, integral);
    // PT case: phi_omega(t) = phi_omega0, so the a-phase is unity.
    const Complex a = Complex(c, -m.nu() * s);
    const Complex b = Complex(0, -1) * s * std::exp(Complex(0, m.phi_omega0()));
    return {a, b, t};
}

// ---------------------------------------------------------------------------
// Constant-parameter classification: dynamical regime vs spectrum reality.
// The two coincide exactly when phi0 = 0 (the PT-symmetric case).
// ---------------------------------------------------------------------------

struct RegimeSpectrum {
    NuRegime regime;
    SpectrumKind spectrum;
    double omega_big0;
    bool coincident;
};

inline RegimeSpectrum classify_regime_and_spectrum(double nu, double omega0, double phi0) {
    const double big0 = nu * std::abs(omega0) - 0.5 * phi0;
    const SpectrumKind spec = classify_spectrum(big0, std::abs(omega0));
    NuRegime regime;
    const double mu = nu * nu - 1.0;
    if (std::abs(mu) < detail::kNuBoundary)
        regime = NuRegime::Boundary;
    else
        regime = mu > 0 ? NuRegime::Oscillatory : NuRegime::Hyperbolic;
    const bool oscillatory = regime == NuRegime::Oscillatory;
    const bool real_spec = spec == SpectrumKind::Real;
    return {regime, spec, big0, oscillatory == real_spec};
}

} // namespace su11
