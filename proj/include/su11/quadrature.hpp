#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "su11/errors.hpp"

namespace su11 {

namespace detail {

struct SimpsonPanel {
    double value;
    double error;
};

template <class F>
SimpsonPanel simpson(const F& f, double a, double fa, double b, double fb, double fm) {
    const double h = b - a;
    return {h / 6.0 * (fa + 4.0 * fm + fb), 0.0};
}

template <class F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth, double& achieved) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = (left + right - whole) / 15.0;
    if (depth <= 0) {
        achieved += std::abs(err);
        return left + right + err;
    }
    if (std::abs(err) <= tol) {
        achieved += std::abs(err);
        return left + right + err;  // Richardson correction
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, achieved) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, achieved);
}

} // namespace detail

/// Adaptive composite Simpson with interval bisection, absolute tolerance.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double abs_tol, int max_depth = 48) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double achieved = 0.0;
    const double result =
        detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth, achieved);
    if (achieved > 16.0 * abs_tol)
        throw ToleranceError("adaptive quadrature failed to converge", achieved);
    return result;
}

/// Cumulative integral F(t) = int_0^t f on [0, t_max]: prefix sums on a uniform
/// node grid, each panel (and each query tail) integrated adaptively. Queries
/// beyond t_max are an error, never extrapolated.
class CumulativeIntegral {
public:
    CumulativeIntegral() = default;

    CumulativeIntegral(std::function<double(double)> f, double t_max, double abs_tol,
                       std::size_t initial_panels = 1024)
        : f_(std::move(f)), t_max_(t_max), tol_(abs_tol) {
        if (!(t_max > 0)) throw InputError("t_max must be positive");
        const std::size_t n = initial_panels;
        nodes_.resize(n + 1);
        prefix_.resize(n + 1);
        prefix_[0] = 0.0;
        const double h = t_max / static_cast<double>(n);
        const double panel_tol = abs_tol / static_cast<double>(n);
        for (std::size_t i = 0; i <= n; ++i) nodes_[i] = h * static_cast<double>(i);
        nodes_.back() = t_max;
        for (std::size_t i = 0; i < n; ++i)
            prefix_[i + 1] = prefix_[i] + adaptive_simpson(f_, nodes_[i], nodes_[i + 1], panel_tol);
    }

    double t_max() const { return t_max_; }

    double operator()(double t) const {
        if (t < 0 || t > t_max_ * (1.0 + 1e-12))
            throw DomainError("cumulative integral queried outside [0, t_max]");
        t = std::min(t, t_max_);
        const double h = t_max_ / static_cast<double>(nodes_.size() - 1);
        auto i = static_cast<std::size_t>(t / h);
        if (i >= nodes_.size() - 1) i = nodes_.size() - 2;
        return prefix_[i] + adaptive_simpson(f_, nodes_[i], t, tol_ / static_cast<double>(nodes_.size() - 1));
    }

private:
    std::function<double(double)> f_;
    double t_max_ = 0.0;
    double tol_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> prefix_;
};

} // namespace su11
