// Independent reference computations for the tests. Everything here uses
// Boost's tanh-sinh rule and direct formulations, not the solver's own
// Gauss–Kronrod engine or singularity subtraction.

#pragma once

#include <cmath>
#include <limits>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "sbm/bath.hpp"

namespace sbm::ref {

template <class F>
double ts(F f, double a, double b, double tol = 1e-13) {
    // Not const: the integrate overloads are non-const members in Boost 1.74.
    thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
    return rule.integrate(f, a, b, tol);
}

// ∫_0^1 x^s/(x + d)^2 dx
inline double eta_integral_ref(double s, double d) {
    auto f = [s, d](double x) { return std::pow(x, s) / ((x + d) * (x + d)); };
    // Split at d so the rule sees the knee of the integrand.
    const double k = std::min(d, 0.5);
    return ts(f, 0.0, k) + ts(f, k, 1.0);
}

// Damped iteration of η = exp(-a I(ηΔ)) with the reference integral.
// Returns 0 when the iterate collapses.
inline double eta_ref(const BathSpec& bath, double delta, int max_iter = 20000) {
    const double a = bath.effective_coupling();
    double eta = 1.0;
    for (int i = 0; i < max_iter; ++i) {
        const double next = std::exp(-a * eta_integral_ref(bath.s, eta * delta));
        if (std::abs(next - eta) < 1e-12) return next;
        eta = 0.5 * (eta + next);
        if (eta < 1e-9) return 0.0;
    }
    return eta;
}

// R(ω) as the Hilbert-type transform of γ/π, PV by symmetric folding about ω:
//   PV ∫_0^1 h(x)/(ω - x) dx, h = J (Δ_r/(x+Δ_r))^2.
inline double r_ref(double omega, const BathSpec& bath, double delta_r) {
    const double a = bath.effective_coupling();
    const double s = bath.s;
    auto h = [=](double x) {
        const double r = delta_r / (x + delta_r);
        return 2.0 * a * std::pow(x, s) * r * r;
    };
    if (omega <= 0.0 || omega >= 1.0) {
        auto g = [&](double x) { return h(x) / (omega - x); };
        double sum = 0.0;
        double lo = 0.0;
        for (double cut : {delta_r, 10 * delta_r, 100 * delta_r}) {
            if (cut >= 1.0) break;
            sum += ts(g, lo, cut);
            lo = cut;
        }
        return sum + ts(g, lo, 1.0);
    }
    const double w = std::min(omega, 1.0 - omega);
    // Symmetric pairs about ω cancel the pole.
    auto pair = [&](double u) { return u == 0.0 ? 0.0 : (h(omega - u) - h(omega + u)) / u; };
    double sum = ts(pair, 0.0, w);
    auto g = [&](double x) { return h(x) / (omega - x); };
    if (omega < 0.5) sum += ts(g, 2.0 * omega, 1.0);
    else sum += ts(g, 0.0, 2.0 * omega - 1.0);
    return sum;
}

} // namespace sbm::ref
