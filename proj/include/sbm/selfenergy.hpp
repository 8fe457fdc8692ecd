// Level shift R(ω) and damping γ(ω) of the one-boson self-energy
//
//   Σ_k V_k^2/(ω ± i0 - ω_k) = R(ω) ∓ iγ(ω),   V_k = Δ_r g_k/(ω_k + Δ_r)
//
// R is evaluated two independent ways: singularity-subtracted principal-value
// quadrature (valid for every s and ω) and a closed residue series (0 < s < 1).

#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sbm/bath.hpp"
#include "sbm/errors.hpp"
#include "sbm/quadrature.hpp"

namespace sbm {

struct SelfEnergyPoint {
    double omega{0.0};
    double r{0.0};
    double gamma{0.0};
};

inline quad::Options self_energy_quad_options() { return {1e-15, 1e-11, 30}; }

// γ(ω) = π J(ω) (Δ_r/(ω + Δ_r))^2, zero outside (0, ω_c).
inline double gamma_of(double omega, const BathSpec& bath, double delta_r) {
    if (!(delta_r > 0.0)) throw DomainError("gamma_of: delta_r must be positive");
    if (!(omega > 0.0) || omega >= bath.omega_c) return 0.0;
    const double ratio = delta_r / (omega + delta_r);
    return 2.0 * std::numbers::pi * bath.effective_coupling() * ratio * ratio * std::pow(omega, bath.s);
}

// R(ω) = -2 α ω_s^{1-s} Δ_r^2 PV ∫_0^1 x^s dx / ((x - ω)(x + Δ_r)^2).
inline double r_quadrature(double omega, const BathSpec& bath, double delta_r,
                           const quad::Options& opt = self_energy_quad_options()) {
    if (!(delta_r > 0.0)) throw DomainError("r_quadrature: delta_r must be positive");
    if (std::isnan(omega)) throw DomainError("r_quadrature: omega is NaN");
    const double prefactor = -2.0 * bath.effective_coupling() * delta_r * delta_r;
    if (prefactor == 0.0) return 0.0;

    const double s = bath.s;
    const double d = delta_r;
    auto f = [s, d](double x) {
        const double y = x + d;
        return std::pow(x, s) / (y * y);
    };

    if (omega == 1.0) return std::numeric_limits<double>::infinity(); // log singularity at the band edge

    double integral = 0.0;
    if (omega > 0.0 && omega < 1.0) {
        integral = quad::principal_value_unit(f, omega, s, quad::decade_points(d), opt).value;
    } else {
        auto g = [&f, omega](double x) { return f(x) / (x - omega); };
        std::vector<double> interior = quad::decade_points(d);
        if (omega < 0.0) interior.push_back(-omega);
        if (omega > 1.0) {
            const double gap = omega - 1.0;
            for (double k : {1.0, 10.0, 100.0}) interior.push_back(1.0 - k * gap);
        }
        auto edges = quad::make_edges(0.0, 1.0, interior);
        edges.erase(edges.begin());
        integral = quad::integrate_from_zero(g, edges, s, opt).value;
    }
    return prefactor * integral;
}

// Closed residue form of R(ω) for 0 < s < 1, 0 <= ω < 1 and Δ_r < 1.
inline double r_series(double omega, const BathSpec& bath, double delta_r) {
    const double s = bath.s;
    if (!(s > 0.0 && s < 1.0) || std::abs(1.0 - s) <= 1e-3)
        throw DomainError("r_series: requires 0 < s < 1 away from s = 1; use r_quadrature");
    if (!(omega >= 0.0 && omega < 1.0))
        throw DomainError("r_series: requires 0 <= omega < omega_c; use r_quadrature");
    if (!(delta_r > 0.0 && delta_r < 1.0))
        throw DomainError("r_series: requires 0 < delta_r < omega_c; use r_quadrature");

    const double d = delta_r;
    const double w = omega;
    const double prefactor = -2.0 * bath.effective_coupling() * (d / (w + d)) * (d / (w + d));
    if (prefactor == 0.0) return 0.0;

    constexpr std::size_t kMaxTerms = 2000000;
    double sum = 0.0;
    double md_pow = -d;  // (-d)^{n+1}
    double w_pow = w * w; // w^{n+2}
    std::size_t n = 0;
    for (; n < kMaxTerms; ++n) {
        const double term = ((1.0 - s) * md_pow * (-d) + w * s * md_pow - w_pow) / (double(n) + 2.0 - s);
        sum += term;
        if (std::abs(term) < 1e-14 && n > 2) break;
        md_pow *= -d;
        w_pow *= w;
    }
    if (n == kMaxTerms) throw DomainError("r_series: series did not converge; use r_quadrature");

    const double pi = std::numbers::pi;
    const double closed = -(d + w) * d / (1.0 + d) -
                          pi / std::sin(pi * s) *
                              ((s - 1.0) * std::pow(d, s) + s * std::pow(d, s - 1.0) * w +
                               std::pow(w, s) * std::cos(pi * s));
    return prefactor * (sum + closed);
}

inline SelfEnergyPoint self_energy(double omega, const BathSpec& bath, double delta_r) {
    return {omega, r_quadrature(omega, bath, delta_r), gamma_of(omega, bath, delta_r)};
}

} // namespace sbm
