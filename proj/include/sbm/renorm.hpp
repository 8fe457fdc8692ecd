// Self-consistent tunneling renormalization and the
// delocalized–localized boundary.
//
// The dressing factor η solves
//     η = exp{ -α ω_s^{1-s} ∫_0^1 x^s dx / (x + ηΔ)^2 },
// and the renormalized tunneling is Δ_r = ηΔ. η = 0 is always a fixed point;
// the delocalized phase is the one in which a finite solution survives.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>

#include "sbm/bath.hpp"
#include "sbm/errors.hpp"
#include "sbm/quadrature.hpp"
#include "sbm/roots.hpp"

namespace sbm {

enum class Phase { Delocalized, Localized };

inline const char* to_string(Phase p) {
    return p == Phase::Delocalized ? "delocalized" : "localized";
}

struct RenormResult {
    double eta{1.0};
    double delta_r{0.0};
    Phase phase{Phase::Delocalized};
    std::size_t iterations{0};
    double residual{0.0};
};

struct RenormOptions {
    double damping{0.5};
    std::size_t max_iterations{100000};
    double tolerance{1e-10};
    double collapse_threshold{1e-8};
    std::size_t collapse_count{10};
    quad::Options quad{1e-14, 1e-12, 30};
};

// Adiabatic fraction of a mode at frequency ω: ξ = ω/(ω + Δ_r).
inline double xi(double omega, double delta_r) {
    if (omega < 0.0 || delta_r < 0.0) throw DomainError("xi: arguments must be non-negative");
    if (omega == 0.0 && delta_r == 0.0) throw DomainError("xi: omega and delta_r both zero");
    return omega / (omega + delta_r);
}

// ∫_0^1 x^s / (x + d)^2 dx for d > 0.
inline double eta_integral(double s, double d, const quad::Options& opt = RenormOptions{}.quad) {
    if (!(d > 0.0)) throw DomainError("eta_integral: d must be positive");
    auto f = [s, d](double x) {
        const double y = x + d;
        return std::pow(x, s) / (y * y);
    };
    const auto edges = quad::make_edges(0.0, 1.0, quad::decade_points(d));
    std::vector<double> tail(edges.begin() + 1, edges.end());
    return quad::integrate_from_zero(f, tail, s, opt).value;
}

// Right-hand side of the self-consistency condition, F(η).
inline double eta_map(double eta, const BathSpec& bath, const SystemSpec& sys,
                      const quad::Options& opt = RenormOptions{}.quad) {
    if (bath.alpha == 0.0) return 1.0;
    if (!(eta > 0.0)) return 0.0;
    return std::exp(-bath.effective_coupling() * eta_integral(bath.s, eta * sys.delta, opt));
}

inline RenormResult solve_eta(const BathSpec& bath, const SystemSpec& sys, const RenormOptions& opt = {}) {
    validate(bath, sys);
    RenormResult out;
    if (bath.alpha == 0.0) {
        out.eta = 1.0;
        out.delta_r = sys.delta;
        return out;
    }

    double eta = 1.0;
    double prev = eta;
    std::size_t below = 0;
    for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
        const double mapped = eta_map(eta, bath, sys, opt.quad);
        const double residual = std::abs(mapped - eta);
        if (residual < opt.tolerance && eta > opt.collapse_threshold) {
            out.eta = eta;
            out.delta_r = eta * sys.delta;
            out.iterations = it;
            out.residual = residual;
            return out;
        }
        prev = eta;
        eta = (1.0 - opt.damping) * eta + opt.damping * mapped;
        below = eta < opt.collapse_threshold ? below + 1 : 0;
        if (below >= opt.collapse_count) {
            out.eta = 0.0;
            out.delta_r = 0.0;
            out.phase = Phase::Localized;
            out.iterations = it;
            out.residual = eta;
            return out;
        }
    }
    std::ostringstream os;
    os.precision(12);
    os << "solve_eta: no convergence after " << opt.max_iterations << " iterations (last iterates " << prev
       << ", " << eta << ")";
    throw ConvergenceError(os.str());
}

inline Phase classify_phase(const BathSpec& bath, const SystemSpec& sys, const RenormOptions& opt = {}) {
    return solve_eta(bath, sys, opt).phase;
}

// πs(1-s)/sin(πs), continued by its limit s at the Ohmic point.
inline double delocalization_factor(double s) {
    if (std::abs(1.0 - s) < 1e-6) return s;
    return std::numbers::pi * s * (1.0 - s) / std::sin(std::numbers::pi * s);
}

// Post-hoc bound on a converged scaling-limit solution: η^{1-s} <= e^{α ω_s^{1-s} - 1}.
inline bool satisfies_eta_bound(const RenormResult& r, const BathSpec& bath) {
    if (r.phase == Phase::Localized) return true;
    return std::pow(r.eta, 1.0 - bath.s) <= std::exp(bath.effective_coupling() - 1.0) * (1.0 + 1e-9);
}

struct AlphaLOptions {
    double scaling_limit{1e-2}; // below this Δ the closed delocalization condition is used
    double alpha_max{20.0};
    double xtol{1e-6};
    RenormOptions renorm{};
};

namespace detail {

// Smallest effective coupling a at which a·A <= e^{a-1} fails.
inline double delocalization_root(double A, double xtol) {
    if (A < 1.0) throw SearchError("alpha_l: delocalization condition holds for every coupling (A < 1)");
    if (A - 1.0 < 1e-12) return 1.0; // tangency of e^{a-1} and a
    auto h = [A](double a) { return std::exp(a - 1.0) - a * A; };
    return roots::bisect(h, 0.0, 1.0 + std::log(A), xtol * 1e-3);
}

} // namespace detail

// Coupling at which the delocalized solution disappears.
inline double alpha_l(double s, double omega_s, double delta, const AlphaLOptions& opt = {}) {
    BathSpec bath{s, 0.0, omega_s};
    SystemSpec sys{delta};
    validate(bath, sys);

    // Ohmic: η vanishes continuously as α -> 1 for every Δ.
    if (s == 1.0) return 1.0;

    const double scale = std::pow(omega_s, 1.0 - s);
    if (delta < opt.scaling_limit) {
        const double A = delocalization_factor(s) * std::pow(delta, -(1.0 - s));
        const double a = detail::delocalization_root(A, opt.xtol);
        const double al = a / scale;
        if (al > opt.alpha_max) {
            std::ostringstream os;
            os << "alpha_l: boundary " << al << " beyond alpha_max " << opt.alpha_max;
            throw SearchError(os.str());
        }
        return al;
    }

    // From η = 1 the damped map decreases monotonically, so an iterate that has
    // neither converged nor collapsed sits on the delocalized side of (or within
    // critical slowing distance of) the boundary.
    auto delocalized = [&](double alpha) {
        BathSpec b = bath;
        b.alpha = alpha;
        try {
            return solve_eta(b, sys, opt.renorm).phase == Phase::Delocalized;
        } catch (const ConvergenceError&) {
            return true;
        }
    };
    double lo = 0.0;
    double hi = 0.25;
    while (delocalized(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > opt.alpha_max) {
            std::ostringstream os;
            os << "alpha_l: no localization found for alpha <= " << opt.alpha_max << " (s=" << s
               << ", omega_s=" << omega_s << ", delta=" << delta << ")";
            throw SearchError(os.str());
        }
    }
    return roots::bisect_predicate(delocalized, lo, hi, opt.xtol * std::max(1.0, lo));
}

} // namespace sbm
