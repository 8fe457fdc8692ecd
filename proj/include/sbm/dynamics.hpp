// Correlation functions and susceptibilities of the dressed two-level system
//
// Everything here derives from the one-boson self-energy R(ω) ∓ iγ(ω). With
// Δ_r = ηΔ the pinned conventions are
//
//   C(ω)  = (1/π) γ(ω) / [(ω - Δ_r - R(ω))^2 + γ(ω)^2],   C(t) = ∫_0^∞ C(ω) cos(ωt) dω
//   χ''(ω) = π C(|ω|),   S(ω) = χ''(ω)/J(ω),   χ_0 = ½ ∫_0^∞ C(ω)/ω dω
//
// so that the sum rule reads C(t=0) = 1 and the Shiba relation
// lim C(ω)/((2χ_0)^2 J(ω)) = 1.

#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sbm/bath.hpp"
#include "sbm/errors.hpp"
#include "sbm/quadrature.hpp"
#include "sbm/renorm.hpp"
#include "sbm/roots.hpp"
#include "sbm/selfenergy.hpp"

namespace sbm {

enum class Coherence { Coherent, Incoherent };

inline const char* to_string(Coherence c) {
    return c == Coherence::Coherent ? "coherent" : "incoherent";
}

struct DynamicsResult {
    std::optional<double> omega0;  // pole of ω - Δ_r - R(ω) on (0, ω_c)
    double gamma_decay{0.0};       // γ(Δ_r) = α π ω_s^{1-s} Δ_r^s / 2
    Coherence coherence{Coherence::Incoherent};
    double zero_frequency_gap{0.0}; // Δ_r + R(0); a real pole requires it to be positive
    RenormResult renorm;
};

enum class CurveKind { ChiIm, SOmega, COmega, RCurve, GammaCurve };

inline const char* to_string(CurveKind k) {
    switch (k) {
    case CurveKind::ChiIm: return "chi_im";
    case CurveKind::SOmega: return "S_omega";
    case CurveKind::COmega: return "C_omega";
    case CurveKind::RCurve: return "R_omega";
    case CurveKind::GammaCurve: return "gamma_omega";
    }
    return "unknown";
}

struct SpectralCurve {
    std::vector<double> omegas;
    std::vector<double> values;
    CurveKind kind{CurveKind::COmega};
};

struct OmegaZeroOptions {
    std::size_t scan_points{256};
    double upper{1.0 - 1e-9};
    double xtol{1e-15};
};

namespace detail {

inline void require_delocalized(const RenormResult& r, const char* where) {
    if (r.phase != Phase::Delocalized || !(r.delta_r > 0.0))
        throw DomainError(std::string(where) + ": requires the delocalized phase (eta > 0)");
}

} // namespace detail

// Δ_r + R(0).
inline double zero_frequency_gap(const BathSpec& bath, const RenormResult& renorm) {
    detail::require_delocalized(renorm, "zero_frequency_gap");
    return renorm.delta_r + r_quadrature(0.0, bath, renorm.delta_r);
}

// Decay rate of the pole approximation, γ(Δ_r).
inline double pole_decay_rate(const BathSpec& bath, const RenormResult& renorm) {
    detail::require_delocalized(renorm, "pole_decay_rate");
    return gamma_of(renorm.delta_r, bath, renorm.delta_r);
}

// Real root of ω - Δ_r - R(ω) on (0, ω_c), or nothing when the pole has left the
// positive axis. More than one root on the scan grid is an AmbiguityError.
inline std::optional<double> omega0_solve(const BathSpec& bath, const SystemSpec& sys, const RenormResult& renorm,
                                          const OmegaZeroOptions& opt = {}) {
    (void)sys;
    detail::require_delocalized(renorm, "omega0_solve");
    const double dr = renorm.delta_r;
    auto f = [&](double w) { return w - dr - r_quadrature(w, bath, dr); };

    const double f0 = -(dr + r_quadrature(0.0, bath, dr));
    if (!(f0 < 0.0)) return std::nullopt;

    std::vector<double> grid{0.0};
    const double lo = std::min(1e-8, 1e-6 * dr);
    for (double w : roots::logspace(lo, opt.upper, opt.scan_points)) grid.push_back(w);
    std::vector<double> values;
    values.reserve(grid.size());
    values.push_back(f0);
    for (std::size_t i = 1; i < grid.size(); ++i) values.push_back(f(grid[i]));

    const auto brackets = roots::sign_changes(grid, values);
    if (brackets.empty()) return std::nullopt;
    if (brackets.size() > 1) {
        std::ostringstream os;
        os << "omega0_solve: " << brackets.size() << " sign changes of w - delta_r - R(w):";
        for (const auto& [a, b] : brackets) os << " [" << a << ", " << b << "]";
        throw AmbiguityError(os.str());
    }
    auto g = [&](double w) { return w == 0.0 ? f0 : f(w); };
    return roots::bisect(g, brackets.front().first, brackets.front().second,
                         std::max(opt.xtol, 1e-15 * brackets.front().second));
}

inline DynamicsResult analyze(const BathSpec& bath, const SystemSpec& sys, const RenormResult& renorm,
                              const OmegaZeroOptions& opt = {}) {
    detail::require_delocalized(renorm, "analyze");
    DynamicsResult out;
    out.renorm = renorm;
    out.gamma_decay = pole_decay_rate(bath, renorm);
    out.zero_frequency_gap = zero_frequency_gap(bath, renorm);
    out.omega0 = omega0_solve(bath, sys, renorm, opt);
    out.coherence = (out.omega0 && *out.omega0 > 0.0) ? Coherence::Coherent : Coherence::Incoherent;
    return out;
}

// ---------------------------------------------------------------------------
// Spectral functions

inline double correlation_spectrum(double omega, const BathSpec& bath, const RenormResult& renorm) {
    detail::require_delocalized(renorm, "correlation_spectrum");
    if (omega < 0.0) throw DomainError("correlation_spectrum: omega must be non-negative");
    const double dr = renorm.delta_r;
    const double g = gamma_of(omega, bath, dr);
    if (g == 0.0) return 0.0;
    const double shift = omega - dr - r_quadrature(omega, bath, dr);
    return g / (std::numbers::pi * (shift * shift + g * g));
}

inline double chi_im(double omega, const BathSpec& bath, const RenormResult& renorm) {
    detail::require_delocalized(renorm, "chi_im");
    const double dr = renorm.delta_r;
    if (omega > 0.0) {
        const double g = gamma_of(omega, bath, dr);
        if (g == 0.0) return 0.0;
        const double shift = omega - dr - r_quadrature(omega, bath, dr);
        return g / (shift * shift + g * g);
    }
    if (omega < 0.0) {
        const double g = gamma_of(-omega, bath, dr);
        if (g == 0.0) return 0.0;
        const double shift = omega + dr + r_quadrature(-omega, bath, dr);
        return g / (shift * shift + g * g);
    }
    return 0.0;
}

// S(ω) = χ''(ω)/J(ω); J cancels against γ analytically.
inline double s_of_omega(double omega, const BathSpec& bath, const RenormResult& renorm) {
    detail::require_delocalized(renorm, "s_of_omega");
    if (!(omega > 0.0 && omega < bath.omega_c))
        throw DomainError("s_of_omega: requires 0 < omega < omega_c (J vanishes outside)");
    if (bath.alpha == 0.0) throw DomainError("s_of_omega: J vanishes identically at alpha = 0");
    const double dr = renorm.delta_r;
    const double ratio = dr / (omega + dr);
    const double g = gamma_of(omega, bath, dr);
    const double shift = omega - dr - r_quadrature(omega, bath, dr);
    return std::numbers::pi * ratio * ratio / (shift * shift + g * g);
}

// lim_{ω→0} S(ω) = π/(Δ_r + R(0))^2.
inline double s_zero_limit(const BathSpec& bath, const RenormResult& renorm) {
    const double gap = zero_frequency_gap(bath, renorm);
    return std::numbers::pi / (gap * gap);
}

// lim_{ω→0} C(ω)/J(ω) = 1/(Δ_r + R(0))^2.
inline double c_over_j_zero_limit(const BathSpec& bath, const RenormResult& renorm) {
    const double gap = zero_frequency_gap(bath, renorm);
    return 1.0 / (gap * gap);
}

namespace detail {

inline quad::Options spectral_quad_options() { return {1e-13, 1e-10, 30}; }

// Break points resolving the features of C(ω): the pole and its width, Δ_r, and
// one point per decade below Δ_r down to the head panel.
inline std::vector<double> spectral_edges(const BathSpec& bath, const RenormResult& renorm) {
    const double dr = renorm.delta_r;
    std::vector<double> pts = quad::decade_points(1e-3 * dr);
    pts.push_back(0.5 * dr);
    pts.push_back(2.0 * dr);
    OmegaZeroOptions opt;
    std::optional<double> w0;
    try {
        w0 = omega0_solve(bath, SystemSpec{}, renorm, opt);
    } catch (const AmbiguityError&) {
        w0.reset();
    }
    if (w0) {
        const double width = std::max(gamma_of(*w0, bath, dr), 1e-12);
        for (double k : {-100.0, -10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0, 100.0}) pts.push_back(*w0 + k * width);
        pts.push_back(0.5 * *w0);
        pts.push_back(2.0 * *w0);
    }
    auto edges = quad::make_edges(0.0, bath.omega_c, pts);
    edges.erase(edges.begin());
    return edges;
}

} // namespace detail

// ∫_0^∞ C(ω) dω.
inline double sum_rule(const BathSpec& bath, const RenormResult& renorm) {
    detail::require_delocalized(renorm, "sum_rule");
    if (bath.alpha == 0.0) return 1.0; // C(ω) -> δ(ω - Δ)
    auto c = [&](double w) { return correlation_spectrum(w, bath, renorm); };
    return quad::integrate_from_zero(c, detail::spectral_edges(bath, renorm), bath.s,
                                     detail::spectral_quad_options())
        .value;
}

// χ_0 = ½ ∫_0^∞ C(ω)/ω dω.
inline double chi0(const BathSpec& bath, const RenormResult& renorm) {
    detail::require_delocalized(renorm, "chi0");
    if (bath.alpha == 0.0) return 0.5 / renorm.delta_r;
    const double gap = zero_frequency_gap(bath, renorm);
    if (!(gap > 0.0)) {
        std::ostringstream os;
        os << "chi0: delta_r + R(0) = " << gap << " <= 0; C(w)/w is not integrable at the coherence boundary";
        throw DomainError(os.str());
    }
    auto c = [&](double w) { return correlation_spectrum(w, bath, renorm) / w; };
    return 0.5 * quad::integrate_from_zero(c, detail::spectral_edges(bath, renorm), bath.s,
                                           detail::spectral_quad_options())
                     .value;
}

// [lim C(ω)/J(ω)] / (2χ_0)^2.
inline double shiba_ratio(const BathSpec& bath, const RenormResult& renorm) {
    const double x = chi0(bath, renorm);
    return c_over_j_zero_limit(bath, renorm) / (4.0 * x * x);
}

// ---------------------------------------------------------------------------
// Time domain

struct TimeValue {
    double value{0.0};
    double error{0.0};
    bool converged{true};
};

// Cosine transform of C(ω) for 0 <= t <= t_max. C(ω) is tabulated once on
// 31-point Kronrod panels that resolve the spectrum and are at most half a
// period of cos(ω t_max) wide; the embedded Gauss rule gives the error.
class CorrelationTransform {
public:
    CorrelationTransform(const BathSpec& bath, const RenormResult& renorm, double t_max, double tolerance = 1e-6)
        : tolerance_(tolerance), t_max_(t_max) {
        detail::require_delocalized(renorm, "CorrelationTransform");
        if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw DomainError("CorrelationTransform: bad t_max");
        if (bath.alpha == 0.0) {
            free_frequency_ = renorm.delta_r;
            return;
        }
        const double h_max = t_max > 0.0 ? std::numbers::pi / t_max : bath.omega_c;
        auto edges = detail::spectral_edges(bath, renorm);
        head_ = std::min(edges.front(), 0.5 * h_max);

        std::vector<double> cut{head_};
        for (double e : edges)
            if (e > head_) cut.push_back(e);
        std::vector<double> fine{cut.front()};
        for (std::size_t i = 0; i + 1 < cut.size(); ++i) {
            const double a = cut[i], b = cut[i + 1];
            const auto n = std::size_t(std::ceil((b - a) / h_max));
            for (std::size_t k = 1; k <= n; ++k) fine.push_back(a + (b - a) * double(k) / double(n));
        }
        fine.back() = cut.back();

        const double p = 1.0 / bath.s;
        add_panel(0.0, 1.0, true, p); // head, in the mapped variable x = head u^{1/s}
        for (std::size_t i = 0; i + 1 < fine.size(); ++i) add_panel(fine[i], fine[i + 1], false, p);

        // Fill C(ω) at every node; the evaluations are independent.
        auto fill = [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                const double v = correlation_spectrum(nodes_[i].omega, bath, renorm);
                nodes_[i].kronrod *= v;
                nodes_[i].gauss *= v;
            }
        };
        const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
        const std::size_t per = (nodes_.size() + workers - 1) / workers;
        std::vector<std::future<void>> jobs;
        for (std::size_t b = 0; b < nodes_.size(); b += per)
            jobs.push_back(std::async(std::launch::async, fill, b, std::min(b + per, nodes_.size())));
        for (auto& j : jobs) j.get();
    }

    TimeValue operator()(double t) const {
        if (t < 0.0) throw DomainError("CorrelationTransform: t must be non-negative");
        if (free_frequency_) return {std::cos(*free_frequency_ * t), 0.0, true};
        double kronrod = 0.0, gauss = 0.0;
        for (const auto& n : nodes_) {
            const double cw = std::cos(n.omega * t);
            kronrod += n.kronrod * cw;
            gauss += n.gauss * cw;
        }
        TimeValue out{kronrod, std::abs(kronrod - gauss), true};
        out.converged = t <= t_max_ * (1.0 + 1e-12) && out.error <= tolerance_;
        return out;
    }

    double t_max() const noexcept { return t_max_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }

private:
    struct Node {
        double omega;   // physical frequency
        double kronrod; // Kronrod weight × C(ω) × Jacobian
        double gauss;   // embedded Gauss weight × C(ω) × Jacobian (0 off the Gauss nodes)
    };

    // Nodes carry weight × Jacobian until the constructor multiplies in C(ω).
    void add_panel(double a, double b, bool mapped, double p) {
        using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
        using G = boost::math::quadrature::gauss<double, 15>;
        const auto& xk = GK::abscissa();
        const auto& wk = GK::weights();
        const auto& wg = G::weights();
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        auto push = [&](double x, double w_k, double w_g) {
            const double u = mid + half * x;
            double phys = u, jac = half;
            if (mapped) {
                phys = head_ * std::pow(u, p);
                jac *= head_ * p * std::pow(u, p - 1.0);
            }
            nodes_.push_back({phys, jac * w_k, jac * w_g});
        };
        // Kronrod abscissae: even indices coincide with the Gauss nodes.
        for (std::size_t i = 0; i < xk.size(); ++i) {
            const double wgi = (i % 2 == 0) ? wg[i / 2] : 0.0;
            if (xk[i] == 0.0) {
                push(0.0, wk[i], wgi);
            } else {
                push(xk[i], wk[i], wgi);
                push(-xk[i], wk[i], wgi);
            }
        }
    }

    std::vector<Node> nodes_;
    std::optional<double> free_frequency_;
    double head_{0.0};
    double tolerance_;
    double t_max_;
};

inline TimeValue c_of_t_estimate(double t, const BathSpec& bath, const RenormResult& renorm) {
    if (t < 0.0) throw DomainError("c_of_t: t must be non-negative");
    return CorrelationTransform(bath, renorm, t)(t);
}

inline double c_of_t(double t, const BathSpec& bath, const RenormResult& renorm) {
    return c_of_t_estimate(t, bath, renorm).value;
}

// P(t): damped oscillation about the pole where a real ω_0 exists, spectral
// quadrature of C(ω) otherwise.
inline double p_of_t(double t, const DynamicsResult& dyn, const BathSpec& bath) {
    if (t < 0.0) throw DomainError("p_of_t: t must be non-negative");
    if (dyn.omega0) return std::cos(*dyn.omega0 * t) * std::exp(-dyn.gamma_decay * t);
    return c_of_t(t, bath, dyn.renorm);
}

// ---------------------------------------------------------------------------
// Curves

inline double curve_value(CurveKind kind, double omega, const BathSpec& bath, const RenormResult& renorm) {
    switch (kind) {
    case CurveKind::ChiIm: return chi_im(omega, bath, renorm);
    case CurveKind::SOmega: return s_of_omega(omega, bath, renorm);
    case CurveKind::COmega: return correlation_spectrum(omega, bath, renorm);
    case CurveKind::RCurve: return r_quadrature(omega, bath, renorm.delta_r);
    case CurveKind::GammaCurve: return gamma_of(omega, bath, renorm.delta_r);
    }
    return 0.0;
}

inline SpectralCurve sample_curve(CurveKind kind, const std::vector<double>& omegas, const BathSpec& bath,
                                  const RenormResult& renorm) {
    for (std::size_t i = 1; i < omegas.size(); ++i)
        if (!(omegas[i] > omegas[i - 1])) throw DomainError("sample_curve: grid must be strictly ascending");
    SpectralCurve out;
    out.kind = kind;
    out.omegas = omegas;
    out.values.reserve(omegas.size());
    for (double w : omegas) out.values.push_back(curve_value(kind, w, bath, renorm));
    return out;
}

} // namespace sbm
