// Coherent–incoherent (α_c) and underdamped–overdamped (α_c*)
// boundaries, and phase-diagram sweeps together with α_l.

#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "sbm/bath.hpp"
#include "sbm/dynamics.hpp"
#include "sbm/errors.hpp"
#include "sbm/renorm.hpp"
#include "sbm/roots.hpp"
#include "sbm/selfenergy.hpp"

namespace sbm {

// ---------------------------------------------------------------------------
// α_c

// sin(πs)/(2π(1-s)) (Δ_r/ω_s)^{1-s}; 1/2 at s = 1.
inline double alpha_c_scaling(double s, double omega_s, double delta_r) {
    if (!(s > 0.0 && s <= 1.0)) throw ValidationError("s", "s out of range (0, 1]");
    if (!(omega_s > 0.0)) throw ValidationError("omega_s", "omega_s must be positive");
    if (!(delta_r > 0.0)) throw DomainError("alpha_c_scaling: delta_r must be positive");
    if (std::abs(1.0 - s) < 1e-9) return 0.5;
    const double pi = std::numbers::pi;
    return std::sin(pi * s) / (2.0 * pi * (1.0 - s)) * std::pow(delta_r / omega_s, 1.0 - s);
}

struct CriticalOptions {
    double alpha_start{1e-3}; // first trial of the geometric bracket search
    double alpha_max{20.0};
    double xtol{1e-5};
    RenormOptions renorm{};
};

// ηΔ + R(0) at coupling α, or nothing when η has collapsed (or failed to settle).
inline std::optional<double> coherence_gap(double alpha, double s, double omega_s, double delta,
                                           const RenormOptions& opt = {}) {
    const BathSpec bath{s, alpha, omega_s};
    try {
        const auto r = solve_eta(bath, SystemSpec{delta}, opt);
        if (r.phase == Phase::Localized) return std::nullopt;
        return zero_frequency_gap(bath, r);
    } catch (const ConvergenceError&) {
        return std::nullopt;
    }
}

namespace detail {

template <class P>
double boundary_search(P&& holds, const char* what, double s, double omega_s, double delta,
                       const CriticalOptions& opt) {
    double lo = 0.0;
    double hi = opt.alpha_start;
    while (holds(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > opt.alpha_max) {
            std::ostringstream os;
            os << what << ": boundary not found for alpha <= " << opt.alpha_max << " (s=" << s
               << ", omega_s=" << omega_s << ", delta=" << delta << ")";
            throw SearchError(os.str());
        }
    }
    return roots::bisect_predicate(holds, lo, hi, opt.xtol);
}

} // namespace detail

// Bisection in α on the sign of ηΔ + R(0).
inline double alpha_c_numeric(double s, double omega_s, double delta, const CriticalOptions& opt = {}) {
    validate(BathSpec{s, 0.0, omega_s}, SystemSpec{delta});
    auto coherent = [&](double alpha) {
        const auto gap = coherence_gap(alpha, s, omega_s, delta, opt.renorm);
        return gap && *gap > 0.0;
    };
    return detail::boundary_search(coherent, "alpha_c_numeric", s, omega_s, delta, opt);
}

// ½(1 + Δ_r) for an Ohmic bath at a given renormalization.
inline double alpha_c_ohmic_finite(const RenormResult& at_boundary) {
    return 0.5 * (1.0 + at_boundary.delta_r);
}

// Self-consistent α = ½(1 + η(α)Δ) for s = 1.
inline double alpha_c_ohmic_finite(double delta, const RenormOptions& opt = {}, double tol = 1e-10,
                                   std::size_t max_iter = 1000) {
    validate(BathSpec{1.0, 0.0, 1.0}, SystemSpec{delta});
    double alpha = 0.5;
    for (std::size_t i = 0; i < max_iter; ++i) {
        const auto r = solve_eta(BathSpec{1.0, alpha, 1.0}, SystemSpec{delta}, opt);
        const double next = alpha_c_ohmic_finite(r);
        if (std::abs(next - alpha) < tol) return next;
        alpha = next;
    }
    throw ConvergenceError("alpha_c_ohmic_finite: self-consistency did not settle");
}

// ---------------------------------------------------------------------------
// α_c*

struct SpectralPeak {
    double omega{0.0};
    double value{0.0};
};

// Strict interior local maximum of S(ω) on (0, ω_c), refined by Brent's
// method. A candidate counts only when it exceeds both neighbours by the
// relative prominence threshold.
inline std::optional<SpectralPeak> s_finite_peak(const BathSpec& bath, const RenormResult& renorm,
                                                 double prominence = 1e-6, std::size_t points = 160) {
    detail::require_delocalized(renorm, "s_finite_peak");
    const double dr = renorm.delta_r;
    auto grid = roots::logspace(std::min(1e-6, 1e-4 * dr), 0.99, points);
    for (double k : {0.25, 0.5, 0.75, 0.9, 1.1, 1.25, 1.5, 2.0}) grid.push_back(k * dr);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    grid.erase(std::remove_if(grid.begin(), grid.end(), [](double w) { return !(w > 0.0 && w < 1.0); }),
               grid.end());

    std::vector<double> v;
    v.reserve(grid.size());
    for (double w : grid) v.push_back(s_of_omega(w, bath, renorm));

    std::optional<SpectralPeak> best;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        if (!(v[i] > v[i - 1] * (1.0 + prominence) && v[i] > v[i + 1] * (1.0 + prominence))) continue;
        auto neg = [&](double w) { return -s_of_omega(w, bath, renorm); };
        const auto [w, f] = boost::math::tools::brent_find_minima(neg, grid[i - 1], grid[i + 1], 40);
        const SpectralPeak p{w, -f};
        if (!best || p.value > best->value) best = p;
    }
    return best;
}

enum class CrossoverPredicate {
    PoleDamping,  // a real pole ω_0 exists with γ(ω_0) < ω_0
    SpectralPeak, // S(ω) has a strict local maximum at finite ω
};

inline const char* to_string(CrossoverPredicate p) {
    return p == CrossoverPredicate::PoleDamping ? "pole-damping" : "spectral-peak";
}

struct CrossoverOptions {
    CrossoverPredicate predicate{CrossoverPredicate::PoleDamping};
    std::size_t scan_points{16};
    double xtol{1e-5};
    CriticalOptions critical{};
};

inline bool underdamped(double alpha, double s, double omega_s, double delta,
                        const CrossoverOptions& opt = {}) {
    const BathSpec bath{s, alpha, omega_s};
    const SystemSpec sys{delta};
    RenormResult r;
    try {
        r = solve_eta(bath, sys, opt.critical.renorm);
    } catch (const ConvergenceError&) {
        return false;
    }
    if (r.phase == Phase::Localized) return false;
    if (opt.predicate == CrossoverPredicate::SpectralPeak) return s_finite_peak(bath, r).has_value();
    OmegaZeroOptions zopt;
    zopt.scan_points = 96;
    const auto w0 = omega0_solve(bath, sys, r, zopt);
    return w0 && gamma_of(*w0, bath, r.delta_r) < *w0;
}

// Bisection on the underdamped predicate inside (0, α_c), after a coarse scan
// confirms the predicate switches exactly once.
inline double alpha_c_star_numeric(double s, double omega_s, double delta, const CrossoverOptions& opt = {}) {
    validate(BathSpec{s, 0.0, omega_s}, SystemSpec{delta});
    const double ac = alpha_c_numeric(s, omega_s, delta, opt.critical);
    auto holds = [&](double a) { return underdamped(a, s, omega_s, delta, opt); };

    const std::size_t n = std::max<std::size_t>(opt.scan_points, 3);
    std::vector<double> alphas;
    std::vector<bool> flags;
    for (std::size_t i = 1; i <= n; ++i) {
        alphas.push_back(ac * double(i) / double(n + 1));
        flags.push_back(holds(alphas.back()));
    }
    std::size_t switches = 0;
    for (std::size_t i = 0; i + 1 < flags.size(); ++i) switches += flags[i] != flags[i + 1];
    if (switches > 1 || (switches == 1 && !flags.front())) {
        std::ostringstream os;
        os << "alpha_c_star_numeric: underdamped predicate not monotone in alpha; scan:";
        for (std::size_t i = 0; i < flags.size(); ++i) os << " " << alphas[i] << (flags[i] ? ":U" : ":O");
        throw AmbiguityError(os.str());
    }
    double lo = 0.0, hi = ac;
    if (!flags.front()) {
        hi = alphas.front();
    } else {
        for (std::size_t i = 0; i < flags.size(); ++i) {
            if (flags[i]) lo = alphas[i];
            else {
                hi = alphas[i];
                break;
            }
        }
    }
    return roots::bisect_predicate(holds, lo, hi, opt.xtol);
}

struct OhmicCrossover {
    double x{0.0};     // ω_p/Δ_r at the merge point
    double alpha{0.0};
};

// Ohmic scaling-limit crossover. The peak condition
//   x - 1 + (1 - x ln x + x)/π = 0,   x = ω_p/Δ_r,
// is paired with the critical-damping condition γ(ω_p) = ω_p, i.e.
// 2πα/(1 + x)^2 = 1.
inline OhmicCrossover alpha_c_star_ohmic_scaling() {
    auto h = [](double x) {
        return x - 1.0 + (1.0 + x - x * std::log(x)) / std::numbers::pi;
    };
    const auto grid = roots::linspace(1e-9, 10.0, 2001);
    std::vector<double> values;
    values.reserve(grid.size());
    for (double x : grid) values.push_back(h(x));
    const auto brackets = roots::sign_changes(grid, values);
    if (brackets.size() != 1) {
        std::ostringstream os;
        os << "alpha_c_star_ohmic_scaling: expected one root in (0, 10), found " << brackets.size();
        throw SearchError(os.str());
    }
    OhmicCrossover out;
    out.x = roots::bisect(h, brackets.front().first, brackets.front().second, 1e-15);
    out.alpha = (1.0 + out.x) * (1.0 + out.x) / (2.0 * std::numbers::pi);
    return out;
}

// ---------------------------------------------------------------------------
// Phase diagram

struct PhasePoint {
    double delta{0.0};
    std::optional<double> alpha_l;
    std::optional<double> alpha_c;
    std::optional<double> alpha_c_star;
    std::vector<std::string> failures;
};

struct PowerLawFit {
    std::string boundary;
    double exponent{std::numeric_limits<double>::quiet_NaN()};
    double prefactor{std::numeric_limits<double>::quiet_NaN()};
    double residual{std::numeric_limits<double>::quiet_NaN()}; // rms of log-residuals
    std::size_t points{0};
};

struct PhaseDiagram {
    double s{1.0};
    double omega_s{kDefaultOmegaS};
    std::vector<PhasePoint> points;
    std::vector<PowerLawFit> fits;
};

struct PhaseDiagramOptions {
    double fit_below{1e-2};
    bool parallel{true};
    AlphaLOptions alpha_l{};
    CrossoverOptions crossover{};
};

// n_per_decade log-spaced points on [lo, hi].
inline std::vector<double> delta_grid(double lo, double hi, std::size_t n_per_decade = 24) {
    if (!(lo > 0.0 && hi > lo && hi < 1.0)) throw ValidationError("delta", "delta grid must satisfy 0 < lo < hi < 1");
    const auto n = std::size_t(std::ceil(std::log10(hi / lo) * double(n_per_decade))) + 1;
    return roots::logspace(lo, hi, std::max<std::size_t>(n, 2));
}

// Least-squares fit of ln y = ln A + p ln x.
inline PowerLawFit fit_power_law(const std::string& name, const std::vector<double>& x, const std::vector<double>& y) {
    PowerLawFit f;
    f.boundary = name;
    f.points = x.size();
    if (x.size() < 2) return f;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    f.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - f.exponent * sx) / n;
    f.prefactor = std::exp(intercept);
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = std::log(y[i]) - intercept - f.exponent * std::log(x[i]);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

inline PhasePoint phase_point(double s, double omega_s, double delta, const PhaseDiagramOptions& opt = {}) {
    PhasePoint p;
    p.delta = delta;
    auto attempt = [&](std::optional<double>& slot, const char* name, auto&& fn) {
        try {
            slot = fn();
        } catch (const std::exception& e) {
            p.failures.push_back(std::string(name) + ": " + e.what());
        }
    };
    attempt(p.alpha_l, "alpha_l", [&] { return alpha_l(s, omega_s, delta, opt.alpha_l); });
    attempt(p.alpha_c, "alpha_c", [&] { return alpha_c_numeric(s, omega_s, delta, opt.crossover.critical); });
    attempt(p.alpha_c_star, "alpha_c_star", [&] { return alpha_c_star_numeric(s, omega_s, delta, opt.crossover); });
    return p;
}

inline PhaseDiagram phase_diagram(double s, double omega_s, const std::vector<double>& deltas,
                                  const PhaseDiagramOptions& opt = {}) {
    validate(BathSpec{s, 0.0, omega_s}, SystemSpec{deltas.empty() ? 0.5 : deltas.front()});
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        validate(BathSpec{s, 0.0, omega_s}, SystemSpec{deltas[i]});
        if (i > 0 && !(deltas[i] > deltas[i - 1]))
            throw ValidationError("delta", "delta grid must be strictly ascending");
    }

    PhaseDiagram out;
    out.s = s;
    out.omega_s = omega_s;
    if (opt.parallel) {
        std::vector<std::future<PhasePoint>> jobs;
        jobs.reserve(deltas.size());
        for (double d : deltas)
            jobs.push_back(std::async(std::launch::async, [=, &opt] { return phase_point(s, omega_s, d, opt); }));
        for (auto& j : jobs) out.points.push_back(j.get());
    } else {
        for (double d : deltas) out.points.push_back(phase_point(s, omega_s, d, opt));
    }

    auto fit = [&](const char* name, std::optional<double> PhasePoint::*field) {
        std::vector<double> x, y;
        for (const auto& p : out.points)
            if (p.delta < opt.fit_below && (p.*field) && *(p.*field) > 0.0) {
                x.push_back(p.delta);
                y.push_back(*(p.*field));
            }
        out.fits.push_back(fit_power_law(name, x, y));
    };
    fit("alpha_l", &PhasePoint::alpha_l);
    fit("alpha_c", &PhasePoint::alpha_c);
    fit("alpha_c_star", &PhasePoint::alpha_c_star);
    return out;
}

} // namespace sbm
