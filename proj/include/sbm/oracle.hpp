// Discretized-bath cross-check of the one-excitation dynamics
//
// The bath is replaced by N modes, and the one-excitation block spanned by
// |s2,{0}> and |s1,1_k> is diagonalized exactly. Eigen-energies E solve
//     E - Δ_r/2 - Σ_k V_k^2/(E + Δ_r/2 - ω_k) = 0,
// with weights x(E) = [1 + Σ_k V_k^2/(E + Δ_r/2 - ω_k)^2]^{-1/2}, y_k = V_k x/(E + Δ_r/2 - ω_k),
// and P(t) = Σ_E x(E)^2 cos((E + Δ_r/2) t).
// Internally roots are found in ν = E + Δ_r/2, where the poles sit at ω_k.

#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

#include "sbm/bath.hpp"
#include "sbm/errors.hpp"
#include "sbm/renorm.hpp"
#include "sbm/roots.hpp"

namespace sbm {

struct BathMode {
    double omega{0.0};
    double g{0.0};
};

struct DiscreteBath {
    std::vector<BathMode> modes;
    std::vector<double> v; // V_k = Δ_r g_k/(ω_k + Δ_r)
    RenormResult renorm;
    double omega_min{1e-6};
};

struct EigenLevel {
    double e{0.0};
    double x{0.0};
    std::vector<double> y;
};

struct OracleOptions {
    double omega_min{1e-6};
    double xtol{1e-13};
    double bracket_shrink{1e-15};
    bool keep_components{true}; // store y_k(E) for every level
    unsigned threads{0};        // 0: hardware concurrency
};

// Log-spaced bins on [ω_min, ω_c]; g_k^2 is the exact J-weight of the bin and
// ω_k its J-weighted mean frequency.
inline DiscreteBath discretize(const BathSpec& bath, const RenormResult& renorm, std::size_t n_modes,
                               const OracleOptions& opt = {}) {
    if (n_modes < 2) throw ValidationError("n_modes", "n_modes must be at least 2");
    if (renorm.phase != Phase::Delocalized || !(renorm.delta_r > 0.0))
        throw DomainError("discretize: requires the delocalized phase");
    if (!(opt.omega_min > 0.0 && opt.omega_min < bath.omega_c))
        throw ValidationError("omega_min", "omega_min must lie in (0, omega_c)");

    DiscreteBath db;
    db.renorm = renorm;
    db.omega_min = opt.omega_min;
    const auto edges = roots::logspace(opt.omega_min, bath.omega_c, n_modes + 1);
    const double s = bath.s;
    const double dr = renorm.delta_r;
    for (std::size_t k = 0; k < n_modes; ++k) {
        const double a = edges[k], b = edges[k + 1];
        const double w = (s + 1.0) / (s + 2.0) * (std::pow(b, s + 2.0) - std::pow(a, s + 2.0)) /
                         (std::pow(b, s + 1.0) - std::pow(a, s + 1.0));
        const double g = std::sqrt(spectral_weight(a, b, bath));
        db.modes.push_back({w, g});
        db.v.push_back(dr * g / (w + dr));
    }
    return db;
}

namespace detail {

struct LevelEquation {
    std::vector<double> poles; // coupled ω_k, ascending
    std::vector<double> v2;
    double delta_r;

    // ν - Δ_r - Σ V^2/(ν - ω_k)
    double operator()(double nu) const {
        double sum = 0.0;
        for (std::size_t k = 0; k < poles.size(); ++k) sum += v2[k] / (nu - poles[k]);
        return nu - delta_r - sum;
    }

    double weight_sum(double nu) const {
        double sum = 0.0;
        for (std::size_t k = 0; k < poles.size(); ++k) {
            const double d = nu - poles[k];
            sum += v2[k] / (d * d);
        }
        return sum;
    }
};

inline double refine_root(const LevelEquation& eq, double lo, double hi, double xtol) {
    const double flo = eq(lo), fhi = eq(hi);
    // A root closer to a pole than the shrunk bracket end: keep the end nearest to it.
    if (flo > 0.0) return lo;
    if (fhi < 0.0) return hi;
    // Machine resolution where it is finer than xtol; the poles can sit closer together than xtol.
    auto tol = [xtol](double a, double b) {
        const double rel = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
        return std::abs(b - a) <= std::min(xtol, std::max(rel, std::numeric_limits<double>::min()));
    };
    std::uintmax_t max_iter = 2100;
    auto [a, b] = boost::math::tools::bisect(eq, lo, hi, tol, max_iter);
    return 0.5 * (a + b);
}

} // namespace detail

// All N+1 levels: one inside each interval between consecutive coupled poles,
// one below the lowest and one above the highest. Modes with V_k = 0 decouple
// and contribute a bare level at E = ω_k - Δ_r/2 with x = 0.
inline std::vector<EigenLevel> solve_levels(const DiscreteBath& db, const OracleOptions& opt = {}) {
    if (db.modes.empty()) throw DomainError("solve_levels: no modes");
    const double dr = db.renorm.delta_r;
    const std::size_t n = db.modes.size();

    detail::LevelEquation eq{{}, {}, dr};
    std::vector<std::size_t> coupled, decoupled;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0 && !(db.modes[k].omega > db.modes[k - 1].omega))
            throw DomainError("solve_levels: mode frequencies must be strictly ascending");
        if (db.v[k] != 0.0) {
            coupled.push_back(k);
            eq.poles.push_back(db.modes[k].omega);
            eq.v2.push_back(db.v[k] * db.v[k]);
        } else {
            decoupled.push_back(k);
        }
    }

    // Brackets in ν.
    std::vector<std::pair<double, double>> brackets;
    if (eq.poles.empty()) {
        brackets.emplace_back(dr, dr);
    } else {
        auto shrink = [&](double p) { return opt.bracket_shrink * std::max(std::abs(p), 1e-300); };
        const double first = eq.poles.front(), last = eq.poles.back();
        double step = std::max(1.0, std::abs(first));
        double lo = first - step;
        while (eq(lo) > 0.0) {
            step *= 2.0;
            lo = first - step;
            if (step > 1e300) throw ConvergenceError("solve_levels: lower bracket expansion failed");
        }
        brackets.emplace_back(lo, first - shrink(first));
        for (std::size_t i = 0; i + 1 < eq.poles.size(); ++i)
            brackets.emplace_back(eq.poles[i] + shrink(eq.poles[i]), eq.poles[i + 1] - shrink(eq.poles[i + 1]));
        step = std::max(1.0, std::abs(last));
        double hi = last + step;
        while (eq(hi) < 0.0) {
            step *= 2.0;
            hi = last + step;
            if (step > 1e300) throw ConvergenceError("solve_levels: upper bracket expansion failed");
        }
        brackets.emplace_back(last + shrink(last), hi);
    }

    std::vector<EigenLevel> levels(brackets.size());
    auto solve_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto [lo, hi] = brackets[i];
            const double nu = lo == hi ? lo : detail::refine_root(eq, lo, hi, opt.xtol);
            EigenLevel& lev = levels[i];
            lev.e = nu - 0.5 * dr;
            const double x = 1.0 / std::sqrt(1.0 + eq.weight_sum(nu));
            lev.x = x;
            if (opt.keep_components) {
                lev.y.assign(n, 0.0);
                for (std::size_t j = 0; j < coupled.size(); ++j)
                    lev.y[coupled[j]] = db.v[coupled[j]] * x / (nu - eq.poles[j]);
            }
        }
    };
    const unsigned hw = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    const std::size_t chunks = std::min<std::size_t>(hw, brackets.size());
    if (chunks <= 1) {
        solve_range(0, brackets.size());
    } else {
        std::vector<std::future<void>> jobs;
        const std::size_t per = (brackets.size() + chunks - 1) / chunks;
        for (std::size_t b = 0; b < brackets.size(); b += per)
            jobs.push_back(std::async(std::launch::async, solve_range, b, std::min(b + per, brackets.size())));
        for (auto& j : jobs) j.get();
    }

    // Interlacing check on the coupled poles.
    for (std::size_t i = 0; i + 1 < levels.size() && !eq.poles.empty(); ++i) {
        const double nu = levels[i].e + 0.5 * dr;
        const bool ok = (i == 0) ? nu < eq.poles.front() : (nu > eq.poles[i - 1] && nu < eq.poles[i]);
        if (!ok) {
            std::ostringstream os;
            os << "solve_levels: level " << i << " at E=" << levels[i].e << " violates interlacing";
            throw ConvergenceError(os.str());
        }
    }

    for (std::size_t k : decoupled) {
        EigenLevel lev;
        lev.e = db.modes[k].omega - 0.5 * dr;
        lev.x = 0.0;
        if (opt.keep_components) {
            lev.y.assign(n, 0.0);
            lev.y[k] = 1.0;
        }
        levels.push_back(std::move(lev));
    }
    std::sort(levels.begin(), levels.end(), [](const EigenLevel& a, const EigenLevel& b) { return a.e < b.e; });

    if (levels.size() != n + 1) {
        std::ostringstream os;
        os << "solve_levels: found " << levels.size() << " levels for " << n << " modes";
        throw ConvergenceError(os.str());
    }
    return levels;
}

inline double completeness(const std::vector<EigenLevel>& levels) {
    double sum = 0.0;
    for (const auto& l : levels) sum += l.x * l.x;
    return sum;
}

inline double p_of_t_discrete(const std::vector<EigenLevel>& levels, const RenormResult& renorm, double t) {
    if (t < 0.0) throw DomainError("p_of_t_discrete: t must be non-negative");
    double sum = 0.0;
    for (const auto& l : levels) sum += l.x * l.x * std::cos((l.e + 0.5 * renorm.delta_r) * t);
    return sum;
}

// Σ_k V_k^2/(ω - ω_k): discrete counterpart of R(ω).
inline double discrete_shift(const DiscreteBath& db, double omega) {
    double sum = 0.0;
    for (std::size_t k = 0; k < db.modes.size(); ++k) sum += db.v[k] * db.v[k] / (omega - db.modes[k].omega);
    return sum;
}

// Discrete shift at the midpoint of the two modes bracketing ω, where the pole
// sum approximates the principal value symmetrically. Returns (midpoint, shift).
inline std::pair<double, double> discrete_shift_midpoint(const DiscreteBath& db, double omega) {
    const auto& m = db.modes;
    if (!(omega > m.front().omega && omega < m.back().omega))
        throw DomainError("discrete_shift_midpoint: omega outside the discretized band");
    const auto it = std::upper_bound(m.begin(), m.end(), omega,
                                     [](double w, const BathMode& mode) { return w < mode.omega; });
    const double mid = 0.5 * ((it - 1)->omega + it->omega);
    return {mid, discrete_shift(db, mid)};
}

inline void write_levels_csv(std::ostream& os, const std::vector<EigenLevel>& levels) {
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << "E,x2\n";
    os.setf(std::ios::scientific, std::ios::floatfield);
    os.precision(8);
    for (const auto& l : levels) os << l.e << ',' << l.x * l.x << '\n';
    os.flags(flags);
    os.precision(prec);
}

} // namespace sbm
