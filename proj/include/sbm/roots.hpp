// Bracketed root finding helpers

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <utility>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "sbm/errors.hpp"

namespace sbm::roots {

// Root of f on [lo, hi] by bisection until the bracket is narrower than xtol.
// f(lo) and f(hi) must differ in sign.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol, std::uintmax_t max_iter = 200) {
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi)) {
        std::ostringstream os;
        os << "bisect: no sign change on [" << lo << ", " << hi << "] (f = " << flo << ", " << fhi << ")";
        throw SearchError(os.str());
    }
    auto tol = [xtol](double a, double b) { return std::abs(b - a) <= xtol; };
    auto [a, b] = boost::math::tools::bisect(f, lo, hi, tol, max_iter);
    return 0.5 * (a + b);
}

// Boundary of a predicate that holds at lo and fails at hi.
template <class P>
double bisect_predicate(P&& holds, double lo, double hi, double xtol, std::uintmax_t max_iter = 200) {
    for (std::uintmax_t i = 0; i < max_iter && hi - lo > xtol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (holds(mid)) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Sub-intervals [grid[i], grid[i+1]] on which f changes sign.
inline std::vector<std::pair<double, double>> sign_changes(const std::vector<double>& grid,
                                                           const std::vector<double>& values) {
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (values[i] == 0.0 || std::signbit(values[i]) != std::signbit(values[i + 1]))
            out.emplace_back(grid[i], grid[i + 1]);
    }
    return out;
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = a;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * double(i) / double(n - 1);
    return v;
}

inline std::vector<double> logspace(double a, double b, std::size_t n) {
    auto v = linspace(std::log(a), std::log(b), n);
    for (auto& x : v) x = std::exp(x);
    if (!v.empty()) {
        v.front() = a;
        v.back() = b;
    }
    return v;
}

} // namespace sbm::roots
