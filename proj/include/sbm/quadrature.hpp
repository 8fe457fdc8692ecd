// Adaptive panel quadrature used throughout the solver
//
// Globally adaptive bisection over Boost's 31-point Gauss–Kronrod rule: panels split at
// caller-supplied break points, a power-law head mapping for integrands that
// behave like x^κ (κ > -1) at the origin, and a singularity-subtracted
// principal value.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sbm/errors.hpp"

namespace sbm::quad {

struct Options {
    double abs_tol{1e-10};
    double rel_tol{1e-8};
    unsigned max_depth{24};
};

struct Result {
    double value{0.0};
    double error{0.0};
    double l1{0.0};

    Result& operator+=(const Result& o) {
        value += o.value;
        error += o.error;
        l1 += o.l1;
        return *this;
    }
};

namespace detail {

// |K31 - G15| per panel, summed; checked against max(abs_tol, rel_tol·|I|).
inline bool within_budget(const Result& r, const Options& opt) {
    return r.error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(r.value));
}

[[noreturn]] inline void fail(const char* where, const Result& r) {
    std::ostringstream os;
    os << where << ": quadrature tolerance not met (estimate " << r.value << ", error " << r.error
       << ")";
    throw AccuracyError(os.str(), r.value, r.error);
}

} // namespace detail

// ∫ f over [edges.front(), edges.back()], globally adaptive: every initial
// panel [edges[i], edges[i+1]] seeds one heap and the panel with the largest
// error estimate is bisected until the total meets the budget or the interval
// cap is reached. No tolerance check on return.
template <class F>
Result integrate_panels_raw(F&& f, const std::vector<double>& edges, const Options& opt = {}) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    struct Panel {
        double a, b, value, error, l1;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    auto rule = [&f](double lo, double hi) {
        Panel p{lo, hi, 0.0, 0.0, 0.0};
        p.value = GK::integrate(f, lo, hi, 0, 0.0, &p.error, &p.l1);
        // Boost 1.74 reports the non-adaptive error on the reference interval [-1, 1].
        p.error *= 0.5 * (hi - lo);
        return p;
    };

    Result r;
    std::priority_queue<Panel> heap;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i] == edges[i + 1]) continue;
        const Panel p = rule(edges[i], edges[i + 1]);
        r.value += p.value;
        r.error += p.error;
        r.l1 += p.l1;
        heap.push(p);
    }
    if (heap.empty()) return r;

    const std::size_t max_intervals = std::size_t(1) << std::min(opt.max_depth, 16u);
    while (heap.size() < max_intervals && r.error > std::max(opt.abs_tol, opt.rel_tol * std::abs(r.value))) {
        const Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break; // panel at machine resolution
        heap.pop();
        const Panel left = rule(worst.a, mid);
        const Panel right = rule(mid, worst.b);
        r.value += left.value + right.value - worst.value;
        r.error += left.error + right.error - worst.error;
        r.l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of the running updates.
    Result exact;
    while (!heap.empty()) {
        exact.value += heap.top().value;
        exact.error += heap.top().error;
        exact.l1 += heap.top().l1;
        heap.pop();
    }
    return exact;
}

template <class F>
Result integrate_raw(F&& f, double a, double b, const Options& opt = {}) {
    return integrate_panels_raw(f, std::vector<double>{a, b}, opt);
}

template <class F>
Result integrate_panels(F&& f, const std::vector<double>& edges, const Options& opt = {}) {
    Result r = integrate_panels_raw(f, edges, opt);
    if (!std::isfinite(r.value) || !detail::within_budget(r, opt)) detail::fail("integrate_panels", r);
    return r;
}

template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
    return integrate_panels(f, std::vector<double>{a, b}, opt);
}

// ∫_0^{edges.back()} f(x) dx. The head panel [0, edges.front()] is mapped
// through x = b u^{1/s}, which turns any integrand of the form x^κ·g(x^s) with
// κ ∈ {s-1, s} smooth in u; this covers every endpoint behaviour a power-law
// bath produces. The head and the plain panels share one adaptive budget: the
// head is laid out on t ∈ [b-1, b] (u = t - b + 1) ahead of the x panels.
template <class F>
Result integrate_from_zero_raw(F&& f, const std::vector<double>& edges, double s, const Options& opt = {}) {
    const double b = edges.front();
    const double p = 1.0 / s;
    auto composite = [&](double t) {
        if (t < b) {
            const double u = t - b + 1.0;
            if (u <= 0.0) return 0.0;
            const double x = b * std::pow(u, p);
            if (x <= 0.0) return 0.0;
            return f(x) * b * p * std::pow(u, p - 1.0);
        }
        return f(t);
    };
    std::vector<double> all;
    all.reserve(edges.size() + 1);
    all.push_back(b - 1.0);
    all.insert(all.end(), edges.begin(), edges.end());
    return integrate_panels_raw(composite, all, opt);
}

template <class F>
Result integrate_from_zero(F&& f, const std::vector<double>& edges, double s, const Options& opt = {}) {
    Result r = integrate_from_zero_raw(f, edges, s, opt);
    if (!std::isfinite(r.value) || !detail::within_budget(r, opt)) detail::fail("integrate_from_zero", r);
    return r;
}

// Sorted, de-duplicated break points restricted to the open interval (lo, hi),
// bracketed by lo and hi.
inline std::vector<double> make_edges(double lo, double hi, std::vector<double> interior) {
    std::vector<double> edges{lo};
    std::sort(interior.begin(), interior.end());
    for (double x : interior) {
        if (!(x > lo && x < hi)) continue;
        if (x - edges.back() <= 1e-14 * std::max(1.0, std::abs(x))) continue;
        edges.push_back(x);
    }
    if (hi - edges.back() <= 1e-14 * std::max(1.0, std::abs(hi))) edges.back() = hi;
    else edges.push_back(hi);
    return edges;
}

// Break points at d·10^k, k = -1, 0, 1, ..., up to (not including) hi.
inline std::vector<double> decade_points(double d, double hi = 1.0) {
    std::vector<double> pts;
    for (double x = 0.1 * d; x < hi && pts.size() < 400; x *= 10.0) pts.push_back(x);
    return pts;
}

// PV ∫_0^1 f(x)/(x - w) dx for 0 < w < 1 by singularity subtraction:
//   ∫ (f(x) - f(w))/(x - w) dx + f(w) ln((1 - w)/w).
// `s` is the leading power of f at the origin; `extra` are additional kinks.
template <class F>
Result principal_value_unit(F&& f, double w, double s, std::vector<double> extra, const Options& opt = {}) {
    if (!(w > 0.0 && w < 1.0)) throw DomainError("principal_value_unit: pole must lie in (0,1)");
    const double fw = f(w);
    auto regular = [&](double x) {
        const double d = x - w;
        if (d == 0.0) return 0.0;
        return (f(x) - fw) / d;
    };
    extra.push_back(w);
    auto edges = make_edges(0.0, 1.0, extra);
    edges.erase(edges.begin());
    const double log_term = fw * std::log((1.0 - w) / w);
    // Relative accuracy is judged against the smaller of the two pieces when
    // they cancel, since that is the scale rounding can resolve.
    auto budget = [&](const Result& part) {
        const double total = std::abs(part.value + log_term);
        const double scale = std::max(total, std::min(std::abs(part.value), std::abs(log_term)));
        return std::max(opt.abs_tol, opt.rel_tol * scale);
    };
    Result r = integrate_from_zero_raw(regular, edges, s, opt);
    if (r.error > budget(r)) {
        // The adaptive loop saw only the subtracted part; retry against the full value.
        Options tight = opt;
        tight.abs_tol = 0.5 * budget(r);
        tight.rel_tol = 0.0;
        r = integrate_from_zero_raw(regular, edges, s, tight);
    }
    const bool ok = std::isfinite(r.value) && r.error <= budget(r);
    r.value += log_term;
    if (!ok) detail::fail("principal_value_unit", r);
    return r;
}

} // namespace sbm::quad
