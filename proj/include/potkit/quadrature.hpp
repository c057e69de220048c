#pragma once

// One-dimensional quadrature used throughout the library: adaptive
// Gauss-Kronrod on finite intervals, and improper integrals over
// half-lines with divergence detection on geometric shells.

#include "potkit/core.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

namespace potkit
{

struct QuadResult
{
    double value = 0.0;
    double error = 0.0;
};

template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol = 1e-12, unsigned max_depth = 15)
{
    if (a == b)
        return {};
    // Boost compares an unscaled local error against a scaled tolerance, so
    // short intervals never settle and get refined to full depth. Mapping
    // onto [-1, 1] with the Jacobian folded in puts both in the same units.
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double err = 0.0;
    double l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        [&](double s) { return half * static_cast<double>(f(mid + half * s)); }, -1.0, 1.0, max_depth, rel_tol, &err,
        &l1);
    return {v, err};
}

struct ImproperOptions
{
    double rel_tol = 1e-12;
    int max_shells = 40;            // decades explored on each unbounded side
    double divergence_ratio = 0.955; // shell-mass ratio at or above which growth is "like 1/t"
};

namespace detail
{

// Integrates a nonnegative phi over the decades [x*10^k, x*10^(k+1)]
// (direction +1) or [x*10^-(k+1), x*10^-k] (direction -1), stopping on
// geometric decay or declaring divergence when the decade masses stop
// shrinking, which is the comparison against int c/t dt.
template <class F>
ExtendedReal decade_sum(F&& phi, double x, int direction, const ImproperOptions& opt)
{
    CompensatedSum total;
    double qerr = 0.0;
    std::vector<double> shells;
    double lo_edge = x;
    for (int k = 0; k < opt.max_shells; ++k) {
        const double a = direction > 0 ? x * std::pow(10.0, k) : x * std::pow(10.0, -(k + 1));
        const double b = direction > 0 ? x * std::pow(10.0, k + 1) : x * std::pow(10.0, -k);
        // log substitution keeps power laws smooth inside each decade
        auto g = [&](double s) {
            const double t = std::exp(s);
            return phi(t) * t;
        };
        const QuadResult q = integrate(g, std::log(a), std::log(b), opt.rel_tol);
        shells.push_back(q.value);
        total.add(q.value);
        qerr += q.error;
        lo_edge = direction > 0 ? b : a;

        const std::size_t n = shells.size();
        if (n >= 2 && shells[n - 1] == 0.0 && shells[n - 2] == 0.0)
            return ExtendedReal::finite(total.value(), qerr);
        if (n >= 4) {
            bool flat = true;
            for (std::size_t i = n - 3; i < n; ++i) {
                if (shells[i - 1] <= 0.0 || shells[i] < opt.divergence_ratio * shells[i - 1])
                    flat = false;
            }
            if (flat) {
                std::ostringstream os;
                os << "decade masses stay >= " << shells[n - 3] * opt.divergence_ratio
                   << " up to t=" << lo_edge << " (ratio >= " << opt.divergence_ratio
                   << "); comparison with int c/t dt diverges";
                return ExtendedReal::plus_infinity(os.str());
            }
        }
        if (n >= 3) {
            double ratio = 0.0;
            for (std::size_t i = n - 2; i < n; ++i)
                ratio = std::max(ratio, shells[i - 1] > 0.0 ? shells[i] / shells[i - 1] : 0.0);
            if (ratio < 1.0) {
                const double tail = shells.back() * ratio / (1.0 - ratio);
                if (tail <= opt.rel_tol * std::abs(total.value()) || tail < 1e-300)
                    return ExtendedReal::finite(total.value() + tail, qerr + tail);
            }
        }
    }
    // Out of decades without settling: extrapolate the geometric tail.
    const std::size_t n = shells.size();
    const double ratio = shells[n - 2] > 0.0 ? shells[n - 1] / shells[n - 2] : 0.0;
    if (ratio >= 1.0) {
        std::ostringstream os;
        os << "decade masses non-decreasing through t=" << lo_edge;
        return ExtendedReal::plus_infinity(os.str());
    }
    const double tail = shells.back() * ratio / (1.0 - ratio);
    return ExtendedReal::finite(total.value() + tail, qerr + tail);
}

} // namespace detail

/// Integral of a nonnegative function over [a, b] where a may be 0 and b
/// may be +infinity. Divergent integrals come back as +infinity with the
/// comparison that established it.
template <class F>
ExtendedReal integrate_nonnegative(F&& phi, double a, double b, const ImproperOptions& opt = {})
{
    if (!(a >= 0.0) || !(b >= a))
        throw Error("integrate_nonnegative: need 0 <= a <= b");
    if (a == b)
        return ExtendedReal::finite(0.0);
    ExtendedReal total = ExtendedReal::finite(0.0);
    double lo = a;
    double hi = b;
    if (a == 0.0) {
        const double pivot = std::isfinite(b) ? b : 1.0;
        total = total + detail::decade_sum(phi, pivot, -1, opt);
        lo = pivot;
    }
    if (!std::isfinite(b)) {
        const double pivot = std::max(lo, 1.0);
        if (pivot > lo) {
            const QuadResult q = integrate(phi, lo, pivot, opt.rel_tol);
            total = total + ExtendedReal::finite(q.value, q.error);
        }
        total = total + detail::decade_sum(phi, pivot, +1, opt);
        return total;
    }
    if (hi > lo) {
        const QuadResult q = integrate(phi, lo, hi, opt.rel_tol);
        total = total + ExtendedReal::finite(q.value, q.error);
    }
    return total;
}

/// Signed version: splits phi into its positive and negative parts.
template <class F>
ExtendedReal integrate_extended(F&& phi, double a, double b, const ImproperOptions& opt = {})
{
    if (a < 0.0)
        throw Error("integrate_extended: half-line integrals start at a >= 0");
    const ExtendedReal pos = integrate_nonnegative([&](double t) { return std::max(phi(t), 0.0); }, a, b, opt);
    const ExtendedReal neg = integrate_nonnegative([&](double t) { return std::max(-phi(t), 0.0); }, a, b, opt);
    if (!pos.is_finite() && !neg.is_finite())
        throw Error("undefined signed integral");
    return pos - neg;
}

} // namespace potkit
