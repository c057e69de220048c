#pragma once

// Radial subharmonic profiles m(|z|): log-convexity checks, ring-mass
// functions n(r) = r m'_+(r), reconstruction from n, and the flattened
// majorants on the plane, the disc and annuli with their Riesz measures.

#include "potkit/measures.hpp"

#include <boost/math/interpolators/pchip.hpp>

#include <memory>
#include <optional>

namespace potkit
{

class RadialProfile
{
public:
    RadialProfile() = default;
    RadialProfile(RealFn m, double r1, double r2, RealFn dm_right = {}, RealFn ddm = {}, std::string kind = "custom")
        : m_(std::move(m)), dm_(std::move(dm_right)), ddm_(std::move(ddm)), r1_(r1), r2_(r2), kind_(std::move(kind))
    {
        if (!(r1 >= 0.0 && r1 < r2))
            throw Error("profile interval needs 0 <= r1 < r2");
        if (!m_)
            throw Error("profile needs an evaluator");
    }

    /// c * r^p.
    static RadialProfile power(double c, double p, double r1 = 0.0, double r2 = inf)
    {
        return RadialProfile([c, p](double r) { return c * std::pow(r, p); }, r1, r2,
                             [c, p](double r) { return p == 0.0 ? 0.0 : c * p * std::pow(r, p - 1.0); },
                             [c, p](double r) { return p == 0.0 || p == 1.0 ? 0.0 : c * p * (p - 1.0) * std::pow(r, p - 2.0); },
                             "power");
    }
    /// c * log r + k.
    static RadialProfile logarithmic(double c = 1.0, double k = 0.0, double r1 = 0.0, double r2 = inf)
    {
        return RadialProfile([c, k](double r) { return c * std::log(r) + k; }, r1, r2, [c](double r) { return c / r; },
                             [c](double r) { return -c / (r * r); }, "log");
    }
    /// Monotone cubic interpolation of (r_i, m_i) in the variable log r.
    static RadialProfile table(std::vector<double> r, std::vector<double> m)
    {
        if (r.size() < 4 || r.size() != m.size())
            throw Error("table profile needs at least 4 matching (r, m) pairs");
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (!(r[k] > 0.0) || (k > 0 && !(r[k] > r[k - 1])))
                throw Error("table radii must be positive and increasing");
        }
        const double lo = r.front(), hi = r.back();
        std::vector<double> x(r.size());
        for (std::size_t k = 0; k < r.size(); ++k)
            x[k] = std::log(r[k]);
        auto spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(std::move(x), std::move(m));
        return RadialProfile([spline](double t) { return (*spline)(std::log(t)); }, lo, hi,
                             [spline](double t) { return spline->prime(std::log(t)) / t; }, {}, "table");
    }

    double operator()(double r) const { return m_(r); }
    double r1() const { return r1_; }
    double r2() const { return r2_; }
    const std::string& kind() const { return kind_; }
    bool has_exact_derivative() const { return static_cast<bool>(dm_); }

    /// m'_+(r): exact closure when supplied, otherwise forward differences
    /// with one Richardson step.
    double right_derivative(double r) const
    {
        if (dm_)
            return dm_(r);
        const double h = 1e-4 * std::max(r, 1e-3);
        const double d1 = (m_(r + h) - m_(r)) / h;
        const double d2 = (m_(r + h / 2) - m_(r)) / (h / 2);
        return 2.0 * d2 - d1;
    }
    /// m'_-(r) by backward differences (the exact closure when smooth).
    double left_derivative(double r) const
    {
        const double h = 1e-4 * std::max(r, 1e-3);
        const double d1 = (m_(r) - m_(r - h)) / h;
        const double d2 = (m_(r) - m_(r - h / 2)) / (h / 2);
        return 2.0 * d2 - d1;
    }
    /// d/dr (r m'(r)) away from kinks.
    double ring_density(double r) const
    {
        if (dm_ && ddm_)
            return dm_(r) + r * ddm_(r);
        const double h = 1e-4 * std::max(r, 1e-3);
        if (dm_)
            return ((r + h) * dm_(r + h) - (r - h) * dm_(r - h)) / (2.0 * h);
        const double mp = (m_(r + h) - m_(r - h)) / (2.0 * h);
        const double mpp = (m_(r + h) - 2.0 * m_(r) + m_(r - h)) / (h * h);
        return mp + r * mpp;
    }

private:
    RealFn m_, dm_, ddm_;
    double r1_ = 0.0, r2_ = inf;
    std::string kind_ = "custom";
};

/// n(r) = r m'_+(r).
inline double ring_mass(const RadialProfile& m, double r)
{
    if (!(r > m.r1() && r < m.r2()))
        throw Error("radius outside profile interval");
    return r * m.right_derivative(r);
}

struct LogConvexVerdict
{
    bool valid = true;
    double worst = 0.0;                    // most negative normalized second difference
    std::array<double, 3> triple{0, 0, 0}; // radii of the worst triple
};

/// Midpoint convexity of x -> m(exp x) on a geometric sample of [a, b].
template <class M>
LogConvexVerdict validate_log_convex(M&& m, double a, double b, std::size_t samples, double tol = 1e-9)
{
    if (samples < 3)
        throw Error("need at least 3 samples");
    if (!(a > 0.0 && b > a && std::isfinite(b)))
        throw Error("log-convexity sampling needs 0 < a < b < infinity");
    const double la = std::log(a), lb = std::log(b);
    const double step = (lb - la) / static_cast<double>(samples - 1);
    std::vector<double> x(samples), y(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        x[k] = la + step * static_cast<double>(k);
        y[k] = m(std::exp(x[k]));
    }
    LogConvexVerdict v;
    for (std::size_t k = 1; k + 1 < samples; ++k) {
        const double second = y[k - 1] - 2.0 * y[k] + y[k + 1];
        const double scale = std::max({1.0, std::abs(y[k - 1]), std::abs(y[k]), std::abs(y[k + 1])});
        const double val = second / scale;
        if (val < v.worst) {
            v.worst = val;
            v.triple = {std::exp(x[k - 1]), std::exp(x[k]), std::exp(x[k + 1])};
        }
    }
    v.valid = v.worst >= -tol;
    return v;
}

/// m(r) = m(r0) + int_{r0}^r n(t)/t dt; r may be 0 or +infinity.
template <class N>
ExtendedReal reconstruct_profile(double m0, N&& n, double r0, double r)
{
    if (!(r0 > 0.0) || !std::isfinite(r0) || !(r >= 0.0))
        throw Error("reconstruct_profile needs r0 in (0, inf) and r >= 0");
    auto phi = [&](double t) { return n(t) / t; };
    if (r == r0)
        return ExtendedReal::finite(m0);
    if (r > r0) {
        if (std::isfinite(r)) {
            const QuadResult q = integrate(phi, r0, r);
            return ExtendedReal::finite(m0 + q.value, q.error);
        }
        return ExtendedReal::finite(m0) + integrate_extended(phi, r0, r);
    }
    if (r > 0.0) {
        const QuadResult q = integrate(phi, r, r0);
        return ExtendedReal::finite(m0 - q.value, q.error);
    }
    return ExtendedReal::finite(m0) - integrate_extended(phi, 0.0, r0);
}

// ---------------------------------------------------------------------------
// Flattened majorants

struct RadialMajorant
{
    std::string variant;   // plane | disc | annulus
    RadialProfile profile;
    double inner_radius = 0.0;  // flattening radius (r' for annuli)
    double outer_radius = 0.0;  // r'' for annuli, = inner_radius otherwise
    double plateau = 0.0;
    RieszMeasure riesz;

    double at_radius(double r) const
    {
        if (variant == "annulus") {
            if (r <= inner_radius || r >= outer_radius)
                return r == inner_radius || r == outer_radius ? plateau : profile(r);
            return plateau;
        }
        return r <= inner_radius ? plateau : profile(r);
    }
    double operator()(Complex z) const { return at_radius(std::abs(z)); }
};

namespace detail
{

inline RingPart profile_ring(const RadialProfile& p, double a, double b)
{
    // the ring is open at b: a kink there belongs to the next part, so the
    // cumulative mass reads the left derivative at the top edge
    return {Complex{}, a, b, [p](double r) { return p.ring_density(r); }, [p, b](double r) {
                if (r == inf)
                    return inf;
                return r * (r >= b ? p.left_derivative(r) : p.right_derivative(r));
            }};
}

inline void require_increasing(const RadialProfile& p, double from, double to)
{
    const double hi = std::isfinite(to) ? to : from * 1e3 + 10.0;
    double prev = p(from);
    for (int k = 1; k <= 64; ++k) {
        const double r = from + (hi - from) * k / 64.0 * (std::isfinite(to) ? 0.999 : 1.0);
        const double v = p(r);
        if (v < prev - 1e-12)
            throw Error("profile not increasing beyond the flattening radius (r=" + std::to_string(r) + ")");
        prev = v;
    }
}

} // namespace detail

/// M = m(R0) on |z| <= R0 and m(|z|) outside; Riesz measure = circle atom
/// R0 m'_+(R0) on |z| = R0 plus the ring density d(r m'(r)) beyond.
inline RadialMajorant build_plane_majorant(const RadialProfile& p, double R0)
{
    if (!(R0 > 0.0) || R0 < p.r1() || !(R0 < p.r2()))
        throw Error("flattening radius outside profile interval");
    detail::require_increasing(p, R0, p.r2());
    RadialMajorant M;
    M.variant = "plane";
    M.profile = p;
    M.inner_radius = M.outer_radius = R0;
    M.plateau = p(R0);
    const double atom = R0 * p.right_derivative(R0);
    if (atom < -1e-12)
        throw Error("negative circle atom: profile decreasing at the flattening radius");
    M.riesz.circles.push_back({Complex{}, R0, atom, {}});
    M.riesz.rings.push_back(detail::profile_ring(p, R0, p.r2()));
    M.riesz.note = "radial majorant (plane)";
    return M;
}

/// Same construction on the unit disc with flattening radius r0.
inline RadialMajorant build_disc_majorant(const RadialProfile& p, double r0)
{
    if (p.r2() > 1.0)
        throw Error("disc majorant needs a profile on [r0, 1)");
    RadialMajorant M = build_plane_majorant(p, r0);
    M.variant = "disc";
    M.riesz.note = "radial majorant (disc)";
    return M;
}

/// Plateau m0 on [r', r''], with r' moved inward and r'' outward until
/// m(r') = m(r'') = m0. Atoms -r' m'_-(r') and r'' m'_+(r'').
inline RadialMajorant build_annulus_majorant(const RadialProfile& p, double r_in, double r_out,
                                             std::optional<double> m0 = std::nullopt)
{
    if (!(p.r1() < r_in && r_in <= r_out && r_out < p.r2()))
        throw Error("annulus majorant needs r1 < r' <= r'' < r2");
    const double target = m0 ? *m0 : std::max(p(r_in), p(r_out));
    auto solve = [&](double lo, double hi, bool decreasing) -> double {
        // root of m(r) = target on [lo, hi] for a monotone branch
        double flo = p(lo) - target, fhi = p(hi) - target;
        if (std::abs(decreasing ? fhi : flo) <= 1e-13 * std::max(1.0, std::abs(target)))
            return decreasing ? hi : lo;
        if (flo * fhi > 0.0)
            throw Error("no matching plateau value");
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = p(mid) - target;
            if ((fm > 0.0) == (flo > 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };
    const double inner_edge = p.r1() + 1e-9 * (r_in - p.r1());
    const double outer_edge = std::isfinite(p.r2()) ? p.r2() - 1e-9 * (p.r2() - r_out) : r_out * 1e9;
    const double ra = solve(inner_edge, r_in, true);
    const double rb = solve(r_out, outer_edge, false);

    RadialMajorant M;
    M.variant = "annulus";
    M.profile = p;
    M.inner_radius = ra;
    M.outer_radius = rb;
    M.plateau = target;
    const double atom_in = -ra * p.left_derivative(ra);
    const double atom_out = rb * p.right_derivative(rb);
    if (atom_in < -1e-9 || atom_out < -1e-9)
        throw Error("annulus branches have the wrong monotonicity at the plateau ends");
    if (ra == rb) {
        M.riesz.circles.push_back({Complex{}, ra, atom_in + atom_out, {}});
    } else {
        M.riesz.circles.push_back({Complex{}, ra, atom_in, {}});
        M.riesz.circles.push_back({Complex{}, rb, atom_out, {}});
    }
    M.riesz.rings.push_back(detail::profile_ring(p, p.r1(), ra));
    M.riesz.rings.push_back(detail::profile_ring(p, rb, p.r2()));
    M.riesz.note = "radial majorant (annulus)";
    return M;
}

} // namespace potkit
