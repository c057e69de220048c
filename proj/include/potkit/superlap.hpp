#pragma once

// Laplacians of superpositions g f(s/g) and F o s, Riesz densities of the
// named majorants, and a finite-difference verifier with order estimates.

#include "potkit/greenfn.hpp"
#include "potkit/measures.hpp"

#include <array>
#include <optional>

namespace potkit
{

/// Value, gradient (as gx + i gy) and Laplacian of a C^2 field. Missing
/// derivatives fall back to central differences (fd_fallback() tells).
struct SmoothField
{
    Evaluator value;
    std::function<Complex(Complex)> grad;
    Evaluator lap;
    double fd_step = 1e-5;

    double operator()(Complex z) const { return value(z); }
    bool fd_fallback() const { return !grad || !lap; }

    Complex gradient(Complex z) const
    {
        if (grad)
            return grad(z);
        const double h = fd_step;
        return {(value(z + h) - value(z - h)) / (2 * h),
                (value(z + Complex(0, h)) - value(z - Complex(0, h))) / (2 * h)};
    }
    double laplacian(Complex z) const
    {
        if (lap)
            return lap(z);
        const double h = std::max(fd_step, 1e-4);
        return (value(z + h) + value(z - h) + value(z + Complex(0, h)) + value(z - Complex(0, h)) - 4 * value(z)) /
               (h * h);
    }

    static SmoothField constant(double c)
    {
        return {[c](Complex) { return c; }, [](Complex) { return Complex{}; }, [](Complex) { return 0.0; }};
    }
    static SmoothField re()
    {
        return {[](Complex z) { return z.real(); }, [](Complex) { return Complex(1, 0); }, [](Complex) { return 0.0; }};
    }
    static SmoothField im()
    {
        return {[](Complex z) { return z.imag(); }, [](Complex) { return Complex(0, 1); }, [](Complex) { return 0.0; }};
    }
    /// |z - c|^2
    static SmoothField abs2(Complex c = {})
    {
        return {[c](Complex z) { return std::norm(z - c); }, [c](Complex z) { return 2.0 * (z - c); },
                [](Complex) { return 4.0; }};
    }
    /// log|z - a|
    static SmoothField log_abs(Complex a = {})
    {
        return {[a](Complex z) { return std::log(std::abs(z - a)); },
                [a](Complex z) { return std::conj(1.0 / (z - a)); }, [](Complex) { return 0.0; }};
    }
    /// Green function of D(c, R) with pole z0 (inside the disc, off the pole).
    static SmoothField green_disc(Complex c, double R, Complex z0)
    {
        const Complex w0 = z0 - c;
        return {[=](Complex z) {
                    const Complex w = z - c;
                    return std::log(std::abs(R * R - std::conj(w0) * w)) - std::log(R * std::abs(w - w0));
                },
                [=](Complex z) {
                    const Complex w = z - c;
                    return std::conj(-std::conj(w0) / (R * R - std::conj(w0) * w)) - std::conj(1.0 / (w - w0));
                },
                [](Complex) { return 0.0; }};
    }
    /// Any Green function, derivatives by differences.
    static SmoothField green(const GreenFunction& g)
    {
        SmoothField f;
        f.value = [g](Complex z) { return g(z); };
        return f;
    }
    /// Hyperbolic radius of D(c, rho): (rho^2 - |z-c|^2)/rho.
    static SmoothField hyperbolic_radius_disc(Complex c = {}, double rho = 1.0)
    {
        return {[=](Complex z) { return (rho * rho - std::norm(z - c)) / rho; },
                [=](Complex z) { return -2.0 * (z - c) / rho; }, [=](Complex) { return -4.0 / rho; }};
    }
    /// Hyperbolic radius of a half-plane: twice the distance to its edge.
    static SmoothField hyperbolic_radius_half_plane(const HalfPlane& hp = HalfPlane::right())
    {
        return {[hp](Complex z) { return 2.0 * (std::conj(hp.normal) * (z - hp.point)).real(); },
                [hp](Complex) { return 2.0 * hp.normal; }, [](Complex) { return 0.0; }};
    }
    /// Distance to the circle |z - c| = R (smooth off c and the circle).
    static SmoothField distance_to_circle(Complex c, double R)
    {
        return {[=](Complex z) { return std::abs(std::abs(z - c) - R); },
                [=](Complex z) {
                    const double r = std::abs(z - c);
                    const Complex u = (z - c) / r;
                    return r > R ? u : -u;
                },
                [=](Complex z) {
                    const double r = std::abs(z - c);
                    return r > R ? 1.0 / r : -1.0 / r;
                }};
    }
};

/// Convex f on [lo, hi] with first and second derivatives.
struct ConvexFn1D
{
    RealFn f, df, ddf;
    double lo = -inf, hi = inf;
    bool increasing = false;
    bool decreasing = false;
    std::string name = "custom";

    double operator()(double x) const { return f(x); }
    bool in_domain(double x) const { return x >= lo && x <= hi; }

    static ConvexFn1D square()
    {
        return {[](double x) { return x * x; }, [](double x) { return 2 * x; }, [](double) { return 2.0; }, -inf, inf,
                false, false, "square"};
    }
    /// t^p on [0, inf), p >= 1.
    static ConvexFn1D power(double p)
    {
        if (p < 1.0)
            throw Error("t^p is convex on [0, inf) only for p >= 1");
        return {[p](double x) { return std::pow(x, p); }, [p](double x) { return p * std::pow(x, p - 1); },
                [p](double x) { return p == 1.0 ? 0.0 : p * (p - 1) * std::pow(x, p - 2); }, 0.0, inf, true, false,
                "power"};
    }
    static ConvexFn1D identity()
    {
        return {[](double x) { return x; }, [](double) { return 1.0; }, [](double) { return 0.0; }, -inf, inf, true,
                false, "identity"};
    }
    /// exp(-p x)
    static ConvexFn1D exp_neg(double p)
    {
        return {[p](double x) { return std::exp(-p * x); }, [p](double x) { return -p * std::exp(-p * x); },
                [p](double x) { return p * p * std::exp(-p * x); }, -inf, inf, false, true, "exp_neg"};
    }
    /// x^-p for x >= 1, continued by its tangent line 1 - p(x-1) below 1.
    static ConvexFn1D inverse_power_capped(double p)
    {
        return {[p](double x) { return x >= 1 ? std::pow(x, -p) : 1.0 - p * (x - 1.0); },
                [p](double x) { return x >= 1 ? -p * std::pow(x, -p - 1) : -p; },
                [p](double x) { return x >= 1 ? p * (p + 1) * std::pow(x, -p - 2) : 0.0; }, -inf, inf, false, true,
                "inverse_power_capped"};
    }
};

/// Sampled convexity and monotonicity check on [a, b].
inline void check_convex(const ConvexFn1D& f, double a, double b, std::size_t samples = 200)
{
    for (std::size_t k = 0; k <= samples; ++k) {
        const double x = a + (b - a) * static_cast<double>(k) / static_cast<double>(samples);
        if (f.ddf(x) < -1e-12)
            throw Error("f is not convex at x=" + std::to_string(x));
        if (f.increasing && f.df(x) < -1e-12)
            throw Error("f is not increasing at x=" + std::to_string(x));
        if (f.decreasing && f.df(x) > 1e-12)
            throw Error("f is not decreasing at x=" + std::to_string(x));
    }
}

// ---------------------------------------------------------------------------
// Superposition Laplacian

/// |grad(s/g)|^2 in the gradient form.
inline double grad_ratio_sq(double g, double s, Complex gg, Complex gs)
{
    const double dot = (std::conj(gg) * gs).real();
    return (g * g * std::norm(gs) - 2.0 * g * s * dot + s * s * std::norm(gg)) / (g * g * g * g);
}

/// |grad(s/g)|^2 in the Laplacian form (1/2g^4)(g^2 D(s^2) - 2gs D(gs) + s^2 D(g^2)),
/// the three product Laplacians supplied by the caller.
inline double grad_ratio_sq_lap(double g, double s, double lap_s2, double lap_gs, double lap_g2)
{
    return (g * g * lap_s2 - 2.0 * g * s * lap_gs + s * s * lap_g2) / (2.0 * g * g * g * g);
}

/// Product rule D(ab) = a Db + b Da + 2 grad a . grad b.
inline double lap_product(double a, double b, Complex ga, Complex gb, double la, double lb)
{
    return a * lb + b * la + 2.0 * (std::conj(ga) * gb).real();
}

/// Delta( g f(s/g) ) at z.
inline double superposition_laplacian(const SmoothField& g, const SmoothField& s, const ConvexFn1D& f, Complex z)
{
    const double gv = g(z);
    if (gv == 0.0)
        throw Error("g(z) = 0");
    const double sv = s(z);
    const double x = sv / gv;
    if (!f.in_domain(x))
        throw Error("argument s/g = " + std::to_string(x) + " outside the domain of f");
    const Complex gg = g.gradient(z), gs = s.gradient(z);
    const double fp = f.df(x);
    return fp * s.laplacian(z) - (fp * x - f(x)) * g.laplacian(z) + gv * f.ddf(x) * grad_ratio_sq(gv, sv, gg, gs);
}

/// The assembled scalar field g f(s/g).
inline Evaluator superposition_field(const SmoothField& g, const SmoothField& s, const ConvexFn1D& f)
{
    return [g, s, f](Complex z) { return g(z) * f(s(z) / g(z)); };
}

enum class GkCase { harmonic_pair, subharmonic_over_harmonic, subharmonic_over_superharmonic };

struct DensityOptions
{
    double tol = 1e-10;  // slack in the sampled hypotheses
};

/// Riesz density (Delta/2pi) of g f(s/g) under the named hypotheses, which
/// are checked at z.
inline double riesz_density(GkCase c, const SmoothField& g, const SmoothField& s, const ConvexFn1D& f, Complex z,
                            const DensityOptions& opt = {})
{
    const double gv = g(z), sv = s(z);
    const double ls = s.laplacian(z), lg = g.laplacian(z);
    const double scale = std::max(1.0, std::abs(ls) + std::abs(lg));
    const double tol = opt.tol * scale + (g.fd_fallback() || s.fd_fallback() ? 1e-5 : 0.0);
    if (!(gv > 0.0))
        throw Error("g must be positive");
    const double x = sv / gv;
    switch (c) {
    case GkCase::harmonic_pair:
        if (std::abs(ls) > tol)
            throw Error("case i: s is not harmonic");
        if (std::abs(lg) > tol)
            throw Error("case i: g is not harmonic");
        return f.ddf(x) * gv * grad_ratio_sq(gv, sv, g.gradient(z), s.gradient(z)) / two_pi;
    case GkCase::subharmonic_over_harmonic:
        if (ls < -tol)
            throw Error("case ii: s is not subharmonic");
        if (std::abs(lg) > tol)
            throw Error("case ii: g is not harmonic");
        if (f.df(x) < 0.0)
            throw Error("case ii: f is not increasing");
        return superposition_laplacian(g, s, f, z) / two_pi;
    case GkCase::subharmonic_over_superharmonic:
        if (sv < 0.0)
            throw Error("case iii: s is negative");
        if (ls < -tol)
            throw Error("case iii: s is not subharmonic");
        if (lg > tol)
            throw Error("case iii: g is not superharmonic");
        if (std::abs(f(0.0)) > 1e-14)
            throw Error("case iii: f(0) != 0");
        if (f.df(x) < 0.0)
            throw Error("case iii: f is not increasing");
        return superposition_laplacian(g, s, f, z) / two_pi;
    }
    return 0.0;
}

/// Density of F o s from nu_s and nu_{s^2}: (F'(s) - s F''(s)) nu_s + F''(s) nu_{s^2} / 2.
inline double convex_of_sbh_density(const ConvexFn1D& F, const SmoothField& s, Complex z)
{
    const double sv = s(z);
    if (!F.in_domain(sv))
        throw Error("s(z) outside the domain of F");
    const double nu_s = s.laplacian(z) / two_pi;
    const double nu_s2 = lap_product(sv, sv, s.gradient(z), s.gradient(z), s.laplacian(z), s.laplacian(z)) / two_pi;
    return (F.df(sv) - sv * F.ddf(sv)) * nu_s + 0.5 * F.ddf(sv) * nu_s2;
}

// ---------------------------------------------------------------------------
// Named densities

/// d/dt nu(U_t) for M = F o (-g_D): F''(-t).
inline double green_level_density(const ConvexFn1D& F, double t) { return F.ddf(-t); }

/// Mass of nu_{F o (-g)} between the levels t2 < t1.
inline double green_level_mass(const ConvexFn1D& F, double t2, double t1)
{
    return integrate([&](double t) { return F.ddf(-t); }, t2, t1).value;
}

/// Stieltjes form for non-C^2 F: right-derivative table (x_k, F'_+(x_k))
/// gives the mass between levels as the increment of F'_+ over [-t1, -t2].
inline double green_level_mass_stieltjes(const std::vector<std::pair<double, double>>& dF, double t2, double t1)
{
    if (dF.size() < 2)
        throw Error("derivative table needs at least two rows");
    auto at = [&](double x) {
        // right-continuous step interpolation, monotone
        double v = dF.front().second;
        for (const auto& [xk, d] : dF) {
            if (xk <= x)
                v = d;
            else
                break;
        }
        return v;
    };
    return at(-t2) - at(-t1);
}

/// (1/2pi)(F'' + F')(-log(1+g)) |grad g|^2 / (1+g)^2.
inline double log1p_green_density(const ConvexFn1D& F, const SmoothField& g, Complex z)
{
    const double gv = g(z);
    const double x = -std::log1p(gv);
    return (F.ddf(x) + F.df(x)) * std::norm(g.gradient(z)) / ((1 + gv) * (1 + gv)) / two_pi;
}

/// (1/2pi)[F''(-R)(R DR + 4) - F'(-R) DR] for M = F(-R).
inline double conformal_radius_density(const ConvexFn1D& F, const SmoothField& R, Complex z)
{
    const double r = R(z), lr = R.laplacian(z);
    return (F.ddf(-r) * (r * lr + 4.0) - F.df(-r) * lr) / two_pi;
}

/// (1/2pi)[F''(-log R)|grad R|^2/R^2 + 4F'(-log R)/R^2] for M = F(-log R).
inline double log_radius_density(const ConvexFn1D& F, const SmoothField& R, Complex z)
{
    const double r = R(z);
    const double x = -std::log(r);
    return (F.ddf(x) * std::norm(R.gradient(z)) / (r * r) + 4.0 * F.df(x) / (r * r)) / two_pi;
}

/// Eikonal residual ||grad d_E| - 1| by central differences.
inline double eikonal_residual(const BoundarySet& E, Complex z, double h = 1e-5)
{
    auto d = [&](Complex w) { return dist_to_set(w, E).value; };
    const Complex g((d(z + h) - d(z - h)) / (2 * h), (d(z + Complex(0, h)) - d(z - Complex(0, h))) / (2 * h));
    return std::abs(std::abs(g) - 1.0);
}

/// (1/2pi)(F''(-log d) + (1 - d Dd) F'(-log d))/d^2 for M = F(log 1/d_E).
/// Off the ridge set only: the eikonal residual at z must stay below tol.
inline double distance_density(const ConvexFn1D& F, const SmoothField& d, Complex z,
                               const BoundarySet* E = nullptr, double tol = 1e-6)
{
    if (E) {
        const double res = eikonal_residual(*E, z);
        if (res > tol)
            throw Error("point on or near the ridge set (eikonal residual " + std::to_string(res) + ")");
    }
    const double dv = d(z);
    const double x = -std::log(dv);
    return (F.ddf(x) + (1.0 - dv * d.laplacian(z)) * F.df(x)) / (dv * dv) / two_pi;
}

/// R DR - |grad R|^2 + 4 (zero for hyperbolic radii).
inline double liouville_residual(const SmoothField& R, Complex z)
{
    return R(z) * R.laplacian(z) - std::norm(R.gradient(z)) + 4.0;
}

/// Same identity with all derivatives from 5-point differences at step h.
inline double liouville_residual_fd(const Evaluator& R, Complex z, double h)
{
    const double c = R(z);
    const double e = R(z + h), w = R(z - h), n = R(z + Complex(0, h)), s = R(z - Complex(0, h));
    const double lap = (e + w + n + s - 4 * c) / (h * h);
    const double gx = (e - w) / (2 * h), gy = (n - s) / (2 * h);
    return c * lap - (gx * gx + gy * gy) + 4.0;
}

// ---------------------------------------------------------------------------
// Finite-difference verification

inline double fd_laplacian(const Evaluator& u, Complex z, double h)
{
    return (u(z + h) + u(z - h) + u(z + Complex(0, h)) + u(z - Complex(0, h)) - 4.0 * u(z)) / (h * h);
}

struct FdVerifyResult
{
    std::vector<double> h;
    std::vector<double> deviation;  // max |FD Laplacian - formula| over the sample points
    double order = 0.0;             // log2 of the deviation ratio between the last two steps
    double max_relative = 0.0;      // deviation at the finest step / max(1, max |formula|)
};

/// Compares the 5-point Laplacian of `field` to `formula` on a k x k set of
/// interior sample points of box, for each step in the ladder.
inline FdVerifyResult fd_verify(const Evaluator& field, const Evaluator& formula, const Box& box,
                                std::vector<double> ladder, std::size_t k = 7)
{
    if (ladder.size() < 2)
        throw Error("fd_verify needs at least two steps");
    FdVerifyResult r;
    double fmax = 0.0;
    for (double h : ladder) {
        double dev = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < k; ++i) {
                const Complex z(box.xmin + (box.xmax - box.xmin) * (i + 0.5) / static_cast<double>(k),
                                box.ymin + (box.ymax - box.ymin) * (j + 0.5) / static_cast<double>(k));
                const double F = formula(z);
                fmax = std::max(fmax, std::abs(F));
                dev = std::max(dev, std::abs(fd_laplacian(field, z, h) - F));
            }
        }
        r.h.push_back(h);
        r.deviation.push_back(dev);
    }
    const std::size_t n = r.deviation.size();
    const double ratio = r.h[n - 2] / r.h[n - 1];
    r.order = (r.deviation[n - 1] > 0 && r.deviation[n - 2] > 0)
                  ? std::log(r.deviation[n - 2] / r.deviation[n - 1]) / std::log(ratio)
                  : 0.0;
    r.max_relative = r.deviation.back() / std::max(1.0, fmax);
    return r;
}

} // namespace potkit
