#pragma once

// Test functions: nonnegative subharmonic functions on D minus a hole D0,
// bounded by b on the hole boundary and vanishing at the boundary of D.
// Validation, radial and Green-composite constructors, the glued extension
// and its truncations, closure operations and distance sandwiches.

#include "potkit/greenfn.hpp"
#include "potkit/superlap.hpp"

#include <array>
#include <optional>

namespace potkit
{

struct TestFunction
{
    Evaluator v;
    Domain domain;
    Domain hole;
    double b = 0.0;
    std::string provenance = "custom";
    std::vector<double> bounds;  // per-branch bounds (annulus variant)

    /// v on the domain, 0 off it.
    double operator()(Complex z) const { return contains(domain, z) ? v(z) : 0.0; }
};

// ---------------------------------------------------------------------------
// Validation

struct ValidationOptions
{
    double h = 1e-2;         // submean radii are 4h, 8h, 16h
    double tol = 1e-6;
    std::size_t lattice = 24;
    std::size_t boundary_samples = 720;
    std::size_t circle_nodes = 128;
    std::array<double, 3> collar{1e-2, 1e-3, 1e-4};
};

struct ValidationReport
{
    bool valid = true;
    std::string failed_check;  // nonnegativity | submean | hole_bound | boundary_decay
    std::optional<Complex> witness;
    double witness_value = 0.0;
    double boundary_sup = 0.0;
    std::array<double, 3> collar_sup{0, 0, 0};
    std::size_t points_checked = 0;
    double h_used = 0.0;

    void fail(std::string what, Complex z, double val)
    {
        if (!valid)
            return;
        valid = false;
        failed_check = std::move(what);
        witness = z;
        witness_value = val;
    }
};

namespace detail
{

inline Box sampling_box(const Domain& d, const Domain& hole)
{
    if (is_bounded(d)) {
        const Complex c = characteristic_center(d);
        return Box::around(c, characteristic_radius(d));
    }
    const Complex c = characteristic_center(hole);
    return Box::around(c, 4.0 * std::max(characteristic_radius(hole), 0.25));
}

inline bool in_ring(const Domain& d, const Domain& hole, Complex z, double margin)
{
    if (!contains(d, z) || contains(hole, z))
        return false;
    return boundary_distance(d, z) > margin && boundary_distance(hole, z) > margin;
}

} // namespace detail

struct SubmeanResult
{
    bool ok = true;
    std::optional<Complex> witness;
    double defect = 0.0;  // most negative (mean - value)
    double radius = 0.0;
};

/// v(z) <= mean of v on |w - z| = rho + tol for rho in {4h, 8h, 16h}.
template <class V>
SubmeanResult submean_check(V&& v, const std::vector<Complex>& points, double h, double tol,
                            std::size_t nodes = 128)
{
    SubmeanResult r;
    for (Complex z : points) {
        const double vz = v(z);
        for (double rho : {4 * h, 8 * h, 16 * h}) {
            const double d = circle_mean(v, z, rho, nodes).value - vz;
            if (d < r.defect) {
                r.defect = d;
                if (d < -tol) {
                    r.ok = false;
                    r.witness = z;
                    r.radius = rho;
                }
            }
        }
    }
    return r;
}

template <class V>
ValidationReport validate_test_function(V&& v, const Domain& D, const Domain& D0, double b,
                                        const ValidationOptions& opt = {})
{
    validate_hole(D, D0);
    ValidationReport rep;
    // lattice of interior points keeping the largest circle inside D \ clos D0
    const Box box = detail::sampling_box(D, D0);
    std::vector<Complex> pts;
    double h = opt.h;
    for (int attempt = 0; attempt < 6; ++attempt) {
        pts.clear();
        const double margin = 16.0 * h * 1.05;
        const std::size_t n = opt.lattice;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) {
                const Complex z(box.xmin + (box.xmax - box.xmin) * (i + 0.5) / static_cast<double>(n),
                                box.ymin + (box.ymax - box.ymin) * (j + 0.5) / static_cast<double>(n));
                if (detail::in_ring(D, D0, z, margin))
                    pts.push_back(z);
            }
        if (pts.size() >= 8)
            break;
        h *= 0.5;
    }
    rep.h_used = h;
    rep.points_checked = pts.size();

    // (a) nonnegativity
    for (Complex z : pts) {
        const double val = v(z);
        if (!(val >= -opt.tol))
            rep.fail("nonnegativity", z, val);
    }
    // (b) submean
    if (rep.valid) {
        const SubmeanResult s = submean_check(v, pts, h, opt.tol, opt.circle_nodes);
        if (!s.ok)
            rep.fail("submean", *s.witness, s.defect);
    }
    // (c) bound on the hole boundary
    double sup = -inf;
    Complex arg{};
    for (Complex z : boundary_points(D0, opt.boundary_samples)) {
        if (!contains(D, z))
            continue;
        const double val = v(z);
        if (val > sup) {
            sup = val;
            arg = z;
        }
    }
    rep.boundary_sup = sup;
    if (sup > b + opt.tol)
        rep.fail("hole_bound", arg, sup);
    // (d) decay at the boundary of D
    for (std::size_t k = 0; k < opt.collar.size(); ++k) {
        double s = 0.0;
        Complex w{};
        for (Complex z : collar_points(D, opt.collar[k], 256)) {
            if (contains(D0, z))
                continue;
            const double val = v(z);
            if (val > s || std::isnan(val)) {
                s = val;
                w = z;
            }
        }
        rep.collar_sup[k] = s;
        if (std::isnan(s) || s < -opt.tol)
            rep.fail("boundary_decay", w, s);
    }
    const auto& cs = rep.collar_sup;
    const bool decreasing = cs[1] <= cs[0] + opt.tol && cs[2] <= cs[1] + opt.tol;
    const bool small = cs[2] <= opt.tol || cs[2] < 0.5 * cs[0];
    if (!(decreasing && small))
        rep.fail("boundary_decay", {}, cs[2]);
    return rep;
}

inline ValidationReport validate_test_function(const TestFunction& t, const ValidationOptions& opt = {})
{
    return validate_test_function(t.v, t.domain, t.hole, t.b, opt);
}

// ---------------------------------------------------------------------------
// Radial test functions

struct PlaneVariant
{
    double R0 = 1.0;
};
struct DiscVariant
{
    double r0 = 0.5;
};
struct AnnulusVariant
{
    double r1 = 0.1, r_in = 0.5, r_out = 2.0, r2 = 10.0;
};
using RadialVariant = std::variant<PlaneVariant, DiscVariant, AnnulusVariant>;

namespace detail
{

inline void require_monotone(const RealFn& d, double a, double b, bool decreasing, const char* what)
{
    const double hi = std::isfinite(b) ? b : a * 1e4 + 100.0;
    double prev = d(a);
    if (!(prev > 0.0))
        throw Error(std::string(what) + ": density must be positive");
    for (int k = 1; k <= 200; ++k) {
        const double t = std::isfinite(b) ? a + (hi - a) * k / 200.0 * 0.999 : a * std::pow(hi / a, k / 200.0);
        const double cur = d(t);
        if (!(cur > 0.0))
            throw Error(std::string(what) + ": density must be positive");
        if (decreasing ? cur > prev * (1 + 1e-12) : cur < prev * (1 - 1e-12))
            throw Error(std::string(what) + ": density not monotone at t=" + std::to_string(t));
        prev = cur;
    }
}

inline double log_integral(const RealFn& d, double lo, double hi)
{
    if (!(hi > lo))
        return 0.0;
    if (lo > 0.0 && std::isfinite(hi)) {
        // t = e^u flattens the 1/t factor; the plain rule subdivides heavily over several decades
        const QuadResult q = integrate([&](double u) { return d(std::exp(u)); }, std::log(lo), std::log(hi));
        return q.value;
    }
    const ExtendedReal e = integrate_nonnegative([&](double t) { return d(t) / t; }, lo, hi);
    if (!e.is_finite())
        throw Error("not in decr+ class: " + e.evidence);
    return e.value;
}

} // namespace detail

/// v(z) = int_{|z|}^{upper} d(t)/t dt (inner annulus branch: int_{r1}^{|z|}).
inline TestFunction radial_test_function(RealFn d, const RadialVariant& variant)
{
    TestFunction t;
    t.provenance = "radial";
    if (const auto* p = std::get_if<PlaneVariant>(&variant)) {
        detail::require_monotone(d, p->R0, inf, true, "plane variant");
        const ExtendedReal b = integrate_nonnegative([&](double s) { return d(s) / s; }, p->R0, inf);
        if (!b.is_finite())
            throw Error("not in decr+ class: " + b.evidence);
        t.b = b.value;
        t.domain = Plane{};
        t.hole = Disc{{}, p->R0};
        t.v = [d](Complex z) { return detail::log_integral(d, std::abs(z), inf); };
    } else if (const auto* q = std::get_if<DiscVariant>(&variant)) {
        detail::require_monotone(d, q->r0, 1.0, true, "disc variant");
        t.b = detail::log_integral(d, q->r0, 1.0);
        t.domain = Disc{{}, 1.0};
        t.hole = Disc{{}, q->r0};
        t.v = [d](Complex z) { return detail::log_integral(d, std::abs(z), 1.0); };
    } else {
        const auto a = std::get<AnnulusVariant>(variant);
        if (!(0.0 <= a.r1 && a.r1 < a.r_in && a.r_in <= a.r_out && a.r_out < a.r2))
            throw Error("annulus variant needs r1 < r' <= r'' < r2");
        detail::require_monotone(d, std::max(a.r1, 1e-300) + 1e-12 * (a.r_in - a.r1), a.r_in, false, "inner branch");
        detail::require_monotone(d, a.r_out, a.r2, true, "outer branch");
        const double b1 = detail::log_integral(d, a.r1, a.r_in);
        const double b2 = detail::log_integral(d, a.r_out, a.r2);
        t.b = std::max(b1, b2);
        t.bounds = {b1, b2};
        t.domain = Annulus{a.r1, a.r2, {}};
        t.hole = Annulus{a.r_in, a.r_out, {}};
        const double mid = std::sqrt(a.r_in * a.r_out);
        t.v = [d, a, mid](Complex z) {
            const double r = std::abs(z);
            if (r <= mid)
                return detail::log_integral(d, a.r1, std::min(r, a.r_in));
            return detail::log_integral(d, std::max(r, a.r_out), a.r2);
        };
    }
    return t;
}

// ---------------------------------------------------------------------------
// Composites of Green functions and hyperbolic radii

enum class CompositeVariant
{
    green_ratio,      // g_D f(s/g_D), s harmonic (default s = g_Dhat)
    of_green,         // f o g_D'
    green_reciprocal, // g_D f(1/g_D)
    log1p_green,      // log(1+g_D) f(s/log(1+g_D))
    radius,           // R f(s/R)
    log1p_radius,     // log(1+N R) f(s/log(1+N R))
};

struct CompositeInputs
{
    Domain domain = Disc{{}, 1.0};
    Domain hole = Disc{{}, 0.5};
    Complex pole{};
    ConvexFn1D f = ConvexFn1D::identity();
    std::optional<Domain> outer;   // D-hat for green_ratio
    std::optional<Domain> inner;   // D' for of_green (defaults to D)
    Evaluator s;                   // defaults: g_Dhat (green_ratio), g_D otherwise
    double N = 1.0;                // for log1p_radius
    double image_bound = 1e6;      // |s/g| above this counts as unbounded
    std::size_t samples = 720;
};

namespace detail
{

inline SmoothField hyperbolic_radius(const Domain& d)
{
    if (const auto* disc = std::get_if<Disc>(&d))
        return SmoothField::hyperbolic_radius_disc(disc->center, disc->radius);
    if (const auto* hp = std::get_if<HalfPlane>(&d))
        return SmoothField::hyperbolic_radius_half_plane(*hp);
    throw Error("hyperbolic radius available in closed form for discs and half-planes only");
}

} // namespace detail

inline TestFunction green_composite(CompositeVariant variant, const CompositeInputs& in)
{
    validate_hole(in.domain, in.hole);
    if (!contains(in.hole, in.pole))
        throw Error("pole must lie in the hole");
    const GreenFunction gD(in.domain, in.pole);
    const ConvexFn1D f = in.f;
    Evaluator g;     // the "g" of the superposition (denominator)
    Evaluator s = in.s;
    switch (variant) {
    case CompositeVariant::green_ratio: {
        g = [gD](Complex z) { return gD(z); };
        if (!s) {
            if (!in.outer)
                throw Error("green_ratio needs s or an outer domain");
            const GreenFunction gh(*in.outer, in.pole);
            // domination: g_Dhat >= g_D on D
            for (Complex z : boundary_points(in.hole, 64))
                if (gh(z) < gD(z) * (1 - 1e-12))
                    throw Error("outer domain does not contain the domain");
            s = [gh](Complex z) { return gh(z); };
        }
        break;
    }
    case CompositeVariant::of_green: {
        const GreenFunction gi(in.inner ? *in.inner : in.domain, in.pole);
        g = [](Complex) { return 1.0; };
        s = [gi](Complex z) { return gi(z); };
        if (std::abs(f(0.0)) > 1e-14 || !f.increasing)
            throw Error("of_green needs f increasing with f(0) = 0");
        break;
    }
    case CompositeVariant::green_reciprocal:
        g = [gD](Complex z) { return gD(z); };
        s = [](Complex) { return 1.0; };
        break;
    case CompositeVariant::log1p_green:
        g = [gD](Complex z) { return std::log1p(gD(z)); };
        if (!s)
            s = [gD](Complex z) { return gD(z); };
        if (std::abs(f(0.0)) > 1e-14 || !f.increasing)
            throw Error("log1p_green needs f increasing with f(0) = 0");
        break;
    case CompositeVariant::radius:
    case CompositeVariant::log1p_radius: {
        const SmoothField R = detail::hyperbolic_radius(in.domain);
        if (variant == CompositeVariant::radius)
            g = [R](Complex z) { return std::max(R(z), 0.0); };
        else
            g = [R, N = in.N](Complex z) { return std::log1p(N * std::max(R(z), 0.0)); };
        if (!s)
            s = [gD](Complex z) { return gD(z); };
        if (std::abs(f(0.0)) > 1e-14 || !f.increasing)
            throw Error("hyperbolic-radius composites need f increasing with f(0) = 0");
        break;
    }
    }

    // image of s/g: sampled on the hole boundary and a lattice of D \ D0
    double lo = inf, hi = -inf;
    std::vector<Complex> pts = boundary_points(in.hole, in.samples);
    const Box box = detail::sampling_box(in.domain, in.hole);
    for (int j = 0; j < 40; ++j)
        for (int i = 0; i < 40; ++i) {
            const Complex z(box.xmin + (box.xmax - box.xmin) * (i + 0.5) / 40.0,
                            box.ymin + (box.ymax - box.ymin) * (j + 0.5) / 40.0);
            if (detail::in_ring(in.domain, in.hole, z, 1e-3))
                pts.push_back(z);
        }
    for (Complex z : pts) {
        const double gv = g(z);
        if (!(gv > 0.0))
            continue;
        const double x = s(z) / gv;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (!(std::abs(lo) < in.image_bound && std::abs(hi) < in.image_bound))
        throw Error("unbounded image s/g");
    if (lo < f.lo || hi > f.hi)
        throw Error("image of s/g leaves the domain of f");
    check_convex(f, lo, hi);
    if (variant == CompositeVariant::green_ratio || variant == CompositeVariant::green_reciprocal)
        for (int k = 0; k <= 100; ++k)
            if (f(lo + (hi - lo) * k / 100.0) < 0.0)
                throw Error("f must be nonnegative on the image");

    TestFunction t;
    t.domain = in.domain;
    t.hole = in.hole;
    t.provenance = variant == CompositeVariant::radius || variant == CompositeVariant::log1p_radius ? "hyperbolic"
                                                                                                       : "green_composite";
    t.v = [g, s, f](Complex z) {
        const double gv = g(z);
        if (!(gv > 0.0))
            return 0.0;
        return gv * f(s(z) / gv);
    };
    double b = 0.0;
    for (Complex z : boundary_points(in.hole, in.samples))
        b = std::max(b, t.v(z));
    t.b = b;
    return t;
}

// ---------------------------------------------------------------------------
// Glued extension and truncations

struct GluedPotential
{
    Evaluator V;
    double c_tilde = 0.0;
    Domain glue_domain;
    Complex pole{};

    double operator()(Complex z) const { return V(z); }
};

/// V = g_Dt on clos D0, max(g_Dt, c v) on Dt \ clos D0, c v on D \ Dt, 0
/// outside D, with c = inf over the hole boundary of g_Dt divided by b.
inline GluedPotential glue_extend(const TestFunction& v, const Domain& Dt, Complex z0, std::size_t samples = 2048)
{
    if (!contains(v.hole, z0))
        throw Error("pole must lie in the hole");
    if (!(v.b > 0.0))
        throw Error("class bound b must be positive");
    validate_hole(Dt, v.hole);
    for (Complex z : boundary_points(Dt, 256))
        if (!contains(v.domain, z) && boundary_distance(v.domain, z) > 1e-12)
            throw Error("glue domain must lie inside the domain");
    const GreenFunction g(Dt, z0);
    double m = inf;
    for (Complex z : boundary_points(v.hole, samples))
        m = std::min(m, g(z));
    if (!(m > 0.0))
        throw Error("Green function vanishes on the hole boundary: glue domain too tight");
    const double c = m / v.b;
    GluedPotential out;
    out.c_tilde = c;
    out.glue_domain = Dt;
    out.pole = z0;
    const Domain D = v.domain, D0 = v.hole;
    const Evaluator fv = v.v;
    out.V = [g, c, D, D0, Dt, fv, z0](Complex z) -> double {
        if (z == z0)
            return inf;
        const bool in_hole = contains(D0, z) || boundary_distance(D0, z) == 0.0;
        if (in_hole)
            return g(z);
        if (contains(Dt, z))
            return std::max(g(z), c * fv(z));
        if (contains(D, z))
            return c * fv(z);
        return 0.0;
    };
    return out;
}

/// V_n = max(0, V - 1/n).
inline Evaluator truncate_to_potential(const Evaluator& V, long n)
{
    if (n <= 0)
        throw Error("truncation index must be positive");
    const double eps = 1.0 / static_cast<double>(n);
    return [V, eps](Complex z) { return std::max(0.0, V(z) - eps); };
}

// ---------------------------------------------------------------------------
// Closure operations

namespace detail
{

inline bool same_domain(const Domain& a, const Domain& b)
{
    if (a.index() != b.index())
        return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = std::get<T>(b);
            if constexpr (std::is_same_v<T, Plane>)
                return true;
            else if constexpr (std::is_same_v<T, Disc> || std::is_same_v<T, ExteriorDisc>)
                return x.center == y.center && x.radius == y.radius;
            else if constexpr (std::is_same_v<T, Annulus>)
                return x.center == y.center && x.r1 == y.r1 && x.r2 == y.r2;
            else if constexpr (std::is_same_v<T, HalfPlane>)
                return x.point == y.point && x.normal == y.normal;
            else
                return x.mask.values() == y.mask.values() && x.mask.h() == y.mask.h();
        },
        a);
}

} // namespace detail

inline TestFunction sum(const TestFunction& a, const TestFunction& b)
{
    if (!detail::same_domain(a.domain, b.domain) || !detail::same_domain(a.hole, b.hole))
        throw Error("incompatible domains");
    TestFunction t = a;
    Evaluator va = a.v, vb = b.v;
    t.v = [va, vb](Complex z) { return va(z) + vb(z); };
    t.b = a.b + b.b;
    t.provenance = "sum";
    t.bounds.clear();
    return t;
}

inline TestFunction scale(const TestFunction& a, double c)
{
    if (!(c >= 0.0))
        throw Error("scale factor must be nonnegative");
    TestFunction t = a;
    Evaluator va = a.v;
    t.v = [va, c](Complex z) { return c == 0.0 ? 0.0 : c * va(z); };
    t.b = c * a.b;
    for (double& x : t.bounds)
        x *= c;
    return t;
}

/// v o h on D \ D0 where h maps D \ D0 into the domain of v minus its hole
/// (checked on a sample lattice).
inline TestFunction compose_holomorphic(const TestFunction& v, std::function<Complex(Complex)> h, const Domain& D,
                                        const Domain& D0)
{
    validate_hole(D, D0);
    const Box box = detail::sampling_box(D, D0);
    for (int j = 0; j < 32; ++j)
        for (int i = 0; i < 32; ++i) {
            const Complex z(box.xmin + (box.xmax - box.xmin) * (i + 0.5) / 32.0,
                            box.ymin + (box.ymax - box.ymin) * (j + 0.5) / 32.0);
            if (!detail::in_ring(D, D0, z, 1e-9))
                continue;
            const Complex w = h(z);
            if (!contains(v.domain, w) || contains(v.hole, w))
                throw Error("incompatible domains: h does not map D \\ D0 into D' \\ D0'");
        }
    // boundary of D0 must land in the closure of D0'
    for (Complex z : boundary_points(D0, 128)) {
        const Complex w = h(z);
        if (!contains(v.hole, w) && boundary_distance(v.hole, w) > 1e-9)
            throw Error("incompatible domains: hole boundary not mapped to the hole closure");
    }
    TestFunction t;
    t.domain = D;
    t.hole = D0;
    Evaluator fv = v.v;
    t.v = [fv, h](Complex z) { return fv(h(z)); };
    t.b = v.b;
    t.provenance = "compose";
    return t;
}

// ---------------------------------------------------------------------------
// Trigonometrically convex profile H(r e^{it}) = h(t) r^{-p}

/// h(t) = cos(rho t) for |t| < pi/(2 rho), 0 otherwise; subharmonic off 0
/// exactly when p >= rho.
inline Evaluator trig_convex_function(double rho, double p)
{
    if (!(rho > 0.0))
        throw Error("trigonometric order must be positive");
    return [rho, p](Complex z) {
        const double t = std::arg(z);
        const double ht = std::abs(t) < pi / (2.0 * rho) ? std::cos(rho * t) : 0.0;
        return ht * std::pow(std::abs(z), -p);
    };
}

// ---------------------------------------------------------------------------
// Green / distance sandwiches

struct SandwichConstants
{
    double lower = 1.0;  // b0 (or a0)
    double upper = 1.0;  // B0 (or A0)
};

/// b0 = min(1, min g/d), B0 = max(1, max g/d) over the sample points.
template <class G, class Dist>
SandwichConstants fit_green_distance(G&& g, Dist&& d, const std::vector<Complex>& pts)
{
    SandwichConstants c;
    for (Complex z : pts) {
        const double dz = d(z);
        if (!(dz > 0.0))
            continue;
        const double r = g(z) / dz;
        c.lower = std::min(c.lower, r);
        c.upper = std::max(c.upper, r);
    }
    return c;
}

struct SandwichResult
{
    bool holds = true;
    std::optional<Complex> witness;
    double worst = 0.0;  // largest violation
};

/// f(b0 d) <= f(g) <= f(B0 d), f increasing convex with f(0) = 0.
template <class G, class Dist>
SandwichResult check_sandwich_composed(const ConvexFn1D& f, G&& g, Dist&& d, SandwichConstants k,
                                       const std::vector<Complex>& pts, double tol = 1e-12)
{
    SandwichResult r;
    for (Complex z : pts) {
        const double gv = g(z), dv = d(z);
        const double mid = f(gv);
        const double viol = std::max(f(k.lower * dv) - mid, mid - f(k.upper * dv));
        if (viol > r.worst) {
            r.worst = viol;
            if (viol > tol * std::max(1.0, std::abs(mid))) {
                r.holds = false;
                r.witness = z;
            }
        }
    }
    return r;
}

/// b0 d f(1/(b0 d)) <= g f(1/g) <= B0 d f(1/(B0 d)), f decreasing convex.
template <class G, class Dist>
SandwichResult check_sandwich_reciprocal(const ConvexFn1D& f, G&& g, Dist&& d, SandwichConstants k,
                                         const std::vector<Complex>& pts, double tol = 1e-12)
{
    SandwichResult r;
    auto phi = [&](double x) { return x * f(1.0 / x); };
    for (Complex z : pts) {
        const double gv = g(z), dv = d(z);
        const double mid = phi(gv);
        const double viol = std::max(phi(k.lower * dv) - mid, mid - phi(k.upper * dv));
        if (viol > r.worst) {
            r.worst = viol;
            if (viol > tol * std::max(1.0, std::abs(mid))) {
                r.holds = false;
                r.witness = z;
            }
        }
    }
    return r;
}

/// Constants for a0 d f(A0 dh/d) <= g f(gh/g) <= A0 d f(a0 dh/d) with f
/// decreasing: from the ratio range [b, B] of g/d and gh/dh, a0 = b/B, A0 = B/b.
template <class G, class GH, class Dist, class DistH>
SandwichConstants fit_ratio_sandwich(G&& g, GH&& gh, Dist&& d, DistH&& dh, const std::vector<Complex>& pts)
{
    const SandwichConstants c1 = fit_green_distance(g, d, pts);
    const SandwichConstants c2 = fit_green_distance(gh, dh, pts);
    const double b = std::min(c1.lower, c2.lower), B = std::max(c1.upper, c2.upper);
    return {b / B, B / b};
}

template <class G, class GH, class Dist, class DistH>
SandwichResult check_ratio_sandwich(const ConvexFn1D& f, G&& g, GH&& gh, Dist&& d, DistH&& dh, SandwichConstants k,
                                    const std::vector<Complex>& pts, double tol = 1e-12)
{
    SandwichResult r;
    for (Complex z : pts) {
        const double gv = g(z), dv = d(z);
        const double mid = gv * f(gh(z) / gv);
        const double lower = k.lower * dv * f(k.upper * dh(z) / dv);
        const double upper = k.upper * dv * f(k.lower * dh(z) / dv);
        const double viol = std::max(lower - mid, mid - upper);
        if (viol > r.worst) {
            r.worst = viol;
            if (viol > tol * std::max(1.0, std::abs(mid))) {
                r.holds = false;
                r.witness = z;
            }
        }
    }
    return r;
}

} // namespace potkit
