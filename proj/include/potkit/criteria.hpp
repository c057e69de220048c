#pragma once

// The inequality engine: constants C and Cbar_M, majorization reports for
// subharmonic sources and holomorphic models, Hadamard/Blaschke classifiers,
// radial corollaries and the converse-hypothesis scan.

#include "potkit/radial.hpp"
#include "potkit/testfn.hpp"
#include "potkit/zerolib.hpp"

#include <map>

namespace potkit
{

namespace detail
{

inline std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

inline std::string describe(const Domain& d)
{
    std::ostringstream os;
    os.precision(10);
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Plane>)
                os << "plane";
            else if constexpr (std::is_same_v<T, Disc>)
                os << "disc(" << x.center.real() << "," << x.center.imag() << ";" << x.radius << ")";
            else if constexpr (std::is_same_v<T, ExteriorDisc>)
                os << "exterior_disc(" << x.center.real() << "," << x.center.imag() << ";" << x.radius << ")";
            else if constexpr (std::is_same_v<T, Annulus>)
                os << "annulus(" << x.center.real() << "," << x.center.imag() << ";" << x.r1 << "," << x.r2 << ")";
            else if constexpr (std::is_same_v<T, HalfPlane>)
                os << "half_plane(" << x.point.real() << "," << x.point.imag() << ";" << x.normal.real() << ","
                   << x.normal.imag() << ")";
            else
                os << "grid_region";
        },
        d);
    return os.str();
}

inline std::optional<Complex> center_of(const Domain& d)
{
    if (const auto* x = std::get_if<Disc>(&d))
        return x->center;
    if (const auto* x = std::get_if<Annulus>(&d))
        return x->center;
    if (const auto* x = std::get_if<ExteriorDisc>(&d))
        return x->center;
    return std::nullopt;
}

/// D \ D0 (D0 open, so its boundary belongs to the difference). Exact radial
/// regions for concentric disc/annulus/plane pairs.
inline Region difference_region(const Domain& D, const Domain& D0)
{
    if (const auto* h = std::get_if<Disc>(&D0)) {
        if (std::holds_alternative<Plane>(D))
            return Region::annulus(h->center, h->radius, inf, true, false);
        if (const auto* d = std::get_if<Disc>(&D); d && d->center == h->center)
            return Region::annulus(h->center, h->radius, d->radius, true, false);
        if (const auto* a = std::get_if<Annulus>(&D); a && a->center == h->center && a->r1 == 0.0)
            return Region::annulus(h->center, h->radius, a->r2, true, false);
    }
    return Region::of(D).minus(Region::of(D0));
}

inline Region domain_region(const Domain& D)
{
    if (std::holds_alternative<Plane>(D))
        return Region::all();
    if (const auto* d = std::get_if<Disc>(&D))
        return Region::open_disc(d->center, d->radius);
    if (const auto* a = std::get_if<Annulus>(&D))
        return Region::annulus(a->center, a->r1, a->r2);
    if (const auto* e = std::get_if<ExteriorDisc>(&D))
        return Region::outside_closed_disc(e->center, e->radius);
    return Region::of(D);
}

// int g_{D(c,R)}(., z0) dmu for a nonnegative mu, exact on concentric
// circle atoms and rings (circle mean of the Green function is
// log(R / max(r, |z0 - c|))).
inline ExtendedReal green_integral_disc(const Disc& Dt, Complex z0, const RieszMeasure& mu)
{
    const Complex c = Dt.center;
    const double R = Dt.radius, d0 = std::abs(z0 - c);
    const GreenFunction g(Dt, z0);
    ExtendedReal tot = ExtendedReal::finite(0.0);
    RieszMeasure rest;
    for (const auto& a : mu.atoms)
        rest.atoms.push_back(a);
    for (const auto& ci : mu.circles) {
        if (ci.center == c && !ci.weight) {
            if (ci.radius < R)
                tot = tot + ExtendedReal::finite(ci.mass * std::log(R / std::max(ci.radius, d0)));
        } else {
            rest.circles.push_back(ci);
        }
    }
    for (const auto& ring : mu.rings) {
        if (ring.center != c) {
            rest.rings.push_back(ring);
            continue;
        }
        const double lo = std::max(ring.a, 0.0), hi = std::min(ring.b, R);
        if (!(hi > lo))
            continue;
        auto phi = [&](double r) { return ring.dn(r) * std::log(R / std::max(r, d0)); };
        if (d0 > lo && d0 < hi) {
            tot = tot + integrate_nonnegative(phi, lo, d0) + integrate_nonnegative(phi, d0, hi);
        } else {
            tot = tot + integrate_nonnegative(phi, lo, hi);
        }
    }
    rest.grids = mu.grids;
    if (!rest.empty())
        tot = tot + integrate([&](Complex z) { return g(z); }, rest, Region::open_disc(c, R));
    return tot;
}

inline ExtendedReal green_integral(const Domain& Dt, Complex z0, const RieszMeasure& mu)
{
    if (const auto* d = std::get_if<Disc>(&Dt))
        return green_integral_disc(*d, z0, mu);
    const GreenFunction g(Dt, z0);
    return integrate([&](Complex z) { return g(z); }, mu, domain_region(Dt));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Constants

/// Default glue domain: the disc concentric with D0 of radius 2 r0 when D is
/// unbounded, sqrt(r0 R) when D has scale R.
inline Domain default_glue_domain(const Domain& D, const Domain& D0)
{
    const auto* h = std::get_if<Disc>(&D0);
    if (!h)
        throw Error("give the glue domain explicitly for a non-disc hole");
    if (!is_bounded(D))
        return Disc{h->center, 2.0 * h->radius};
    const double R = characteristic_radius(D);
    const Disc out{h->center, std::sqrt(h->radius * R)};
    for (Complex z : boundary_points(out, 256))
        if (!contains(D, z))
            throw Error("default glue domain leaves the domain; give it explicitly");
    return out;
}

/// inf over the boundary of D0 of g_Dt(., z0).
inline double green_boundary_inf(const Domain& D0, const Domain& Dt, Complex z0, std::size_t samples = 4096)
{
    if (const auto* h = std::get_if<Disc>(&D0))
        if (const auto* t = std::get_if<Disc>(&Dt); t && t->center == h->center && z0 == h->center)
            return std::log(t->radius / h->radius);
    const GreenFunction g(Dt, z0);
    const auto pts = boundary_points(D0, samples);
    double best = inf;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double v = g(pts[k]);
        if (v < best) {
            best = v;
            arg = k;
        }
    }
    // refine along a circular hole boundary
    if (const auto* h = std::get_if<Disc>(&D0)) {
        const double th0 = std::arg(pts[arg] - h->center);
        double lo = th0 - two_pi / samples, hi = th0 + two_pi / samples;
        auto f = [&](double th) { return g(h->center + std::polar(h->radius, th)); };
        for (int it = 0; it < 100; ++it) {
            const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            if (f(m1) < f(m2))
                hi = m2;
            else
                lo = m1;
        }
        best = std::min(best, f(0.5 * (lo + hi)));
    }
    return best;
}

/// C = b / inf_{boundary of D0} g_Dt(., z0).
inline double constant_C(double b, const Domain& D0, const Domain& Dt, Complex z0, std::size_t samples = 4096)
{
    if (!(b > 0.0))
        throw Error("class bound b must be positive");
    if (!contains(D0, z0))
        throw Error("z0 must lie in the hole");
    validate_hole(Dt, D0);
    const double m = green_boundary_inf(D0, Dt, z0, samples);
    if (!(m > 0.0))
        throw Error("infimum of the Green function on the hole boundary is not positive");
    return b / m;
}

/// Cbar_M = int_Dt g_Dt(., z0) dnu_M + M(z0), plus int_{Dt \ D0} g dnu_M^-
/// when nu_M is signed (then D0 is required).
inline ExtendedReal constant_Cbar_M(double M_z0, const RieszMeasure& nu_M, const Domain& Dt, Complex z0,
                                    const Domain* D0 = nullptr, bool check_dom = true)
{
    if (!std::isfinite(M_z0))
        throw Error("z0 is not in dom M (M(z0) = " + detail::fmt(M_z0) + ")");
    if (!contains(Dt, z0))
        throw Error("z0 must lie in the glue domain");
    if (nu_M.empty())
        return ExtendedReal::finite(M_z0);
    if (check_dom) {
        const DomVerdict dv = dom_check(nu_M, z0, 0.25 * boundary_distance(Dt, z0));
        if (!dv.in_dom)
            throw Error("z0 is not in dom M: " + dv.integral.evidence);
    }
    const JordanParts jp = jordan_parts(nu_M);
    const bool signed_measure = !jp.minus.empty() && total_mass(jp.minus).value > 0.0;
    ExtendedReal c = detail::green_integral(Dt, z0, jp.plus);
    if (signed_measure) {
        const ExtendedReal neg = detail::green_integral(Dt, z0, jp.minus);
        c = c - neg;
        if (!D0)
            throw Error("a signed Riesz measure needs the hole to form the extra term");
        const GreenFunction g(Dt, z0);
        const Region ring = detail::domain_region(Dt).minus(Region::of(*D0));
        c = c + integrate([&](Complex z) { return g(z); }, jp.minus, ring);
    }
    return c + ExtendedReal::finite(M_z0);
}

// ---------------------------------------------------------------------------
// Majorization reports

struct MajorizationReport
{
    std::string form;  // "main" (sbh source) or "zeros" (holomorphic source)
    ExtendedReal lhs;
    ExtendedReal rhs;
    double slack = 0.0;
    double error_bar = 0.0;
    std::string verdict;  // holds | fails | inconclusive(...)
    double C = 0.0;
    ExtendedReal Cbar;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::pair<std::string, double>> traces;
};

struct MajorizationInputs
{
    // source: either u with its Riesz measure, or a holomorphic model
    Evaluator u;
    RieszMeasure nu_u;
    std::optional<HoloModel> model;
    double zero_radius = inf;                 // truncation ceiling for infinite zero sets
    std::function<double(double)> lhs_tail;   // bound on sum_{|z_k| > R} v(z_k)

    Evaluator M;
    RieszMeasure nu_M;

    TestFunction v;
    std::optional<Domain> glue;  // D-tilde (default_glue_domain otherwise)
    Complex z0{};

    std::optional<Complex> v_radial_about;
    bool validate_v = true;
    ValidationOptions validation{};
    std::size_t precondition_lattice = 64;
    double precondition_tol = 1e-9;
};

namespace detail
{

inline std::vector<Complex> precondition_points(const Domain& D, const Domain& D0, std::size_t n)
{
    std::vector<Complex> pts;
    const Box box = sampling_box(D, D0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const Complex z(box.xmin + (box.xmax - box.xmin) * (i + 0.5) / n, box.ymin + (box.ymax - box.ymin) * (j + 0.5) / n);
            if (contains(D, z) && !contains(D0, z))
                pts.push_back(z);
        }
    for (Complex z : boundary_points(D0, 512))
        if (contains(D, z) || !is_bounded(D))
            pts.push_back(z);
    for (double eps : {1e-2, 1e-3})
        for (Complex z : collar_points(D, eps, 256))
            if (!contains(D0, z))
                pts.push_back(z);
    if (!is_bounded(D)) {
        const Complex c = characteristic_center(D0);
        const double r = std::max(characteristic_radius(D0), 0.25);
        for (double s : {2.0, 4.0, 8.0, 16.0})
            for (std::size_t k = 0; k < 256; ++k)
                pts.push_back(c + std::polar(s * r, two_pi * (k + 0.5) / 256.0));
    }
    return pts;
}

} // namespace detail

/// zeros form for a holomorphic model f:
///   sum_{z_k in D \ D0} v(z_k) <= int v dnu_M [+ int_{Dt \ D0} v dnu_M^-] + C Cbar_M - C log|f(z0)|,
/// and the v-form for a subharmonic u:
///   C u(z0) + int v dnu_u <= int v dnu_M [+ int_{Dt \ D0} v dnu_M^-] + C Cbar_M.
inline MajorizationReport majorization_report(const MajorizationInputs& in)
{
    const TestFunction& v = in.v;
    const Domain& D = v.domain;
    const Domain& D0 = v.hole;
    if (!in.M)
        throw Error("the majorant M is required");
    const Evaluator u = in.model ? Evaluator([m = *in.model](Complex z) { return m.log_modulus(z); }) : in.u;
    if (!u)
        throw Error("a source u or a holomorphic model is required");
    if (!contains(D0, in.z0))
        throw Error("z0 must lie in the hole");
    const double u0 = u(in.z0);
    if (!std::isfinite(u0))
        throw Error("u(z0) is not finite");

    if (in.validate_v) {
        const ValidationReport vr = validate_test_function(v, in.validation);
        if (!vr.valid)
            throw Error("test function invalid: " + vr.failed_check);
    }

    for (Complex z : detail::precondition_points(D, D0, in.precondition_lattice)) {
        const double uz = u(z), Mz = in.M(z);
        if (uz > Mz + in.precondition_tol * (1.0 + std::abs(Mz)))
            throw Error("majorization precondition violated at (" + detail::fmt(z.real()) + "," + detail::fmt(z.imag()) +
                        "): u = " + detail::fmt(uz) + " > M = " + detail::fmt(Mz));
    }

    MajorizationReport rep;
    const Domain Dt = in.glue ? *in.glue : default_glue_domain(D, D0);
    validate_hole(Dt, D0);
    rep.C = constant_C(v.b, D0, Dt, in.z0);
    rep.Cbar = constant_Cbar_M(in.M(in.z0), in.nu_M, Dt, in.z0, &D0);

    IntegrationOptions io;
    io.radial_about = in.v_radial_about;
    const Region ring = detail::difference_region(D, D0);
    auto vf = [&](Complex z) { return v(z); };

    ExtendedReal vM = integrate(vf, in.nu_M, ring, io);
    const JordanParts jp = jordan_parts(in.nu_M);
    if (!jp.minus.empty() && total_mass(jp.minus).value > 0.0) {
        const Region extra = detail::domain_region(Dt).minus(Region::of(D0));
        vM = vM + integrate(vf, jp.minus, extra, io);
    }
    double tail = 0.0;
    bool truncated = false;
    if (in.model) {
        rep.form = "zeros";
        const HoloModel& m = *in.model;
        const bool infinite = m.kind() == HoloModel::Kind::scaled_sine;
        if (infinite && !std::isfinite(in.zero_radius))
            throw Error("infinite zero set: set a truncation radius");
        const ZeroSequence zs = m.zeros_within(in.zero_radius);
        CompensatedSum s;
        long counted = 0;
        for (const auto& z : zs.zeros())
            if (contains(D, z.z) && !contains(D0, z.z)) {
                s.add(z.multiplicity * v(z.z));
                counted += z.multiplicity;
            }
        if (infinite) {
            if (in.lhs_tail)
                tail = in.lhs_tail(in.zero_radius);
            else
                truncated = true;
        }
        rep.lhs = ExtendedReal::finite(s.value() + tail, tail);
        rep.traces.push_back({"zeros_counted", static_cast<double>(counted)});
        rep.traces.push_back({"zero_tail_bound", tail});
        rep.traces.push_back({"log_abs_f_z0", u0});
        rep.rhs = vM + rep.C * rep.Cbar + ExtendedReal::finite(-rep.C * u0);
    } else {
        rep.form = "main";
        rep.lhs = ExtendedReal::finite(rep.C * u0) + integrate(vf, in.nu_u, ring, io);
        rep.rhs = vM + rep.C * rep.Cbar;
    }
    rep.traces.push_back({"int_v_dnu_M", vM.is_finite() ? vM.value : inf});
    rep.traces.push_back({"C", rep.C});
    rep.traces.push_back({"Cbar_M", rep.Cbar.is_finite() ? rep.Cbar.value : inf});

    rep.error_bar = rep.lhs.error + rep.rhs.error + 1e-12 * (1.0 + std::abs(rep.lhs.value) + std::abs(rep.rhs.value));
    if (rep.rhs.is_plus_infinity()) {
        rep.slack = inf;
        rep.verdict = "holds";
    } else if (rep.lhs.is_plus_infinity()) {
        rep.slack = -inf;
        rep.verdict = "fails";
    } else {
        rep.slack = rep.rhs.value - rep.lhs.value;
        rep.verdict = rep.slack >= -rep.error_bar ? "holds" : "fails";
    }
    if (truncated && rep.verdict == "holds")
        rep.verdict = "inconclusive(truncated)";

    rep.config = {{"domain", detail::describe(D)},      {"hole", detail::describe(D0)},
                  {"glue_domain", detail::describe(Dt)}, {"z0", detail::fmt(in.z0.real()) + "," + detail::fmt(in.z0.imag())},
                  {"b", detail::fmt(v.b)},               {"test_function", v.provenance}};
    return rep;
}

// ---------------------------------------------------------------------------
// Hadamard and Blaschke classifiers

/// Zero moduli r(k), k = first, first+1, ..., nondecreasing; `last` unset for
/// infinite sequences. r is evaluated at real k for the integral test.
struct ModulusLaw
{
    std::string name;
    std::function<double(double)> modulus;
    long first = 1;
    std::optional<long> last;

    static ModulusLaw of(const ZeroSequence& zs)
    {
        std::vector<double> r;
        const ZeroSequence sorted = zs.sorted_by_modulus();
        for (const auto& z : sorted.zeros())
            for (int m = 0; m < z.multiplicity; ++m)
                r.push_back(std::abs(z.z));
        ModulusLaw law;
        law.name = "finite";
        law.first = 0;
        law.last = static_cast<long>(r.size()) - 1;
        law.modulus = [r](double k) { return r[static_cast<std::size_t>(std::llround(k))]; };
        return law;
    }
};

struct ConvergenceVerdict
{
    bool converges = false;
    double value = 0.0;       // partial sum + tail correction (converges)
    double tail_bound = 0.0;  // half-width of the tail bracket
    std::string evidence;     // divergence evidence
    std::vector<std::pair<long, double>> trace;  // partial sums at N = 10^j
    std::string classification() const { return converges ? "converges" : "diverges"; }
};

namespace detail
{

// sum_{k >= first} f(k) for a nonincreasing term function with an
// integral-test bracket [int_{N+1}^inf f, int_N^inf f] on the tail.
template <class F>
ConvergenceVerdict series_check(F&& term, long first, std::optional<long> last, long N)
{
    ConvergenceVerdict out;
    CompensatedSum s;
    const long stop = last ? *last : std::max(N, first);
    long next_trace = 10;
    for (long k = first; k <= stop; ++k) {
        s.add(term(static_cast<double>(k)));
        if (k + 1 - first == next_trace || k == stop) {
            out.trace.push_back({k, s.value()});
            next_trace *= 10;
        }
    }
    if (last) {
        out.converges = true;
        out.value = s.value();
        return out;
    }
    auto f = [&](double t) { return term(t); };
    const ExtendedReal upper = integrate_nonnegative(f, static_cast<double>(stop), inf);
    if (!upper.is_finite()) {
        out.converges = false;
        out.value = inf;
        out.evidence = "integral test: " + upper.evidence + "; partial sums " + fmt(s.value()) + " at N = " +
                       std::to_string(stop);
        return out;
    }
    const double lower = upper.value - integrate(f, static_cast<double>(stop), static_cast<double>(stop + 1)).value;
    out.converges = true;
    out.value = s.value() + 0.5 * (upper.value + lower);
    out.tail_bound = 0.5 * (upper.value - lower) + upper.error;
    return out;
}

} // namespace detail

/// sum |z_k|^{-q} over |z_k| >= R0.
inline ConvergenceVerdict hadamard_check(const ModulusLaw& law, double q, double R0 = 0.0, long N = 1000000)
{
    if (!(q > 0.0))
        throw Error("exponent q must be positive");
    auto term = [&](double k) {
        const double r = law.modulus(k);
        return r >= R0 && r > 0.0 ? std::pow(r, -q) : 0.0;
    };
    ConvergenceVerdict v = detail::series_check(term, law.first, law.last, N);
    if (!v.converges && !v.trace.empty()) {
        const auto [n, s] = v.trace.back();
        v.evidence += "; schedule log N - 1 = " + detail::fmt(std::log(static_cast<double>(n)) - 1.0);
    }
    return v;
}

/// int_{R0}^inf t^{-q} dn(t) for a radial measure with ring density dn.
inline ConvergenceVerdict hadamard_check_measure(const RealFn& dn, double q, double R0)
{
    if (!(q > 0.0) || !(R0 > 0.0))
        throw Error("need q > 0 and R0 > 0");
    const ExtendedReal e = integrate_nonnegative([&](double t) { return dn(t) * std::pow(t, -q); }, R0, inf);
    ConvergenceVerdict v;
    v.converges = e.is_finite();
    v.value = e.is_finite() ? e.value : inf;
    v.tail_bound = e.error;
    v.evidence = e.evidence;
    return v;
}

struct BlaschkeVerdict
{
    ConvergenceVerdict log_form;     // sum over |z_k| >= r0 of log(1/|z_k|)
    ConvergenceVerdict linear_form;  // sum of (1 - |z_k|) over the whole sequence
    bool converges() const { return linear_form.converges; }
};

inline BlaschkeVerdict blaschke_check(const ModulusLaw& law, double r0 = 0.5, long N = 1000000)
{
    if (!(r0 > 0.0 && r0 < 1.0))
        throw Error("r0 must lie in (0, 1)");
    for (long k = law.first; k < law.first + 16 && (!law.last || k <= *law.last); ++k)
        if (!(law.modulus(static_cast<double>(k)) < 1.0))
            throw Error("Blaschke data must lie in the unit disc");
    BlaschkeVerdict out;
    out.linear_form = detail::series_check([&](double k) { return 1.0 - law.modulus(k); }, law.first, law.last, N);
    out.log_form = detail::series_check(
        [&](double k) {
            const double r = law.modulus(k);
            return r >= r0 ? -std::log(r) : 0.0;
        },
        law.first, law.last, N);
    if (out.linear_form.converges != out.log_form.converges)
        throw Error("internal: Blaschke forms disagree despite 1 - r <= log(1/r) <= (1 - r)/r");
    return out;
}

inline BlaschkeVerdict blaschke_check(const ZeroSequence& zs, double r0 = 0.5)
{
    return blaschke_check(ModulusLaw::of(zs), r0);
}

/// int (1 - t) dn(t) and int log(1/t) dn(t) over [r0, 1) for a radial measure.
inline BlaschkeVerdict blaschke_check_measure(const RealFn& dn, double r0)
{
    BlaschkeVerdict out;
    auto one = [&](auto&& w) {
        const ExtendedReal e = integrate_nonnegative([&](double t) { return dn(t) * w(t); }, r0, 1.0);
        ConvergenceVerdict v;
        v.converges = e.is_finite();
        v.value = e.is_finite() ? e.value : inf;
        v.tail_bound = e.error;
        v.evidence = e.evidence;
        return v;
    };
    out.linear_form = one([](double t) { return 1.0 - t; });
    out.log_form = one([](double t) { return -std::log(t); });
    if (out.linear_form.converges != out.log_form.converges)
        throw Error("internal: Blaschke forms disagree");
    return out;
}

// ---------------------------------------------------------------------------
// Radial corollaries

struct RadialCorollaryInputs
{
    RadialVariant variant = PlaneVariant{};
    RadialProfile m;
    RealFn d;
    ModulusLaw zeros;
    long N = 1000000;                    // partial-sum cap for infinite laws
    std::optional<HoloModel> model;      // supplies the constants at z0 = 0
    std::optional<Domain> glue;
};

struct RadialCorollaryReport
{
    MajorizationReport report;
    double lhs_sum = 0.0;
    double lhs_tail = 0.0;
    double rhs_integral = 0.0;  // int d m'_+ (single form)
    double rhs_double = 0.0;    // int v d(r m'_+) including the circle atom
    double bridge_gap = 0.0;    // |rhs_double - rhs_integral|
};

namespace detail
{

inline double v_of(const RealFn& d, double lo, double hi)
{
    if (!(hi > lo))
        return 0.0;
    return integrate_nonnegative([&](double t) { return d(t) / t; }, lo, hi).value;
}

} // namespace detail

/// Plane: sum_{|z_k| >= R0} int_{|z_k|}^inf d(t)/t dt <= int_{R0}^inf d m'_+ + C Cbar - C log|f(0)|;
/// disc: the same on [r0, 1); annulus: inner and outer branches.
inline RadialCorollaryReport radial_corollary_report(const RadialCorollaryInputs& in)
{
    if (!in.d)
        throw Error("density d is required");
    const TestFunction v = radial_test_function(in.d, in.variant);  // class check
    const RadialProfile& m = in.m;
    RadialCorollaryReport out;
    auto& rep = out.report;
    rep.form = "radial";

    // per-zero value of the radial test function and the branch integrals
    std::function<double(double)> vr;
    std::function<double(double)> vr_double;  // same function, used against d(r m')
    double rhs = 0.0, dbl = 0.0;
    IntegrationOptions io;
    if (const auto* p = std::get_if<PlaneVariant>(&in.variant)) {
        const double R0 = p->R0;
        vr = [&, R0](double r) { return r >= R0 ? detail::v_of(in.d, r, inf) : 0.0; };
        const ExtendedReal I = integrate_nonnegative([&](double t) { return in.d(t) * m.right_derivative(t); }, R0, std::min(inf, m.r2()));
        rhs = I.is_finite() ? I.value : inf;
        const ExtendedReal J = integrate_nonnegative([&](double r) { return vr(r) * m.ring_density(r); }, R0, m.r2());
        dbl = vr(R0) * R0 * m.right_derivative(R0) + (J.is_finite() ? J.value : inf);
    } else if (const auto* q = std::get_if<DiscVariant>(&in.variant)) {
        const double r0 = q->r0;
        vr = [&, r0](double r) { return r >= r0 && r < 1.0 ? detail::v_of(in.d, r, 1.0) : 0.0; };
        const ExtendedReal I = integrate_nonnegative([&](double t) { return in.d(t) * m.right_derivative(t); }, r0, 1.0);
        rhs = I.is_finite() ? I.value : inf;
        const ExtendedReal J = integrate_nonnegative([&](double r) { return vr(r) * m.ring_density(r); }, r0, 1.0);
        dbl = vr(r0) * r0 * m.right_derivative(r0) + (J.is_finite() ? J.value : inf);
    } else {
        const auto a = std::get<AnnulusVariant>(in.variant);
        vr = [&, a](double r) {
            if (r > a.r1 && r <= a.r_in)
                return detail::v_of(in.d, a.r1, r);
            if (r >= a.r_out && r < a.r2)
                return detail::v_of(in.d, r, a.r2);
            return 0.0;
        };
        const ExtendedReal I1 = integrate_nonnegative([&](double t) { return in.d(t) * std::max(0.0, -m.left_derivative(t)); }, a.r1, a.r_in);
        const ExtendedReal I2 = integrate_nonnegative([&](double t) { return in.d(t) * std::max(0.0, m.right_derivative(t)); }, a.r_out, a.r2);
        rhs = (I1 + I2).is_finite() ? (I1 + I2).value : inf;
        // double form: int v d(-r m') on the inner branch plus int v d(r m') on the outer one
        const ExtendedReal J1 = integrate_nonnegative([&](double r) { return vr(r) * std::max(0.0, -m.ring_density(r)); }, a.r1, a.r_in);
        const ExtendedReal J2 = integrate_nonnegative([&](double r) { return vr(r) * std::max(0.0, m.ring_density(r)); }, a.r_out, a.r2);
        dbl = vr(a.r_in) * a.r_in * std::max(0.0, -m.left_derivative(a.r_in)) +
              vr(a.r_out) * a.r_out * std::max(0.0, m.right_derivative(a.r_out)) +
              ((J1 + J2).is_finite() ? (J1 + J2).value : inf);
    }

    // LHS: partial sums with an integral-test tail
    const ConvergenceVerdict cv = detail::series_check(
        [&](double k) { return vr(in.zeros.modulus(k)); }, in.zeros.first, in.zeros.last, in.N);
    out.lhs_tail = cv.tail_bound;
    out.lhs_sum = cv.converges ? cv.value : inf;
    out.rhs_integral = rhs;
    out.rhs_double = dbl;
    out.bridge_gap = std::isfinite(rhs) && std::isfinite(dbl) ? std::abs(rhs - dbl) : 0.0;

    rep.lhs = cv.converges ? ExtendedReal::finite(out.lhs_sum, out.lhs_tail) : ExtendedReal::plus_infinity(cv.evidence);
    rep.rhs = std::isfinite(rhs) ? ExtendedReal::finite(rhs) : ExtendedReal::plus_infinity("int d m' diverges");
    bool with_constants = false;
    if (in.model) {
        const double f0 = in.model->log_modulus(0.0);
        if (!std::isfinite(f0))
            throw Error("log|f(0)| is not finite");
        for (Complex z : detail::precondition_points(v.domain, v.hole, 48))
            if (in.model->log_modulus(z) > m(std::abs(z)) + 1e-9 * (1.0 + std::abs(m(std::abs(z)))))
                throw Error("log|f| <= m(|z|) violated at (" + detail::fmt(z.real()) + "," + detail::fmt(z.imag()) + ")");
        RadialMajorant M;
        if (const auto* p = std::get_if<PlaneVariant>(&in.variant))
            M = build_plane_majorant(m, p->R0);
        else if (const auto* q = std::get_if<DiscVariant>(&in.variant))
            M = build_disc_majorant(m, q->r0);
        else {
            const auto a = std::get<AnnulusVariant>(in.variant);
            M = build_annulus_majorant(m, a.r_in, a.r_out);
        }
        const Domain Dt = in.glue ? *in.glue : default_glue_domain(v.domain, v.hole);
        if (std::holds_alternative<AnnulusVariant>(in.variant))
            throw Error("constants for the annulus variant need a pole inside the hole; use majorization_report");
        rep.C = constant_C(v.b, v.hole, Dt, 0.0);
        rep.Cbar = constant_Cbar_M(M(0.0), M.riesz, Dt, 0.0);
        rep.rhs = rep.rhs + rep.C * rep.Cbar + ExtendedReal::finite(-rep.C * f0);
        with_constants = true;
    }
    rep.error_bar = rep.lhs.error + rep.rhs.error + 1e-10 * (1.0 + std::abs(rep.lhs.value) + std::abs(rep.rhs.value));
    if (rep.rhs.is_plus_infinity()) {
        rep.slack = inf;
        rep.verdict = "holds";
    } else if (rep.lhs.is_plus_infinity()) {
        rep.slack = -inf;
        rep.verdict = "fails";
    } else {
        rep.slack = rep.rhs.value - rep.lhs.value;
        rep.verdict = rep.slack >= -rep.error_bar ? "holds" : (with_constants ? "fails" : "inconclusive(no model)");
    }
    rep.traces = {{"lhs_sum", out.lhs_sum},
                  {"lhs_tail", out.lhs_tail},
                  {"rhs_integral", out.rhs_integral},
                  {"rhs_double", out.rhs_double},
                  {"bridge_gap", out.bridge_gap},
                  {"b", v.b}};
    rep.config = {{"variant", std::visit([](const auto& x) -> std::string {
                       using T = std::decay_t<decltype(x)>;
                       if constexpr (std::is_same_v<T, PlaneVariant>)
                           return "plane";
                       else if constexpr (std::is_same_v<T, DiscVariant>)
                           return "disc";
                       else
                           return "annulus";
                   }, in.variant)},
                  {"profile", m.kind()},
                  {"zeros", in.zeros.name}};
    return out;
}

/// Log-convex form: d(t) = -v'_-(log t) and m(r) = q(log r), so the sums are
/// sum v(log|z_k|) and the integral is -int v'_- q'_+ dx.
inline RealFn density_from_log_convex(std::function<double(double)> v, double step = 1e-6)
{
    return [v, step](double t) {
        const double x = std::log(t);
        return -(v(x) - v(x - step)) / step;
    };
}

// ---------------------------------------------------------------------------
// Converse-hypothesis scan

struct FamilyMember
{
    std::string label;
    double parameter = 0.0;
    Evaluator v;
    Complex center{};
    double support_radius = inf;  // v vanishes for |z - center| >= support_radius
};

/// b g_{D(c,rho)}(., c) / log(rho / r0): finite, radial, equal to b on |z - c| = r0.
inline std::vector<FamilyMember> green_family(Complex c, double r0, const std::vector<double>& rhos, double b)
{
    std::vector<FamilyMember> fam;
    for (double rho : rhos) {
        if (!(rho > r0))
            throw Error("ladder radius must exceed the hole radius");
        const double s = b / std::log(rho / r0);
        fam.push_back({"green(rho=" + detail::fmt(rho) + ")", rho,
                       [c, rho, s](Complex z) {
                           const double r = std::abs(z - c);
                           return r < rho ? s * std::log(rho / std::max(r, 1e-300)) : 0.0;
                       },
                       c, rho});
    }
    return fam;
}

/// b int_{|z|}^rho d(t)/t dt / int_{r0}^rho d(t)/t dt.
inline std::vector<FamilyMember> radial_family(Complex c, double r0, const std::vector<double>& rhos, double b, RealFn d)
{
    std::vector<FamilyMember> fam;
    for (double rho : rhos) {
        const double norm = detail::v_of(d, r0, rho);
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw Error("radial family member is not normalizable");
        fam.push_back({"radial(rho=" + detail::fmt(rho) + ")", rho,
                       [c, rho, d, norm, b](Complex z) {
                           const double r = std::abs(z - c);
                           return r < rho ? b * detail::v_of(d, r, rho) / norm : 0.0;
                       },
                       c, rho});
    }
    return fam;
}

/// V_n = max(0, V - 1/n) along a ladder of n.
inline std::vector<FamilyMember> glue_family(const GluedPotential& V, const std::vector<long>& ns)
{
    std::vector<FamilyMember> fam;
    const auto* t = std::get_if<Disc>(&V.glue_domain);
    for (long n : ns)
        fam.push_back({"glue(n=" + std::to_string(n) + ")", static_cast<double>(n), truncate_to_potential(V.V, n),
                       t ? t->center : V.pole, inf});
    return fam;
}

struct ScanResult
{
    std::vector<double> parameters;
    std::vector<double> values;  // int v dnu - int v dnu_M
    double sup = 0.0;
    bool bounded = true;
    std::string trend;
    std::optional<std::string> witness;
};

/// sup over the family of int v dnu - int v dnu_M. Bounded when the last
/// increments decay geometrically, unbounded-growth witness otherwise.
inline ScanResult converse_hypothesis_scan(const RieszMeasure& nu, const RieszMeasure& nu_M,
                                           const std::vector<FamilyMember>& family, const Region& region = Region::all())
{
    if (family.empty())
        throw Error("empty test-function family");
    ScanResult out;
    out.sup = -inf;
    for (const auto& f : family) {
        for (double s : {1.0 + 1e-9, 1.5, 4.0})
            if (std::isfinite(f.support_radius) &&
                f.v(f.center + std::polar(f.support_radius * s, 0.3)) != 0.0)
                throw Error("non-finite family member: " + f.label);
        if (!std::isfinite(f.support_radius) && !f.label.starts_with("glue"))
            throw Error("non-finite family member: " + f.label);
        IntegrationOptions io;
        io.radial_about = f.center;
        const ExtendedReal a = integrate(f.v, nu, region, io);
        const ExtendedReal b = integrate(f.v, nu_M, region, io);
        const ExtendedReal d = a - b;
        const double val = d.is_finite() ? d.value : (d.is_plus_infinity() ? inf : -inf);
        out.parameters.push_back(f.parameter);
        out.values.push_back(val);
        if (val > out.sup) {
            out.sup = val;
        }
    }
    const auto& y = out.values;
    const std::size_t n = y.size();
    if (out.sup == inf) {
        out.bounded = false;
        out.trend = "infinite";
    } else if (n >= 4) {
        const double d1 = y[n - 3] - y[n - 4], d2 = y[n - 2] - y[n - 3], d3 = y[n - 1] - y[n - 2];
        const double scale = 1e-9 * (1.0 + std::abs(y.back()));
        const bool growing = d3 > scale && d2 > scale && d1 > scale && d3 >= 0.5 * d2 && d2 >= 0.5 * d1;
        out.bounded = !growing;
        out.trend = growing ? "growing (increments " + detail::fmt(d1) + ", " + detail::fmt(d2) + ", " + detail::fmt(d3) + ")"
                            : "settled";
    } else {
        out.trend = "too short to judge";
    }
    if (!out.bounded)
        out.witness = family.back().label;
    return out;
}

} // namespace potkit
