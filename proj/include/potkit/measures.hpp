#pragma once

// Signed Riesz measures built from point atoms, circle atoms, radial ring
// densities and lattice densities. Integration of nonnegative functions,
// Jordan parts, region masses and the finite-difference Laplacian oracle.

#include "potkit/geometry.hpp"
#include "potkit/quadrature.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace potkit
{

using Evaluator = std::function<double(Complex)>;
using RealFn = std::function<double(double)>;

struct PointAtom
{
    Complex z{};
    double mass = 0.0;
};

/// mass spread on |z - center| = radius with density weight(theta) * dtheta/2pi
/// (weight has mean 1; empty means uniform).
struct CircleAtom
{
    Complex center{};
    double radius = 1.0;
    double mass = 0.0;
    RealFn weight;
};

/// Rotation-invariant part on a < |z - center| < b. dn is the ring-mass
/// density in r (mass of {r < |z-c| < r+dr} is dn(r) dr); n, when present,
/// is a cumulative function with mass(r, s) = n(s) - n(r).
struct RingPart
{
    Complex center{};
    double a = 0.0;
    double b = inf;
    RealFn dn;
    RealFn n;
};

/// Lattice density (already divided by 2pi) on cells of area h^2.
struct GridDensity
{
    Grid density;
};

struct RieszMeasure
{
    std::vector<PointAtom> atoms;
    std::vector<CircleAtom> circles;
    std::vector<RingPart> rings;
    std::vector<GridDensity> grids;
    std::string note;

    bool empty() const { return atoms.empty() && circles.empty() && rings.empty() && grids.empty(); }

    RieszMeasure& operator+=(const RieszMeasure& o)
    {
        atoms.insert(atoms.end(), o.atoms.begin(), o.atoms.end());
        circles.insert(circles.end(), o.circles.begin(), o.circles.end());
        rings.insert(rings.end(), o.rings.begin(), o.rings.end());
        grids.insert(grids.end(), o.grids.begin(), o.grids.end());
        return *this;
    }
};

inline RieszMeasure operator+(RieszMeasure a, const RieszMeasure& b)
{
    a += b;
    return a;
}

inline RieszMeasure scaled(const RieszMeasure& m, double c)
{
    RieszMeasure r = m;
    for (auto& a : r.atoms)
        a.mass *= c;
    for (auto& a : r.circles)
        a.mass *= c;
    for (auto& ring : r.rings) {
        RealFn dn = ring.dn, n = ring.n;
        ring.dn = [dn, c](double t) { return c * dn(t); };
        if (n)
            ring.n = [n, c](double t) { return c * n(t); };
    }
    for (auto& g : r.grids)
        for (double& v : g.density.values())
            v *= c;
    return r;
}

inline RieszMeasure dirac(Complex z, double mass = 1.0)
{
    RieszMeasure m;
    m.atoms.push_back({z, mass});
    return m;
}

inline RieszMeasure uniform_circle(Complex c, double r, double mass = 1.0)
{
    RieszMeasure m;
    m.circles.push_back({c, r, mass, {}});
    return m;
}

// ---------------------------------------------------------------------------
// Regions

class Region
{
public:
    static Region all() { return Region(); }
    /// a < |z - c| < b with optional closed ends; a < 0 means no inner bound.
    static Region annulus(Complex c, double a, double b, bool a_closed = false, bool b_closed = false)
    {
        Region r;
        r.kind_ = Kind::Radial;
        r.center_ = c;
        r.a_ = a;
        r.b_ = b;
        r.a_closed_ = a_closed;
        r.b_closed_ = b_closed;
        return r;
    }
    static Region closed_disc(Complex c, double r) { return annulus(c, -1.0, r, false, true); }
    static Region open_disc(Complex c, double r) { return annulus(c, -1.0, r, false, false); }
    static Region outside_closed_disc(Complex c, double r) { return annulus(c, r, inf, false, false); }
    static Region of(const Domain& d)
    {
        if (const auto* disc = std::get_if<Disc>(&d))
            return open_disc(disc->center, disc->radius);
        if (const auto* ext = std::get_if<ExteriorDisc>(&d))
            return outside_closed_disc(ext->center, ext->radius);
        if (const auto* ann = std::get_if<Annulus>(&d))
            return annulus(ann->center, ann->r1 == 0.0 ? -1.0 : ann->r1, ann->r2);
        if (std::holds_alternative<Plane>(d))
            return all();
        return predicate([d](Complex z) { return potkit::contains(d, z); });
    }
    static Region predicate(std::function<bool(Complex)> p)
    {
        Region r;
        r.kind_ = Kind::Predicate;
        r.pred_ = std::move(p);
        return r;
    }
    /// this minus other (general predicate).
    Region minus(const Region& other) const
    {
        Region self = *this, o = other;
        return predicate([self, o](Complex z) { return self.contains(z) && !o.contains(z); });
    }

    bool contains(Complex z) const
    {
        switch (kind_) {
        case Kind::All:
            return true;
        case Kind::Radial:
            return radius_in(std::abs(z - center_));
        default:
            return pred_(z);
        }
    }

    /// True when membership depends only on |z - c|.
    bool radial_about(Complex c) const { return kind_ == Kind::All || (kind_ == Kind::Radial && center_ == c); }
    bool radius_in(double r) const
    {
        if (kind_ == Kind::All)
            return true;
        const bool lo = a_closed_ ? r >= a_ : r > a_;
        const bool hi = b_closed_ ? r <= b_ : r < b_;
        return lo && hi;
    }
    double inner() const { return kind_ == Kind::All ? -1.0 : a_; }
    double outer() const { return kind_ == Kind::All ? inf : b_; }

private:
    enum class Kind { All, Radial, Predicate };
    Kind kind_ = Kind::All;
    Complex center_{};
    double a_ = -1.0, b_ = inf;
    bool a_closed_ = false, b_closed_ = false;
    std::function<bool(Complex)> pred_;
};

// ---------------------------------------------------------------------------
// Integration

struct IntegrationOptions
{
    /// Declares v radial about this point; circle and ring means then use
    /// one evaluation per radius.
    std::optional<Complex> radial_about;
    std::size_t circle_nodes = 256;
    ImproperOptions improper{};
    /// Skip the nonnegativity scan of v.
    bool trust_nonnegative = false;
};

namespace detail
{

struct SignedTotal
{
    ExtendedReal pos = ExtendedReal::finite(0.0);
    ExtendedReal neg = ExtendedReal::finite(0.0);

    void add(double x, double err = 0.0)
    {
        if (x >= 0)
            pos = pos + ExtendedReal::finite(x, err);
        else
            neg = neg + ExtendedReal::finite(-x, err);
    }
};

template <class V>
double weighted_circle_mean(V&& v, const CircleAtom& c, const Region& region, const IntegrationOptions& opt)
{
    const bool concentric = region.radial_about(c.center);
    if (concentric && !region.radius_in(c.radius))
        return 0.0;
    if (opt.radial_about && *opt.radial_about == c.center && !c.weight && concentric)
        return v(c.center + c.radius);
    CompensatedSum s;
    const std::size_t n = opt.circle_nodes;
    for (std::size_t k = 0; k < n; ++k) {
        const double th = two_pi * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
        const Complex z = c.center + std::polar(c.radius, th);
        if (!concentric && !region.contains(z))
            continue;
        const double w = c.weight ? c.weight(th) : 1.0;
        if (w != 0.0)
            s.add(w * v(z));
    }
    return s.value() / static_cast<double>(n);
}

} // namespace detail

/// Integral of v >= 0 against the signed measure over region, as
/// int v dnu+ - int v dnu-. Undefined when both parts diverge.
template <class V>
ExtendedReal integrate(V&& v, const RieszMeasure& mu, const Region& region = Region::all(),
                       const IntegrationOptions& opt = {})
{
    auto check = [&](Complex z, double val) {
        if (!opt.trust_nonnegative && val < -1e-12)
            throw Error("integrand must be nonnegative (v(" + std::to_string(z.real()) + "," +
                        std::to_string(z.imag()) + ") = " + std::to_string(val) + ")");
    };
    detail::SignedTotal tot;
    for (const auto& a : mu.atoms) {
        if (a.mass == 0.0 || !region.contains(a.z))
            continue;
        const double val = v(a.z);
        check(a.z, val);
        if (val == inf) {
            auto e = ExtendedReal::plus_infinity("integrand is +infinity at an atom of mass " + std::to_string(a.mass));
            (a.mass > 0 ? tot.pos : tot.neg) = (a.mass > 0 ? tot.pos : tot.neg) + e;
        } else {
            tot.add(a.mass * val);
        }
    }
    for (const auto& c : mu.circles) {
        if (c.mass == 0.0)
            continue;
        const double mean = detail::weighted_circle_mean(v, c, region, opt);
        check(c.center + c.radius, mean);
        tot.add(c.mass * mean);
    }
    for (const auto& ring : mu.rings) {
        double lo = ring.a, hi = ring.b;
        const bool concentric = region.radial_about(ring.center);
        if (concentric) {
            lo = std::max(lo, region.inner());
            hi = std::min(hi, region.outer());
        }
        lo = std::max(lo, 0.0);
        if (!(hi > lo))
            continue;
        const bool radial_v = opt.radial_about && *opt.radial_about == ring.center;
        auto mean_v = [&](double r) -> double {
            if (radial_v && concentric)
                return v(ring.center + r);
            CompensatedSum s;
            const std::size_t n = opt.circle_nodes;
            for (std::size_t k = 0; k < n; ++k) {
                const Complex z = ring.center + std::polar(r, two_pi * (static_cast<double>(k) + 0.5) / static_cast<double>(n));
                if (concentric || region.contains(z))
                    s.add(v(z));
            }
            return s.value() / static_cast<double>(n);
        };
        const RealFn& dn = ring.dn;
        auto plus = [&](double r) {
            const double d = dn(r);
            return d > 0 ? d * mean_v(r) : 0.0;
        };
        auto minus = [&](double r) {
            const double d = dn(r);
            return d < 0 ? -d * mean_v(r) : 0.0;
        };
        tot.pos = tot.pos + integrate_nonnegative(plus, lo, hi, opt.improper);
        tot.neg = tot.neg + integrate_nonnegative(minus, lo, hi, opt.improper);
    }
    for (const auto& gd : mu.grids) {
        const Grid& g = gd.density;
        const double cell = g.h() * g.h();
        CompensatedSum p, n;
        for (std::size_t j = 0; j < g.ny(); ++j) {
            for (std::size_t i = 0; i < g.nx(); ++i) {
                const double d = g.at(i, j);
                if (d == 0.0)
                    continue;
                const Complex z = g.node(i, j);
                if (!region.contains(z))
                    continue;
                const double val = v(z);
                check(z, val);
                if (!std::isfinite(val))
                    throw Error("integrand not finite on the support of a lattice density");
                (d > 0 ? p : n).add(std::abs(d) * val * cell);
            }
        }
        tot.pos = tot.pos + ExtendedReal::finite(p.value());
        tot.neg = tot.neg + ExtendedReal::finite(n.value());
    }
    if (!tot.pos.is_finite() && !tot.neg.is_finite())
        throw Error("undefined signed integral");
    return tot.pos - tot.neg;
}

/// Mass of the region. Radial tails may be infinite.
inline ExtendedReal region_mass(const RieszMeasure& mu, const Region& region)
{
    // ring masses from n when available and the region is concentric
    RieszMeasure rest = mu;
    rest.rings.clear();
    IntegrationOptions opt;
    opt.radial_about = Complex{};
    ExtendedReal total = integrate([](Complex) { return 1.0; }, rest, region, opt);
    for (const auto& ring : mu.rings) {
        RieszMeasure one;
        one.rings.push_back(ring);
        if (ring.n && region.radial_about(ring.center)) {
            const double lo = std::max({ring.a, region.inner(), 0.0});
            const double hi = std::min(ring.b, region.outer());
            if (hi > lo) {
                const double nhi = ring.n(hi);
                if (nhi == inf)
                    total = total + ExtendedReal::plus_infinity("ring-mass function unbounded as r -> " + std::to_string(hi));
                else if (nhi == -inf)
                    total = total + ExtendedReal::minus_infinity("ring-mass function unbounded below as r -> " + std::to_string(hi));
                else
                    total = total + ExtendedReal::finite(nhi - ring.n(lo));
            }
            continue;
        }
        IntegrationOptions o;
        o.radial_about = ring.center;
        total = total + integrate([](Complex) { return 1.0; }, one, region, o);
    }
    return total;
}

inline ExtendedReal total_mass(const RieszMeasure& mu) { return region_mass(mu, Region::all()); }

// ---------------------------------------------------------------------------
// Jordan decomposition

struct JordanParts
{
    RieszMeasure plus;
    RieszMeasure minus;
};

inline JordanParts jordan_parts(const RieszMeasure& mu)
{
    JordanParts jp;
    for (const auto& a : mu.atoms) {
        if (a.mass > 0)
            jp.plus.atoms.push_back(a);
        else if (a.mass < 0)
            jp.minus.atoms.push_back({a.z, -a.mass});
    }
    for (const auto& c : mu.circles) {
        if (c.mass > 0)
            jp.plus.circles.push_back(c);
        else if (c.mass < 0)
            jp.minus.circles.push_back({c.center, c.radius, -c.mass, c.weight});
    }
    for (const auto& r : mu.rings) {
        RealFn dn = r.dn;
        jp.plus.rings.push_back({r.center, r.a, r.b, [dn](double t) { return std::max(dn(t), 0.0); }, {}});
        jp.minus.rings.push_back({r.center, r.a, r.b, [dn](double t) { return std::max(-dn(t), 0.0); }, {}});
    }
    for (const auto& g : mu.grids) {
        GridDensity p = g, m = g;
        auto& pv = p.density.values();
        auto& mv = m.density.values();
        for (std::size_t k = 0; k < pv.size(); ++k) {
            pv[k] = std::max(g.density.values()[k], 0.0);
            mv[k] = std::max(-g.density.values()[k], 0.0);
        }
        jp.plus.grids.push_back(std::move(p));
        jp.minus.grids.push_back(std::move(m));
    }
    jp.plus.note = mu.note.empty() ? "" : mu.note + " (+)";
    jp.minus.note = mu.note.empty() ? "" : mu.note + " (-)";
    return jp;
}

// ---------------------------------------------------------------------------
// Mass of small discs, the dom predicate and measure ordering

namespace detail
{

// Fraction of the circle |w - c| = r lying in the closed disc D(z, t).
inline double arc_fraction(double r, double d, double t)
{
    if (r <= 0.0)
        return d <= t ? 1.0 : 0.0;
    if (d == 0.0)
        return r <= t ? 1.0 : 0.0;
    const double cs = (r * r + d * d - t * t) / (2.0 * r * d);
    if (cs >= 1.0)
        return 0.0;
    if (cs <= -1.0)
        return 1.0;
    return std::acos(cs) / pi;
}

} // namespace detail

/// |nu|(closed disc D(z, t)); circle atoms assumed uniform.
inline double abs_disc_mass(const RieszMeasure& mu, Complex z, double t)
{
    CompensatedSum s;
    for (const auto& a : mu.atoms)
        if (std::abs(a.z - z) <= t)
            s.add(std::abs(a.mass));
    for (const auto& c : mu.circles)
        s.add(std::abs(c.mass) * detail::arc_fraction(c.radius, std::abs(z - c.center), t));
    for (const auto& ring : mu.rings) {
        const double d = std::abs(z - ring.center);
        const double lo = std::max({ring.a, d - t, 0.0});
        const double hi = std::min(ring.b, d + t);
        if (hi > lo)
            s.add(integrate([&](double r) { return std::abs(ring.dn(r)) * detail::arc_fraction(r, d, t); }, lo, hi, 1e-10)
                      .value);
    }
    for (const auto& gd : mu.grids) {
        const Grid& g = gd.density;
        for (std::size_t j = 0; j < g.ny(); ++j)
            for (std::size_t i = 0; i < g.nx(); ++i)
                if (std::abs(g.node(i, j) - z) <= t)
                    s.add(std::abs(g.at(i, j)) * g.h() * g.h());
    }
    return s.value();
}

struct DomVerdict
{
    bool in_dom = true;
    ExtendedReal integral;  // int_0^r |nu|(z,t)/t dt
};

/// z belongs to dom M when int_0^r |nu|(z,t)/t dt is finite.
inline DomVerdict dom_check(const RieszMeasure& mu, Complex z, double r = 1.0)
{
    for (const auto& a : mu.atoms)
        if (a.z == z && a.mass != 0.0)
            return {false, ExtendedReal::plus_infinity("point atom of mass " + std::to_string(a.mass) +
                                                       " at z: |nu|(z,t)/t >= c/t")};
    // a finiteness predicate: the inner masses carry quadrature noise, so a
    // loose outer tolerance avoids chasing it
    ImproperOptions opt;
    opt.rel_tol = 1e-7;
    const ExtendedReal v =
        integrate_nonnegative([&](double t) { return abs_disc_mass(mu, z, t) / t; }, 0.0, r, opt);
    return {v.is_finite(), v};
}

struct OrderingVerdict
{
    bool dominated = true;
    std::string witness;
};

/// Checks nu <= nu0 on shared-support parts: atoms at common points,
/// concentric ring densities on common radii, lattice densities on a common
/// lattice. Parts of nu without a counterpart in nu0 must vanish.
inline OrderingVerdict dominated_by(const RieszMeasure& nu, const RieszMeasure& nu0, std::size_t samples = 200)
{
    for (const auto& a : nu.atoms) {
        if (a.mass <= 0)
            continue;
        double cap = 0.0;
        for (const auto& b : nu0.atoms)
            if (b.z == a.z)
                cap += b.mass;
        if (a.mass > cap + 1e-12)
            return {false, "atom at (" + std::to_string(a.z.real()) + "," + std::to_string(a.z.imag()) + ") exceeds"};
    }
    for (const auto& r : nu.rings) {
        for (std::size_t k = 0; k < samples; ++k) {
            const double hi = std::isfinite(r.b) ? r.b : r.a + 100.0;
            const double t = r.a + (hi - r.a) * (static_cast<double>(k) + 0.5) / static_cast<double>(samples);
            const double d = r.dn(t);
            if (d <= 0)
                continue;
            double cap = 0.0;
            for (const auto& s : nu0.rings)
                if (s.center == r.center && t > s.a && t < s.b)
                    cap += s.dn(t);
            if (d > cap * (1 + 1e-9) + 1e-12)
                return {false, "ring density exceeds at r=" + std::to_string(t)};
        }
    }
    for (const auto& g : nu.grids) {
        const Grid& G = g.density;
        for (std::size_t j = 0; j < G.ny(); ++j)
            for (std::size_t i = 0; i < G.nx(); ++i) {
                const double d = G.at(i, j);
                if (d <= 0)
                    continue;
                double cap = 0.0;
                for (const auto& h : nu0.grids) {
                    const auto idx = h.density.nearest(G.node(i, j));
                    if (idx && h.density.h() == G.h())
                        cap += h.density.at(idx->first, idx->second);
                }
                if (d > cap + 1e-12)
                    return {false, "lattice density exceeds at node (" + std::to_string(i) + "," + std::to_string(j) + ")"};
            }
    }
    for (const auto& c : nu.circles) {
        if (c.mass <= 0)
            continue;
        double cap = 0.0;
        for (const auto& d : nu0.circles)
            if (d.center == c.center && d.radius == c.radius)
                cap += d.mass;
        if (c.mass > cap + 1e-12)
            return {false, "circle atom of radius " + std::to_string(c.radius) + " exceeds"};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Finite-difference Laplacian oracle

struct FdOptions
{
    /// Logarithmic poles: nodes within exclusion_cells * h are cut out and
    /// their mass is returned as a point atom computed from the discrete flux.
    std::vector<Complex> poles;
    double exclusion_cells = 5.0;
};

/// Riesz density (1/2pi) Delta_h u on the lattice covering box.
template <class U>
RieszMeasure fd_riesz_estimate(U&& u, const Box& box, double h, const FdOptions& opt = {})
{
    Grid dens = Grid::covering(box, h);
    const std::size_t nx = dens.nx(), ny = dens.ny();
    // padded samples
    Grid s(dens.origin() - Complex(h, h), h, nx + 2, ny + 2);
    for (std::size_t j = 0; j < ny + 2; ++j)
        for (std::size_t i = 0; i < nx + 2; ++i) {
            const double v = u(s.node(i, j));
            s.at(i, j) = std::isnan(v) ? -inf : v;
        }
    const double rad = opt.exclusion_cells * h;
    auto excluded = [&](Complex z) -> int {
        for (std::size_t p = 0; p < opt.poles.size(); ++p)
            if (std::abs(z - opt.poles[p]) <= rad)
                return static_cast<int>(p);
        return -1;
    };
    std::vector<CompensatedSum> flux(opt.poles.size());
    const double scale = 1.0 / (two_pi * h * h);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t I = i + 1, J = j + 1;
            const Complex z = s.node(I, J);
            const int ex = excluded(z);
            const double c = s.at(I, J);
            const std::array<double, 4> nb{s.at(I + 1, J), s.at(I - 1, J), s.at(I, J + 1), s.at(I, J - 1)};
            if (ex >= 0) {
                dens.at(i, j) = 0.0;
                // flux through edges leaving the excluded node set
                const std::array<Complex, 4> nz{s.node(I + 1, J), s.node(I - 1, J), s.node(I, J + 1), s.node(I, J - 1)};
                for (int k = 0; k < 4; ++k)
                    if (excluded(nz[k]) != ex)
                        flux[ex].add(nb[k] - c);
                continue;
            }
            if (!std::isfinite(c) || !std::isfinite(nb[0]) || !std::isfinite(nb[1]) || !std::isfinite(nb[2]) ||
                !std::isfinite(nb[3]))
                throw Error("box touches a -inf marker without exclusion at (" + std::to_string(z.real()) + "," +
                            std::to_string(z.imag()) + ")");
            dens.at(i, j) = (nb[0] + nb[1] + nb[2] + nb[3] - 4.0 * c) * scale;
        }
    }
    RieszMeasure m;
    m.grids.push_back({std::move(dens)});
    for (std::size_t p = 0; p < opt.poles.size(); ++p)
        m.atoms.push_back({opt.poles[p], flux[p].value() / two_pi});
    m.note = "finite-difference estimate";
    return m;
}

/// FD Riesz mass of the closed disc D(c, r) from the discrete flux through
/// the boundary of the enclosed node set (valid with a pole inside).
template <class U>
double fd_disc_mass(U&& u, Complex c, double r, double h)
{
    const long n = static_cast<long>(std::ceil(r / h)) + 1;
    auto inside = [&](long i, long j) { return std::hypot(i * h, j * h) <= r; };
    auto val = [&](long i, long j) { return u(c + Complex(i * h, j * h)); };
    CompensatedSum s;
    for (long j = -n; j <= n; ++j) {
        for (long i = -n; i <= n; ++i) {
            if (!inside(i, j))
                continue;
            const long di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
            double ci = 0.0;
            bool have = false;
            for (int k = 0; k < 4; ++k) {
                if (inside(i + di[k], j + dj[k]))
                    continue;
                if (!have) {
                    ci = val(i, j);
                    have = true;
                }
                s.add(val(i + di[k], j + dj[k]) - ci);
            }
        }
    }
    return s.value() / two_pi;
}

/// FD Riesz mass of a concentric annulus r_in < |z - c| <= r_out.
template <class U>
double fd_annulus_mass(U&& u, Complex c, double r_in, double r_out, double h)
{
    return fd_disc_mass(u, c, r_out, h) - fd_disc_mass(u, c, r_in, h);
}

} // namespace potkit
