#pragma once

// Jensen measures and potentials: logarithmic potentials of probability
// measures, the inverse of the measure -> potential map on lattices,
// Poisson-Jensen residuals and potentials of polynomial disks.

#include "potkit/greenfn.hpp"
#include "potkit/measures.hpp"

#include <array>
#include <optional>

namespace potkit
{

struct JensenMeasure
{
    RieszMeasure mu;
    ExtPoint pole;
};

inline JensenMeasure make_jensen_measure(RieszMeasure mu, ExtPoint pole, double tol = 1e-10)
{
    const ExtendedReal m = total_mass(mu);
    if (!m.is_finite() || std::abs(m.value - 1.0) > tol)
        throw Error("not a probability measure (mass " + std::to_string(m.value) + ")");
    for (const auto& a : mu.atoms)
        if (a.mass < 0)
            throw Error("Jensen measures are nonnegative");
    return {std::move(mu), pole};
}

/// Harmonic measure of D(c, R) at z0 as a weighted circle atom.
inline JensenMeasure harmonic_measure_jensen(const Disc& d, Complex z0)
{
    const Complex w0 = z0 - d.center;
    if (!(std::abs(w0) < d.radius))
        throw Error("pole not interior");
    const double R = d.radius;
    RieszMeasure mu;
    RealFn weight;
    if (w0 != Complex{})
        weight = [R, w0](double th) { return (R * R - std::norm(w0)) / std::norm(std::polar(R, th) - w0); };
    mu.circles.push_back({d.center, R, 1.0, weight});
    mu.note = "harmonic measure";
    return {std::move(mu), ExtPoint(z0)};
}

namespace detail
{

// int log|w - z| d mu(z) for a finite measure (w off the atoms).
inline double log_kernel_integral(const RieszMeasure& mu, Complex w, std::size_t nodes = 1024)
{
    CompensatedSum s;
    for (const auto& a : mu.atoms)
        s.add(a.mass * std::log(std::abs(w - a.z)));
    for (const auto& c : mu.circles) {
        if (!c.weight) {
            s.add(c.mass * std::log(std::max(std::abs(w - c.center), c.radius)));
            continue;
        }
        CompensatedSum m;
        for (std::size_t k = 0; k < nodes; ++k) {
            const double th = two_pi * (static_cast<double>(k) + 0.5) / static_cast<double>(nodes);
            m.add(c.weight(th) * std::log(std::abs(w - c.center - std::polar(c.radius, th))));
        }
        s.add(c.mass * m.value() / static_cast<double>(nodes));
    }
    for (const auto& r : mu.rings) {
        const double d = std::abs(w - r.center);
        auto phi = [&](double t) { return r.dn(t) * std::log(std::max(d, t)); };
        if (!std::isfinite(r.b))
            throw Error("logarithmic potential needs compact support");
        if (d > r.a && d < r.b) {
            s.add(integrate(phi, r.a, d).value);
            s.add(integrate(phi, d, r.b).value);
        } else {
            s.add(integrate(phi, r.a, r.b).value);
        }
    }
    for (const auto& gd : mu.grids) {
        const Grid& g = gd.density;
        const double cell = g.h() * g.h();
        for (std::size_t j = 0; j < g.ny(); ++j)
            for (std::size_t i = 0; i < g.nx(); ++i) {
                const double d = g.at(i, j);
                if (d == 0.0)
                    continue;
                const double n2 = std::norm(w - g.node(i, j));
                if (n2 == 0.0)
                    continue;  // self-cell: log singularity integrates to O(h^2 log h)
                s.add(0.5 * d * cell * std::log(n2));
            }
    }
    return s.value();
}

} // namespace detail

/// V_mu(w) = int log|(w - z)/(w - z0)| dmu(z); for the pole at infinity,
/// int log|1 - w/z| dmu(z). V(infinity) = 0 for a finite pole.
inline double log_potential(const JensenMeasure& jm, ExtPoint w)
{
    if (jm.pole.is_infinite()) {
        if (w.is_infinite())
            throw Error("w equals the pole");
        return detail::log_kernel_integral(jm.mu, w.finite()) - detail::log_kernel_integral(jm.mu, Complex{});
    }
    if (w.is_infinite())
        return 0.0;
    const Complex z0 = jm.pole.finite();
    if (w.finite() == z0)
        throw Error("w equals the pole");
    const double mass = total_mass(jm.mu).value;
    return detail::log_kernel_integral(jm.mu, w.finite()) - mass * std::log(std::abs(w.finite() - z0));
}

/// limsup V/log(1/|z - z0|) read off as the slope of the circle averages of
/// V against log(1/r) on the ladder {1e-3, 1e-4, 1e-5}. The plain ratio
/// carries the bounded part of V along and converges only like 1/log(1/r).
template <class V>
double log_ratio_limsup(V&& v, Complex z0, std::size_t angles = 16)
{
    const std::array<double, 3> radii{1e-3, 1e-4, 1e-5};
    std::array<double, 3> avg{};
    for (std::size_t i = 0; i < radii.size(); ++i) {
        CompensatedSum s;
        for (std::size_t k = 0; k < angles; ++k)
            s.add(v(z0 + std::polar(radii[i], two_pi * (static_cast<double>(k) + 0.25) / static_cast<double>(angles))));
        avg[i] = s.value() / static_cast<double>(angles);
    }
    double best = -inf;
    for (std::size_t i = 0; i + 1 < radii.size(); ++i)
        best = std::max(best, (avg[i + 1] - avg[i]) / std::log(radii[i] / radii[i + 1]));
    return best;
}

struct DualityOptions
{
    double negative_mass_tol = 5e-2;  // tolerated negative FD mass
    double mass_tol = 2e-2;           // tolerated deviation of the total from 1
    double exclusion_cells = 5.0;
};

struct DualityResult
{
    JensenMeasure measure;
    double deficiency = 0.0;     // 1 - limsup V / l_z0
    double lattice_mass = 0.0;
    double negative_mass = 0.0;
};

/// mu = (1/2pi) Delta V off the pole + (1 - limsup V/l_z0) delta_z0, on the
/// lattice covering box (which must contain the support of V).
template <class V>
DualityResult duality_inverse(V&& v, Complex z0, const Box& box, double h, const DualityOptions& opt = {})
{
    FdOptions fo;
    fo.poles = {z0};
    fo.exclusion_cells = opt.exclusion_cells;
    auto finite_v = [&](Complex z) {
        const double x = v(z);
        return x == inf ? std::numeric_limits<double>::quiet_NaN() : x;
    };
    RieszMeasure fd = fd_riesz_estimate(finite_v, box, h, fo);
    DualityResult out;
    const double ls = std::max(0.0, log_ratio_limsup(v, z0));
    out.deficiency = 1.0 - ls;
    CompensatedSum pos, neg;
    for (double d : fd.grids.front().density.values())
        (d >= 0 ? pos : neg).add(std::abs(d) * h * h);
    out.lattice_mass = pos.value() - neg.value();
    out.negative_mass = neg.value();
    if (out.negative_mass > opt.negative_mass_tol)
        throw Error("not a potential (negative lattice mass " + std::to_string(out.negative_mass) + ")");
    if (out.deficiency < -1e-6)
        throw Error("not a potential (pole stronger than logarithmic)");
    RieszMeasure mu;
    mu.grids = std::move(fd.grids);
    if (out.deficiency > 1e-12)
        mu.atoms.push_back({z0, out.deficiency});
    mu.note = "dual measure";
    const double total = out.lattice_mass + std::max(out.deficiency, 0.0);
    if (std::abs(total - 1.0) > opt.mass_tol)
        throw Error("dual measure mass " + std::to_string(total) + " differs from 1");
    out.measure = {std::move(mu), ExtPoint(z0)};
    return out;
}

// ---------------------------------------------------------------------------
// Expectations and the Poisson-Jensen identity

/// int u dmu for a real u and a finite measure (u finite on the support).
template <class U>
double expectation(U&& u, const RieszMeasure& mu, std::size_t nodes = 2048)
{
    CompensatedSum s;
    for (const auto& a : mu.atoms)
        s.add(a.mass * u(a.z));
    for (const auto& c : mu.circles) {
        CompensatedSum m;
        for (std::size_t k = 0; k < nodes; ++k) {
            const double th = two_pi * static_cast<double>(k) / static_cast<double>(nodes);
            const double w = c.weight ? c.weight(th) : 1.0;
            m.add(w * u(c.center + std::polar(c.radius, th)));
        }
        s.add(c.mass * m.value() / static_cast<double>(nodes));
    }
    for (const auto& r : mu.rings) {
        auto phi = [&](double t) {
            CompensatedSum m;
            for (std::size_t k = 0; k < 256; ++k)
                m.add(u(r.center + std::polar(t, two_pi * (k + 0.5) / 256.0)));
            return r.dn(t) * m.value() / 256.0;
        };
        s.add(integrate(phi, r.a, r.b).value);
    }
    for (const auto& gd : mu.grids) {
        const Grid& g = gd.density;
        for (std::size_t j = 0; j < g.ny(); ++j)
            for (std::size_t i = 0; i < g.nx(); ++i)
                if (g.at(i, j) != 0.0)
                    s.add(g.at(i, j) * g.h() * g.h() * u(g.node(i, j)));
    }
    return s.value();
}

/// |u(z0) + int V_mu dnu_u - int u dmu|.
template <class U>
double poisson_jensen_residual(U&& u, const RieszMeasure& nu_u, const JensenMeasure& jm, std::size_t nodes = 2048)
{
    if (jm.pole.is_infinite())
        throw Error("Poisson-Jensen residual needs a finite pole");
    const Complex z0 = jm.pole.finite();
    const double u0 = u(z0);
    if (u0 == -inf)
        throw Error("u(z0) = -infinity");
    double vint = 0.0;
    if (!nu_u.empty()) {
        IntegrationOptions io;
        const ExtendedReal e = integrate(
            [&](Complex z) { return z == z0 ? inf : std::max(0.0, log_potential(jm, ExtPoint(z))); }, nu_u,
            Region::all(), io);
        if (!e.is_finite())
            throw Error("int V dnu_u diverges: " + e.evidence);
        vint = e.value;
    }
    return std::abs(u0 + vint - expectation(u, jm.mu, nodes));
}

/// Classical form on D(0, R): V_mu is the Green function of the disc and
/// mu its harmonic measure at z0, sampled at n boundary nodes.
template <class U>
double poisson_jensen_residual_disc(U&& u, const RieszMeasure& nu_u, double R, Complex z0, std::size_t n = 2048)
{
    if (n < 8)
        throw Error("node count must be at least 8");
    const double u0 = u(z0);
    if (u0 == -inf)
        throw Error("u(z0) = -infinity");
    const GreenFunction g(Disc{{}, R}, z0);
    double vint = 0.0;
    if (!nu_u.empty()) {
        IntegrationOptions io;
        if (z0 == Complex{})
            io.radial_about = Complex{};
        const ExtendedReal e = integrate([&](Complex z) { return g(z); }, nu_u, Region::open_disc({}, R), io);
        if (!e.is_finite())
            throw Error("int g dnu_u diverges: " + e.evidence);
        vint = e.value;
    }
    CompensatedSum mean;
    const double n0 = std::norm(z0);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex w = std::polar(R, two_pi * static_cast<double>(k) / static_cast<double>(n));
        mean.add((R * R - n0) / std::norm(w - z0) * u(w));
    }
    return std::abs(u0 + vint - mean.value() / static_cast<double>(n));
}

/// Jensen gap int u dmu - u(z0) (nonnegative for subharmonic u).
template <class U>
double jensen_gap(U&& u, const JensenMeasure& jm, std::size_t nodes = 2048)
{
    return expectation(u, jm.mu, nodes) - u(jm.pole.finite());
}

// ---------------------------------------------------------------------------
// Polynomial disks

inline Complex eval_poly(const std::vector<Complex>& c, Complex z)
{
    Complex r{};
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        r = r * z + *it;
    return r;
}

/// G(z) = (1/2pi) int log|(z - g(e^it))/(z - g(0))| dt with coefficients
/// c_0 + c_1 z + ...; for g(0) = 0 this is the mean of log|1 - g/z|.
inline double polynomial_disk_potential(const std::vector<Complex>& coeffs, Complex z, std::size_t n = 2048)
{
    if (n < 8)
        throw Error("node count must be at least 8");
    const Complex z0 = coeffs.empty() ? Complex{} : coeffs.front();
    if (z == z0)
        throw Error("z equals the pole g(0)");
    CompensatedSum s;
    for (std::size_t k = 0; k < n; ++k) {
        const Complex w = eval_poly(coeffs, std::polar(1.0, two_pi * static_cast<double>(k) / static_cast<double>(n)));
        s.add(std::log(std::abs((z - w) / (z - z0))));
    }
    return s.value() / static_cast<double>(n);
}

/// Sampled test: is z in g(closed unit disc)? Uses the winding number of
/// the image circles around z.
inline bool disk_image_contains(const std::vector<Complex>& coeffs, Complex z, std::size_t n = 1024)
{
    for (double r : {1.0, 0.75, 0.5, 0.25}) {
        double wind = 0.0;
        Complex prev = eval_poly(coeffs, Complex(r, 0.0)) - z;
        for (std::size_t k = 1; k <= n; ++k) {
            const Complex cur = eval_poly(coeffs, std::polar(r, two_pi * static_cast<double>(k) / static_cast<double>(n))) - z;
            wind += std::arg(cur / prev);
            prev = cur;
        }
        if (std::abs(wind) > pi)
            return true;
    }
    return false;
}

} // namespace potkit
