#pragma once

// Green functions with a pole, extended by zero off the domain, for the
// canonical domains; a lattice Dirichlet solve for grid regions; level sets,
// disc harmonic measure and Moebius transport.

#include "potkit/geometry.hpp"
#include "potkit/quadrature.hpp"

#include <array>
#include <memory>
#include <sstream>

namespace potkit
{

namespace detail
{

// log|P(x)| for the annulus prime-type product
//   P(x) = (1-x) * prod_k (1 - q^k x)(1 - q^k / x),  q = rho^2.
inline double log_abs_annulus_product(Complex x, double q, double tol = 1e-14, int max_terms = 100000)
{
    double s = std::log(std::abs(1.0 - x));
    const double big = std::max(std::abs(x), 1.0 / std::abs(x));
    double qk = q;
    for (int k = 1; k <= max_terms; ++k) {
        const double t1 = std::log(std::abs(1.0 - qk * x));
        const double t2 = std::log(std::abs(1.0 - qk / x));
        s += t1 + t2;
        if (qk * big < tol)
            return s;
        qk *= q;
    }
    std::ostringstream os;
    os << "annulus series did not converge: last term bound " << qk * big << " > " << tol;
    throw Error(os.str());
}

struct AnnulusFit
{
    double q = 0.0;       // (r1/r2)^2
    Complex alpha{};      // scaled pole
    double A = 0.0, B = 0.0;
};

inline double annulus_raw(const AnnulusFit& f, Complex zeta)
{
    return log_abs_annulus_product(zeta * std::conj(f.alpha), f.q) - log_abs_annulus_product(zeta / f.alpha, f.q);
}

inline AnnulusFit fit_annulus(double rho, Complex alpha)
{
    AnnulusFit f{rho * rho, alpha, 0.0, 0.0};
    // raw is constant on each boundary circle; pick A, B so both constants vanish
    const double c_out = annulus_raw(f, Complex(1.0, 0.0));
    const double c_in = annulus_raw(f, Complex(rho, 0.0));
    // c_out + B = 0 and c_in + A log rho + B = 0
    f.B = -c_out;
    f.A = (c_out - c_in) / std::log(rho);
    return f;
}

// Lattice solution for grid regions: g = log(1/|z-z0|) + H, H discrete-harmonic.
struct GridGreen
{
    Grid mask;
    Grid H;
    Complex pole{};
    int iterations = 0;
    double last_update = 0.0;
};

inline std::shared_ptr<const GridGreen> solve_grid_green(const Grid& mask, Complex z0, double tol = 1e-10,
                                                         int max_iter = 200000)
{
    auto sol = std::make_shared<GridGreen>();
    sol->mask = mask;
    sol->pole = z0;
    sol->H = Grid(mask.origin(), mask.h(), mask.nx(), mask.ny(), 0.0);
    const std::size_t nx = mask.nx(), ny = mask.ny();
    // Dirichlet data: H = log|z - z0| at non-region nodes
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
            if (mask.at(i, j) <= 0.5 || i == 0 || j == 0 || i + 1 == nx || j + 1 == ny)
                sol->H.at(i, j) = std::log(std::abs(mask.node(i, j) - z0));
    const double n = static_cast<double>(std::max(nx, ny));
    const double omega = 2.0 / (1.0 + std::sin(pi / n));
    for (int it = 0; it < max_iter; ++it) {
        double max_upd = 0.0;
        for (std::size_t j = 1; j + 1 < ny; ++j) {
            for (std::size_t i = 1; i + 1 < nx; ++i) {
                if (mask.at(i, j) <= 0.5)
                    continue;
                double& h = sol->H.at(i, j);
                const double avg =
                    0.25 * (sol->H.at(i + 1, j) + sol->H.at(i - 1, j) + sol->H.at(i, j + 1) + sol->H.at(i, j - 1));
                const double upd = omega * (avg - h);
                h += upd;
                max_upd = std::max(max_upd, std::abs(upd));
            }
        }
        sol->iterations = it + 1;
        sol->last_update = max_upd;
        if (max_upd < tol)
            return sol;
    }
    std::ostringstream os;
    os << "grid Dirichlet solve did not converge: last update " << sol->last_update;
    throw Error(os.str());
}

inline double bilinear(const Grid& g, Complex z)
{
    const double fx = (z.real() - g.origin().real()) / g.h();
    const double fy = (z.imag() - g.origin().imag()) / g.h();
    const double cx = std::clamp(fx, 0.0, static_cast<double>(g.nx() - 1));
    const double cy = std::clamp(fy, 0.0, static_cast<double>(g.ny() - 1));
    const std::size_t i = std::min(static_cast<std::size_t>(cx), g.nx() - 2);
    const std::size_t j = std::min(static_cast<std::size_t>(cy), g.ny() - 2);
    const double tx = cx - static_cast<double>(i), ty = cy - static_cast<double>(j);
    return (1 - tx) * (1 - ty) * g.at(i, j) + tx * (1 - ty) * g.at(i + 1, j) + (1 - tx) * ty * g.at(i, j + 1) +
           tx * ty * g.at(i + 1, j + 1);
}

} // namespace detail

/// g_D(., pole) extended by zero outside D, +infinity at a finite pole.
class GreenFunction
{
public:
    GreenFunction(Domain d, ExtPoint pole) : domain_(std::move(d)), pole_(pole)
    {
        validate(domain_);
        if (std::holds_alternative<Plane>(domain_))
            throw Error("the plane has no Green function");
        if (pole_.is_infinite()) {
            const auto* ext = std::get_if<ExteriorDisc>(&domain_);
            const auto* ann = std::get_if<Annulus>(&domain_);
            if (!ext && !(ann && !std::isfinite(ann->r2) && ann->r1 > 0.0))
                throw Error("pole not interior");
        } else if (!contains(domain_, pole_.finite())) {
            throw Error("pole not interior");
        }
        if (auto* a = std::get_if<Annulus>(&domain_)) {
            // degenerate annuli reduce to discs / exterior discs
            if (a->r1 == 0.0 && std::isfinite(a->r2))
                domain_ = Disc{a->center, a->r2};
            else if (a->r1 > 0.0 && !std::isfinite(a->r2))
                domain_ = ExteriorDisc{a->center, a->r1};
            else if (a->r1 == 0.0)
                throw Error("the punctured plane has no Green function");
            else
                fit_ = detail::fit_annulus(a->r1 / a->r2, (pole_.finite() - a->center) / a->r2);
        }
        if (const auto* gr = std::get_if<GridRegion>(&domain_))
            grid_ = detail::solve_grid_green(gr->mask, pole_.finite());
    }

    const Domain& domain() const { return domain_; }
    const ExtPoint& pole() const { return pole_; }
    std::shared_ptr<const detail::GridGreen> grid_solution() const { return grid_; }

    double operator()(Complex z) const
    {
        if (!contains(domain_, z))
            return 0.0;
        if (!pole_.is_infinite() && z == pole_.finite())
            return inf;
        const double v = std::visit([&](const auto& s) { return eval(s, z); }, domain_);
        return std::max(v, 0.0);
    }

    /// Value at infinity (finite for exterior domains with a finite pole).
    double at_infinity() const
    {
        if (pole_.is_infinite())
            return inf;
        if (const auto* e = std::get_if<ExteriorDisc>(&domain_))
            return std::log(std::abs(pole_.finite() - e->center) / e->radius);
        return 0.0;
    }

private:
    double eval(const Plane&, Complex) const { return 0.0; }
    double eval(const Disc& d, Complex z) const
    {
        const Complex w = z - d.center, w0 = pole_.finite() - d.center;
        const double R = d.radius;
        return std::log(std::abs(R * R - std::conj(w0) * w)) - std::log(R * std::abs(w - w0));
    }
    double eval(const ExteriorDisc& d, Complex z) const
    {
        const Complex w = z - d.center;
        if (pole_.is_infinite())
            return std::log(std::abs(w) / d.radius);
        const Complex w0 = pole_.finite() - d.center;
        const double R = d.radius;
        return std::log(std::abs(R * R - std::conj(w0) * w)) - std::log(R * std::abs(w - w0));
    }
    double eval(const HalfPlane& h, Complex z) const
    {
        const Complex z0 = pole_.finite();
        const Complex star = z0 - 2.0 * (std::conj(h.normal) * (z0 - h.point)).real() * h.normal;
        return std::log(std::abs(z - star)) - std::log(std::abs(z - z0));
    }
    double eval(const Annulus& a, Complex z) const
    {
        const Complex zeta = (z - a.center) / a.r2;
        return detail::annulus_raw(fit_, zeta) + fit_.A * std::log(std::abs(zeta)) + fit_.B;
    }
    double eval(const GridRegion&, Complex z) const
    {
        return -std::log(std::abs(z - grid_->pole)) + detail::bilinear(grid_->H, z);
    }

    Domain domain_;
    ExtPoint pole_;
    detail::AnnulusFit fit_{};
    std::shared_ptr<const detail::GridGreen> grid_;
};

inline double green_eval(const Domain& d, ExtPoint pole, Complex z) { return GreenFunction(d, pole)(z); }

// ---------------------------------------------------------------------------
// Level sets U_t = { g > t }

struct GreenLevel
{
    GreenFunction g;
    double t;

    bool contains(Complex z) const { return g(z) > t; }
    /// g - t on U_t, 0 elsewhere: the Green function of U_t with the same pole.
    double shifted(Complex z) const { return std::max(g(z) - t, 0.0); }
    /// U_t as a canonical disc when the domain is a disc with its centre as pole.
    std::optional<Disc> as_disc() const
    {
        if (const auto* d = std::get_if<Disc>(&g.domain()); d && !g.pole().is_infinite() && g.pole().finite() == d->center)
            return Disc{d->center, d->radius * std::exp(-t)};
        return std::nullopt;
    }
};

inline GreenLevel green_level(const Domain& d, ExtPoint pole, double t)
{
    if (!(t > 0.0))
        throw Error("level t must be positive");
    return {GreenFunction(d, pole), t};
}

// ---------------------------------------------------------------------------
// Harmonic measure of an arc for the disc D(0, R)

inline double harmonic_measure_disc(double R, Complex z0, double theta1, double theta2)
{
    if (!(std::abs(z0) < R))
        throw Error("pole not interior");
    if (!(theta2 > theta1))
        return 0.0;
    const double hi = std::min(theta2, theta1 + two_pi);
    const double n0 = std::norm(z0);
    auto poisson = [&](double th) { return (R * R - n0) / std::norm(std::polar(R, th) - z0) / two_pi; };
    return std::clamp(integrate(poisson, theta1, hi, 1e-14).value, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Moebius maps

struct Mobius
{
    Complex a{1.0}, b{}, c{}, d{1.0};

    Mobius() = default;
    Mobius(Complex a_, Complex b_, Complex c_, Complex d_) : a(a_), b(b_), c(c_), d(d_)
    {
        if (std::abs(a * d - b * c) < 1e-300)
            throw Error("non-invertible map");
    }
    static Mobius identity() { return {}; }
    static Mobius scale(Complex k) { return {k, 0.0, 0.0, 1.0}; }
    static Mobius translate(Complex t) { return {1.0, t, 0.0, 1.0}; }
    static Mobius reciprocal() { return {0.0, 1.0, 1.0, 0.0}; }

    ExtPoint operator()(const ExtPoint& p) const
    {
        if (p.is_infinite())
            return c == Complex{} ? ExtPoint::infinity() : ExtPoint(a / c);
        const Complex z = p.finite();
        const Complex den = c * z + d;
        if (den == Complex{})
            return ExtPoint::infinity();
        return ExtPoint((a * z + b) / den);
    }
    Mobius inverse() const { return {d, -b, -c, a}; }
};

namespace detail
{

// Image of a circle or line through three of its points.
inline std::variant<CircleSet, HalfPlane> generalized_circle(ExtPoint p, ExtPoint q, ExtPoint r)
{
    std::array<ExtPoint, 3> pts{p, q, r};
    std::vector<Complex> fin;
    for (const auto& x : pts)
        if (!x.is_infinite())
            fin.push_back(x.finite());
    if (fin.size() == 2) {
        const Complex dir = (fin[1] - fin[0]) / std::abs(fin[1] - fin[0]);
        return HalfPlane{fin[0], dir * Complex(0.0, -1.0)};
    }
    const Complex z1 = fin[0], z2 = fin[1], z3 = fin[2];
    const Complex w = (z3 - z1) / (z2 - z1);
    if (std::abs(w.imag()) < 1e-12 * std::abs(w)) {
        const Complex dir = (z2 - z1) / std::abs(z2 - z1);
        return HalfPlane{z1, dir * Complex(0.0, -1.0)};
    }
    const Complex c = (z2 - z1) * (w - std::norm(w)) / (Complex(0.0, 2.0) * w.imag()) + z1;
    return CircleSet{c, std::abs(z1 - c)};
}

} // namespace detail

/// Image of a disc, exterior disc or half-plane under a Moebius map.
inline Domain mobius_image(const Mobius& phi, const Domain& d)
{
    std::array<ExtPoint, 3> bp;
    ExtPoint inner;
    if (const auto* disc = std::get_if<Disc>(&d)) {
        for (int k = 0; k < 3; ++k)
            bp[k] = ExtPoint(disc->center + std::polar(disc->radius, two_pi * k / 3.0));
        inner = ExtPoint(disc->center);
    } else if (const auto* ext = std::get_if<ExteriorDisc>(&d)) {
        for (int k = 0; k < 3; ++k)
            bp[k] = ExtPoint(ext->center + std::polar(ext->radius, two_pi * k / 3.0));
        inner = ExtPoint::infinity();
    } else if (const auto* hp = std::get_if<HalfPlane>(&d)) {
        const Complex along = hp->normal * Complex(0.0, 1.0);
        bp = {ExtPoint(hp->point), ExtPoint(hp->point + along), ExtPoint::infinity()};
        inner = ExtPoint(hp->point + hp->normal);
    } else {
        throw Error("Moebius transport supports discs, exterior discs and half-planes");
    }
    const auto img = detail::generalized_circle(phi(bp[0]), phi(bp[1]), phi(bp[2]));
    const ExtPoint in = phi(inner);
    if (const auto* circ = std::get_if<CircleSet>(&img)) {
        if (in.is_infinite() || std::abs(in.finite() - circ->center) > circ->radius)
            return ExteriorDisc{circ->center, circ->radius};
        return Disc{circ->center, circ->radius};
    }
    HalfPlane h = std::get<HalfPlane>(img);
    if (in.is_infinite())
        throw Error("Moebius image: interior point mapped to infinity on a half-plane");
    if ((std::conj(h.normal) * (in.finite() - h.point)).real() < 0.0)
        h.normal = -h.normal;
    return h;
}

/// g_{phi(D)}(phi(z), phi(z0)), which equals g_D(z, z0).
inline double green_via_mobius(const Mobius& phi, const Domain& d, ExtPoint z0, Complex z)
{
    const Domain img = mobius_image(phi, d);
    const ExtPoint w = phi(ExtPoint(z));
    const GreenFunction g(img, phi(z0));
    if (w.is_infinite())
        return g.at_infinity();
    return g(w.finite());
}

} // namespace potkit
