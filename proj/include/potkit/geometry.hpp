#pragma once

// Points of the extended plane, canonical domains, lattices, circle
// averages and distance-to-set functions.

#include "potkit/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>
#include <vector>

namespace potkit
{

/// A point of the Riemann sphere: a finite complex number or infinity.
class ExtPoint
{
public:
    ExtPoint() = default;
    ExtPoint(Complex z) : z_(z)
    {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error("ExtPoint: non-finite coordinates; use ExtPoint::infinity()");
    }
    ExtPoint(double x, double y) : ExtPoint(Complex{x, y}) {}

    static ExtPoint infinity()
    {
        ExtPoint p;
        p.infinite_ = true;
        return p;
    }

    bool is_infinite() const { return infinite_; }
    Complex finite() const
    {
        if (infinite_)
            throw Error("ExtPoint: point at infinity has no finite coordinates");
        return z_;
    }

private:
    Complex z_{};
    bool infinite_ = false;
};

/// The reflection z -> c + 1/conj(z - c), exchanging c and infinity.
inline ExtPoint invert(const ExtPoint& p, Complex c = {})
{
    if (p.is_infinite())
        return ExtPoint(c);
    const Complex w = p.finite() - c;
    if (w == Complex{})
        return ExtPoint::infinity();
    return ExtPoint(c + 1.0 / std::conj(w));
}

struct Box
{
    double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;

    bool contains(Complex z) const
    {
        return z.real() >= xmin && z.real() <= xmax && z.imag() >= ymin && z.imag() <= ymax;
    }
    static Box around(Complex c, double half) { return {c.real() - half, c.real() + half, c.imag() - half, c.imag() + half}; }
};

// ---------------------------------------------------------------------------
// Lattices

/// Values on the lattice origin + h*(i, j), i < nx, j < ny, stored row-major
/// (j outer). -infinity marks logarithmic poles.
class Grid
{
public:
    Grid() = default;
    Grid(Complex origin, double h, std::size_t nx, std::size_t ny, double fill = 0.0)
        : origin_(origin), h_(h), nx_(nx), ny_(ny), values_(nx * ny, fill)
    {
        if (!(h > 0.0))
            throw Error("grid spacing must be positive");
    }

    /// Lattice covering the box with spacing h (the box corners are nodes
    /// when the side lengths are multiples of h).
    static Grid covering(const Box& box, double h, double fill = 0.0)
    {
        if (!(h > 0.0))
            throw Error("grid spacing must be positive");
        if (!(box.xmax >= box.xmin) || !(box.ymax >= box.ymin))
            throw Error("empty box");
        const auto count = [h](double len) { return static_cast<std::size_t>(std::floor(len / h + 1e-9)) + 1; };
        return Grid({box.xmin, box.ymin}, h, count(box.xmax - box.xmin), count(box.ymax - box.ymin), fill);
    }

    double h() const { return h_; }
    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    std::size_t size() const { return values_.size(); }
    Complex origin() const { return origin_; }

    Complex node(std::size_t i, std::size_t j) const
    {
        return origin_ + Complex(static_cast<double>(i) * h_, static_cast<double>(j) * h_);
    }
    double& at(std::size_t i, std::size_t j) { return values_[j * nx_ + i]; }
    double at(std::size_t i, std::size_t j) const { return values_[j * nx_ + i]; }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    /// Nearest lattice index to z, if z lies within half a cell of the lattice.
    std::optional<std::pair<std::size_t, std::size_t>> nearest(Complex z) const
    {
        const double fi = std::round((z.real() - origin_.real()) / h_);
        const double fj = std::round((z.imag() - origin_.imag()) / h_);
        if (fi < 0 || fj < 0 || fi >= static_cast<double>(nx_) || fj >= static_cast<double>(ny_))
            return std::nullopt;
        return std::pair{static_cast<std::size_t>(fi), static_cast<std::size_t>(fj)};
    }

    /// CSV with header x,y,value, row-major, "-inf" for pole markers.
    void write_csv(std::ostream& os) const
    {
        os << "x,y,value\n";
        os << std::setprecision(17);
        for (std::size_t j = 0; j < ny_; ++j) {
            for (std::size_t i = 0; i < nx_; ++i) {
                const Complex z = node(i, j);
                const double v = at(i, j);
                os << z.real() << ',' << z.imag() << ',';
                if (v == -inf)
                    os << "-inf";
                else if (v == inf)
                    os << "inf";
                else
                    os << v;
                os << '\n';
            }
        }
    }

private:
    Complex origin_{};
    double h_ = 1.0;
    std::size_t nx_ = 0, ny_ = 0;
    std::vector<double> values_;
};

/// Samples f on the lattice covering box. Non-finite results and throwing
/// evaluations are stored as -infinity; nothing is raised.
template <class F>
Grid grid_sample(F&& f, const Box& box, double h)
{
    Grid g = Grid::covering(box, h);
    for (std::size_t j = 0; j < g.ny(); ++j) {
        for (std::size_t i = 0; i < g.nx(); ++i) {
            double v;
            try {
                v = f(g.node(i, j));
            } catch (const std::exception&) {
                v = -inf;
            }
            g.at(i, j) = std::isnan(v) ? -inf : v;
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Canonical domains

struct Plane
{
};
struct Disc
{
    Complex center{};
    double radius = 1.0;
};
struct ExteriorDisc
{
    Complex center{};
    double radius = 1.0;
};
struct Annulus
{
    double r1 = 0.0;
    double r2 = 1.0;
    Complex center{};
};
/// { z : Re(conj(normal) * (z - point)) > 0 } with |normal| = 1.
struct HalfPlane
{
    Complex point{};
    Complex normal{1.0, 0.0};

    static HalfPlane right() { return {{}, {1.0, 0.0}}; }
    static HalfPlane left() { return {{}, {-1.0, 0.0}}; }
    static HalfPlane upper() { return {{}, {0.0, 1.0}}; }
    static HalfPlane lower() { return {{}, {0.0, -1.0}}; }
};
/// Lattice nodes with mask value > 0.5 are inside.
struct GridRegion
{
    Grid mask;
};

using Domain = std::variant<Plane, Disc, ExteriorDisc, Annulus, HalfPlane, GridRegion>;

inline void validate(const Domain& d)
{
    if (const auto* disc = std::get_if<Disc>(&d); disc && !(disc->radius > 0.0))
        throw Error("disc radius must be positive");
    if (const auto* ext = std::get_if<ExteriorDisc>(&d); ext && !(ext->radius > 0.0))
        throw Error("exterior disc radius must be positive");
    if (const auto* a = std::get_if<Annulus>(&d); a && !(a->r1 >= 0.0 && a->r1 < a->r2))
        throw Error("annulus needs 0 <= r1 < r2");
    if (const auto* hp = std::get_if<HalfPlane>(&d); hp && std::abs(std::abs(hp->normal) - 1.0) > 1e-12)
        throw Error("half-plane normal must be a unit vector");
}

inline bool grid_mask_inside(const Grid& mask, Complex z)
{
    const auto idx = mask.nearest(z);
    return idx && mask.at(idx->first, idx->second) > 0.5;
}

/// Membership in the open domain.
inline bool contains(const Domain& d, Complex z)
{
    return std::visit(
        [z](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Plane>)
                return true;
            else if constexpr (std::is_same_v<T, Disc>)
                return std::abs(z - s.center) < s.radius;
            else if constexpr (std::is_same_v<T, ExteriorDisc>)
                return std::abs(z - s.center) > s.radius;
            else if constexpr (std::is_same_v<T, Annulus>) {
                const double r = std::abs(z - s.center);
                return r > s.r1 && r < s.r2;
            } else if constexpr (std::is_same_v<T, HalfPlane>)
                return (std::conj(s.normal) * (z - s.point)).real() > 0.0;
            else
                return grid_mask_inside(s.mask, z);
        },
        d);
}

inline bool is_bounded(const Domain& d)
{
    if (std::holds_alternative<Disc>(d) || std::holds_alternative<GridRegion>(d))
        return true;
    if (const auto* a = std::get_if<Annulus>(&d))
        return std::isfinite(a->r2);
    return false;
}

/// Euclidean distance from a finite point to the finite part of the boundary
/// (+infinity for the whole plane). For grid regions the value is accurate
/// to half a cell.
inline double boundary_distance(const Domain& d, Complex z)
{
    return std::visit(
        [z](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Plane>)
                return inf;
            else if constexpr (std::is_same_v<T, Disc> || std::is_same_v<T, ExteriorDisc>)
                return std::abs(std::abs(z - s.center) - s.radius);
            else if constexpr (std::is_same_v<T, Annulus>) {
                const double r = std::abs(z - s.center);
                double dist = std::abs(r - s.r1);
                if (std::isfinite(s.r2))
                    dist = std::min(dist, std::abs(r - s.r2));
                return dist;
            } else if constexpr (std::is_same_v<T, HalfPlane>)
                return std::abs((std::conj(s.normal) * (z - s.point)).real());
            else {
                const Grid& m = s.mask;
                const bool inside = grid_mask_inside(m, z);
                double best = inf;
                for (std::size_t j = 0; j < m.ny(); ++j)
                    for (std::size_t i = 0; i < m.nx(); ++i)
                        if ((m.at(i, j) > 0.5) != inside)
                            best = std::min(best, std::abs(m.node(i, j) - z));
                return std::max(0.0, best - 0.5 * m.h());
            }
        },
        d);
}

/// n points on the finite part of the boundary. Unbounded straight
/// boundaries are sampled on a window of half-length `window`.
inline std::vector<Complex> boundary_points(const Domain& d, std::size_t n, double window = 10.0)
{
    std::vector<Complex> pts;
    const auto circle = [&](Complex c, double r, std::size_t m) {
        for (std::size_t k = 0; k < m; ++k)
            pts.push_back(c + std::polar(r, two_pi * static_cast<double>(k) / static_cast<double>(m)));
    };
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disc> || std::is_same_v<T, ExteriorDisc>)
                circle(s.center, s.radius, n);
            else if constexpr (std::is_same_v<T, Annulus>) {
                if (s.r1 > 0.0)
                    circle(s.center, s.r1, std::isfinite(s.r2) ? n / 2 : n);
                else
                    pts.push_back(s.center);
                if (std::isfinite(s.r2))
                    circle(s.center, s.r2, n - n / 2);
            } else if constexpr (std::is_same_v<T, HalfPlane>) {
                const Complex along = s.normal * Complex(0.0, 1.0);
                for (std::size_t k = 0; k < n; ++k) {
                    const double t = -window + 2.0 * window * static_cast<double>(k) / static_cast<double>(n - 1);
                    pts.push_back(s.point + t * along);
                }
            } else if constexpr (std::is_same_v<T, GridRegion>) {
                const Grid& m = s.mask;
                for (std::size_t j = 1; j + 1 < m.ny(); ++j)
                    for (std::size_t i = 1; i + 1 < m.nx(); ++i)
                        if (m.at(i, j) > 0.5 && (m.at(i + 1, j) <= 0.5 || m.at(i - 1, j) <= 0.5 ||
                                                 m.at(i, j + 1) <= 0.5 || m.at(i, j - 1) <= 0.5))
                            pts.push_back(m.node(i, j));
            }
        },
        d);
    return pts;
}

/// Points inside the domain at distance eps from its boundary, including a
/// neighbourhood of infinity (|z| = 1/eps) for unbounded domains.
inline std::vector<Complex> collar_points(const Domain& d, double eps, std::size_t n, double window = 10.0)
{
    std::vector<Complex> pts;
    const auto circle = [&](Complex c, double r, std::size_t m) {
        for (std::size_t k = 0; k < m; ++k)
            pts.push_back(c + std::polar(r, two_pi * (static_cast<double>(k) + 0.5) / static_cast<double>(m)));
    };
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Plane>)
                circle({}, 1.0 / eps, n);
            else if constexpr (std::is_same_v<T, Disc>)
                circle(s.center, s.radius - eps, n);
            else if constexpr (std::is_same_v<T, ExteriorDisc>) {
                circle(s.center, s.radius + eps, n);
                circle(s.center, s.radius / eps, n);
            } else if constexpr (std::is_same_v<T, Annulus>) {
                if (s.r1 > 0.0)
                    circle(s.center, s.r1 + eps, n);
                else
                    circle(s.center, eps, n);
                if (std::isfinite(s.r2))
                    circle(s.center, s.r2 - eps, n);
                else
                    circle(s.center, std::max(1.0, s.r1) / eps, n);
            } else if constexpr (std::is_same_v<T, HalfPlane>) {
                const Complex along = s.normal * Complex(0.0, 1.0);
                for (std::size_t k = 0; k < n; ++k) {
                    const double t = -window + 2.0 * window * static_cast<double>(k) / static_cast<double>(n - 1);
                    pts.push_back(s.point + t * along + eps * s.normal);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double ang = pi * (static_cast<double>(k) + 0.5) / static_cast<double>(n) - pi / 2.0;
                    pts.push_back(s.point + (1.0 / eps) * s.normal * std::polar(1.0, ang));
                }
            } else {
                for (Complex b : boundary_points(s, n))
                    pts.push_back(b);
            }
        },
        d);
    return pts;
}

/// Rough size of a domain, used for default sampling windows.
inline double characteristic_radius(const Domain& d)
{
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disc> || std::is_same_v<T, ExteriorDisc>)
                return s.radius;
            else if constexpr (std::is_same_v<T, Annulus>)
                return std::isfinite(s.r2) ? s.r2 : std::max(1.0, 2.0 * s.r1);
            else if constexpr (std::is_same_v<T, GridRegion>)
                return 0.5 * s.mask.h() * static_cast<double>(std::max(s.mask.nx(), s.mask.ny()));
            else
                return 1.0;
        },
        d);
}

inline Complex characteristic_center(const Domain& d)
{
    return std::visit(
        [](const auto& s) -> Complex {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disc> || std::is_same_v<T, ExteriorDisc> || std::is_same_v<T, Annulus>)
                return s.center;
            else if constexpr (std::is_same_v<T, HalfPlane>)
                return s.point;
            else if constexpr (std::is_same_v<T, GridRegion>)
                return s.mask.node(s.mask.nx() / 2, s.mask.ny() / 2);
            else
                return {};
        },
        d);
}

/// Checks that the closure of `hole` sits inside `outer` at positive
/// distance from its boundary (sampled on the hole boundary).
inline void validate_hole(const Domain& outer, const Domain& hole, std::size_t samples = 720)
{
    validate(outer);
    validate(hole);
    for (Complex b : boundary_points(hole, samples)) {
        if (!contains(outer, b) || boundary_distance(outer, b) <= 0.0)
            throw Error("hole is not compactly inside the domain");
    }
}

// ---------------------------------------------------------------------------
// Circle averages

struct CircleMean
{
    double value = 0.0;
    std::size_t skipped = 0;  // nodes where f was -infinity
};

/// Trapezoidal mean of f over n equidistant nodes of the circle |z-c| = r.
/// Nodes where f = -infinity are skipped and counted.
template <class F>
CircleMean circle_mean(F&& f, Complex center, double r, std::size_t n)
{
    if (n < 8)
        throw Error("circle_mean needs at least 8 nodes");
    CompensatedSum s;
    std::size_t used = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double v = f(center + std::polar(r, two_pi * static_cast<double>(k) / static_cast<double>(n)));
        if (v == -inf)
            continue;
        s.add(v);
        ++used;
    }
    if (used == 0)
        throw Error("degenerate average");
    return {s.value() / static_cast<double>(used), n - used};
}

// ---------------------------------------------------------------------------
// Distance to closed sets

struct CircleSet
{
    Complex center{};
    double radius = 1.0;
};
struct SegmentSet
{
    Complex a{}, b{};
};
struct PointSet
{
    std::vector<Complex> points;
};
/// Lattice nodes with mask > 0.5 belong to the set.
struct GridSet
{
    Grid mask;
};
/// The complement of an open domain.
struct ComplementSet
{
    Domain domain;
};

using SetPiece = std::variant<CircleSet, SegmentSet, PointSet, GridSet, ComplementSet>;

struct BoundarySet
{
    std::vector<SetPiece> pieces;
};

struct Distance
{
    double value = 0.0;
    double error_bar = 0.0;  // nonzero only for lattice-described pieces
};

inline double distance_to_segment(Complex z, Complex a, Complex b)
{
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0)
        return std::abs(z - a);
    const double t = std::clamp((std::conj(ab) * (z - a)).real() / len2, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

inline Distance dist_to_set(Complex z, const BoundarySet& e)
{
    if (e.pieces.empty())
        throw Error("empty boundary set");
    Distance best{inf, 0.0};
    for (const SetPiece& piece : e.pieces) {
        const Distance d = std::visit(
            [z](const auto& s) -> Distance {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, CircleSet>)
                    return {std::abs(std::abs(z - s.center) - s.radius), 0.0};
                else if constexpr (std::is_same_v<T, SegmentSet>)
                    return {distance_to_segment(z, s.a, s.b), 0.0};
                else if constexpr (std::is_same_v<T, PointSet>) {
                    if (s.points.empty())
                        throw Error("empty boundary set");
                    double m = inf;
                    for (Complex p : s.points)
                        m = std::min(m, std::abs(z - p));
                    return {m, 0.0};
                } else if constexpr (std::is_same_v<T, GridSet>) {
                    double m = inf;
                    const Grid& g = s.mask;
                    for (std::size_t j = 0; j < g.ny(); ++j)
                        for (std::size_t i = 0; i < g.nx(); ++i)
                            if (g.at(i, j) > 0.5)
                                m = std::min(m, std::abs(z - g.node(i, j)));
                    if (!std::isfinite(m))
                        throw Error("empty boundary set");
                    return {std::max(0.0, m - 0.5 * g.h()), 0.5 * g.h()};
                } else {
                    if (!contains(s.domain, z))
                        return {0.0, 0.0};
                    const double b = boundary_distance(s.domain, z);
                    const double err = std::holds_alternative<GridRegion>(s.domain)
                                           ? 0.5 * std::get<GridRegion>(s.domain).mask.h()
                                           : 0.0;
                    return {b, err};
                }
            },
            piece);
        if (d.value < best.value)
            best = d;
    }
    return best;
}

} // namespace potkit
