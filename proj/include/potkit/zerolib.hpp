#pragma once

// Holomorphic models with known zeros: polynomials, Blaschke products,
// truncated canonical products and sin(pi a z). Counting measures and the
// FD check that the Riesz measure of log|f| counts zeros.

#include "potkit/measures.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace potkit
{

struct Zero
{
    Complex z{};
    int multiplicity = 1;
};

class ZeroSequence
{
  public:
    ZeroSequence() = default;
    explicit ZeroSequence(std::vector<Zero> zs) : zeros_(std::move(zs))
    {
        for (const auto& z : zeros_)
            if (z.multiplicity < 1)
                throw Error("multiplicities must be positive integers");
    }

    static ZeroSequence simple(const std::vector<Complex>& pts)
    {
        std::vector<Zero> zs;
        for (auto p : pts)
            zs.push_back({p, 1});
        return ZeroSequence(std::move(zs));
    }

    /// CSV rows x,y,multiplicity; a non-numeric first line is taken as a header.
    static ZeroSequence read_csv(std::istream& is)
    {
        std::vector<Zero> zs;
        std::string line;
        std::size_t row = 0;
        while (std::getline(is, line)) {
            ++row;
            if (line.find_first_not_of(" \t\r") == std::string::npos)
                continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ls(line);
            double x, y;
            int m = 1;
            if (!(ls >> x >> y)) {
                if (row == 1)
                    continue;
                throw Error("malformed zero row " + std::to_string(row));
            }
            if (!(ls >> m))
                m = 1;
            if (m < 1)
                throw Error("multiplicity must be >= 1 at row " + std::to_string(row));
            zs.push_back({{x, y}, m});
        }
        return ZeroSequence(std::move(zs));
    }

    const std::vector<Zero>& zeros() const { return zeros_; }
    std::size_t size() const { return zeros_.size(); }
    bool empty() const { return zeros_.empty(); }

    ZeroSequence sorted_by_modulus() const
    {
        auto zs = zeros_;
        std::stable_sort(zs.begin(), zs.end(), [](const Zero& a, const Zero& b) { return std::abs(a.z) < std::abs(b.z); });
        return ZeroSequence(std::move(zs));
    }

    long total_multiplicity() const
    {
        long n = 0;
        for (const auto& z : zeros_)
            n += z.multiplicity;
        return n;
    }

    /// Smallest distance between distinct listed points (inf for < 2 points).
    double min_gap() const
    {
        double g = inf;
        for (std::size_t i = 0; i < zeros_.size(); ++i)
            for (std::size_t j = i + 1; j < zeros_.size(); ++j)
                g = std::min(g, std::abs(zeros_[i].z - zeros_[j].z));
        return g;
    }

    RieszMeasure as_measure() const
    {
        RieszMeasure m;
        for (const auto& z : zeros_)
            m.atoms.push_back({z.z, static_cast<double>(z.multiplicity)});
        m.note = "counting measure";
        return m;
    }

  private:
    std::vector<Zero> zeros_;
};

/// n_Z(region), with multiplicity.
inline long counting_measure(const ZeroSequence& zs, const Region& region)
{
    long n = 0;
    for (const auto& z : zs.zeros())
        if (region.contains(z.z))
            n += z.multiplicity;
    return n;
}

/// True when every zero of `sub` appears in `super` with at least the same
/// multiplicity (points matched within tol).
inline bool counted_within(const ZeroSequence& sub, const ZeroSequence& super, double tol = 1e-9)
{
    for (const auto& a : sub.zeros()) {
        int have = 0;
        for (const auto& b : super.zeros())
            if (std::abs(a.z - b.z) <= tol)
                have += b.multiplicity;
        if (have < a.multiplicity)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Polynomial roots

namespace detail
{

inline Complex horner(const std::vector<Complex>& c, Complex z)
{
    Complex r{};
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        r = r * z + *it;
    return r;
}

inline std::vector<Zero> cluster_roots(const std::vector<Complex>& roots, double radius)
{
    std::vector<int> parent(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i)
        parent[i] = static_cast<int>(i);
    auto find = [&](int i) {
        while (parent[i] != i)
            i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (std::abs(roots[i] - roots[j]) <= radius)
                parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
    std::vector<Zero> out;
    std::vector<int> slot(roots.size(), -1);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const int r = find(static_cast<int>(i));
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.push_back({Complex{}, 0});
        }
        Zero& z = out[slot[r]];
        z.z += roots[i];
        ++z.multiplicity;
    }
    for (auto& z : out)
        z.z /= static_cast<double>(z.multiplicity);
    return out;
}

} // namespace detail

/// Durand-Kerner roots of c_0 + c_1 z + ... + c_n z^n, clustered into
/// multiple roots within cluster_radius.
inline ZeroSequence polynomial_roots(std::vector<Complex> c, double cluster_radius = 1e-6)
{
    while (!c.empty() && c.back() == Complex{})
        c.pop_back();
    if (c.empty())
        throw Error("the zero polynomial has no zero sequence");
    const std::size_t n = c.size() - 1;
    if (n == 0)
        return {};
    const Complex lead = c.back();
    for (auto& x : c)
        x /= lead;
    double bound = 0.0;  // Cauchy bound
    for (std::size_t k = 0; k < n; ++k)
        bound = std::max(bound, std::abs(c[k]));
    bound += 1.0;
    std::vector<Complex> z(n);
    const Complex seed(0.4, 0.9);
    for (std::size_t k = 0; k < n; ++k)
        z[k] = bound * std::pow(seed, static_cast<double>(k)) / std::abs(std::pow(seed, static_cast<double>(k)));
    for (int it = 0; it < 20000; ++it) {
        double step = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex den(1.0, 0.0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i)
                    den *= z[i] - z[j];
            if (den == Complex{})
                den = Complex(1e-300, 0.0);
            const Complex d = detail::horner(c, z[i]) / den;
            z[i] -= d;
            step = std::max(step, std::abs(d));
        }
        if (step < 1e-15 * bound)
            break;
    }
    return ZeroSequence(detail::cluster_roots(z, cluster_radius));
}

// ---------------------------------------------------------------------------
// Models

/// Zeros z_k (k >= 1) of a genus-zero canonical product; symmetric laws also
/// vanish at -z_k and the product pairs factors as (1 - z^2/z_k^2).
struct ZeroLaw
{
    std::string name;
    std::function<Complex(long)> zero;
    bool symmetric = false;
    int origin_multiplicity = 0;
    Complex constant{1.0, 0.0};
    /// sum_{k > N} 1/|z_k|^2 (symmetric) or 1/|z_k| (otherwise).
    std::function<double(long)> tail;

    static ZeroLaw sine()
    {
        return {"sine", [](long k) { return Complex(static_cast<double>(k), 0.0); }, true, 1, {pi, 0.0},
                [](long N) { return 1.0 / static_cast<double>(N); }};
    }
};

class HoloModel
{
  public:
    enum class Kind { polynomial, blaschke, canonical_product, scaled_sine };

    static HoloModel polynomial(std::vector<Complex> coeffs, double cluster_radius = 1e-6)
    {
        HoloModel m(Kind::polynomial);
        m.zeros_ = polynomial_roots(coeffs, cluster_radius);
        while (!coeffs.empty() && coeffs.back() == Complex{})
            coeffs.pop_back();
        m.coeffs_ = std::move(coeffs);
        if (m.zeros_.total_multiplicity() + 1 != static_cast<long>(m.coeffs_.size()))
            throw Error("root count does not match the degree");
        for (const auto& z : m.zeros_.zeros()) {
            double scale = 0.0;
            for (std::size_t k = 0; k < m.coeffs_.size(); ++k)
                scale += std::abs(m.coeffs_[k]) * std::pow(std::abs(z.z), static_cast<double>(k));
            const double tol = z.multiplicity == 1 ? 1e-10 : std::pow(1e-8, 1.0 / z.multiplicity) * 10.0;
            if (std::abs(detail::horner(m.coeffs_, z.z)) > tol * std::max(scale, 1.0) && z.multiplicity == 1)
                throw Error("root finder did not converge");
        }
        return m;
    }

    /// Polynomial with the given roots and leading coefficient.
    static HoloModel from_roots(const std::vector<Complex>& roots, Complex lead = {1.0, 0.0})
    {
        std::vector<Complex> c{lead};
        for (auto r : roots) {
            std::vector<Complex> d(c.size() + 1);
            for (std::size_t k = 0; k < c.size(); ++k) {
                d[k + 1] += c[k];
                d[k] -= r * c[k];
            }
            c = std::move(d);
        }
        return polynomial(std::move(c));
    }

    static HoloModel blaschke(const std::vector<Complex>& zeros)
    {
        HoloModel m(Kind::blaschke);
        for (auto a : zeros) {
            if (!(std::abs(a) < 1.0))
                throw Error("Blaschke zeros must lie in the unit disc");
            if (a == Complex{})
                m.flags_.push_back("zero at the origin: log|B(0)| = -infinity");
        }
        m.zeros_ = ZeroSequence::simple(zeros);
        return m;
    }

    static HoloModel canonical_product(ZeroLaw law, long N)
    {
        if (N < 1)
            throw Error("truncation must be positive");
        HoloModel m(Kind::canonical_product);
        std::vector<Zero> zs;
        if (law.origin_multiplicity > 0)
            zs.push_back({Complex{}, law.origin_multiplicity});
        for (long k = 1; k <= N; ++k) {
            zs.push_back({law.zero(k), 1});
            if (law.symmetric)
                zs.push_back({-law.zero(k), 1});
        }
        m.zeros_ = ZeroSequence(std::move(zs));
        m.law_ = std::move(law);
        m.N_ = N;
        return m;
    }

    /// sin(pi a z), zeros at k/a for all integers k.
    static HoloModel scaled_sine(double a = 1.0)
    {
        if (!(a > 0))
            throw Error("scale must be positive");
        HoloModel m(Kind::scaled_sine);
        m.scale_ = a;
        return m;
    }

    Kind kind() const { return kind_; }
    const std::vector<std::string>& flags() const { return flags_; }
    const std::vector<Complex>& coefficients() const { return coeffs_; }
    long truncation() const { return N_; }

    /// Zeros inside |z| <= R (all listed zeros for finite models).
    ZeroSequence zeros_within(double R = inf) const
    {
        if (kind_ == Kind::scaled_sine) {
            if (!std::isfinite(R))
                throw Error("sin has infinitely many zeros; give a radius");
            std::vector<Zero> zs;
            const long K = static_cast<long>(std::floor(R * scale_));
            for (long k = -K; k <= K; ++k)
                zs.push_back({Complex(static_cast<double>(k) / scale_, 0.0), 1});
            return ZeroSequence(std::move(zs));
        }
        std::vector<Zero> zs;
        for (const auto& z : zeros_.zeros())
            if (std::abs(z.z) <= R)
                zs.push_back(z);
        return ZeroSequence(std::move(zs));
    }

    const ZeroSequence& zeros() const { return zeros_; }

    /// log|f(z)|, -inf at zeros.
    double log_modulus(Complex z) const
    {
        switch (kind_) {
        case Kind::polynomial: {
            const double a = std::abs(detail::horner(coeffs_, z));
            return a == 0.0 ? -inf : std::log(a);
        }
        case Kind::blaschke: {
            double s = 0.0;
            for (const auto& a : zeros_.zeros()) {
                const Complex num = a.z - z;
                if (num == Complex{})
                    return -inf;
                s += std::log(std::abs(num / (1.0 - std::conj(a.z) * z)));
            }
            return s;
        }
        case Kind::canonical_product: {
            double s = std::log(std::abs(law_.constant));
            if (law_.origin_multiplicity > 0) {
                if (z == Complex{})
                    return -inf;
                s += law_.origin_multiplicity * std::log(std::abs(z));
            }
            for (long k = 1; k <= N_; ++k) {
                const Complex zk = law_.zero(k);
                const Complex f = law_.symmetric ? 1.0 - (z / zk) * (z / zk) : 1.0 - z / zk;
                if (f == Complex{})
                    return -inf;
                s += std::log(std::abs(f));
            }
            return s;
        }
        case Kind::scaled_sine: {
            // reduce by the nearest integer: |sin(pi t)| = |sin(pi (t - k))|
            const Complex t = scale_ * z;
            const double k = std::round(t.real());
            const Complex w = pi * (t - k);
            if (w == Complex{})
                return -inf;
            const double y = std::abs(w.imag());
            if (y > 30.0)
                return y - std::log(2.0);
            return std::log(std::abs(std::sin(w)));
        }
        }
        return 0.0;
    }

    /// Bound on |log|f| - log|f_infinity|| over |z| <= R for truncated
    /// canonical products (0 for exact models).
    double remainder_bound(double R) const
    {
        if (kind_ != Kind::canonical_product)
            return 0.0;
        if (!law_.tail)
            return inf;
        const double t = law_.tail(N_);
        // |log|1 - w|| <= |w|/(1 - |w|) for |w| < 1
        const double w = law_.symmetric ? R * R * t : R * t;
        const double wmax = law_.symmetric ? std::pow(R / std::abs(law_.zero(N_ + 1)), 2) : R / std::abs(law_.zero(N_ + 1));
        if (wmax >= 1.0)
            return inf;
        return w / (1.0 - wmax);
    }

  private:
    explicit HoloModel(Kind k) : kind_(k) {}

    Kind kind_;
    std::vector<Complex> coeffs_;
    ZeroSequence zeros_;
    ZeroLaw law_;
    long N_ = 0;
    double scale_ = 1.0;
    std::vector<std::string> flags_;
};

inline double eval_log_modulus(const HoloModel& m, Complex z) { return m.log_modulus(z); }

/// sup |B| on the circle |z| = r from n samples.
inline double sampled_sup_modulus(const HoloModel& m, double r, std::size_t n = 2048)
{
    double best = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        best = std::max(best, std::exp(m.log_modulus(std::polar(r, two_pi * k / static_cast<double>(n)))));
    return best;
}

struct ZeroMassCheck
{
    std::vector<double> masses;     // FD mass in a 5h disc around each zero
    double max_deviation = 0.0;     // max |mass - multiplicity|
    double residual_mass = 0.0;     // FD mass of the region minus the zero count
};

/// FD Riesz mass of log|f| near each zero in the disc `region` against the
/// multiplicity. Zeros must be more than 10h apart.
inline ZeroMassCheck verify_riesz_equals_counting(const HoloModel& m, const Disc& region, double h)
{
    if (!(h > 0))
        throw Error("grid spacing must be positive");
    auto u = [&](Complex z) { return m.log_modulus(z); };
    std::vector<Zero> inside;
    const double far = std::abs(region.center) + region.radius;
    const ZeroSequence near = m.zeros_within(far);
    for (const auto& z : near.zeros())
        if (std::abs(z.z - region.center) < region.radius)
            inside.push_back(z);
    for (std::size_t i = 0; i < inside.size(); ++i)
        for (std::size_t j = i + 1; j < inside.size(); ++j)
            if (std::abs(inside[i].z - inside[j].z) <= 10.0 * h)
                throw Error("unresolvable at spacing " + std::to_string(h));
    ZeroMassCheck out;
    long count = 0;
    for (const auto& z : inside) {
        const double mass = fd_disc_mass(u, z.z, 5.0 * h, h);
        out.masses.push_back(mass);
        out.max_deviation = std::max(out.max_deviation, std::abs(mass - z.multiplicity));
        count += z.multiplicity;
    }
    out.residual_mass = fd_disc_mass(u, region.center, region.radius, h) - static_cast<double>(count);
    return out;
}

} // namespace potkit
