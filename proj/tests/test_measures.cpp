#include <potkit/measures.hpp>
#include <potkit/radial.hpp>

#include <gtest/gtest.h>

#include "gen.hpp"

using namespace potkit;

namespace
{

RieszMeasure square_profile_ring(double a, double b)
{
    // m = r^2: n = 2t^2, ring density 4t
    RieszMeasure mu;
    mu.rings.push_back({{}, a, b, [](double t) { return 4 * t; }, [](double t) { return 2 * t * t; }});
    return mu;
}

double lattice_mass(const RieszMeasure& mu)
{
    double s = 0.0;
    for (const auto& g : mu.grids)
        for (double v : g.density.values())
            s += v * g.density.h() * g.density.h();
    return s;
}

} // namespace

TEST(Integrate, UnitAtom)
{
    const auto r = integrate([](Complex) { return 1.0; }, dirac(0.0), Region::open_disc(0.0, 1.0));
    EXPECT_DOUBLE_EQ(r.value, 1.0);
}

TEST(Integrate, LogAgainstTwoAtoms)
{
    auto v = [](Complex z) { return std::log(1.0 / std::abs(z)); };
    const auto r = integrate(v, dirac(0.7) + dirac(-0.7));
    EXPECT_NEAR(r.value, 2 * std::log(1 / 0.7), 1e-15);
    EXPECT_NEAR(r.value, 0.71335, 1e-5);
}

TEST(Integrate, DivergentRadialTailCarriesEvidence)
{
    auto v = [](Complex z) { return 1.0 / std::norm(z); };
    IntegrationOptions opt;
    opt.radial_about = Complex{};
    const auto r = integrate(v, square_profile_ring(0.0, inf), Region::outside_closed_disc(0.0, 1.0), opt);
    ASSERT_TRUE(r.is_plus_infinity());
    EXPECT_FALSE(r.evidence.empty());
}

TEST(Integrate, ConvergentRadialTail)
{
    // int_1^inf t^-3 * 4t dt = 4
    auto v = [](Complex z) { return std::pow(std::abs(z), -3); };
    IntegrationOptions opt;
    opt.radial_about = Complex{};
    const auto r = integrate(v, square_profile_ring(0.0, inf), Region::outside_closed_disc(0.0, 1.0), opt);
    ASSERT_TRUE(r.is_finite());
    EXPECT_NEAR(r.value, 4.0, 1e-8);
}

TEST(Integrate, BothPartsInfiniteIsUndefined)
{
    auto v = [](Complex z) { return 1.0 / std::norm(z); };
    const RieszMeasure mu = square_profile_ring(1.0, inf) + scaled(square_profile_ring(1.0, inf), -1.0);
    IntegrationOptions opt;
    opt.radial_about = Complex{};
    EXPECT_THROW(integrate(v, mu, Region::all(), opt), Error);
}

TEST(Integrate, NegativeIntegrandRejected)
{
    EXPECT_THROW(integrate([](Complex) { return -1.0; }, dirac(0.0)), Error);
}

TEST(FdRiesz, SquareModulusHasConstantDensity)
{
    const auto mu = fd_riesz_estimate([](Complex z) { return std::norm(z); }, {0.3, 0.5, -0.2, 0.0}, 1e-2);
    for (double d : mu.grids[0].density.values())
        EXPECT_NEAR(d, 2.0 / pi, 1e-9);
}

TEST(FdRiesz, LogModulusIsHarmonicOffPole)
{
    const auto mu = fd_riesz_estimate([](Complex z) { return std::log(std::abs(z)); }, {1.0, 2.0, 0.0, 1.0}, 1e-3);
    double worst = 0.0;
    for (double d : mu.grids[0].density.values())
        worst = std::max(worst, std::abs(d));
    EXPECT_LT(worst, 1e-6);
}

TEST(FdRiesz, QuadraticZerosCarryUnitMass)
{
    auto u = [](Complex z) { return std::log(std::abs(z * z - 0.25)); };
    for (double c : {0.5, -0.5}) {
        FdOptions opt;
        opt.poles = {c};
        const auto mu = fd_riesz_estimate(u, Box::around(c, 0.1), 1e-3, opt);
        EXPECT_NEAR(total_mass(mu).value, 1.0, 1e-2);
    }
}

TEST(FdRiesz, UnexcludedPoleIsAnError)
{
    EXPECT_THROW(fd_riesz_estimate([](Complex z) { return std::log(std::abs(z)); }, {-0.1, 0.1, -0.1, 0.1}, 1e-2),
                 Error);
}

TEST(Jordan, SplitsAtomsBySign)
{
    const auto jp = jordan_parts(dirac(0.0, 1.0) + dirac(1.0, -1.0));
    ASSERT_EQ(jp.plus.atoms.size(), 1u);
    ASSERT_EQ(jp.minus.atoms.size(), 1u);
    EXPECT_EQ(jp.plus.atoms[0].z, Complex(0.0));
    EXPECT_EQ(jp.minus.atoms[0].z, Complex(1.0));
    EXPECT_DOUBLE_EQ(jp.minus.atoms[0].mass, 1.0);
}

TEST(Jordan, ZeroMeasure)
{
    const auto jp = jordan_parts(RieszMeasure{});
    EXPECT_TRUE(jp.plus.empty());
    EXPECT_TRUE(jp.minus.empty());
}

TEST(Jordan, LatticeDensityRecombinesExactly)
{
    RieszMeasure mu;
    mu.grids.push_back({grid_sample([](Complex z) { return std::sin(5 * z.real()) * std::cos(3 * z.imag()); },
                                    {-1, 1, -1, 1}, 0.05)});
    const auto jp = jordan_parts(mu);
    const Grid& p = jp.plus.grids.at(0).density;
    const Grid& m = jp.minus.grids.at(0).density;
    const Grid& o = mu.grids[0].density;
    for (std::size_t k = 0; k < o.size(); ++k) {
        EXPECT_GE(p.values()[k], 0.0);
        EXPECT_GE(m.values()[k], 0.0);
        EXPECT_EQ(p.values()[k] - m.values()[k], o.values()[k]);
        EXPECT_EQ(p.values()[k] * m.values()[k], 0.0);
    }
}

TEST(RegionMass, UnitAtom)
{
    EXPECT_DOUBLE_EQ(region_mass(dirac(Complex(0.1, 0.1)), Region::closed_disc(0.0, 1.0)).value, 1.0);
    EXPECT_DOUBLE_EQ(region_mass(dirac(Complex(2.0)), Region::closed_disc(0.0, 1.0)).value, 0.0);
}

TEST(RegionMass, RingDifference)
{
    const auto mu = square_profile_ring(0.0, inf);
    const double r0 = 0.4, r = 1.3;
    EXPECT_NEAR(region_mass(mu, Region::annulus(0.0, r0, r, false, true)).value, 2 * r * r - 2 * r0 * r0, 1e-12);
    EXPECT_TRUE(total_mass(mu).is_plus_infinity());
}

TEST(RegionMass, LatticeDensityOverUnitDisc)
{
    RieszMeasure mu;
    mu.grids.push_back({Grid::covering({-1.2, 1.2, -1.2, 1.2}, 5e-3, 2.0 / pi)});
    EXPECT_NEAR(region_mass(mu, Region::open_disc(0.0, 1.0)).value, 2.0, 2e-2);
}

TEST(RegionMass, CircleAtomCountedOnlyWhenInside)
{
    const auto mu = uniform_circle(0.0, 0.5, 3.0);
    EXPECT_DOUBLE_EQ(region_mass(mu, Region::open_disc(0.0, 1.0)).value, 3.0);
    EXPECT_DOUBLE_EQ(region_mass(mu, Region::open_disc(0.0, 0.5)).value, 0.0);
    EXPECT_DOUBLE_EQ(region_mass(mu, Region::closed_disc(0.0, 0.5)).value, 3.0);
}

TEST(DomCheck, AtomExcludesItsPoint)
{
    const auto v = dom_check(dirac(0.0), 0.0);
    EXPECT_FALSE(v.in_dom);
    EXPECT_TRUE(v.integral.is_plus_infinity());
    EXPECT_TRUE(dom_check(dirac(0.0), 0.5).in_dom);
}

TEST(DomCheck, SmoothRingIsInDom)
{
    EXPECT_TRUE(dom_check(square_profile_ring(0.0, inf), 0.0).in_dom);
}

TEST(DominatedBy, AtomsAndRings)
{
    EXPECT_TRUE(dominated_by(dirac(0.0, 0.5), dirac(0.0, 1.0)).dominated);
    const auto v = dominated_by(dirac(0.0, 2.0), dirac(0.0, 1.0));
    EXPECT_FALSE(v.dominated);
    EXPECT_FALSE(v.witness.empty());
    EXPECT_TRUE(dominated_by(scaled(square_profile_ring(0, 5), 0.5), square_profile_ring(0, 5)).dominated);
    EXPECT_FALSE(dominated_by(square_profile_ring(0, 5), scaled(square_profile_ring(0, 5), 0.5)).dominated);
}

TEST(MeasuresProperty, IntegrateAdditiveAndHomogeneous)
{
    gen::for_all(51, 30, [](gen::Gen& g) {
        RieszMeasure mu;
        for (int k = 0; k < 8; ++k)
            mu.atoms.push_back({g.in_disc(0.0, 2.0), g.uniform(-1.0, 1.0)});
        mu.circles.push_back({0.0, g.uniform(0.2, 1.8), g.uniform(0.0, 1.0), {}});
        const double a = g.uniform(0.1, 1.9), c = g.uniform(0.0, 5.0);
        auto v = [](Complex z) { return std::exp(-std::norm(z)); };
        auto cv = [&](Complex z) { return c * v(z); };
        const double whole = integrate(v, mu, Region::all()).value;
        const double in = integrate(v, mu, Region::closed_disc(0.0, a)).value;
        const double out = integrate(v, mu, Region::outside_closed_disc(0.0, a)).value;
        EXPECT_NEAR(in + out, whole, 1e-12);
        EXPECT_NEAR(integrate(cv, mu).value, c * whole, 1e-12 * (1 + c));
    });
}

TEST(MeasuresProperty, FdEstimateIsLinear)
{
    gen::for_all(53, 10, [](gen::Gen& g) {
        const double a = g.uniform(-2, 2), b = g.uniform(-2, 2);
        auto u1 = [a](Complex z) { return std::sin(a * z.real()) * std::exp(z.imag()); };
        auto u2 = [b](Complex z) { return std::norm(z) * b; };
        auto u12 = [&](Complex z) { return u1(z) + u2(z); };
        const Box box{0, 0.2, 0, 0.2};
        const auto m1 = fd_riesz_estimate(u1, box, 1e-2), m2 = fd_riesz_estimate(u2, box, 1e-2),
                   m12 = fd_riesz_estimate(u12, box, 1e-2);
        for (std::size_t k = 0; k < m12.grids[0].density.size(); ++k)
            EXPECT_NEAR(m12.grids[0].density.values()[k],
                        m1.grids[0].density.values()[k] + m2.grids[0].density.values()[k], 1e-9);
        EXPECT_NEAR(lattice_mass(m12), lattice_mass(m1) + lattice_mass(m2), 1e-12);
    });
}

TEST(MeasuresProperty, FdAgreesWithRadialMajorant)
{
    const auto M = build_plane_majorant(RadialProfile::power(1.0, 1.5), 0.5);
    auto u = [&](Complex z) { return M(z); };
    for (auto [a, b] : {std::pair{0.6, 0.9}, std::pair{0.3, 0.7}}) {
        const double declared = region_mass(M.riesz, Region::annulus(0.0, a, b, false, true)).value;
        const double fd = fd_annulus_mass(u, 0.0, a, b, 2e-3);
        EXPECT_NEAR(fd, declared, 1e-2 * declared);
    }
}
