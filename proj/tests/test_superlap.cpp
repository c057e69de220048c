#include <potkit/superlap.hpp>

#include <gtest/gtest.h>

#include "gen.hpp"

using namespace potkit;

namespace
{

const SmoothField one = SmoothField::constant(1.0);

double fd_density(const Evaluator& u, Complex z, double h = 1e-3) { return fd_laplacian(u, z, h) / two_pi; }

} // namespace

TEST(SuperLap, SquareOfSquareModulus)
{
    const auto s = SmoothField::abs2();
    EXPECT_NEAR(superposition_laplacian(one, s, ConvexFn1D::square(), 1.0), 16.0, 1e-12);
    const Complex z(0.3, -0.4);
    EXPECT_NEAR(superposition_laplacian(one, s, ConvexFn1D::square(), z), 16 * std::norm(z), 1e-12);
    EXPECT_NEAR(fd_laplacian(superposition_field(one, s, ConvexFn1D::square()), z, 1e-3), 16 * std::norm(z), 1e-5);
}

TEST(SuperLap, RatioFixtureOnRightHalfPlane)
{
    const auto g = SmoothField::re(), s = SmoothField::im();
    EXPECT_NEAR(superposition_laplacian(g, s, ConvexFn1D::square(), Complex(1, 1)), 4.0, 1e-12);
    const Complex z(0.7, -0.3);
    const double exact = 2 * z.imag() * z.imag() / std::pow(z.real(), 3) + 2 / z.real();
    EXPECT_NEAR(superposition_laplacian(g, s, ConvexFn1D::square(), z), exact, 1e-12);
}

TEST(SuperLap, HarmonicInnerReducesToSecondDerivative)
{
    for (Complex z : {Complex(0.1, 0.2), Complex(-3, 5)})
        EXPECT_NEAR(superposition_laplacian(one, SmoothField::re(), ConvexFn1D::square(), z), 2.0, 1e-13);
}

TEST(SuperLap, Errors)
{
    const auto g = SmoothField::re();
    EXPECT_THROW(superposition_laplacian(g, SmoothField::im(), ConvexFn1D::square(), Complex(0, 1)), Error);
    // t^2 lives on [0, inf): s/g = -1 is outside
    EXPECT_THROW(superposition_laplacian(one, SmoothField::constant(-1.0), ConvexFn1D::power(2), 0.5), Error);
}

TEST(RieszDensity, ConvexOfLogModulus)
{
    const auto s = SmoothField::log_abs();
    for (Complex z : {Complex(1, 0), Complex(0.3, 0.4), Complex(-2, 1)})
        EXPECT_NEAR(convex_of_sbh_density(ConvexFn1D::square(), s, z), 1.0 / (pi * std::norm(z)), 1e-12);
    EXPECT_NEAR(convex_of_sbh_density(ConvexFn1D::square(), s, 1.0), 0.31831, 1e-5);
    auto u = [](Complex z) { return std::pow(std::log(std::abs(z)), 2); };
    EXPECT_NEAR(fd_density(u, Complex(0.6, 0.8)), 1.0 / pi, 1e-6);
}

TEST(RieszDensity, HarmonicPairCase)
{
    EXPECT_NEAR(riesz_density(GkCase::harmonic_pair, one, SmoothField::re(), ConvexFn1D::square(), 0.4), 1.0 / pi,
                1e-14);
}

TEST(RieszDensity, CaseThreeWithConstantGMatchesCaseTwo)
{
    const auto s = SmoothField::abs2();
    const auto f = ConvexFn1D::power(3);
    for (Complex z : {Complex(0.2, 0.1), Complex(1.5, -0.5)}) {
        const double ii = riesz_density(GkCase::subharmonic_over_harmonic, one, s, f, z);
        const double iii = riesz_density(GkCase::subharmonic_over_superharmonic, one, s, f, z);
        EXPECT_NEAR(ii, iii, 1e-14);
    }
}

TEST(RieszDensity, HypothesisViolationsNamed)
{
    const auto s = SmoothField::abs2();
    try {
        riesz_density(GkCase::harmonic_pair, one, s, ConvexFn1D::square(), 0.5);
        FAIL() << "expected a case i violation";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("case i"), std::string::npos);
    }
    // g = |z|^2 is subharmonic, not superharmonic
    EXPECT_THROW(riesz_density(GkCase::subharmonic_over_superharmonic, s, s, ConvexFn1D::power(2), 0.5), Error);
    // decreasing f in case ii
    EXPECT_THROW(riesz_density(GkCase::subharmonic_over_harmonic, one, s, ConvexFn1D::exp_neg(1), 0.5), Error);
}

TEST(NamedDensity, GreenLevelConstantDensity)
{
    const auto F = ConvexFn1D::square();
    for (double t : {0.05, 0.5, 3.0})
        EXPECT_DOUBLE_EQ(green_level_density(F, t), 2.0);
    EXPECT_NEAR(green_level_mass(F, 0.1, 0.4), 0.6, 1e-14);
}

TEST(NamedDensity, GreenLevelStieltjesForKinkedF)
{
    // F(x) = max(0, x + 0.3): F'_+ jumps by 1 at x = -0.3
    const std::vector<std::pair<double, double>> dF{{-10.0, 0.0}, {-0.3, 1.0}};
    EXPECT_DOUBLE_EQ(green_level_mass_stieltjes(dF, 0.1, 0.4), 1.0);
    EXPECT_DOUBLE_EQ(green_level_mass_stieltjes(dF, 0.35, 0.4), 0.0);
}

TEST(NamedDensity, DistanceToUnitCircle)
{
    const auto d = SmoothField::distance_to_circle(0.0, 1.0);
    const BoundarySet E{{CircleSet{{}, 1.0}}};
    const double v = distance_density(ConvexFn1D::identity(), d, 0.3, &E);
    EXPECT_NEAR(v, (1 + 0.7 / 0.3) / 0.49 / two_pi, 1e-12);
    EXPECT_NEAR(v, 1.0824, 1e-3);
    auto u = [](Complex z) { return std::log(1.0 / (1.0 - std::abs(z))); };
    EXPECT_NEAR(fd_density(u, 0.3), v, 1e-5);
}

TEST(NamedDensity, DistanceOnRidgeRejected)
{
    // the centre is equidistant from the whole circle
    const auto d = SmoothField::distance_to_circle(0.0, 1.0);
    const BoundarySet E{{CircleSet{{}, 1.0}}};
    EXPECT_THROW(distance_density(ConvexFn1D::identity(), d, 0.0, &E), Error);
}

TEST(NamedDensity, LogHyperbolicRadiusAtCentre)
{
    const auto R = SmoothField::hyperbolic_radius_disc();
    EXPECT_NEAR(log_radius_density(ConvexFn1D::identity(), R, 0.0), 2.0 / pi, 1e-14);
    auto u = [](Complex z) { return -std::log(1.0 - std::norm(z)); };
    EXPECT_NEAR(fd_density(u, Complex(0.2, 0.3)), log_radius_density(ConvexFn1D::identity(), R, Complex(0.2, 0.3)),
                1e-6);
}

TEST(NamedDensity, Log1pGreenAgainstFd)
{
    const auto g = SmoothField::green_disc(0.0, 1.0, 0.0);
    const auto F = ConvexFn1D::exp_neg(-1.0);  // e^x
    auto u = [&](Complex z) { return F(-std::log1p(g(z))); };
    for (Complex z : {Complex(0.5, 0.0), Complex(-0.2, 0.6)})
        EXPECT_NEAR(fd_density(u, z), log1p_green_density(F, g, z), 1e-6);
}

TEST(NamedDensity, ConformalRadiusAgainstFd)
{
    const auto R = SmoothField::hyperbolic_radius_disc();
    const auto F = ConvexFn1D::square();
    auto u = [&](Complex z) { return F(-R(z)); };
    for (Complex z : {Complex(0.5, 0.0), Complex(-0.2, 0.6)})
        EXPECT_NEAR(fd_density(u, z), conformal_radius_density(F, R, z), 1e-6);
}

TEST(FdVerify, RatioFixtureConvergesAtSecondOrder)
{
    const auto g = SmoothField::re(), s = SmoothField::im();
    const auto F = ConvexFn1D::square();
    const auto r = fd_verify(superposition_field(g, s, F), [&](Complex z) { return superposition_laplacian(g, s, F, z); },
                             {0.5, 1.5, -0.5, 0.5}, {1e-2, 5e-3});
    EXPECT_NEAR(r.order, 2.0, 0.2);
}

TEST(FdVerify, PerturbedFormulaIsCaught)
{
    const auto s = SmoothField::abs2();
    const auto F = ConvexFn1D::square();
    const auto r = fd_verify(superposition_field(one, s, F),
                             [&](Complex z) { return superposition_laplacian(one, s, F, z) + 1.0; },
                             {0.2, 1.0, 0.2, 1.0}, {1e-3, 5e-4});
    EXPECT_NEAR(r.deviation.back(), 1.0, 1e-3);
    EXPECT_NEAR(r.order, 0.0, 1e-2);
}

TEST(FdVerify, LiouvilleResidualFieldForDisc)
{
    const auto R = SmoothField::hyperbolic_radius_disc();
    for (Complex z : {Complex(0.0), Complex(0.4, 0.3), Complex(-0.7, 0.1)})
        EXPECT_LT(std::abs(liouville_residual_fd(R.value, z, 1e-3)), 1e-3);
    EXPECT_THROW(fd_verify(R.value, R.value, {0, 1, 0, 1}, {1e-3}), Error);
}

TEST(Liouville, ClosedFormsAreExact)
{
    const auto disc = SmoothField::hyperbolic_radius_disc();
    const auto half = SmoothField::hyperbolic_radius_half_plane();
    gen::for_all(61, 100, [&](gen::Gen& g) {
        EXPECT_LT(std::abs(liouville_residual(disc, g.in_disc(0.0, 0.99))), 1e-12);
        EXPECT_LT(std::abs(liouville_residual(half, g.in_box(0.01, 5, -5, 5))), 1e-12);
    });
    // not a hyperbolic radius
    EXPECT_GT(std::abs(liouville_residual(SmoothField::abs2(), 0.5)), 1.0);
}

TEST(Eikonal, CircleAndSegment)
{
    const BoundarySet circle{{CircleSet{{}, 1.0}}}, segment{{SegmentSet{-1.0, 1.0}}};
    for (Complex z : {Complex(0.3), Complex(0.2, 0.5), Complex(2, 1)})
        EXPECT_LT(eikonal_residual(circle, z), 1e-6);
    for (Complex z : {Complex(0.3, 0.5), Complex(2, 1), Complex(-1.5, -0.2)})
        EXPECT_LT(eikonal_residual(segment, z), 1e-6);
}

TEST(SuperLapProperty, GkDensitiesNonnegative)
{
    // case i: g = 1 + x (harmonic, positive on the box), s = y
    // case ii: s = |z|^2, g = 1
    // case iii: s = |z|^2, g = hyperbolic radius of the unit disc (superharmonic)
    const SmoothField g1{[](Complex z) { return 1 + z.real(); }, [](Complex) { return Complex(1, 0); },
                         [](Complex) { return 0.0; }};
    const auto s2 = SmoothField::abs2();
    const auto R = SmoothField::hyperbolic_radius_disc();
    gen::for_all(63, 200, [&](gen::Gen& g) {
        const Complex z = g.in_disc(0.0, 0.9);
        EXPECT_GE(riesz_density(GkCase::harmonic_pair, g1, SmoothField::im(), ConvexFn1D::square(), z), -1e-10);
        EXPECT_GE(riesz_density(GkCase::subharmonic_over_harmonic, one, s2, ConvexFn1D::exp_neg(-1.0), z), -1e-10);
        EXPECT_GE(riesz_density(GkCase::subharmonic_over_superharmonic, R, s2, ConvexFn1D::power(2), z), -1e-10);
    });
}

TEST(SuperLapProperty, GradientAndLaplacianFormsAgree)
{
    gen::for_all(65, 100, [](gen::Gen& g) {
        const double a = g.uniform(0.5, 2), b = g.uniform(-1, 1);
        const SmoothField G{[a](Complex z) { return a + z.real() * z.real(); },
                            [](Complex z) { return Complex(2 * z.real(), 0); }, [](Complex) { return 2.0; }};
        const SmoothField S{[b](Complex z) { return b * z.imag() + std::norm(z); },
                            [b](Complex z) { return Complex(0, b) + 2.0 * z; }, [](Complex) { return 4.0; }};
        const Complex z = g.in_disc(0.0, 1.0);
        const double gv = G(z), sv = S(z);
        const Complex gg = G.gradient(z), gs = S.gradient(z);
        const double lg = G.laplacian(z), ls = S.laplacian(z);
        const double grad_form = grad_ratio_sq(gv, sv, gg, gs);
        const double lap_form = grad_ratio_sq_lap(gv, sv, lap_product(sv, sv, gs, gs, ls, ls),
                                                  lap_product(gv, sv, gg, gs, lg, ls), lap_product(gv, gv, gg, gg, lg, lg));
        EXPECT_NEAR(grad_form, lap_form, 1e-8 * (1 + std::abs(grad_form)));
    });
}

TEST(SuperLapProperty, GaussGreenFluxOnAnnulus)
{
    // F o s with F = e^x, s = |z|^2: interior mass equals the boundary flux
    const auto F = ConvexFn1D::exp_neg(-1.0);
    const auto s = SmoothField::abs2();
    gen::for_all(67, 10, [&](gen::Gen& g) {
        const double a = g.uniform(0.1, 0.5), b = a + g.uniform(0.2, 0.6);
        const double mass =
            integrate([&](double r) { return convex_of_sbh_density(F, s, r) * two_pi * r; }, a, b).value;
        auto flux = [&](double r) {
            // (1/2pi) * circumference * F'(s) ds/dr
            return r * F.df(r * r) * 2 * r;
        };
        EXPECT_NEAR(mass, flux(b) - flux(a), 1e-2 * mass);
    });
}

TEST(SuperLapProperty, GreenLevelMassMatchesFd)
{
    // M = F(-g) with F = x^2 on the unit disc: M = log^2 |z|
    const auto F = ConvexFn1D::square();
    auto M = [](Complex z) {
        const double r = std::abs(z);
        return r < 1 ? std::pow(std::log(r), 2) : 0.0;
    };
    for (double t0 : {0.3, 0.7}) {
        const double fd = fd_annulus_mass(M, 0.0, std::exp(-t0), 1.05, 1e-3);
        EXPECT_NEAR(fd, green_level_mass(F, 0.0, t0), 1e-2 * green_level_mass(F, 0.0, t0));
    }
}
