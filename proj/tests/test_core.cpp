#include <potkit/core.hpp>
#include <potkit/quadrature.hpp>

#include <gtest/gtest.h>

#include "gen.hpp"

using namespace potkit;

TEST(ExtendedReal, FiniteArithmeticCarriesErrors)
{
    const auto s = ExtendedReal::finite(1.0, 1e-9) + ExtendedReal::finite(2.0, 2e-9);
    EXPECT_DOUBLE_EQ(s.value, 3.0);
    EXPECT_DOUBLE_EQ(s.error, 3e-9);
    const auto d = 2.0 * ExtendedReal::finite(1.5, 1e-3);
    EXPECT_DOUBLE_EQ(d.value, 3.0);
    EXPECT_DOUBLE_EQ(d.error, 2e-3);
}

TEST(ExtendedReal, InfinityKeepsEvidence)
{
    const auto s = ExtendedReal::finite(1.0) + ExtendedReal::plus_infinity("harmonic tail");
    EXPECT_TRUE(s.is_plus_infinity());
    EXPECT_EQ(s.evidence, "harmonic tail");
    const auto n = -1.0 * s;
    EXPECT_TRUE(n.is_minus_infinity());
    EXPECT_EQ(n.evidence, "harmonic tail");
    // 0 * inf is taken as 0 (a zero weight kills the term)
    EXPECT_DOUBLE_EQ((0.0 * s).value, 0.0);
}

TEST(ExtendedReal, OppositeInfinitiesThrow)
{
    EXPECT_THROW(ExtendedReal::plus_infinity("a") - ExtendedReal::plus_infinity("b"), Error);
}

TEST(CompensatedSum, RecoversCancellation)
{
    const std::vector<double> xs{1e16, 1.0, -1e16, 1.0};
    EXPECT_DOUBLE_EQ(compensated_sum(xs), 2.0);
}

TEST(Quadrature, SmoothIntegral)
{
    const auto q = integrate([](double t) { return std::sin(t); }, 0.0, pi);
    EXPECT_NEAR(q.value, 2.0, 1e-13);
}

TEST(Quadrature, ImproperConvergentTail)
{
    const auto r = integrate_extended([](double t) { return 1.0 / (t * t); }, 1.0, inf);
    ASSERT_TRUE(r.is_finite());
    EXPECT_NEAR(r.value, 1.0, 1e-9);
}

TEST(Quadrature, ImproperDivergentTailHasEvidence)
{
    const auto r = integrate_extended([](double t) { return 4.0 / t; }, 1.0, inf);
    ASSERT_TRUE(r.is_plus_infinity());
    EXPECT_FALSE(r.evidence.empty());
}

TEST(Quadrature, LogSingularityAtZero)
{
    // int_0^1 log(1/t) dt = 1
    const auto r = integrate_extended([](double t) { return std::log(1.0 / t); }, 0.0, 1.0);
    ASSERT_TRUE(r.is_finite());
    EXPECT_NEAR(r.value, 1.0, 1e-9);
}

TEST(QuadratureProperty, PowerTailsMatchClosedForm)
{
    gen::for_all(11, 20, [](gen::Gen& g) {
        const double p = g.uniform(1.3, 4.0);
        const double a = g.uniform(0.5, 3.0);
        // int_a^inf t^-p dt = a^(1-p)/(p-1)
        const auto r = integrate_extended([p](double t) { return std::pow(t, -p); }, a, inf);
        ASSERT_TRUE(r.is_finite());
        const double exact = std::pow(a, 1.0 - p) / (p - 1.0);
        EXPECT_NEAR(r.value, exact, 1e-7 * exact);
    });
}
