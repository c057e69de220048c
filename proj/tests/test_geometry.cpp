#include <potkit/geometry.hpp>

#include <gtest/gtest.h>

#include <sstream>

#include "gen.hpp"

using namespace potkit;

TEST(DistToSet, PointToUnitCircle)
{
    const BoundarySet E{{CircleSet{{}, 1.0}}};
    EXPECT_DOUBLE_EQ(dist_to_set(0.3, E).value, 0.7);
}

TEST(DistToSet, OriginToSegment)
{
    const BoundarySet E{{SegmentSet{1.0, 2.0}}};
    EXPECT_DOUBLE_EQ(dist_to_set(0.0, E).value, 1.0);
}

TEST(DistToSet, EmptySetRejected)
{
    EXPECT_THROW(dist_to_set(0.0, BoundarySet{}), Error);
    EXPECT_THROW(dist_to_set(0.0, BoundarySet{{PointSet{}}}), Error);
}

TEST(DistToSet, GridPieceReportsHalfCellErrorBar)
{
    Grid mask = Grid::covering({-1, 1, -1, 1}, 0.1);
    mask.at(15, 10) = 1.0;  // node (0.5, 0)
    const Distance d = dist_to_set(Complex(-0.5, 0.0), BoundarySet{{GridSet{mask}}});
    EXPECT_NEAR(d.value, 1.0 - 0.05, 1e-12);
    EXPECT_DOUBLE_EQ(d.error_bar, 0.05);
}

TEST(DistToSet, ComplementOfDisc)
{
    const BoundarySet E{{ComplementSet{Disc{{}, 2.0}}}};
    EXPECT_NEAR(dist_to_set(0.5, E).value, 1.5, 1e-15);
    EXPECT_DOUBLE_EQ(dist_to_set(3.0, E).value, 0.0);
}

TEST(DistToSetProperty, OneLipschitz)
{
    const BoundarySet E{{CircleSet{{}, 1.0}, SegmentSet{{2.0, -1.0}, {2.0, 1.0}}, PointSet{{{-1.5, 0.5}}}}};
    gen::for_all(101, 500, [&](gen::Gen& g) {
        const Complex a = g.in_box(-3, 3, -3, 3), b = g.in_box(-3, 3, -3, 3);
        const double da = dist_to_set(a, E).value, db = dist_to_set(b, E).value;
        EXPECT_LE(std::abs(da - db), std::abs(a - b) * (1 + 1e-15) + 1e-15);
    });
}

TEST(CircleMean, RealPartAveragesToZero)
{
    EXPECT_NEAR(circle_mean([](Complex z) { return z.real(); }, 0.0, 1.0, 64).value, 0.0, 1e-15);
}

TEST(CircleMean, JensenIdentityForQuadratic)
{
    const auto m = circle_mean([](Complex z) { return std::log(std::abs(z * z - 0.25)); }, 0.0, 1.0, 2048);
    EXPECT_NEAR(m.value, 0.0, 1e-8);
}

TEST(CircleMean, ConstantOnCircle)
{
    EXPECT_NEAR(circle_mean([](Complex z) { return std::norm(z); }, 0.0, 2.0, 32).value, 4.0, 1e-13);
}

TEST(CircleMean, SkipsPoleNodesAndCounts)
{
    // node k = 0 sits on the pole at z = 1
    const auto m = circle_mean([](Complex z) { return std::log(std::abs(z - 1.0)); }, 0.0, 1.0, 16);
    EXPECT_EQ(m.skipped, 1u);
}

TEST(CircleMean, DegenerateAndTooFewNodes)
{
    auto f = [](Complex) { return -inf; };
    EXPECT_THROW(circle_mean(f, 0.0, 1.0, 16), Error);
    EXPECT_THROW(circle_mean([](Complex) { return 0.0; }, 0.0, 1.0, 4), Error);
}

TEST(CircleMeanProperty, ErrorDecaysForTrigonometricFamily)
{
    // f = Re z + cos(3 theta) is a trigonometric polynomial: exact once n > 3
    gen::for_all(7, 20, [](gen::Gen& g) {
        const double r = g.uniform(0.2, 3.0);
        auto f = [r](Complex z) { return z.real() + std::cos(3 * std::arg(z)) + r; };
        EXPECT_NEAR(circle_mean(f, 0.0, r, 8).value, r, 1e-12);
    });
    // a smooth non-polynomial periodic integrand: error falls quickly with n
    auto smooth = [](Complex z) { return std::exp(z.real()); };
    const double exact = std::cyl_bessel_i(0.0, 1.0);
    const double e8 = std::abs(circle_mean(smooth, 0.0, 1.0, 8).value - exact);
    const double e16 = std::abs(circle_mean(smooth, 0.0, 1.0, 16).value - exact);
    EXPECT_LT(e16, e8 / 4.0);
}

TEST(GridSample, ZeroFunction)
{
    const Grid g = grid_sample([](Complex) { return 0.0; }, {0, 1, 0, 1}, 0.5);
    EXPECT_EQ(g.size(), 9u);
    for (double v : g.values())
        EXPECT_EQ(v, 0.0);
}

TEST(GridSample, CornerValue)
{
    const Grid g = grid_sample([](Complex z) { return std::norm(z); }, {-1, 1, -1, 1}, 0.5);
    EXPECT_DOUBLE_EQ(g.at(0, 0), 2.0);
    EXPECT_DOUBLE_EQ(g.at(4, 4), 2.0);
}

TEST(GridSample, PoleMarked)
{
    const Grid g = grid_sample([](Complex z) { return std::log(std::abs(z)); }, {-1, 1, -1, 1}, 0.5);
    EXPECT_EQ(g.at(2, 2), -inf);
}

TEST(GridSample, ThrowingEvaluatorRecordedNotRaised)
{
    auto f = [](Complex z) -> double {
        if (z.real() > 0.75)
            throw Error("boom");
        return 1.0;
    };
    const Grid g = grid_sample(f, {0, 1, 0, 1}, 0.5);
    EXPECT_EQ(g.at(2, 0), -inf);
    EXPECT_EQ(g.at(0, 0), 1.0);
}

TEST(GridSampleProperty, ReadbackIsExact)
{
    gen::for_all(3, 10, [](gen::Gen& g) {
        const double a = g.uniform(-2, 2), b = g.uniform(-2, 2);
        auto f = [a, b](Complex z) { return std::sin(a * z.real()) * std::cos(b * z.imag()); };
        const Grid s = grid_sample(f, {-1, 1, -0.5, 0.5}, 0.125);
        for (std::size_t j = 0; j < s.ny(); ++j)
            for (std::size_t i = 0; i < s.nx(); ++i)
                ASSERT_EQ(s.at(i, j), f(s.node(i, j)));
    });
}

TEST(Grid, CsvDumpFormat)
{
    Grid g({0, 0}, 1.0, 2, 1);
    g.at(0, 0) = 1.5;
    g.at(1, 0) = -inf;
    std::ostringstream os;
    g.write_csv(os);
    EXPECT_EQ(os.str(), "x,y,value\n0,0,1.5\n1,0,-inf\n");
}

TEST(Grid, RejectsNonPositiveSpacing)
{
    EXPECT_THROW(Grid::covering({0, 1, 0, 1}, 0.0), Error);
    EXPECT_THROW(Grid({}, -1.0, 2, 2), Error);
}

TEST(ExtPoint, InversionSwapsCentreAndInfinity)
{
    EXPECT_TRUE(invert(ExtPoint(Complex(1, 1)), Complex(1, 1)).is_infinite());
    EXPECT_EQ(invert(ExtPoint::infinity(), 2.0).finite(), Complex(2.0));
    const Complex z(0.3, -0.4);
    EXPECT_NEAR(std::abs(invert(invert(ExtPoint(z))).finite() - z), 0.0, 1e-15);
    EXPECT_THROW(ExtPoint(Complex(inf, 0)), Error);
    EXPECT_THROW(ExtPoint::infinity().finite(), Error);
}

TEST(Domains, ValidationAndContainment)
{
    EXPECT_THROW(validate(Disc{{}, 0.0}), Error);
    EXPECT_THROW(validate(Annulus{2.0, 1.0}), Error);
    EXPECT_TRUE(contains(Annulus{0.5, 2.0}, 1.0));
    EXPECT_FALSE(contains(Annulus{0.5, 2.0}, 0.25));
    EXPECT_TRUE(contains(HalfPlane::right(), 0.1));
    EXPECT_FALSE(contains(HalfPlane::right(), -0.1));
    EXPECT_TRUE(contains(ExteriorDisc{{}, 1.0}, 5.0));
    EXPECT_THROW(validate_hole(Disc{{}, 1.0}, Disc{{}, 1.0}), Error);
    EXPECT_NO_THROW(validate_hole(Disc{{}, 1.0}, Disc{{}, 0.5}));
}
