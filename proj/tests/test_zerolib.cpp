#include <potkit/zerolib.hpp>

#include <gtest/gtest.h>

#include <sstream>

#include "gen.hpp"

using namespace potkit;

namespace
{

ZeroSequence integers(int n)
{
    std::vector<Complex> pts;
    for (int k = 1; k <= n; ++k)
        pts.push_back(static_cast<double>(k));
    return ZeroSequence::simple(pts);
}

} // namespace

TEST(Counting, DoubleZero)
{
    EXPECT_EQ(counting_measure(ZeroSequence({{0.5, 2}}), Region::open_disc(0.0, 0.6)), 2);
}

TEST(Counting, Integers)
{
    EXPECT_EQ(counting_measure(integers(10), Region::open_disc(0.0, 5.5)), 5);
}

TEST(Counting, AdditiveOverAnnulusPartition)
{
    gen::for_all(101, 50, [](gen::Gen& g) {
        std::vector<Zero> zs;
        for (int k = 0; k < 30; ++k)
            zs.push_back({g.in_disc(0.0, 3.0), g.integer(1, 3)});
        // include zeros sitting exactly on the cut circle
        const double cut = g.uniform(0.5, 2.5);
        zs.push_back({std::polar(cut, g.uniform(0, two_pi)), 1});
        const ZeroSequence z(zs);
        const long whole = counting_measure(z, Region::annulus(0.0, 0.2, 2.8, false, false));
        const long in = counting_measure(z, Region::annulus(0.0, 0.2, cut, false, false));
        const long out = counting_measure(z, Region::annulus(0.0, cut, 2.8, true, false));
        EXPECT_EQ(in + out, whole);
    });
}

TEST(Counting, MultiplicitiesMustBePositive)
{
    EXPECT_THROW(ZeroSequence({{0.5, 0}}), Error);
}

TEST(Counting, SubsequenceWithMultiplicity)
{
    const ZeroSequence big({{0.5, 2}, {Complex(0, 1), 1}});
    EXPECT_TRUE(counted_within(ZeroSequence({{0.5, 1}}), big));
    EXPECT_TRUE(counted_within(ZeroSequence({{0.5, 2}}), big));
    EXPECT_FALSE(counted_within(ZeroSequence({{0.5, 3}}), big));
    EXPECT_FALSE(counted_within(ZeroSequence({{0.25, 1}}), big));
}

TEST(Counting, ReadCsv)
{
    std::istringstream is("x,y,multiplicity\n0.5,0,2\n\n-1,0.25\n");
    const auto z = ZeroSequence::read_csv(is);
    ASSERT_EQ(z.size(), 2u);
    EXPECT_EQ(z.zeros()[0].multiplicity, 2);
    EXPECT_EQ(z.zeros()[1].z, Complex(-1, 0.25));
    EXPECT_EQ(z.total_multiplicity(), 3);
    std::istringstream bad("0.5,0,1\nfoo,bar\n");
    EXPECT_THROW(ZeroSequence::read_csv(bad), Error);
}

TEST(Counting, SortAndGap)
{
    const auto z = ZeroSequence::simple({Complex(2.0), Complex(0.5), Complex(0, 1)});
    const auto s = z.sorted_by_modulus();
    EXPECT_EQ(s.zeros()[0].z, Complex(0.5));
    EXPECT_EQ(s.zeros()[2].z, Complex(2.0));
    EXPECT_NEAR(z.min_gap(), std::abs(Complex(0.5) - Complex(0, 1)), 1e-15);
}

TEST(Blaschke, ValueAtOrigin)
{
    const auto B = HoloModel::blaschke({0.7, -0.7});
    EXPECT_NEAR(eval_log_modulus(B, 0.0), 2 * std::log(0.7), 1e-15);
    EXPECT_NEAR(eval_log_modulus(B, 0.0), -0.71335, 1e-5);
}

TEST(Blaschke, UnimodularOnCircle)
{
    const auto B = HoloModel::blaschke({0.5});
    EXPECT_EQ(eval_log_modulus(B, 0.5), -inf);
    for (int k = 0; k < 16; ++k)
        EXPECT_NEAR(eval_log_modulus(B, std::polar(1.0, two_pi * k / 16.0)), 0.0, 1e-12);
    const auto B2 = HoloModel::blaschke({0.7, -0.7});
    EXPECT_NEAR(eval_log_modulus(B2, std::polar(1.0, 0.3)), 0.0, 1e-12);
}

TEST(Blaschke, BoundedNearTheCircle)
{
    std::vector<Complex> a;
    for (int k = 1; k <= 50; ++k)
        a.push_back(1.0 - 1.0 / (k * k));
    a.erase(a.begin());  // k = 1 puts a zero at the origin
    EXPECT_LE(sampled_sup_modulus(HoloModel::blaschke(a), 0.99), 1.0);
}

TEST(Blaschke, OriginFlaggedAndOutsideRejected)
{
    EXPECT_FALSE(HoloModel::blaschke({0.0, 0.3}).flags().empty());
    EXPECT_TRUE(HoloModel::blaschke({0.3}).flags().empty());
    EXPECT_THROW(HoloModel::blaschke({1.0}), Error);
}

TEST(LogModulus, Examples)
{
    const auto p = HoloModel::polynomial({-0.25, 0.0, 1.0});
    EXPECT_NEAR(eval_log_modulus(p, 0.0), std::log(0.25), 1e-15);
    EXPECT_NEAR(eval_log_modulus(p, 0.0), -1.386294, 1e-6);
    EXPECT_EQ(eval_log_modulus(p, 0.5), -inf);
    const auto s = HoloModel::scaled_sine();
    EXPECT_NEAR(eval_log_modulus(s, 10.5), 0.0, 1e-15);
    EXPECT_EQ(eval_log_modulus(s, 7.0), -inf);
    EXPECT_NEAR(eval_log_modulus(s, Complex(0.5, 40.0)), std::log(std::cosh(40 * pi)), 1e-12);
}

TEST(LogModulus, CanonicalProductApproachesSine)
{
    const auto f = HoloModel::canonical_product(ZeroLaw::sine(), 20000);
    const auto s = HoloModel::scaled_sine();
    for (Complex z : {Complex(0.5), Complex(2.3, 0.7), Complex(-1.1, -0.4)}) {
        const double diff = std::abs(eval_log_modulus(f, z) - eval_log_modulus(s, z));
        EXPECT_LE(diff, f.remainder_bound(std::abs(z)));
        EXPECT_LT(diff, 1e-3);
    }
    EXPECT_EQ(s.remainder_bound(10), 0.0);
    EXPECT_THROW(s.zeros_within(), Error);
    EXPECT_EQ(s.zeros_within(3.5).total_multiplicity(), 7);
}

TEST(RieszCounting, TwoSimpleZeros)
{
    const auto r = verify_riesz_equals_counting(HoloModel::polynomial({-0.25, 0.0, 1.0}), Disc{{}, 1.0}, 1e-3);
    ASSERT_EQ(r.masses.size(), 2u);
    for (double m : r.masses)
        EXPECT_NEAR(m, 1.0, 1e-2);
}

TEST(RieszCounting, DoubleZero)
{
    const auto r = verify_riesz_equals_counting(HoloModel::polynomial({0.0, 0.0, 1.0}), Disc{{}, 1.0}, 1e-3);
    ASSERT_EQ(r.masses.size(), 1u);
    EXPECT_NEAR(r.masses[0], 2.0, 2e-2);
}

TEST(RieszCounting, NoZeros)
{
    const auto r = verify_riesz_equals_counting(HoloModel::polynomial({1.0}), Disc{{}, 1.0}, 1e-2);
    EXPECT_TRUE(r.masses.empty());
    EXPECT_LT(std::abs(r.residual_mass), 1e-8);
}

TEST(RieszCounting, ClusteredZerosRejected)
{
    const auto p = HoloModel::from_roots({0.1, 0.105});
    EXPECT_THROW(verify_riesz_equals_counting(p, Disc{{}, 1.0}, 1e-3), Error);
}

TEST(RieszCounting, SineZerosInADisc)
{
    const auto r = verify_riesz_equals_counting(HoloModel::scaled_sine(), Disc{{}, 2.5}, 2e-3);
    ASSERT_EQ(r.masses.size(), 5u);
    EXPECT_LT(r.max_deviation, 2e-2);
}

TEST(Roots, DegreeMatchesCount)
{
    const auto p = HoloModel::from_roots({0.5, 0.5, Complex(0, 2), -3.0});
    EXPECT_EQ(p.zeros().total_multiplicity(), 4);
    EXPECT_EQ(counting_measure(p.zeros(), Region::all()), 4);
    EXPECT_EQ(counting_measure(p.zeros(), Region::open_disc(0.5, 1e-3)), 2);
}

TEST(ZerolibProperty, DeclaredZerosAreCounted)
{
    gen::for_all(103, 30, [](gen::Gen& g) {
        std::vector<Complex> r;
        const int n = g.integer(1, 6);
        for (int k = 0; k < n; ++k)
            r.push_back(g.in_disc(0.0, 2.0));
        const auto p = HoloModel::from_roots(r);
        const auto Z = ZeroSequence::simple(std::vector<Complex>(r.begin(), r.begin() + g.integer(0, n)));
        EXPECT_TRUE(counted_within(Z, p.zeros(), 1e-6));
        EXPECT_LE(counting_measure(Z, Region::all()), counting_measure(p.zeros(), Region::all()));
    });
}

TEST(ZerolibProperty, JensenIdentityForPolynomials)
{
    // mean of log|f| on |z| = R equals log|a_n| + n log R + sum_{|z_k| > R} log(|z_k|/R)
    gen::for_all(105, 30, [](gen::Gen& g) {
        std::vector<Complex> r;
        const int n = g.integer(1, 5);
        for (int k = 0; k < n; ++k)
            r.push_back(g.in_disc(0.0, 2.5));
        const Complex lead = g.in_annulus(0.0, 0.5, 2.0);
        const auto p = HoloModel::from_roots(r, lead);
        double R = g.uniform(0.3, 3.0);
        auto near_root = [&] {
            for (auto z : r)
                if (std::abs(std::abs(z) - R) < 0.05)
                    return true;
            return false;
        };
        while (near_root())
            R += 0.1;
        double expected = std::log(std::abs(lead)) + n * std::log(R);
        for (auto z : r)
            if (std::abs(z) > R)
                expected += std::log(std::abs(z) / R);
        const double mean = circle_mean([&](Complex z) { return eval_log_modulus(p, z); }, 0.0, R, 4096).value;
        EXPECT_NEAR(mean, expected, 1e-7);
    });
}

TEST(ZerolibProperty, BezoutCountEqualsDegree)
{
    gen::for_all(107, 30, [](gen::Gen& g) {
        const int n = g.integer(1, 8);
        std::vector<Complex> c;
        for (int k = 0; k <= n; ++k)
            c.push_back(g.in_disc(0.0, 1.0));
        c.back() = g.in_annulus(0.0, 0.5, 1.0);
        const auto p = HoloModel::polynomial(c);
        EXPECT_EQ(counting_measure(p.zeros(), Region::all()), n);
        // the growth hypothesis log|f| <= n log+|z| + const holds with const = log sum |c_k|
        double C = 0.0;
        for (auto a : c)
            C += std::abs(a);
        for (int k = 0; k < 20; ++k) {
            const Complex z = g.in_disc(0.0, 50.0);
            EXPECT_LE(eval_log_modulus(p, z), n * std::max(0.0, std::log(std::abs(z))) + std::log(C) + 1e-12);
        }
    });
}
