#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

namespace potkit
{

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double inf = std::numeric_limits<double>::infinity();

inline constexpr const char* version = "0.3.1";

/// Raised for contract violations and unrecoverable numerical failures.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A real number that may be +-infinity. Infinite values carry the
/// comparison that established divergence.
struct ExtendedReal
{
    double value = 0.0;
    double error = 0.0;    // absolute error estimate for finite values
    std::string evidence;  // non-empty whenever value is infinite

    static ExtendedReal finite(double v, double err = 0.0) { return {v, err, {}}; }
    static ExtendedReal plus_infinity(std::string why) { return {inf, 0.0, std::move(why)}; }
    static ExtendedReal minus_infinity(std::string why) { return {-inf, 0.0, std::move(why)}; }

    bool is_finite() const { return std::isfinite(value); }
    bool is_plus_infinity() const { return value == inf; }
    bool is_minus_infinity() const { return value == -inf; }
};

inline ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b)
{
    if (a.is_finite() && b.is_finite())
        return ExtendedReal::finite(a.value + b.value, a.error + b.error);
    if ((a.is_plus_infinity() && b.is_minus_infinity()) || (a.is_minus_infinity() && b.is_plus_infinity()))
        throw Error("undefined sum of opposite infinities");
    if (!a.is_finite())
        return a;
    return b;
}

inline ExtendedReal operator*(double c, const ExtendedReal& a)
{
    if (a.is_finite())
        return ExtendedReal::finite(c * a.value, std::abs(c) * a.error);
    if (c == 0.0)
        return ExtendedReal::finite(0.0);
    ExtendedReal r = a;
    if (c < 0.0)
        r.value = -r.value;
    return r;
}

inline ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b) { return a + (-1.0) * b; }

/// Neumaier-compensated running sum.
class CompensatedSum
{
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs)
{
    CompensatedSum s;
    for (double x : xs)
        s.add(x);
    return s.value();
}

} // namespace potkit
