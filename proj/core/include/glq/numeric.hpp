#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace glq {

using cxd = std::complex<double>;

/// exp(2*pi*i * num/den), computed from the reduced rational angle so that
/// equal angles give bit-identical values.
inline cxd unit_root(std::int64_t num, std::int64_t den)
{
    num %= den;
    if (num < 0) num += den;
    const double angle = 2.0 * std::numbers::pi * (static_cast<double>(num) / static_cast<double>(den));
    return {std::cos(angle), std::sin(angle)};
}

/// Kahan-compensated accumulator for complex sums.
class KahanSum {
public:
    void add(cxd x)
    {
        const cxd y = x - comp_;
        const cxd t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    cxd value() const { return sum_; }

private:
    cxd sum_{0.0, 0.0};
    cxd comp_{0.0, 0.0};
};

/// Default absolute tolerance for identity-type checks.
inline constexpr double kIdentityTol = 1e-7;
/// Default absolute tolerance for integrality / structural-zero detection.
inline constexpr double kZeroTol = 1e-8;

inline bool nearly_equal(cxd a, cxd b, double tol = kIdentityTol)
{
    return std::abs(a - b) < tol;
}

inline bool nearly_zero(cxd a, double tol = kZeroTol) { return std::abs(a) < tol; }

/// Round a complex value to the nearest integer, checking that the residual
/// is below tol.  Returns false if the value is not integral.
inline bool nearest_integer(cxd v, std::int64_t& out, double tol = kZeroTol)
{
    const double r = std::round(v.real());
    if (std::abs(v.real() - r) > tol || std::abs(v.imag()) > tol) return false;
    out = static_cast<std::int64_t>(r);
    return true;
}

}  // namespace glq
