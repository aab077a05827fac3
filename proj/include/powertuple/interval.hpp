#pragma once

#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include <powertuple/natural.hpp>

namespace powertuple {

using Rational = mpq_class;

/// Closed interval [lo, hi] with exact rational endpoints.
///
/// Field operations are exact on the endpoints. Transcendental functions
/// take a working precision in bits and round lo down and hi up, so the
/// result always encloses the image of the input.
class RationalInterval {
public:
    RationalInterval() = default;
    RationalInterval(Rational exact);
    RationalInterval(const Natural& exact);
    RationalInterval(long exact);
    RationalInterval(Rational lo, Rational hi);

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }
    Rational midpoint() const { return (lo_ + hi_) / 2; }
    bool is_exact() const { return lo_ == hi_; }
    bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }

    /// hi < other.lo: every point of *this is below every point of other.
    bool certainly_less(const RationalInterval& other) const { return hi_ < other.lo_; }
    bool certainly_greater(const RationalInterval& other) const { return lo_ > other.hi_; }

    RationalInterval operator-() const;
    RationalInterval& operator+=(const RationalInterval& rhs);
    RationalInterval& operator-=(const RationalInterval& rhs);
    RationalInterval& operator*=(const RationalInterval& rhs);
    /// Throws std::domain_error when rhs contains zero.
    RationalInterval& operator/=(const RationalInterval& rhs);

    friend RationalInterval operator+(RationalInterval lhs, const RationalInterval& rhs) { return lhs += rhs; }
    friend RationalInterval operator-(RationalInterval lhs, const RationalInterval& rhs) { return lhs -= rhs; }
    friend RationalInterval operator*(RationalInterval lhs, const RationalInterval& rhs) { return lhs *= rhs; }
    friend RationalInterval operator/(RationalInterval lhs, const RationalInterval& rhs) { return lhs /= rhs; }

    friend bool operator==(const RationalInterval& a, const RationalInterval& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

private:
    Rational lo_ = 0;
    Rational hi_ = 0;
};

/// Outward rounding of both endpoints to dyadic rationals with `bits` significant bits.
RationalInterval round_outward(const RationalInterval& x, unsigned bits);

RationalInterval pow(const RationalInterval& x, unsigned long exponent);
RationalInterval sqrt(const RationalInterval& x, unsigned bits);
/// n-th root, n >= 1; requires x >= 0.
RationalInterval root(const RationalInterval& x, unsigned long n, unsigned bits);
/// Natural logarithm; requires x > 0.
RationalInterval log(const RationalInterval& x, unsigned bits);
RationalInterval exp(const RationalInterval& x, unsigned bits);
/// base^exponent for base > 0, via exp(exponent * log(base)).
RationalInterval pow(const RationalInterval& base, const RationalInterval& exponent, unsigned bits);

Natural floor(const Rational& x);
Natural ceil(const Rational& x);
/// Decimal rendering with `digits` fractional digits, truncated toward zero.
std::string to_decimal(const Rational& x, unsigned digits);

} // namespace powertuple
