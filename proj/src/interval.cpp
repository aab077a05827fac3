#include <powertuple/interval.hpp>

#include <algorithm>
#include <initializer_list>
#include <utility>

#include <mpfr.h>

namespace powertuple {

namespace {

class Mpfr {
public:
    explicit Mpfr(unsigned bits) { mpfr_init2(value_, static_cast<mpfr_prec_t>(bits)); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    ~Mpfr() { mpfr_clear(value_); }

    mpfr_ptr get() { return value_; }

    Rational to_rational() const {
        Rational out;
        mpfr_get_q(out.get_mpq_t(), value_);
        return out;
    }

private:
    mpfr_t value_;
};

using UnaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

// f must be non-decreasing on the domain.
RationalInterval apply_monotone(const RationalInterval& x, unsigned bits, UnaryOp f) {
    Mpfr arg(bits + 32);
    Mpfr out(bits);
    mpfr_set_q(arg.get(), x.lo().get_mpq_t(), MPFR_RNDD);
    f(out.get(), arg.get(), MPFR_RNDD);
    Rational lo = out.to_rational();
    mpfr_set_q(arg.get(), x.hi().get_mpq_t(), MPFR_RNDU);
    f(out.get(), arg.get(), MPFR_RNDU);
    return {std::move(lo), out.to_rational()};
}

Rational round_to(const Rational& x, unsigned bits, mpfr_rnd_t mode) {
    Mpfr out(bits);
    mpfr_set_q(out.get(), x.get_mpq_t(), mode);
    return out.to_rational();
}

} // namespace

RationalInterval::RationalInterval(Rational exact) : lo_(exact), hi_(std::move(exact)) {}

RationalInterval::RationalInterval(const Natural& exact) : lo_(exact), hi_(exact) {}

RationalInterval::RationalInterval(long exact) : lo_(exact), hi_(exact) {}

RationalInterval::RationalInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) {
        throw std::invalid_argument("RationalInterval: lo exceeds hi");
    }
}

RationalInterval RationalInterval::operator-() const {
    return {-hi_, -lo_};
}

RationalInterval& RationalInterval::operator+=(const RationalInterval& rhs) {
    lo_ += rhs.lo_;
    hi_ += rhs.hi_;
    return *this;
}

RationalInterval& RationalInterval::operator-=(const RationalInterval& rhs) {
    Rational lo = lo_ - rhs.hi_;
    hi_ -= rhs.lo_;
    lo_ = std::move(lo);
    return *this;
}

RationalInterval& RationalInterval::operator*=(const RationalInterval& rhs) {
    const Rational a = lo_ * rhs.lo_, b = lo_ * rhs.hi_, c = hi_ * rhs.lo_, d = hi_ * rhs.hi_;
    lo_ = std::min({a, b, c, d});
    hi_ = std::max({a, b, c, d});
    return *this;
}

RationalInterval& RationalInterval::operator/=(const RationalInterval& rhs) {
    if (rhs.lo_ <= 0 && rhs.hi_ >= 0) {
        throw std::domain_error("RationalInterval: division by an interval containing zero");
    }
    return *this *= RationalInterval(1 / rhs.hi_, 1 / rhs.lo_);
}

RationalInterval round_outward(const RationalInterval& x, unsigned bits) {
    return {round_to(x.lo(), bits, MPFR_RNDD), round_to(x.hi(), bits, MPFR_RNDU)};
}

RationalInterval pow(const RationalInterval& x, unsigned long exponent) {
    if (exponent == 0) {
        return RationalInterval(1L);
    }
    auto power = [exponent](const Rational& v) {
        Rational out;
        mpz_pow_ui(out.get_num_mpz_t(), v.get_num_mpz_t(), exponent);
        mpz_pow_ui(out.get_den_mpz_t(), v.get_den_mpz_t(), exponent);
        return out;
    };
    Rational lo = power(x.lo()), hi = power(x.hi());
    if (exponent % 2 == 1 || x.lo() >= 0) {
        return {std::move(lo), std::move(hi)};
    }
    if (x.hi() <= 0) {
        return {std::move(hi), std::move(lo)};
    }
    return {Rational(0), std::max(lo, hi)};
}

RationalInterval sqrt(const RationalInterval& x, unsigned bits) {
    if (x.lo() < 0) {
        throw std::domain_error("sqrt of an interval reaching below zero");
    }
    return apply_monotone(x, bits, mpfr_sqrt);
}

RationalInterval root(const RationalInterval& x, unsigned long n, unsigned bits) {
    if (n == 0) {
        throw std::domain_error("zeroth root");
    }
    if (x.lo() < 0) {
        throw std::domain_error("root of an interval reaching below zero");
    }
    Mpfr arg(bits + 32);
    Mpfr out(bits);
    mpfr_set_q(arg.get(), x.lo().get_mpq_t(), MPFR_RNDD);
    mpfr_rootn_ui(out.get(), arg.get(), n, MPFR_RNDD);
    Rational lo = out.to_rational();
    mpfr_set_q(arg.get(), x.hi().get_mpq_t(), MPFR_RNDU);
    mpfr_rootn_ui(out.get(), arg.get(), n, MPFR_RNDU);
    return {std::move(lo), out.to_rational()};
}

RationalInterval log(const RationalInterval& x, unsigned bits) {
    if (x.lo() <= 0) {
        throw std::domain_error("log of an interval reaching zero or below");
    }
    return apply_monotone(x, bits, mpfr_log);
}

RationalInterval exp(const RationalInterval& x, unsigned bits) {
    return apply_monotone(x, bits, mpfr_exp);
}

RationalInterval pow(const RationalInterval& base, const RationalInterval& exponent, unsigned bits) {
    return exp(exponent * log(base, bits), bits);
}

Natural floor(const Rational& x) {
    Natural out;
    mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return out;
}

Natural ceil(const Rational& x) {
    Natural out;
    mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return out;
}

std::string to_decimal(const Rational& x, unsigned digits) {
    Natural scale = pow(Natural(10), digits);
    Natural scaled;
    const Rational shifted = x * scale;
    mpz_tdiv_q(scaled.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    const bool negative = sgn(scaled) < 0 || (sgn(scaled) == 0 && sgn(x) < 0);
    Natural magnitude = abs(scaled);
    std::string whole = to_string(Natural(magnitude / scale));
    std::string frac = to_string(Natural(magnitude % scale));
    if (digits == 0) {
        return (negative ? "-" : "") + whole;
    }
    frac.insert(0, digits - frac.size(), '0');
    return (negative ? "-" : "") + whole + "." + frac;
}

} // namespace powertuple
