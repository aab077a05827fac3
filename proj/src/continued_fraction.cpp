#include <powertuple/continued_fraction.hpp>

#include <stdexcept>
#include <string>

namespace powertuple {

namespace {

constexpr unsigned kMaxPrecisionBits = 1u << 24;

Natural floor_div(const Natural& num, const Natural& den) {
    Natural out;
    mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

} // namespace

SurdExpansion::SurdExpansion(Natural radicand, unsigned k) : radicand_(std::move(radicand)), k_(k) {
    if (k_ < 2) {
        throw std::invalid_argument("continued fraction: root index must be at least 2");
    }
    if (radicand_ < 2) {
        throw std::invalid_argument("continued fraction: radicand must be at least 2");
    }
    if (perfect_power_root(radicand_, k_)) {
        throw std::invalid_argument("continued fraction: " + to_string(radicand_) + " is a perfect " +
                                    std::to_string(k_) + "-th power, the expansion terminates");
    }
    precision_bits_ = static_cast<unsigned>(2 * bit_length(radicand_) + 64);
    enclosure_lo_ = iroot(radicand_ << static_cast<mp_bitcnt_t>(k_ * precision_bits_), k_);
}

void SurdExpansion::raise_precision() {
    if (precision_bits_ >= kMaxPrecisionBits) {
        throw std::runtime_error("continued fraction: precision limit reached");
    }
    precision_bits_ *= 2;
    enclosure_lo_ = iroot(radicand_ << static_cast<mp_bitcnt_t>(k_ * precision_bits_), k_);
}

Natural SurdExpansion::next_quotient() {
    // Remainder x_{j+1} = (p_{j-1} - q_{j-1} a) / (q_j a - p_j), monotone in the root a.
    Natural p_prev = 0, q_prev = 1, p_cur = 1, q_cur = 0;
    const std::size_t n = convergents_.size();
    if (n >= 1) {
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = convergents_[n - 1].p;
        q_cur = convergents_[n - 1].q;
    }
    if (n >= 2) {
        p_prev = convergents_[n - 2].p;
        q_prev = convergents_[n - 2].q;
    }

    while (true) {
        const Natural scale = Natural(1) << precision_bits_;
        const Natural lo = enclosure_lo_;
        const Natural hi = enclosure_lo_ + 1;
        const Natural den_lo = q_cur * lo - p_cur * scale;
        const Natural den_hi = q_cur * hi - p_cur * scale;
        if (sgn(den_lo) != 0 && sgn(den_lo) == sgn(den_hi)) {
            const Natural a_lo = floor_div(p_prev * scale - q_prev * lo, den_lo);
            const Natural a_hi = floor_div(p_prev * scale - q_prev * hi, den_hi);
            if (a_lo == a_hi) {
                if (n >= 1 && a_lo < 1) {
                    throw std::logic_error("continued fraction: non-positive partial quotient");
                }
                return a_lo;
            }
        }
        raise_precision();
    }
}

void SurdExpansion::push(Natural quotient) {
    const std::size_t n = convergents_.size();
    Convergent next;
    if (n == 0) {
        next = {quotient, 1};
    } else if (n == 1) {
        next = {quotient * convergents_[0].p + 1, quotient};
    } else {
        next = {quotient * convergents_[n - 1].p + convergents_[n - 2].p,
                quotient * convergents_[n - 1].q + convergents_[n - 2].q};
    }
    quotients_.push_back(std::move(quotient));
    convergents_.push_back(std::move(next));
}

SurdExpansion SurdExpansion::expand(const Natural& radicand, unsigned k, std::size_t terms) {
    if (terms < 1) {
        throw std::invalid_argument("continued fraction: at least one term is required");
    }
    SurdExpansion out(radicand, k);
    while (out.size() < terms) {
        out.push(out.next_quotient());
    }
    return out;
}

SurdExpansion SurdExpansion::expand_until(const Natural& radicand, unsigned k, const StopPredicate& stop,
                                          std::size_t max_terms) {
    SurdExpansion out(radicand, k);
    out.push(out.next_quotient());
    for (std::size_t j = 0;; ++j) {
        Natural lookahead = out.next_quotient();
        const Convergent& c = out.convergents_[j];
        if (stop(j, c.p, c.q, lookahead)) {
            out.stop_index_ = j;
            return out;
        }
        if (out.size() >= max_terms) {
            throw std::runtime_error("continued fraction: stop predicate not met within " +
                                     std::to_string(max_terms) + " terms");
        }
        out.push(std::move(lookahead));
    }
}

SurdExpansion SurdExpansion::extended(std::size_t terms) const {
    SurdExpansion out = *this;
    out.stop_index_.reset();
    while (out.size() < terms) {
        out.push(out.next_quotient());
    }
    return out;
}

const Natural& SurdExpansion::quotient(std::size_t j) const {
    if (j >= quotients_.size()) {
        throw std::out_of_range("continued fraction: quotient index " + std::to_string(j) +
                                " beyond computed terms");
    }
    return quotients_[j];
}

const Convergent& SurdExpansion::convergent(std::size_t j) const {
    if (j >= convergents_.size()) {
        throw std::out_of_range("continued fraction: convergent index " + std::to_string(j) +
                                " beyond computed terms");
    }
    return convergents_[j];
}

const Convergent& convergent(const SurdExpansion& expansion, std::size_t j) {
    return expansion.convergent(j);
}

} // namespace powertuple
