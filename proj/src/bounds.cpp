#include <powertuple/bounds.hpp>

#include <string>
#include <utility>

namespace powertuple {

namespace {

enum class Order { less, greater, undecided };

Order order(const RationalInterval& lhs, const RationalInterval& rhs) {
    if (lhs.certainly_greater(rhs)) {
        return Order::greater;
    }
    if (lhs.certainly_less(rhs)) {
        return Order::less;
    }
    return Order::undecided;
}

// terms(bits) yields (lhs, rhs); precision doubles until they separate or the cap is passed.
template <class Terms>
Order separate(const Precision& precision, Terms&& terms) {
    for (unsigned bits = precision.initial_bits;; bits *= 2) {
        auto [lhs, rhs] = terms(bits);
        if (const Order o = order(lhs, rhs); o != Order::undecided) {
            return o;
        }
        if (bits >= precision.cap_bits) {
            return Order::undecided;
        }
    }
}

RationalInterval mu_at(unsigned n, unsigned bits) {
    RationalInterval out(1L);
    unsigned rest = n;
    for (unsigned p = 2; p <= rest; ++p) {
        if (rest % p != 0) {
            continue;
        }
        while (rest % p == 0) {
            rest /= p;
        }
        out *= p == 2 ? RationalInterval(2L) : root(RationalInterval(static_cast<long>(p)), p - 1, bits);
    }
    return out;
}

struct MeasureTerms {
    RationalInterval n_mu; // n * mu_n
    RationalInterval s;    // (sqrt(N) + sqrt(N + 1))^2
};

MeasureTerms measure_terms(unsigned n, const Natural& N, unsigned bits) {
    RationalInterval n_mu = RationalInterval(static_cast<long>(n)) * mu_at(n, bits);
    RationalInterval sum = sqrt(RationalInterval(N), bits) + sqrt(RationalInterval(Natural(N + 1)), bits);
    return {std::move(n_mu), pow(sum, 2)};
}

RationalInterval lambda_at(unsigned n, const Natural& N, unsigned bits) {
    const MeasureTerms t = measure_terms(n, N, bits);
    return RationalInterval(1L) + log(t.n_mu * t.s, bits) / log(t.s / t.n_mu, bits);
}

void require_measure_input(unsigned n, const Natural& N) {
    if (n < 3) {
        throw std::invalid_argument("irrationality measure: n must be at least 3");
    }
    if (N < 1) {
        throw std::invalid_argument("irrationality measure: N must be positive");
    }
}

void require_condition(unsigned n, const Natural& N, const Precision& precision) {
    if (!check_condition(n, N, precision)) {
        throw std::domain_error("irrationality measure: condition not certified for n = " + std::to_string(n) +
                                ", N = " + to_string(N));
    }
}

[[noreturn]] void undecided(const std::string& what) {
    throw UndecidedError(what + ": inequality not separated within the precision cap");
}

} // namespace

bool is_prime(unsigned n) {
    if (n < 2) {
        return false;
    }
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

RationalInterval mu(unsigned n, const Precision& precision) {
    if (n < 2) {
        throw std::invalid_argument("mu: n must be at least 2");
    }
    return mu_at(n, precision.initial_bits);
}

bool check_condition(unsigned n, const Natural& N, const Precision& precision) {
    require_measure_input(n, N);
    // (n - 2) log S > n log(n mu_n)
    const Order o = separate(precision, [&](unsigned bits) {
        const MeasureTerms t = measure_terms(n, N, bits);
        return std::pair{RationalInterval(static_cast<long>(n - 2)) * log(t.s, bits),
                         RationalInterval(static_cast<long>(n)) * log(t.n_mu, bits)};
    });
    return o == Order::greater;
}

RationalInterval lambda_exponent(unsigned n, const Natural& N, const Precision& precision) {
    require_measure_input(n, N);
    require_condition(n, N, precision);
    return lambda_at(n, N, precision.initial_bits);
}

RationalInterval bennett_gap(unsigned n, const Natural& N, const Natural& q, const Precision& precision) {
    require_measure_input(n, N);
    if (q < 1) {
        throw std::invalid_argument("bennett_gap: q must be positive");
    }
    require_condition(n, N, precision);
    const unsigned bits = precision.initial_bits;
    const RationalInterval lambda = lambda_at(n, N, bits);
    const RationalInterval scale = RationalInterval(static_cast<long>(8 * n)) * mu_at(n, bits) * RationalInterval(N);
    return RationalInterval(1L) / scale * exp(-(lambda * log(RationalInterval(q), bits)), bits);
}

BoundEnvelope envelope(unsigned n, const Natural& N, const Precision& precision) {
    BoundEnvelope out;
    out.n = n;
    out.N = N;
    out.mu = mu(n, precision);
    out.condition_holds = check_condition(n, N, precision);
    if (out.condition_holds) {
        out.lambda = lambda_exponent(n, N, precision);
    }
    return out;
}

bool prime_case_closed(unsigned k, const Precision& precision) {
    if (k < 5 || !is_prime(k)) {
        throw std::invalid_argument("prime_case_closed: k must be a prime >= 5, got " + std::to_string(k));
    }
    const Natural x0 = pow(Natural(5), k) - 1;
    if (!check_condition(k, x0, precision)) {
        return false;
    }
    // From a^k c > k^k z^k X^(k-1) and (a^k c)^(k-l) < 8^k mu_k^k X^(k+l); the dropped
    // factor mu_k^(k/(k-l)) never exceeds k^k. Both sides only get worse as l grows,
    // and l decreases in X, so l at X = 5^k - 1 covers every larger X.
    bool gap_positive = true;
    const Order o = separate(precision, [&](unsigned bits) {
        const Rational l = lambda_at(k, x0, bits).hi();
        const Rational kk = k;
        const Rational gap = (kk - 1) - (kk + l) / (kk - l);
        gap_positive = gap > 0;
        return std::pair{RationalInterval(gap) * log(RationalInterval(x0), bits),
                         RationalInterval(Rational(kk / (kk - l))) * log(RationalInterval(8L), bits)};
    });
    if (!gap_positive) {
        return false;
    }
    if (o == Order::undecided) {
        undecided("prime_case_closed(" + std::to_string(k) + ")");
    }
    return o == Order::greater;
}

bool k4_tail_closed(const Natural& r, const Precision& precision) {
    if (r < 5) {
        throw std::invalid_argument("k4_tail_closed: r must be at least 5");
    }
    const Natural x = pow(r, 4) - 1;
    if (!check_condition(4, x, precision)) {
        return false;
    }
    // (12 - 5l) log X > l log 16
    const Order o = separate(precision, [&](unsigned bits) {
        const Rational l = lambda_at(4, x, bits).hi();
        return std::pair{RationalInterval(Rational(12 - 5 * l)) * log(RationalInterval(x), bits),
                         RationalInterval(l) * log(RationalInterval(16L), bits)};
    });
    if (o == Order::undecided) {
        undecided("k4_tail_closed(" + to_string(r) + ")");
    }
    return o == Order::greater;
}

bool k3_tail_closed(const Natural& r, const Precision& precision) {
    if (r < 2) {
        throw std::invalid_argument("k3_tail_closed: r must be at least 2");
    }
    const Natural x = pow(r, 3) - 1;
    if (!check_condition(3, x, precision)) {
        return false;
    }
    // (15 - 7l) log X > log 512 + (3/2) log 3 + (l - 3) log 125
    const Order o = separate(precision, [&](unsigned bits) {
        const Rational l = lambda_at(3, x, bits).hi();
        RationalInterval rhs = log(RationalInterval(512L), bits) +
                               RationalInterval(Rational(3, 2)) * log(RationalInterval(3L), bits) +
                               RationalInterval(Rational(l - 3)) * log(RationalInterval(125L), bits);
        return std::pair{RationalInterval(Rational(15 - 7 * l)) * log(RationalInterval(x), bits), std::move(rhs)};
    });
    if (o == Order::undecided) {
        undecided("k3_tail_closed(" + to_string(r) + ")");
    }
    return o == Order::greater;
}

Natural height_bound(unsigned k, const Natural& r, const Precision& precision) {
    if (k != 3 && k != 4) {
        throw std::invalid_argument("height_bound: k must be 3 or 4");
    }
    const Natural x = pow(r, k) - 1;
    require_condition(k, x, precision);
    const unsigned bits = precision.initial_bits;
    const Rational l = lambda_at(k, x, bits).hi();
    if (l >= k) {
        throw std::domain_error("height_bound: lambda not below k");
    }
    // a^2 t < (8 mu_k X^2)^(1/(k - l)); larger l only loosens the bound.
    const RationalInterval base = RationalInterval(8L) * mu_at(k, bits) * RationalInterval(Natural(x * x));
    const RationalInterval bound = exp(log(base, bits) / RationalInterval(Rational(k - l)), bits);
    return ceil(bound.hi());
}

} // namespace powertuple
