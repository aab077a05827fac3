#pragma once

#include <optional>
#include <stdexcept>

#include <powertuple/interval.hpp>
#include <powertuple/natural.hpp>

namespace powertuple {

/// A strict inequality could not be separated within the precision cap.
class UndecidedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Working precision for transcendental enclosures: start at `initial_bits`,
/// double until a decision separates, give up past `cap_bits`.
struct Precision {
    unsigned initial_bits = 128;
    unsigned cap_bits = 4096;
};

/// Product over primes p | n of p^(1/(p-1)); exact when n is a power of two.
RationalInterval mu(unsigned n, const Precision& precision = {});

/// Applicability of the effective irrationality measure for (1 + 1/N)^(1/n):
/// (sqrt(N) + sqrt(N+1))^(2(n-2)) > (n mu_n)^n, certified. False means "not certified".
bool check_condition(unsigned n, const Natural& N, const Precision& precision = {});

/// lambda = 1 + log(n mu_n S) / log(S / (n mu_n)) with S = (sqrt(N) + sqrt(N+1))^2.
/// Throws std::domain_error unless check_condition(n, N) holds.
RationalInterval lambda_exponent(unsigned n, const Natural& N, const Precision& precision = {});

/// Enclosure of (8 n mu_n N)^(-1) q^(-lambda), the lower bound on |(1 + 1/N)^(1/n) - p/q|.
RationalInterval bennett_gap(unsigned n, const Natural& N, const Natural& q, const Precision& precision = {});

struct BoundEnvelope {
    unsigned n = 0;
    Natural N;
    RationalInterval mu;
    std::optional<RationalInterval> lambda; // present iff condition_holds
    bool condition_holds = false;
};

BoundEnvelope envelope(unsigned n, const Natural& N, const Precision& precision = {});

/// Contradiction for prime k >= 5: X^(k-1) > 8^(k/(k-l)) X^((k+l)/(k-l)) for every
/// X >= 5^k - 1, with l the upper end of lambda_exponent(k, 5^k - 1).
bool prime_case_closed(unsigned k, const Precision& precision = {});

/// (r^4 - 1)^(12 - 5l) < 16^l certified false, l = lambda_exponent(4, r^4 - 1).hi.
bool k4_tail_closed(const Natural& r, const Precision& precision = {});

/// X^(15 - 7l) < 8^3 3^(3/2) 125^(l - 3) certified false for X = r^3 - 1,
/// l = lambda_exponent(3, X).hi.
bool k3_tail_closed(const Natural& r, const Precision& precision = {});

/// Integer H with a^2 t < H for every admissible triple with a^k b = r^k - 1,
/// from (a^2 t)^(k - l) < 8 mu_k (r^k - 1)^2. k must be 3 or 4.
Natural height_bound(unsigned k, const Natural& r, const Precision& precision = {});

bool is_prime(unsigned n);

} // namespace powertuple
