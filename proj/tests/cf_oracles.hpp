#pragma once

// Test-only oracles for continued fractions of k-th roots. Nothing here
// touches the certified-enclosure path of SurdExpansion.

#include <string>
#include <vector>

#include <powertuple/continued_fraction.hpp>
#include <powertuple/natural.hpp>

namespace powertuple::testing {

/// Sign of p/q - N^(1/k), exactly.
inline int compare_to_root(const Natural& p, const Natural& q, const Natural& n, unsigned k) {
    const Natural diff = pow(p, k) - n * pow(q, k);
    return sgn(diff);
}

/// Lagrange's method: keep a polynomial whose unique positive root is the
/// current complete quotient, read off its floor by sign search and substitute
/// x = a + 1/y.
inline std::vector<Natural> lagrange_quotients(const Natural& n, unsigned k, std::size_t terms) {
    std::vector<Natural> poly(k + 1, 0); // poly[i] is the coefficient of x^i
    poly[k] = 1;
    poly[0] = -n;

    auto eval = [&](const Natural& x) {
        Natural acc = 0;
        for (std::size_t i = poly.size(); i-- > 0;) {
            acc = acc * x + poly[i];
        }
        return acc;
    };

    std::vector<Natural> out;
    for (std::size_t step = 0; step < terms; ++step) {
        // Floor of the unique positive root (> 1 after the first step).
        const Natural lo_start = step == 0 ? Natural(0) : Natural(1);
        const int below = sgn(eval(lo_start));
        Natural hi = lo_start + 1;
        while (sgn(eval(hi)) == below) {
            hi *= 2;
        }
        Natural lo = lo_start;
        while (hi - lo > 1) {
            const Natural mid = (lo + hi) / 2;
            (sgn(eval(mid)) == below ? lo : hi) = mid;
        }
        out.push_back(lo);

        // shifted(x) = poly(x + a)
        std::vector<Natural> shifted = poly;
        for (std::size_t i = 0; i < shifted.size(); ++i) {
            for (std::size_t j = shifted.size() - 1; j > i; --j) {
                shifted[j - 1] += lo * shifted[j];
            }
        }
        // y^d shifted(1/y): reverse the coefficients.
        poly.assign(shifted.rbegin(), shifted.rend());
    }
    return out;
}

/// Returns an empty string when every convergent invariant holds, else a description.
inline std::string convergent_invariant_failure(const SurdExpansion& e) {
    const Natural& n = e.radicand();
    const unsigned k = e.root_index();
    const auto conv = e.convergents();
    const auto quot = e.quotients();
    for (std::size_t j = 0; j < conv.size(); ++j) {
        const Natural& p = conv[j].p;
        const Natural& q = conv[j].q;
        const std::string at = " at j=" + std::to_string(j) + " N=" + to_string(n) + " k=" + std::to_string(k);
        if (j >= 1 && quot[j] < 1) {
            return "non-positive quotient" + at;
        }
        Natural g;
        mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
        if (g != 1) {
            return "gcd(p, q) != 1" + at;
        }
        const int side = compare_to_root(p, q, n, k);
        if ((j % 2 == 0 && side >= 0) || (j % 2 == 1 && side <= 0)) {
            return "alternation" + at;
        }
        if (j >= 1) {
            const Natural det = p * conv[j - 1].q - conv[j - 1].p * q;
            if (det != (j % 2 == 1 ? 1 : -1)) {
                return "determinant" + at;
            }
        }
        if (j + 1 < conv.size()) {
            // |root - p/q| < 1 / (q q')
            const Natural& q_next = conv[j + 1].q;
            const Natural den = q * q_next;
            const Natural num = p * q_next + (j % 2 == 0 ? 1 : -1);
            const int edge = compare_to_root(num, den, n, k);
            if ((j % 2 == 0 && edge <= 0) || (j % 2 == 1 && edge >= 0)) {
                return "upper approximation bound" + at;
            }
        }
        if (j >= 1 && j + 1 < quot.size()) {
            // |root - p/q| > 1 / ((a_{j+1} + 2) q^2)
            const Natural scale = quot[j + 1] + 2;
            const Natural den = scale * q * q;
            const Natural num = p * scale * q + (j % 2 == 0 ? 1 : -1);
            const int edge = compare_to_root(num, den, n, k);
            if ((j % 2 == 0 && edge >= 0) || (j % 2 == 1 && edge <= 0)) {
                return "lower approximation bound" + at;
            }
        }
    }
    return {};
}

} // namespace powertuple::testing
