#include <powertuple/natural.hpp>

#include <stdexcept>

namespace powertuple {

std::size_t bit_length(const Natural& n) {
    if (sgn(n) == 0) {
        return 0;
    }
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

Natural pow(const Natural& base, unsigned long exponent) {
    Natural out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

Natural iroot(const Natural& n, unsigned k) {
    if (k < 2) {
        throw std::invalid_argument("iroot: root index must be at least 2");
    }
    if (sgn(n) < 0) {
        throw std::invalid_argument("iroot: negative radicand");
    }
    if (n < 2) {
        return n;
    }

    // 2^ceil(bits/k) is an upper bound for the root, so Newton descends monotonically.
    const std::size_t bits = bit_length(n);
    Natural x = Natural(1) << static_cast<mp_bitcnt_t>((bits + k - 1) / k);
    const Natural km1 = k - 1;
    while (true) {
        const Natural next = (km1 * x + n / pow(x, k - 1)) / k;
        if (next >= x) {
            break;
        }
        x = next;
    }

    while (pow(x, k) > n) {
        --x;
    }
    while (pow(x + 1, k) <= n) {
        ++x;
    }
    return x;
}

std::optional<Natural> perfect_power_root(const Natural& n, unsigned k) {
    Natural m = iroot(n, k);
    if (pow(m, k) == n) {
        return m;
    }
    return std::nullopt;
}

Natural binomial(std::uint64_t n, std::uint64_t i) {
    if (i > n) {
        return 0;
    }
    if (i > n - i) {
        i = n - i;
    }
    // After step j the running value is C(n - i + j, j), always an integer.
    Natural out = 1;
    for (std::uint64_t j = 1; j <= i; ++j) {
        out *= static_cast<unsigned long>(n - i + j);
        out /= static_cast<unsigned long>(j);
    }
    return out;
}

Natural parse_natural(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("expected a non-negative integer, got an empty string");
    }
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
        }
    }
    return Natural(std::string(text), 10);
}

std::string to_string(const Natural& n) {
    return n.get_str(10);
}

} // namespace powertuple
