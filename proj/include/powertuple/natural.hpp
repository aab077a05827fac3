#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace powertuple {

/// Arbitrary-precision integer. Values in this library are non-negative
/// unless a function says otherwise (differences like D = N*q^3 - p^3).
using Natural = mpz_class;

/// Floor of the k-th root: the unique m with m^k <= n < (m+1)^k.
/// Throws std::invalid_argument for k < 2 or negative n.
Natural iroot(const Natural& n, unsigned k);

/// m with m^k == n, if n is a perfect k-th power.
std::optional<Natural> perfect_power_root(const Natural& n, unsigned k);

/// C(n, i), zero when i > n.
Natural binomial(std::uint64_t n, std::uint64_t i);

Natural pow(const Natural& base, unsigned long exponent);

/// Decimal parse; rejects signs, whitespace, empty input and non-digits.
Natural parse_natural(std::string_view text);

std::string to_string(const Natural& n);

std::size_t bit_length(const Natural& n);

} // namespace powertuple
