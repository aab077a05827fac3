#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <powertuple/natural.hpp>

namespace powertuple {

struct TupleCheck;
TupleCheck verify_tuple(std::vector<Natural> elements, unsigned k);

/// A set {x_1 < ... < x_m} where every x_i * x_j + 1 is a perfect k-th power.
class PowerTuple {
public:
    const std::vector<Natural>& elements() const { return elements_; }
    unsigned exponent() const { return k_; }
    std::size_t size() const { return elements_.size(); }
    /// Root w with w^k = x_i * x_j + 1, for i < j.
    const Natural& witness(std::size_t i, std::size_t j) const;

    friend bool operator==(const PowerTuple&, const PowerTuple&) = default;
    friend bool operator<(const PowerTuple& lhs, const PowerTuple& rhs) { return lhs.elements_ < rhs.elements_; }

private:
    friend TupleCheck verify_tuple(std::vector<Natural>, unsigned);

    std::vector<Natural> elements_;
    unsigned k_ = 0;
    std::vector<std::vector<Natural>> witnesses_; // witnesses_[i][j - i - 1]
};

struct TupleCheck {
    std::optional<PowerTuple> tuple;
    /// First pair (i, j) whose product plus one is not a k-th power.
    std::optional<std::pair<std::size_t, std::size_t>> failing_pair;

    explicit operator bool() const { return tuple.has_value(); }
};

/// Elements must be non-empty, positive and strictly increasing; throws std::invalid_argument otherwise.
TupleCheck verify_tuple(std::vector<Natural> elements, unsigned k);

struct CanonicalPair {
    Natural ak;
    Natural b;
    Natural r;
};

/// {a^k, b} with b = sum_{i<k} C(k, i+1) a^(ik), so that a^k b + 1 = (a^k + 1)^k.
CanonicalPair canonical_pair(const Natural& a, unsigned k);

/// Every c in (y, c_max] extending the pair {x, y}, found by stepping the root s of x c + 1 = s^k.
std::vector<Natural> extend_pair(const Natural& x, const Natural& y, unsigned k, const Natural& c_max);

struct TripleSearch {
    unsigned k = 3;
    Natural first_max;
    Natural c_max;
    /// Only x = a^k with a >= 2 (and x < y, which always holds for the smallest element).
    bool power_form = false;
    unsigned threads = 1;
};

/// All triples {x, y, c} with x <= first_max and c <= c_max, sorted by elements.
std::vector<PowerTuple> search_triples(const TripleSearch& params);

} // namespace powertuple
