#include <powertuple/tuples.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

#include "parallel.hpp"

namespace powertuple {

const Natural& PowerTuple::witness(std::size_t i, std::size_t j) const {
    if (i >= j || j >= elements_.size()) {
        throw std::out_of_range("PowerTuple::witness: need i < j < size");
    }
    return witnesses_[i][j - i - 1];
}

TupleCheck verify_tuple(std::vector<Natural> elements, unsigned k) {
    if (k < 2) {
        throw std::invalid_argument("verify_tuple: exponent must be at least 2");
    }
    if (elements.empty()) {
        throw std::invalid_argument("verify_tuple: empty tuple");
    }
    if (elements.front() < 1) {
        throw std::invalid_argument("verify_tuple: elements must be positive");
    }
    for (std::size_t i = 1; i < elements.size(); ++i) {
        if (elements[i] <= elements[i - 1]) {
            throw std::invalid_argument("verify_tuple: elements must be strictly increasing");
        }
    }

    PowerTuple tuple;
    tuple.k_ = k;
    tuple.witnesses_.resize(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (std::size_t j = i + 1; j < elements.size(); ++j) {
            auto root = perfect_power_root(elements[i] * elements[j] + 1, k);
            if (!root) {
                return TupleCheck{std::nullopt, std::pair{i, j}};
            }
            tuple.witnesses_[i].push_back(std::move(*root));
        }
    }
    tuple.elements_ = std::move(elements);
    return TupleCheck{std::move(tuple), std::nullopt};
}

CanonicalPair canonical_pair(const Natural& a, unsigned k) {
    if (a < 2) {
        throw std::invalid_argument("canonical_pair: a must be at least 2");
    }
    if (k < 3) {
        throw std::invalid_argument("canonical_pair: k must be at least 3");
    }
    const Natural ak = pow(a, k);
    Natural b = 0;
    Natural term = 1; // a^(ik)
    for (unsigned i = 0; i < k; ++i) {
        b += binomial(k, i + 1) * term;
        term *= ak;
    }
    return CanonicalPair{ak, std::move(b), ak + 1};
}

std::vector<Natural> extend_pair(const Natural& x, const Natural& y, unsigned k, const Natural& c_max) {
    if (!verify_tuple({x, y}, k)) {
        throw std::invalid_argument("extend_pair: {" + to_string(x) + ", " + to_string(y) + "} is not a " +
                                    std::to_string(k) + "-th power pair");
    }
    if (c_max < y) {
        throw std::invalid_argument("extend_pair: c_max below y");
    }

    std::vector<Natural> out;
    const Natural s_hi = iroot(x * c_max + 1, k);
    for (Natural s = iroot(x * y + 1, k) + 1; s <= s_hi; ++s) {
        const Natural shifted = pow(s, k) - 1;
        if (!mpz_divisible_p(shifted.get_mpz_t(), x.get_mpz_t())) {
            continue;
        }
        Natural c = shifted / x;
        if (c > y && c <= c_max && perfect_power_root(y * c + 1, k)) {
            out.push_back(std::move(c));
        }
    }
    return out;
}

namespace {

std::vector<PowerTuple> triples_from(const Natural& x, const TripleSearch& params) {
    std::vector<PowerTuple> found;
    const unsigned k = params.k;
    if (params.c_max <= x + 1) {
        return found;
    }
    // y ranges over x < y < c_max with x y + 1 = r^k.
    const Natural r_hi = iroot(x * (params.c_max - 1) + 1, k);
    for (Natural r = iroot(x * x + 1, k) + 1; r <= r_hi; ++r) {
        const Natural shifted = pow(r, k) - 1;
        if (!mpz_divisible_p(shifted.get_mpz_t(), x.get_mpz_t())) {
            continue;
        }
        const Natural y = shifted / x;
        for (Natural& c : extend_pair(x, y, k, params.c_max)) {
            auto check = verify_tuple({x, y, std::move(c)}, k);
            found.push_back(std::move(*check.tuple));
        }
    }
    return found;
}

} // namespace

std::vector<PowerTuple> search_triples(const TripleSearch& params) {
    if (params.k < 2) {
        throw std::invalid_argument("search_triples: exponent must be at least 2");
    }

    std::vector<Natural> firsts;
    if (params.power_form) {
        for (Natural a = 2;; ++a) {
            Natural ak = pow(a, params.k);
            if (ak > params.first_max) {
                break;
            }
            firsts.push_back(std::move(ak));
        }
    } else {
        for (Natural x = 1; x <= params.first_max; ++x) {
            firsts.push_back(x);
        }
    }

    std::vector<std::vector<PowerTuple>> partial(firsts.size());
    detail::parallel_for(firsts.size(), params.threads,
                         [&](std::size_t i) { partial[i] = triples_from(firsts[i], params); });

    std::vector<PowerTuple> out;
    for (auto& part : partial) {
        std::move(part.begin(), part.end(), std::back_inserter(out));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace powertuple
