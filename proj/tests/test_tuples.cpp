#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include <powertuple/tuples.hpp>

using namespace powertuple;

namespace {

std::vector<Natural> naturals(std::initializer_list<unsigned long> values) {
    std::vector<Natural> out;
    for (unsigned long v : values) {
        out.emplace_back(v);
    }
    return out;
}

std::vector<Natural> naive_extension(const Natural& x, const Natural& y, unsigned k, unsigned long c_max) {
    std::vector<Natural> out;
    for (Natural c = y + 1; c <= c_max; ++c) {
        if (perfect_power_root(x * c + 1, k) && perfect_power_root(y * c + 1, k)) {
            out.push_back(c);
        }
    }
    return out;
}

} // namespace

TEST_CASE("verify_tuple fixtures") {
    const TupleCheck cubic = verify_tuple(naturals({2, 171, 25326}), 3);
    REQUIRE(cubic);
    CHECK(cubic.tuple->witness(0, 1) == 7);
    CHECK(cubic.tuple->witness(0, 2) == 37);
    CHECK(cubic.tuple->witness(1, 2) == 163);

    const TupleCheck quartic = verify_tuple(naturals({1352, 9539880, 9768370}), 4);
    REQUIRE(quartic);
    CHECK(quartic.tuple->witness(0, 1) == 337);
    CHECK(quartic.tuple->witness(0, 2) == 339);
    CHECK(pow(quartic.tuple->witness(1, 2), 4) == Natural(9539880) * 9768370 + 1);

    CHECK(verify_tuple(naturals({1, 3, 8, 120}), 2));

    const TupleCheck broken = verify_tuple(naturals({2, 171, 25327}), 3);
    CHECK_FALSE(broken);
    REQUIRE(broken.failing_pair.has_value());
    CHECK(*broken.failing_pair == std::pair<std::size_t, std::size_t>{0, 2});
}

TEST_CASE("verify_tuple rejects malformed input") {
    CHECK_THROWS_AS(verify_tuple(naturals({171, 2}), 3), std::invalid_argument);
    CHECK_THROWS_AS(verify_tuple(naturals({2, 2}), 3), std::invalid_argument);
    CHECK_THROWS_AS(verify_tuple({}, 3), std::invalid_argument);
    CHECK_THROWS_AS(verify_tuple(naturals({0, 3}), 3), std::invalid_argument);
    CHECK_THROWS_AS(verify_tuple(naturals({1, 3}), 1), std::invalid_argument);
}

TEST_CASE("canonical_pair fixtures") {
    const CanonicalPair p23 = canonical_pair(2, 3);
    CHECK(p23.ak == 8);
    CHECK(p23.b == 91);
    CHECK(p23.r == 9);
    CHECK(p23.ak * p23.b + 1 == 729);

    const CanonicalPair p33 = canonical_pair(3, 3);
    CHECK(p33.ak == 27);
    CHECK(p33.b == 813);
    CHECK(p33.r == 28);

    const CanonicalPair p24 = canonical_pair(2, 4);
    CHECK(p24.ak == 16);
    CHECK(p24.b == 5220);
    CHECK(p24.r == 17);
    CHECK(p24.ak * p24.b + 1 == 83521);

    CHECK_THROWS_AS(canonical_pair(1, 3), std::invalid_argument);
    CHECK_THROWS_AS(canonical_pair(2, 2), std::invalid_argument);
}

TEST_CASE("canonical pairs verify and satisfy the binomial identity") {
    for (unsigned long a = 2; a <= 50; ++a) {
        for (unsigned k = 3; k <= 11; ++k) {
            const CanonicalPair pair = canonical_pair(a, k);
            const TupleCheck check = verify_tuple({pair.ak, pair.b}, k);
            REQUIRE(check);
            CHECK(check.tuple->witness(0, 1) == pair.r);
            CHECK(pow(Natural(pow(Natural(a), k) + 1), k) - 1 == pair.ak * pair.b);
            CHECK(pair.b > pair.ak);
            CHECK(pair.b > binomial(k, 2) * pair.ak);
        }
    }
}

TEST_CASE("extend_pair fixtures") {
    CHECK(extend_pair(2, 171, 3, 30000) == naturals({25326}));
    CHECK(extend_pair(8, 91, 3, 1000000).empty());
    CHECK(extend_pair(1, 3, 2, 200) == naturals({8, 120}));
    CHECK_THROWS_AS(extend_pair(2, 170, 3, 30000), std::invalid_argument);
    CHECK_THROWS_AS(extend_pair(2, 171, 3, 100), std::invalid_argument);
}

TEST_CASE("extend_pair agrees with a full scan") {
    const std::vector<std::tuple<unsigned long, unsigned long, unsigned>> pairs{
        {1, 3, 2}, {1, 8, 2}, {2, 4, 2}, {2, 171, 3}, {1, 7, 3}, {8, 91, 3}, {1, 15, 4}, {3, 5, 2}, {1, 26, 3}};
    for (const auto& [x, y, k] : pairs) {
        INFO("x=" << x << " y=" << y << " k=" << k);
        CHECK(extend_pair(x, y, k, 100000) == naive_extension(x, y, k, 100000));
    }
}

TEST_CASE("search_triples") {
    TripleSearch open;
    open.k = 3;
    open.first_max = 10;
    open.c_max = 30000;
    const auto found = search_triples(open);
    const bool has_fixture = std::any_of(found.begin(), found.end(), [](const PowerTuple& t) {
        return t.elements() == naturals({2, 171, 25326});
    });
    CHECK(has_fixture);
    CHECK(std::is_sorted(found.begin(), found.end()));

    for (unsigned k : {3u, 4u}) {
        TripleSearch restricted;
        restricted.k = k;
        restricted.first_max = 30;
        restricted.c_max = 1000000;
        restricted.power_form = true;
        CHECK(search_triples(restricted).empty());
    }
}

TEST_CASE("search_triples is independent of the thread count") {
    TripleSearch params;
    params.k = 2;
    params.first_max = 40;
    params.c_max = 5000;
    const auto single = search_triples(params);
    params.threads = 4;
    CHECK(search_triples(params) == single);
    CHECK_FALSE(single.empty());
}
