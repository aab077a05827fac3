#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>

#include <powertuple/continued_fraction.hpp>
#include <powertuple/elimination.hpp>
#include <powertuple/tuples.hpp>

#include "cf_oracles.hpp"

using namespace powertuple;
using namespace powertuple::testing;

namespace {

using u128 = unsigned __int128;

// Brute-force census over machine integers: a >= 2 with a^3 | r^3 - 1, optionally b > a^3.
std::vector<std::uint64_t> brute_candidates(std::uint64_t lo, std::uint64_t hi, bool triple_form) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t r = lo; r <= hi; ++r) {
        const u128 n = static_cast<u128>(r) * r * r - 1;
        for (std::uint64_t a = 2; static_cast<u128>(a) * a * a <= n; ++a) {
            const u128 cube = static_cast<u128>(a) * a * a;
            if (n % cube == 0 && (!triple_form || n / cube > cube)) {
                out.push_back(r);
                break;
            }
        }
    }
    return out;
}

const ReplayReport& small_k3() {
    static const ReplayReport report = [] {
        ReplayConfig config;
        config.k3_r_hi = 300;
        return replay_k3(config);
    }();
    return report;
}

} // namespace

TEST_CASE("verdict names round-trip") {
    for (Verdict v : {Verdict::tail_bound, Verdict::height_bound_exceeded, Verdict::quotient_too_small,
                      Verdict::divisibility_failed, Verdict::not_a_candidate}) {
        CHECK(parse_verdict(to_string(v)) == v);
    }
    CHECK_FALSE(parse_verdict("eliminated").has_value());
}

TEST_CASE("k = 3 candidate fixtures") {
    CHECK(enumerate_k3_candidates(2, 8).empty());
    const auto nine = enumerate_k3_candidates(9, 9);
    REQUIRE(nine.size() == 1);
    CHECK(nine[0].a == 2);
    CHECK(nine[0].b == 91);
    CHECK(nine[0].admissible == std::vector<Natural>{2});
}

TEST_CASE("k = 3 census matches brute force") {
    const auto cube = enumerate_k3_candidates();
    const auto triple = enumerate_k3_candidates(9, 7972, CandidatePredicate::triple_form);
    const auto brute_cube = brute_candidates(9, 7972, false);
    const auto brute_triple = brute_candidates(9, 7972, true);
    CHECK(cube.size() == brute_cube.size());
    CHECK(triple.size() == brute_triple.size());
    CHECK(cube.size() == 1892);
    CHECK(triple.size() == 1891);
    for (std::size_t i = 0; i < std::min(cube.size(), brute_cube.size()); ++i) {
        REQUIRE(cube[i].r == brute_cube[i]);
    }
    // The only r where the two readings differ: 18^3 - 1 = 7^3 * 17.
    const auto missing = std::find_if(cube.begin(), cube.end(), [&](const K3Candidate& c) {
        return std::find(brute_triple.begin(), brute_triple.end(), c.r.get_ui()) == brute_triple.end();
    });
    REQUIRE(missing != cube.end());
    CHECK(missing->r == 18);
    CHECK(missing->a == 7);
}

TEST_CASE("candidate decompositions are consistent") {
    const auto cands = enumerate_k3_candidates(9, 2000, CandidatePredicate::cube_divisor, 3);
    for (const K3Candidate& c : cands) {
        const Natural n = pow(c.r, 3) - 1;
        CHECK(pow(c.a, 3) * c.b == n);
        CHECK(std::is_sorted(c.admissible.begin(), c.admissible.end()));
        CHECK(c.admissible.back() == c.a);
        for (const Natural& a : c.admissible) {
            CHECK(a >= 2);
            CHECK(n % pow(a, 3) == 0);
        }
    }
    CHECK(cands == enumerate_k3_candidates(9, 2000));
}

TEST_CASE("k = 3 quotient formula") {
    for (unsigned long r : {3ul, 5ul, 100ul}) {
        CHECK(verify_k3_quotient_formula(r));
    }
    // Independent check against the Lagrange expansion.
    for (unsigned long r = 3; r <= 200; ++r) {
        const auto q = lagrange_quotients(pow(Natural(r), 3) - 1, 3, 6);
        const Natural rr = r;
        CHECK(q == std::vector<Natural>{rr - 1, 1, 3 * rr * rr - 2, 1, rr - 2, 1});
    }
}

TEST_CASE("exception set low-index records") {
    const auto& set = k3_exception_set();
    CHECK(std::is_sorted(set.begin(), set.end()));
    std::vector<unsigned> candidates;
    for (unsigned r : set) {
        if (!enumerate_k3_candidates(r, r).empty()) {
            candidates.push_back(r);
        }
    }
    CHECK(candidates == std::vector<unsigned>{9, 17, 19, 25, 37, 41, 57});
    ReplayConfig config;
    config.k3_r_hi = 60;
    const auto records = verify_k3_exceptions(config);
    REQUIRE_FALSE(records.empty());
    bool saw_nine = false;
    for (const auto& rec : records) {
        INFO("r=" << rec.r);
        CHECK(rec.eliminated);
        if (rec.r == 9) {
            saw_nine = true;
            CHECK(rec.verdict == Verdict::quotient_too_small);
            CHECK(rec.evidence.at("a9") <= 10);
            CHECK(rec.evidence.at("q_floor") > rec.evidence.at("five_r6"));
        }
    }
    CHECK(saw_nine);
}

TEST_CASE("r = 9, a = 2 at j = 0") {
    // p_0 / q_0 = 8 / 1: D = 728 - 512 = 216 and r^3 - 1 - a^6 = 664.
    const Natural n = 728;
    const auto e = SurdExpansion::expand(n, 3, 1);
    const Natural d = n * pow(e.convergent(0).q, 3) - pow(e.convergent(0).p, 3);
    CHECK(d == 216);
    CHECK((n - 64) % d != 0);
}

TEST_CASE("k = 3 replay on a short range") {
    const ReplayReport& report = small_k3();
    CHECK(report.case_name == "k3");
    CHECK(report.census.at("k3_survivors") == 0);
    CHECK(report.census.at("k3_candidates") == brute_candidates(9, 300, false).size());
    for (const auto& rec : report.records) {
        INFO("r=" << rec.r);
        CHECK(rec.eliminated);
        CHECK(rec.verdict == Verdict::divisibility_failed);
        CHECK(rec.evidence.at("height_bound") < pow(Natural(10), 32));
        CHECK(rec.evidence.at("tested_j") > 0);
    }
}

TEST_CASE("k = 3 divisibility tests re-derived for one r") {
    // Recompute the test set for r = 9 from the Lagrange expansion.
    const Natural n = 728;
    const auto q = lagrange_quotients(n, 3, 80);
    Natural p_prev = 1, q_prev = 0, p = q[0], qq = 1;
    std::size_t hits = 0, tested = 0;
    for (std::size_t j = 0; p < pow(Natural(10), 32); ++j) {
        if (j % 2 == 0 && j >= 10) {
            const Natural d = n * pow(qq, 3) - pow(p, 3);
            REQUIRE(d > 0);
            ++tested;
            hits += (n - 64) % d == 0 ? 1 : 0;
        }
        const Natural np = q[j + 1] * p + p_prev, nq = q[j + 1] * qq + q_prev;
        p_prev = p;
        q_prev = qq;
        p = np;
        qq = nq;
    }
    CHECK(hits == 0);
    const auto rec = std::find_if(small_k3().records.begin(), small_k3().records.end(),
                                  [](const EliminationRecord& r) { return r.r == 9; });
    REQUIRE(rec != small_k3().records.end());
    CHECK(rec->evidence.at("tested_j") == tested);
}

TEST_CASE("k = 4 replay") {
    const ReplayReport report = replay_k4();
    CHECK(report.closed);
    REQUIRE(report.records.size() == 31);
    CHECK(report.records.front().r == 5);
    CHECK(report.records.back().r == 35);
    CHECK(report.records.back().verdict == Verdict::tail_bound);
    CHECK(report.records.front().evidence.at("threshold") == 703123);
    CHECK(report.records.front().evidence.at("max_even_successor") == 3);
    for (const auto& rec : report.records) {
        INFO("r=" << rec.r);
        CHECK(rec.eliminated);
        if (rec.verdict == Verdict::quotient_too_small) {
            CHECK(rec.evidence.at("height_bound") < 100000000);
            CHECK(rec.evidence.at("p13") > 100000000);
            // Lagrange oracle for the successor quotients.
            const auto q = lagrange_quotients(pow(rec.r, 4) - 1, 4, 14);
            Natural max_succ = 0;
            for (std::size_t j = 1; j < 14; j += 2) {
                max_succ = std::max(max_succ, q[j]);
            }
            CHECK(rec.evidence.at("max_even_successor") == max_succ);
        }
    }
    CHECK(report.census.at("k4_records") == 31);
}

TEST_CASE("strict k = 4 reading") {
    ReplayConfig config;
    config.strict_k4 = true;
    const ReplayReport report = replay_k4(config);
    CHECK(report.closed);
    for (const auto& rec : report.records) {
        CHECK((rec.verdict == Verdict::not_a_candidate) == !rec.decomposition.has_value());
    }
}

TEST_CASE("prime replay") {
    ReplayConfig config;
    config.prime_cap = 3;
    CHECK_THROWS_AS(replay_primes(config), std::invalid_argument);
    config.prime_cap = 50;
    const ReplayReport report = replay_primes(config);
    CHECK(report.closed);
    CHECK(report.census.at("primes_checked") == 13); // 5, 7, ..., 47
    CHECK(report.census.at("primes_failed") == 0);
}

TEST_CASE("replays are independent of the thread count") {
    ReplayConfig one;
    one.k3_r_hi = 150;
    ReplayConfig four = one;
    four.threads = 4;
    CHECK(replay_k3(one) == replay_k3(four));
    CHECK(replay_k4(one) == replay_k4(four));
}

TEST_CASE("no extension exists for replayed pairs") {
    std::size_t checked = 0;
    for (const auto& rec : small_k3().records) {
        if (checked == 20) {
            break;
        }
        const auto& [a, b] = *rec.decomposition;
        const Natural x = pow(a, 3);
        if (x == b) {
            continue;
        }
        const Natural lo = std::min(x, b), hi = std::max(x, b);
        CHECK(extend_pair(lo, hi, 3, Natural(hi + 1000000)).empty());
        ++checked;
    }
    CHECK(checked == 20);
}
