#include <powertuple/elimination.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include <powertuple/continued_fraction.hpp>

#include "parallel.hpp"

namespace powertuple {

namespace {

constexpr std::array<std::pair<Verdict, std::string_view>, 5> kVerdictNames{{
    {Verdict::tail_bound, "tail_bound"},
    {Verdict::height_bound_exceeded, "height_bound_exceeded"},
    {Verdict::quotient_too_small, "quotient_too_small"},
    {Verdict::divisibility_failed, "divisibility_failed"},
    {Verdict::not_a_candidate, "not_a_candidate"},
}};

const Natural& k3_height_cap() {
    static const Natural cap = pow(Natural(10), 32);
    return cap;
}

const Natural& k4_height_cap() {
    static const Natural cap = pow(Natural(10), 8);
    return cap;
}

constexpr unsigned kK4FirstR = 5;
constexpr unsigned kK4LastR = 35;
constexpr std::size_t kK4Terms = 14;

// All a >= 2 with a^k | n (and n != a^(2k)), optionally requiring n / a^k > a^k.
std::vector<Natural> power_divisors(const Natural& n, unsigned k, bool require_larger_cofactor) {
    std::vector<Natural> out;
    if (n.fits_ulong_p() && n.get_ui() < (1ul << 62)) {
        const unsigned long v = n.get_ui();
        for (unsigned long a = 2;; ++a) {
            unsigned long ak = 1;
            bool overflow = false;
            for (unsigned i = 0; i < k; ++i) {
                if (ak > v / a) {
                    overflow = true;
                    break;
                }
                ak *= a;
            }
            if (overflow || ak > v) {
                break;
            }
            if (v % ak != 0) {
                continue;
            }
            const unsigned long b = v / ak;
            if (b == ak || (require_larger_cofactor && b <= ak)) {
                continue;
            }
            out.emplace_back(a);
        }
        return out;
    }
    for (Natural a = 2;; ++a) {
        const Natural ak = pow(a, k);
        if (ak > n) {
            break;
        }
        if (!mpz_divisible_p(n.get_mpz_t(), ak.get_mpz_t())) {
            continue;
        }
        const Natural b = n / ak;
        if (b == ak || (require_larger_cofactor && b <= ak)) {
            continue;
        }
        out.push_back(a);
    }
    return out;
}

std::vector<Natural> range_values(const Natural& lo, const Natural& hi) {
    std::vector<Natural> out;
    for (Natural r = lo; r <= hi; ++r) {
        out.push_back(r);
    }
    return out;
}

bool is_k3_exception(const Natural& r) {
    const auto& set = k3_exception_set();
    return r.fits_uint_p() && std::binary_search(set.begin(), set.end(), static_cast<unsigned>(r.get_ui()));
}

struct LowIndexCheck {
    std::size_t j_min = 8;
    bool holds = true;
    std::map<std::string, Natural> evidence;
};

// Even j with a_{j+1} <= 3r - 2 cannot index the convergent a^2 t / s, and
// the first admissible index j_min has q_{j_min} > 5 r^6.
LowIndexCheck check_low_indices(const Natural& r, const SurdExpansion& expansion) {
    LowIndexCheck out;
    const bool exceptional = is_k3_exception(r);
    out.j_min = exceptional ? 10 : 8;
    const Natural quotient_floor = 3 * r - 2;
    const Natural five_r6 = 5 * pow(r, 6);

    Natural max_low = 0;
    for (std::size_t j = 0; j < out.j_min; j += 2) {
        max_low = std::max(max_low, expansion.quotient(j + 1));
    }
    out.holds = max_low <= quotient_floor;

    const Natural& q_floor = expansion.convergent(out.j_min).q;
    out.holds = out.holds && q_floor > five_r6;
    if (exceptional) {
        const Natural& a9 = expansion.quotient(9);
        out.holds = out.holds && a9 <= 10;
        out.evidence["a9"] = a9;
    }
    out.evidence["j_min"] = static_cast<unsigned long>(out.j_min);
    out.evidence["max_low_successor"] = max_low;
    out.evidence["quotient_floor"] = quotient_floor;
    out.evidence["q_floor"] = q_floor;
    out.evidence["five_r6"] = five_r6;
    return out;
}

struct K3Outcome {
    EliminationRecord record;
    std::uint64_t tests = 0;
    std::uint64_t max_index = 0;
    std::vector<std::string> low_index_hits;
    std::vector<std::string> odd_hits;
};

std::string hit_label(const Natural& r, const Natural& a, std::size_t j) {
    return "r=" + to_string(r) + ",a=" + to_string(a) + ",j=" + std::to_string(j);
}

K3Outcome replay_k3_candidate(const K3Candidate& candidate, const ReplayConfig& config) {
    K3Outcome out;
    EliminationRecord& rec = out.record;
    rec.k = 3;
    rec.r = candidate.r;
    rec.decomposition = std::pair{candidate.a, candidate.b};
    for (std::size_t i = 0; i < candidate.admissible.size(); ++i) {
        rec.evidence["a[" + std::to_string(i) + "]"] = candidate.admissible[i];
    }

    if (k3_tail_closed(candidate.r, config.precision)) {
        rec.verdict = Verdict::tail_bound;
        rec.eliminated = true;
        return out;
    }

    const Natural n = pow(candidate.r, 3) - 1;
    const Natural& cap = k3_height_cap();
    const Natural height = height_bound(3, candidate.r, config.precision);
    rec.evidence["height_bound"] = height;

    const SurdExpansion expansion = SurdExpansion::expand_until(
        n, 3, [&](std::size_t j, const Natural& p, const Natural&, const Natural&) { return j >= 10 && p >= cap; });
    const std::size_t stop = *expansion.stop_index();
    rec.evidence["stop_j"] = static_cast<unsigned long>(stop);

    const LowIndexCheck low = check_low_indices(candidate.r, expansion);
    rec.evidence.insert(low.evidence.begin(), low.evidence.end());

    std::vector<Natural> dividends;
    for (const Natural& a : candidate.admissible) {
        dividends.push_back(n - pow(a, 6));
    }

    bool positive = true;
    bool divides = false;
    std::size_t tested = 0;
    std::size_t last_j = 0;
    for (std::size_t j = 0; j < stop; ++j) {
        const Convergent& c = expansion.convergent(j);
        if (c.p >= cap) {
            break;
        }
        const bool in_range = j % 2 == 0 && j >= low.j_min;
        if (!in_range && !config.paranoid) {
            continue;
        }
        const Natural d = n * pow(c.q, 3) - pow(c.p, 3);
        if (in_range && sgn(d) <= 0) {
            positive = false;
        }
        for (std::size_t i = 0; i < dividends.size(); ++i) {
            const bool hit = sgn(d) > 0 && mpz_divisible_p(dividends[i].get_mpz_t(), d.get_mpz_t());
            if (in_range) {
                ++out.tests;
                divides = divides || hit;
            } else if (hit) {
                (j % 2 == 0 ? out.low_index_hits : out.odd_hits)
                    .push_back(hit_label(candidate.r, candidate.admissible[i], j));
            }
        }
        if (in_range) {
            ++tested;
            last_j = j;
        }
    }

    rec.evidence["tested_j"] = static_cast<unsigned long>(tested);
    if (tested > 0) {
        rec.evidence["last_j"] = static_cast<unsigned long>(last_j);
        rec.evidence["p_last"] = expansion.convergent(last_j).p;
        out.max_index = last_j;
    }
    rec.verdict = tested > 0 ? Verdict::divisibility_failed : Verdict::height_bound_exceeded;
    rec.eliminated = low.holds && height <= cap && positive && !divides;
    return out;
}

std::string decimal(const Rational& x) {
    return to_decimal(x, 12);
}

} // namespace

std::string_view to_string(Verdict verdict) {
    for (const auto& [v, name] : kVerdictNames) {
        if (v == verdict) {
            return name;
        }
    }
    throw std::logic_error("unknown verdict");
}

std::optional<Verdict> parse_verdict(std::string_view text) {
    for (const auto& [v, name] : kVerdictNames) {
        if (name == text) {
            return v;
        }
    }
    return std::nullopt;
}

const std::vector<unsigned>& k3_exception_set() {
    static const std::vector<unsigned> set{2, 3, 5, 7, 9, 11, 15, 17, 19, 21, 25, 27, 31, 37, 41, 47, 57};
    return set;
}

std::vector<K3Candidate> enumerate_k3_candidates(const Natural& r_lo, const Natural& r_hi,
                                                 CandidatePredicate predicate, unsigned threads) {
    if (r_lo < 2) {
        throw std::invalid_argument("enumerate_k3_candidates: r_lo must be at least 2");
    }
    const std::vector<Natural> rs = range_values(r_lo, r_hi);
    std::vector<std::optional<K3Candidate>> found(rs.size());
    detail::parallel_for(rs.size(), threads, [&](std::size_t i) {
        const Natural n = pow(rs[i], 3) - 1;
        std::vector<Natural> as = power_divisors(n, 3, predicate == CandidatePredicate::triple_form);
        if (as.empty()) {
            return;
        }
        K3Candidate c;
        c.r = rs[i];
        c.a = as.back();
        c.b = n / pow(c.a, 3);
        c.admissible = std::move(as);
        found[i] = std::move(c);
    });

    std::vector<K3Candidate> out;
    for (auto& c : found) {
        if (c) {
            out.push_back(std::move(*c));
        }
    }
    return out;
}

bool verify_k3_quotient_formula(const Natural& r) {
    if (r < 3) {
        throw std::invalid_argument("verify_k3_quotient_formula: r must be at least 3");
    }
    const SurdExpansion e = SurdExpansion::expand(pow(r, 3) - 1, 3, 6);
    const std::vector<Natural> expected{r - 1, 1, 3 * r * r - 2, 1, r - 2, 1};
    return std::equal(expected.begin(), expected.end(), e.quotients().begin(), e.quotients().end());
}

std::vector<EliminationRecord> verify_k3_exceptions(const ReplayConfig& config) {
    std::vector<K3Candidate> candidates =
        enumerate_k3_candidates(config.k3_r_lo, config.k3_r_hi, CandidatePredicate::cube_divisor, config.threads);

    std::vector<EliminationRecord> out;
    for (unsigned r : k3_exception_set()) {
        const bool listed = std::any_of(candidates.begin(), candidates.end(),
                                        [r](const K3Candidate& c) { return c.r == r; });
        if (!listed && enumerate_k3_candidates(r, r).empty()) {
            EliminationRecord rec;
            rec.k = 3;
            rec.r = r;
            rec.verdict = Verdict::not_a_candidate;
            rec.eliminated = true;
            out.push_back(std::move(rec));
        } else if (!listed) {
            candidates.push_back(enumerate_k3_candidates(r, r).front());
        }
    }

    std::vector<EliminationRecord> checked(candidates.size());
    detail::parallel_for(candidates.size(), config.threads, [&](std::size_t i) {
        const K3Candidate& c = candidates[i];
        EliminationRecord& rec = checked[i];
        rec.k = 3;
        rec.r = c.r;
        rec.decomposition = std::pair{c.a, c.b};
        rec.verdict = Verdict::quotient_too_small;
        const LowIndexCheck low = check_low_indices(c.r, SurdExpansion::expand(pow(c.r, 3) - 1, 3, 11));
        rec.evidence = low.evidence;
        rec.eliminated = low.holds;
    });
    std::move(checked.begin(), checked.end(), std::back_inserter(out));
    std::sort(out.begin(), out.end(),
              [](const EliminationRecord& x, const EliminationRecord& y) { return x.r < y.r; });
    return out;
}

ReplayReport replay_k3(const ReplayConfig& config) {
    ReplayReport report;
    report.case_name = "k3";
    report.tool_version = std::string(kToolVersion);

    const std::vector<K3Candidate> candidates =
        enumerate_k3_candidates(config.k3_r_lo, config.k3_r_hi, CandidatePredicate::cube_divisor, config.threads);
    const std::size_t triple_form =
        enumerate_k3_candidates(config.k3_r_lo, config.k3_r_hi, CandidatePredicate::triple_form, config.threads)
            .size();

    std::vector<K3Outcome> outcomes(candidates.size());
    detail::parallel_for(candidates.size(), config.threads,
                         [&](std::size_t i) { outcomes[i] = replay_k3_candidate(candidates[i], config); });

    std::uint64_t tests = 0, max_index = 0, survivors = 0, exceptional = 0;
    std::vector<std::string> low_hits, odd_hits;
    for (K3Outcome& o : outcomes) {
        tests += o.tests;
        max_index = std::max(max_index, o.max_index);
        survivors += o.record.eliminated ? 0 : 1;
        exceptional += is_k3_exception(o.record.r) ? 1 : 0;
        std::move(o.low_index_hits.begin(), o.low_index_hits.end(), std::back_inserter(low_hits));
        std::move(o.odd_hits.begin(), o.odd_hits.end(), std::back_inserter(odd_hits));
        report.records.push_back(std::move(o.record));
    }

    report.census["k3_candidates"] = candidates.size();
    report.census["k3_candidates_triple_form"] = triple_form;
    report.census["k3_exceptional_candidates"] = exceptional;
    report.census["k3_divisibility_tests"] = tests;
    report.census["k3_max_index"] = max_index;
    report.census["k3_survivors"] = survivors;

    const Natural tail_r = config.k3_r_hi + 1;
    ReplayStep tail{"k3_tail_closed", true, k3_tail_closed(tail_r, config.precision), {{"r", to_string(tail_r)}}};
    const bool floor_covered = config.k3_r_lo <= 9;
    ReplayStep no_small{"k3_no_candidates_below_9", true, enumerate_k3_candidates(2, 8).empty(), {}};
    ReplayStep range{"k3_range_reaches_9", true, floor_covered,
                     {{"r_lo", to_string(config.k3_r_lo)}, {"r_hi", to_string(config.k3_r_hi)}}};
    report.steps = {tail, no_small, range};

    if (config.paranoid) {
        report.census["k3_paranoid_low_index_hits"] = low_hits.size();
        report.census["k3_paranoid_odd_hits"] = odd_hits.size();
        ReplayStep low{"k3_paranoid_low_index_hits", true, true, {}};
        for (std::size_t i = 0; i < low_hits.size(); ++i) {
            low.detail["hit[" + std::to_string(i) + "]"] = low_hits[i];
        }
        report.steps.push_back(std::move(low));
        report.steps.push_back(ReplayStep{"k3_paranoid_no_odd_hits", true, odd_hits.empty(), {}});
    }

    report.closed = survivors == 0 && std::all_of(report.steps.begin(), report.steps.end(),
                                                  [](const ReplayStep& s) { return s.holds; });
    return report;
}

ReplayReport replay_k4(const ReplayConfig& config) {
    ReplayReport report;
    report.case_name = "k4";
    report.tool_version = std::string(kToolVersion);

    std::vector<EliminationRecord> records(kK4LastR - kK4FirstR + 1);
    detail::parallel_for(records.size(), config.threads, [&](std::size_t i) {
        EliminationRecord& rec = records[i];
        rec.k = 4;
        rec.r = static_cast<unsigned long>(kK4FirstR + i);
        const Natural n = pow(rec.r, 4) - 1;
        const std::vector<Natural> as = power_divisors(n, 4, false);
        if (!as.empty()) {
            rec.decomposition = std::pair{as.back(), n / pow(as.back(), 4)};
        }
        if (config.strict_k4 && as.empty()) {
            rec.verdict = Verdict::not_a_candidate;
            rec.eliminated = true;
            return;
        }

        const bool tail = k4_tail_closed(rec.r, config.precision);
        const Natural height = height_bound(4, rec.r, config.precision);
        const SurdExpansion expansion = SurdExpansion::expand(n, 4, kK4Terms);
        const Natural& p13 = expansion.convergent(kK4Terms - 1).p;
        const Natural threshold = 9 * pow(rec.r, 7) - 2;
        Natural max_successor = 0;
        unsigned long max_successor_j = 0;
        for (std::size_t j = 0; j + 1 < kK4Terms; j += 2) {
            if (expansion.quotient(j + 1) > max_successor) {
                max_successor = expansion.quotient(j + 1);
                max_successor_j = j;
            }
        }
        rec.evidence = {{"height_bound", height},
                        {"p13", p13},
                        {"max_even_successor", max_successor},
                        {"max_even_successor_j", max_successor_j},
                        {"threshold", threshold}};

        if (tail) {
            rec.verdict = Verdict::tail_bound;
            rec.eliminated = true;
        } else {
            // p_13 > 10^8 > H confines j to even indices <= 12.
            rec.verdict = Verdict::quotient_too_small;
            rec.eliminated = height < k4_height_cap() && p13 > k4_height_cap() && max_successor <= threshold;
        }
    });

    std::uint64_t power_form = 0, tail_closed = 0, survivors = 0;
    for (EliminationRecord& rec : records) {
        power_form += rec.decomposition ? 1 : 0;
        tail_closed += rec.verdict == Verdict::tail_bound ? 1 : 0;
        survivors += rec.eliminated ? 0 : 1;
        report.records.push_back(std::move(rec));
    }
    report.census["k4_records"] = report.records.size();
    report.census["k4_power_form_r"] = power_form;
    report.census["k4_tail_closed_r"] = tail_closed;
    report.census["k4_survivors"] = survivors;

    const RationalInterval lambda35 = lambda_exponent(4, pow(Natural(kK4LastR), 4) - 1, config.precision);
    report.steps = {
        ReplayStep{"k4_tail_closed", true, k4_tail_closed(kK4LastR, config.precision), {{"r", std::to_string(kK4LastR)}}},
        ReplayStep{"k4_lambda_envelope",
                   true,
                   lambda35.hi() < Rational(2308, 1000),
                   {{"r", std::to_string(kK4LastR)}, {"lambda_hi", decimal(lambda35.hi())}, {"envelope", "2.308"}}},
    };
    report.closed = survivors == 0 && std::all_of(report.steps.begin(), report.steps.end(),
                                                  [](const ReplayStep& s) { return s.holds; });
    return report;
}

ReplayReport replay_primes(const ReplayConfig& config) {
    if (config.prime_cap < 5) {
        throw std::invalid_argument("replay_primes: prime cap must be at least 5 (k = 3 has its own replay)");
    }
    ReplayReport report;
    report.case_name = "primes";
    report.tool_version = std::string(kToolVersion);

    std::vector<unsigned> primes;
    for (unsigned k = 5; k <= config.prime_cap; ++k) {
        if (is_prime(k)) {
            primes.push_back(k);
        }
    }

    std::vector<ReplayStep> steps(primes.size());
    detail::parallel_for(primes.size(), config.threads, [&](std::size_t i) {
        const unsigned k = primes[i];
        const RationalInterval lambda = lambda_exponent(k, pow(Natural(5), k) - 1, config.precision);
        steps[i] = ReplayStep{"prime_case_closed",
                              true,
                              prime_case_closed(k, config.precision),
                              {{"k", std::to_string(k)}, {"lambda_hi", decimal(lambda.hi())}}};
    });

    std::uint64_t failures = 0;
    for (const ReplayStep& s : steps) {
        failures += s.holds ? 0 : 1;
    }
    report.census["primes_checked"] = primes.size();
    report.census["primes_failed"] = failures;

    const std::array<std::pair<unsigned, Rational>, 2> envelopes{{{5, Rational(255, 100)}, {7, Rational(244, 100)}}};
    for (const auto& [k, limit] : envelopes) {
        if (k > config.prime_cap) {
            continue;
        }
        const RationalInterval lambda = lambda_exponent(k, pow(Natural(5), k) - 1, config.precision);
        report.steps.push_back(ReplayStep{"prime_lambda_envelope",
                                          true,
                                          lambda.hi() < limit,
                                          {{"k", std::to_string(k)},
                                           {"lambda_hi", decimal(lambda.hi())},
                                           {"envelope", to_decimal(limit, 2)}}});
    }
    std::move(steps.begin(), steps.end(), std::back_inserter(report.steps));

    report.closed = std::all_of(report.steps.begin(), report.steps.end(),
                                [](const ReplayStep& s) { return s.holds; });
    return report;
}

ReplayReport full_replay(const ReplayConfig& config) {
    ReplayReport k3 = replay_k3(config);
    ReplayReport k4 = replay_k4(config);
    ReplayReport primes = replay_primes(config);

    ReplayReport report;
    report.case_name = "all";
    report.tool_version = std::string(kToolVersion);
    report.steps.push_back(ReplayStep{"composite_reduction",
                                      false,
                                      true,
                                      {{"statement", "k = p*q rewrites the triple with base a^p and roots r^p, s^p, t^p "
                                                     "at exponent q, so k = 4 and odd primes suffice"}}});
    for (ReplayReport* part : {&k3, &k4, &primes}) {
        std::move(part->records.begin(), part->records.end(), std::back_inserter(report.records));
        std::move(part->steps.begin(), part->steps.end(), std::back_inserter(report.steps));
        report.census.insert(part->census.begin(), part->census.end());
        report.census[part->case_name + "_closed"] = part->closed ? 1 : 0;
    }
    report.closed = k3.closed && k4.closed && primes.closed;
    return report;
}

} // namespace powertuple
