#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <powertuple/bounds.hpp>
#include <powertuple/natural.hpp>

namespace powertuple {

/// Which test removed a candidate r from a case pipeline.
enum class Verdict {
    tail_bound,
    height_bound_exceeded,
    quotient_too_small,
    divisibility_failed,
    not_a_candidate,
};

std::string_view to_string(Verdict verdict);
std::optional<Verdict> parse_verdict(std::string_view text);

struct EliminationRecord {
    unsigned k = 0;
    Natural r;
    /// (a, b) with a^k b = r^k - 1; a is the largest admissible value.
    std::optional<std::pair<Natural, Natural>> decomposition;
    Verdict verdict = Verdict::not_a_candidate;
    /// False when the verdict's defining test did not hold (a survivor).
    bool eliminated = false;
    std::map<std::string, Natural> evidence;

    friend bool operator==(const EliminationRecord&, const EliminationRecord&) = default;
};

/// A proof step that is not tied to one r: tail closures, prime closures, stated reductions.
struct ReplayStep {
    std::string name;
    bool computed = true; // false for steps that are stated, not evaluated
    bool holds = false;
    std::map<std::string, std::string> detail;

    friend bool operator==(const ReplayStep&, const ReplayStep&) = default;
};

struct ReplayReport {
    std::string case_name;
    bool closed = false;
    std::map<std::string, std::uint64_t> census;
    std::vector<EliminationRecord> records; // ordered by (k, r)
    std::vector<ReplayStep> steps;
    std::string tool_version;
    std::string timestamp; // left empty by the library; stamped by the caller

    friend bool operator==(const ReplayReport&, const ReplayReport&) = default;
};

struct ReplayConfig {
    unsigned threads = 1;
    Precision precision;
    unsigned prime_cap = 1000;
    /// k = 4: only r with r^4 - 1 = a^4 b, a >= 2, are replayed; the rest become not_a_candidate.
    bool strict_k4 = false;
    /// k = 3: also run the divisibility test on odd j and on even j below the index floor.
    bool paranoid = false;
    Natural k3_r_lo = 9;
    Natural k3_r_hi = 7972;
};

/// Reading of "r^3 - 1 = a^3 b" used to select k = 3 candidates.
enum class CandidatePredicate {
    cube_divisor, ///< some a >= 2 with a^3 | r^3 - 1 (the default)
    triple_form,  ///< additionally b = (r^3 - 1) / a^3 > a^3
};

struct K3Candidate {
    Natural r;
    Natural a; // largest admissible a
    Natural b;
    std::vector<Natural> admissible; // ascending

    friend bool operator==(const K3Candidate&, const K3Candidate&) = default;
};

std::vector<K3Candidate> enumerate_k3_candidates(const Natural& r_lo = 9, const Natural& r_hi = 7972,
                                                 CandidatePredicate predicate = CandidatePredicate::cube_divisor,
                                                 unsigned threads = 1);

/// expand(r^3 - 1, 3, 6) == [r - 1, 1, 3r^2 - 2, 1, r - 2, 1].
bool verify_k3_quotient_formula(const Natural& r);

/// r values where the low-index argument needs a_9 <= 10 checked directly.
const std::vector<unsigned>& k3_exception_set();

/// Low-index records: exception-set members (a_9 <= 10, q_10 > 5 r^6) and every
/// other candidate in range (q_8 > 5 r^6), each with a_{j+1} <= 3r - 2 confirmed
/// for the even indices below the floor.
std::vector<EliminationRecord> verify_k3_exceptions(const ReplayConfig& config = {});

ReplayReport replay_k3(const ReplayConfig& config = {});
ReplayReport replay_k4(const ReplayConfig& config = {});
/// prime_case_closed for every prime 5 <= k <= config.prime_cap; cap < 5 is rejected.
ReplayReport replay_primes(const ReplayConfig& config = {});
ReplayReport full_replay(const ReplayConfig& config = {});

inline constexpr std::string_view kToolVersion = "1.0.0";

} // namespace powertuple
