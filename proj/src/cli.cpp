#include <powertuple/cli.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <powertuple/bounds.hpp>
#include <powertuple/continued_fraction.hpp>
#include <powertuple/elimination.hpp>
#include <powertuple/report.hpp>
#include <powertuple/tuples.hpp>

namespace powertuple::cli {

namespace {

using nlohmann::json;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string k = "3";
    std::string tuple;
    std::string a;
    std::string n;
    std::string r;
    std::string terms;
    std::string max_p;
    std::string first_max;
    std::string c_max;
    bool power_form = false;
    std::string replay_case = "all";
    std::string out_path;
    std::string format = "text";
    unsigned threads = 1;
    unsigned precision_cap = 4096;
    unsigned prime_cap = 1000;
    bool strict = false;
    bool paranoid = false;
    bool no_timestamp = false;
    int verbosity = 0;
};

unsigned parse_small(const std::string& text, const char* what) {
    Natural v;
    try {
        v = parse_natural(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
    if (!v.fits_uint_p()) {
        throw UsageError(std::string(what) + " out of range: " + text);
    }
    return static_cast<unsigned>(v.get_ui());
}

Natural parse_big(const std::string& text, const char* what) {
    try {
        return parse_natural(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
}

std::vector<Natural> parse_list(const std::string& text) {
    std::vector<Natural> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        out.push_back(parse_big(item, "--tuple"));
    }
    if (out.empty() || text.back() == ',') {
        throw UsageError("--tuple: expected a comma-separated list of integers");
    }
    return out;
}

ReportFormat parse_format(const std::string& text) {
    if (text == "json") {
        return ReportFormat::json;
    }
    if (text == "csv") {
        return ReportFormat::csv;
    }
    return ReportFormat::text;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

std::string interval_json_text(const RationalInterval& x) {
    return to_decimal(x.lo(), 20) + " .. " + to_decimal(x.hi(), 20);
}

int emit(const std::string& text, const RunConfig& config, std::ostream& out) {
    if (config.out_path.empty()) {
        out << text;
        return kSuccess;
    }
    std::ofstream file(config.out_path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open " + config.out_path + " for writing");
    }
    file << text;
    return kSuccess;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
    const unsigned k = parse_small(config.k, "--k");
    const std::vector<Natural> elements = parse_list(config.tuple);
    const TupleCheck check = verify_tuple(elements, k);

    std::ostringstream text;
    json j = {{"k", k}, {"valid", check.tuple.has_value()}};
    if (check) {
        const PowerTuple& t = *check.tuple;
        json witnesses = json::array();
        std::string listed;
        for (std::size_t i = 0; i < t.size(); ++i) {
            for (std::size_t jj = i + 1; jj < t.size(); ++jj) {
                witnesses.push_back({{"i", i}, {"j", jj}, {"root", to_string(t.witness(i, jj))}});
                text << to_string(t.elements()[i]) << " * " << to_string(t.elements()[jj])
                     << " + 1 = " << to_string(t.witness(i, jj)) << "^" << k << '\n';
                listed += (listed.empty() ? "" : ",") + to_string(t.witness(i, jj));
            }
        }
        text << "valid " << k << "-th power tuple, witnesses " << listed << '\n';
        j["witnesses"] = std::move(witnesses);
    } else {
        const auto [i, jj] = *check.failing_pair;
        text << "not a " << k << "-th power tuple: " << to_string(elements[i]) << " * " << to_string(elements[jj])
             << " + 1 is not a perfect " << k << "-th power\n";
        j["failing_pair"] = {to_string(elements[i]), to_string(elements[jj])};
    }
    emit(config.format == "json" ? j.dump(2) + "\n" : text.str(), config, out);
    return check ? kSuccess : kNotClosed;
}

int cmd_pair(const RunConfig& config, std::ostream& out) {
    const unsigned k = parse_small(config.k, "--k");
    const CanonicalPair pair = canonical_pair(parse_big(config.a, "--a"), k);
    if (config.format == "json") {
        json j = {{"k", k}, {"ak", to_string(pair.ak)}, {"b", to_string(pair.b)}, {"r", to_string(pair.r)}};
        return emit(j.dump(2) + "\n", config, out);
    }
    return emit("ak=" + to_string(pair.ak) + " b=" + to_string(pair.b) + " r=" + to_string(pair.r) + "\n", config,
                out);
}

int cmd_cf(const RunConfig& config, std::ostream& out) {
    const unsigned k = parse_small(config.k, "--k");
    const Natural n = parse_big(config.n, "--n");
    std::optional<SurdExpansion> expansion;
    if (!config.max_p.empty()) {
        const Natural max_p = parse_big(config.max_p, "--max-p");
        expansion = SurdExpansion::expand_until(
            n, k, [&](std::size_t, const Natural& p, const Natural&, const Natural&) { return p > max_p; });
    } else {
        const unsigned terms = config.terms.empty() ? 10 : parse_small(config.terms, "--terms");
        expansion = SurdExpansion::expand(n, k, terms);
    }

    json quotients = json::array();
    json convergents = json::array();
    std::ostringstream text;
    text << "quotients:";
    for (std::size_t j = 0; j < expansion->size(); ++j) {
        quotients.push_back(to_string(expansion->quotient(j)));
        const Convergent& c = expansion->convergent(j);
        convergents.push_back({to_string(c.p), to_string(c.q)});
        text << ' ' << to_string(expansion->quotient(j));
    }
    text << '\n';
    for (std::size_t j = 0; j < expansion->size(); ++j) {
        const Convergent& c = expansion->convergent(j);
        text << "p" << j << "/q" << j << " = " << to_string(c.p) << "/" << to_string(c.q) << '\n';
    }
    text << "precision_bits: " << expansion->precision_bits() << '\n';
    if (config.format == "json") {
        json j = {{"n", to_string(n)},
                  {"k", k},
                  {"quotients", quotients},
                  {"convergents", convergents},
                  {"precision_bits", expansion->precision_bits()}};
        return emit(j.dump(2) + "\n", config, out);
    }
    return emit(text.str(), config, out);
}

int cmd_search(const RunConfig& config, std::ostream& out) {
    TripleSearch params;
    params.k = parse_small(config.k, "--k");
    params.first_max = parse_big(config.first_max, "--first-max");
    params.c_max = parse_big(config.c_max, "--c-max");
    params.power_form = config.power_form;
    params.threads = config.threads;
    const std::vector<PowerTuple> found = search_triples(params);

    json triples = json::array();
    std::ostringstream text;
    for (const PowerTuple& t : found) {
        json row = json::array();
        for (const Natural& x : t.elements()) {
            row.push_back(to_string(x));
        }
        text << "{" << to_string(t.elements()[0]) << ", " << to_string(t.elements()[1]) << ", "
             << to_string(t.elements()[2]) << "}\n";
        triples.push_back(std::move(row));
    }
    text << found.size() << " triple(s)\n";
    if (config.format == "json") {
        return emit(json{{"k", params.k}, {"triples", triples}}.dump(2) + "\n", config, out);
    }
    return emit(text.str(), config, out);
}

int cmd_bounds(const RunConfig& config, std::ostream& out) {
    const unsigned k = parse_small(config.k, "--k");
    const Natural r = parse_big(config.r, "--r");
    if (r < 2) {
        throw UsageError("--r must be at least 2");
    }
    const Precision precision{128, config.precision_cap};
    const Natural n = pow(r, k) - 1;
    const BoundEnvelope env = envelope(k, n, precision);

    json j = {{"n", k},
              {"N", to_string(n)},
              {"mu", interval_json_text(env.mu)},
              {"condition_holds", env.condition_holds},
              {"lambda", nullptr}};
    if (env.lambda) {
        j["lambda"] = interval_json_text(*env.lambda);
        if (k == 3 || k == 4) {
            j["height_bound"] = to_string(height_bound(k, r, precision));
        }
        if (k == 4 && r >= 5) {
            j["k4_tail_closed"] = k4_tail_closed(r, precision);
        }
        if (k == 3) {
            j["k3_tail_closed"] = k3_tail_closed(r, precision);
        }
    }
    if (k >= 5 && is_prime(k)) {
        j["prime_case_closed"] = prime_case_closed(k, precision);
    }
    if (config.format == "json") {
        return emit(j.dump(2) + "\n", config, out);
    }
    std::ostringstream text;
    for (const auto& [key, value] : j.items()) {
        text << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
    return emit(text.str(), config, out);
}

int cmd_replay(const RunConfig& config, std::ostream& out, std::ostream& err) {
    ReplayConfig replay;
    replay.threads = config.threads;
    replay.precision.cap_bits = config.precision_cap;
    replay.prime_cap = config.prime_cap;
    replay.strict_k4 = config.strict;
    replay.paranoid = config.paranoid;
    if (config.verbosity > 0) {
        err << "replay " << config.replay_case << ": threads=" << replay.threads
            << " precision_cap=" << replay.precision.cap_bits << '\n';
    }

    ReplayReport report;
    if (config.replay_case == "k3") {
        report = replay_k3(replay);
    } else if (config.replay_case == "k4") {
        report = replay_k4(replay);
    } else if (config.replay_case == "primes") {
        report = replay_primes(replay);
    } else {
        report = full_replay(replay);
    }
    if (!config.no_timestamp) {
        report.timestamp = utc_timestamp();
    }
    if (config.verbosity > 0) {
        err << "replay " << config.replay_case << ": " << report.records.size() << " records, "
            << (report.closed ? "closed" : "NOT closed") << '\n';
    }
    emit(render(report, parse_format(config.format)), config, out);
    return report.closed ? kSuccess : kNotClosed;
}

unsigned env_unsigned(const char* name, unsigned fallback) {
    const char* value = std::getenv(name);
    if (value == nullptr || *value == '\0') {
        return fallback;
    }
    return parse_small(value, name);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact search and proof replay for k-th power Diophantine tuples", "powertuple"};
    app.require_subcommand(1);

    RunConfig config;
    auto add_common = [&](CLI::App* sub, bool with_out) {
        sub->add_option("--format", config.format, "Output format")
            ->check(CLI::IsMember({"json", "csv", "text"}))
            ->capture_default_str();
        sub->add_option("--threads", config.threads, "Worker threads (env POWERTUPLE_THREADS)")
            ->check(CLI::Range(1u, 1024u));
        sub->add_option("--precision-cap", config.precision_cap,
                        "Largest working precision in bits (env POWERTUPLE_PRECISION_CAP)")
            ->check(CLI::Range(128u, 1u << 20));
        sub->add_flag("-v,--verbose", "Log progress to standard error");
        if (with_out) {
            sub->add_option("--out", config.out_path, "Write the output to FILE instead of standard output");
        }
    };

    CLI::App* verify = app.add_subcommand("verify", "Check that every pairwise product plus one is a k-th power");
    verify->add_option("--k", config.k, "Exponent")->required();
    verify->add_option("--tuple", config.tuple, "Comma-separated elements, ascending")->required();
    add_common(verify, true);

    CLI::App* pair = app.add_subcommand("pair", "Canonical pair {a^k, b} with a^k b + 1 = (a^k + 1)^k");
    pair->add_option("--a", config.a, "Base a >= 2")->required();
    pair->add_option("--k", config.k, "Exponent k >= 3")->required();
    add_common(pair, true);

    CLI::App* cf = app.add_subcommand("cf", "Certified continued fraction of N^(1/k)");
    cf->add_option("--n", config.n, "Radicand N")->required();
    cf->add_option("--k", config.k, "Root index")->required();
    CLI::Option* terms = cf->add_option("--terms", config.terms, "Number of partial quotients (default 10)");
    CLI::Option* max_p = cf->add_option("--max-p", config.max_p, "Stop at the first convergent with p_j > P");
    terms->excludes(max_p);
    max_p->excludes(terms);
    add_common(cf, true);

    CLI::App* search = app.add_subcommand("search", "Brute-force search for k-th power triples");
    search->add_option("--k", config.k, "Exponent")->required();
    search->add_option("--first-max", config.first_max, "Largest smallest element")->required();
    search->add_option("--c-max", config.c_max, "Largest element")->required();
    search->add_flag("--power-form", config.power_form, "Only triples whose smallest element is a^k, a >= 2");
    add_common(search, true);

    CLI::App* replay = app.add_subcommand("replay", "Replay the finite case analysis");
    replay->add_option("--case", config.replay_case, "Which case")
        ->check(CLI::IsMember({"k3", "k4", "primes", "all"}))
        ->capture_default_str();
    replay->add_option("--prime-cap", config.prime_cap, "Largest prime exponent in the prime sweep")
        ->capture_default_str();
    replay->add_flag("--strict", config.strict, "k = 4: only r with r^4 - 1 = a^4 b, a >= 2");
    replay->add_flag("--paranoid", config.paranoid, "k = 3: also test odd and low convergent indices");
    replay->add_flag("--no-timestamp", config.no_timestamp, "Omit the timestamp from the report");
    add_common(replay, true);

    CLI::App* bounds = app.add_subcommand("bounds", "Irrationality-measure envelope for N = r^k - 1");
    bounds->add_option("--k", config.k, "Exponent n >= 3")->required();
    bounds->add_option("--r", config.r, "r")->required();
    add_common(bounds, true);

    try {
        config.threads = env_unsigned("POWERTUPLE_THREADS", config.threads);
        config.precision_cap = env_unsigned("POWERTUPLE_PRECISION_CAP", config.precision_cap);
        if (config.threads < 1) {
            throw UsageError("POWERTUPLE_THREADS must be at least 1");
        }
        if (config.precision_cap < 128) {
            throw UsageError("POWERTUPLE_PRECISION_CAP must be at least 128");
        }
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }
    CLI::App* chosen = app.get_subcommands().front();
    config.verbosity = static_cast<int>(chosen->count("--verbose"));
    try {
        if (chosen == verify) {
            return cmd_verify(config, out);
        }
        if (chosen == pair) {
            return cmd_pair(config, out);
        }
        if (chosen == cf) {
            return cmd_cf(config, out);
        }
        if (chosen == search) {
            return cmd_search(config, out);
        }
        if (chosen == bounds) {
            return cmd_bounds(config, out);
        }
        return cmd_replay(config, out, err);
    } catch (const UndecidedError& e) {
        err << "undecided: " << e.what() << '\n';
        return kUndecided;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n\n" << chosen->help();
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n\n" << chosen->help();
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNotClosed;
    }
}

} // namespace powertuple::cli
