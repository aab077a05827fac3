#include <powertuple/report.hpp>

#include <map>
#include <sstream>
#include <stdexcept>

namespace powertuple {

namespace {

using nlohmann::json;

json record_to_json(const EliminationRecord& rec) {
    json evidence = json::object();
    for (const auto& [name, value] : rec.evidence) {
        evidence[name] = to_string(value);
    }
    json out = {
        {"k", rec.k},
        {"r", to_string(rec.r)},
        {"a", nullptr},
        {"b", nullptr},
        {"verdict", std::string(to_string(rec.verdict))},
        {"eliminated", rec.eliminated},
        {"evidence", std::move(evidence)},
    };
    if (rec.decomposition) {
        out["a"] = to_string(rec.decomposition->first);
        out["b"] = to_string(rec.decomposition->second);
    }
    return out;
}

EliminationRecord record_from_json(const json& j) {
    EliminationRecord rec;
    rec.k = j.at("k").get<unsigned>();
    rec.r = parse_natural(j.at("r").get<std::string>());
    if (!j.at("a").is_null()) {
        rec.decomposition = std::pair{parse_natural(j.at("a").get<std::string>()),
                                      parse_natural(j.at("b").get<std::string>())};
    }
    const auto verdict = parse_verdict(j.at("verdict").get<std::string>());
    if (!verdict) {
        throw std::invalid_argument("report: unknown verdict " + j.at("verdict").dump());
    }
    rec.verdict = *verdict;
    rec.eliminated = j.at("eliminated").get<bool>();
    for (const auto& [name, value] : j.at("evidence").items()) {
        rec.evidence[name] = parse_natural(value.get<std::string>());
    }
    return rec;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

std::string render_csv(const ReplayReport& report) {
    std::ostringstream out;
    out << "k,r,a,b,verdict,eliminated,evidence\n";
    for (const EliminationRecord& rec : report.records) {
        std::string evidence;
        for (const auto& [name, value] : rec.evidence) {
            if (!evidence.empty()) {
                evidence += ';';
            }
            evidence += name + "=" + to_string(value);
        }
        out << rec.k << ',' << to_string(rec.r) << ','
            << (rec.decomposition ? to_string(rec.decomposition->first) : "") << ','
            << (rec.decomposition ? to_string(rec.decomposition->second) : "") << ',' << to_string(rec.verdict)
            << ',' << (rec.eliminated ? "true" : "false") << ',' << csv_quote(evidence) << '\n';
    }
    return out.str();
}

std::string render_text(const ReplayReport& report) {
    std::ostringstream out;
    out << "case: " << report.case_name << '\n';
    out << "closed: " << (report.closed ? "yes" : "no") << '\n';
    out << "records: " << report.records.size() << '\n';

    std::map<std::string, std::size_t> histogram;
    std::size_t survivors = 0;
    for (const EliminationRecord& rec : report.records) {
        ++histogram["k=" + std::to_string(rec.k) + " " + std::string(to_string(rec.verdict))];
        survivors += rec.eliminated ? 0 : 1;
    }
    for (const auto& [label, count] : histogram) {
        out << "  " << label << ": " << count << '\n';
    }
    out << "survivors: " << survivors << '\n';
    for (const EliminationRecord& rec : report.records) {
        if (!rec.eliminated) {
            out << "  survivor k=" << rec.k << " r=" << to_string(rec.r) << '\n';
        }
    }
    out << "census:\n";
    for (const auto& [name, count] : report.census) {
        out << "  " << name << ": " << count << '\n';
    }
    std::size_t failed_steps = 0;
    for (const ReplayStep& step : report.steps) {
        if (!step.holds) {
            ++failed_steps;
            out << "failed step: " << step.name;
            for (const auto& [key, value] : step.detail) {
                out << ' ' << key << '=' << value;
            }
            out << '\n';
        }
    }
    out << "steps: " << report.steps.size() << " (" << failed_steps << " failed)\n";
    return out.str();
}

} // namespace

json to_json(const ReplayReport& report) {
    json records = json::array();
    for (const EliminationRecord& rec : report.records) {
        records.push_back(record_to_json(rec));
    }
    json steps = json::array();
    for (const ReplayStep& step : report.steps) {
        steps.push_back({{"name", step.name},
                         {"computed", step.computed},
                         {"holds", step.holds},
                         {"detail", step.detail}});
    }
    json out = {
        {"case", report.case_name},
        {"closed", report.closed},
        {"census", report.census},
        {"records", std::move(records)},
        {"steps", std::move(steps)},
        {"tool_version", report.tool_version},
    };
    if (!report.timestamp.empty()) {
        out["timestamp"] = report.timestamp;
    }
    return out;
}

ReplayReport report_from_json(const json& j) {
    try {
        ReplayReport report;
        report.case_name = j.at("case").get<std::string>();
        report.closed = j.at("closed").get<bool>();
        report.census = j.at("census").get<std::map<std::string, std::uint64_t>>();
        for (const json& rec : j.at("records")) {
            report.records.push_back(record_from_json(rec));
        }
        for (const json& step : j.at("steps")) {
            report.steps.push_back(ReplayStep{step.at("name").get<std::string>(), step.at("computed").get<bool>(),
                                              step.at("holds").get<bool>(),
                                              step.at("detail").get<std::map<std::string, std::string>>()});
        }
        report.tool_version = j.at("tool_version").get<std::string>();
        if (j.contains("timestamp")) {
            report.timestamp = j.at("timestamp").get<std::string>();
        }
        return report;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("report: ") + e.what());
    }
}

std::string render(const ReplayReport& report, ReportFormat format) {
    switch (format) {
    case ReportFormat::json:
        return to_json(report).dump(2) + "\n";
    case ReportFormat::csv:
        return render_csv(report);
    case ReportFormat::text:
        return render_text(report);
    }
    throw std::logic_error("unknown report format");
}

std::string render_without_timestamp(ReplayReport report, ReportFormat format) {
    report.timestamp.clear();
    return render(report, format);
}

} // namespace powertuple
