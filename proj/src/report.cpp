#include "gkms/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gkms {

namespace {

// %.16e gives 17 significant digits, enough to round-trip any double.
std::string sci(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
            out.push_back(c);
        } else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out += buf;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace

bool Report::all_pass() const {
    for (const CheckRecord& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string emit_report(const Report& report) {
    std::ostringstream out;
    out << "{\n";
    out << " \"artifact_version\": \"" << escape(report.artifact_version) << "\",\n";
    out << " \"tolerance\": " << sci(report.tolerance) << ",\n";
    out << " \"scenario\": " << (report.scenario_echo.empty() ? "null" : report.scenario_echo)
        << ",\n";
    out << " \"checks\": [";
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const CheckRecord& c = report.checks[i];
        out << (i ? ",\n  " : "\n  ");
        out << "{\"name\": \"" << escape(c.name) << "\", \"samples\": " << c.samples
            << ", \"max_residual\": " << sci(c.max_residual) << ", \"scale\": " << sci(c.scale)
            << ", \"pass\": " << (c.pass ? "true" : "false")
            << ", \"seconds\": " << sci(c.seconds) << "}";
    }
    out << (report.checks.empty() ? "]" : "\n ]") << ",\n";
    out << " \"skipped\": [";
    for (std::size_t i = 0; i < report.skipped.size(); ++i)
        out << (i ? ", " : "") << "\"" << escape(report.skipped[i]) << "\"";
    out << "],\n";
    out << " \"notes\": [";
    for (std::size_t i = 0; i < report.notes.size(); ++i)
        out << (i ? ", " : "") << "\"" << escape(report.notes[i]) << "\"";
    out << "],\n";
    out << " \"modulus_discrepancy\": [";
    for (std::size_t i = 0; i < report.modulus_discrepancy.size(); ++i) {
        const ModulusDiscrepancy& d = report.modulus_discrepancy[i];
        out << (i ? ",\n  " : "\n  ");
        out << "{\"k\": " << d.k << ", \"k_prime\": " << d.k_prime
            << ", \"raw\": " << sci(d.raw) << ", \"scale\": " << sci(d.scale)
            << ", \"normalized\": " << sci(d.normalized) << "}";
    }
    out << (report.modulus_discrepancy.empty() ? "]" : "\n ]") << ",\n";
    out << " \"all_pass\": " << (report.all_pass() ? "true" : "false") << "\n";
    out << "}\n";
    return out.str();
}

Report parse_report(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw IoError(std::string("report: invalid JSON: ") + e.what());
    }
    Report report;
    report.artifact_version = j.at("artifact_version").get<std::string>();
    report.tolerance = j.at("tolerance").get<double>();
    report.scenario_echo = j.at("scenario").is_null() ? "" : j.at("scenario").dump();
    for (const auto& c : j.at("checks")) {
        CheckRecord rec;
        rec.name = c.at("name").get<std::string>();
        rec.samples = c.at("samples").get<long>();
        rec.max_residual = c.at("max_residual").get<double>();
        rec.scale = c.at("scale").get<double>();
        rec.pass = c.at("pass").get<bool>();
        rec.seconds = c.at("seconds").get<double>();
        report.checks.push_back(std::move(rec));
    }
    for (const auto& s : j.at("skipped")) report.skipped.push_back(s.get<std::string>());
    for (const auto& s : j.at("notes")) report.notes.push_back(s.get<std::string>());
    for (const auto& d : j.at("modulus_discrepancy"))
        report.modulus_discrepancy.push_back(
            ModulusDiscrepancy{d.at("k").get<int>(), d.at("k_prime").get<int>(),
                               d.at("raw").get<double>(), d.at("scale").get<double>(),
                               d.at("normalized").get<double>()});
    return report;
}

void save_report(const Report& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("report: cannot open " + path + " for writing");
    out << emit_report(report);
    if (!out) throw IoError("report: write to " + path + " failed");
}

}  // namespace gkms
