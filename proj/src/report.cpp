#include "oucalc/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ouc {

std::string format_float(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void SweepReport::add_row(SweepRow row) {
    if (row.gated && !row.pass) hard_pass = false;
    rows.push_back(std::move(row));
}

nlohmann::json SweepReport::to_json() const {
    nlohmann::json j;
    j["check"] = check_id;
    j["config"] = config;
    j["summary"] = summary;
    j["hard_pass"] = hard_pass;
    j["wall_seconds"] = wall_seconds;
    nlohmann::json rows_j = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json e;
        e["kind"] = r.kind;
        e["params"] = r.params;
        e["measured"] = std::isfinite(r.measured) ? nlohmann::json(r.measured)
                                                  : nlohmann::json(format_float(r.measured));
        if (std::isfinite(r.bound))
            e["bound"] = r.bound;
        e["gated"] = r.gated;
        e["pass"] = r.pass;
        rows_j.push_back(std::move(e));
    }
    j["rows"] = std::move(rows_j);
    return j;
}

namespace {

// Minimal CSV quoting: wrap in quotes, double embedded quotes.
std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += "\"";
    return out;
}

}  // namespace

std::string SweepReport::to_csv() const {
    std::string out = "check,kind,params,measured,bound,gated,pass\n";
    for (const auto& r : rows) {
        out += check_id;
        out += ',';
        out += csv_quote(r.kind);
        out += ',';
        out += csv_quote(r.params.dump());
        out += ',';
        out += format_float(r.measured);
        out += ',';
        out += std::isnan(r.bound) ? "" : format_float(r.bound);
        out += ',';
        out += r.gated ? "1" : "0";
        out += ',';
        out += r.pass ? "1" : "0";
        out += '\n';
    }
    return out;
}

void write_report(const SweepReport& rep, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream js(dir / (rep.check_id + ".json"));
        if (!js) throw std::runtime_error("write_report: cannot open JSON output");
        js << rep.to_json().dump(2) << "\n";
    }
    {
        std::ofstream cs(dir / (rep.check_id + ".csv"));
        if (!cs) throw std::runtime_error("write_report: cannot open CSV output");
        cs << rep.to_csv();
    }
}

}  // namespace ouc
