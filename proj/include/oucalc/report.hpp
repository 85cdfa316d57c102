#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace ouc {

//! One measured quantity.  `params` holds everything needed to re-run the row
//! standalone; `bound` is NaN when the row has no pass/fail bound; `gated`
//! marks rows that participate in the exit status (bounded-ratio sweep rows
//! are recorded but never gate).
struct SweepRow {
    std::string kind;
    nlohmann::json params;
    double measured = 0.0;
    double bound = std::numeric_limits<double>::quiet_NaN();
    bool gated = false;
    bool pass = true;
};

//! Full result of one verification check: config snapshot, rows, summary.
struct SweepReport {
    std::string check_id;
    nlohmann::json config;
    std::vector<SweepRow> rows;
    nlohmann::json summary;
    double wall_seconds = 0.0;
    bool hard_pass = true;  // all gated rows passed

    void add_row(SweepRow row);

    nlohmann::json to_json() const;
    //! Deterministic CSV (rows only, no timing).
    std::string to_csv() const;
};

//! Writes <dir>/<check_id>.json and <dir>/<check_id>.csv, creating dir.
void write_report(const SweepReport& rep, const std::filesystem::path& dir);

//! Fixed-format float for CSV cells: %.12g, locale independent.
std::string format_float(double v);

}  // namespace ouc
