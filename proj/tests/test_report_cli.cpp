// Report serialization (CSV/JSON), run configuration parsing, check
// dispatch, determinism under a fixed seed, and the row-isolation contract:
// a report row carries enough parameters to recompute its measured value.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cfloat>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "oucalc/checks.hpp"
#include "oucalc/mehler.hpp"
#include "oucalc/report.hpp"

using namespace ouc;

namespace {

// Splits one CSV record, honoring quoted fields with doubled escapes.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::filesystem::path scratch_dir(const char* leaf) {
    return std::filesystem::temp_directory_path() / leaf;
}

}  // namespace

TEST_CASE("rows flip the exit status only when gated") {
    SweepReport rep;
    rep.add_row({"a", {}, 1.0, 2.0, true, true});
    CHECK(rep.hard_pass);
    rep.add_row({"b", {}, 3.0, 2.0, false, false});  // recorded, not gated
    CHECK(rep.hard_pass);
    rep.add_row({"c", {}, 3.0, 2.0, true, false});
    CHECK(!rep.hard_pass);
}

TEST_CASE("CSV escapes embedded quotes and round-trips the parameters") {
    SweepReport rep;
    rep.check_id = "demo";
    nlohmann::json params = {{"note", "say \"hi\", ok"}, {"x", 1.5}};
    rep.add_row({"probe", params, 0.5, std::numeric_limits<double>::quiet_NaN(), false,
                 true});
    const std::string csv = rep.to_csv();

    const auto nl = csv.find('\n');
    REQUIRE(nl != std::string::npos);
    CHECK(csv.substr(0, nl) == "check,kind,params,measured,bound,gated,pass");

    const std::string row = csv.substr(nl + 1, csv.find('\n', nl + 1) - nl - 1);
    std::vector<std::string> cells = split_csv_line(row);
    REQUIRE(cells.size() == 7);
    CHECK(cells[0] == "demo");
    CHECK(cells[1] == "probe");
    CHECK(nlohmann::json::parse(cells[2]) == params);  // quotes survived
    CHECK(cells[3] == format_float(0.5));
    CHECK(cells[4] == "");  // NaN bound serializes empty
    CHECK(cells[5] == "0");
    CHECK(cells[6] == "1");
}

TEST_CASE("floats format round-trippable and locale independent") {
    CHECK(format_float(0.5) == "0.5");
    CHECK(format_float(1e300) == "1e+300");
    // %.12g keeps 12 significant digits: half an ulp there is 5e-12 relative
    const double v = 0.1234567890123;
    CHECK(std::abs(std::stod(format_float(v)) - v) <= 5e-12 * v);
}

TEST_CASE("reports land on disk as parseable JSON and CSV") {
    SweepReport rep;
    rep.check_id = "demo";
    rep.config = {{"seed", 1}};
    rep.summary = {{"n", 2}};
    rep.add_row({"r", {{"k", 3}}, 1.0, 2.0, true, true});

    const auto dir = scratch_dir("oucalc-test-reports");
    std::filesystem::remove_all(dir);
    write_report(rep, dir);
    CHECK(std::filesystem::exists(dir / "demo.csv"));

    std::ifstream js(dir / "demo.json");
    REQUIRE(js.good());
    nlohmann::json j = nlohmann::json::parse(js);
    CHECK(j.at("check") == "demo");
    CHECK(j.at("rows").size() == 1);
    CHECK(j.at("summary").at("n") == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("run configuration validation") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());

    RunConfig bad = cfg;
    bad.dimension = 4;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    RunConfig cap = cfg;  // per-dimension truncation caps
    cap.dimension = 3;
    cap.truncation = 16;
    CHECK_THROWS_AS(cap.validate(), std::invalid_argument);

    RunConfig weak = cfg;  // the rule must out-resolve the truncation
    weak.quad_order = cfg.truncation;
    CHECK_THROWS_AS(weak.validate(), std::invalid_argument);

    RunConfig unknown = cfg;
    unknown.checks = {"nosuch"};
    CHECK_THROWS_AS(unknown.validate(), std::invalid_argument);

    RunConfig noout = cfg;
    noout.out_dir.clear();
    CHECK_THROWS_AS(noout.validate(), std::invalid_argument);
}

TEST_CASE("run configuration file parsing") {
    const auto path = scratch_dir("oucalc-test.cfg");
    {
        std::ofstream out(path);
        out << "# comment\n"
            << "dimension = 2  # trailing comment\n"
            << "truncation=8\n"
            << "quad_order = 32\n"
            << "seed = 99\n"
            << "checks = semigroup, doubling\n"
            << "param.alpha = 2.5\n"
            << "parallel = true\n";
    }
    RunConfig cfg = RunConfig::from_file(path.string());
    CHECK(cfg.dimension == 2);
    CHECK(cfg.truncation == 8);
    CHECK(cfg.quad_order == 32);
    CHECK(cfg.seed == 99);
    CHECK(cfg.parallel);
    REQUIRE(cfg.checks.size() == 2);
    CHECK(cfg.checks[0] == "semigroup");
    CHECK(cfg.checks[1] == "doubling");
    CHECK(cfg.param("alpha", 0.0) == 2.5);
    CHECK(cfg.param("absent", 7.0) == 7.0);
    CHECK_NOTHROW(cfg.validate());

    {
        std::ofstream out(path);
        out << "nonsense = 1\n";
    }
    CHECK_THROWS_AS(RunConfig::from_file(path.string()), std::runtime_error);
    {
        std::ofstream out(path);
        out << "dimension = two\n";
    }
    CHECK_THROWS_AS(RunConfig::from_file(path.string()), std::runtime_error);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(RunConfig::from_file(path.string()), std::runtime_error);
}

TEST_CASE("check dispatch knows every id and rejects the rest") {
    CHECK(all_check_ids().size() == 12);
    RunConfig cfg;
    CHECK_THROWS_AS(run_check(cfg, "nosuch"), std::invalid_argument);
}

TEST_CASE("a fixed seed reproduces a check byte for byte") {
    RunConfig cfg;
    cfg.params["samples"] = 500;  // keep the sampling light

    SweepReport r1 = run_check(cfg, "kernel-forms");
    SweepReport r2 = run_check(cfg, "kernel-forms");
    CHECK(r1.hard_pass);
    CHECK(r1.to_csv() == r2.to_csv());

    RunConfig other = cfg;
    other.seed += 1;
    CHECK(run_check(other, "kernel-forms").to_csv() != r1.to_csv());
}

TEST_CASE("rows can be re-run in isolation from their recorded parameters") {
    RunConfig cfg;
    cfg.params["samples"] = 500;
    SweepReport rep = run_check(cfg, "kernel-forms");

    int found = 0;
    for (const SweepRow& row : rep.rows) {
        if (row.kind != "form-agreement-sample") continue;
        const double t = row.params.at("t").get<double>();
        const std::vector<double> xc = row.params.at("x").get<std::vector<double>>();
        const std::vector<double> yc = row.params.at("y").get<std::vector<double>>();
        const Point x(xc), y(yc);
        const double lp = log_mehler_kernel(t, x, y, MehlerForm::product);
        const double ls = log_mehler_kernel(t, x, y, MehlerForm::shifted);
        const double measured = std::abs(lp - ls) / std::max(1.0, std::abs(lp));
        CHECK(std::abs(measured - row.measured) <= 1e-15 + 1e-12 * row.measured);
        ++found;
    }
    CHECK(found == 5);
}
