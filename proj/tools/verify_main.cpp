#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oucalc/checks.hpp"
#include "oucalc/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Verification suite for the Gaussian Ornstein-Uhlenbeck operator calculus"};
    app.name("verify");

    std::string check = "all";
    std::string config_file;
    std::string out_dir;
    std::vector<std::string> param_kv;
    std::optional<std::uint64_t> seed;
    std::optional<int> dim;
    std::optional<int> truncation;
    std::optional<int> quad_order;
    bool parallel = false;
    bool list = false;

    app.add_option("check", check, "Check id to run, or 'all'")->capture_default_str();
    app.add_option("--config", config_file, "Configuration file (key = value lines)")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "Seed for every randomized sweep");
    app.add_option("--dim", dim, "Space dimension (1, 2, or 3)");
    app.add_option("--truncation", truncation, "Hermite truncation degree");
    app.add_option("--quad-order", quad_order, "Per-axis quadrature order");
    app.add_option("--out", out_dir, "Report output directory");
    app.add_option("--param", param_kv,
                   "Numeric parameter override as key=value, e.g. --param delta=0.5 "
                   "(repeatable)");
    app.add_flag("--parallel", parallel, "Run independent checks concurrently");
    app.add_flag("--list", list, "Print the known check ids and exit");

    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const std::string& id : ouc::all_check_ids()) std::cout << id << "\n";
        return 0;
    }

    try {
        ouc::RunConfig cfg;
        if (!config_file.empty()) cfg = ouc::RunConfig::from_file(config_file);

        // Output directory precedence: --out, then the environment override,
        // then the config file, then the built-in default.
        if (const char* env = std::getenv("OUCALC_OUT_DIR"); env && *env && out_dir.empty())
            cfg.out_dir = env;
        if (!out_dir.empty()) cfg.out_dir = out_dir;

        if (seed) cfg.seed = *seed;
        if (dim) cfg.dimension = *dim;
        if (truncation) cfg.truncation = *truncation;
        if (quad_order) cfg.quad_order = *quad_order;
        if (parallel) cfg.parallel = true;
        for (const std::string& kv : param_kv) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0)
                throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
            cfg.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }
        if (check != "all") cfg.checks = {check};

        const std::vector<ouc::SweepReport> reports = ouc::run_all(cfg);
        bool ok = true;
        for (const ouc::SweepReport& rep : reports) {
            ouc::write_report(rep, cfg.out_dir);
            int gated = 0;
            for (const auto& r : rep.rows) gated += r.gated ? 1 : 0;
            std::printf("%-18s %s  (%zu rows, %d gated, %.2fs)\n", rep.check_id.c_str(),
                        rep.hard_pass ? "pass" : "FAIL", rep.rows.size(), gated,
                        rep.wall_seconds);
            if (!rep.hard_pass)
                for (const auto& r : rep.rows)
                    if (r.gated && !r.pass)
                        std::printf("  FAIL %s %s measured=%.6g bound=%.6g\n", r.kind.c_str(),
                                    r.params.dump().c_str(), r.measured, r.bound);
            ok = ok && rep.hard_pass;
        }
        return ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "verify: " << e.what() << "\n";
        return 2;
    }
}
