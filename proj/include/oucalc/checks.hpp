#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oucalc/report.hpp"

namespace ouc {

//! Configuration shared by every verification check.  All randomized sweeps
//! derive their generator from (seed, check id), so runs are reproducible and
//! independent of check order.
struct RunConfig {
    int dimension = 1;
    int truncation = 16;
    int quad_order = 64;
    std::uint64_t seed = 12345;
    std::vector<std::string> checks;       // empty = every check
    std::map<std::string, double> params;  // delta, delta_prime, kappa, epsilon,
                                           // alpha, tau, c, count, samples, ...
    std::string out_dir = "reports";
    bool parallel = false;

    //! Enforces the per-dimension caps before any computation runs:
    //! truncation <= {48, 24, 12} for n = {1, 2, 3}, quadrature order in
    //! [truncation + 1, 256] (128 for n = 3), dimension in 1..3.
    void validate() const;

    double param(const std::string& key, double fallback) const;
    nlohmann::json snapshot() const;

    //! key = value lines; '#' starts a comment.  Recognized keys: dimension,
    //! truncation, quad_order, seed, checks (comma list), out, parallel, and
    //! param.<name> for numeric overrides.  Unknown keys are an error.
    static RunConfig from_file(const std::string& path);
};

//! The recognized check identifiers, in canonical execution order.
const std::vector<std::string>& all_check_ids();

//! Executes one check and returns its report; the caller persists it.
//! Gated rows (tolerance-backed claims) set hard_pass; bounded-ratio sweep
//! rows only report.
SweepReport run_check(const RunConfig& cfg, const std::string& check_id);

//! Executes cfg.checks (all of them when the list is empty) and returns the
//! reports in request order; cfg.parallel runs the checks concurrently.
std::vector<SweepReport> run_all(const RunConfig& cfg);

}  // namespace ouc
