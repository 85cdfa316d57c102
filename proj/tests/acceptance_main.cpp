// Acceptance gates for the verification suite: thirteen pinned criteria
// evaluated from fresh check runs at the default desk scale (n = 1, N = 16,
// seed 12345).  One line per criterion; the exit status is zero only when
// every criterion passes.

#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "oucalc/checks.hpp"
#include "oucalc/report.hpp"

namespace {

using ouc::RunConfig;
using ouc::SweepReport;
using ouc::SweepRow;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Largest / smallest `measured` over rows of one kind; NaN when the kind is
// absent, so a missing row can never pass a criterion vacuously.
double max_measured(const SweepReport& rep, const std::string& kind) {
    double m = kNaN;
    for (const SweepRow& r : rep.rows)
        if (r.kind == kind) m = std::isnan(m) ? r.measured : std::max(m, r.measured);
    return m;
}

double min_measured(const SweepReport& rep, const std::string& kind) {
    double m = kNaN;
    for (const SweepRow& r : rep.rows)
        if (r.kind == kind) m = std::isnan(m) ? r.measured : std::min(m, r.measured);
    return m;
}

int count_rows(const SweepReport& rep, const std::string& kind) {
    int n = 0;
    for (const SweepRow& r : rep.rows)
        if (r.kind == kind) ++n;
    return n;
}

int failures = 0;

void criterion(int id, bool pass, const char* name, const std::string& detail) {
    if (!pass) ++failures;
    std::printf("%s  %2d  %s  [%s]\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace

int main() {
    RunConfig cfg;  // defaults: dimension 1, truncation 16, quad order 64

    std::map<std::string, SweepReport> reports;
    const char* needed[] = {"semigroup",      "kernel-forms",      "kernel-bounds",
                            "time-dilation",  "doubling",          "multiplier-routes",
                            "offdiag",        "decomposition",     "admissible-trace",
                            "theorem-sweep"};
    for (const char* id : needed) {
        std::fprintf(stderr, "running %s...\n", id);
        try {
            reports[id] = ouc::run_check(cfg, id);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "%s raised: %s\n", id, e.what());
            reports[id] = SweepReport{};  // empty: dependent criteria fail
        }
    }

    const SweepReport& semi = reports["semigroup"];
    const SweepReport& forms = reports["kernel-forms"];
    const SweepReport& bounds = reports["kernel-bounds"];
    const SweepReport& dila = reports["time-dilation"];
    const SweepReport& doub = reports["doubling"];
    const SweepReport& mult = reports["multiplier-routes"];
    const SweepReport& offd = reports["offdiag"];
    const SweepReport& deco = reports["decomposition"];
    const SweepReport& trace = reports["admissible-trace"];
    const SweepReport& sweep = reports["theorem-sweep"];

    {
        const double worst = max_measured(semi, "eigenfunction-route");
        criterion(1, worst <= 1e-8,
                  "semigroup eigenstructure: kernel route reproduces e^{-tk} h_k",
                  "max rel " + num(worst) + " <= 1e-8, degrees 0..10, t in {0.1,0.5,1}");
    }
    {
        const double worst = max_measured(semi, "conservativity");
        criterion(2, worst <= 1e-8, "conservativity: kernel rows integrate to one",
                  "max |int M_t(x,.) dgamma - 1| " + num(worst) + " <= 1e-8");
    }
    {
        const double worst = max_measured(forms, "form-agreement");
        criterion(3, worst <= 1e-10, "product and shifted kernel forms agree",
                  "max log-scale rel " + num(worst) + " <= 1e-10 on 1e4 samples");
    }
    {
        const double worst = max_measured(forms, "dt-closed-form");
        criterion(4, worst <= 1e-6, "closed-form time derivative vs central differences",
                  "max rel " + num(worst) + " <= 1e-6 on the standard grid");
    }
    {
        const double slack =
            std::min(std::min(min_measured(bounds, "ratio-lower"),
                              min_measured(bounds, "ratio-upper")),
                     std::min(min_measured(bounds, "sandwich-lower"),
                              min_measured(bounds, "sandwich-upper")));
        criterion(5, slack >= 0.0, "elementary kernel-bound sandwiches on the log grid",
                  "min slack " + num(slack) + " >= 0 over 1e3 points of (0,1]");
    }
    {
        const double viol = max_measured(doub, "doubling-violations");
        const int combos = count_rows(doub, "doubling-violations");
        criterion(6, viol == 0.0 && combos == 9,
                  "volume doubling on random admissible balls",
                  num(viol) + " violations over 1e3 balls x 9 (lambda,alpha) pairs");
    }
    {
        const double viol = max_measured(dila, "max-inequality-violations");
        criterion(7, viol == 0.0, "two-point dilation max-inequality",
                  num(viol) + " violations over 1e4 samples, t in (0,1]");
    }
    {
        const double routes = max_measured(mult, "route-agreement");
        const double unit = std::max(max_measured(mult, "unit-symbol-value"),
                                     max_measured(mult, "unit-symbol-zero"));
        criterion(8, routes <= 1e-7 && unit <= 1e-8,
                  "multiplier routes agree; unit symbol gives the unit multiplier",
                  "route diff " + num(routes) + " <= 1e-7 (lambda 1..40, 5 symbols), "
                  "unit err " + num(unit) + " <= 1e-8");
    }
    {
        const double worst = max_measured(mult, "uniform-time-integral");
        criterion(9, worst <= 1e-8,
                  "square time integral equals 1/(8 delta'^2) for every frequency",
                  "max rel " + num(worst) + " <= 1e-8, k = 1..20");
    }
    {
        const double recon = std::max(max_measured(deco, "mode-reconstruction"),
                                      max_measured(deco, "random-reconstruction"));
        const double cfit = max_measured(deco, "c-constant-fit");
        const int modes = count_rows(deco, "mode-reconstruction");
        const int randoms = count_rows(deco, "random-reconstruction");
        criterion(10, recon <= 1e-4 && cfit <= 1e-6 && modes == 15 && randoms >= 20,
                  "three-part splitting reconstructs phi(L)f; constant fits 2(d+d')^2",
                  "max rel L1 " + num(recon) + " <= 1e-4 (5 modes + 20 random x 3 triples), "
                  "constant fit " + num(cfit) + " <= 1e-6");
    }
    {
        const double worst = max_measured(deco, "tail-route-agreement");
        criterion(11, worst <= 1e-6, "tail operator: direct vs integration-by-parts",
                  "max diff " + num(worst) + " <= 1e-6, decaying symbol");
    }
    {
        const double mono = max_measured(offd, "monotone-in-separation");
        const double r2 = min_measured(offd, "fit-r2");
        criterion(12, mono < 1.0 && r2 >= 0.95,
                  "off-diagonal norms decay log-linearly in separation^2/t",
                  "worst consecutive ratio " + num(mono) + " < 1, min fit R^2 " + num(r2) +
                      " >= 0.95");
    }
    {
        const double env_sup = max_measured(bounds, "envelope-sup");
        const double env_drift = max_measured(bounds, "envelope-sup-drift");
        const double tr_drift = max_measured(trace, "trace-ratio-drift");
        double sweep_drift = kNaN, sweep_max = kNaN;
        int members = 0;
        if (sweep.summary.contains("refinement_drift"))
            sweep_drift = sweep.summary["refinement_drift"].get<double>();
        if (sweep.summary.contains("max_ratio"))
            sweep_max = sweep.summary["max_ratio"].get<double>();
        if (sweep.summary.contains("members")) members = sweep.summary["members"].get<int>();
        const bool pass = std::isfinite(env_sup) && env_drift <= 0.05 &&
                          tr_drift <= 0.10 && std::isfinite(sweep_max) &&
                          sweep_drift <= 0.10 && members >= 200 &&
                          sweep.wall_seconds <= 600.0;
        criterion(13, pass, "bounded-ratio sweeps stable under refinement within budget",
                  "envelope sup " + num(env_sup) + " drift " + num(env_drift) +
                      " <= 0.05, trace drift " + num(tr_drift) + " <= 0.1, sweep max " +
                      num(sweep_max) + " drift " + num(sweep_drift) + " <= 0.1 over " +
                      std::to_string(members) + " members in " + num(sweep.wall_seconds) +
                      " s <= 600 s");
    }

    std::printf("%d/13 criteria passed\n", 13 - failures);
    return failures == 0 ? 0 : 1;
}
