"""Smoke test for the oucalc extension module.

Runs one representative call through every exposed operation and checks it
against a closed form or an internal consistency identity.  Plain asserts,
no test framework; the build system invokes this script directly with the
module directory on PYTHONPATH.
"""

import json
import math

import oucalc


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


# --- Hermite / Gaussian primitives ---------------------------------------
assert close(oucalc.hermite_eval(1, 1.0), math.sqrt(2.0))
allvals = oucalc.hermite_eval_all(10, 0.3)
assert len(allvals) == 11 and close(allvals[1], 0.3 * math.sqrt(2.0))
assert oucalc.basis_degrees(1, 4) == [0, 1, 2, 3, 4]

assert oucalc.admissibility([2.0]) == 0.5
assert oucalc.discretized_admissibility([3.0]) == 0.25

assert close(oucalc.measure_ball([0.0], 1.0), math.erf(1.0))
d = oucalc.doubling_ratio([0.0], 1.0, 2.0, 1.0)
assert close(d["ratio"], math.erf(2.0) / math.erf(1.0))
assert d["holds"] and d["ratio"] <= d["bound"]

# --- Mehler kernel ---------------------------------------------------------
lp = oucalc.log_mehler_kernel(0.3, [0.5], [-1.0], form="product")
ls = oucalc.log_mehler_kernel(0.3, [0.5], [-1.0], form="shifted")
assert close(lp, ls)
assert oucalc.mehler_kernel(0.3, [0.5], [-1.0]) > 0.0
assert math.isfinite(oucalc.mehler_dt(0.3, [0.5], [-1.0]))
assert 0.0 < oucalc.kernelest_ratio(1.0, [0.0], [0.0], j=0) <= 1.0 / math.sqrt(-math.expm1(-2.0))

# --- spectral multipliers ----------------------------------------------------
assert close(oucalc.phi("exp-decay", 2).real, 4.0 / 9.0)
assert oucalc.phi("one", 0) == 0.0  # every symbol vanishes at the bottom mode
table = oucalc.phi_table("exp-decay", 6)
assert len(table) == 7 and table[0] == 0.0

# h_1 coefficient vector in the graded order for n = 1, N = 4
coeff = [0.0] * 5
coeff[1] = 1.0
assert close(oucalc.synthesize_at(1, 4, coeff, [1.0]).real, math.sqrt(2.0))
scaled = oucalc.apply_multiplier(1, 4, coeff, "exp-decay")
assert close(scaled[1].real, 0.25)  # phi(1) = 1/4

# --- square / maximal functionals --------------------------------------------
const = [1.0] + [0.0] * 4
assert oucalc.square_function(1, 4, const, [0.7]) <= 1e-14
assert close(oucalc.maximal_function(1, 4, const, [0.7]), 1.0)

# --- decomposition -------------------------------------------------------------
r = oucalc.reconstruct(1, 4, coeff)
assert close(r["c_const"], 1.125)
assert r["rel_l1_error"] <= 1e-6
assert r["reanalysis_residual"] <= 1e-8

# --- verification checks ---------------------------------------------------------
ids = oucalc.list_checks()
assert len(ids) == 12 and "kernel-forms" in ids
rep = json.loads(oucalc.run_check("kernel-forms", seed=7, params={"samples": 200.0}))
assert rep["check"] == "kernel-forms"
assert rep["hard_pass"] is True
assert len(rep["rows"]) > 0

print("oucalc python smoke test: ok")
