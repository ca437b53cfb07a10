"""End-to-end smoke for the python module and the installed CLI binary."""

import csv
import io
import os
import subprocess
import sys

import starcodim as sc

failures = []


def check(label, cond):
    print(f"[{'ok' if cond else 'FAIL'}] {label}")
    if not cond:
        failures.append(label)


# Family constructors and basic structure.
a2 = sc.a_t(2)
check("A_2 has dimension 7", a2.dim == 7)
check("A_2 labels start a,b,z1", a2.labels[:3] == ["a", "b", "z1"])
check("A_2 passes axiom validation", a2.validate() == [])

t22 = sc.tilde_slice(2, 2)
check("tilde slice (2,2) has dimension 1+2+3*5", t22.dim == 18)

b232 = sc.b_slice(2, 3, 2)
check("b slice (2,3,2) validates", b232.validate() == [])

# Codimension values against frozen references.
check("partial c*_{1,1}(A_2) = 1", sc.partial_codim(a2, 1, 1) == 1)
check("total c*_2(A_2) = 4", sc.total_codim(a2, 2) == 4)

seq = sc.sequence(a2, 4)
totals = {n: c for n, c in seq.totals()}
check("A_2 sequence begins 2,4,12,38", totals == {1: 2, 2: 4, 3: 12, 4: 38})
cells3 = {(k, m): v for k, m, v, _ in seq.cells(3)}
check("A_2 degree-3 cells at most 3 nonzero", sum(1 for v in cells3.values() if v) <= 3)

seq_ln = sc.sequence(a2, 4, basis_mode="left-normed")
check("left-normed agrees with full basis", dict(seq_ln.totals()) == dict(seq.totals()))

# Identity containment both directions between A_2 and its slice.
fwd = sc.subset_check(a2, t22, 1, 2)
bwd = sc.subset_check(t22, a2, 1, 2)
check("identities of A_2 hold in tilde slice (1,2)", fwd["contained"])
check("identities of tilde slice hold in A_2 (1,2)", bwd["contained"])

# Witness certificates.
w1 = sc.chain_witness(2, 1, 0)
check("chain witness has rank 1", w1["rank"] == 1 and (w1["k"], w1["m"]) == (2, 4))
w2 = sc.factorial_witness(2, 3, 2)
check("factorial witness m=2 has rank 2", w2["rank"] == 2)

# Growth constants and envelope reports.
const = sc.exponent_constants(2)
check("theta_2 = 1/5", const["theta"] == "1/5")
check("beta_2 bracket looks right", const["beta_lo"].startswith("1.6493848884661178"))

rep = sc.dimension_envelope(7, seq)
check("dimension envelope passes on A_2", rep.all_pass())
rep2 = sc.stepwise_growth(seq)
check("stepwise growth passes on A_2", rep2.all_pass())
rows = rep2.rows()
check("stepwise report has info row at n=1", rows[0]["pass"] == "info")

est = sc.window_estimate(seq, 3, 4)
check("window roots cover degrees 3..4", [n for n, _ in est["roots"]] == [3, 4])

# Schedules.
sched = sc.greedy_schedule("41/20", mode="computed", blocks=2, horizon=6)
check("computed schedule blocks (2,3),(4,5)", sched["blocks"] == [(2, 3), (4, 5)])
check("factorial certificate: 5! vs 2^6", sc.compare_factorial_power(5, "2", 6) == 1)
check("factorial certificate: 3! vs 2^6", sc.compare_factorial_power(3, "2", 6) == -1)

# CLI binary round-trip (path provided by the test harness).
cli = os.environ.get("STARCODIM_CLI")
if cli:
    out = subprocess.run(
        [cli, "codim", "--family", "at", "--T", "2", "--n-max", "3"],
        capture_output=True, text=True,
    )
    check("cli codim exits 0", out.returncode == 0)
    rows = list(csv.DictReader(io.StringIO(out.stdout)))
    check("cli codim reports c_3 = 12", rows[-1]["c_n"] == "12")

    ver = subprocess.run(
        [cli, "verify", "--family", "at", "--T", "2", "--n-max", "4", "--suite", "theorem1"],
        capture_output=True, text=True,
    )
    check("cli verify exits 0", ver.returncode == 0)
    check("cli verify summary on stderr", "verify: PASS" in ver.stderr)

    bad = subprocess.run([cli, "codim", "--family", "nope"], capture_output=True, text=True)
    check("cli rejects unknown family with exit 2", bad.returncode == 2)
else:
    print("[skip] STARCODIM_CLI not set; CLI checks skipped")

if failures:
    print(f"{len(failures)} smoke check(s) failed", file=sys.stderr)
    sys.exit(1)
print("python smoke: all checks passed")
