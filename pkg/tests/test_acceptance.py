"""The nine acceptance criteria, each at its stated tolerance and runtime limit.

Every criterion prints one PASS/FAIL line. Run the file directly
(``python3 tests/test_acceptance.py``) to get just those lines.
"""

import json
import math
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from latticebounds import cli, hermite, kzconst, proofcheck, schnorr_rankin
from latticebounds.figures import to_csv
from latticebounds.reduction import brute_force_svp, int_det, lll, provable_box, qr, svp_enum
from latticebounds.reduction import empirical_ratios

FIXTURES = Path(__file__).parent / "fixtures"
SLACK = 1e-12


def criterion_1():
    worst = max(hermite.linear_upper(n, "new").value / hermite.blichfeldt_upper(n).value for n in range(109, 1001))
    far = hermite.linear_upper(10**6, "new").value / hermite.blichfeldt_upper(10**6).value
    ok = worst < 1.0226 and 1.0040 <= far <= 1.0055
    return ok, f"max ratio on 109..1000 = {worst:.6f}; ratio at 1e6 = {far:.6f}", 1.0


def criterion_2():
    bad = []
    for n in range(1, 10001):
        new, wc = hermite.linear_upper(n, "new").value, hermite.linear_upper(n, "wc18").value
        if (new < wc) != (n >= 109):
            bad.append(f"hermite n={n}")
    for n in range(111, 10001):
        if not kzconst.log_kz_upper(n, "new") < kzconst.log_kz_upper(n, "wc18"):
            bad.append(f"kz n={n}")
    for k in range(2, 1001):
        above = schnorr_rankin.schnorr_lower(k, "new").value > k / 12
        if above != (k >= 8):
            bad.append(f"schnorr lower k={k}")
    return not bad, ("all crossovers exact" if not bad else f"violations: {bad[:5]}"), 5.0


def criterion_3():
    code, out = cli.run(["verify", "--bits", "256", "--report", "", "--format", "structured"])
    doc = json.loads(out)
    claims = {c["claim_id"]: c for c in doc["claims"]}
    grid = proofcheck.PHI_GRID
    expected = [
        "hermite.phi_grid", "hermite.rho_310_gamma_057", "hermite.digamma_bound_grid", "kz.midpoint_rule",
        "kz.log_integral_bound", "kz.small_rank_product_identity", "kz.middle_product_bound",
        "kz.assembled_constant_bound", "schnorr.f12_lower", "schnorr.f12_upper", "schnorr.h11_positive",
        "schnorr.h12_negative", "schnorr.f_grid_max", "rankin.zeta_ratio_grid", "rankin.gamma_ratio_grid",
        "rankin.stirling_lower", "rankin.stirling_upper", "schnorr.exp_rational_bound",
    ]
    missing = [c for c in expected if c not in claims]
    failed = [c for c, rep in claims.items() if rep["status"] != "pass"]
    shape_ok = (grid[0] == Fraction(1, 2) and grid[-1] == 310 and len(claims) == len(proofcheck.registered_claim_ids()))
    ok = code == 0 and not missing and not failed and shape_ok
    detail = (f"{len(claims) - len(failed)}/{len(claims)} claims pass; phi grid t = 0.5..310 step 0.5 "
              f"({len(grid)} points)")
    if failed:
        detail += "; failing: " + ", ".join(
            f"{c} (margin {claims[c]['computed_margin']:.3g})" for c in failed)
    if missing:
        detail += f"; missing: {missing}"
    return ok, detail, 120.0


def criterion_4():
    ratios = [math.exp(schnorr_rankin.log_schnorr_upper(k, "new") - schnorr_rankin.log_schnorr_upper(k, "old"))
              for k in range(40, 1001)]
    close = [math.exp(schnorr_rankin.log_schnorr_upper(k, "simple") - schnorr_rankin.log_schnorr_upper(k, "new"))
             for k in range(5, 10001)]
    ok = all(0.2 < r < 0.3 for r in ratios) and all(1 - SLACK <= c < 1.05 for c in close)
    return ok, f"new/old in [{min(ratios):.4f}, {max(ratios):.4f}]; simple/new max {max(close):.5f}", 1.0


def criterion_5():
    vals = [schnorr_rankin.schnorr_lower(k, "new").value / (k / 12) for k in range(8, 501)]
    ok = 1.6 < vals[-1] < 1.71 and all(a < b for a, b in zip(vals, vals[1:]))
    return ok, f"ratio at k=500 = {vals[-1]:.6f}; increasing on 8..500: {ok}", 1.0


def criterion_6():
    worst = 0.0
    for k in range(5, 51):
        lhs = schnorr_rankin.log_rankin(k, "new_lower") - schnorr_rankin.log_rankin(k, "old_lower")
        rhs = math.log(4 / (math.pi**2 * math.sqrt(k))) + (k / 2) * math.log(24 / (math.pi * math.exp(1.5)))
        worst = max(worst, abs(lhs - rhs))
    return worst < 1e-9, f"max |difference| = {worst:.3g}", 1.0


def _random_basis(rng, n, bound=50):
    while True:
        a = rng.integers(-bound, bound + 1, size=(n, n))
        if int_det(a):
            return a.astype(float)


def criterion_7():
    worst = 0.0
    count = 0
    for n in (4, 5):
        rng = np.random.default_rng(20_000 + n)
        for _ in range(100):
            a = _random_basis(rng, n)
            _, r = qr(a)
            l1, _ = svp_enum(r)
            # brute force over a box that provably holds a shortest vector of the same lattice
            r_red = lll(a).r
            l2, _ = brute_force_svp(r_red, provable_box(r_red))
            worst = max(worst, abs(l1 - l2) / l2)
            count += 1
    return worst < 1e-9, f"{count} bases; max relative difference {worst:.3g}", 60.0


def criterion_8():
    problems = []
    beta4 = None
    for n in range(2, 11):
        s = empirical_ratios(n, 50, seed=n)
        if not s.all_kz_reduced:
            problems.append(f"rank {n}: not KZ reduced")
        if s.kz_ratio_max > kzconst.kz_best_upper(n).value * (1 + 1e-9):
            problems.append(f"rank {n}: KZ ratio {s.kz_ratio_max}")
        if s.hermite_ratio_max > hermite.best_upper(n).value * (1 + 1e-9):
            problems.append(f"rank {n}: Hermite ratio {s.hermite_ratio_max}")
        if s.max_det_rel_error >= 1e-8:
            problems.append(f"rank {n}: determinant drift {s.max_det_rel_error}")
        if not s.all_unimodular:
            problems.append(f"rank {n}: transform not unimodular")
        if n == 4:
            beta4 = s.beta_ratio_max
            if not beta4 <= 1.59:
                problems.append(f"rank 4: beta ratio {beta4}")
        problems += [f"rank {n}: {v}" for v in s.violations]
    detail = f"ranks 2..10 x 50 bases; rank-4 max beta ratio {beta4:.4f}"
    return not problems, detail + ("" if not problems else f"; {problems[:5]}"), 300.0


def criterion_9():
    bad = []
    for fid in ("fig1", "fig2", "fig3", "fig4", "fig5"):
        a, b = to_csv(fid), to_csv(fid)
        if a != b:
            bad.append(f"{fid} not deterministic")
        if a != (FIXTURES / f"{fid}.csv").read_text():
            bad.append(f"{fid} differs from fixture")
    return not bad, "fig1..fig5 byte-identical and equal to fixtures" if not bad else "; ".join(bad), 60.0


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def evaluate(fn):
    start = time.perf_counter()
    ok, detail, limit = fn()
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < limit
    num = fn.__name__.split("_")[1]
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  ({elapsed:.2f} s, limit {limit:g} s)  {detail}"
    return ok, line


@pytest.mark.parametrize("fn", CRITERIA, ids=[f.__name__ for f in CRITERIA])
def test_criterion(fn, capsys):
    ok, line = evaluate(fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    for fn in CRITERIA:
        print(evaluate(fn)[1])
