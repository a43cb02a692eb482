"""Acceptance criteria; each test prints one PASS/FAIL line (collected in the run summary).

Tolerances are exact: every comparison is rational equality or a strict/weak
rational inequality, runtimes use the limits below.  Lines tagged INFO report
the errata corpora and do not affect the verdicts.
"""

import io
import random
import time
from contextlib import redirect_stdout
from fractions import Fraction

import pytest

from lctkit.classify import (
    NonNormalError,
    choose_chart,
    classify_quartic_point,
    load_corpus,
    reduce_double_point,
)
from lctkit.cli import main, run_table
from lctkit.dcover import double_space_lower_bound, ke_criterion
from lctkit.lct_core import (
    lct_binomial,
    lct_bounds,
    lct_curve_resolution,
    lct_plane_curve,
    mult_at_origin,
)
from lctkit.ledger import critical_report, load_case_ledger
from lctkit.newton import weighted_mult
from lctkit.poly import Poly, dehomogenize, format_fraction, linear_change, parse_fraction

from conftest import random_poly
from oracles import psi_identities_hold
from test_classify import random_double_point
from values import QUARTIC_VALUE_SET, SEXTIC_VALUE_SET, SEXTIC_VALUE_SET_READ

LIMIT_QUARTIC_S = 30.0
LIMIT_SEXTIC_S = 10.0
LIMIT_BINOMIAL_S = 60.0
MAX_BINOMIAL_EXP = 8
N_RANDOM_WEIGHT = 200
N_COORD_CHANGES = 20
N_PSI_GERMS = 100
EPS = Fraction(1, 1000)
SEED = 20261014

XY = ("x", "y")
XYZ = ("x", "y", "z")
XYZW = ("x", "y", "z", "w")

REPORT = []


def report(n, ok, detail):
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    REPORT.append(line)
    print(line)
    return ok


def info(n, detail):
    line = f"INFO {n}: {detail}"
    REPORT.append(line)
    print(line)


def fr(q):
    return format_fraction(q)


def local_germ(F, P):
    return dehomogenize(F, F.ring[choose_chart(P)], P)


@pytest.fixture(scope="module")
def quartic_rows():
    t = time.perf_counter()
    rows = run_table("quartic")
    return rows, time.perf_counter() - t


@pytest.fixture(scope="module")
def sextic_rows():
    t = time.perf_counter()
    rows = run_table("sextic")
    return rows, time.perf_counter() - t


def computed_values(rows):
    return [parse_fraction(r["computed"]) for r in rows if r["computed"] is not None]


def test_c1_quartic_table(quartic_rows):
    rows, dt = quartic_rows
    corpus = load_corpus("quartic", XYZW)
    mults = [mult_at_origin(local_germ(r.poly, r.points[0])) for r in corpus]
    counts = (mults.count(2), mults.count(3))
    row = next(r for r in rows if r["expected"] == "13/14")
    second = row["points"][1][1] if len(row["points"]) > 1 else None
    bad = [r["row"] for r in rows if not r["ok"]]
    ok = not bad and len(rows) == 29 and counts == (13, 16) and second == "1" and dt < LIMIT_QUARTIC_S
    report(1, ok, f"{len(rows) - len(bad)}/{len(rows)} rows exact, mult 2/3 rows {counts}, "
                  f"13/14 second point -> {second}, {dt:.1f}s (limit {LIMIT_QUARTIC_S:.0f}s)"
                  + (f", mismatched rows {bad}" if bad else ""))
    fixed = run_table("quartic", "quartic_errata")
    info(1, f"errata corpus: {sum(r['ok'] for r in fixed)}/{len(fixed)} rows exact")
    assert ok


def test_c2_quartic_value_set(quartic_rows):
    rows, _ = quartic_rows
    got = set(computed_values(rows)) | {Fraction(3, 4), Fraction(1)}
    ok = got == QUARTIC_VALUE_SET and len(QUARTIC_VALUE_SET) == 25
    missing = sorted(QUARTIC_VALUE_SET - got)
    extra = sorted(got - QUARTIC_VALUE_SET)
    report(2, ok, f"{len(got)} values; missing {[fr(v) for v in missing]}, extra {[fr(v) for v in extra]}")
    fixed = set(computed_values(run_table("quartic", "quartic_errata"))) | {Fraction(3, 4), Fraction(1)}
    info(2, f"errata corpus value set equals the 25-element set: {fixed == QUARTIC_VALUE_SET}")
    assert ok


def test_c3_sextic_table(sextic_rows):
    rows, dt = sextic_rows
    bad = [r["row"] for r in rows if not r["ok"]]
    got = set(computed_values(rows))
    ok_rows = not bad and len(rows) == 15
    ok_set = got == SEXTIC_VALUE_SET and len(SEXTIC_VALUE_SET) == 15
    ok = ok_rows and ok_set and dt < LIMIT_SEXTIC_S
    report(3, ok, f"{len(rows) - len(bad)}/{len(rows)} rows exact"
                  + (f" (mismatched rows {bad})" if bad else "")
                  + f", value set {'equal' if ok_set else 'differs: computed-printed '}"
                  + ("" if ok_set else f"{[fr(v) for v in sorted(got - SEXTIC_VALUE_SET)]}, printed-computed "
                                       f"{[fr(v) for v in sorted(SEXTIC_VALUE_SET - got)]}")
                  + f", {dt:.1f}s (limit {LIMIT_SEXTIC_S:.0f}s)")
    fixed = run_table("sextic", "sextic_errata")
    fixed_set = set(computed_values(fixed)) | {Fraction(1)}
    info(3, f"errata corpus: {sum(r['ok'] for r in fixed)}/{len(fixed)} rows exact; values plus {{1}} "
            f"equal the printed set with 23/26 for the repeated 33/38: {fixed_set == SEXTIC_VALUE_SET_READ}")
    assert ok


def test_c4_binomial_oracle():
    t = time.perf_counter()
    seen, bad = set(), []
    r = range(MAX_BINOMIAL_EXP + 1)
    for m1 in r:
        for n1 in r:
            for m2 in r:
                for n2 in r:
                    if m1 * n2 == m2 * n1 or not (m1 + n1) or not (m2 + n2):
                        continue
                    key = tuple(sorted(((m1, n1), (m2, n2))))
                    if key in seen:
                        continue
                    seen.add(key)
                    f = Poly(XY, {(m1, n1): 1, (m2, n2): 1})
                    if lct_binomial(m1, n1, m2, n2) != lct_curve_resolution(f).value:
                        bad.append(key)
    dt = time.perf_counter() - t
    ok = not bad and dt < LIMIT_BINOMIAL_S
    report(4, ok, f"{len(seen)} binomials, {len(bad)} disagreements, {dt:.1f}s (limit {LIMIT_BINOMIAL_S:.0f}s)")
    assert ok


def _check(paper, lam):
    buf = io.StringIO()
    with redirect_stdout(buf):
        return main(["ledger", "check", "--paper", paper, "--lambda", fr(lam)])


def test_c5_ledger_criticality():
    parts, ok = [], True
    for paper, want, binding in (("quartic", Fraction(16, 21), ("E.1",)),
                                 ("quintic", Fraction(22, 25), ("Q.chain",))):
        rep = critical_report(load_case_ledger(paper))
        at, above = _check(paper, want), _check(paper, want + EPS)
        good = rep.value == want and rep.binding == binding and at == 0 and above == 2
        ok &= good
        parts.append(f"{paper} critical {fr(rep.value)} binding {','.join(rep.binding)}, "
                     f"check exit {at} at lambda and {above} at lambda+1/1000")
    report(5, ok, "; ".join(parts))
    assert ok


def test_c6_weight_soundness_and_invariance():
    rng = random.Random(SEED)
    weight_bad = 0
    for _ in range(N_RANDOM_WEIGHT):
        f = Poly.zero(XY)
        while f.is_zero():
            f = random_poly(rng, XY, 8, rng.randint(1, 5), min_deg=2)
        v = lct_plane_curve(f).value
        w = (rng.randint(1, 12), rng.randint(1, 12))
        weight_bad += v > Fraction(sum(w)) / weighted_mult(f, w)
    germs = []
    for name in ("sextic", "sextic_errata"):
        for r in load_corpus(name, XYZ):
            germs += [local_germ(r.poly, P) for P in r.points]
    coord_bad, sandwich_bad, checked = 0, 0, 0
    for g in germs:
        v = lct_plane_curve(g).value
        for _ in range(N_COORD_CHANGES):
            while True:
                M = [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(2)] for _ in range(2)]
                if M[0][0] * M[1][1] - M[0][1] * M[1][0]:
                    break
            coord_bad += lct_plane_curve(linear_change(g, M)).value != v
    certs = [(g, lct_plane_curve(g)) for g in germs]
    for name in ("quartic", "quartic_errata"):
        for r in load_corpus(name, XYZW):
            for P in r.points:
                g = local_germ(r.poly, P)
                if mult_at_origin(g) < 2:
                    continue
                try:
                    certs.append((g, classify_quartic_point(r.poly, P)))
                except NonNormalError:
                    continue  # no certificate for a non-normal surface
    for g, c in certs:
        lo, hi = lct_bounds(g)
        checked += 1
        sandwich_bad += not (lo <= c.value <= hi)
    ok = weight_bad == 0 and coord_bad == 0 and sandwich_bad == 0
    report(6, ok, f"weight bound violations {weight_bad}/{N_RANDOM_WEIGHT}, coordinate-change changes "
                  f"{coord_bad}/{len(germs) * N_COORD_CHANGES}, sandwich violations {sandwich_bad}/{checked}")
    assert ok


def test_c7_reduction_stability():
    rng = random.Random(SEED)
    unstable = 0
    for _ in range(N_PSI_GERMS):
        f = random_double_point(rng)
        a, b = reduce_double_point(f, 9), reduce_double_point(f, 12)
        unstable += any(a.psi[m] != b.psi[m] for m in range(3, 9))
    psi4, psi5 = psi_identities_hold()
    ok = unstable == 0 and psi4 and psi5
    report(7, ok, f"psi_3..psi_8 differ between N=9 and N=12 on {unstable}/{N_PSI_GERMS} germs; "
                  f"psi_4 identity {psi4}, psi_5 identity {psi5}")
    assert ok


def test_c8_double_space_bound(sextic_rows):
    rows, _ = sextic_rows
    bound = double_space_lower_bound(3, 3)
    vals = {r["row"]: parse_fraction(r["computed"]) for r in rows if r["computed"] is not None}
    fermat = rows[0]
    equal_rows = [k for k, v in vals.items() if v == bound]
    above = all(v >= bound for v in vals.values()) and len(vals) == len(rows)
    ke = all(ke_criterion(parse_fraction(r["expected"]), 3) for r in rows)
    ok = bound == Fraction(5, 6) and above and equal_rows == [fermat["row"]] and ke
    report(8, ok, f"bound {fr(bound)}, all values >= bound {above}, rows attaining it {equal_rows} "
                  f"(Fermat-type row {fermat['row']} computes {fermat['computed']}), all > 3/4 {ke}")
    fixed = run_table("sextic", "sextic_errata")
    info(8, "errata corpus rows attaining the bound: "
            f"{[r['row'] for r in fixed if r['computed'] == fr(bound)]}")
    assert ok
