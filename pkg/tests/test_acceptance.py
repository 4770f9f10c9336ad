"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (also collected into the
terminal summary) and then asserts.  Time limits and tolerances are pinned
below.
"""

import itertools
import json
import subprocess
import sys
import time
from fractions import Fraction
from math import comb, sqrt

import mpmath

from conftest import ACCEPTANCE_LINES
from coxlab import bounds
from coxlab.bounds import delta2_of, gamma_min, lemma41_bound, lemma41_sum_form, main_certificate
from coxlab.campaign import CampaignConfig, run_macaulay_campaign, run_restriction_campaign
from coxlab.coxring import parse_polynomial
from coxlab.ideals import (
    HomogeneousIdeal,
    SocleFunctional,
    colon_piece,
    dim_v_monomials,
    find_link,
    graded_piece,
    l_index,
    verify_cox_gorenstein,
)
from coxlab.macaulay import decompose, lower, upper
from coxlab.toric import cox_summary_json, hirzebruch, projective_space
from oracles import decompositions_up_to, delta2_quadratic_k1, projective_dim_v

MACAULAY_LIMIT_S = 10.0
CAMPAIGN_LIMIT_S = 120.0
GORENSTEIN_LIMIT_S = 5.0
DELTA2_TOL = 1e-9
GAMMA_TOL = 1e-12
CAMPAIGNS = [("p:2", (1,)), ("pxp:1,1", (1, 1))]


def report(num, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_criterion_1_macaulay_calculus():
    t0 = time.perf_counter()
    bad = []
    for n in range(1, 7):
        table = decompositions_up_to(5000, n)
        lo = [lower(c, n) for c in range(5002)]
        up = [upper(c, n) for c in range(5002)]
        for c in range(5001):
            d = decompose(c, n)
            if sum(comb(k, i) for k, i in d.pairs) != c or table[c] != [d.pairs]:
                bad.append(("decomp", n, c))
            if c and lo[c - 1] > lo[c]:
                bad.append(("A", n, c))
            if c and d.pairs[-1][0] > d.pairs[-1][1] and not lo[c - 1] < lo[c]:
                bad.append(("B", n, c))
            step = d.coefficient(1) + 1 if d.delta == 1 else 1
            if up[c + 1] != up[c] + step:
                bad.append(("upper", n, c))
    dt = time.perf_counter() - t0
    report(1, not bad and dt < MACAULAY_LIMIT_S, f"Macaulay calculus c<=5000 n<=6, {len(bad)} failures, {dt:.2f}s < {MACAULAY_LIMIT_S}s")


def _campaign_summary(run):
    t0 = time.perf_counter()
    reps = [run(CampaignConfig(var, div, ns=(1, 2, 3, 4), trials=200, seed=2024, max_codim=10)) for var, div in CAMPAIGNS]
    return reps, time.perf_counter() - t0


def test_criterion_2_macaulay_campaign():
    reps, dt = _campaign_summary(run_macaulay_campaign)
    viol = sum(r.violations for r in reps)
    trials = sum(len(r.records) for r in reps)
    ok = viol == 0 and all(r.verdict for r in reps) and trials == 1600 and dt < CAMPAIGN_LIMIT_S
    report(2, ok, f"Macaulay campaign {trials} trials, {viol} violations, {dt:.1f}s < {CAMPAIGN_LIMIT_S:.0f}s")


def test_criterion_3_restriction_campaign():
    reps, dt = _campaign_summary(run_restriction_campaign)
    viol = sum(r.violations for r in reps)
    ident = sum(r.identity_failures for r in reps)
    lemma = sum(r.lemma_failures for r in reps)
    checked = sum("lemma_bound" in x for r in reps for x in r.records)
    trials = sum(len(r.records) for r in reps)
    ok = viol == ident == lemma == 0 and trials == 1600 and checked > 0 and dt < CAMPAIGN_LIMIT_S
    report(3, ok, f"restriction campaign {trials} trials, {viol} violations, {lemma}/{checked} n=1 lemma failures, "
                  f"{ident} identity failures, {dt:.1f}s < {CAMPAIGN_LIMIT_S:.0f}s")


def test_criterion_4_gorenstein():
    t0 = time.perf_counter()
    results = []
    for n in (2, 3):
        v = projective_space(n)
        sq = HomogeneousIdeal.from_monomials(v, [tuple(2 * (i == j) for j in range(n + 1)) for i in range(n + 1)])
        lam = SocleFunctional.dual_of(parse_polynomial("*".join(f"x{i + 1}" for i in range(n + 1)), v))
        rep = verify_cox_gorenstein(sq, lam, [(d,) for d in range(n + 2)])
        paired = all(r.dual_equal is True for r in rep.records)
        results.append(rep.verdict and rep.duality_holds and paired and len(rep.records) == n + 2)
    dt = time.perf_counter() - t0
    report(4, all(results) and dt < GORENSTEIN_LIMIT_S,
           f"squares on P2/P3 equal annihilators in all degrees with dual codims, {dt:.2f}s < {GORENSTEIN_LIMIT_S}s")


def test_criterion_5_linkage():
    v = projective_space(2)
    cubes = HomogeneousIdeal.from_strings(v, ["x1^3", "x2^3", "x3^3"])
    squares = HomogeneousIdeal.from_strings(v, ["x1^2", "x2^2", "x3^2"])
    f = find_link(cubes, SocleFunctional.dual_of(parse_polynomial("x1^2*x2^2*x3^2", v)),
                  squares, SocleFunctional.dual_of(parse_polynomial("x1*x2*x3", v)))
    shape = len(f.terms) == 1 and f.terms[0][0] == (1, 1, 1) and f.terms[0][1] != 0
    colon = all(colon_piece(cubes, f, (d,)).same_as(graded_piece(squares, (d,))) for d in range(4))
    report(5, shape and colon, f"find_link gives F = {f.terms[0][1]}*xyz with (I:F) = I' in degrees 0..3")


def test_criterion_6_hirzebruch_golden():
    same = []
    for r in (0, 1, 2):
        with open(f"tests/golden/hirzebruch_r{r}.json") as fh:
            golden = fh.read()
        text = cox_summary_json(hirzebruch(r))
        data = json.loads(text)
        same.append(text == golden and data["degrees"][3] == [r, 1]
                    and data["irrelevant_degrees"][0] == [r + 1, 1]
                    and data["irrelevant_generators"] == ["x1*x4", "x1*x2", "x2*x3", "x3*x4"])
    report(6, all(same), f"Hirzebruch r=0,1,2 summaries byte-exact: {same}")


def test_criterion_7_dim_v_and_l_index():
    mismatches = checked = 0
    for n in (3, 4):
        v = projective_space(n)
        monos = [m for m in itertools.product(range(3), repeat=n + 1) if any(m)]
        for size in (1, 2):
            for gens in itertools.combinations(monos, size):
                checked += 1
                if dim_v_monomials(v, list(gens)) != projective_dim_v(n, gens):
                    mismatches += 1
    p3 = projective_space(3)
    sq = HomogeneousIdeal.from_monomials(p3, [tuple(2 * (i == j) for j in range(4)) for i in range(4)])
    ls = [l_index(sq, 1, (1,), i, 1) for i in range(3)]
    report(7, mismatches == 0 and ls == [1, 1, 1],
           f"dim V vs coordinate oracle {checked} ideals, {mismatches} mismatches; P3 squares l_i = {ls}")


def test_criterion_8_bounds():
    d2 = delta2_of(Fraction(1, 4), 1)
    err = abs(float(d2) - delta2_quadratic_k1(0.25))
    with mpmath.workprec(bounds.PREC):
        gerr = max(abs(gamma_min(k, d)[0] - ref) for k, d, ref in
                   [(1, 1, mpmath.mpf(1)), (1, 2, mpmath.mpf(1) / 2), (2, 1, mpmath.sqrt(5) - 2)])
    sums = all(lemma41_bound(n, k, d) == lemma41_sum_form(n, k, d)
               for n in range(31) for k in range(31) for d in range(31))
    cert = main_certificate(1, 1, 4)
    c = {k: Fraction(cert.constants[k]) for k in ("eps1", "eps2", "delta2", "delta")}
    rj = 4 - 2
    # independent float re-check of the certificate with its own printed constants
    g = lambda x: 3 * x + sqrt(4 * 2 * x)
    recheck = ((1 + c["eps1"]) / (1 - 2 * c["eps2"] * rj) <= 2
               and g(float(c["delta2"])) < min(1.0, float(c["eps2"]))
               and g(float(c["delta"])) < 1 / (2 * rj)
               and c["delta"] <= c["delta2"] and c["delta"] < c["eps2"] / 2
               and c["delta"] < Fraction(1, 4 * rj) and c["delta"] < Fraction(1, 8))
    ok = (err < DELTA2_TOL and gerr < GAMMA_TOL and sums and cert.verdict
          and all(x.satisfied for x in cert.constraints) and recheck)
    report(8, ok, f"delta2 err {err:.2e} < {DELTA2_TOL}, gamma err {float(gerr):.2e} < {GAMMA_TOL}, "
                  f"lemma sum form n,k,d<=30 {sums}, certificate(1,1,4) {cert.verdict} re-check {recheck}")


CLI_RUNS = [
    ["variety", "info", "--variety", "f:2"],
    ["hilbert", "--variety", "p:3", "--class", "5"],
    ["macaulay", "decomp", "5000", "6"],
    ["ideal", "hilbert", "--variety", "p:2", "--gens", "x1^2,x2^2,x3^2", "--class", "2"],
    ["ideal", "li", "--variety", "p:3", "--gens", "x1^2,x2^2,x3^2,x4^2", "--eta", "1", "--k", "1"],
    ["gorenstein", "verify", "--variety", "p:2", "--gens", "x1^2,x2^2,x3^2", "--socle", "x1*x2*x3"],
    ["jacobian", "--variety", "p:2", "--poly", "x1^3+x2^3+x3^3"],
    ["bounds", "certificate", "--eps", "1", "--k", "1", "--r", "4"],
    ["bounds", "delta2", "--eps2", "1/4", "--k", "1"],
    ["check", "macaulay", "--variety", "p:2", "--n", "1-3", "--trials", "20", "--seed", "11"],
    ["check", "restriction", "--variety", "pxp:1,1", "--divisor", "1,1", "--n", "1-2", "--trials", "10",
     "--seed", "11", "--workers", "2"],
]


def test_criterion_9_cli_determinism():
    same = 0
    for argv in CLI_RUNS:
        cmd = [sys.executable, "-m", "coxlab", *argv, "--json", "--seed", "5"]
        a, b = (subprocess.run(cmd, capture_output=True) for _ in range(2))
        if a.returncode == b.returncode == 0 and a.stdout == b.stdout and json.loads(a.stdout) is not None:
            same += 1
    report(9, same == len(CLI_RUNS), f"{same}/{len(CLI_RUNS)} CLI invocations byte-identical across two runs")
