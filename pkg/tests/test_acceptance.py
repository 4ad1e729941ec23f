"""Acceptance criteria 1-9; each test prints one PASS/FAIL line.

All comparisons are exact (zero tolerance).  Run with ``pytest -s`` or read
the lines from the ``-v`` output; they are written with capture disabled.
"""
import subprocess
import sys
import time

import pytest

from volform import graded as gr
from volform.suites import RunConfig, run_suite


@pytest.fixture
def report_line(capsys):
    def emit(number: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    return emit


def _suite(name: str):
    t = time.perf_counter()
    report = run_suite(RunConfig(seed=1, suites=[name]))
    return report, time.perf_counter() - t


def _rows(report):
    return {r.name: r for r in report.results}


def _all_clean(report, names, min_instances):
    rows = _rows(report)
    missing = [n for n in names if n not in rows]
    short = [n for n in names if n in rows and rows[n].instances < min_instances]
    return not missing and not short and report.failures == 0, missing, short


def test_criterion_1_cartan(report_line):
    report, secs = _suite("cartan")
    names = ["d^2 = 0", "delta^2 = 0", "contraction sign convention", "flat and sharp are inverse",
             "explicit delta formula", "X_alpha from bivector factors",
             "bivector bracket, compact and expanded"]
    ok, missing, short = _all_clean(report, names, 200)
    ok = ok and secs < 60
    report_line(1, ok, f"{len(names)} identities x 200, n in {{3,4}}, "
                       f"{report.failures} failures, {secs:.1f}s (limit 60s)")
    assert ok, (missing, short, report.render())


def test_criterion_2_leibniz(report_line):
    report, secs = _suite("leibniz")
    rows = _rows(report)
    ok = (report.failures == 0 and rows["left Leibniz identity"].instances >= 500
          and all(rows[n].instances >= 200 for n in
                  ["X of bracket is bracket of X", "symmetric part is exact",
                   "X_alpha is divergence-free"]))
    report_line(2, ok, f"left Leibniz on {rows['left Leibniz identity'].instances} triples, "
                       f"homomorphism, symmetric part, L_X mu = 0; {report.failures} failures")
    assert ok, report.render()


def test_criterion_3_bracket_witnesses(report_line):
    report, _ = _suite("brackets")
    ok, _, _ = _all_clean(report, ["bracket witnesses re-verify within bound"], 200)
    report_line(3, ok, f"200 bivectors decomposed, re-verified, count <= C(n,2)(n+1); "
                       f"{report.failures} failures")
    assert ok, report.render()


def test_criterion_4_square_witnesses(report_line):
    report, _ = _suite("squares")
    ok, _, _ = _all_clean(report, ["square witnesses re-verify within bound"], 200)
    report_line(4, ok, f"200 targets, sums of contractions and of squares re-verify, "
                       f"factorisation holds, count <= 4C(n,3); {report.failures} failures")
    assert ok, report.render()


def test_criterion_5_dimension_table(report_line):
    t = time.perf_counter()
    dims = tuple(len(gr.basis_divfree(3, k)) for k in range(4))
    formula = tuple(gr.divfree_dim_formula(3, k) for k in range(4))
    grading = all(gr.grading_check(n, k, l) for n in (3, 4) for k in range(5) for l in range(5 - k))
    whitehead = (gr.whitehead_h1(3), gr.whitehead_h1(4))
    pairs = [(n, k) for n in (3, 4) for k in (2, 3)]
    inter = {p: gr.intertwiner_dim(*p) for p in pairs}
    endo = {p: gr.endo_dim_tensor(*p) for p in pairs}
    secs = time.perf_counter() - t
    ok = (dims == formula == (3, 8, 15, 24) and grading and whitehead == (0, 0)
          and all(v == 0 for v in inter.values()) and all(v == 2 for v in endo.values())
          and secs < 300)
    report_line(5, ok, f"dims {dims}, grading k+l<=4 {grading}, whitehead {whitehead}, "
                       f"intertwiners {sorted(set(inter.values()))}, endo {sorted(set(endo.values()))}, "
                       f"{secs:.1f}s (limit 300s)")
    assert ok


def test_criterion_6_cohomology(report_line):
    report, _ = _suite("coho")
    rows = _rows(report)
    wanted = ["H^2(sl(2), R) = 0", "H^1(sl(3), R^3) = 0", "hat intertwines differentials",
              "loday_d^2 = 0 on a Leibniz algebra"]
    ok = report.failures == 0 and all(n in rows for n in wanted) and \
        any(n.startswith("ce_d^2") for n in rows) and any(n.startswith("loday_d^2") for n in rows)
    report_line(6, ok, f"ce_d^2, loday_d^2, hat, H^2(sl2,R)=0, H^1(sl3,R^3)=0; "
                       f"{report.failures} failures")
    assert ok, report.render()


def test_criterion_7_torus(report_line):
    report, _ = _suite("torus")
    names = ["dh + hd = id off constant modes", "normal form kills exact forms",
             "central bracket: antisymmetry and Jacobi", "Lichnerowicz cocycle identity",
             "cycle cocycle identity", "cocycle equals functional of the bracket"]
    ok, missing, short = _all_clean(report, names, 200)
    ok = ok and "pairing matrix for n=3 has rank 3" in _rows(report)
    report_line(7, ok, f"homotopy, normal form, Jacobi, cocycles, cocycle vs bracket (200 each), "
                       f"pairing rank 3; {report.failures} failures")
    assert ok, (missing, short, report.render())


def test_criterion_8_operator_homotopy(report_line):
    report, secs = _suite("ophom")
    ok, _, _ = _all_clean(report, ["factor_through_d with Properties 1 and 2 at every stage"], 50)
    ok = ok and "Euler eigenvalue check, n <= 3, k <= 2, l <= 3" in _rows(report) and secs < 120
    report_line(8, ok, f"50 factorisations verified to degree order+2 with per-stage properties, "
                       f"Euler check exhaustive; {report.failures} failures, {secs:.1f}s (limit 120s)")
    assert ok, report.render()


def test_criterion_9_determinism(report_line):
    cmd = [sys.executable, "-m", "volform.cli", "verify", "--seed", "1"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    ok = first.returncode == second.returncode == 0 and first.stdout == second.stdout
    report_line(9, ok, f"verify --seed 1 twice: exit codes {first.returncode},{second.returncode}, "
                       f"{'byte-identical' if first.stdout == second.stdout else 'outputs differ'} "
                       f"({len(first.stdout)} bytes)")
    assert ok, first.stderr.decode() + second.stderr.decode()
