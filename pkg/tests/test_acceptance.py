"""Acceptance gate: nine criteria, one printed PASS/FAIL line each.

Each test collects violations instead of asserting mid-loop so its
verdict line always prints (straight to the real stdout, past pytest's
capture), then fails if anything was collected.  Budgets and tolerances
are pinned next to the checks they govern.
"""

from __future__ import annotations

import json
import random
import sys
import time
from fractions import Fraction
from itertools import combinations
from math import comb

from g31x.bounds import (
    BoundInputs,
    crossover_threshold,
    formula1_upper,
    formula2_lower,
    peeling_total_lower,
    thm2_lower_main,
    thm3_pt1_upper_main,
    thm3_pt4_lower,
    thm4_lower_main,
)
from g31x.cli import main
from g31x.core import GraphParams, VertexSet, adjacency_bitsets, count_edges
from g31x.oracle import BRANCH_AND_BOUND, EXHAUSTIVE, min_edges_exact
from g31x.peeling import check_lemma1, check_lemma2, peel
from g31x.structure import (
    all_maximum_independent_sets,
    alpha_exact,
    decompose,
    diameter,
    diameter_bruteforce,
    greedy_maximal_independent_set,
    r_rho,
    validate_decomposition,
)

SEED = 20260822
CROSSOVER_TARGET = 0.486
CROSSOVER_TOL = 1e-3


def report(num: int, failures: list, elapsed: float, detail: str) -> None:
    verdict = "PASS" if not failures else "FAIL"
    line = f"criterion {num}: {verdict} ({detail}, {elapsed:.2f}s)"
    print(line, file=sys.__stdout__, flush=True)
    assert not failures, f"criterion {num}: {failures[:5]}"


def test_criterion_1_formula_reproduction():
    budget = 5.0
    t0 = time.monotonic()
    failures = []
    for n in range(5, 13):
        adj = adjacency_bitsets(GraphParams(n))
        deg = 3 * comb(n - 3, 2)
        if any(a.bit_count() != deg for a in adj):
            failures.append(f"degree mismatch at n={n}")
        twice = sum(a.bit_count() for a in adj)
        if twice % 2 or (3 * comb(n - 3, 2) * comb(n, 3)) % 2:
            failures.append(f"parity breakdown at n={n}")
        if twice // 2 != 3 * comb(n - 3, 2) * comb(n, 3) // 2:
            failures.append(f"edge total mismatch at n={n}")
    elapsed = time.monotonic() - t0
    if elapsed >= budget:
        failures.append(f"over budget: {elapsed:.2f}s >= {budget}s")
    report(1, failures, elapsed, "degrees and edge totals for n=5..12")


def test_criterion_2_oracle_consistency():
    budget = 600.0
    t0 = time.monotonic()
    failures = []

    # independent exhaustive alpha at n = 6, rank-extension enumeration
    tris = sorted(combinations(range(1, 7), 3), key=lambda t: t[::-1])
    best = 0

    def grow(start, chosen):
        nonlocal best
        best = max(best, len(chosen))
        for i in range(start, len(tris)):
            t = tris[i]
            if all(len(set(t) & set(tris[j])) != 1 for j in chosen):
                chosen.append(i)
                grow(i + 1, chosen)
                chosen.pop()

    grow(0, [])
    if best != 4 or alpha_exact(GraphParams(6)) != 4:
        failures.append(f"alpha(6) disagreement: dfs={best}")

    for n in (5, 6):
        params = GraphParams(n)
        a = alpha_exact(params)
        for l in range(comb(n, 3) + 1):
            ex = min_edges_exact(params, l, method=EXHAUSTIVE)
            bb = min_edges_exact(params, l, method=BRANCH_AND_BOUND)
            if ex.min_edges != bb.min_edges:
                failures.append(f"engines disagree at n={n}, l={l}")
            if (ex.min_edges == 0) != (l <= a):
                failures.append(f"zero set wrong at n={n}, l={l}")
    elapsed = time.monotonic() - t0
    if elapsed >= budget:
        failures.append(f"over budget: {elapsed:.2f}s >= {budget}s")
    report(2, failures, elapsed, "bnb vs exhaustive for n=5,6, all l")


def test_criterion_3_decomposition():
    budget = 300.0
    t0 = time.monotonic()
    failures = []
    exhaustive = 0
    for n in range(5, 9):
        for I in all_maximum_independent_sets(VertexSet.full(n)):
            exhaustive += 1
            try:
                validate_decomposition(I, decompose(I))
            except Exception as e:
                failures.append(f"maximum set at n={n}: {e}")
    rng = random.Random(SEED)
    randomized = 1000
    for _ in range(randomized):
        n = rng.randint(5, 20)
        order = list(range(comb(n, 3)))
        rng.shuffle(order)
        I = greedy_maximal_independent_set(VertexSet.full(n), order=order)
        try:
            validate_decomposition(I, decompose(I))
        except Exception as e:
            failures.append(f"maximal set at n={n}: {e}")
    elapsed = time.monotonic() - t0
    if elapsed >= budget:
        failures.append(f"over budget: {elapsed:.2f}s >= {budget}s")
    report(3, failures, elapsed,
           f"{exhaustive} maximum sets n<=8 + {randomized} random maximal n<=20")


_PEEL_CACHE: list = []


def peel_instances():
    if not _PEEL_CACHE:
        rng = random.Random(SEED + 4)
        runs = []
        for i in range(1000):
            n = rng.randint(6, 12)
            l = rng.randint(1, min(comb(n, 3), 60))
            W = VertexSet(n, frozenset(rng.sample(range(comb(n, 3)), l)))
            steps = rng.choice([None, None, None, rng.randint(1, 3)])
            runs.append((W, peel(W, steps=steps)))
        _PEEL_CACHE.append(runs)
    return _PEEL_CACHE[0]


def test_criterion_4_peeling_soundness():
    budget = 300.0
    t0 = time.monotonic()
    failures = []
    for W, rep in peel_instances():
        seen: set[int] = set()
        for s in rep.steps:
            if seen & s.extracted.ranks:
                failures.append(f"overlapping extraction, n={W.n}")
                break
            seen |= s.extracted.ranks
            if s.cross_edges != sum(k * v for k, v in s.histogram.counts.items()):
                failures.append(f"cross/histogram mismatch, n={W.n}")
        if sum(s.alpha for s in rep.steps) + len(rep.remainder) != len(W):
            failures.append(f"size accounting broken, n={W.n}")
        if rep.total_cross_edges > count_edges(W):
            failures.append(f"cross total exceeds r(W), n={W.n}")
    elapsed = time.monotonic() - t0
    if elapsed >= budget:
        failures.append(f"over budget: {elapsed:.2f}s >= {budget}s")
    report(4, failures, elapsed, f"{len(peel_instances())} seeded peels, n=6..12")


def test_criterion_5_lemma_inequalities():
    t0 = time.monotonic()
    failures = []
    checked = 0
    for W, rep in peel_instances():
        remainder = W
        for s in rep.steps:
            if s.histogram.counts.get(0, 0):
                failures.append(f"B0 nonempty after extraction, n={W.n}")
            one = check_lemma1(remainder, s.extracted)
            two = check_lemma2(remainder, s.extracted, rho=W.n)
            checked += 2
            if not one.holds:
                failures.append(f"lemma1 violated: lhs={one.lhs} cap={one.cap}")
            if not two.holds:
                failures.append(f"lemma2 violated: lhs={two.lhs} cap={two.cap}")
            remainder = VertexSet(W.n, remainder.ranks - s.extracted.ranks)
    elapsed = time.monotonic() - t0
    report(5, failures, elapsed,
           f"{checked} lemma checks, vacuously wide caps at these n")


def test_criterion_6_bound_identities():
    t0 = time.monotonic()
    failures = []
    for n in (10, 23, 50, 77):
        for l in (1, n, comb(n, 3) // 3, comb(n, 3)):
            inp = BoundInputs(n=n, l=l)
            if thm3_pt1_upper_main(inp).value != 3 * thm2_lower_main(inp).value:
                failures.append(f"p1/thm2 != 3 at n={n}, l={l}")
            if inp.c < 1 and formula1_upper(inp).value != 3 * formula2_lower(inp).value:
                failures.append(f"f1/f2 != 3 at n={n}, l={l}")
            if l > 0:
                rinp = BoundInputs(n=n, l=l, rho=0)
                if thm4_lower_main(rinp).value != Fraction(4, 3) * thm2_lower_main(rinp).value:
                    failures.append(f"thm4(rho=0)/thm2 != 4/3 at n={n}, l={l}")
    for inp in (BoundInputs(n=10, l=0), BoundInputs(n=40, l=0)):
        if formula1_upper(inp).value or formula2_lower(inp).value:
            failures.append("formulas nonzero at c=1")
    if thm3_pt4_lower(BoundInputs(n=10, l=60)).value != 0:
        failures.append("part-4 bound nonzero at c=0.5, n=10")
    grid = 0
    for n in range(10, 20):
        nv = comb(n, 3)
        for frac in range(1, 11):
            l = max(1, nv * frac // 10)
            inp = BoundInputs(n=n, l=l, rho=n // 2)
            grid += 1
            if peeling_total_lower(inp).value > thm4_lower_main(inp).value:
                failures.append(f"peel total exceeds thm4 at n={n}, l={l}")
    elapsed = time.monotonic() - t0
    if grid != 100:
        failures.append(f"grid had {grid} points, wanted 100")
    report(6, failures, elapsed, "exact rational identities + 100-point grid")


def test_criterion_7_crossover():
    budget = 1.0
    t0 = time.monotonic()
    failures = []
    x = crossover_threshold(n=10**6)
    elapsed = time.monotonic() - t0
    if abs(x - CROSSOVER_TARGET) > CROSSOVER_TOL:
        failures.append(f"threshold {x:.6f} outside {CROSSOVER_TARGET}+-{CROSSOVER_TOL}")
    if elapsed >= budget:
        failures.append(f"over budget: {elapsed:.2f}s >= {budget}s")
    report(7, failures, elapsed, f"threshold {x:.6f} at n=1e6")


def test_criterion_8_diameter_oracle():
    budget = 300.0
    t0 = time.monotonic()
    failures = []
    rng = random.Random(SEED + 8)
    runs = 500
    for _ in range(runs):
        n = rng.randint(5, 10)
        l = rng.randint(0, 12)
        W = VertexSet(n, frozenset(rng.sample(range(comb(n, 3)), min(l, comb(n, 3)))))
        d = diameter(W)
        if d != diameter_bruteforce(W):
            failures.append(f"diameter mismatch, n={n}, ranks={sorted(W.ranks)}")
        for rho in (0, n // 2, n):
            got = r_rho(W, rho)
            want = comb(n, 5) if d > rho else count_edges(W)
            if got != want:
                failures.append(f"r_rho wrong at n={n}, rho={rho}")
    elapsed = time.monotonic() - t0
    if elapsed >= budget:
        failures.append(f"over budget: {elapsed:.2f}s >= {budget}s")
    report(8, failures, elapsed, f"{runs} seeded sets, |W|<=12, n<=10")


def test_criterion_9_determinism(tmp_path, monkeypatch):
    t0 = time.monotonic()
    failures = []
    bounds_argv = ["bounds", "--n-range", "5:9", "--l-range", "0:60:6", "--rho", "4"]
    peel_argv = ["peel", "--n", "9", "--l", "40", "--seed", "7", "--rho", "5"]
    for label, argv in (("bounds", bounds_argv), ("peel", peel_argv)):
        blobs = []
        for threads in ("1", "2", "8"):
            monkeypatch.setenv("G31X_THREADS", threads)
            out = tmp_path / f"{label}-{threads}.txt"
            code = main(argv + ["--out", str(out)])
            if code != 0:
                failures.append(f"{label} exited {code} at threads={threads}")
                continue
            blobs.append(out.read_bytes())
        if len(set(blobs)) != 1:
            failures.append(f"{label} output varies with thread count")
    # the peel JSON is also stable across repeated runs in one process
    rerun = tmp_path / "peel-again.json"
    main(peel_argv + ["--out", str(rerun)])
    if rerun.read_bytes() != (tmp_path / "peel-1.txt").read_bytes():
        failures.append("peel rerun differs")
    if json.loads(rerun.read_text())["params"]["seed"] != 7:
        failures.append("seed not echoed")
    elapsed = time.monotonic() - t0
    report(9, failures, elapsed, "byte-identical under threads 1/2/8")
