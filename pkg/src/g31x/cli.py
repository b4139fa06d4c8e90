"""Command line front end: parameter info, bound tables, peeling runs,
and self-verification suites.

Output is deterministic for a fixed configuration: grid cells are
assembled in grid order whatever G31X_THREADS says, and random sampling
always flows through an explicit seed.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Optional, Sequence

from . import bounds as bnd
from .core import (
    CapExceeded,
    GraphParams,
    Triple,
    VertexSet,
    count_edges,
    degree,
    is_edge,
    make_vertex,
    total_edges,
)
from .oracle import BRANCH_AND_BOUND, EXHAUSTIVE, min_edges_exact
from .peeling import AUTO, check_lemma1, check_lemma2, classify_B, peel
from .structure import (
    ALPHA_CAP_DEFAULT,
    DecompositionError,
    alpha_exact,
    alpha_star_lower_bound,
    decompose,
    diameter,
    diameter_bruteforce,
    greedy_maximal_independent_set,
    is_maximal_independent,
    validate_decomposition,
)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_CONFIG = 2

ORACLE_CAP_DEFAULT = 6
PEEL_EXACT_CAP_DEFAULT = 4000

CSV_COLUMNS = (
    "n", "l", "rho", "c", "alpha_used", "oracle",
    "thm1_c12", "thm1_c3_lo", "thm1_c3_hi", "thm1_c4", "thm2_lo",
    "thm3_p1_hi", "thm3_p2_lo", "thm3_p3_lo", "thm3_p4_lo",
    "f1_hi", "f2_lo", "thm4_lo", "peel_total_lo",
)
CSV_HEADER = ",".join(CSV_COLUMNS)


class ConfigError(Exception):
    """Bad flags or input files; maps to exit status 2."""


def _thread_count() -> int:
    raw = os.environ.get("G31X_THREADS")
    if raw is None:
        return 1
    try:
        v = int(raw)
    except ValueError:
        raise ConfigError(f"G31X_THREADS must be an integer, got {raw!r}")
    if v < 1:
        raise ConfigError(f"G31X_THREADS must be >= 1, got {v}")
    return v


def _parallel_map(fn: Callable, items: list) -> list:
    workers = _thread_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        # map preserves input order, so assembly stays deterministic
        return list(ex.map(fn, items))


def _parse_range(text: str, flag: str, allow_step: bool = False) -> list[int]:
    parts = text.split(":")
    want = "A:B:STEP" if allow_step else "A:B"
    if len(parts) not in ((2, 3) if allow_step else (2,)):
        raise ConfigError(f"{flag} expects {want}, got {text!r}")
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise ConfigError(f"{flag} expects integers in {want}, got {text!r}")
    a, b = nums[0], nums[1]
    step = nums[2] if len(nums) == 3 else 1
    if step < 1:
        raise ConfigError(f"{flag} step must be >= 1, got {step}")
    if b < a:
        raise ConfigError(f"{flag} needs A <= B, got {text!r}")
    return list(range(a, b + 1, step))


def _resolve_axis(
    single: Optional[int], rng: Optional[str], flag: str, allow_step: bool = False
) -> list[int]:
    if (single is None) == (rng is None):
        raise ConfigError(f"give exactly one of --{flag} or --{flag}-range")
    if single is not None:
        return [single]
    return _parse_range(rng, f"--{flag}-range", allow_step)


def _write_out(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _fmt(v) -> str:
    if v is None:
        return "NA"
    if isinstance(v, int):
        return str(v)
    return f"{float(v):.6g}"


# ---------------------------------------------------------------- info

def cmd_info(args: argparse.Namespace) -> int:
    if args.n < 3:
        raise ConfigError(f"need n >= 3, got n={args.n}")
    params = GraphParams(args.n)
    cap = args.cap_exact if args.cap_exact is not None else ALPHA_CAP_DEFAULT
    lines = [
        f"n = {params.n}",
        f"vertices = {params.num_vertices}",
        f"degree = {degree(params)}",
        f"edges = {total_edges(params)}",
    ]
    try:
        lines.append(f"alpha = {alpha_exact(params, cap=cap)}")
    except CapExceeded:
        lines.append(
            f"alpha >= {alpha_star_lower_bound(params.n)} "
            f"(exact search capped at n <= {cap})"
        )
    _write_out("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# -------------------------------------------------------------- bounds

def _bounds_row(n: int, l: int, rho: Optional[int], oracle_cap: int) -> dict:
    inp = bnd.BoundInputs(n=n, l=l, rho=rho)
    row: dict[str, object] = {
        "n": n, "l": l, "rho": rho, "c": inp.c, "alpha_used": inp.alpha_used,
    }
    oracle = None
    if n <= oracle_cap:
        try:
            oracle = min_edges_exact(GraphParams(n), l).min_edges
        except CapExceeded:
            oracle = None
    row["oracle"] = oracle
    row["thm1_c12"] = bnd.thm1_case12_main(inp).value
    lo, hi = bnd.thm1_case3_bounds(inp)
    row["thm1_c3_lo"] = lo.value
    row["thm1_c3_hi"] = hi.value
    row["thm1_c4"] = bnd.thm1_case4_main(inp).value
    row["thm2_lo"] = bnd.thm2_lower_main(inp).value
    row["thm3_p1_hi"] = bnd.thm3_pt1_upper_main(inp).value
    row["thm3_p2_lo"] = bnd.thm3_pt2_lower_main(inp).value
    row["thm3_p3_lo"] = bnd.thm3_pt3_lower_main(inp).value
    row["thm3_p4_lo"] = bnd.thm3_pt4_lower(inp).value
    row["f1_hi"] = bnd.formula1_upper(inp).value
    row["f2_lo"] = bnd.formula2_lower(inp).value
    # rho-dependent bounds divide by l, so both need rho and a nonempty W
    if rho is None or l == 0:
        row["thm4_lo"] = None
        row["peel_total_lo"] = None
    else:
        row["thm4_lo"] = bnd.thm4_lower_main(inp).value
        row["peel_total_lo"] = bnd.peeling_total_lower(inp).value
    return row


def cmd_bounds(args: argparse.Namespace) -> int:
    ns = _resolve_axis(args.n, args.n_range, "n")
    ls = _resolve_axis(args.l, args.l_range, "l", allow_step=True)
    for n in ns:
        if n < 3:
            raise ConfigError(f"need n >= 3, got n={n}")
    for l in ls:
        if l < 0:
            raise ConfigError(f"need l >= 0, got l={l}")
    rho = args.rho
    if rho is not None:
        if rho < 0:
            raise ConfigError(f"need rho >= 0, got {rho}")
        bad = [n for n in ns if rho > n]
        if bad:
            raise ConfigError(f"rho={rho} exceeds n for n={bad[0]}")
    oracle_cap = args.cap_exact if args.cap_exact is not None else ORACLE_CAP_DEFAULT
    cells = [(n, l) for n in ns for l in ls if l <= comb(n, 3)]
    rows = _parallel_map(lambda cell: _bounds_row(*cell, rho, oracle_cap), cells)
    if args.format == "csv":
        body = [",".join(_fmt(row[k]) for k in CSV_COLUMNS) for row in rows]
        text = "\n".join([CSV_HEADER] + body) + "\n"
    else:
        payload = [
            {
                k: (row[k] if row[k] is None or isinstance(row[k], int)
                    else float(row[k]))
                for k in CSV_COLUMNS
            }
            for row in rows
        ]
        text = json.dumps(payload, indent=2) + "\n"
    _write_out(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------- peel

def _read_triples(path: str, n: int) -> list[Triple]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}")
    triples = []
    for ln, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.replace(",", " ").split()
        if len(parts) != 3:
            raise ConfigError(f"{path}:{ln}: expected three elements, got {body!r}")
        try:
            a, b, c = (int(p) for p in parts)
            triples.append(make_vertex(a, b, c, n))
        except ValueError as e:
            raise ConfigError(f"{path}:{ln}: {e}")
    if not triples:
        raise ConfigError(f"{path}: no vertices found")
    return triples


def cmd_peel(args: argparse.Namespace) -> int:
    if args.n < 3:
        raise ConfigError(f"need n >= 3, got n={args.n}")
    n = args.n
    nv = comb(n, 3)
    if args.rho is not None and not 0 <= args.rho <= n:
        raise ConfigError(f"need 0 <= rho <= n, got rho={args.rho}")
    if args.infile is not None:
        if args.l is not None:
            raise ConfigError("--in and --l are mutually exclusive")
        W = VertexSet.from_triples(n, _read_triples(args.infile, n))
    elif args.l is not None:
        if args.seed is None:
            raise ConfigError("--seed is required when sampling W with --l")
        if not 0 <= args.l <= nv:
            raise ConfigError(f"need 0 <= l <= C(n,3) = {nv}, got l={args.l}")
        ranks = random.Random(args.seed).sample(range(nv), args.l)
        W = VertexSet(n, frozenset(ranks))
    else:
        W = VertexSet.full(n)
    mode = args.mode if args.mode is not None else AUTO
    cap = args.cap_exact if args.cap_exact is not None else PEEL_EXACT_CAP_DEFAULT
    report = peel(W, mode=mode, rho=args.rho, exact_cap=cap)
    payload = {
        "params": {
            "n": n, "l": len(W), "rho": args.rho, "mode": mode, "seed": args.seed,
        },
        "steps": [
            {
                "i": s.index,
                "alpha": s.alpha,
                "histogram": {str(k): v for k, v in sorted(s.histogram.counts.items())},
                "cross_edges": s.cross_edges,
                "paper_tally": s.paper_tally,
            }
            for s in report.steps
        ],
        "totals": {
            "cross_edges": report.total_cross_edges,
            "bound_total": (
                None if report.bound_total is None else float(report.bound_total)
            ),
            "r_of_W": report.r_of_w,
        },
    }
    _write_out(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


# -------------------------------------------------------------- verify

@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: int = 0
    notes: list[str] = field(default_factory=list)

    def ok(self) -> None:
        self.checks += 1

    def fail(self, note: str) -> None:
        self.checks += 1
        self.failures += 1
        self.notes.append(note)


@dataclass
class VerifyReport:
    suites: list[SuiteResult]
    warnings: list[str]

    @property
    def total_checks(self) -> int:
        return sum(s.checks for s in self.suites)

    @property
    def total_failures(self) -> int:
        return sum(s.failures for s in self.suites)

    @property
    def passed(self) -> bool:
        return self.total_failures == 0


def _random_set(rng: random.Random, n: int, l: int) -> VertexSet:
    return VertexSet(n, frozenset(rng.sample(range(comb(n, 3)), l)))


def _suite_edge_kernel(
    rng: random.Random, n_max: int, samples: int, edge_fn: Optional[Callable]
) -> SuiteResult:
    suite = SuiteResult("edge-kernel")
    ref = edge_fn if edge_fn is not None else is_edge
    for _ in range(samples):
        n = rng.randint(5, max(5, min(n_max, 10)))
        l = rng.randint(0, min(comb(n, 3), 30))
        W = _random_set(rng, n, l)
        tris = W.triples()
        naive = sum(
            1 for i in range(len(tris)) for j in range(i + 1, len(tris))
            if ref(tris[i], tris[j])
        )
        if count_edges(W) == naive:
            suite.ok()
        else:
            suite.fail(f"edge count mismatch at n={n}, W={tris}")
    return suite


def _suite_decomposition(rng: random.Random, n_max: int, samples: int) -> SuiteResult:
    suite = SuiteResult("decomposition")
    for _ in range(samples):
        n = rng.randint(5, max(5, min(n_max, 20)))
        full = VertexSet.full(n)
        order = list(range(comb(n, 3)))
        rng.shuffle(order)
        I = greedy_maximal_independent_set(full, order=order)
        try:
            if not is_maximal_independent(full, I):
                suite.fail(f"greedy set not maximal at n={n}")
                continue
            validate_decomposition(I, decompose(I))
            suite.ok()
        except (DecompositionError, ValueError) as e:
            suite.fail(f"decomposition failed at n={n}: {e}")
    return suite


def _suite_peel_lemmas(rng: random.Random, n_max: int, samples: int) -> SuiteResult:
    suite = SuiteResult("peel-lemmas")
    for _ in range(samples):
        n = rng.randint(5, max(5, min(n_max, 10)))
        l = rng.randint(1, min(comb(n, 3), 40))
        W = _random_set(rng, n, l)
        report = peel(W)
        if sum(s.alpha for s in report.steps) + len(report.remainder) != l:
            suite.fail(f"peel sizes do not add up at n={n}, l={l}")
            continue
        H = W
        good = True
        for step in report.steps:
            hist = classify_B(H, step.extracted)
            if hist.counts.get(0, 0):
                suite.fail(f"non-maximal extraction at n={n}, step {step.index}")
                good = False
                break
            if step.cross_edges != sum(i * c for i, c in hist.counts.items()):
                suite.fail(f"cross-edge tally mismatch at n={n}, step {step.index}")
                good = False
                break
            l1 = check_lemma1(H, step.extracted)
            l2 = check_lemma2(H, step.extracted, rho=n)
            if not (l1.holds and l2.holds):
                suite.fail(f"lemma cap violated at n={n}, step {step.index}")
                good = False
                break
            H = VertexSet(n, H.ranks - step.extracted.ranks)
        if not good:
            continue
        if report.total_cross_edges > count_edges(W):
            suite.fail(f"cross total exceeds edge count at n={n}, l={l}")
        else:
            suite.ok()
    return suite


def _suite_oracle(n_max: int) -> SuiteResult:
    suite = SuiteResult("oracle-crosscheck")
    cells = [(5, l) for l in range(comb(5, 3) + 1)]
    if n_max >= 6:
        cells += [(6, l) for l in (0, 1, 2, 3, 4, 5, 6, 7, 19, 20)]
    for n, l in cells:
        params = GraphParams(n)
        a = min_edges_exact(params, l, method=EXHAUSTIVE).min_edges
        b = min_edges_exact(params, l, method=BRANCH_AND_BOUND).min_edges
        if a == b:
            suite.ok()
        else:
            suite.fail(f"oracle disagreement at n={n}, l={l}: {a} vs {b}")
    return suite


def _suite_diameter(
    rng: random.Random, n_max: int, samples: int, strict: bool
) -> SuiteResult:
    suite = SuiteResult("diameter")
    for _ in range(samples):
        n = rng.randint(5, max(5, min(n_max, 8)))
        l = rng.randint(0, min(comb(n, 3), 9))
        W = _random_set(rng, n, l)
        if diameter(W, strict=strict) == diameter_bruteforce(W, strict=strict):
            suite.ok()
        else:
            suite.fail(f"diameter mismatch at n={n}, W={W.triples()}")
    return suite


def run_verification(
    n: int = 7,
    samples: int = 25,
    seed: Optional[int] = None,
    strict: bool = False,
    edge_fn: Optional[Callable[[Triple, Triple], bool]] = None,
) -> VerifyReport:
    """Run the invariant suites; edge_fn swaps the edge-kernel reference
    predicate (a tamper hook used as a negative control in tests)."""
    if n < 5:
        raise ConfigError(f"verification needs n >= 5, got n={n}")
    if samples < 0:
        raise ConfigError(f"need samples >= 0, got {samples}")
    warnings = []
    rng = random.Random(seed)
    if samples == 0:
        warnings.append("0 samples requested; randomized suites are vacuous")
        suites = [
            SuiteResult("edge-kernel"),
            SuiteResult("decomposition"),
            SuiteResult("peel-lemmas"),
            _suite_oracle(n),
            SuiteResult("diameter"),
        ]
    else:
        suites = [
            _suite_edge_kernel(rng, n, samples, edge_fn),
            _suite_decomposition(rng, n, samples),
            _suite_peel_lemmas(rng, n, samples),
            _suite_oracle(n),
            _suite_diameter(rng, n, samples, strict),
        ]
    return VerifyReport(suites, warnings)


def cmd_verify(args: argparse.Namespace) -> int:
    if args.samples > 0 and args.seed is None:
        raise ConfigError("--seed is required when --samples > 0")
    report = run_verification(
        n=args.n, samples=args.samples, seed=args.seed, strict=args.strict_star
    )
    lines = [f"warning: {w}" for w in report.warnings]
    for s in report.suites:
        lines.append(f"{s.name}: {s.checks} checks, {s.failures} failures")
        lines.extend(f"  {note}" for note in s.notes)
    verdict = "PASS" if report.passed else "FAIL"
    lines.append(f"{verdict} ({report.total_checks} checks, "
                 f"{report.total_failures} failures)")
    _write_out("\n".join(lines) + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


# ---------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="g31x",
        description="Edge-count extremal theory of G(n,3,1): tables, peeling, checks.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    info = sub.add_parser("info", help="graph parameters and alpha at one n")
    info.add_argument("--n", type=int, required=True, help="ground-set size")
    info.add_argument("--cap-exact", type=int, default=None, metavar="N",
                      help="largest n for exact alpha (default 9)")
    info.add_argument("--out", default=None, help="output path (default stdout)")
    info.set_defaults(func=cmd_info)

    b = sub.add_parser("bounds", help="bound table over an (n, l) grid")
    b.add_argument("--n", type=int, default=None)
    b.add_argument("--n-range", default=None, metavar="A:B",
                   help="inclusive range of n")
    b.add_argument("--l", type=int, default=None)
    b.add_argument("--l-range", default=None, metavar="A:B:STEP",
                   help="inclusive range of l, optional step")
    b.add_argument("--rho", type=int, default=None,
                   help="diameter budget for the rho-dependent bounds")
    b.add_argument("--cap-exact", type=int, default=None, metavar="N",
                   help="largest n for exact oracle cells (default 6)")
    b.add_argument("--format", choices=("csv", "json"), default="csv")
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_bounds)

    pe = sub.add_parser("peel", help="run the peeling procedure, emit JSON")
    pe.add_argument("--n", type=int, required=True)
    pe.add_argument("--l", type=int, default=None,
                    help="sample a random W of this size (needs --seed)")
    pe.add_argument("--seed", type=int, default=None)
    pe.add_argument("--in", dest="infile", default=None, metavar="FILE",
                    help="read W as 'a,b,c' lines instead of sampling")
    pe.add_argument("--rho", type=int, default=None)
    pe.add_argument("--mode", choices=("exact", "greedy"), default=None,
                    help="extraction mode (default: exact while small)")
    pe.add_argument("--cap-exact", type=int, default=None, metavar="N",
                    help="largest remainder for exact extraction (default 4000)")
    pe.add_argument("--out", default=None)
    pe.set_defaults(func=cmd_peel)

    v = sub.add_parser("verify", help="run the self-check suites")
    v.add_argument("--n", type=int, default=7, help="largest ground-set size")
    v.add_argument("--samples", type=int, default=25,
                   help="randomized checks per suite (0 skips them)")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--strict-star", action="store_true",
                   help="exclude degenerate single-member star components")
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


def script() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    script()
