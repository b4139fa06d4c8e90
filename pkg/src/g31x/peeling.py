"""Iterated independent-set peeling and the neighbor-count bookkeeping.

classify_B histograms the vertices outside an independent set I by their
neighbor count into I; the two lemma checks compare the light classes
(B1 + B2) against 35 n^2 and the heavy class B3 against rho^3/6 + 20 n^2.
peel extracts independent sets step by step and records, per step, the
exact cross edge count next to the coarse 4/3/2-weighted tally.  The
tally can overshoot on B1 vertices, so it is bookkeeping only; certified
totals always come from cross_edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .core import (
    Triple,
    VertexSet,
    count_edges,
    cross_edges,
    vertex_mask,
)
from .bounds import BoundInputs, peeling_total_lower
from .structure import (
    TYPE1,
    TYPE2,
    TYPE3,
    DEGENERATE,
    FULL,
    Decomposition,
    classify_element,
    classify_type2,
    greedy_maximal_independent_set,
    is_independent,
    max_independent_set,
)

EXACT_MAX = "exact"
GREEDY_MAXIMAL = "greedy"
AUTO = "auto"

B3_CASE_LABELS = (
    "Full2-∩1",
    "Full2-∩2",
    "Incomplete2-∩1-FullElem",
    "Incomplete2-∩1-IncompleteElem",
    "Incomplete2-∩2",
    "NoType2-InsideX",
    "NoType2-∩X=1",
    "NoType2-∩X=2",
)


@dataclass(frozen=True)
class BHistogram:
    """Counts of outside vertices by neighbor count into I."""

    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def f_low(self) -> int:
        """Vertices with at most 2 neighbors in I (B0 + B1 + B2)."""
        return sum(v for k, v in self.counts.items() if k <= 2)

    @property
    def f_three(self) -> int:
        return self.counts.get(3, 0)


class LemmaCheck(NamedTuple):
    holds: bool
    lhs: int
    cap: Fraction


@dataclass(frozen=True)
class PeelStep:
    index: int
    extracted: VertexSet
    alpha: int
    histogram: BHistogram
    cross_edges: int
    paper_tally: int
    method: str


@dataclass(frozen=True)
class PeelReport:
    n: int
    l: int
    mode: str
    steps: tuple[PeelStep, ...]
    t_target: int
    total_cross_edges: int
    bound_total: Optional[Fraction]
    r_of_w: int
    remainder: VertexSet


def classify_B(H: VertexSet, I: VertexSet) -> BHistogram:
    """Histogram {i: |B_i|} over H \\ I, where B_i collects the vertices
    with exactly i neighbors in I."""
    if H.n != I.n:
        raise ValueError("classify_B needs sets on the same ground set")
    if not I.ranks <= H.ranks:
        raise ValueError("I must be a subset of H")
    if not is_independent(I):
        raise ValueError("I must be independent")
    imasks = I.masks()
    counts: dict[int, int] = {}
    table = dict(zip(H.sorted_ranks(), H.masks()))
    for r in sorted(H.ranks - I.ranks):
        m = table[r]
        k = sum(1 for im in imasks if (m & im).bit_count() == 1)
        counts[k] = counts.get(k, 0) + 1
    return BHistogram(counts)


def _require_maximal(hist: BHistogram) -> None:
    if hist.counts.get(0, 0):
        raise ValueError("I is not maximal in H (some outside vertex has no neighbor in I)")


def check_lemma1(H: VertexSet, I: VertexSet) -> LemmaCheck:
    """|B1| + |B2| against 35 n^2 for a maximal independent I in H."""
    hist = classify_B(H, I)
    _require_maximal(hist)
    lhs = hist.counts.get(1, 0) + hist.counts.get(2, 0)
    cap = Fraction(35 * H.n**2)
    return LemmaCheck(lhs <= cap, lhs, cap)


def check_lemma2(H: VertexSet, I: VertexSet, rho: int) -> LemmaCheck:
    """|B3| against rho^3/6 + 20 n^2.  The caller vouches for d(H) <= rho."""
    if not 0 <= rho <= H.n:
        raise ValueError(f"need 0 <= rho <= n, got rho={rho}")
    hist = classify_B(H, I)
    _require_maximal(hist)
    lhs = hist.counts.get(3, 0)
    cap = Fraction(rho**3, 6) + 20 * H.n**2
    return LemmaCheck(lhs <= cap, lhs, cap)


def classify_b3_case(w: Triple, I: VertexSet, dec: Decomposition) -> str:
    """First matching case label for a vertex w with exactly 3 neighbors in I.

    Order: full type-2 intersections by size, then incomplete ones (the
    1-element case split by whether the met element lies in three of the
    group's members), then position against X, the support union of the
    type-1 and type-3 groups.
    """
    if dec.n != I.n:
        raise ValueError("decomposition and I disagree on ground-set size")
    mw = vertex_mask(w)
    k = sum(1 for m in I.masks() if (mw & m).bit_count() == 1)
    if k != 3:
        raise ValueError(f"w must have exactly 3 neighbors in I, found {k}")
    ws = set(w)

    full2, inc2 = [], []
    for g in dec.by_kind(TYPE2):
        cls = classify_type2(g)
        if cls == DEGENERATE:
            if g.support & ws:
                raise ValueError("degenerate type-2 group meets w; taxonomy undefined")
            continue
        (full2 if cls == FULL else inc2).append(g)

    for g in full2:
        if len(g.support & ws) == 1:
            return "Full2-∩1"
    for g in full2:
        if len(g.support & ws) == 2:
            return "Full2-∩2"
    for g in inc2:
        inter = g.support & ws
        if len(inter) == 1:
            e = next(iter(inter))
            if classify_element(e, g) == FULL:
                return "Incomplete2-∩1-FullElem"
            return "Incomplete2-∩1-IncompleteElem"
    for g in inc2:
        if len(g.support & ws) == 2:
            return "Incomplete2-∩2"
    if any(g.support & ws for g in full2 + inc2):
        raise ValueError("w meets a type-2 support in 3 elements; impossible for B3")

    x_support: set[int] = set()
    for g in dec.groups:
        if g.kind in (TYPE1, TYPE3):
            x_support |= g.support
    inter = len(x_support & ws)
    if inter == 3:
        return "NoType2-InsideX"
    if inter == 1:
        return "NoType2-∩X=1"
    if inter == 2:
        return "NoType2-∩X=2"
    raise ValueError("w has 3 neighbors in I but meets no group support")


def peel(
    W: VertexSet,
    mode: str = AUTO,
    steps: Optional[int] = None,
    rho: Optional[int] = None,
    exact_cap: int = 4000,
) -> PeelReport:
    """Iteratively extract independent sets from W and account the edges.

    mode "exact" always takes a maximum independent subset, "greedy" a
    rank-order maximal one, "auto" takes exact while the remainder fits
    under exact_cap.  Runs until the remainder is empty unless steps
    limits it.  The target step count floor(l/n) is reported either way.
    """
    if mode not in (EXACT_MAX, GREEDY_MAXIMAL, AUTO):
        raise ValueError(f"unknown peel mode {mode!r}")
    n, l = W.n, len(W)
    remainder = W
    out: list[PeelStep] = []
    total_cross = 0
    i = 0
    while len(remainder) and (steps is None or i < steps):
        i += 1
        if mode == EXACT_MAX or (mode == AUTO and len(remainder) <= exact_cap):
            extracted = max_independent_set(remainder, cap=exact_cap)
            method = EXACT_MAX
        else:
            extracted = greedy_maximal_independent_set(remainder)
            method = GREEDY_MAXIMAL
        rest = VertexSet(n, remainder.ranks - extracted.ranks)
        hist = classify_B(remainder, extracted)
        cross = cross_edges(rest, extracted) if len(rest) else 0
        tally = (4 * (len(rest) - hist.f_low - hist.f_three)
                 + 3 * hist.f_three + 2 * hist.f_low)
        out.append(PeelStep(i, extracted, len(extracted), hist, cross, tally, method))
        total_cross += cross
        remainder = rest

    bound_total = None
    if rho is not None and l > 0:
        bound_total = peeling_total_lower(BoundInputs(n=n, l=l, rho=rho)).value
    return PeelReport(
        n=n,
        l=l,
        mode=mode,
        steps=tuple(out),
        t_target=l // n,
        total_cross_edges=total_cross,
        bound_total=bound_total,
        r_of_w=count_edges(W),
        remainder=remainder,
    )
