"""Ground truth for r(l) = min edges over the size-l vertex subsets.

Two exact engines: full include/exclude enumeration when the whole graph
has at most 24 vertices (n <= 6), and a seeded branch and bound in rank
order otherwise (n <= 8 by default).  Both return a verified witness.
Heuristic constructions (pair stars, share-2 blocks, mixed) give upper
bound witnesses at any n where the adjacency fits in memory.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable

from .core import (
    CapExceeded,
    GraphParams,
    VertexSet,
    adjacency_bitsets,
    count_edges,
    make_vertex,
    total_edges,
    vertex_rank,
)
from .structure import alpha_exact, max_independent_set

EXHAUSTIVE = "exhaustive"
BRANCH_AND_BOUND = "bnb"

EXHAUSTIVE_MAX_VERTICES = 24
BNB_MAX_N = 8

PAIR_STARS = "pair_stars"
TYPE2_BLOCKS = "type2_blocks"
MIXED = "mixed"
_KIND_ALIASES = {
    "pairstars": PAIR_STARS,
    "type2blocks": TYPE2_BLOCKS,
    "mixed": MIXED,
}


@dataclass(frozen=True)
class OracleResult:
    n: int
    l: int
    min_edges: int
    witness: VertexSet
    method: str


@dataclass(frozen=True)
class Construction:
    """A deterministic size-l witness giving an upper bound on r(l)."""

    kind: str
    n: int
    l: int
    produced: VertexSet
    edge_count: int
    params: dict = field(default_factory=dict)


@lru_cache(maxsize=None)
def _exhaustive_min_table(n: int) -> tuple[tuple[int, int], ...]:
    """(min_edges, witness rank-mask) per subset size, by full enumeration."""
    nv = comb(n, 3)
    if nv > EXHAUSTIVE_MAX_VERTICES:
        raise CapExceeded(
            f"exhaustive oracle capped at {EXHAUSTIVE_MAX_VERTICES} vertices, "
            f"n={n} has {nv}"
        )
    adj = adjacency_bitsets(GraphParams(n))
    best: list[tuple[int, int]] = [(nv * nv, 0)] * (nv + 1)

    def walk(i: int, chosen: int, size: int, edges: int) -> None:
        if i == nv:
            if edges < best[size][0]:
                best[size] = (edges, chosen)
            return
        walk(i + 1, chosen, size, edges)
        d = (adj[i] & chosen).bit_count()
        walk(i + 1, chosen | (1 << i), size + 1, edges + d)

    walk(0, 0, 0, 0)
    return tuple(best)


def _mask_to_set(n: int, mask: int) -> VertexSet:
    ranks = set()
    while mask:
        low = mask & -mask
        ranks.add(low.bit_length() - 1)
        mask ^= low
    return VertexSet(n, frozenset(ranks))


def _min_edges_bnb(n: int, l: int) -> tuple[int, int]:
    """(min edges, witness rank-mask) by seeded branch and bound."""
    nv = comb(n, 3)
    adj = adjacency_bitsets(GraphParams(n))
    a_n = alpha_exact(GraphParams(n))

    seed = min_edges_upper_construction(GraphParams(n), l, MIXED)
    best_e = seed.edge_count
    best_mask = sum(1 << r for r in seed.produced.ranks)
    if best_e == 0:
        return 0, best_mask

    # bound: each further pick costs at least its degree into the current
    # chosen set, and any k extra vertices carry >= k - alpha edges among
    # themselves (delete one endpoint per edge to leave an independent set)
    def walk(i: int, chosen: int, size: int, edges: int) -> None:
        nonlocal best_e, best_mask
        if size == l:
            if edges < best_e:
                best_e, best_mask = edges, chosen
            return
        k = l - size
        if nv - i < k or edges >= best_e:
            return
        floor = edges + max(0, k - a_n)
        if k < nv - i:
            floor += sum(
                heapq.nsmallest(
                    k, ((adj[v] & chosen).bit_count() for v in range(i, nv))
                )
            )
        if floor >= best_e:
            return
        d = (adj[i] & chosen).bit_count()
        walk(i + 1, chosen | (1 << i), size + 1, edges + d)
        walk(i + 1, chosen, size, edges)

    walk(0, 0, 0, 0)
    return best_e, best_mask


def min_edges_exact(
    params: GraphParams, l: int, method: str = "auto"
) -> OracleResult:
    """Exact r(l) with a verified witness.

    method "auto" picks exhaustive enumeration when the vertex count
    allows it, branch and bound for n <= 8 otherwise, and falls back to
    closed forms at the extremes (l <= n-2 via a star, l = C(n,3)).
    """
    n = params.n
    nv = params.num_vertices
    if not 0 <= l <= nv:
        raise ValueError(f"need 0 <= l <= C(n,3) = {nv}, got l={l}")
    if method not in ("auto", EXHAUSTIVE, BRANCH_AND_BOUND):
        raise ValueError(f"unknown oracle method {method!r}")

    if method == "auto":
        if nv <= EXHAUSTIVE_MAX_VERTICES:
            method = EXHAUSTIVE
        elif l <= n - 2:
            # one star {1,2,x} is independent, so the minimum is 0
            w = VertexSet.from_triples(
                n, [make_vertex(1, 2, x, n) for x in range(3, l + 3)]
            )
            return _verified(OracleResult(n, l, 0, w, EXHAUSTIVE))
        elif l == nv:
            return _verified(
                OracleResult(n, l, total_edges(params), VertexSet.full(n), EXHAUSTIVE)
            )
        elif n <= BNB_MAX_N:
            method = BRANCH_AND_BOUND
        else:
            raise CapExceeded(
                f"exact oracle capped at n <= {BNB_MAX_N} away from the extremes, "
                f"got n={n}, l={l}"
            )

    if method == EXHAUSTIVE:
        e, mask = _exhaustive_min_table(n)[l]
    else:
        if n > BNB_MAX_N:
            raise CapExceeded(f"branch and bound capped at n <= {BNB_MAX_N}, got n={n}")
        if l <= alpha_exact(params):
            mis = max_independent_set(VertexSet.full(n), cap=10**9)
            e, mask = 0, sum(1 << r for r in sorted(mis.ranks)[:l])
        else:
            e, mask = _min_edges_bnb(n, l)
    return _verified(OracleResult(n, l, e, _mask_to_set(n, mask), method))


def _verified(res: OracleResult) -> OracleResult:
    assert len(res.witness) == res.l
    assert count_edges(res.witness) == res.min_edges
    return res


def _build_pair_stars(n: int, l: int) -> tuple[VertexSet, dict]:
    # smallest star count g whose pool of thirds covers l; each star keeps
    # its own rotated start so small l stays collision-free
    g = None
    for cand in range(1, n // 2 + 1):
        if cand * (n - 2 * cand) >= l:
            g = cand
            break
    if g is None:
        raise ValueError(f"pair stars cannot reach l={l} at n={n}")
    thirds = list(range(2 * g + 1, n + 1))
    t = len(thirds)
    triples = []
    quota = [l // g + (1 if i < l % g else 0) for i in range(g)]
    for i in range(g):
        start = (i * t) // g
        for j in range(quota[i]):
            x = thirds[(start + j) % t]
            triples.append(make_vertex(2 * i + 1, 2 * i + 2, x, n))
    return VertexSet.from_triples(n, triples), {"stars": g}


def _build_type2_blocks(n: int, l: int) -> tuple[VertexSet, dict]:
    # disjoint 4-element blocks; members pairwise share 2 inside a block
    # and 0 across, so the result is always independent
    if l > 4 * (n // 4):
        raise ValueError(f"share-2 blocks cannot reach l={l} at n={n}")
    triples = []
    b = 0
    while len(triples) < l:
        base = 4 * b
        block = [base + 1, base + 2, base + 3, base + 4]
        for skip in range(4):
            if len(triples) == l:
                break
            kept = [e for k, e in enumerate(block) if k != skip]
            triples.append(make_vertex(*kept, n))
        b += 1
    return VertexSet.from_triples(n, triples), {"blocks": b}


def _build_mixed(n: int, l: int) -> tuple[VertexSet, dict]:
    # blocks, then a star on the leftover elements, then rank-order fill;
    # reaches any l <= C(n,3)
    triples = []
    b = 0
    while b < n // 4 and len(triples) < l:
        base = 4 * b
        block = [base + 1, base + 2, base + 3, base + 4]
        for skip in range(4):
            if len(triples) == l:
                break
            triples.append(make_vertex(*[e for k, e in enumerate(block) if k != skip], n))
        b += 1
    spare = list(range(4 * b + 1, n + 1))
    stars = 0
    if len(triples) < l and len(spare) >= 3:
        stars = 1
        for x in spare[2:]:
            if len(triples) == l:
                break
            triples.append(make_vertex(spare[0], spare[1], x, n))
    ranks = {vertex_rank(t) for t in triples}
    r = 0
    while len(ranks) < l:
        ranks.add(r)
        r += 1
    return VertexSet(n, frozenset(ranks)), {"blocks": b, "stars": stars}


def min_edges_upper_construction(
    params: GraphParams, l: int, kind: str
) -> Construction:
    """A size-l witness of the requested kind and its exact edge count."""
    key = _KIND_ALIASES.get(kind.lower().replace("_", ""))
    if key is None:
        raise ValueError(f"unknown construction kind {kind!r}")
    n = params.n
    if not 0 <= l <= params.num_vertices:
        raise ValueError(f"need 0 <= l <= C(n,3), got l={l}")
    if l == 0:
        produced, extra = VertexSet(n, frozenset()), {}
    elif key == PAIR_STARS:
        produced, extra = _build_pair_stars(n, l)
    elif key == TYPE2_BLOCKS:
        produced, extra = _build_type2_blocks(n, l)
    else:
        produced, extra = _build_mixed(n, l)
    assert len(produced) == l
    return Construction(key, n, l, produced, count_edges(produced), extra)


def min_edges_table(
    ns: Iterable[int], ls: Iterable[int], *, skip_out_of_cap: bool = False
) -> list[OracleResult]:
    """Exact values over a (n, l) grid, sorted by (n, l).

    Cells with l > C(n,3) are skipped; cap overruns raise unless
    skip_out_of_cap drops them.
    """
    out = []
    for n in sorted(set(ns)):
        params = GraphParams(n)
        for l in sorted(set(ls)):
            if l > params.num_vertices:
                continue
            try:
                out.append(min_edges_exact(params, l))
            except CapExceeded:
                if not skip_out_of_cap:
                    raise
    return out
