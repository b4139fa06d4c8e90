"""Exact combinatorial kernel for the triple graph G(n,3,1).

Vertices are the 3-element subsets of {1..n}; two vertices are adjacent
exactly when the subsets share one element.  Triples are kept canonical
(sorted ascending) and addressed by colexicographic rank, so vertex sets
are plain rank sets and every count here is exact integer arithmetic.

Two routes are kept for the edge counters: an incidence-count kernel that
is linear in the set size, and the naive pairwise double loop.  The naive
versions are the reference oracles in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

Triple = tuple[int, int, int]

# Adjacency bitsets may be materialized up to this ground-set size; the
# quadratic table stops being affordable beyond it.
MATERIALIZE_MAX_N = 60


class CapExceeded(Exception):
    """An exact search or materialization would exceed its configured cap."""


@dataclass(frozen=True)
class GraphParams:
    """Parameters of G(n,3,1); the ground set is {1..n}."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"G(n,3,1) needs n >= 3, got n={self.n}")

    @property
    def num_vertices(self) -> int:
        return comb(self.n, 3)


def make_vertex(a: int, b: int, c: int, n: int) -> Triple:
    """Canonical (sorted) vertex from three distinct elements of {1..n}."""
    if len({a, b, c}) != 3:
        raise ValueError(f"vertex elements must be distinct, got {(a, b, c)}")
    for x in (a, b, c):
        if not 1 <= x <= n:
            raise ValueError(f"element {x} outside 1..{n}")
    x, y, z = sorted((a, b, c))
    return (x, y, z)


def vertex_rank(v: Triple) -> int:
    """Colexicographic rank of a canonical triple; independent of n."""
    a, b, c = v
    return (a - 1) + comb(b - 1, 2) + comb(c - 1, 3)


def vertex_unrank(rank: int) -> Triple:
    """Inverse of vertex_rank."""
    if rank < 0:
        raise ValueError(f"rank must be nonnegative, got {rank}")
    r = rank
    c = 3
    while comb(c, 3) <= r:
        c += 1
    r -= comb(c - 1, 3)
    b = 2
    while comb(b, 2) <= r:
        b += 1
    r -= comb(b - 1, 2)
    return (r + 1, b, c)


def vertex_mask(v: Triple) -> int:
    """Element bitmask of a triple (bit k-1 set for element k)."""
    a, b, c = v
    return (1 << (a - 1)) | (1 << (b - 1)) | (1 << (c - 1))


@lru_cache(maxsize=None)
def _triples(n: int) -> tuple[Triple, ...]:
    # all vertices in rank order (colex sorts by last element first)
    return tuple(sorted(combinations(range(1, n + 1), 3), key=lambda t: t[::-1]))


@lru_cache(maxsize=None)
def _masks(n: int) -> tuple[int, ...]:
    return tuple(vertex_mask(t) for t in _triples(n))


def is_edge(x: Triple, y: Triple) -> bool:
    """True when x and y share exactly one element.  False when x == y."""
    return (vertex_mask(x) & vertex_mask(y)).bit_count() == 1


def degree(params: GraphParams) -> int:
    """Common vertex degree, 3 * C(n-3, 2)."""
    return 3 * comb(params.n - 3, 2)


def total_edges(params: GraphParams) -> int:
    """Edge count of the whole graph, regular so d * |V| / 2."""
    return degree(params) * params.num_vertices // 2


def vertex_neighbors(v: Triple, n: int) -> Iterator[Triple]:
    """All neighbors of v: keep one element of v, add two from outside."""
    others = [x for x in range(1, n + 1) if x not in v]
    for s in v:
        for p, q in combinations(others, 2):
            yield make_vertex(s, p, q, n)


@lru_cache(maxsize=None)
def _adjacency_bitsets(n: int) -> tuple[int, ...]:
    rows = [0] * comb(n, 3)
    for r, t in enumerate(_triples(n)):
        acc = 0
        for u in vertex_neighbors(t, n):
            acc |= 1 << vertex_rank(u)
        rows[r] = acc
    return tuple(rows)


def adjacency_bitsets(params: GraphParams) -> tuple[int, ...]:
    """Rank-indexed adjacency rows as int bitsets.  Capped by memory."""
    if params.n > MATERIALIZE_MAX_N:
        raise CapExceeded(
            f"adjacency materialization capped at n <= {MATERIALIZE_MAX_N}, got n={params.n}"
        )
    return _adjacency_bitsets(params.n)


@dataclass(frozen=True)
class VertexSet:
    """A set of vertices of G(n,3,1), stored as colex ranks."""

    n: int
    ranks: frozenset[int]

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"need n >= 3, got {self.n}")
        top = comb(self.n, 3)
        for r in self.ranks:
            if not 0 <= r < top:
                raise ValueError(f"rank {r} outside 0..{top - 1} for n={self.n}")

    @classmethod
    def from_triples(cls, n: int, triples: Iterable[Iterable[int]]) -> "VertexSet":
        ranks = frozenset(vertex_rank(make_vertex(*t, n=n)) for t in triples)
        return cls(n, ranks)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, frozenset(range(comb(n, 3))))

    def sorted_ranks(self) -> tuple[int, ...]:
        return tuple(sorted(self.ranks))

    def triples(self) -> tuple[Triple, ...]:
        table = _triples(self.n)
        return tuple(table[r] for r in self.sorted_ranks())

    def masks(self) -> tuple[int, ...]:
        table = _masks(self.n)
        return tuple(table[r] for r in self.sorted_ranks())

    def __len__(self) -> int:
        return len(self.ranks)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted_ranks())

    def __contains__(self, item) -> bool:
        if isinstance(item, tuple):
            return vertex_rank(item) in self.ranks
        return item in self.ranks


def _incidence(W: VertexSet) -> tuple[dict[int, int], dict[tuple[int, int], int]]:
    # element and element-pair multiplicities over the members of W
    singles: dict[int, int] = {}
    pairs: dict[tuple[int, int], int] = {}
    for t in W.triples():
        for e in t:
            singles[e] = singles.get(e, 0) + 1
        for p in combinations(t, 2):
            pairs[p] = pairs.get(p, 0) + 1
    return singles, pairs


def count_edges(W: VertexSet) -> int:
    """Induced edge count of W, by incidence counting.

    A pair of distinct triples meeting in s elements is counted s times by
    the element sums and C(s,2) times by the pair sums, and s - 2*C(s,2)
    is 1 exactly at s = 1, so the difference counts the edges.
    """
    singles, pairs = _incidence(W)
    e1 = sum(comb(m, 2) for m in singles.values())
    e2 = sum(comb(m, 2) for m in pairs.values())
    return e1 - 2 * e2


def count_edges_naive(W: VertexSet) -> int:
    """Reference O(|W|^2) double loop over all member pairs."""
    masks = W.masks()
    total = 0
    for i in range(len(masks)):
        mi = masks[i]
        for j in range(i + 1, len(masks)):
            if (mi & masks[j]).bit_count() == 1:
                total += 1
    return total


def neighbor_count(v: Triple, S: VertexSet) -> int:
    """Number of members of S adjacent to v.  v must not belong to S."""
    if v in S:
        raise ValueError(f"neighbor_count is undefined for v in S, got v={v}")
    mv = vertex_mask(v)
    return sum(1 for m in S.masks() if (mv & m).bit_count() == 1)


def cross_edges(A: VertexSet, B: VertexSet) -> int:
    """Edges with one endpoint in A and the other in B (disjoint sets)."""
    if A.n != B.n:
        raise ValueError("cross_edges needs both sets on the same ground set")
    if A.ranks & B.ranks:
        raise ValueError("cross_edges needs disjoint vertex sets")
    sa, pa = _incidence(A)
    sb, pb = _incidence(B)
    e1 = sum(m * sb.get(e, 0) for e, m in sa.items())
    e2 = sum(m * pb.get(p, 0) for p, m in pa.items())
    return e1 - 2 * e2


def cross_edges_naive(A: VertexSet, B: VertexSet) -> int:
    """Reference implementation: sum of neighbor_count over members of A."""
    if A.ranks & B.ranks:
        raise ValueError("cross_edges needs disjoint vertex sets")
    return sum(neighbor_count(t, B) for t in A.triples())
