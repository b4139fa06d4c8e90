"""Independent-set structure for G(n,3,1).

An independent set splits into groups with pairwise disjoint supports:
type 1 (at least three members through a common kernel pair), type 2
(members inside one 4-element support) and type 3 (pairwise disjoint
triples).  Star sets are the independent sets that decompose without
type-2 groups; their diameter is the support size, and d(W) is the
largest diameter over star subsets of W.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence

from .core import (
    CapExceeded,
    GraphParams,
    Triple,
    VertexSet,
    count_edges,
    vertex_mask,
)

TYPE1 = "type1"
TYPE2 = "type2"
TYPE3 = "type3"

FULL = "Full"
INCOMPLETE = "Incomplete"
DEGENERATE = "Degenerate"

MIS_CAP_DEFAULT = 4000
DIAMETER_CAP_DEFAULT = 2000
ALPHA_CAP_DEFAULT = 9


class DecompositionError(ValueError):
    """A proposed decomposition violates the structure conditions."""


@dataclass(frozen=True)
class TypedGroup:
    kind: str
    members: tuple[Triple, ...]
    support: frozenset[int]


@dataclass(frozen=True)
class Decomposition:
    n: int
    groups: tuple[TypedGroup, ...]

    def by_kind(self, kind: str) -> tuple[TypedGroup, ...]:
        return tuple(g for g in self.groups if g.kind == kind)


def is_independent(W: VertexSet) -> bool:
    return count_edges(W) == 0


def _local_adjacency(W: VertexSet) -> tuple[tuple[int, ...], list[int]]:
    ranks = W.sorted_ranks()
    masks = W.masks()
    m = len(ranks)
    adj = [0] * m
    for i in range(m):
        mi = masks[i]
        for j in range(i + 1, m):
            if (mi & masks[j]).bit_count() == 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return ranks, adj


def _clique_cover_bound(cand: int, adj: list[int]) -> int:
    # number of greedy cliques covering cand; an upper bound on alpha(cand)
    bound = 0
    rest = cand
    while rest:
        v = (rest & -rest).bit_length() - 1
        rest &= ~(1 << v)
        common = adj[v] & rest
        while common:
            u = (common & -common).bit_length() - 1
            rest &= ~(1 << u)
            common &= adj[u] & rest
        bound += 1
    return bound


def _greedy_pick(adj: list[int], order: Sequence[int]) -> int:
    picked = 0
    for i in order:
        if not (adj[i] & picked):
            picked |= 1 << i
    return picked


def max_independent_set(W: VertexSet, cap: int = MIS_CAP_DEFAULT) -> VertexSet:
    """A maximum independent subset of W, by branch and bound.

    Deterministic: vertices are scanned in rank order and the greedy
    clique-cover bound prunes.  Raises CapExceeded for |W| > cap.
    """
    m = len(W)
    if m == 0:
        return VertexSet(W.n, frozenset())
    if m > cap:
        raise CapExceeded(f"exact search capped at |W| <= {cap}, got {m}")
    ranks, adj = _local_adjacency(W)

    best_mask = _greedy_pick(adj, range(m))
    best_count = best_mask.bit_count()

    def dfs(cand: int, cnt: int, picked: int) -> None:
        nonlocal best_mask, best_count
        if cnt > best_count:
            best_count, best_mask = cnt, picked
        while cand:
            if cnt + _clique_cover_bound(cand, adj) <= best_count:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= ~(1 << v)
            dfs(cand & ~adj[v], cnt + 1, picked | (1 << v))

    dfs((1 << m) - 1, 0, 0)
    chosen = frozenset(ranks[i] for i in range(m) if best_mask >> i & 1)
    return VertexSet(W.n, chosen)


def greedy_maximal_independent_set(
    W: VertexSet, order: Optional[Sequence[int]] = None
) -> VertexSet:
    """Greedy maximal independent subset, scanning ranks in the given order.

    order is a permutation of W's ranks (default: ascending rank).
    """
    ranks, adj = _local_adjacency(W)
    index = {r: i for i, r in enumerate(ranks)}
    if order is None:
        scan = range(len(ranks))
    else:
        if sorted(order) != list(ranks):
            raise ValueError("order must be a permutation of W's ranks")
        scan = [index[r] for r in order]
    picked = _greedy_pick(adj, scan)
    return VertexSet(W.n, frozenset(ranks[i] for i in range(len(ranks)) if picked >> i & 1))


def is_maximal_independent(W: VertexSet, I: VertexSet) -> bool:
    """True when I is independent in W and no vertex of W\\I can be added."""
    if not I.ranks <= W.ranks or not is_independent(I):
        return False
    imasks = I.masks()
    table_masks = dict(zip(W.sorted_ranks(), W.masks()))
    for r in W.ranks - I.ranks:
        m = table_masks[r]
        if all((m & im).bit_count() != 1 for im in imasks):
            return False
    return True


@lru_cache(maxsize=None)
def _alpha_value(n: int) -> int:
    return len(max_independent_set(VertexSet.full(n), cap=10**9))

def alpha_exact(params: GraphParams, cap: int = ALPHA_CAP_DEFAULT) -> int:
    """Exact independence number, capped by ground-set size."""
    if params.n > cap:
        raise CapExceeded(f"exact alpha capped at n <= {cap}, got n={params.n}")
    return _alpha_value(params.n)


def alpha_star_lower_bound(n: int) -> int:
    """n - 2, from the single-kernel star {1,2,x}.  alpha(n) is ~ n."""
    return n - 2


def all_maximum_independent_sets(W: VertexSet, cap: int = 300) -> list[VertexSet]:
    """Every maximum independent subset of W.  Exponential; small W only."""
    m = len(W)
    if m > cap:
        raise CapExceeded(f"enumeration capped at |W| <= {cap}, got {m}")
    if m == 0:
        return [VertexSet(W.n, frozenset())]
    ranks, adj = _local_adjacency(W)
    alpha = len(max_independent_set(W))
    found: list[int] = []

    def dfs(cand: int, cnt: int, picked: int) -> None:
        if cnt == alpha:
            found.append(picked)
            return
        if cnt + _clique_cover_bound(cand, adj) < alpha:
            return
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= ~(1 << v)
            dfs(cand & ~adj[v], cnt + 1, picked | (1 << v))
            if cnt + _clique_cover_bound(cand, adj) < alpha:
                return

    dfs((1 << m) - 1, 0, 0)
    out = []
    for picked in found:
        out.append(VertexSet(W.n, frozenset(ranks[i] for i in range(m) if picked >> i & 1)))
    out.sort(key=lambda s: s.sorted_ranks())
    return out


# ---------------------------------------------------------------------------
# decomposition


def _share2_components(masks: Sequence[int]) -> list[list[int]]:
    # connected components under "shares exactly 2 elements"
    m = len(masks)
    parent = list(range(m))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if (masks[i] & masks[j]).bit_count() == 2:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    comps: dict[int, list[int]] = {}
    for i in range(m):
        comps.setdefault(find(i), []).append(i)
    return [comps[k] for k in sorted(comps)]


def _group(kind: str, members: Iterable[Triple]) -> TypedGroup:
    ms = tuple(sorted(members))
    support = frozenset(e for t in ms for e in t)
    return TypedGroup(kind=kind, members=ms, support=support)


def decompose(U: VertexSet) -> Decomposition:
    """Greedy structure decomposition of an independent set.

    Kernel pairs held by at least three members come out first as type-1
    groups (largest group first, ties by smallest pair), the remaining
    share-2 components become type-2 groups, and all leftover pairwise
    disjoint triples form one type-3 group.
    """
    if not is_independent(U):
        raise ValueError("decompose needs an independent set")
    remaining = set(U.triples())
    groups: list[TypedGroup] = []

    while True:
        pair_count: dict[tuple[int, int], int] = {}
        for t in remaining:
            for p in combinations(t, 2):
                pair_count[p] = pair_count.get(p, 0) + 1
        best: Optional[tuple[int, tuple[int, int]]] = None
        for p, k in pair_count.items():
            if k >= 3 and (best is None or (-k, p) < best):
                best = (-k, p)
        if best is None:
            break
        i, j = best[1]
        members = [t for t in remaining if i in t and j in t]
        remaining.difference_update(members)
        groups.append(_group(TYPE1, members))

    rest = sorted(remaining)
    masks = [vertex_mask(t) for t in rest]
    singles: list[Triple] = []
    for comp in _share2_components(masks):
        if len(comp) >= 2:
            groups.append(_group(TYPE2, (rest[i] for i in comp)))
        else:
            singles.append(rest[comp[0]])
    if singles:
        groups.append(_group(TYPE3, singles))
    return Decomposition(n=U.n, groups=tuple(groups))


def validate_decomposition(U: VertexSet, dec: Decomposition) -> None:
    """Check the Claim-1 conditions; raise DecompositionError on failure."""
    if dec.n != U.n:
        raise DecompositionError("ground-set size mismatch")
    everything = [t for g in dec.groups for t in g.members]
    if len(everything) != len(set(everything)):
        raise DecompositionError("a vertex appears in two groups")
    if set(everything) != set(U.triples()):
        raise DecompositionError("groups do not partition the input set")
    for g in dec.groups:
        support = frozenset(e for t in g.members for e in t)
        if support != g.support:
            raise DecompositionError(f"stored support wrong for {g.kind} group")
        if g.kind == TYPE1:
            if len(g.members) < 3:
                raise DecompositionError("type-1 group with fewer than 3 members")
            common = set(g.members[0])
            for t in g.members[1:]:
                common &= set(t)
            if len(common) < 2:
                raise DecompositionError("type-1 group lacks a common kernel pair")
        elif g.kind == TYPE2:
            if len(g.members) < 2:
                raise DecompositionError("type-2 group with fewer than 2 members")
            if len(g.support) > 4:
                raise DecompositionError("type-2 support exceeds 4 elements")
        elif g.kind == TYPE3:
            for a, b in combinations(g.members, 2):
                if set(a) & set(b):
                    raise DecompositionError("type-3 members are not pairwise disjoint")
        else:
            raise DecompositionError(f"unknown group kind {g.kind!r}")
    for ga, gb in combinations(dec.groups, 2):
        if ga.support & gb.support:
            raise DecompositionError("group supports are not pairwise disjoint")
    if not is_independent(U):
        raise DecompositionError("input set is not independent")


def classify_type2(group: TypedGroup) -> str:
    """Full (4 members), Incomplete (3) or Degenerate (2)."""
    if group.kind != TYPE2:
        raise ValueError(f"classify_type2 needs a type-2 group, got {group.kind}")
    size = len(group.members)
    if size == 4:
        return FULL
    if size == 3:
        return INCOMPLETE
    if size == 2:
        return DEGENERATE
    raise ValueError(f"type-2 group of impossible size {size}")


def classify_element(e: int, group: TypedGroup) -> str:
    """Full when e lies in exactly three members of the group."""
    if group.kind != TYPE2:
        raise ValueError("classify_element needs a type-2 group")
    if e not in group.support:
        raise ValueError(f"element {e} outside the group support")
    cnt = sum(1 for t in group.members if e in t)
    return FULL if cnt == 3 else INCOMPLETE


# ---------------------------------------------------------------------------
# star sets and diameters


def _star_shape(masks: Sequence[int]) -> tuple[bool, bool, int]:
    """(dead, valid, singles) for a set of member masks.

    dead: some share-2 component of size >= 2 has no common kernel pair;
    no superset can ever be a star set then.  valid: every component is a
    singleton or a kernel-pair group of size >= 3.  singles counts the
    singleton components.
    """
    comps = _share2_components(masks)
    valid = True
    singles = 0
    for comp in comps:
        if len(comp) == 1:
            singles += 1
            continue
        common = masks[comp[0]]
        for i in comp[1:]:
            common &= masks[i]
        if common.bit_count() < 2:
            return True, False, singles
        if len(comp) < 3:
            valid = False
    return False, valid, singles


def is_star_set(A: VertexSet, strict: bool = False) -> bool:
    """True when A decomposes using only type-1 and type-3 groups.

    Equivalent shape condition: A is independent and every share-2
    component is a singleton or has all members through one kernel pair
    with at least 3 members.  strict additionally refuses a lone leftover
    triple (it would need a one-member type-3 group).
    """
    if len(A) == 0:
        return True
    if not is_independent(A):
        return False
    masks = [vertex_mask(t) for t in A.triples()]
    dead, valid, singles = _star_shape(masks)
    if dead or not valid:
        return False
    if strict and singles == 1:
        return False
    return True


def star_diameter(A: VertexSet, strict: bool = False) -> int:
    """Support size of a star set; raises ValueError for non-star input."""
    if not is_star_set(A, strict=strict):
        raise ValueError("star_diameter needs a star set")
    acc = 0
    for m in A.masks():
        acc |= m
    return acc.bit_count()


def is_star_set_by_partition(A: VertexSet, strict: bool = False) -> bool:
    """Definition-literal star test by searching for an actual partition.

    Tries to assign members to kernel-pair groups (>= 3 members each) and
    one pool of pairwise disjoint triples, all supports disjoint.  Used
    as the independent oracle against is_star_set; exponential, small A.
    """
    members = list(A.triples())
    sets = [frozenset(t) for t in members]
    m = len(members)

    def place(idx: int, groups: list[tuple[frozenset[int], set[int], int]],
              pool: set[int], pool_len: int) -> bool:
        if idx == m:
            if any(cnt < 3 for _, _, cnt in groups):
                return False
            if strict and pool_len == 1:
                return False
            return True
        s = sets[idx]
        # into the disjoint pool
        if not (s & pool) and all(not (s & supp) for _, supp, _ in groups):
            pool |= s
            if place(idx + 1, groups, pool, pool_len + 1):
                return True
            pool -= s
        # join an existing group through its kernel
        for gi, (kernel, supp, cnt) in enumerate(groups):
            if kernel <= s:
                third = s - kernel
                if third & pool:
                    continue
                if any(third & other for gj, (_, other, _) in enumerate(groups) if gj != gi):
                    continue
                supp |= third
                groups[gi] = (kernel, supp, cnt + 1)
                if place(idx + 1, groups, pool, pool_len):
                    return True
                groups[gi] = (kernel, supp - third, cnt)
                supp -= third
        # open a new group on one of the three kernel pairs
        if not (s & pool) and all(not (s & supp) for _, supp, _ in groups):
            for kernel in combinations(sorted(s), 2):
                groups.append((frozenset(kernel), set(s), 1))
                if place(idx + 1, groups, pool, pool_len):
                    return True
                groups.pop()
        return False

    if m == 0:
        return True
    if not is_independent(A):
        return False
    return place(0, [], set(), 0)


def diameter(W: VertexSet, *, strict: bool = False, cap: int = DIAMETER_CAP_DEFAULT) -> int:
    """d(W): the largest support size over star subsets of W.  Exact.

    Branch and bound over members in rank order.  The optimistic bound is
    the support reachable from the remaining suffix; subtrees whose
    partial set already contains a kernel-less share-2 component are
    dropped.  Raises CapExceeded for |W| > cap.
    """
    m = len(W)
    if m == 0:
        return 0
    if m > cap:
        raise CapExceeded(f"exact diameter capped at |W| <= {cap}, got {m}")
    masks = [vertex_mask(t) for t in W.triples()]
    suffix = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] | masks[i]
    best = 0

    def dfs(start: int, chosen: list[int], used: int) -> None:
        nonlocal best
        for i in range(start, m):
            if (used | suffix[i]).bit_count() <= best:
                return
            mi = masks[i]
            if any((mi & c).bit_count() == 1 for c in chosen):
                continue
            chosen.append(mi)
            dead, valid, singles = _star_shape(chosen)
            if dead:
                chosen.pop()
                continue
            if valid and not (strict and singles == 1):
                score = (used | mi).bit_count()
                if score > best:
                    best = score
            dfs(i + 1, chosen, used | mi)
            chosen.pop()

    dfs(0, [], 0)
    return best


def diameter_bruteforce(W: VertexSet, strict: bool = False) -> int:
    """Oracle d(W): enumerate independent subsets, keep partition-checked stars."""
    masks = [vertex_mask(t) for t in W.triples()]
    tris = W.triples()
    m = len(masks)
    best = 0

    def dfs(start: int, idxs: list[int], used: int) -> None:
        nonlocal best
        if idxs:
            sub = VertexSet.from_triples(W.n, [tris[i] for i in idxs])
            if is_star_set_by_partition(sub, strict=strict):
                score = used.bit_count()
                if score > best:
                    best = score
        for i in range(start, m):
            mi = masks[i]
            if any((mi & masks[j]).bit_count() == 1 for j in idxs):
                continue
            idxs.append(i)
            dfs(i + 1, idxs, used | mi)
            idxs.pop()

    dfs(0, [], 0)
    return best


def diameter_lower(W: VertexSet, strict: bool = False) -> int:
    """Greedy certified lower bound for d(W); cheap, never above the exact value."""
    tris = W.triples()
    if not tris:
        return 0
    by_pair: dict[tuple[int, int], list[Triple]] = {}
    for t in tris:
        for p in combinations(t, 2):
            by_pair.setdefault(p, []).append(t)
    used: set[int] = set()
    chosen: list[Triple] = []
    while True:
        cand_pair = None
        cand_thirds: list[int] = []
        for p in sorted(by_pair):
            if used & set(p):
                continue
            thirds = sorted({next(iter(set(mm) - set(p))) for mm in by_pair[p]
                             if not ((set(mm) - set(p)) & used)})
            if len(thirds) >= 3 and (cand_pair is None or len(thirds) > len(cand_thirds)):
                cand_pair, cand_thirds = p, thirds
        if cand_pair is None:
            break
        used.update(cand_pair)
        used.update(cand_thirds)
        chosen.extend(tuple(sorted((*cand_pair, x))) for x in cand_thirds)
    loose: list[Triple] = []
    for t in tris:
        if not (set(t) & used):
            loose.append(t)
            used.update(t)
    if strict and len(loose) == 1:
        used.difference_update(loose[0])
        loose = []
    if not chosen and not loose:
        return 0 if strict else 3
    return len(used)


def r_rho(W: VertexSet, rho: int, *, strict: bool = False,
          cap: int = DIAMETER_CAP_DEFAULT) -> int:
    """count_edges(W) when d(W) <= rho, else the sentinel C(n,5)."""
    if not 0 <= rho <= W.n:
        raise ValueError(f"need 0 <= rho <= n, got rho={rho}, n={W.n}")
    d = diameter(W, strict=strict, cap=cap)
    if d <= rho:
        return count_edges(W)
    return comb(W.n, 5)
