"""Graph predicates and constructions used by the reduction calculus.

The central notions are set adjacency (two sets are adjacent when every
cross pair is equal or joined by an edge), the set commutator, nuclear
and dense vertex sets, and almost-join decompositions.  Nuclear search
walks orderings depth-first with a failed-prefix memo, which both keeps
it fast and makes the returned witness the lexicographically least
ordering.  Dense search enumerates the characteristic-subgraph families
of all almost-join decompositions once per graph and caches them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import (
    SmallGraph,
    bits,
    complement,
    induced,
    mask_of,
    restrict_mask,
    subsets_of,
)

# -- chordality --------------------------------------------------------------


def chordal_elimination(g: SmallGraph) -> list[int] | None:
    """A perfect elimination ordering, or None when a cycle > 3 is chordless."""
    remaining = g.full_mask
    order = []
    while remaining:
        found = False
        for v in bits(remaining):
            nb = g.adj[v] & remaining
            if g.is_clique(nb):
                order.append(v)
                remaining &= ~(1 << v)
                found = True
                break
        if not found:
            return None
    return order


def is_chordal(g: SmallGraph) -> bool:
    return chordal_elimination(g) is not None


# -- doubling and co-contraction ---------------------------------------------


def double_along(g: SmallGraph, clique: int) -> SmallGraph:
    """Two copies of ``g`` glued along a clique: 2n - |clique| vertices."""
    if not g.is_clique(clique):
        raise ValueError("doubling requires a clique")
    n = g.n
    outside = [v for v in range(n) if not clique >> v & 1]
    copy_pos = {v: n + i for i, v in enumerate(outside)}
    m = n + len(outside)
    adj = [0] * m
    for u, v in g.edges():
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        cu = copy_pos.get(u, u)
        cv = copy_pos.get(v, v)
        adj[cu] |= 1 << cv
        adj[cv] |= 1 << cu
    return SmallGraph(m, tuple(adj))


def central_extension(g: SmallGraph, clique: int) -> SmallGraph:
    """``g`` plus one vertex adjacent exactly to the clique."""
    if not g.is_clique(clique):
        raise ValueError("doubling requires a clique")
    adj = [row | (((clique >> v) & 1) << g.n) for v, row in enumerate(g.adj)]
    adj.append(clique)
    return SmallGraph(g.n + 1, tuple(adj))


def cocontract(g: SmallGraph, u: int, v: int) -> SmallGraph:
    """Merge the non-adjacent pair into one vertex adjacent to their common
    neighbors; the merged vertex is labeled last."""
    if u == v or g.has_edge(u, v):
        raise ValueError("co-contraction requires a non-adjacent pair")
    pair = (1 << u) | (1 << v)
    keep = [w for w in range(g.n) if not pair >> w & 1]
    pos = {w: i for i, w in enumerate(keep)}
    m = len(keep)
    adj = [0] * (m + 1)
    for w in keep:
        row = g.adj[w] & ~pair
        for x in bits(row):
            adj[pos[w]] |= 1 << pos[x]
    common = g.common_neighbors(pair)
    for x in bits(common):
        adj[m] |= 1 << pos[x]
        adj[pos[x]] |= 1 << m
    return SmallGraph(m + 1, tuple(adj))


# -- set commutator -----------------------------------------------------------


def set_commutator(g: SmallGraph, u_set: int, v_set: int) -> int:
    """Union of the co-components of each set not adjacent to the other set."""
    out = 0
    for a, b in ((u_set, v_set), (v_set, u_set)):
        for comp in g.co_components(a):
            if not g.adjacent_sets(comp, b):
                out |= comp
    return out


# -- nuclear sets --------------------------------------------------------------


@dataclass(frozen=True)
class NuclearWitness:
    ordering: tuple[int, ...]
    conditions: tuple[int, ...]  # 1 or 2 per step


def _nuclear_step_ok(g: SmallGraph, prefix: int, x: int, ys: tuple[int, ...]) -> int | None:
    """Condition tag satisfied by appending ``x`` to ``prefix``, or None."""
    lk_y = g.link_rel(x, ys)
    step = prefix | (1 << x)
    if g.common_neighbors(prefix) >> x & 1:
        if g.adjacent_sets(lk_y & ~prefix, step):
            return 1
        return None
    if g.adjacent_sets(lk_y, step):
        return 2
    return None


def is_nuclear(
    g: SmallGraph, vset: int, ys: tuple[int, ...] = ()
) -> NuclearWitness | None:
    """Search all orderings of ``vset`` for one satisfying the two step
    conditions; first witness in lexicographic order, or None."""
    if vset.bit_count() > 8:
        raise ValueError("nuclear ordering scan guard: at most 8 vertices")
    dead: set[int] = set()

    def extend(prefix: int, order: list[int], tags: list[int]) -> bool:
        if prefix == vset:
            return True
        if prefix in dead:
            return False
        for x in bits(vset & ~prefix):
            tag = _nuclear_step_ok(g, prefix, x, ys)
            if tag is None:
                continue
            order.append(x)
            tags.append(tag)
            if extend(prefix | (1 << x), order, tags):
                return True
            order.pop()
            tags.pop()
        dead.add(prefix)
        return False

    order: list[int] = []
    tags: list[int] = []
    if extend(0, order, tags):
        return NuclearWitness(tuple(order), tuple(tags))
    return None


# -- almost joins ---------------------------------------------------------------


@dataclass(frozen=True)
class AlmostJoin:
    core: int
    parts: tuple[tuple[int, int], ...]  # (K_i, L_i)

    def characteristic_subgraphs(self) -> tuple[int, ...]:
        return tuple(li if ki == li else ki for ki, li in self.parts)


def _partitions(items: list[int]):
    """Set partitions of ``items`` (each a bitmask), yielded as mask lists."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in _partitions(rest):
        yield [first] + sub
        for i in range(len(sub)):
            yield sub[:i] + [sub[i] | first] + sub[i + 1:]


def almost_join_decompositions(
    g: SmallGraph, nontrivial_only: bool = False
) -> list[AlmostJoin]:
    """Enumerate almost-join decompositions over all cores.

    Parts are a core L plus a group of components of G - L; the join factors
    are unions of co-components of L, forced by the groups' outside links.
    Leftover co-components are absorbed by the first part, or alternatively
    carried by a degenerate part (K_i = L), which the definition permits.
    """
    if g.n > 10:
        raise ValueError("almost-join enumeration guard: at most 10 vertices")
    full = g.full_mask
    out: list[AlmostJoin] = []
    seen: set[tuple] = set()

    def emit(core: int, parts: list[tuple[int, int]]):
        key = (core, tuple(sorted(parts)))
        if key not in seen:
            seen.add(key)
            out.append(AlmostJoin(core, tuple(sorted(parts))))

    for core in subsets_of(full):
        comps = g.components(full & ~core)
        cocomps = g.co_components(core)
        for groups in _partitions(comps):
            factors = []
            touched = 0
            ok = True
            for grp in groups:
                lk = g.link_of_set(grp)
                f = 0
                for d in cocomps:
                    if d & lk:
                        f |= d
                if f & touched:
                    ok = False
                    break
                touched |= f
                factors.append(f)
            if not ok:
                continue
            leftover = core & ~touched
            if groups:
                # absorb leftovers into the first factor
                plain = list(factors)
                plain[0] |= leftover
                emit(core, [(core | grp, f) for grp, f in zip(groups, plain)])
                if leftover and len(groups) >= 1:
                    emit(
                        core,
                        [(core | grp, f) for grp, f in zip(groups, factors)]
                        + [(core, leftover)],
                    )
            elif core:
                # no outside vertices: the graph itself is the core
                emit(core, [(core, core)])
    if nontrivial_only:
        out = [
            aj
            for aj in out
            if sum(1 for ki, _ in aj.parts if ki != aj.core) >= 2
        ]
    return out


def characteristic_subgraphs(aj: AlmostJoin) -> list[int]:
    return list(aj.characteristic_subgraphs())


@lru_cache(maxsize=1 << 16)
def _characteristic_families(g: SmallGraph) -> tuple[tuple[int, ...], ...]:
    """Deduplicated antichain of characteristic-subgraph families.

    A family dominated by (a superset of) another can never help a dense
    check that the smaller family does not already decide, so only minimal
    families are kept.  The trivial family (the whole vertex set) is always
    present.
    """
    fams: set[frozenset[int]] = {frozenset({g.full_mask})}
    for aj in almost_join_decompositions(g):
        fams.add(frozenset(aj.characteristic_subgraphs()))
    minimal = [
        f for f in fams if not any(o < f for o in fams)
    ]
    return tuple(tuple(sorted(f)) for f in sorted(minimal, key=sorted))


@lru_cache(maxsize=1 << 18)
def _nuclear_cached(g: SmallGraph, vset: int, ys: tuple[int, ...]) -> bool:
    return is_nuclear(g, vset, ys) is not None


def is_dense(
    g: SmallGraph, xset: int, ys: tuple[int, ...] = ()
) -> tuple[bool, tuple[int, ...] | None]:
    """Is some almost-join decomposition's every characteristic subgraph P
    such that X intersected with P is nuclear in P relative to Y cut to P?

    Returns (flag, witness family of characteristic subgraphs).
    """
    for family in _characteristic_families(g):
        good = True
        for p in family:
            sub = induced(g, p)
            xs = restrict_mask(xset & p, p)
            ysub = tuple(restrict_mask(y & p, p) for y in ys)
            ysub = tuple(y for y in ysub if y)
            if not _nuclear_cached(sub, xs, ysub):
                good = False
                break
        if good:
            return True, family
    return False, None


def dense(g: SmallGraph, xset: int, ys: tuple[int, ...] = ()) -> bool:
    return is_dense(g, xset, ys)[0]


# -- separation characterization ------------------------------------------------


def thcw_predicate(g: SmallGraph) -> bool:
    """For every pair at distance 2 and every co-component W of their common
    neighborhood, W plus (common neighbors of W minus the pair) separates."""
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.distance(u, v) != 2:
                continue
            pair = (1 << u) | (1 << v)
            c = g.common_neighbors(pair)
            for w in g.co_components(c):
                sep = w | (g.common_neighbors(w) & ~pair)
                if not g.separates(sep, u, v):
                    return False
    return True


@dataclass(frozen=True)
class TrichotomyRow:
    u: int
    v: int
    w: int
    cond1: bool  # {u} + W separates the graph
    cond2: bool  # {v} + W separates the graph
    cond3: bool  # W' nonempty and W + W' separates u from v


def thcw2_trichotomy(g: SmallGraph) -> list[TrichotomyRow]:
    if not (g.is_connected() and g.is_coconnected()):
        raise ValueError("trichotomy requires a connected and co-connected graph")
    rows = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.distance(u, v) != 2:
                continue
            pair = (1 << u) | (1 << v)
            c = g.common_neighbors(pair)
            for w in g.co_components(c):
                wp = g.common_neighbors(w) & ~pair
                rows.append(
                    TrichotomyRow(
                        u,
                        v,
                        w,
                        g.is_separator(w | (1 << u)),
                        g.is_separator(w | (1 << v)),
                        bool(wp) and g.separates(w | wp, u, v),
                    )
                )
    return rows


def skew_partition(g: SmallGraph) -> tuple[int, int] | None:
    """A partition (A, B) with A inducing a disconnected graph and B inducing
    a co-disconnected one; first hit in ascending mask order, or None."""
    full = g.full_mask
    for a in range(1, full):
        b = full & ~a
        if len(g.components(a)) >= 2 and len(g.co_components(b)) >= 2:
            return a, b
    return None
