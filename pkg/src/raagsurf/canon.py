"""Canonical forms by exhaustive permutation minimization, and
one-per-class enumeration of small graphs.

The canonical code of a graph is the lexicographically least graph6
encoding over all vertex relabelings.  Since the graph6 bytes are a
monotone image of the upper-triangle bit string (column order), it is
equivalent to minimize that bit string, which we do with a breadth-first
frontier over partial placements: at depth k we keep exactly the partial
orders that realize the minimal bit prefix, then extend them by one
vertex.  This is still an exhaustive minimization over all n!
permutations, just with losing branches cut as soon as a bit differs.
"""

from __future__ import annotations

from functools import lru_cache

from . import graph6
from .graph import SmallGraph, bits

CANON_MAX = 10  # permutation method guard


_FIELD = 16  # bits per packed column; columns stay below 2**(CANON_MAX-1)


def _canonical_adj(g: SmallGraph) -> tuple[int, ...]:
    n = g.n
    if n <= 1:
        return g.adj
    adj = g.adj
    full = g.full_mask
    # cols are packed into one integer, _FIELD bits per vertex: field v holds
    # the column of bits vertex v would contribute if placed next.  Extending
    # a placement by v shifts every field left once and ors in v's adjacency
    # row spread across the fields.
    spread = [0] * n
    for v in range(n):
        s = 0
        for u in bits(adj[v]):
            s |= 1 << (_FIELD * u)
        spread[v] = s
    fmask_cache: dict[int, int] = {}

    def fmask(vset: int) -> int:
        m = fmask_cache.get(vset)
        if m is None:
            m = 0
            for v in bits(vset):
                m |= ((1 << _FIELD) - 1) << (_FIELD * v)
            fmask_cache[vset] = m
        return m

    # Frontier entries are (placed, used, packed_cols); all realize the
    # minimal column prefix seen so far.  Two entries with the same used set
    # that give every remaining vertex the same column have identical
    # futures, so duplicates are dropped.
    frontier = [((v,), 1 << v, spread[v]) for v in range(n)]
    for _depth in range(1, n):
        best_col = None
        kept: list[tuple[tuple[int, ...], int, int]] = []
        seen_sigs: set[tuple[int, int]] = set()
        add_sig = seen_sigs.add
        for placed, used, cols in frontier:
            remaining = full & ~used
            sig = (used, cols & fmask(remaining))
            if sig in seen_sigs:
                continue
            add_sig(sig)
            shifted = cols << 1
            rest = remaining
            while rest:
                low = rest & -rest
                rest ^= low
                v = low.bit_length() - 1
                col = (cols >> (_FIELD * v)) & 0xFFFF
                if best_col is None or col < best_col:
                    best_col = col
                    kept = [(placed + (v,), used | low, shifted | spread[v])]
                elif col == best_col:
                    kept.append((placed + (v,), used | low, shifted | spread[v]))
        frontier = kept
    placed = frontier[0][0]
    # placed[k] is the original vertex put at canonical position k
    pos = [0] * n
    for k, v in enumerate(placed):
        pos[v] = k
    new_adj = [0] * n
    for v in range(n):
        row = adj[v]
        nv = pos[v]
        for u in bits(row):
            new_adj[nv] |= 1 << pos[u]
    return tuple(new_adj)


@lru_cache(maxsize=1 << 18)
def canonical_graph(g: SmallGraph) -> SmallGraph:
    """The canonical representative of the isomorphism class of ``g``."""
    if g.n > CANON_MAX:
        raise ValueError("canonicalization size limit")
    return SmallGraph(g.n, _canonical_adj(g))


def canonical_form(g: SmallGraph) -> str:
    """Lexicographically minimal graph6 encoding over all relabelings."""
    return graph6.encode(canonical_graph(g))


def is_isomorphic(g: SmallGraph, h: SmallGraph) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    return canonical_form(g) == canonical_form(h)


ENUMERATE_MAX = 8


def _augment_chunk(args: tuple[int, list[tuple[int, ...]]]) -> dict[str, tuple[int, ...]]:
    """Canonicalize every one-vertex augmentation of the given base graphs."""
    n, bases = args
    seen: dict[str, tuple[int, ...]] = {}
    for adj_base in bases:
        for attach in range(1 << (n - 1)):
            adj = [row | ((attach >> v & 1) << (n - 1)) for v, row in enumerate(adj_base)]
            adj.append(attach)
            cadj = _canonical_adj(SmallGraph(n, tuple(adj)))
            seen.setdefault(graph6.encode(SmallGraph(n, cadj)), cadj)
    return seen


def _jobs() -> int:
    import os

    env = os.environ.get("RAAGSURF_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@lru_cache(maxsize=None)
def enumerate_all(n: int) -> tuple[SmallGraph, ...]:
    """One canonical representative per isomorphism class, sorted by code.

    Built by augmenting the (n-1)-vertex class list with every attachment
    neighborhood for a new vertex and deduplicating by canonical code.  The
    augmentation work may be split across processes; the result is the same
    either way because the merge is keyed purely by canonical code.
    """
    if not (0 <= n <= ENUMERATE_MAX):
        raise ValueError(f"enumerate_all supports 0 <= n <= {ENUMERATE_MAX}")
    if n == 0:
        return (SmallGraph(0, ()),)
    bases = [g.adj for g in enumerate_all(n - 1)]
    jobs = _jobs()
    seen: dict[str, tuple[int, ...]] = {}
    if jobs > 1 and n >= 8 and len(bases) >= jobs:
        import multiprocessing as mp

        chunks = [(n, bases[i::jobs]) for i in range(jobs)]
        with mp.get_context("fork").Pool(jobs) as pool:
            for part in pool.map(_augment_chunk, chunks):
                seen.update(part)
    else:
        seen = _augment_chunk((n, bases))
    return tuple(SmallGraph(n, seen[k]) for k in sorted(seen))
