"""Immutable small simple graphs with bitmask adjacency.

Vertices are integers in [0, n); vertex sets are plain ints used as
bitmasks (bit v set <=> vertex v in the set).  Everything here is a pure
function of immutable values, so results can be cached and shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_VERTICES = 62  # one-byte graph6 size limit


def bits(mask: int) -> Iterator[int]:
    """Iterate the set bits of a mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class SmallGraph:
    """A simple loopless undirected graph on at most 62 vertices.

    ``adj[v]`` is the neighbor bitmask of ``v``.  The constructor is not
    validated; use :func:`from_edges` or :meth:`validated` when the input
    is untrusted.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not (0 <= self.n <= MAX_VERTICES):
            raise ValueError(f"vertex count {self.n} outside [0, {MAX_VERTICES}]")

    # -- basic accessors -------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def edge_count(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def validated(self) -> "SmallGraph":
        """Check symmetry, looplessness and mask range; return self."""
        full = self.full_mask
        if len(self.adj) != self.n:
            raise ValueError("adjacency length differs from vertex count")
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"adjacency of {v} mentions vertices >= {self.n}")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric edge ({v}, {u})")
        return self

    # -- neighborhoods ---------------------------------------------------

    def link(self, v: int) -> int:
        return self.adj[v]

    def star(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def antilink(self, v: int) -> int:
        return self.full_mask & ~self.star(v)

    def antistar(self, v: int) -> int:
        return self.antilink(v) | (1 << v)

    def link_of_set(self, s: int) -> int:
        """Union of member links, minus the set itself."""
        out = 0
        for v in bits(s):
            out |= self.adj[v]
        return out & ~s

    def common_neighbors(self, s: int) -> int:
        """Intersection of member links; the empty intersection is everything."""
        out = self.full_mask
        for v in bits(s):
            out &= self.adj[v]
        return out

    def link_rel(self, x: int, ys: tuple[int, ...]) -> int:
        """Link of ``x`` together with every set in ``ys`` containing ``x``."""
        out = self.adj[x]
        xb = 1 << x
        for y in ys:
            if y & xb:
                out |= y
        return out

    def link_rel_set(self, z: int, ys: tuple[int, ...]) -> int:
        out = 0
        for x in bits(z):
            out |= self.link_rel(x, ys)
        return out & ~z

    # -- set predicates ---------------------------------------------------

    def is_clique(self, s: int) -> bool:
        for v in bits(s):
            if s & ~(self.star(v)):
                return False
        return True

    def is_stable(self, s: int) -> bool:
        for v in bits(s):
            if s & self.adj[v]:
                return False
        return True

    def adjacent_sets(self, p: int, q: int) -> bool:
        """Every pair (u in p, v in q) is equal or adjacent."""
        for v in bits(p):
            if q & ~self.star(v):
                return False
        return True

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return len(self.components(self.full_mask)) == 1

    def is_coconnected(self) -> bool:
        if self.n <= 1:
            return True
        return len(self.co_components(self.full_mask)) == 1

    def separates(self, s: int, u: int, v: int) -> bool:
        if s >> u & 1 or s >> v & 1:
            raise ValueError("query vertex inside separator")
        if u == v:
            return False
        rest = self.full_mask & ~s
        comp = self._component_of(u, rest)
        return not comp >> v & 1

    def is_separator(self, s: int) -> bool:
        return len(self.components(self.full_mask & ~s)) >= 2

    # -- components -------------------------------------------------------

    def _component_of(self, v: int, within: int) -> int:
        comp = 1 << v
        frontier = comp
        while frontier:
            grow = 0
            for u in bits(frontier):
                grow |= self.adj[u]
            grow &= within & ~comp
            comp |= grow
            frontier = grow
        return comp

    def components(self, s: int) -> list[int]:
        """Connected components of the subgraph induced on ``s``."""
        out = []
        rest = s
        while rest:
            v = (rest & -rest).bit_length() - 1
            comp = self._component_of(v, s)
            out.append(comp)
            rest &= ~comp
        return out

    def co_components(self, s: int) -> list[int]:
        """Components of the complement graph restricted to ``s``."""
        out = []
        rest = s
        while rest:
            v = (rest & -rest).bit_length() - 1
            comp = 1 << v
            frontier = comp
            while frontier:
                grow = 0
                for u in bits(frontier):
                    grow |= s & ~(self.adj[u] | (1 << u))
                grow &= ~comp
                comp |= grow
                frontier = grow
            out.append(comp)
            rest &= ~comp
        return out

    def distance(self, u: int, v: int) -> int:
        """BFS distance; -1 when disconnected."""
        if u == v:
            return 0
        seen = 1 << u
        frontier = seen
        d = 0
        while frontier:
            d += 1
            grow = 0
            for w in bits(frontier):
                grow |= self.adj[w]
            grow &= ~seen
            if grow >> v & 1:
                return d
            seen |= grow
            frontier = grow
        return -1


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> SmallGraph:
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) outside vertex range")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return SmallGraph(n, tuple(adj))


def empty_graph(n: int) -> SmallGraph:
    return SmallGraph(n, (0,) * n)


def complete_graph(n: int) -> SmallGraph:
    full = (1 << n) - 1
    return SmallGraph(n, tuple(full & ~(1 << v) for v in range(n)))


def cycle_graph(n: int) -> SmallGraph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> SmallGraph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complement(g: SmallGraph) -> SmallGraph:
    full = g.full_mask
    return SmallGraph(g.n, tuple(full & ~(a | (1 << v)) for v, a in enumerate(g.adj)))


def induced(g: SmallGraph, s: int) -> SmallGraph:
    """Subgraph induced on ``s``, relabeled order-preservingly onto [0, |s|)."""
    verts = list(bits(s))
    pos = {v: i for i, v in enumerate(verts)}
    adj = [0] * len(verts)
    for v in verts:
        row = g.adj[v] & s
        for u in bits(row):
            adj[pos[v]] |= 1 << pos[u]
    return SmallGraph(len(verts), tuple(adj))


def restrict_mask(s: int, sub: int) -> int:
    """Rewrite the mask ``s`` in the coordinates of ``induced(g, sub)``."""
    out = 0
    for i, v in enumerate(bits(sub)):
        if s >> v & 1:
            out |= 1 << i
    return out


def subsets_of(mask: int) -> Iterator[int]:
    """All subsets of a mask, ascending as integers."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask
