"""Forbidden-subgraph catalog and induced-subgraph search.

The catalog holds the minimal forbidden patterns: cycles of length >= 5
("holes", generated on demand) and eight sporadic graphs on 6 to 8
vertices.  The sporadic adjacency data ships as a data file; at load time
each graph is checked against a set of structural constraints extracted
from the case analyses that justify it, so a corrupted or mistranscribed
file refuses to load.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from itertools import combinations

from . import graph6
from .graph import SmallGraph, bits, complement, cycle_graph, induced, mask_of, path_graph

SPORADIC_NAMES = ("P1_6", "P2_6", "P1_7", "P2_7", "P1_8", "P2_8", "P3_8", "P4_8")


def hole_name(k: int) -> str:
    return f"C{k}"


def is_pattern_name(name: str) -> bool:
    if name in SPORADIC_NAMES:
        return True
    if name.startswith("C"):
        try:
            return 5 <= int(name[1:]) <= 62
        except ValueError:
            return False
    return False


Embedding = tuple[int, ...]  # pattern vertex i -> host vertex


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class ProofConstraints:
    """Structural facts a bundled pattern must satisfy.

    ``antilink_lower_bounds`` lists vertices that must be non-neighbors of a
    vertex; ``antilink_exact`` pins an anti-link completely.  All vertex
    pairs mentioned must be consistent (no pair both edge and non-edge).
    """

    vertex_count: int
    required_edges: frozenset[tuple[int, int]] = frozenset()
    required_nonedges: frozenset[tuple[int, int]] = frozenset()
    antilink_lower_bounds: tuple[tuple[int, tuple[int, ...]], ...] = ()
    antilink_exact: tuple[tuple[int, tuple[int, ...]], ...] = ()
    stable_sets: tuple[tuple[int, ...], ...] = ()

    def all_nonedges(self) -> set[tuple[int, int]]:
        out = {tuple(sorted(p)) for p in self.required_nonedges}
        for v, others in self.antilink_lower_bounds:
            out.update(tuple(sorted((v, u))) for u in others)
        for v, others in self.antilink_exact:
            out.update(tuple(sorted((v, u))) for u in others)
        for s in self.stable_sets:
            out.update(tuple(sorted(p)) for p in combinations(s, 2))
        return out

    def all_edges(self) -> set[tuple[int, int]]:
        out = {tuple(sorted(p)) for p in self.required_edges}
        for v, others in self.antilink_exact:
            absent = set(others) | {v}
            out.update(
                tuple(sorted((v, u))) for u in range(self.vertex_count) if u not in absent
            )
        return out

    def check_consistent(self) -> None:
        overlap = self.all_edges() & self.all_nonedges()
        if overlap:
            raise CatalogError(f"constraints force pair(s) {sorted(overlap)} both ways")

    def violations(self, g: SmallGraph) -> list[str]:
        out = []
        if g.n != self.vertex_count:
            return [f"vertex count {g.n} != {self.vertex_count}"]
        for u, v in sorted(self.all_edges()):
            if not g.has_edge(u, v):
                out.append(f"missing required edge ({u},{v})")
        for u, v in sorted(self.all_nonedges()):
            if g.has_edge(u, v):
                out.append(f"forbidden edge ({u},{v}) present")
        return out


@dataclass(frozen=True)
class ForbiddenCatalog:
    sporadics: tuple[tuple[str, SmallGraph], ...]
    constraints: dict[str, ProofConstraints] = field(default_factory=dict, compare=False)

    def sporadic(self, name: str) -> SmallGraph:
        for nm, g in self.sporadics:
            if nm == name:
                return g
        raise KeyError(name)

    def members_upto(self, n: int) -> list[tuple[str, SmallGraph]]:
        """Holes and sporadics with at most n vertices, in catalog order."""
        out: list[tuple[str, SmallGraph]] = []
        for k in range(5, n + 1):
            out.append((hole_name(k), cycle_graph(k)))
        out.extend((nm, g) for nm, g in self.sporadics if g.n <= n)
        return out


# -- induced subgraph search ---------------------------------------------


def find_induced(h: SmallGraph, g: SmallGraph) -> Embedding | None:
    """Lexicographically least induced embedding of ``h`` into ``g``, or None."""
    if h.n > g.n:
        return None
    hadj = h.adj
    gadj = g.adj
    assigned: list[int] = []
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == h.n:
            return True
        want = hadj[i]
        for v in range(g.n):
            vb = 1 << v
            if used & vb:
                continue
            ok = True
            for j in range(i):
                need = bool(want >> j & 1)
                if bool(gadj[v] >> assigned[j] & 1) != need:
                    ok = False
                    break
            if not ok:
                continue
            assigned.append(v)
            used |= vb
            if extend(i + 1):
                return True
            assigned.pop()
            used &= ~vb
        return False

    if extend(0):
        return tuple(assigned)
    return None


def embedding_valid(h: SmallGraph, g: SmallGraph, emb: Embedding) -> bool:
    if len(emb) != h.n or len(set(emb)) != h.n:
        return False
    return all(
        g.has_edge(emb[i], emb[j]) == h.has_edge(i, j)
        for i in range(h.n)
        for j in range(i + 1, h.n)
    )


def _is_cycle_set(g: SmallGraph, s: int) -> bool:
    """Does ``s`` induce a single cycle (2-regular and connected)?"""
    for v in bits(s):
        if (g.adj[v] & s).bit_count() != 2:
            return False
    return len(g.components(s)) == 1


def long_hole(g: SmallGraph, min_len: int = 5) -> int | None:
    """A vertex set inducing a cycle of length >= min_len, or None.

    Scans subsets in ascending mask order; among hits prefers shorter
    cycles, then smaller masks, so the witness is deterministic.
    """
    if min_len < 4:
        raise ValueError("min_len must be at least 4")
    best: tuple[int, int] | None = None
    for s in range(1 << g.n):
        k = s.bit_count()
        if k < min_len:
            continue
        if best is not None and k > best[0]:
            continue
        if _is_cycle_set(g, s):
            if best is None or (k, s) < best:
                best = (k, s)
    return best[1] if best else None


def has_long_hole(g: SmallGraph, min_len: int = 5) -> bool:
    for s in range(1 << g.n):
        if s.bit_count() >= min_len and _is_cycle_set(g, s):
            return True
    return False


def _cycle_embedding(g: SmallGraph, s: int) -> Embedding:
    """Map the standard cycle onto the induced cycle ``s``, smallest start."""
    start = next(bits(s))
    walk = [start]
    prev = -1
    cur = start
    while len(walk) < s.bit_count():
        nbrs = [u for u in bits(g.adj[cur] & s) if u != prev]
        nxt = min(nbrs) if len(walk) == 1 else [u for u in nbrs][0]
        walk.append(nxt)
        prev, cur = cur, nxt
    return tuple(walk)


def forbidden_witness(
    g: SmallGraph, catalog: ForbiddenCatalog
) -> tuple[str, Embedding] | None:
    """First catalog hit: holes by increasing length, then sporadics by name."""
    holes: dict[int, int] = {}
    for s in range(1 << g.n):
        k = s.bit_count()
        if k >= 5 and k not in holes and _is_cycle_set(g, s):
            holes[k] = s
    if holes:
        k = min(holes)
        return hole_name(k), _cycle_embedding(g, holes[k])
    for name, pat in catalog.sporadics:
        if pat.n <= g.n:
            emb = find_induced(pat, g)
            if emb is not None:
                return name, emb
    return None


def is_forbidden_free(g: SmallGraph, catalog: ForbiddenCatalog) -> bool:
    if has_long_hole(g):
        return False
    return all(
        pat.n > g.n or find_induced(pat, g) is None for _, pat in catalog.sporadics
    )


# -- bundled catalog -------------------------------------------------------

# Anti-link orders and forced continuations quoted by the embedding case
# analyses, plus stability of the cut set, as machine-checkable facts.
_SPORADIC_CONSTRAINTS: dict[str, ProofConstraints] = {
    "P1_6": ProofConstraints(
        vertex_count=6,
        # triangles {0,2,4}, {1,3,5} and the matching 0-3, 1-4, 2-5
        required_edges=frozenset(
            {(0, 2), (0, 4), (2, 4), (1, 3), (1, 5), (3, 5), (0, 3), (1, 4), (2, 5)}
        ),
        required_nonedges=frozenset(
            {(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)}
        ),
    ),
    "P2_6": ProofConstraints(
        vertex_count=6,
        # complement of the 6-vertex path 0-1-2-3-4-5
        antilink_exact=(
            (0, (1,)),
            (1, (0, 2)),
            (2, (1, 3)),
            (3, (2, 4)),
            (4, (3, 5)),
            (5, (4,)),
        ),
    ),
    "P1_7": ProofConstraints(
        vertex_count=7,
        stable_sets=((1, 3),),
        antilink_exact=((5, (3, 6)), (6, (1, 5))),
        antilink_lower_bounds=((1, (4, 6)), (3, (0, 5)), (0, (2, 4)), (4, (0, 2))),
    ),
    "P2_7": ProofConstraints(
        vertex_count=7,
        stable_sets=((1, 3),),
        antilink_exact=((5, (6,)), (6, (1, 3, 5))),
        antilink_lower_bounds=((1, (4, 6)), (3, (0, 6)), (0, (2, 4)), (4, (0, 2))),
    ),
    "P1_8": ProofConstraints(
        vertex_count=8,
        stable_sets=((2, 4),),
        antilink_exact=((0, (4, 7)), (6, (2, 7)), (7, (0, 2, 4, 6))),
        antilink_lower_bounds=((2, (5, 6, 7)), (4, (0, 1, 7)), (1, (3, 5)), (5, (1, 3))),
    ),
    "P2_8": ProofConstraints(
        vertex_count=8,
        antilink_exact=((6, (0, 3)), (7, (1, 2)), (0, (3, 4, 5, 6)), (5, (0, 1, 2, 4))),
        antilink_lower_bounds=((1, (4, 5, 7)), (2, (1, 3, 5, 7)), (3, (2, 4, 6)), (4, (0, 1, 3, 5))),
    ),
    "P3_8": ProofConstraints(
        vertex_count=8,
        stable_sets=((4, 5),),
        antilink_exact=(
            (0, (3, 5, 6)),
            (1, (2, 4, 7)),
            (6, (0, 3, 4)),
            (7, (1, 2, 5)),
        ),
        antilink_lower_bounds=((2, (1, 3, 5, 7)), (3, (0, 2, 4, 6)), (4, (1, 3, 6)), (5, (0, 2, 7))),
    ),
    "P4_8": ProofConstraints(
        vertex_count=8,
        stable_sets=((4, 5),),
        antilink_exact=(
            (1, (2, 4, 7)),
            (6, (0, 3)),
            (7, (1, 2, 5)),
        ),
        antilink_lower_bounds=(
            (0, (3, 5, 6)),
            (2, (1, 3, 5, 7)),
            (3, (0, 2, 4, 6)),
            (4, (0, 1, 3)),
            (5, (0, 2, 7)),
        ),
    ),
}


def sporadic_constraints(name: str) -> ProofConstraints:
    return _SPORADIC_CONSTRAINTS[name]


def parse_catalog(lines, constraints: dict[str, ProofConstraints] | None = None) -> ForbiddenCatalog:
    constraints = _SPORADIC_CONSTRAINTS if constraints is None else constraints
    entries: list[tuple[str, SmallGraph]] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        try:
            name, code = line.split("\t")
        except ValueError:
            raise CatalogError(f"line {lineno}: expected NAME<TAB>graph6")
        if not is_pattern_name(name):
            raise CatalogError(f"line {lineno}: unknown pattern name {name!r}")
        g = graph6.decode(code)
        cons = constraints.get(name)
        if cons is not None:
            cons.check_consistent()
            bad = cons.violations(g)
            if bad:
                raise CatalogError(f"pattern {name}: {bad[0]}")
        entries.append((name, g))
    order = {nm: i for i, nm in enumerate(SPORADIC_NAMES)}
    entries.sort(key=lambda e: order.get(e[0], 99))
    return ForbiddenCatalog(tuple(entries), dict(constraints))


def builtin_catalog() -> ForbiddenCatalog:
    """The bundled catalog, constraint-validated on every load."""
    ref = importlib.resources.files("raagsurf.data").joinpath("forbidden.catalog")
    with ref.open("r") as fh:
        cat = parse_catalog(fh)
    # the two 6-vertex members have closed forms; insist on them
    p16 = cat.sporadic("P1_6")
    if p16.adj != complement(cycle_graph(6)).adj:
        raise CatalogError("P1_6 is not the complement of the 6-cycle")
    p26 = cat.sporadic("P2_6")
    if p26.adj != complement(path_graph(6)).adj:
        raise CatalogError("P2_6 is not the complement of the 6-vertex path")
    if [nm for nm, _ in cat.sporadics] != list(SPORADIC_NAMES):
        raise CatalogError("catalog does not contain exactly the eight sporadic patterns")
    return cat


# -- constraint resolver ----------------------------------------------------


def resolve_from_constraints(
    cons: ProofConstraints,
    minimal: bool = False,
    smaller_members: tuple[tuple[str, SmallGraph], ...] = (),
    deletion_excluded=None,
) -> list[SmallGraph]:
    """All labeled graphs satisfying the constraints; optionally filtered to
    minimal candidates.

    With ``minimal`` set, survivors must be connected, co-connected, free of
    every graph in ``smaller_members`` as an induced subgraph, and (when a
    ``deletion_excluded`` predicate is supplied) have every one-vertex
    deletion accepted by it.
    """
    cons.check_consistent()
    n = cons.vertex_count
    edges = cons.all_edges()
    nonedges = cons.all_nonedges()
    free = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if (u, v) not in edges and (u, v) not in nonedges
    ]
    base = [0] * n
    for u, v in edges:
        base[u] |= 1 << v
        base[v] |= 1 << u
    out = []
    for choice in range(1 << len(free)):
        adj = list(base)
        for i, (u, v) in enumerate(free):
            if choice >> i & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        g = SmallGraph(n, tuple(adj))
        if minimal:
            if not (g.is_connected() and g.is_coconnected()):
                continue
            if has_long_hole(g):
                continue
            if any(find_induced(pat, g) is not None for _, pat in smaller_members if not pat.n > g.n):
                continue
            if deletion_excluded is not None:
                full = g.full_mask
                if not all(
                    deletion_excluded(induced(g, full & ~(1 << v))) for v in range(n)
                ):
                    continue
        out.append(g)
    if not out and not minimal:
        raise CatalogError("constraints unsatisfiable")
    return out


# -- reference transcriptions (used to generate the data file and in tests) --

SPORADIC_EDGES: dict[str, list[tuple[int, int]]] = {
    "P1_7": [(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (1, 5), (2, 5), (4, 5),
             (0, 6), (2, 6), (3, 6), (4, 6)],
    "P2_7": [(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (1, 5), (2, 5), (3, 5),
             (4, 5), (0, 6), (2, 6), (4, 6)],
    "P1_8": [(1, 2), (2, 3), (3, 4), (4, 5), (1, 6), (3, 6), (4, 6), (5, 6),
             (1, 7), (3, 7), (5, 7), (0, 1), (0, 2), (0, 3), (0, 5), (0, 6)],
    "P2_8": [(0, 1), (0, 2), (0, 7), (1, 3), (1, 6), (2, 4), (2, 6), (3, 5),
             (3, 7), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7)],
    "P3_8": [(0, 1), (0, 2), (0, 4), (0, 7), (1, 3), (1, 5), (1, 6), (2, 4),
             (2, 6), (3, 5), (3, 7), (4, 7), (5, 6), (6, 7)],
    "P4_8": [(0, 1), (0, 2), (0, 7), (1, 3), (1, 5), (1, 6), (2, 4), (2, 6),
             (3, 5), (3, 7), (4, 6), (4, 7), (5, 6), (6, 7)],
}


def reference_sporadics() -> list[tuple[str, SmallGraph]]:
    from .graph import from_edges

    out = [("P1_6", complement(cycle_graph(6))), ("P2_6", complement(path_graph(6)))]
    for name in SPORADIC_NAMES[2:]:
        n = int(name[-1])
        out.append((name, from_edges(n, SPORADIC_EDGES[name])))
    return out
