"""Mechanical re-verification of the embedding case analyses.

A certificate packages a graph, a stable cut set X, a load structure
(total order on the vertices plus partial orders on anti-links, given as
descending chains), and a family of good sets.  The checker enumerates
every simple anti-path in which only the first vertex may lie in X,
accumulates the theta set of the path, and demands that theta minus X
contain some good set applicable to the path's terminal vertex.

Two theta modes exist.  Conservative mode uses only declared anti-link
comparabilities, so a pass is valid for every linear extension of the
declared partial orders at once.  Extension mode completes each partial
order deterministically (global order breaks ties) and uses the total;
it reproduces a specific linear extension and is never stricter than
conservative mode.

Good sets are trusted assertions about cut surfaces; this module checks
coverage, not the surface topology behind them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import graph6
from .graph import SmallGraph, bits, mask_of

CONSERVATIVE = "conservative"
EXTENSION = "extension"


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class LoadStructure:
    """Total vertex order (first = highest) and per-vertex anti-link chains."""

    global_order: tuple[int, ...]
    chains: tuple[tuple[int, tuple[int, ...]], ...] = ()  # (v, descending chain)

    def rank(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.global_order)}

    def above(self, v: int) -> dict[int, set[int]]:
        """For each vertex, the declared strict upper sets of its anti-link
        order: above[v][w] = vertices declared above w in the order at v."""
        out: dict[int, dict[int, set[int]]] = {}
        for v, chain in self.chains:
            rel = out.setdefault(v, {})
            for i, w in enumerate(chain):
                rel.setdefault(w, set()).update(chain[:i])
        # transitive closure within each vertex's relation
        closed: dict[int, dict[int, set[int]]] = {}
        for v, rel in out.items():
            cl: dict[int, set[int]] = {w: set(s) for w, s in rel.items()}
            changed = True
            while changed:
                changed = False
                for w, ups in cl.items():
                    grow = set()
                    for u in ups:
                        grow |= cl.get(u, set())
                    if not grow <= ups:
                        ups |= grow
                        changed = True
            closed[v] = cl
        return closed  # type: ignore[return-value]


@dataclass(frozen=True)
class GoodSet:
    vertices: int
    terminal: int | None  # restrict to anti-paths ending here; None = any
    note: str = ""


@dataclass(frozen=True)
class Certificate:
    graph: SmallGraph
    stable_x: int
    load: LoadStructure
    good_sets: tuple[GoodSet, ...]
    mode: str = CONSERVATIVE
    name: str = ""


def validate_certificate(cert: Certificate) -> None:
    g = cert.graph
    if not g.is_stable(cert.stable_x):
        raise CertificateError(f"{cert.name}: X is not a stable set")
    if sorted(cert.load.global_order) != list(range(g.n)):
        raise CertificateError(f"{cert.name}: global order is not a permutation")
    for v, chain in cert.load.chains:
        al = g.antilink(v)
        for w in chain:
            if not al >> w & 1:
                raise CertificateError(
                    f"{cert.name}: order at {v} mentions {w} outside its anti-link"
                )
        if len(set(chain)) != len(chain):
            raise CertificateError(f"{cert.name}: order chain at {v} repeats a vertex")
    for gs in cert.good_sets:
        if gs.vertices & cert.stable_x:
            raise CertificateError(f"{cert.name}: good set intersects X")
    # declared relations must be acyclic (above() would loop forever otherwise)
    for v, rel in _merged_chains(cert.load).items():
        seen: set[int] = set()
        stack = list(rel)
        order: dict[int, int] = {}
        # simple cycle check via DFS coloring
        color: dict[int, int] = {}

        def dfs(w: int) -> bool:
            color[w] = 1
            for u in rel.get(w, ()):  # u is above w; walk upward
                if color.get(u) == 1:
                    return False
                if color.get(u, 0) == 0 and not dfs(u):
                    return False
            color[w] = 2
            return True

        for w in list(rel):
            if color.get(w, 0) == 0 and not dfs(w):
                raise CertificateError(f"{cert.name}: cyclic anti-link order at {v}")
        del seen, stack, order


def _merged_chains(load: LoadStructure) -> dict[int, dict[int, set[int]]]:
    out: dict[int, dict[int, set[int]]] = {}
    for v, chain in load.chains:
        rel = out.setdefault(v, {})
        for i, w in enumerate(chain):
            rel.setdefault(w, set()).update(chain[:i])
    return out


def extend_antilink_order(cert: Certificate, v: int) -> tuple[int, ...]:
    """Deterministic linear extension of the declared order on antilink(v):
    repeatedly emit the declared-maximal element highest in the global order."""
    g = cert.graph
    rank = cert.load.rank()
    above = cert.load.above().get(v, {})
    remaining = set(bits(g.antilink(v)))
    out: list[int] = []
    while remaining:
        ready = [w for w in remaining if not (above.get(w, set()) & remaining)]
        ready.sort(key=lambda w: rank[w])
        out.append(ready[0])
        remaining.remove(ready[0])
    return tuple(out)


def theta(
    cert: Certificate, path: tuple[int, ...], mode: str | None = None
) -> int:
    """The vertex set accumulated along an anti-path.

    Three clauses: everything at or above the first vertex in the global
    order; for each step, the anti-link elements of the current vertex at
    or above the next vertex in that vertex's order (the next vertex
    always counts); and the anti-star of the last vertex.
    """
    mode = cert.mode if mode is None else mode
    g = cert.graph
    rank = cert.load.rank()
    v1 = path[0]
    out = 0
    r1 = rank[v1]
    for v, r in rank.items():
        if r <= r1:
            out |= 1 << v
    if mode == CONSERVATIVE:
        above = cert.load.above()
        for i in range(len(path) - 1):
            vi, nxt = path[i], path[i + 1]
            out |= 1 << nxt
            rel = above.get(vi, {})
            for w, ups in rel.items():
                if nxt == w or nxt in ups:
                    pass
            # all declared-at-or-above nxt in the order at vi
            for w in bits(g.antilink(vi)):
                if w == nxt or nxt in above.get(vi, {}).get(w, set()) or (
                    w in rel and nxt in rel[w]
                ):
                    out |= 1 << w
    elif mode == EXTENSION:
        for i in range(len(path) - 1):
            vi, nxt = path[i], path[i + 1]
            total = extend_antilink_order(cert, vi)
            pos = total.index(nxt)
            for w in total[: pos + 1]:
                out |= 1 << w
    else:
        raise CertificateError(f"unknown theta mode {mode!r}")
    out |= g.antistar(path[-1])
    return out


def enumerate_simple_antipaths(cert: Certificate) -> list[tuple[int, ...]]:
    """All simple anti-paths where only the first vertex may lie in X,
    in the lexicographic order induced by the load structure (prefixes
    precede their extensions)."""
    g = cert.graph
    rank = cert.load.rank()
    starts = sorted(range(g.n), key=lambda v: rank[v], reverse=True)
    totals = {v: extend_antilink_order(cert, v) for v in range(g.n)}
    out: list[tuple[int, ...]] = []

    def walk(path: tuple[int, ...], used: int):
        out.append(path)
        last = path[-1]
        for w in reversed(totals[last]):  # ascending in the order at last
            if used >> w & 1 or cert.stable_x >> w & 1:
                continue
            walk(path + (w,), used | (1 << w))

    for v in starts:
        walk((v,), 1 << v)
    return out


@dataclass
class CheckReport:
    name: str
    mode: str
    paths_checked: int = 0
    failures: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def render(self) -> str:
        lines = [
            f"certificate {self.name or '<anonymous>'}: mode={self.mode} "
            f"anti-paths={self.paths_checked} "
            f"{'PASS' if self.passed else 'FAIL'}"
        ]
        for p, th in self.failures[:10]:
            lines.append(
                f"  uncovered anti-path {list(p)}: theta minus X = {sorted(bits(th))}"
            )
        lines.extend(f"  warning: {w}" for w in self.warnings)
        return "\n".join(lines)


def check_certificate(cert: Certificate, mode: str | None = None) -> CheckReport:
    validate_certificate(cert)
    mode = cert.mode if mode is None else mode
    report = CheckReport(cert.name, mode)
    if any(gs.vertices == 0 for gs in cert.good_sets):
        report.warnings.append("empty good set makes the check vacuous")
    for path in enumerate_simple_antipaths(cert):
        report.paths_checked += 1
        th = theta(cert, path, mode) & ~cert.stable_x
        last = path[-1]
        covered = any(
            (gs.terminal is None or gs.terminal == last)
            and gs.vertices & ~th == 0
            for gs in cert.good_sets
        )
        if not covered:
            report.failures.append((path, th))
    return report


# -- certificate file format --------------------------------------------------
#
#   GRAPH: <graph6>
#   X: 1 3            (may be empty)
#   ORDER: 2 4 3 1 5 6 7
#   ANTIORDER 2: 5 7          (descending chain; repeatable per vertex)
#   GOOD: 1 3 5  # note                (applies to every terminal)
#   GOOD @6: 3 5 6  # note             (terminal-restricted)
#   MODE: conservative


def parse_certificate(text: str, name: str = "") -> Certificate:
    graph = None
    xset = 0
    order: tuple[int, ...] | None = None
    chains: list[tuple[int, tuple[int, ...]]] = []
    goods: list[GoodSet] = []
    mode = CONSERVATIVE
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(":")
        head = head.strip()
        note = ""
        if "#" in rest:
            rest, note = rest.split("#", 1)
            note = note.strip()
        fields = rest.split()
        if head == "GRAPH":
            graph = graph6.decode(fields[0])
        elif head == "X":
            xset = mask_of(int(f) for f in fields)
        elif head == "ORDER":
            order = tuple(int(f) for f in fields)
        elif head.startswith("ANTIORDER"):
            v = int(head.split()[1])
            chains.append((v, tuple(int(f) for f in fields)))
        elif head.startswith("GOOD"):
            terminal = None
            parts = head.split()
            if len(parts) > 1 and parts[1].startswith("@"):
                terminal = int(parts[1][1:])
            goods.append(GoodSet(mask_of(int(f) for f in fields), terminal, note))
        elif head == "MODE":
            mode = fields[0]
            if mode not in (CONSERVATIVE, EXTENSION):
                raise CertificateError(f"line {lineno}: unknown mode {mode!r}")
        else:
            raise CertificateError(f"line {lineno}: unknown directive {head!r}")
    if graph is None:
        raise CertificateError("certificate has no GRAPH line")
    if order is None:
        order = tuple(range(graph.n))
    return Certificate(graph, xset, LoadStructure(order, tuple(chains)), tuple(goods), mode, name)


def format_certificate(cert: Certificate) -> str:
    lines = [f"GRAPH: {graph6.encode(cert.graph)}"]
    lines.append("X: " + " ".join(str(v) for v in bits(cert.stable_x)))
    lines.append("ORDER: " + " ".join(str(v) for v in cert.load.global_order))
    for v, chain in cert.load.chains:
        lines.append(f"ANTIORDER {v}: " + " ".join(str(w) for w in chain))
    for gs in cert.good_sets:
        head = "GOOD" if gs.terminal is None else f"GOOD @{gs.terminal}"
        note = f"  # {gs.note}" if gs.note else ""
        lines.append(f"{head}: " + " ".join(str(v) for v in bits(gs.vertices)) + note)
    lines.append(f"MODE: {cert.mode}")
    return "\n".join(lines) + "\n"


def load_certificate_file(path, name: str = "") -> Certificate:
    with open(path, "r") as fh:
        return parse_certificate(fh.read(), name or str(path))


def bundled_certificates() -> list[Certificate]:
    import importlib.resources

    certs = []
    root = importlib.resources.files("raagsurf.data").joinpath("certs")
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".cert"):
            certs.append(parse_certificate(entry.read_text(), entry.name[:-5]))
    return certs
