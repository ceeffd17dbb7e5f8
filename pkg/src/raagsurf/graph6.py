"""graph6 text codec for graphs on at most 62 vertices.

One graph per line: first byte is n+63, then the upper-triangle bits
x(i,j) in column order (j = 1..n-1, i = 0..j-1) packed big-endian into
6-bit groups, each emitted as group+63.  Only the single-byte size form
is supported.
"""

from __future__ import annotations

from .graph import MAX_VERTICES, SmallGraph

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    """Malformed graph6 input; carries the offending byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def triangle_bits(g: SmallGraph) -> int:
    """Upper-triangle adjacency bits as an integer, first bit most significant."""
    out = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            out = (out << 1) | (col >> i & 1)
    return out


def encode(g: SmallGraph) -> str:
    if g.n > MAX_VERTICES:
        raise ValueError(f"graph6 single-byte form caps at {MAX_VERTICES} vertices")
    nbits = g.n * (g.n - 1) // 2
    tri = triangle_bits(g)
    ngroups = (nbits + 5) // 6
    tri <<= ngroups * 6 - nbits  # zero-pad on the right
    chars = [chr(g.n + 63)]
    for k in range(ngroups - 1, -1, -1):
        chars.append(chr((tri >> (6 * k) & 0x3F) + 63))
    return "".join(chars)


def decode(line: str) -> SmallGraph:
    text = line.rstrip("\n")
    if text.startswith(HEADER):
        text = text[len(HEADER):]
    if not text:
        raise Graph6Error("empty graph6 line", 0)
    n = ord(text[0]) - 63
    if not (0 <= n <= MAX_VERTICES):
        raise Graph6Error(f"unsupported size byte {text[0]!r}", 0)
    nbits = n * (n - 1) // 2
    ngroups = (nbits + 5) // 6
    if len(text) != 1 + ngroups:
        raise Graph6Error(
            f"expected {1 + ngroups} bytes for n={n}, got {len(text)}", len(text)
        )
    tri = 0
    for k, ch in enumerate(text[1:]):
        group = ord(ch) - 63
        if not (0 <= group < 64):
            raise Graph6Error(f"byte {ch!r} outside graph6 range", 1 + k)
        tri = (tri << 6) | group
    pad = ngroups * 6 - nbits
    if pad and tri & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", len(text) - 1)
    tri >>= pad
    adj = [0] * n
    pos = nbits
    for j in range(1, n):
        for i in range(j):
            pos -= 1
            if tri >> pos & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return SmallGraph(n, tuple(adj))


def read_lines(lines) -> list[SmallGraph]:
    """Decode an iterable of graph6 lines, skipping blank ones."""
    out = []
    for line in lines:
        if line.strip():
            out.append(decode(line))
    return out
