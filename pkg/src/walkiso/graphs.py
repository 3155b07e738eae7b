"""Simple undirected graphs, vertex relabelings, and text interchange formats.

Graphs are immutable values: ``n`` vertices labeled ``0..n-1`` plus a frozen
set of normalized edges ``(i, j)`` with ``i < j``.  Self-loops, multi-edges,
directed edges and edge weights are rejected outright.  Everything here is a
pure function over these values, so graphs can be shared freely between
worker processes.

Two text formats are supported:

* graph6 -- the compact 6-bit format used by published graph collections.
  The upper triangle of the adjacency matrix is read column by column
  ((0,1), (0,2), (1,2), (0,3), ...), packed six bits per printable byte with
  an offset of 63.  The short one-byte size header covers n <= 62 and the
  four-byte extended header covers n <= 258047.
* edge list -- first line ``n``, then one ``i j`` line per edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .matrices import ExactSymMatrix

# Largest vertex count the four-byte graph6 size header can carry.
GRAPH6_MAX_N = 258047

_G6_PREFIX = ">>graph6<<"


class ParseError(ValueError):
    """A graph6 or edge-list document could not be decoded."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``edges`` must hold normalized pairs ``(i, j)`` with ``i < j``; use
    :meth:`from_edges` to build a graph from unnormalized pair data.
    """

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"self-loop ({i},{j}) not allowed")
            if not (0 <= i < j < self.n):
                raise ValueError(f"edge ({i},{j}) out of range for n={self.n}")

    @staticmethod
    def from_edges(n: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from arbitrary (i, j) pairs, normalizing order."""
        normalized = set()
        for i, j in pairs:
            if i == j:
                raise ValueError(f"self-loop ({i},{j}) not allowed")
            normalized.add((i, j) if i < j else (j, i))
        return Graph(n, frozenset(normalized))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        if i > j:
            i, j = j, i
        return (i, j) in self.edges

    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return tuple(deg)

    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        """Adjacency lists, each sorted ascending."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class Permutation:
    """Bijection on ``{0..n-1}``; ``mapping[old_label] = new_label``."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.mapping)
        if sorted(self.mapping) != list(range(n)):
            raise ValueError("mapping is not a bijection on 0..n-1")

    def __len__(self) -> int:
        return len(self.mapping)

    def __getitem__(self, old: int) -> int:
        return self.mapping[old]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.mapping)
        for old, new in enumerate(self.mapping):
            inv[new] = old
        return Permutation(tuple(inv))

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))


def adjacency_matrix(g: Graph) -> ExactSymMatrix:
    """The 0/1 symmetric matrix of ``g``: entry (i, j) is 1 iff {i, j} is an edge."""
    rows = [[0] * g.n for _ in range(g.n)]
    for i, j in g.edges:
        rows[i][j] = 1
        rows[j][i] = 1
    return ExactSymMatrix(tuple(tuple(r) for r in rows))


def apply_permutation(g: Graph, p: Permutation) -> Graph:
    """Relabel ``g`` so vertex ``v`` becomes ``p[v]``.

    The adjacency matrix of the result is the conjugation of ``g``'s
    adjacency matrix by the permutation matrix of ``p``.
    """
    if len(p) != g.n:
        raise ValueError(f"permutation length {len(p)} != vertex count {g.n}")
    m = p.mapping
    return Graph.from_edges(g.n, ((m[i], m[j]) for i, j in g.edges))


# ---------------------------------------------------------------------------
# graph6


def _iter_triangle(n: int) -> Iterable[tuple[int, int]]:
    # Column-major upper triangle: the graph6 bit order.
    for j in range(1, n):
        for i in range(j):
            yield i, j


def _encode_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= GRAPH6_MAX_N:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    raise ValueError(f"graph6 size header supports n <= {GRAPH6_MAX_N}, got {n}")


def _decode_size(data: bytes) -> tuple[int, int]:
    """Return (n, number of header bytes consumed)."""
    first = data[0]
    if first == 126:
        if len(data) >= 2 and data[1] == 126:
            raise ParseError("malformed header byte: eight-byte size form not supported")
        if len(data) < 4:
            raise ParseError("malformed header byte: extended size header cut short")
        vals = []
        for b in data[1:4]:
            if not 63 <= b <= 126:
                raise ParseError(f"malformed header byte: {b!r} outside graph6 range")
            vals.append(b - 63)
        n = (vals[0] << 12) | (vals[1] << 6) | vals[2]
        if n > GRAPH6_MAX_N:
            raise ParseError(f"malformed header byte: size {n} exceeds {GRAPH6_MAX_N}")
        return n, 4
    if not 63 <= first <= 125:
        raise ParseError(f"malformed header byte: {first!r} outside graph6 range")
    return first - 63, 1


def parse_graph6(text: str) -> Graph:
    """Decode a single graph6 line (optional ``>>graph6<<`` prefix allowed)."""
    s = text.strip()
    if s.startswith(_G6_PREFIX):
        s = s[len(_G6_PREFIX):].strip()
    if not s:
        raise ParseError("empty input")
    try:
        data = s.encode("ascii")
    except UnicodeEncodeError as exc:
        raise ParseError(f"non-ascii byte in graph6 input: {exc}") from None

    n, used = _decode_size(data)
    if n == 0:
        raise ParseError("vertex count 0 not supported")
    body = data[used:]
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(body) < nbytes:
        raise ParseError(f"truncated bit field: need {nbytes} bytes, got {len(body)}")
    if len(body) > nbytes:
        raise ParseError(f"trailing garbage: {len(body) - nbytes} byte(s) past bit field")

    bits: list[int] = []
    for b in body:
        if not 63 <= b <= 126:
            raise ParseError(f"invalid byte {b!r} in bit field")
        v = b - 63
        bits.extend((v >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise ParseError("nonzero padding bits")

    edges = [pair for pair, bit in zip(_iter_triangle(n), bits) if bit]
    return Graph(n, frozenset(edges))


def emit_graph6(g: Graph) -> str:
    """Encode a graph as a canonical graph6 line (no trailing newline)."""
    out = bytearray(_encode_size(g.n))
    acc = 0
    filled = 0
    for i, j in _iter_triangle(g.n):
        acc = (acc << 1) | ((i, j) in g.edges)
        filled += 1
        if filled == 6:
            out.append(acc + 63)
            acc, filled = 0, 0
    if filled:
        out.append((acc << (6 - filled)) + 63)
    return out.decode("ascii")


# ---------------------------------------------------------------------------
# format detection


def detect_format(text: str) -> str:
    """Classify text as ``"graph6"`` or ``"edgelist"``.

    graph6 bytes all fall in 63..126, a range containing no digits, while an
    edge list must start with an integer line; the two cannot collide.
    """
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith(_G6_PREFIX):
            return "graph6"
        if all(63 <= ord(ch) <= 126 for ch in line):
            return "graph6"
        return "edgelist"
    raise ParseError("empty input")


def parse_graph_text(text: str, fmt: str = "auto") -> Graph:
    """Parse either supported format; ``"auto"`` detects per detect_format."""
    if fmt == "auto":
        fmt = detect_format(text)
    if fmt == "graph6":
        return parse_graph6(text)
    if fmt == "edgelist":
        return parse_edge_list(text)
    raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# edge list


def parse_edge_list(text: str) -> Graph:
    """Decode the edge-list format: first line ``n``, then ``i j`` lines."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty input")
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError(f"vertex count line is not an integer: {lines[0]!r}") from None
    if n < 1:
        raise ParseError(f"vertex count must be positive, got {n}")

    edges = set()
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'i j', got {ln!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-numeric token in {ln!r}") from None
        if i == j:
            raise ParseError(f"line {lineno}: self-loop {i} {j}")
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(f"line {lineno}: endpoint out of range for n={n}")
        edges.add((i, j) if i < j else (j, i))
    return Graph(n, frozenset(edges))


def emit_edge_list(g: Graph) -> str:
    """Canonical edge-list text: sorted ``i j`` lines, trailing newline."""
    lines = [str(g.n)]
    lines.extend(f"{i} {j}" for i, j in g.sorted_edges())
    return "\n".join(lines) + "\n"
