"""Simple undirected graphs, Laplacians, leader/follower partitions, enumeration.

Vertices are labelled ``1..n`` in every public function and in the text
format. Internally a graph stores one adjacency bitmask per vertex, bit
``j`` of ``rows[i]`` standing for the edge between vertices ``i+1`` and
``j+1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from netctrl import kernels

MAX_VERTICES = 64
MAX_EXHAUSTIVE = 8


class GraphError(ValueError):
    """Base class for invalid graph input."""


class IndexOutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class InvalidLeader(GraphError):
    pass


class EmptyFollowerSet(GraphError):
    pass


class SizeTooLarge(GraphError):
    pass


class DisconnectedGraph(GraphError):
    pass


class ParseError(GraphError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise SizeTooLarge(f"n must be in 1..{MAX_VERTICES}, got {self.n}")
        if len(self.rows) != self.n:
            raise GraphError("one adjacency row per vertex required")
        for i, r in enumerate(self.rows):
            if r >> self.n:
                raise IndexOutOfRange(f"row {i + 1} references vertices beyond n")
            if (r >> i) & 1:
                raise SelfLoop(f"vertex {i + 1} is adjacent to itself")
            for j in _bits(r):
                if not (self.rows[j] >> i) & 1:
                    raise GraphError("adjacency must be symmetric")

    def has_edge(self, u, v):
        return bool((self.rows[u - 1] >> (v - 1)) & 1)

    def neighbors(self, v):
        return [j + 1 for j in _bits(self.rows[v - 1])]

    def degree(self, v):
        return self.rows[v - 1].bit_count()

    def degrees(self):
        return tuple(r.bit_count() for r in self.rows)

    def edges(self):
        return [(i + 1, j + 1) for i in range(self.n) for j in _bits(self.rows[i]) if j > i]

    @property
    def edge_count(self):
        return sum(self.degrees()) // 2

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v-1]`` (a permutation of 1..n)."""
        return graph_from_edges(self.n, [(perm[u - 1], perm[v - 1]) for u, v in self.edges()])

    def __str__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from 1-based vertex pairs; duplicate edges are collapsed."""
    if not 1 <= n <= MAX_VERTICES:
        raise SizeTooLarge(f"n must be in 1..{MAX_VERTICES}, got {n}")
    rows = [0] * n
    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise IndexOutOfRange(f"edge ({u}, {v}) outside 1..{n}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        rows[u - 1] |= 1 << (v - 1)
        rows[v - 1] |= 1 << (u - 1)
    return Graph(n, tuple(rows))


def complete_graph(n):
    return graph_from_edges(n, combinations(range(1, n + 1), 2))


def path_graph(n):
    return graph_from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n):
    return graph_from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def star_graph(leaves):
    """Star with centre 1 and leaves 2..leaves+1."""
    return graph_from_edges(leaves + 1, [(1, i) for i in range(2, leaves + 2)])


def laplacian(g: Graph) -> list[list[int]]:
    """L = D - A as a list of integer rows."""
    n = g.n
    lap = [[0] * n for _ in range(n)]
    for i, r in enumerate(g.rows):
        lap[i][i] = r.bit_count()
        for j in _bits(r):
            lap[i][j] = -1
    return lap


def is_connected(g: Graph) -> bool:
    return kernels.is_connected_rows(g.rows, g.n)


def require_connected(g: Graph):
    if not is_connected(g):
        raise DisconnectedGraph("graph is not connected")


@dataclass(frozen=True)
class Partition:
    """Follower block ``F`` and follower-to-leader coupling ``R`` of the Laplacian."""

    F: tuple[tuple[int, ...], ...]
    R: tuple[tuple[int, ...], ...]
    followers: tuple[int, ...]
    leaders: tuple[int, ...]

    @property
    def n_followers(self):
        return len(self.followers)


def normalize_leaders(g: Graph, leaders: Iterable[int]) -> tuple[int, ...]:
    """Validate a leader set; returns it sorted and de-duplicated."""
    seen = []
    for v in leaders:
        if not isinstance(v, int) or not 1 <= v <= g.n:
            raise InvalidLeader(f"leader {v!r} outside 1..{g.n}")
        if v in seen:
            raise InvalidLeader(f"leader {v} listed twice")
        seen.append(v)
    if not seen:
        raise InvalidLeader("leader set must be nonempty")
    if len(seen) == g.n:
        raise EmptyFollowerSet("every vertex is a leader")
    return tuple(sorted(seen))


def follower_partition(g: Graph, leaders: Iterable[int]) -> Partition:
    leaders = normalize_leaders(g, leaders)
    lap = laplacian(g)
    lead = set(leaders)
    followers = tuple(v for v in range(1, g.n + 1) if v not in lead)
    F = tuple(tuple(lap[i - 1][j - 1] for j in followers) for i in followers)
    R = tuple(tuple(lap[i - 1][j - 1] for j in leaders) for i in followers)
    return Partition(F, R, followers, leaders)


def _pairs(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def graph_from_mask(n: int, mask: int) -> Graph:
    """Graph whose edge set is bit ``t`` of ``mask`` for the t-th pair in row-major order."""
    rows = [0] * n
    for t, (i, j) in enumerate(_pairs(n)):
        if (mask >> t) & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def edge_mask(g: Graph) -> int:
    mask = 0
    for t, (i, j) in enumerate(_pairs(g.n)):
        if (g.rows[i] >> j) & 1:
            mask |= 1 << t
    return mask


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """Every connected labelled graph on ``n`` vertices, in increasing edge-mask order."""
    if n > MAX_EXHAUSTIVE:
        raise SizeTooLarge(f"exhaustive enumeration is capped at n={MAX_EXHAUSTIVE}")
    if n < 2:
        raise SizeTooLarge("enumeration needs n >= 2")
    pairs = _pairs(n)
    m = len(pairs)
    for mask in range(1 << m):
        if mask.bit_count() < n - 1:
            continue
        rows = [0] * n
        t = 0
        bits = mask
        while bits:
            if bits & 1:
                i, j = pairs[t]
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bits >>= 1
            t += 1
        if kernels.is_connected_rows(rows, n):
            yield Graph(n, tuple(rows))


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Isomorphism-invariant code, optionally pinning one distinguished vertex."""

    n: int
    distinguished: bool
    bits: int

    def hex(self) -> str:
        nbytes = max(1, (self.n * (self.n - 1) // 2 + 7) // 8)
        return f"{self.n:02x}{int(self.distinguished):02x}" + self.bits.to_bytes(nbytes, "big").hex()

    @classmethod
    def from_hex(cls, text: str) -> "CanonicalCode":
        raw = bytes.fromhex(text.strip())
        return cls(raw[0], bool(raw[1]), int.from_bytes(raw[2:], "big"))

    def to_graph(self) -> tuple[Graph, int | None]:
        """A representative graph; the distinguished vertex, if any, is vertex 1."""
        n = self.n
        pairs = _pairs(n)
        edges = [
            (i + 1, j + 1)
            for t, (i, j) in enumerate(pairs)
            if (self.bits >> (len(pairs) - 1 - t)) & 1
        ]
        return graph_from_edges(n, edges), (1 if self.distinguished else None)


def canonical_form(g: Graph, distinguished: int | None = None) -> CanonicalCode:
    if g.n > MAX_EXHAUSTIVE:
        raise SizeTooLarge(f"canonical forms are brute force, n <= {MAX_EXHAUSTIVE}")
    if distinguished is not None and not 1 <= distinguished <= g.n:
        raise IndexOutOfRange(f"distinguished vertex {distinguished} outside 1..{g.n}")
    d = -1 if distinguished is None else distinguished - 1
    return CanonicalCode(g.n, distinguished is not None, kernels.canonical_code(g.rows, g.n, d))


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines format (1-based, '#' comments)."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 1 or b < 0:
                raise ParseError("header must be 'n m' with n >= 1, m >= 0", lineno)
            header = (a, b, lineno)
            continue
        if not (1 <= a <= header[0] and 1 <= b <= header[0]):
            raise ParseError(f"vertex out of range 1..{header[0]}", lineno)
        if a == b:
            raise ParseError(f"self-loop at vertex {a}", lineno)
        edges.append((a, b))
    if header is None:
        raise ParseError("missing 'n m' header")
    n, m, hline = header
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}", hline)
    try:
        return graph_from_edges(n, edges)
    except GraphError as exc:
        raise ParseError(str(exc), hline) from None


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    edges = g.edges()
    lines.append(f"{g.n} {len(edges)}")
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"
