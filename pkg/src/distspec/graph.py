"""Simple undirected graphs stored as per-vertex adjacency bitsets."""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

import numpy as np

MAX_VERTICES = 62


class GraphError(ValueError):
    """Invalid graph data (bad endpoints, bad vertex index, disconnected input...)."""


class DisconnectedGraphError(GraphError):
    """The distance matrix is undefined for a disconnected graph."""


@dataclass(frozen=True)
class Graph:
    """Labeled simple graph on vertices ``0..n-1``.

    ``adj[v]`` is an int whose bit ``w`` is set iff ``v ~ w``.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for w in _bits(row):
                if not self.adj[w] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {w}")

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(v, w) for v in range(self.n) for w in _bits(self.adj[v]) if v < w]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def relabel(self, perm: list[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabeling is not a permutation")
        return from_edge_list(self.n, [(perm[a], perm[b]) for a, b in self.edges])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges})"


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from ``(u, v)`` pairs; duplicates collapse."""
    if not 0 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
    adj = [0] * n
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {tuple(pair)} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"edge {tuple(pair)} is a self-loop")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(n: int) -> Graph:
    """Star on ``n`` vertices with centre 0."""
    return from_edge_list(n, [(0, i) for i in range(1, n)])


# --- text formats -----------------------------------------------------------


class Graph6Error(GraphError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def to_graph6(g: Graph) -> str:
    """Encode ``g`` as graph6 (upper triangle, column order, 6 bits per byte)."""
    out = [chr(63 + g.n)]
    acc = nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"invalid graph6 byte {ch!r}", pos)
    n = ord(s[0]) - 63
    if n == 63:
        raise Graph6Error(f"graphs with more than {MAX_VERTICES} vertices are not supported", 0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = s[1:]
    if len(body) < nbytes:
        raise Graph6Error(f"truncated body: expected {nbytes} data bytes, got {len(body)}", len(s))
    if len(body) > nbytes:
        raise Graph6Error("trailing bytes after graph6 body", 1 + nbytes)
    bits = 0
    for ch in body:
        bits = bits << 6 | (ord(ch) - 63)
    pad = 6 * nbytes - nbits
    if bits & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", len(s) - 1)
    bits >>= pad
    adj = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if bits >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(adj))


def to_edge_list_text(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges]) + "\n"


def from_edge_list_text(text: str) -> Graph:
    """Parse ``n`` on the first line followed by ``u v`` lines."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("edge list is empty")
    try:
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            u, v = ln.split()
            edges.append((int(u), int(v)))
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    return from_edge_list(n, edges)


def load_graph(spec: str) -> Graph:
    """Resolve ``@file:path`` to an edge-list file, anything else as graph6."""
    if spec.startswith("@file:"):
        path = Path(spec[len("@file:") :])
        try:
            text = path.read_text()
        except OSError as exc:
            raise GraphError(f"cannot read {path}: {exc.strerror}") from None
        return from_edge_list_text(text)
    return from_graph6(spec)


# --- predicates and distances ----------------------------------------------


def _reach(g: Graph, source: int) -> int:
    seen = frontier = 1 << source
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return _reach(g, 0) == (1 << g.n) - 1


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        frontier, seen, depth = 1 << root, 1 << root, 0
        while frontier:
            depth += 1
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            # an edge inside a BFS layer closes an odd cycle
            for v in _bits(frontier):
                if g.adj[v] & frontier:
                    return False
            frontier = nxt & ~seen
            seen |= frontier
            for v in _bits(frontier):
                color[v] = depth & 1
    return True


def bfs_layers(g: Graph, source: int) -> list[int]:
    """Bitmasks of vertices at distance 0, 1, 2, ... from ``source``."""
    layers = [1 << source]
    seen = 1 << source
    while True:
        nxt = 0
        for v in _bits(layers[-1]):
            nxt |= g.adj[v]
        nxt &= ~seen
        if not nxt:
            return layers
        seen |= nxt
        layers.append(nxt)


def distance_matrix(g: Graph) -> np.ndarray:
    """Hop-distance matrix as a read-only ``int64`` array.

    Raises DisconnectedGraphError when some pair is unreachable.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("distance matrix is undefined for a disconnected graph")
    d = np.zeros((g.n, g.n), dtype=np.int64)
    for s in range(g.n):
        row = d[s]
        for dist, layer in enumerate(bfs_layers(g, s)):
            for v in _bits(layer):
                row[v] = dist
    d.setflags(write=False)
    return d


def identify(g: Graph, u: int, k: Graph, v: int) -> Graph:
    """Glue ``k`` onto ``g`` by merging ``k``'s vertex ``v`` into ``g``'s vertex ``u``.

    Vertices of ``g`` keep their labels, the merged vertex is ``u``, and the other
    vertices of ``k`` are numbered ``g.n, g.n + 1, ...`` in increasing order.
    """
    if not 0 <= u < g.n:
        raise GraphError(f"vertex {u} not in the first graph (n={g.n})")
    if not 0 <= v < k.n:
        raise GraphError(f"vertex {v} not in the second graph (n={k.n})")
    label = {}
    nxt = g.n
    for w in range(k.n):
        if w == v:
            label[w] = u
        else:
            label[w] = nxt
            nxt += 1
    edges = g.edges + [(label[a], label[b]) for a, b in k.edges]
    return from_edge_list(g.n + k.n - 1, edges)


def disjoint_union(a: Graph, b: Graph) -> Graph:
    return from_edge_list(a.n + b.n, a.edges + [(x + a.n, y + a.n) for x, y in b.edges])
