"""Canonical labeling and isomorphism testing for small graphs.

The canonical label is the lexicographically smallest graph6-ordered adjacency
bit string over all vertex orders compatible with an equitable partition
refinement. The search individualizes one vertex at a time; among twin vertices
(same neighbourhood apart from each other) only one branch is explored, since
swapping twins is an automorphism fixing everything already individualized.
"""
from __future__ import annotations

from typing import NamedTuple

from .graph import Graph, GraphError, _bits, bfs_layers

DEFAULT_MAX_N = 12


class CanonicalLabel(NamedTuple):
    n: int
    bits: int


def _certificate(g: Graph, order: list[int]) -> int:
    adj = g.adj
    cert = 0
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            cert = cert << 1 | (row >> order[i] & 1)
    return cert


def _initial_cells(g: Graph) -> list[list[int]]:
    key = {}
    for v in range(g.n):
        layers = bfs_layers(g, v)
        key[v] = (g.degree(v), tuple(layer.bit_count() for layer in layers))
    cells: dict[tuple, list[int]] = {}
    for v in range(g.n):
        cells.setdefault(key[v], []).append(v)
    return [cells[k] for k in sorted(cells)]


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        out: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            split: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                row = adj[v]
                split.setdefault(tuple((row & m).bit_count() for m in masks), []).append(v)
            if len(split) == 1:
                out.append(cell)
            else:
                out.extend(split[k] for k in sorted(split))
        if len(out) == len(cells):
            return out
        cells = out


def _search(g: Graph, cells: list[list[int]]) -> tuple[int, list[int]]:
    cells = _refine(g.adj, cells)
    target = None
    for idx, cell in enumerate(cells):
        if len(cell) > 1 and (target is None or len(cell) < len(cells[target])):
            target = idx
    if target is None:
        order = [c[0] for c in cells]
        return _certificate(g, order), order
    cell = cells[target]
    best = None
    tried: list[int] = []
    adj = g.adj
    for v in cell:
        if any(adj[v] & ~(1 << w) == adj[w] & ~(1 << v) for w in tried):
            continue
        tried.append(v)
        rest = [w for w in cell if w != v]
        leaf = _search(g, cells[:target] + [[v], rest] + cells[target + 1 :])
        if best is None or leaf[0] < best[0]:
            best = leaf
    return best


def canonical_order(g: Graph) -> list[int]:
    """Vertex order realizing the canonical certificate (position -> old vertex)."""
    if g.n == 0:
        return []
    return _search(g, _initial_cells(g))[1]


def canonical_form(g: Graph, max_n: int = DEFAULT_MAX_N) -> CanonicalLabel:
    """Relabeling-invariant key; equal keys iff the graphs are isomorphic."""
    if g.n > max_n:
        raise GraphError(f"canonical form capped at n={max_n}, got n={g.n}")
    if g.n <= 1:
        return CanonicalLabel(g.n, 0)
    return CanonicalLabel(g.n, _search(g, _initial_cells(g))[0])


def canonize(g: Graph, max_n: int = DEFAULT_MAX_N) -> tuple[CanonicalLabel, Graph]:
    """Canonical label together with the canonically relabeled graph."""
    if g.n > max_n:
        raise GraphError(f"canonical form capped at n={max_n}, got n={g.n}")
    if g.n <= 1:
        return CanonicalLabel(g.n, 0), g
    cert, order = _search(g, _initial_cells(g))
    perm = [0] * g.n
    for pos, old in enumerate(order):
        perm[old] = pos
    return CanonicalLabel(g.n, cert), g.relabel(perm)


def canonical_graph(g: Graph) -> Graph:
    """Isomorphic copy of ``g`` in canonical vertex order."""
    return canonize(g, max_n=max(g.n, DEFAULT_MAX_N))[1]


def are_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.edge_count != b.edge_count:
        return False
    if sorted(a.degrees()) != sorted(b.degrees()):
        return False
    return canonical_form(a, max_n=a.n) == canonical_form(b, max_n=b.n)
