"""Seeded batches of attachment graphs K for checking the gadget construction."""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .canon import are_isomorphic
from .constructions import ROOTS, build_pair, verify_theorem21
from .enumerate import connected_graphs
from .graph import Graph, cycle_graph, from_edge_list, is_connected, to_graph6


def random_connected_graph(rng: random.Random, n: int, p: float) -> Graph:
    while True:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        g = from_edge_list(n, edges)
        if is_connected(g):
            return g


def sweep_graphs(seed: int = 0, random_count: int = 10, max_random_n: int = 8) -> list[Graph]:
    """All trees on at most 6 vertices, cycles C3..C8, then seeded random connected graphs."""
    trees = [g for n in range(1, 7) for g in connected_graphs(n) if g.edge_count == n - 1]
    cycles = [cycle_graph(n) for n in range(3, 9)]
    rng = random.Random(seed)
    rand = [
        random_connected_graph(rng, rng.randint(2, max_random_n), rng.uniform(0.25, 0.7))
        for _ in range(random_count)
    ]
    return trees + cycles + rand


@dataclass
class SweepResult:
    k: str
    v: int
    u: int
    cospectral: bool
    isomorphic: bool
    edge_difference: int
    passed: bool
    max_residual_after: float
    max_identity_residual: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.cospectral and not self.isomorphic and self.edge_difference == 1 and self.passed


def _check_one(k: Graph) -> list[SweepResult]:
    out = []
    for u in ROOTS:
        for v in range(k.n):
            gk, hk = build_pair(k, v, u)
            rep = verify_theorem21(k, v, u)
            out.append(
                SweepResult(
                    k=to_graph6(k),
                    v=v,
                    u=u,
                    cospectral=rep.cospectral,
                    isomorphic=are_isomorphic(gk, hk),
                    edge_difference=gk.edge_count - hk.edge_count,
                    passed=rep.passed,
                    max_residual_after=rep.max_residual_after,
                    max_identity_residual=rep.max_identity_residual,
                    tol=rep.tol,
                )
            )
    return out


def gadget_sweep(graphs: list[Graph], workers: int = 1) -> list[SweepResult]:
    """Every (K, v, u) instance; results are returned in input order."""
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_check_one, graphs))
    else:
        parts = [_check_one(k) for k in graphs]
    return [r for part in parts for r in part]
