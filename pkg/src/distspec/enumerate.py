"""Exhaustive enumeration of small connected graphs and distance-cospectral mining."""
from __future__ import annotations

import json
import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .canon import DEFAULT_MAX_N, are_isomorphic, canonize
from .exact import char_poly
from .graph import (
    Graph,
    GraphError,
    distance_matrix,
    from_graph6,
    is_bipartite,
    is_connected,
    to_graph6,
)
from .switching import SwitchTuple, apply_switch, find_switch_candidates, hypothesis_failure

log = logging.getLogger(__name__)

DEFAULT_N_CAP = 9
LARGE_N_CAP = DEFAULT_MAX_N


def _check_cap(n: int, allow_large_n: bool) -> None:
    cap = LARGE_N_CAP if allow_large_n else DEFAULT_N_CAP
    if not 1 <= n <= cap:
        hint = "" if allow_large_n or n > LARGE_N_CAP else " (pass allow_large_n to go further)"
        raise GraphError(f"enumeration supports 1 <= n <= {cap}, got {n}{hint}")


def _extend(parents_g6: list[str]) -> dict:
    """Canonical children of each parent obtained by adding one vertex joined to a nonempty subset."""
    found = {}
    for text in parents_g6:
        p = from_graph6(text)
        n = p.n
        for subset in range(1, 1 << n):
            adj = list(p.adj)
            for w in range(n):
                if subset >> w & 1:
                    adj[w] |= 1 << n
            adj.append(subset)
            label, canon = canonize(Graph(n + 1, tuple(adj)), max_n=LARGE_N_CAP)
            if label not in found:
                found[label] = canon
    return found


@lru_cache(maxsize=None)
def _level(n: int, workers: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1, (0,)),)
    parents = [to_graph6(g) for g in _level(n - 1, workers)]
    if workers > 1 and len(parents) > workers:
        step = -(-len(parents) // (4 * workers))
        chunks = [parents[i : i + step] for i in range(0, len(parents), step)]
        found = {}
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_extend, chunks):
                found.update(part)
    else:
        found = _extend(parents)
    log.info("n=%d: %d connected graphs", n, len(found))
    return tuple(found[label] for label in sorted(found))


def connected_graphs(n: int, allow_large_n: bool = False, workers: int = 1) -> list[Graph]:
    """One canonically labelled representative per isomorphism class of connected n-vertex graphs.

    Every connected graph has a non-cut vertex, so extending connected (n-1)-vertex
    classes by a vertex with at least one neighbour reaches every class.
    """
    _check_cap(n, allow_large_n)
    return list(_level(n, max(1, workers)))


@dataclass
class PairReport:
    i: int
    j: int
    edge_counts: tuple[int, int]
    bipartite: tuple[bool, bool]
    certificate: dict | None = None

    @property
    def switching_explained(self) -> bool:
        return self.certificate is not None

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "edge_counts": list(self.edge_counts),
            "bipartite": list(self.bipartite),
            "switch_certificate": self.certificate,
        }


def find_switch_certificate(a: Graph, b: Graph) -> tuple[int, SwitchTuple] | None:
    """A switch on ``a`` (0) or ``b`` (1) that meets the hypotheses and yields the other graph."""
    for side, (src, dst) in enumerate(((a, b), (b, a))):
        if src.edge_count != dst.edge_count:
            return None
        for t in find_switch_candidates(src):
            h = apply_switch(src, t)
            if hypothesis_failure(src, h, t) is None and are_isomorphic(h, dst):
                return side, t
    return None


def classify_pair(a: Graph, b: Graph, i: int = 0, j: int = 1) -> PairReport:
    if not (is_connected(a) and is_connected(b)):
        raise GraphError("both graphs must be connected")
    if a.n != b.n or char_poly(distance_matrix(a)) != char_poly(distance_matrix(b)):
        raise GraphError("graphs are not distance cospectral")
    if are_isomorphic(a, b):
        raise GraphError("graphs are isomorphic")
    report = PairReport(i, j, (a.edge_count, b.edge_count), (is_bipartite(a), is_bipartite(b)))
    found = find_switch_certificate(a, b)
    if found is not None:
        side, t = found
        report.certificate = {"source": (i, j)[side], **t.to_dict()}
    return report


def certificate_holds(graphs: list[Graph], pair: PairReport) -> bool:
    """Re-verify a stored certificate from scratch, including exact cospectrality."""
    if pair.certificate is None:
        return False
    cert = pair.certificate
    src_idx = cert["source"]
    dst_idx = pair.j if src_idx == pair.i else pair.i
    src, dst = graphs[src_idx], graphs[dst_idx]
    t = SwitchTuple.from_dict(cert)
    h = apply_switch(src, t)
    return (
        hypothesis_failure(src, h, t) is None
        and are_isomorphic(h, dst)
        and char_poly(distance_matrix(src)) == char_poly(distance_matrix(h))
    )


@dataclass
class CospectralClass:
    charpoly: list[int]
    graphs: list[Graph]
    pairs: list[PairReport] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "charpoly": self.charpoly,
            "graphs": [to_graph6(g) for g in self.graphs],
            "pairs": [p.to_dict() for p in self.pairs],
        }


def cospectral_classes(n: int, allow_large_n: bool = False, workers: int = 1) -> list[CospectralClass]:
    """Groups of at least two connected n-vertex graphs sharing a distance characteristic polynomial."""
    groups: dict[tuple[int, ...], list[Graph]] = defaultdict(list)
    for g in connected_graphs(n, allow_large_n, workers):
        groups[tuple(char_poly(distance_matrix(g)))].append(g)
    return [CospectralClass(list(key), members) for key, members in sorted(groups.items()) if len(members) > 1]


@dataclass
class SearchReport:
    n: int
    graph_count: int
    classes: list[CospectralClass]

    @property
    def pairs(self) -> list[tuple[CospectralClass, PairReport]]:
        return [(c, p) for c in self.classes for p in c.pairs]

    def summary(self) -> dict:
        pairs = [p for _, p in self.pairs]
        return {
            "pair_count": len(pairs),
            "switching_explained": sum(p.switching_explained for p in pairs),
            "differing_edge_pairs": sum(p.edge_counts[0] != p.edge_counts[1] for p in pairs),
            "mixed_bipartite_pairs": sum(p.bipartite[0] != p.bipartite[1] for p in pairs),
        }

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "graph_count": self.graph_count,
            "class_count": len(self.classes),
            "classes": [c.to_dict() for c in self.classes],
            "summary": self.summary(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def mine(n: int, allow_large_n: bool = False, workers: int = 1) -> SearchReport:
    graphs = connected_graphs(n, allow_large_n, workers)
    classes = cospectral_classes(n, allow_large_n, workers)
    for cls in classes:
        for i, j in combinations(range(len(cls.graphs)), 2):
            cls.pairs.append(classify_pair(cls.graphs[i], cls.graphs[j], i, j))
    return SearchReport(n, len(graphs), classes)
