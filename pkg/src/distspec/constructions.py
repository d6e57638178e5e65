"""Gadget pair (G, H) on ten vertices and the identification construction built on it.

G has 17 edges, H has 16, and gluing any connected graph K onto vertex 0 or 1 of
both gadgets yields distance-cospectral graphs. Most eigenvectors of the G-side
distance matrix map to eigenvectors of the H-side matrix by adding a correction
vector supported on vertices 2..9.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .canon import are_isomorphic
from .exact import char_poly, root_multiplicity
from .graph import (
    MAX_VERTICES,
    Graph,
    GraphError,
    distance_matrix,
    empty_graph,
    from_edge_list,
    identify,
    is_connected,
)
from .numeric import EXCLUSION_TOL, eigen_decomposition, residual, scaled_tol

GADGET_DISTANCES_G = (
    (0, 1, 1, 1, 2, 1, 2, 2, 2, 2),
    (1, 0, 2, 2, 3, 1, 3, 1, 2, 3),
    (1, 2, 0, 1, 1, 2, 1, 3, 3, 1),
    (1, 2, 1, 0, 1, 1, 1, 2, 2, 2),
    (2, 3, 1, 1, 0, 2, 2, 3, 3, 1),
    (1, 1, 2, 1, 2, 0, 2, 1, 1, 3),
    (2, 3, 1, 1, 2, 2, 0, 3, 3, 1),
    (2, 1, 3, 2, 3, 1, 3, 0, 2, 4),
    (2, 2, 3, 2, 3, 1, 3, 2, 0, 4),
    (2, 3, 1, 2, 1, 3, 1, 4, 4, 0),
)

GADGET_DISTANCES_H = (
    (0, 1, 1, 1, 2, 1, 2, 2, 2, 2),
    (1, 0, 2, 2, 3, 1, 3, 1, 2, 3),
    (1, 2, 0, 1, 1, 1, 1, 3, 2, 1),
    (1, 2, 1, 0, 2, 2, 2, 2, 1, 2),
    (2, 3, 1, 2, 0, 2, 2, 4, 3, 1),
    (1, 1, 1, 2, 2, 0, 2, 2, 1, 2),
    (2, 3, 1, 2, 2, 2, 0, 4, 3, 1),
    (2, 1, 3, 2, 4, 2, 4, 0, 1, 4),
    (2, 2, 2, 1, 3, 1, 3, 1, 0, 3),
    (2, 3, 1, 2, 1, 2, 1, 4, 3, 0),
)

ROOTS = (0, 1)
GADGET_ORDER = 10


def _graph_from_distances(rows) -> Graph:
    n = len(rows)
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rows[i][j] == 1])


@lru_cache(maxsize=None)
def _gadget(which: str) -> Graph:
    rows = GADGET_DISTANCES_G if which == "G" else GADGET_DISTANCES_H
    g = _graph_from_distances(rows)
    if not np.array_equal(distance_matrix(g), np.array(rows)):
        raise AssertionError(f"BFS distances of gadget {which} disagree with the stored matrix")
    return g


def paper_graph_G() -> Graph:
    return _gadget("G")


def paper_graph_H() -> Graph:
    return _gadget("H")


def build_pair(k: Graph, v: int, u: int = 0) -> tuple[Graph, Graph]:
    """``(GK(u, v), HK(u, v))`` with K's other vertices labelled 10, 11, ..."""
    if u not in ROOTS:
        raise GraphError(f"gadget root must be 0 or 1, got {u}")
    if not 0 <= v < k.n:
        raise GraphError(f"vertex {v} not in K (n={k.n})")
    if not is_connected(k):
        raise GraphError("K must be connected")
    return identify(paper_graph_G(), u, k, v), identify(paper_graph_H(), u, k, v)


def gadget_coefficients(x, lam: float) -> tuple[float, float]:
    """``(alpha, beta)`` of the gadget correction vector."""
    if abs(lam + 0.5) < EXCLUSION_TOL:
        raise ValueError(f"eigenvalue {lam} too close to -1/2")
    x = np.asarray(x, dtype=float)
    den = 2.0 * lam + 1.0
    alpha = (-x[3] - x[5] - x[7] - x[8]) / den
    beta = ((lam + 1.0) * (x[5] + x[8]) - lam * (x[3] + x[7])) / den
    return float(alpha), float(beta)


def theorem21_delta(x, lam: float, n: int | None = None) -> np.ndarray:
    """Correction taking a GK eigenvector to an HK eigenvector with the same eigenvalue."""
    x = np.asarray(x, dtype=float)
    n = len(x) if n is None else n
    if len(x) != n or n < GADGET_ORDER:
        raise ValueError(f"vector length {len(x)} does not match a gadget graph of order {n}")
    alpha, beta = gadget_coefficients(x, lam)
    delta = np.zeros(n)
    delta[[2, 9]] = alpha
    delta[[4, 6]] = -alpha
    delta[[3, 7]] = beta
    delta[5] = -alpha - beta
    delta[8] = alpha - beta
    return delta


def rowsum_identities(x, lam: float) -> tuple[float, float, float]:
    """Absolute defects of the three row-combination identities every GK eigenpair satisfies."""
    x = np.asarray(x, dtype=float)
    x2, x3, x4, x5, x6, x7, x8, x9 = (x[i] for i in range(2, 10))
    r1 = 2 * x3 + x4 + 2 * x5 + x6 + 2 * x7 - lam * (x2 - x4 - x5 - x6 + x8 + x9)
    r2 = x2 - x3 - 3 * x5 - x7 - 3 * x8 + x9 - lam * (-x2 - x3 + x4 + 2 * x5 + x6 - x7 - x9)
    r3 = x2 + x3 + x4 - x5 + x6 + x7 - 3 * x8 + x9 - lam * (-x3 - x7 + x5 + x8)
    return abs(float(r1)), abs(float(r2)), abs(float(r3))


def rowsum_identities_check(gk: Graph, pair) -> tuple[float, float, float]:
    if gk.n < GADGET_ORDER:
        raise GraphError("graph is too small to contain a gadget")
    return rowsum_identities(pair.vector, pair.value)


def m_vector(d: np.ndarray) -> np.ndarray:
    """``D_2 - D_4 - D_5 - D_6 + D_8 + D_9`` as an integer row vector."""
    d = np.asarray(d)
    return d[2] - d[4] - d[5] - d[6] + d[8] + d[9]


@dataclass
class PairRecord:
    value: float
    residual_before: float
    residual_after: float
    alpha: float | None = None
    beta: float | None = None
    identities: tuple[float, ...] = ()


def _pair_dict(p: PairRecord) -> dict:
    out = {"lambda": p.value, "residual_before": p.residual_before, "residual_after": p.residual_after}
    if p.alpha is not None:
        out["alpha"] = p.alpha
        out["beta"] = p.beta
    out["identity_residuals"] = list(p.identities)
    return out


@dataclass
class PerturbationReport:
    n: int
    tol: float
    cospectral: bool
    pairs: list[PairRecord] = field(default_factory=list)
    skipped: int = 0
    excluded_eigenvalue: float = -0.5
    exact_multiplicity: int = 0
    note: str = ""

    @property
    def max_residual_after(self) -> float:
        return max((p.residual_after for p in self.pairs), default=0.0)

    @property
    def max_identity_residual(self) -> float:
        return max((max(p.identities) for p in self.pairs if p.identities), default=0.0)

    @property
    def passed(self) -> bool:
        return (
            self.cospectral
            and self.skipped == self.exact_multiplicity
            and self.max_residual_after <= self.tol
            and self.max_identity_residual <= self.tol
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "tol": self.tol,
            "cospectral": self.cospectral,
            "pairs": [_pair_dict(p) for p in self.pairs],
            "summary": {
                "passed": self.passed,
                "checked": len(self.pairs),
                "skipped": self.skipped,
                "excluded_eigenvalue": self.excluded_eigenvalue,
                "exact_multiplicity": self.exact_multiplicity,
                "max_residual_after": self.max_residual_after,
                "max_identity_residual": self.max_identity_residual,
                "note": self.note,
            },
        }


def verify_theorem21(k: Graph, v: int, u: int = 0, tol: float | None = None) -> PerturbationReport:
    """Check exact cospectrality of (GK, HK) and the eigenvector correction map.

    ``tol`` defaults to ``1e-8 * n * max(D)``.
    """
    gk, hk = build_pair(k, v, u)
    d_g = distance_matrix(gk)
    d_h = distance_matrix(hk)
    poly_g = char_poly(d_g)
    poly_h = char_poly(d_h)
    tol = scaled_tol(d_g) if tol is None else tol
    report = PerturbationReport(
        n=gk.n,
        tol=tol,
        cospectral=poly_g == poly_h,
        exact_multiplicity=root_multiplicity(poly_g, -0.5),
    )
    if u == 1:
        report.note = "u=1 uses the u=0 correction; gadget columns 0 and 1 agree in G and H"
    for pair in eigen_decomposition(d_g):
        lam, x = pair.value, pair.vector
        if abs(lam + 0.5) < EXCLUSION_TOL:
            report.skipped += 1
            continue
        alpha, beta = gadget_coefficients(x, lam)
        y = x + theorem21_delta(x, lam)
        report.pairs.append(
            PairRecord(
                value=lam,
                residual_before=residual(d_h, lam, x),
                residual_after=residual(d_h, lam, y),
                alpha=alpha,
                beta=beta,
                identities=rowsum_identities(x, lam),
            )
        )
    return report


def family(k: int) -> list[Graph]:
    """k+1 graphs: j copies of H and k-j copies of G glued at their vertex 0, j = 0..k."""
    if k < 1:
        raise ValueError("family size k must be at least 1")
    order = 9 * k + 1
    if order > MAX_VERTICES:
        raise GraphError(f"family({k}) needs {order} vertices, cap is {MAX_VERTICES}")
    g, h = paper_graph_G(), paper_graph_H()
    out = []
    for j in range(k + 1):
        acc = empty_graph(1)
        for copy in [h] * j + [g] * (k - j):
            acc = identify(acc, 0, copy, 0)
        out.append(acc)
    return out


def family_is_valid(graphs: list[Graph]) -> bool:
    polys = {tuple(char_poly(distance_matrix(g))) for g in graphs}
    distinct = all(
        not are_isomorphic(a, b) for i, a in enumerate(graphs) for b in graphs[i + 1 :]
    )
    return len(polys) == 1 and distinct
