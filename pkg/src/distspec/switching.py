"""Distance switching: move two edges at a vertex ``s`` from ``{g1, g2}`` to ``{h1, h2}``.

For a vertex ``v`` let ``c(v) = d(v,g1) + d(v,g2) - d(v,h1) - d(v,h2)``. When every
vertex outside the switched four has ``c`` equal to -2 (set A) or 0 (set B), the
four have ``c(g_i) = -k`` and ``c(h_i) = k``, and the switched graph's distances
move as prescribed, the two graphs are distance cospectral.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .constructions import PairRecord, PerturbationReport
from .exact import char_poly, root_multiplicity
from .graph import (
    Graph,
    GraphError,
    distance_matrix,
    from_edge_list,
    identify,
    is_connected,
)
from .numeric import EXCLUSION_TOL, eigen_decomposition, residual, scaled_tol

ALLOWED_K = (0, 1, 2)


@dataclass(frozen=True)
class SwitchTuple:
    s: int
    g: tuple[int, int]
    h: tuple[int, int]
    k: int
    A: tuple[int, ...]
    B: tuple[int, ...]

    @property
    def switched(self) -> tuple[int, int, int, int]:
        return (*self.g, *self.h)

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "g": list(self.g),
            "h": list(self.h),
            "k": self.k,
            "A": list(self.A),
            "B": list(self.B),
        }

    @classmethod
    def from_dict(cls, data: dict) -> SwitchTuple:
        return cls(
            s=int(data["s"]),
            g=tuple(sorted(int(x) for x in data["g"])),
            h=tuple(sorted(int(x) for x in data["h"])),
            k=int(data["k"]),
            A=tuple(sorted(int(x) for x in data["A"])),
            B=tuple(sorted(int(x) for x in data["B"])),
        )


def c_values(g: Graph, g1: int, g2: int, h1: int, h2: int, d: np.ndarray | None = None) -> list[int]:
    if len({g1, g2, h1, h2}) != 4:
        raise GraphError(f"switch vertices must be distinct, got {(g1, g2, h1, h2)}")
    d = distance_matrix(g) if d is None else d
    return [int(x) for x in d[:, g1] + d[:, g2] - d[:, h1] - d[:, h2]]


def _classify(g: Graph, s: int, g_pair, h_pair, d: np.ndarray) -> SwitchTuple | None:
    g1, g2 = g_pair
    h1, h2 = h_pair
    c = c_values(g, g1, g2, h1, h2, d)
    k = -c[g1]
    if k not in ALLOWED_K or c[g2] != -k or c[h1] != k or c[h2] != k:
        return None
    a, b = [], []
    for w in range(g.n):
        if w in (g1, g2, h1, h2):
            continue
        if c[w] == -2:
            a.append(w)
        elif c[w] == 0:
            b.append(w)
        else:
            return None
    return SwitchTuple(s, (g1, g2), (h1, h2), k, tuple(a), tuple(b))


def make_tuple(g: Graph, s: int, g1: int, g2: int, h1: int, h2: int) -> SwitchTuple:
    """Derive k and the A/B partition for the given switch vertices, or raise."""
    gp, hp = tuple(sorted((g1, g2))), tuple(sorted((h1, h2)))
    _check_adjacency(g, s, gp, hp)
    t = _classify(g, s, gp, hp, distance_matrix(g))
    if t is None:
        raise GraphError("c-values do not admit a switching partition for this tuple")
    return t


def _check_adjacency(g: Graph, s: int, gp, hp) -> None:
    verts = (s, *gp, *hp)
    if len(set(verts)) != 5 or not all(0 <= x < g.n for x in verts):
        raise GraphError(f"switch needs five distinct vertices of the graph, got {verts}")
    if not (g.has_edge(s, gp[0]) and g.has_edge(s, gp[1])):
        raise GraphError(f"s={s} must be adjacent to both of {gp}")
    if g.has_edge(s, hp[0]) or g.has_edge(s, hp[1]):
        raise GraphError(f"s={s} must not be adjacent to {hp}")


def find_switch_candidates(g: Graph) -> list[SwitchTuple]:
    """All tuples meeting the adjacency and c-value conditions, in lexicographic order."""
    d = distance_matrix(g)
    out = []
    for s in range(g.n):
        nbrs = g.neighbors(s)
        non = [w for w in range(g.n) if w != s and not g.has_edge(s, w)]
        for gp in combinations(nbrs, 2):
            for hp in combinations(non, 2):
                t = _classify(g, s, gp, hp, d)
                if t is not None:
                    out.append(t)
    return out


def apply_switch(g: Graph, t: SwitchTuple) -> Graph:
    _check_adjacency(g, t.s, t.g, t.h)
    drop = {(min(t.s, x), max(t.s, x)) for x in t.g}
    edges = [e for e in g.edges if e not in drop]
    edges += [(t.s, x) for x in t.h]
    return from_edge_list(g.n, edges)


def inverse_tuple(t: SwitchTuple) -> SwitchTuple:
    """Tuple undoing ``t`` on the switched graph; A and B are carried over, not re-derived."""
    return SwitchTuple(t.s, t.h, t.g, t.k, t.A, t.B)


def hypothesis_failure(g: Graph, h: Graph, t: SwitchTuple) -> str | None:
    """Why the switched pair fails the cospectrality hypotheses, or None if it meets them."""
    if not is_connected(h):
        return "switched graph is disconnected"
    dg = distance_matrix(g)
    dh = distance_matrix(h)
    for b in t.B:
        if not np.array_equal(dg[b], dh[b]):
            return f"row of B-vertex {b} changed"
    others = [w for w in range(g.n) if w not in t.switched]
    for a in t.A:
        if not np.array_equal(dg[a, others], dh[a, others]):
            return f"A-vertex {a} changed a distance outside the switched vertices"
        for x in t.g:
            if dh[a, x] != dg[a, x] + 1:
                return f"d({a},{x}) did not grow by one"
        for x in t.h:
            if dh[a, x] != dg[a, x] - 1:
                return f"d({a},{x}) did not shrink by one"
    return None


def verify_distance_hypotheses(g: Graph, h: Graph, t: SwitchTuple) -> bool:
    return hypothesis_failure(g, h, t) is None


def theorem32_delta(x, lam: float, A, k: int, g1: int, g2: int, h1: int, h2: int) -> np.ndarray:
    if abs(lam + k) < EXCLUSION_TOL:
        raise ValueError(f"eigenvalue {lam} too close to {-k}")
    x = np.asarray(x, dtype=float)
    shift = float(np.sum(x[list(A)])) / (lam + k)
    delta = np.zeros(len(x))
    delta[[g1, g2]] = shift
    delta[[h1, h2]] = -shift
    return delta


def switch_row_identity(x, lam: float, t: SwitchTuple) -> float:
    """Defect of ``(lam + k)(x_g1 + x_g2 - x_h1 - x_h2) = -2 * sum_A x``."""
    x = np.asarray(x, dtype=float)
    lhs = (lam + t.k) * (x[t.g[0]] + x[t.g[1]] - x[t.h[0]] - x[t.h[1]])
    rhs = -2.0 * float(np.sum(x[list(t.A)]))
    return abs(float(lhs - rhs))


def row_identity_vector(d: np.ndarray, t: SwitchTuple) -> np.ndarray:
    """``D_g1 + D_g2 - D_h1 - D_h2``; equals -2 on A, 0 on B, -k on g, k on h."""
    return d[t.g[0]] + d[t.g[1]] - d[t.h[0]] - d[t.h[1]]


def expected_row_identity(n: int, t: SwitchTuple) -> np.ndarray:
    out = np.zeros(n, dtype=np.int64)
    out[list(t.A)] = -2
    out[list(t.g)] = -t.k
    out[list(t.h)] = t.k
    return out


def verify_theorem32(g: Graph, t: SwitchTuple, tol: float | None = None) -> PerturbationReport:
    h = apply_switch(g, t)
    reason = hypothesis_failure(g, h, t)
    if reason is not None:
        raise GraphError(f"switching hypotheses fail: {reason}")
    dg = distance_matrix(g)
    dh = distance_matrix(h)
    poly_g = char_poly(dg)
    tol = scaled_tol(dg) if tol is None else tol
    report = PerturbationReport(
        n=g.n,
        tol=tol,
        cospectral=poly_g == char_poly(dh),
        excluded_eigenvalue=float(-t.k),
        exact_multiplicity=root_multiplicity(poly_g, -t.k),
    )
    for pair in eigen_decomposition(dg):
        lam, x = pair.value, pair.vector
        if abs(lam + t.k) < EXCLUSION_TOL:
            report.skipped += 1
            continue
        y = x + theorem32_delta(x, lam, t.A, t.k, *t.g, *t.h)
        report.pairs.append(
            PairRecord(
                value=lam,
                residual_before=residual(dh, lam, x),
                residual_after=residual(dh, lam, y),
                identities=(switch_row_identity(x, lam, t),),
            )
        )
    return report


def corollary_pair(
    g: Graph, t: SwitchTuple, u: int, k: Graph, v: int
) -> tuple[Graph, Graph, SwitchTuple]:
    """Glue ``k`` at a non-switched vertex ``u`` of both graphs; returns (GK, HK, extended tuple).

    Raises GraphError if any step of the certification fails.
    """
    if u in t.switched or not 0 <= u < g.n:
        raise GraphError(f"attachment vertex {u} must be a non-switched vertex of G")
    if not is_connected(k):
        raise GraphError("K must be connected")
    h = apply_switch(g, t)
    reason = hypothesis_failure(g, h, t)
    if reason is not None:
        raise GraphError(f"base pair fails the switching hypotheses: {reason}")
    gk = identify(g, u, k, v)
    hk = identify(h, u, k, v)
    portion = tuple(range(g.n, gk.n))
    if u in t.A:
        ext = SwitchTuple(t.s, t.g, t.h, t.k, t.A + portion, t.B)
    else:
        ext = SwitchTuple(t.s, t.g, t.h, t.k, t.A, t.B + portion)
    derived = _classify(gk, t.s, t.g, t.h, distance_matrix(gk))
    if derived != ext:
        raise GraphError("extended partition does not match the c-values of the glued graph")
    if apply_switch(gk, ext).edges != hk.edges:
        raise GraphError("switching the glued graph does not reproduce the glued mate")
    reason = hypothesis_failure(gk, hk, ext)
    if reason is not None:
        raise GraphError(f"glued pair fails the switching hypotheses: {reason}")
    if char_poly(distance_matrix(gk)) != char_poly(distance_matrix(hk)):
        raise GraphError("glued pair is not distance cospectral")
    return gk, hk, ext

