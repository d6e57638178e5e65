"""One test per acceptance criterion; each records a pass/fail line for the terminal summary."""
import time

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings

from distspec.canon import are_isomorphic
from distspec.constructions import (
    GADGET_DISTANCES_G,
    GADGET_DISTANCES_H,
    build_pair,
    family,
    paper_graph_G,
    paper_graph_H,
    verify_theorem21,
)
from distspec.enumerate import certificate_holds, connected_graphs
from distspec.exact import char_poly
from distspec.graph import (
    cycle_graph,
    distance_matrix,
    from_graph6,
    is_bipartite,
    path_graph,
    to_graph6,
)
from distspec.numeric import scaled_tol
from distspec.sweep import sweep_graphs
from distspec.switching import (
    SwitchTuple,
    apply_switch,
    c_values,
    corollary_pair,
    verify_distance_hypotheses,
    verify_theorem32,
)

from oracles import bfs_distances, charpoly_by_interpolation, labeled_connected_classes
from strategies import connected_graphs as connected_strategy
from strategies import graphs as graph_strategy

def examples(count):
    return settings(
        max_examples=count, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow]
    )


class Criterion:
    """Context manager that records pass/fail even when an assertion fires."""

    def __init__(self, accept, name):
        self.accept, self.name, self.detail = accept, name, ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        detail = f"{self.detail}; {elapsed:.1f}s" if self.detail else f"{elapsed:.1f}s"
        if exc_type is not None:
            detail = f"{exc_type.__name__}: {exc}; {detail}"
        self.accept(self.name, exc_type is None, detail)
        return False


def _certified_pairs(report):
    for cls, pair in report.pairs:
        cert = pair.certificate
        assert cert is not None
        src = cls.graphs[cert["source"]]
        yield cls, pair, src, SwitchTuple.from_dict(cert)


@pytest.fixture(scope="module")
def sweep():
    graphs = sweep_graphs(seed=0)
    return graphs, [
        (k, v, u, *build_pair(k, v, u)) for k in graphs for u in (0, 1) for v in range(k.n)
    ]


def test_c01_gadget_fidelity(accept):
    with Criterion(accept, "1 gadget fidelity") as c:
        g, h = paper_graph_G(), paper_graph_H()
        assert bfs_distances(g.n, g.edges) == [list(r) for r in GADGET_DISTANCES_G]
        assert bfs_distances(h.n, h.edges) == [list(r) for r in GADGET_DISTANCES_H]
        assert distance_matrix(g).tolist() == [list(r) for r in GADGET_DISTANCES_G]
        assert distance_matrix(h).tolist() == [list(r) for r in GADGET_DISTANCES_H]
        assert (g.edge_count, h.edge_count) == (17, 16)
        c.detail = "edges 17/16"


def test_c02_base_case(accept):
    with Criterion(accept, "2 gadget base case cospectral, non-isomorphic") as c:
        g, h = paper_graph_G(), paper_graph_H()
        pg, ph = char_poly(distance_matrix(g)), char_poly(distance_matrix(h))
        assert pg == ph
        assert pg == charpoly_by_interpolation(distance_matrix(g).tolist())
        assert not are_isomorphic(g, h)
        c.detail = f"charpoly {pg}"


def test_c03_identification_sweep(accept, sweep):
    with Criterion(accept, "3 identification sweep") as c:
        graphs, instances = sweep
        assert len(graphs) == 14 + 6 + 10
        assert all(k.n <= 8 for k in graphs)
        for k, v, u, gk, hk in instances:
            tag = (to_graph6(k), v, u)
            assert char_poly(distance_matrix(gk)) == char_poly(distance_matrix(hk)), tag
            assert not are_isomorphic(gk, hk), tag
            assert gk.edge_count - hk.edge_count == 1, tag
        c.detail = f"{len(graphs)} K, {len(instances)} instances"


def test_c04_perturbation_residuals(accept, sweep):
    with Criterion(accept, "4 gadget perturbation residuals (u=0)") as c:
        _, instances = sweep
        worst_res = worst_id = 0.0
        count = 0
        for k, v, u, gk, _ in instances:
            if u != 0:
                continue
            tol = scaled_tol(distance_matrix(gk))
            rep = verify_theorem21(k, v, 0, tol=tol)
            assert rep.cospectral
            assert len(rep.pairs) + rep.skipped == gk.n
            for p in rep.pairs:
                assert abs(p.value + 0.5) >= 1e-6
                assert p.residual_after <= tol, (to_graph6(k), v, p.value, p.residual_after)
                assert max(p.identities) <= tol, (to_graph6(k), v, p.value, p.identities)
            worst_res = max(worst_res, rep.max_residual_after / tol)
            worst_id = max(worst_id, rep.max_identity_residual / tol)
            count += 1
        c.detail = f"{count} instances; worst residual/tol {worst_res:.1e}, identities/tol {worst_id:.1e}"


def test_c05_family(accept):
    with Criterion(accept, "5 cospectral family k=1..4") as c:
        for k in range(1, 5):
            graphs = family(k)
            assert len(graphs) == k + 1
            polys = {tuple(char_poly(distance_matrix(g))) for g in graphs}
            assert len(polys) == 1
            assert sorted(g.edge_count for g in graphs) == list(range(16 * k, 17 * k + 1))
            for i in range(len(graphs)):
                for j in range(i + 1, len(graphs)):
                    assert not are_isomorphic(graphs[i], graphs[j])
        c.detail = "edge counts 16k..17k"


def test_c06_enumeration_oracle(accept):
    with Criterion(accept, "6 enumeration matches brute force n=1..6") as c:
        counts = [len(connected_graphs(n)) for n in range(1, 7)]
        oracle = [len(labeled_connected_classes(n)) for n in range(1, 7)]
        assert counts == oracle == [1, 1, 2, 6, 21, 112]
        c.detail = f"counts {counts}"


def test_c07_seven_vertex_census(accept, mined7):
    with Criterion(accept, "7 n=7 census all switching-explained") as c:
        pairs = mined7.pairs
        assert pairs
        for cls, pair in pairs:
            a, b = cls.graphs[pair.i], cls.graphs[pair.j]
            assert not are_isomorphic(a, b)
            assert char_poly(distance_matrix(a)) == char_poly(distance_matrix(b)) == cls.charpoly
            assert pair.edge_counts[0] == pair.edge_counts[1]
            assert is_bipartite(a) == is_bipartite(b)
            assert pair.switching_explained
            assert certificate_holds(cls.graphs, pair)
        for _, _, src, t in _certified_pairs(mined7):
            assert verify_distance_hypotheses(src, apply_switch(src, t), t)
        c.detail = f"{mined7.graph_count} graphs, {len(pairs)} pairs"


@pytest.mark.slow
def test_c08_eight_vertex_census(accept, mined8):
    with Criterion(accept, "8 n=8 census edge/bipartite counts") as c:
        summary = mined8.summary()
        assert summary["differing_edge_pairs"] == 1
        assert summary["mixed_bipartite_pairs"] == 0
        c.detail = (
            f"{mined8.graph_count} graphs, {summary['pair_count']} pairs, "
            f"{summary['switching_explained']} via switching, 1 differing-edge pair"
        )


def test_c09_switching_residuals(accept, mined7):
    with Criterion(accept, "9 switching perturbation residuals (n=7)") as c:
        worst = 0.0
        count = 0
        for _, _, src, t in _certified_pairs(mined7):
            tol = scaled_tol(distance_matrix(src))
            rep = verify_theorem32(src, t, tol=tol)
            assert rep.cospectral
            for p in rep.pairs:
                assert abs(p.value + t.k) >= 1e-6
                assert p.residual_after <= tol
                assert p.identities[0] <= tol
            worst = max(worst, max(rep.max_residual_after, rep.max_identity_residual) / tol)
            count += 1
        c.detail = f"{count} pairs; worst residual/tol {worst:.1e}"


def test_c10_gluing_switched_pairs(accept, mined7):
    with Criterion(accept, "10 switching pairs glued with P2, P3, C4") as c:
        ks = [path_graph(2), path_graph(3), cycle_graph(4)]
        count = 0
        for _, _, src, t in _certified_pairs(mined7):
            free = [w for w in range(src.n) if w not in t.switched]
            assert len(free) >= 3
            for u in free[:3]:
                c_base = c_values(src, *t.g, *t.h)[u]
                for k in ks:
                    for v in range(k.n):
                        gk, hk, _ = corollary_pair(src, t, u, k, v)
                        assert char_poly(distance_matrix(gk)) == char_poly(distance_matrix(hk))
                        cg = c_values(gk, *t.g, *t.h)
                        assert all(cg[w] == c_base for w in range(src.n, gk.n))
                        count += 1
        c.detail = f"{count} glued pairs"


def test_c11_property_suites(accept):
    with Criterion(accept, "11 property suites") as c:

        @examples(500)
        @given(connected_strategy(1, 12))
        def distance_invariants(g):
            d = distance_matrix(g)
            n = g.n
            assert np.array_equal(d, d.T)
            assert not np.diag(d).any()
            off = ~np.eye(n, dtype=bool)
            assert (d[off] >= 1).all()
            assert all(d[i, k] <= d[i, j] + d[j, k] for i in range(n) for j in range(n) for k in range(n))
            assert all((d[i, j] == 1) == g.has_edge(i, j) for i in range(n) for j in range(n) if i != j)

        @examples(100)
        @given(connected_strategy(1, 8))
        def charpoly_cross_check(g):
            d = distance_matrix(g)
            assert char_poly(d) == charpoly_by_interpolation(d.tolist())

        @examples(500)
        @given(graph_strategy(0, 20))
        def graph6_round_trip(g):
            s = to_graph6(g)
            back = from_graph6(s)
            assert back.n == g.n and back.edges == g.edges
            assert to_graph6(back) == s

        distance_invariants()
        charpoly_cross_check()
        graph6_round_trip()
        c.detail = "500 distance, 100 charpoly, 500 graph6 examples"
