from math import cos, pi, sqrt

import numpy as np
import pytest
from hypothesis import given, strategies as st

from specgraph import conjectures as cj
from specgraph.errors import PreconditionError
from specgraph.graph import (Graph, complete, complete_bipartite, complete_split, cycle,
                             enumerate_graphs, path, random_connected_graph, random_tree, star)
from specgraph.ranges import clique_family
from specgraph.trees import enumerate_trees
from test_graph import graphs


def is_split(g):
    """Split iff the degree sequence satisfies the Hammer-Simeone equality."""
    d = sorted(g.degrees(), reverse=True)
    m = max([i for i in range(1, g.n + 1) if d[i - 1] >= i - 1] or [0])
    return sum(d[:m]) == m * (m - 1) + sum(d[m:])


def test_brouwer_complete_four():
    r = cj.brouwer_check(complete(4))
    assert r.passed
    # K_4 spectrum {4,4,4,0}: bound 6 + 3 = 9 at k = 2 against S_2 = 8
    assert cj.brouwer_bound(6, 2) - 8 == 1
    r2 = cj.brouwer_check(complete(4), ks=[2])
    assert r2.margin == pytest.approx(1) and r2.worst_k == 2


def test_brouwer_split_graphs():
    count = 0
    for n in range(1, 8):
        for g in enumerate_graphs(n):
            if is_split(g):
                count += 1
                assert cj.brouwer_check(g).passed
    assert count > 100


def test_gmb_star_equality_and_cycle():
    r = cj.gmb_check(star(4))
    assert r.passed and 1 in r.detail["equal_ks"]
    s2 = 2 * (2 - 2 * cos(4 * pi / 5))
    r5 = cj.gmb_check(cycle(5))
    assert r5.passed
    conj = [5, 5, 0, 0, 0]
    assert cj.laplacian_values(cycle(5))[:2].sum() == pytest.approx(s2)
    assert s2 == pytest.approx(7.236, abs=1e-3) and s2 <= sum(conj[:2])


def test_gmb_threshold_graphs_have_equality():
    for omega in range(1, 6):
        for n in range(omega + 1, 9):
            assert cj.gmb_check(complete_split(omega, n)).detail["threshold_equality"]
    assert not cj.gmb_check(cycle(5)).detail["threshold_equality"]


def test_exhaustive_small_graphs():
    for n in range(1, 8):
        for g in enumerate_graphs(n):
            assert cj.gmb_check(g).passed
            assert cj.brouwer_check(g).passed
            for r in cj.majorization_checks(g):
                assert r.passed, r


def test_majorization_star():
    reps = {r.predicate: r for r in cj.majorization_checks(star(4))}
    assert reps["majorization-partial-sums"].margin == pytest.approx(0)
    assert reps["majorization-eigenvalue-lower"].passed


def test_first_eigenvalue_exceeds_max_degree(rng):
    for _ in range(50):
        g = random_connected_graph(int(rng.integers(2, 12)), 0.4, rng)
        mu = cj.laplacian_values(g)
        assert mu[0] >= max(g.degrees()) + 1 - 1e-9


def test_complete_graph_exception_in_eigenvalue_bound():
    # mu_n = 0 < d_n - n + 2 = 1 on K_n, the excluded case
    mu = cj.laplacian_values(complete(5))
    assert mu[-1] < 4 - 5 + 2
    assert all(r.passed for r in cj.majorization_checks(complete(5)))


def test_tree_bound_all_trees():
    for n in range(2, 13):
        for t in enumerate_trees(n):
            reps = {r.predicate: r for r in cj.sk_bound_checks(t)}
            assert reps["sk-tree-bound"].passed


def test_tree_bound_star_equality_at_one():
    reps = {r.predicate: r for r in cj.sk_bound_checks(star(6))}
    assert reps["sk-tree-bound"].worst_k == 1
    assert reps["sk-tree-bound"].margin == pytest.approx(0)


def test_clique_bound_on_clique_family():
    seen = 0
    for omega in range(2, 5):
        for a in range(1, 4):
            for c in (0, 1):
                for g in clique_family(omega, a, c):
                    hints = cj.StructureHints(clique=tuple(range(omega)))
                    reps = {r.predicate: r for r in cj.sk_bound_checks(g, hints)}
                    assert reps["sk-clique-bound"].passed
                    seen += 1
    assert seen > 20


def test_pendant_bound_connected_graphs():
    count = 0
    for n in range(2, 8):
        for g in enumerate_graphs(n, connected_only=True):
            if 1 in g.degrees():
                reps = {r.predicate: r for r in cj.sk_bound_checks(g)}
                assert reps["sk-pendant-bound"].passed
                count += 1
    assert count > 300


def test_structure_hints():
    g = complete_split(4, 7)
    clique = cj.max_clique(g)
    assert len(clique) == 5 and set(range(4)) <= set(clique)
    a, b = cj.max_biclique(complete_bipartite(3, 4))
    assert (len(a), len(b)) == (4, 3)
    with pytest.raises(PreconditionError):
        cj.sk_upper_bounds(path(4), cj.StructureHints(clique=(0, 2)))
    with pytest.raises(PreconditionError):
        cj.sk_upper_bounds(path(4), cj.StructureHints(biclique=((0, 1), (2, 3))))


@given(graphs(9))
def test_max_clique_against_brute_force(g):
    from itertools import combinations
    best = 1 if g.n else 0
    for k in range(2, g.n + 1):
        if any(all(g.has_edge(u, v) for u, v in combinations(s, 2)) for s in combinations(range(g.n), k)):
            best = k
    assert len(cj.max_clique(g)) == best


def test_le_examples():
    assert cj.path_energy(4) == pytest.approx(2 + 2 * sqrt(2), abs=1e-9)
    assert cj.star_energy(4) == pytest.approx(5)
    assert cj.path_energy(4) <= cj.star_energy(4)


def test_le_all_trees_small():
    for n in range(2, 13):
        for t in enumerate_trees(n):
            for r in cj.le_checks(t):
                assert r.passed, r


def test_le_small_internal_certificate_present():
    # a caterpillar-free tree with few internal vertices: star-like
    t = star(40)
    preds = {r.predicate: r for r in cj.le_checks(t)}
    assert preds["le-small-internal-certificate"].passed


def test_le_rejects_non_tree():
    with pytest.raises(PreconditionError):
        cj.le_checks(cycle(4))


def test_dalpha_cycle_equality():
    reps = {r.predicate: r for r in cj.dalpha_bounds(cycle(4), 0.5)}
    vals = cj.dalpha_values(cycle(4), 0.5)
    assert vals[0] == pytest.approx(4)
    assert reps["dalpha-radius-lower"].margin == pytest.approx(0, abs=1e-12)
    assert reps["dalpha-regular-equality"].detail == {"transmission_regular": True, "tight": True}


def test_dalpha_cycles_transmission_regular():
    for n in range(3, 12):
        for a in (0, 0.25, 0.5, 0.75):
            reps = {r.predicate: r for r in cj.dalpha_bounds(cycle(n), a)}
            assert all(r.passed for r in reps.values())
            assert reps["dalpha-regular-equality"].detail["tight"]


def test_dalpha_all_small_graphs():
    for n in range(2, 7):
        for g in enumerate_graphs(n, connected_only=True):
            for a in (0, 0.25, 0.5, 0.75, 0.9):
                for r in cj.dalpha_bounds(g, a):
                    assert r.passed, r


def test_radius_bound_logs_alternatives():
    up, alts = cj.radius_upper_bound(path(5), 0.5)
    assert np.isfinite(up)
    assert {"displayed_proof_radicand", "displayed_closed_radicand", "pair"} <= set(alts)


def test_tree_energy_bound_and_star_equality():
    for n in range(3, 11):
        for t in enumerate_trees(n):
            for a in [round(0.1 * i, 1) for i in range(1, 10)]:
                reps = {r.predicate: r for r in cj.dalpha_bounds(t, a)}
                assert reps["dalpha-tree-energy"].passed
                assert reps["dalpha-tree-equality"].passed
                if max(t.degrees()) == n - 1 and a * (3 * n - 2) <= 2 * n + 1e-12:
                    assert reps["dalpha-tree-equality"].detail["margin"] == pytest.approx(0, abs=1e-8)


def test_edge_deletion_monotone(rng):
    done = 0
    while done < 100:
        g = random_connected_graph(int(rng.integers(3, 10)), 0.5, rng)
        edges = [e for e in g.edges() if g.remove_edge(*e).is_connected()]
        if not edges:
            continue
        e = edges[int(rng.integers(len(edges)))]
        for a in (0.5, 0.75, 1.0):
            assert cj.edge_deletion_check(g, e, a).passed
        done += 1


def test_edge_deletion_rejects_bridge():
    with pytest.raises(PreconditionError):
        cj.edge_deletion_check(path(4), (1, 2), 0.5)


def test_csv_and_summary_deterministic():
    items = [(None, g) for g in enumerate_graphs(5, connected_only=True)]
    g1, s1 = cj.run_sweep("brouwer", items, jobs=1)
    g2, s2 = cj.run_sweep("brouwer", items, jobs=2)
    assert cj.reports_csv(g1) == cj.reports_csv(g2)
    assert s1 == s2 and s1.checked == 21 and s1.failed == 0
    assert s1.line().startswith("checked 21, failed 0, min-margin ")
    assert cj.reports_csv(g1).splitlines()[0] == "instance_id,predicate,pass,worst_k,margin"


def test_merge_is_associative():
    a = cj.SweepSummary(3, 1, -0.5, "x")
    b = cj.SweepSummary(2, 0, 0.25, "y")
    c = cj.SweepSummary(4, 2, -1.0, "z")
    assert cj.merge_summaries(cj.merge_summaries(a, b), c) == cj.merge_summaries(a, cj.merge_summaries(b, c))


def test_failing_report_has_negative_margin():
    r = cj._report("x", "demo", 4, {1: -1.0, 2: 3.0})
    assert not r.passed and r.margin < -cj.tolerance(4) and r.worst_k == 1
    with pytest.raises(ArithmeticError):
        cj.CheckReport("x", "demo", True, None, float("nan"))


def test_number_format():
    from fractions import Fraction
    assert cj.fmt_num(Fraction(3, 7)) == "3/7"
    assert cj.fmt_num(1 / 3) == "0.333333333333"
