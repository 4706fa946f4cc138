from math import cos, pi, sqrt

import numpy as np
import pytest

from specgraph.catalog import (
    CATALOG, catalog_graph, closed_form_spectrum, oracle_values, star_dalpha_energy,
    star_dalpha_energy_from_eigs, star_k,
)
from specgraph.errors import ParameterError
from specgraph.graph import cone, star
from specgraph.spectra import build_matrix, eigenvalues, generalized_distance_energy, same_multiset

ALPHAS = [round(0.1 * i, 1) for i in range(1, 10)]
PRIMES = [2, 3, 5, 7, 11]


def sweep(family, kind):
    r8 = range(1, 9)
    if family in ("complete_bipartite",) and kind != "Dalpha":
        return [dict(a=a, b=b) for a in r8 for b in r8]
    if family == "complete_split":
        return [dict(omega=w, n=n) for n in range(2, 13) for w in range(1, n)]
    if family == "cone":
        return [dict(a=a, b=b) for a in range(3, 9) for b in r8]
    if family == "wheel":
        return [dict(n=n) for n in range(4, 13)]
    if family == "friendship":
        return [dict(n=n) for n in r8]
    if family == "firefly":
        return [dict(p=p, n=n) for n in range(2, 9) for p in range(1, n)]
    if family == "generalized_wheel":
        return [dict(a=a, b=b) for a in r8 for b in range(3, 9)]
    if family == "gamma_pq":
        return [dict(p=p, q=q) for p in PRIMES for q in PRIMES if p < q]
    if family == "gamma_p2q":
        return [dict(p=p, q=q) for p in PRIMES[:4] for q in PRIMES[:4] if p != q]
    if family == "gamma_p2":
        return [dict(p=p) for p in PRIMES[1:]]
    if family == "gamma_p3":
        return [dict(p=p) for p in PRIMES[:3]]
    if family == "gamma_p4":
        return [dict(p=p) for p in PRIMES[:2]]
    if family == "star":
        return [dict(n=n, alpha=a) for n in range(3, 13) for a in ALPHAS]
    if family == "complete_bipartite":
        return [dict(a=a, b=b, alpha=al) for a in r8 for b in r8 for al in ALPHAS]
    raise AssertionError(family)


@pytest.mark.parametrize("family,kind", sorted(CATALOG))
def test_catalog_entry_matches_oracle(family, kind):
    cases = sweep(family, kind)
    assert cases
    for params in cases:
        got = closed_form_spectrum(family, kind, params)
        assert same_multiset(got, oracle_values(family, kind, params), 1e-8), params


def test_unknown_pair():
    with pytest.raises(ParameterError):
        closed_form_spectrum("wheel", "DistQ", {"n": 5})
    with pytest.raises(ParameterError):
        closed_form_spectrum("gamma_pq", "DistQ", {"p": 4, "q": 5})


def test_star_dalpha_example():
    sp = closed_form_spectrum("star", "Dalpha", dict(n=4, alpha=0.5))
    assert star_k(4, 0.5) == pytest.approx(12)
    assert same_multiset(sp, [(6 + sqrt(12)) / 2, (6 - sqrt(12)) / 2, 1.5, 1.5])
    assert sp.values().sum() == pytest.approx(9)


def test_wheel_contains_zero_and_four_thirds():
    sp = closed_form_spectrum("wheel", "NL", dict(n=7))
    assert sp.multiplicity(0) == 1 and sp.multiplicity(4 / 3) >= 1


def test_gamma_p3_smallest_case_is_complete_split():
    g = catalog_graph("gamma_p3", dict(p=2))
    assert g.n == 3 and g.m == 2


@pytest.mark.parametrize("n", range(4, 31))
def test_star_energy_both_branches(n):
    for a in ALPHAS:
        oracle = generalized_distance_energy(star(n), a)
        assert star_dalpha_energy(n, a) == pytest.approx(oracle, abs=1e-8)
        assert star_dalpha_energy_from_eigs(n, a) == pytest.approx(oracle, abs=1e-8)
    upper = [a for a in ALPHAS if a >= 2 * n / (3 * n - 2)]
    lower = [a for a in ALPHAS if a < 2 * n / (3 * n - 2)]
    assert upper and lower


# ---------------------------------------------------------------- printed variants that fail the oracle

def printed_star_upper(n, a):
    return sqrt(star_k(n, a)) - n * a * (4 * n - 19) - 22 * a - 2 * n + 4 + 8 * a / n


def test_printed_star_upper_branch_disagrees():
    for n in range(4, 31):
        for a in ALPHAS:
            if a >= 2 * n / (3 * n - 2):
                assert abs(printed_star_upper(n, a) - generalized_distance_energy(star(n), a)) > 1e-3


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (3, 5), (5, 3)])
def test_printed_p2q_value_and_quotient_disagree(p, q):
    oracle = oracle_values("gamma_p2q", "DistQ", dict(p=p, q=q))
    if q > 2:
        printed = 2 * p * q + p * p - 2 * p - 4
        fixed = printed - 1
        assert np.min(np.abs(oracle - fixed)) < 1e-8
        assert np.min(np.abs(oracle - printed)) > 1e-6
    u = p * q - p - q + 1
    printed_q = np.array([
        [p * (4 * p + 3 * q - 5) - 2 * q - 4, p - 1, 2 * (q - 1), 3 * p * (p - 1)],
        [u, p * (p + 2 * q - 2) + 2 * q - 7, q - 1, 2 * p * (p - 1)],
        [2 * u, p - 1, p * (2 * p + q - 1) - 4, p * (p - 1)],
        [3 * u, 2 * (p - 1), q - 1, p * (3 * p + 4 * q - 6) - 2 * q - 3],
    ], dtype=float)
    roots = np.real(np.linalg.eigvals(printed_q))
    assert max(np.min(np.abs(oracle - r)) for r in roots) > 1e-6


def test_gamma_pq_needs_graph_order_not_modulus():
    p, q = 3, 5
    oracle = oracle_values("gamma_pq", "DistQ", dict(p=p, q=q))
    n = p * q
    wrong = [(5 * n - 8 + s * sqrt(9 * (p - q) ** 2 + 4 * (p - 1) * (q - 1))) / 2 for s in (1, -1)]
    assert all(np.min(np.abs(oracle - w)) > 1e-6 for w in wrong)


def test_cone_printed_cosine_range_disagrees():
    a, b = 5, 2
    oracle = eigenvalues(build_matrix(cone(a, b), "NL"))
    printed = [0.0, (2 * b + 2) / (b + 2)] + [1 - 2 * cos(2 * pi * k / a) / (2 + b) for k in range(2, a + 1)] + [1.0] * (b - 1)
    assert not same_multiset(printed, oracle)
