"""Closed-form spectra for named families, each paired with a graph builder so
every formula can be compared against the dense eigensolver."""
from __future__ import annotations

from math import cos, pi, sqrt

import numpy as np

from .algebraic import zero_divisor_graph
from .errors import ParameterError
from .graph import FamilySpec, Graph, build_named
from .spectra import Spectrum, as_fraction, eigenvalues


def _rep(value, k: int) -> list[float]:
    if k < 0:
        raise ParameterError("parameters give a negative multiplicity")
    return [float(value)] * k


def _pm(centre: float, rad: float) -> list[float]:
    if rad < 0:
        raise ArithmeticError("negative discriminant")
    r = sqrt(rad)
    return [(centre + r) / 2, (centre - r) / 2]


def _need(cond: bool, msg: str):
    if not cond:
        raise ParameterError(msg)


# ---------------------------------------------------------------- normalized Laplacian

def _nl_complete_bipartite(a, b):
    _need(a >= 1 and b >= 1, "need a, b >= 1")
    return [0.0] + _rep(1, a + b - 2) + [2.0]


def _nl_complete_split(omega, n):
    _need(1 <= omega < n, "need 1 <= omega < n")
    return [0.0] + _rep(n / (n - 1), omega - 1) + _rep(1, n - omega - 1) + [(2 * n - omega - 1) / (n - 1)]


def _nl_cone(a, b):
    _need(a >= 3 and b >= 1, "need a >= 3, b >= 1")
    cyc = [1 - 2 * cos(2 * pi * k / a) / (2 + b) for k in range(1, a)]
    return [0.0, (2 * b + 2) / (b + 2)] + cyc + _rep(1, b - 1)


def _nl_wheel(n):
    _need(n >= 4, "need n >= 4")
    m = n - 1
    return [0.0, 4 / 3] + [1 - 2 * cos(2 * pi * k / m) / 3 for k in range(1, m)]


def _nl_friendship(n):
    _need(n >= 1, "need n >= 1")
    return [0.0] + _rep(0.5, n - 1) + _rep(1.5, n + 1)


def _nl_firefly(p, n):
    _need(1 <= p <= n - 1, "need 1 <= p <= n - 1")
    s = sqrt(2 * n - p)
    t = sqrt(2 * n + 7 * p)
    return ([0.0] + _rep(0.5, n - p - 1) + _rep(1, p - 1) + _rep(1.5, n - p)
            + [(5 * s + t) / (4 * s), (5 * s - t) / (4 * s)])


def _nl_generalized_wheel(a, b):
    _need(a >= 1 and b >= 3, "need a >= 1, b >= 3")
    cyc = [1 - 2 * cos(2 * pi * k / b) / 3 for k in range(1, b)]
    return [0.0, 4 / 3] + _rep(1 / 3, a - 1) + cyc * a


# ---------------------------------------------------------------- distance signless Laplacian

def _dq_complete_bipartite(a, b):
    _need(a >= 1 and b >= 1 and a + b >= 2, "need a, b >= 1")
    return (_rep(2 * a + b - 4, a - 1) + _rep(2 * b + a - 4, b - 1)
            + _pm(5 * (a + b) - 8, 9 * (a - b) ** 2 + 4 * a * b))


def _dq_complete_split(omega, n):
    _need(1 <= omega < n, "need 1 <= omega < n")
    d = (3 * (2 * omega - n) - 2 * (omega - 1)) ** 2 + 4 * omega * (n - omega)
    return (_rep(n - 2, omega - 1) + _rep(2 * n - omega - 4, n - omega - 1)
            + _pm(5 * n - 2 * omega - 6, d))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _primes(*ps):
    _need(all(_is_prime(p) for p in ps), "parameters must be primes")
    _need(len(set(ps)) == len(ps), "primes must be distinct")


def _dq_gamma_pq(p, q):
    _primes(p, q)
    n = p + q - 2  # order of the graph, not the modulus
    return (_rep(2 * n - q - 3, p - 2) + _rep(2 * n - p - 3, q - 2)
            + _pm(5 * n - 8, 9 * (p - q) ** 2 + 4 * (p - 1) * (q - 1)))


def _dq_gamma_p2q(p, q):
    _primes(p, q)
    fixed = (_rep(2 * p * q + 3 * p * p - 4 * p - 5, p * q - p - q)
             + _rep(p * q + 2 * p * p - 2 * p - 3, p - 2)
             + _rep(2 * p * q + p * p - 2 * p - 5, q - 2)
             + _rep(3 * p * q + 2 * p * p - 3 * p - 2 * q - 4, p * p - p - 1))
    # parts in the order A_p, A_pq, A_p2, A_q along the skeleton path
    u = p * q - p - q + 1
    quo = np.array([
        [p * (3 * p + 4 * q - 6) - 2 * q - 3, p - 1, 2 * (q - 1), 3 * p * (p - 1)],
        [u, p * (2 * p + q - 1) - 4, q - 1, 2 * p * (p - 1)],
        [2 * u, p - 1, p * (p + 2 * q - 2) + 2 * q - 7, p * (p - 1)],
        [3 * u, 2 * (p - 1), q - 1, p * (4 * p + 3 * q - 5) - 2 * q - 4],
    ], dtype=float)
    return fixed + sorted(np.real(np.linalg.eigvals(quo)).tolist(), reverse=True)


def _dq_gamma_p2(p):
    _primes(p)
    _need(p >= 3, "Z_4 has a single zero-divisor; use p >= 3")
    return [2.0 * p - 4] + _rep(p - 3, p - 2)


def _dq_gamma_p3(p):
    _primes(p)
    n = p * p - 1
    rad = (3 * (2 * p - 2 - n) - 2 * (p - 2)) ** 2 + 4 * (p - 1) * (n - p + 1)
    return (_rep(2 * n - p - 3, p * p - p - 1) + _rep(2 * n - p * p - 1, p - 2)
            + _pm(5 * n - 2 * (p - 1) - 6, rad))


def _dq_gamma_p4(p):
    _primes(p)
    n = p ** 3 - 1
    fixed = (_rep(n - 2, p - 2) + _rep(2 * n - p - 3, p * p * (p - 1) - 1)
             + _rep(2 * n - p * p - 1, p * (p - 1) - 1))
    quo = np.array([
        [n + p - 3, p * p * (p - 1), p * (p - 1)],
        [p - 1, 2 * n + p * (2 * p * p - 2 * p - 1) - 3, 2 * p * (p - 1)],
        [p - 1, 2 * p * p * (p - 1), 2 * n - p - 1],
    ], dtype=float)
    return fixed + sorted(np.real(np.linalg.eigvals(quo)).tolist(), reverse=True)


# ---------------------------------------------------------------- generalized distance

def _alpha(alpha) -> float:
    a = float(as_fraction(alpha))
    _need(0 <= a <= 1, "alpha must lie in [0, 1]")
    return a


def star_k(n: int, alpha) -> float:
    a = _alpha(alpha)
    return (n * n - 2 * n + 2) * (a - 2) ** 2 + 2 * (n - 1) * (a * a - 2)


def _da_star(n, alpha):
    _need(n >= 3, "need n >= 3")
    a = _alpha(alpha)
    return _rep(a * (2 * n - 1) - 2, n - 2) + _pm(a * n + 2 * n - 4, star_k(n, a))


def bipartite_delta(a: int, n: int, alpha) -> float:
    x = _alpha(alpha)
    return (2 * a * a + n * n - 2 * n * a) * (x - 2) ** 2 + 2 * (n * a - a * a) * (x * x - 2)


def _da_complete_bipartite(a, b, alpha):
    _need(a >= 1 and b >= 1, "need a, b >= 1")
    n, x = a + b, _alpha(alpha)
    return (_rep(x * (a + n) - 2, a - 1) + _rep(x * (2 * n - a) - 2, n - a - 1)
            + _pm((x + 2) * n - 4, bipartite_delta(a, n, x)))


CATALOG = {
    ("complete_bipartite", "NL"): (_nl_complete_bipartite, ("a", "b")),
    ("complete_split", "NL"): (_nl_complete_split, ("omega", "n")),
    ("cone", "NL"): (_nl_cone, ("a", "b")),
    ("wheel", "NL"): (_nl_wheel, ("n",)),
    ("friendship", "NL"): (_nl_friendship, ("n",)),
    ("firefly", "NL"): (_nl_firefly, ("p", "n")),
    ("generalized_wheel", "NL"): (_nl_generalized_wheel, ("a", "b")),
    ("complete_bipartite", "DistQ"): (_dq_complete_bipartite, ("a", "b")),
    ("complete_split", "DistQ"): (_dq_complete_split, ("omega", "n")),
    ("gamma_pq", "DistQ"): (_dq_gamma_pq, ("p", "q")),
    ("gamma_p2q", "DistQ"): (_dq_gamma_p2q, ("p", "q")),
    ("gamma_p2", "DistQ"): (_dq_gamma_p2, ("p",)),
    ("gamma_p3", "DistQ"): (_dq_gamma_p3, ("p",)),
    ("gamma_p4", "DistQ"): (_dq_gamma_p4, ("p",)),
    ("star", "Dalpha"): (_da_star, ("n", "alpha")),
    ("complete_bipartite", "Dalpha"): (_da_complete_bipartite, ("a", "b", "alpha")),
}

_GAMMA_ORDER = {
    "gamma_pq": lambda p, q: p * q,
    "gamma_p2q": lambda p, q: p * p * q,
    "gamma_p2": lambda p: p * p,
    "gamma_p3": lambda p: p ** 3,
    "gamma_p4": lambda p: p ** 4,
}


def _split_params(family: str, kind: str, params: dict):
    key = (family, kind)
    if key not in CATALOG:
        raise ParameterError(f"no closed form for {family} / {kind}")
    fn, names = CATALOG[key]
    missing = [k for k in names if k not in params]
    extra = [k for k in params if k not in names]
    if missing or extra:
        raise ParameterError(f"{family} / {kind} takes parameters {names}")
    return fn, [params[k] for k in names]


def closed_form_spectrum(family: str, kind: str, params: dict) -> Spectrum:
    """Evaluate a catalogued formula; raises ParameterError for unknown pairs."""
    fn, args = _split_params(family, kind, params)
    return Spectrum.from_values(kind, np.sort(np.array(fn(*args), dtype=float))[::-1])


def catalog_graph(family: str, params: dict) -> Graph:
    """Explicit graph for a catalog entry, used for the oracle comparison."""
    graph_params = {k: v for k, v in params.items() if k != "alpha"}
    if family in _GAMMA_ORDER:
        return zero_divisor_graph(_GAMMA_ORDER[family](**graph_params))[0]
    return build_named(FamilySpec(family, graph_params))


# ---------------------------------------------------------------- star energy

def star_dalpha_energy(n: int, alpha) -> float:
    """Generalized distance energy of the star S_n in closed form, with the branch
    point at alpha = 2n/(3n - 2)."""
    _need(n >= 3, "need n >= 3")
    a = _alpha(alpha)
    k = sqrt(star_k(n, a))
    if a < 2 * n / (3 * n - 2):
        return k + 2 * n + a * (8 - 3 * n) - 4 - 4 * a / n
    return k + a * (3 * n - 8) - 2 * n + 4 + 4 * a / n


def star_dalpha_energy_from_eigs(n: int, alpha) -> float:
    """Same energy assembled from the closed-form eigenvalues."""
    a = _alpha(alpha)
    c = 2 * a * (n - 1) ** 2 / n
    return float(sum(abs(x - c) for x in _da_star(n, a)))


def oracle_values(family: str, kind: str, params: dict) -> np.ndarray:
    from .spectra import build_matrix

    g = catalog_graph(family, params)
    return eigenvalues(build_matrix(g, kind, params.get("alpha")))
