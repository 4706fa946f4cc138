"""Bound and conjecture predicates evaluated on concrete graphs, with signed margins."""
from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, partial
from itertools import combinations
from math import pi, sqrt
from typing import Callable, Iterable

import numpy as np

from .catalog import _da_complete_bipartite, star_k
from .errors import ParameterError, PreconditionError
from .graph import Graph, bfs_distances, degree_profile, distances, path, star, to_graph6
from .spectra import as_fraction, build_matrix, eigenvalues, laplacian_energy

JOBS_ENV = "SPECGRAPH_JOBS"


def tolerance(n: int) -> float:
    return 1e-6 * max(n, 1)


@dataclass(frozen=True)
class CheckReport:
    instance: str
    predicate: str
    passed: bool
    worst_k: int | None
    margin: float
    exact: bool = False
    detail: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not np.isfinite(self.margin):
            raise ArithmeticError(f"non-finite margin for {self.predicate}")


def _report(inst, pred, n, margins: dict, exact=False, **detail) -> CheckReport:
    """margins: k -> bound - achieved. Worst k is the smallest margin (first on ties)."""
    k, worst = min(margins.items(), key=lambda kv: (kv[1], kv[0] if kv[0] is not None else 0))
    return CheckReport(inst, pred, bool(worst >= -tolerance(n)), k, float(worst), exact, detail)


def _single(inst, pred, n, bound, achieved, exact=False, k=None, **detail) -> CheckReport:
    return _report(inst, pred, n, {k: float(bound) - float(achieved)}, exact, **detail)


def instance_id(g: Graph, label: str | None = None) -> str:
    return label if label is not None else to_graph6(g)


def laplacian_values(g: Graph) -> np.ndarray:
    return np.sort(eigenvalues(build_matrix(g, "L")))[::-1]


def _partial_sums(vals) -> np.ndarray:
    return np.concatenate([[0.0], np.cumsum(vals)])


# ---------------------------------------------------------------- Brouwer and Grone-Merris-Bai

def brouwer_bound(m: int, k: int) -> int:
    return m + k * (k + 1) // 2


def brouwer_check(g: Graph, label: str | None = None, ks: Iterable[int] | None = None) -> CheckReport:
    """S_k(G) <= m + k(k+1)/2 for each k (default all 1..n)."""
    s = _partial_sums(laplacian_values(g))
    ks = range(1, g.n + 1) if ks is None else list(ks)
    margins = {k: brouwer_bound(g.m, k) - s[k] for k in ks}
    if not margins:
        raise ParameterError("no k to check")
    return _report(instance_id(g, label), "brouwer", g.n, margins, exact=True)


def gmb_check(g: Graph, label: str | None = None) -> CheckReport:
    """S_k(G) <= sum of the first k conjugate degrees; flags graphs with equality at every k."""
    s = _partial_sums(laplacian_values(g))
    conj = np.concatenate([[0], np.cumsum(degree_profile(g).conjugate)])
    margins = {k: float(conj[k] - s[k]) for k in range(1, g.n + 1)}
    tol = tolerance(g.n)
    equal_ks = [k for k, v in margins.items() if abs(v) <= tol]
    return _report(instance_id(g, label), "gmb", g.n, margins, exact=True,
                   equal_ks=equal_ks, threshold_equality=len(equal_ks) == g.n)


# ---------------------------------------------------------------- structural S_k bounds

def max_clique(g: Graph, limit: int = 20) -> list[int] | None:
    """A maximum clique by exhaustive pivoting search, or None above ``limit`` vertices."""
    if g.n > limit:
        return None
    nb = [sum(1 << u for u in g.adj[v]) for v in range(g.n)]
    best = 0

    def expand(r: int, p: int, x: int):
        nonlocal best
        if not p and not x:
            if bin(r).count("1") > bin(best).count("1"):
                best = r
            return
        if bin(r).count("1") + bin(p).count("1") <= bin(best).count("1"):
            return
        pivot = max(range(g.n), key=lambda u: bin(p & nb[u]).count("1") if (p | x) >> u & 1 else -1)
        cand = p & ~nb[pivot]
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            expand(r | 1 << v, p & nb[v], x & nb[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, (1 << g.n) - 1, 0)
    return [v for v in range(g.n) if best >> v & 1]


def max_biclique(g: Graph, limit: int = 14) -> tuple[list[int], list[int]] | None:
    """Complete bipartite subgraph K_{s1,s2} (s1, s2 >= 2, not necessarily induced) with the
    most edges; returned as (larger side, smaller side). None above ``limit`` or if absent."""
    if g.n > limit:
        return None
    nb = [sum(1 << u for u in g.adj[v]) for v in range(g.n)]
    best, best_key = None, (0,)
    for size in range(2, g.n // 2 + 1):
        for a in combinations(range(g.n), size):
            common = (1 << g.n) - 1
            for v in a:
                common &= nb[v]
            b = [v for v in range(g.n) if common >> v & 1]
            if len(b) < 2:
                continue
            key = (len(a) * len(b), -abs(len(a) - len(b)))
            if key > best_key:
                best_key = key
                best = (list(a), b)
    if best is None:
        return None
    a, b = best
    return (a, b) if len(a) >= len(b) else (b, a)


@dataclass(frozen=True)
class Census:
    """Components of G minus a removed edge set: p trivial ones and the cyclomatic
    number c of each nontrivial one."""
    trivial: int
    cyclomatic: tuple

    @property
    def uniform(self) -> int | None:
        cs = set(self.cyclomatic)
        if len(cs) == 1:
            return cs.pop()
        return 0 if not cs else None


def component_census(g: Graph, removed: Iterable[tuple[int, int]]) -> Census:
    rem = {(min(u, v), max(u, v)) for u, v in removed}
    for u, v in rem:
        if not g.has_edge(u, v):
            raise PreconditionError(f"hint edge ({u},{v}) is not in the graph")
    h = Graph.from_edges(g.n, [e for e in g.edges() if (min(e), max(e)) not in rem])
    triv, cyc = 0, []
    for comp in h.components():
        if len(comp) == 1:
            triv += 1
        else:
            sub = h.induced(comp)
            cyc.append(sub.m - sub.n + 1)
    return Census(triv, tuple(sorted(cyc)))


@dataclass(frozen=True)
class StructureHints:
    clique: tuple | None = None
    biclique: tuple | None = None  # (larger side, smaller side)


def find_structure_hints(g: Graph) -> StructureHints:
    cl = max_clique(g)
    bi = max_biclique(g)
    return StructureHints(tuple(cl) if cl else None,
                          (tuple(bi[0]), tuple(bi[1])) if bi else None)


def _validate_hints(g: Graph, hints: StructureHints):
    if hints.clique is not None:
        for u, v in combinations(hints.clique, 2):
            if not g.has_edge(u, v):
                raise PreconditionError("clique hint is not a clique")
    if hints.biclique is not None:
        a, b = hints.biclique
        if set(a) & set(b):
            raise PreconditionError("biclique hint sides overlap")
        for u in a:
            for v in b:
                if not g.has_edge(u, v):
                    raise PreconditionError("biclique hint is missing an edge")


def _is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and g.is_connected()


def sk_upper_bounds(g: Graph, hints: StructureHints | None = None) -> dict[str, list[Fraction]]:
    """Upper bounds on S_k(G), k = 1..n, for every bound whose hypotheses hold."""
    if hints is None:
        hints = find_structure_hints(g)
    _validate_hints(g, hints)
    n, ks = g.n, range(1, g.n + 1)
    out: dict[str, list[Fraction]] = {}
    if _is_tree(g) and n >= 2:
        out["sk-tree-bound"] = [n - 2 + 2 * k - Fraction(2 * k - 2, n) for k in ks]
    if hints.clique is not None and len(hints.clique) >= 2:
        w = len(hints.clique)
        cen = component_census(g, combinations(hints.clique, 2))
        c = cen.uniform
        if c is not None:
            base = n - cen.trivial + 2 * len(cen.cyclomatic) * (c - 1)
            out["sk-clique-bound"] = [Fraction(w * (w - 1) + base + 2 * k if k >= w - 1 else k * (w + 2) + base)
                                      for k in ks]
    if hints.biclique is not None:
        a, b = hints.biclique
        s1, s2 = max(len(a), len(b)), min(len(a), len(b))
        cen = component_census(g, [(u, v) for u in a for v in b])
        c = cen.uniform
        if c is not None:
            base = n - cen.trivial + 2 * len(cen.cyclomatic) * (c - 1)
            out["sk-biclique-bound"] = [
                Fraction(2 * s1 * s2 + base + 2 * k if k >= s1 + s2 - 1 else s2 + k * s1 + base + 2 * k)
                for k in ks]
    degs = g.degrees()
    pend = sum(1 for d in degs if d == 1)
    if g.is_connected() and pend >= 1:
        out["sk-pendant-bound"] = [Fraction(2 * g.m - n + 3 * k - max(degs) + pend + 1) for k in ks]
    return out


def sk_bound_checks(g: Graph, hints: StructureHints | None = None, label: str | None = None) -> list[CheckReport]:
    s = _partial_sums(laplacian_values(g))
    inst = instance_id(g, label)
    return [
        _report(inst, name, g.n, {k: float(b) - s[k] for k, b in enumerate(bounds, start=1)}, exact=True)
        for name, bounds in sk_upper_bounds(g, hints).items()
    ]


# ---------------------------------------------------------------- majorization

def _is_clique_plus_isolated(g: Graph, i: int) -> bool:
    degs = sorted(g.degrees(), reverse=True)
    return g.m == i * (i - 1) // 2 and degs[:i] == [i - 1] * i and all(d == 0 for d in degs[i:])


def majorization_checks(g: Graph, label: str | None = None) -> list[CheckReport]:
    """Partial sums of Laplacian eigenvalues dominate 1 + partial degree sums (connected,
    at least one edge, k < n), and mu_i >= d_i - i + 2 outside the K_i plus isolated
    vertices exception."""
    inst = instance_id(g, label)
    mu = laplacian_values(g)
    d = np.array(sorted(g.degrees(), reverse=True), dtype=float)
    out = []
    if g.is_connected() and g.m >= 1 and g.n >= 2:
        sm, sd = _partial_sums(mu), _partial_sums(d)
        out.append(_report(inst, "majorization-partial-sums", g.n,
                           {k: sm[k] - 1 - sd[k] for k in range(1, g.n)}, exact=True))
    margins = {i: mu[i - 1] - (d[i - 1] - i + 2) for i in range(1, g.n + 1)
               if not _is_clique_plus_isolated(g, i)}
    if margins:
        out.append(_report(inst, "majorization-eigenvalue-lower", g.n, margins, exact=True))
    return out


# ---------------------------------------------------------------- Laplacian energy of trees

@lru_cache(maxsize=None)
def path_energy(n: int) -> float:
    return laplacian_energy(path(n))[0]


@lru_cache(maxsize=None)
def star_energy(n: int) -> float:
    return laplacian_energy(star(n))[0]


def _forest_part_sum(g: Graph, comp: list[int], threshold: float) -> tuple[int, float]:
    """(count of eigenvalues >= threshold, their sum) for one component."""
    vals = laplacian_values(g.induced(comp)) if len(comp) > 1 else np.zeros(1)
    sel = vals[vals >= threshold - 1e-9]
    return len(sel), float(np.sum(sel))


def le_checks(t: Graph, label: str | None = None) -> list[CheckReport]:
    if t.n < 2 or not _is_tree(t):
        raise PreconditionError("le_checks needs a tree on at least 2 vertices")
    n, inst = t.n, instance_id(t, label)
    le, sigma = laplacian_energy(t)
    dbar = 2 * t.m / n
    degs = sorted(t.degrees(), reverse=True)
    s = sum(1 for x in degs if x > 1)  # internal vertices
    out = [
        _single(inst, "le-conjecture-lower", n, le, path_energy(n)),
        _single(inst, "le-conjecture-upper", n, star_energy(n), le),
        _single(inst, "le-path-bound", n, 2 + 4 * n / pi, path_energy(n)),
    ]
    if 1 <= s <= n - 1:
        out.append(_single(inst, "le-internal-vertex-bound", n, le, 2 * n + 2 * s - 2 - 2 * s * dbar, exact=True))
    if (pi - 2) / pi * n >= s + 2 - 2 * s / n:
        out.append(_single(inst, "le-internal-vertex-path", n, le, 2 + 4 * n / pi))
    sd = _partial_sums(degs)
    out.append(_report(inst, "le-degree-partial-bound", n,
                       {k: le - 2 * (1 + sd[k] - k * dbar) for k in range(1, n)}, exact=True))
    if 25 * s <= 9 * n - 50:
        cond = (pi - 2) / pi * n - (s + 2 - 2 * s / n)
        # the certificate is only valid when the internal-vertex condition holds
        out.append(CheckReport(inst, "le-small-internal-certificate",
                               cond >= 0 and le >= path_energy(n) - tolerance(n), None,
                               float(min(cond, le - path_energy(n)))))
    if n >= 8:
        margins = {}
        thr = 2 - 4 / n
        for u, v in t.edges():
            if t.degree(u) < 2 or t.degree(v) < 2:
                continue
            f = t.remove_edge(u, v)
            k1, s1 = _forest_part_sum(f, _component_of(f, u), thr)
            k2, s2 = _forest_part_sum(f, _component_of(f, v), thr)
            sig = k1 + k2
            margins[len(margins) + 1] = le - (2 * s1 + 2 * s2 - 4 * sig + 4 * sig / n)
        if margins:
            out.append(_report(inst, "le-edge-split-bound", n, margins))
    return out


def _component_of(g: Graph, v: int) -> list[int]:
    dist = bfs_distances(g, v)
    return [u for u in range(g.n) if dist[u] >= 0]


# ---------------------------------------------------------------- generalized distance matrix

def radius_upper_bound(g: Graph, alpha) -> tuple[float, dict]:
    """Largest root over vertex pairs of the quadratic from the eigenvector argument.

    Also returns the two alternative radicands (the displayed closed form and the
    rearranged one) evaluated at the maximizing pair, for comparison only.
    """
    a = float(as_fraction(alpha))
    d, prof, _ = distances(g)
    tr = prof.tr
    best, arg = -np.inf, None
    for i in range(g.n):
        for j in range(g.n):
            if i == j:
                continue
            b = a * tr[i] + tr[j] - (1 - a) * d[i, j]
            disc = b * b - 4 * a * tr[i] * tr[j] + 4 * (1 - a) * tr[i] * d[i, j]
            if disc < 0:
                continue
            val = (b + sqrt(disc)) / 2
            if val > best:
                best, arg = val, (i, j)
    if arg is None:
        return float("inf"), {}
    i, j = arg
    ti, tj, dij = tr[i], tr[j], d[i, j]
    b = a * ti + tj - (1 - a) * dij
    alt_proof = b * b - 4 * ti * (a * tj + (1 - a) * dij)
    alt_closed = (a * ti - tj) ** 2 + (1 - a) * (1 - a - 2 * tj - 4 * ti - 2 * a * ti) * dij
    alts = {"pair": [i, j]}
    for name, rad in (("displayed_proof_radicand", alt_proof), ("displayed_closed_radicand", alt_closed)):
        alts[name] = float(rad)
        alts[name.replace("radicand", "value")] = (b + sqrt(rad)) / 2 if rad >= 0 else None
    return float(best), alts


def two_coloring(g: Graph) -> list[int] | None:
    col = [-1] * g.n
    for s in range(g.n):
        if col[s] >= 0:
            continue
        col[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in g.adj[v]:
                if col[u] < 0:
                    col[u] = 1 - col[v]
                    stack.append(u)
                elif col[u] == col[v]:
                    return None
    return col


def dalpha_values(g: Graph, alpha) -> np.ndarray:
    return np.sort(eigenvalues(build_matrix(g, "Dalpha", alpha)))[::-1]


def dalpha_bounds(g: Graph, alpha, label: str | None = None) -> list[CheckReport]:
    if not g.is_connected() or g.n < 2:
        raise PreconditionError("dalpha_bounds needs a connected graph on at least 2 vertices")
    a = float(as_fraction(alpha))
    if not 0 <= a < 1:
        raise ParameterError("alpha must lie in [0, 1)")
    n, inst = g.n, instance_id(g, label)
    d, prof, _ = distances(g)
    tr, w = np.array(prof.tr, dtype=float), prof.wiener
    vals = dalpha_values(g, alpha)
    rho = vals[0]
    out = []

    sq = a * a * float(np.sum(tr ** 2)) + (1 - a) ** 2 * float(np.sum(d.astype(float) ** 2))
    cen = 2 * a * w / n
    for name, got, want in (("dalpha-moment-trace", float(np.sum(vals)), 2 * a * w),
                            ("dalpha-moment-square", float(np.sum(vals ** 2)), sq),
                            ("dalpha-moment-centered", float(np.sum((vals - cen) ** 2)), sq - 4 * a * a * w * w / n)):
        ok = abs(got - want) <= 1e-7 * max(1.0, abs(want))
        out.append(CheckReport(inst, name, ok, None, 0.0 if ok else -abs(got - want), True))

    lo_w, lo_t = 2 * w / n, sqrt(float(np.sum(tr ** 2)) / n)
    out.append(_single(inst, "dalpha-radius-lower", n, rho, max(lo_w, lo_t), exact=True,
                       wiener_bound=lo_w, transmission_bound=lo_t))
    up, alts = radius_upper_bound(g, alpha)
    out.append(_single(inst, "dalpha-radius-upper", n, up, rho, **alts))
    tol = tolerance(n)
    tight = abs(rho - lo_w) <= tol
    out.append(CheckReport(inst, "dalpha-regular-equality", tight == prof.regular, None,
                           0.0 if tight == prof.regular else -abs(rho - lo_w), True,
                           {"transmission_regular": prof.regular, "tight": tight}))

    energy = float(np.sum(np.abs(vals - cen)))
    if _is_tree(g) and n >= 3:
        sk = sqrt(star_k(n, a))
        out.append(_single(inst, "dalpha-tree-radius", n, rho, (a * n + 2 * n - 4 + sk) / 2))
        bound = a * n + 2 * n - 4 + sk - 4 * a * w / n
        margin = energy - bound
        is_star = max(g.degrees()) == n - 1
        out.append(_single(inst, "dalpha-tree-energy", n, energy, bound))
        # the gap for stars is 2(n-2)(alpha(3n-2)/n - 2), so the branch point is tight too
        al = as_fraction(alpha)
        eq_ok = (abs(margin) <= tol) == (is_star and al * (3 * n - 2) <= 2 * n)
        out.append(CheckReport(inst, "dalpha-tree-equality", eq_ok, None, 0.0 if eq_ok else -abs(margin),
                               detail={"star": is_star, "margin": margin}))
    col = two_coloring(g)
    if col is not None and 0.5 <= a < 1:
        side = sum(col)
        pa = min(side, n - side)
        kvals = np.sort(np.array(_da_complete_bipartite(pa, n - pa, a)))[::-1]
        best = max(2 * float(np.sum(kvals[:t])) - 4 * t * a * w / n for t in range(1, n + 1))
        out.append(_single(inst, "dalpha-bipartite-energy", n, energy, best, a=pa))
    return out


def edge_deletion_check(g: Graph, edge: tuple[int, int], alpha, label: str | None = None) -> CheckReport:
    """Every D_alpha eigenvalue weakly increases when a non-bridge edge is deleted, alpha in [1/2, 1]."""
    a = float(as_fraction(alpha))
    if not 0.5 <= a <= 1:
        raise ParameterError("edge deletion monotonicity needs alpha in [1/2, 1]")
    h = g.remove_edge(*edge)
    if not h.is_connected():
        raise PreconditionError("deleting the edge disconnects the graph")
    before, after = dalpha_values(g, alpha), dalpha_values(h, alpha)
    margins = {i + 1: float(after[i] - before[i]) for i in range(g.n)}
    return _report(instance_id(g, label), "dalpha-edge-deletion", g.n, margins, edge=list(edge))


# ---------------------------------------------------------------- sweeps

PREDICATES: dict[str, Callable] = {
    "brouwer": lambda g, label=None, **kw: [brouwer_check(g, label)],
    "gmb": lambda g, label=None, **kw: [gmb_check(g, label)],
    "majorization": lambda g, label=None, **kw: majorization_checks(g, label),
    "le-trees": lambda g, label=None, **kw: le_checks(g, label),
    "dalpha-bounds": lambda g, label=None, alpha=0.5, **kw: dalpha_bounds(g, alpha, label),
    "sk-bounds": lambda g, label=None, **kw: sk_bound_checks(g, None, label),
}


def _evaluate(predicate: str, kwargs: dict, item) -> list[CheckReport]:
    label, g = item
    return PREDICATES[predicate](g, label, **kwargs)


@dataclass(frozen=True)
class SweepSummary:
    checked: int
    failed: int
    min_margin: float
    worst_instance: str | None

    def line(self) -> str:
        return f"checked {self.checked}, failed {self.failed}, min-margin {fmt_num(self.min_margin)}"


def merge_summaries(a: SweepSummary, b: SweepSummary) -> SweepSummary:
    worst = a if a.min_margin <= b.min_margin else b
    return SweepSummary(a.checked + b.checked, a.failed + b.failed, worst.min_margin, worst.worst_instance)


def summarize(groups: list[list[CheckReport]]) -> SweepSummary:
    acc = SweepSummary(0, 0, float("inf"), None)
    for reps in groups:
        worst = min(reps, key=lambda r: r.margin) if reps else None
        acc = merge_summaries(acc, SweepSummary(
            1, int(any(not r.passed for r in reps)),
            worst.margin if worst else float("inf"), worst.instance if worst else None))
    return acc


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def run_sweep(predicate: str, items: Iterable[tuple[str | None, Graph]], jobs: int | None = None,
              **kwargs) -> tuple[list[list[CheckReport]], SweepSummary]:
    """Evaluate a predicate over (label, graph) pairs; results keep input order."""
    if predicate not in PREDICATES:
        raise ParameterError(f"unknown predicate {predicate!r}")
    fn = partial(_evaluate, predicate, kwargs)
    jobs = default_jobs() if jobs is None else jobs
    items = list(items)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            groups = list(ex.map(fn, items, chunksize=max(1, len(items) // (8 * jobs))))
    else:
        groups = [fn(it) for it in items]
    return groups, summarize(groups)


def fmt_num(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    x = float(x)
    if x == 0:
        return "0"
    return f"{x:.12g}"


def reports_csv(groups: Iterable[Iterable[CheckReport]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["instance_id", "predicate", "pass", "worst_k", "margin"])
    for reps in groups:
        for r in reps:
            w.writerow([r.instance, r.predicate, "pass" if r.passed else "fail",
                        "" if r.worst_k is None else r.worst_k, fmt_num(r.margin)])
    return buf.getvalue()


def failure_details(groups: Iterable[Iterable[CheckReport]]) -> str:
    rows = [{"instance_id": r.instance, "predicate": r.predicate, "worst_k": r.worst_k,
             "margin": r.margin, "detail": r.detail}
            for reps in groups for r in reps if not r.passed]
    return json.dumps(rows, indent=1, sort_keys=True, default=str)
