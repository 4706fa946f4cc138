"""Equitable quotients, joined-union spectral shortcuts and block-symmetric reduction."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Sequence

import numpy as np

from .errors import ParameterError, PreconditionError
from .graph import Graph, JoinedUnionSpec, distance_matrix
from .poly import Poly
from .spectra import (
    GROUP_TOL,
    Spectrum,
    SymmetricMatrix,
    build_matrix,
    char_poly_exact,
    eigenvalues,
    group_values,
)


# ---------------------------------------------------------------- quotients

@dataclass(frozen=True)
class QuotientMatrix:
    entries: tuple  # average row sums; Fractions when the parent is exact
    blocks: tuple
    equitable: bool

    def as_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries])

    def symmetrized(self) -> np.ndarray:
        """diag(sqrt|P_i|) Q diag(sqrt|P_i|)^{-1}; symmetric for symmetric parents."""
        s = np.sqrt([len(b) for b in self.blocks])
        return s[:, None] * self.as_float() / s[None, :]

    def eigenvalues(self) -> np.ndarray:
        return eigenvalues(self.symmetrized())


def _check_partition(n: int, blocks: Sequence[Sequence[int]]):
    flat = [v for b in blocks for v in b]
    if sorted(flat) != list(range(n)) or any(len(b) == 0 for b in blocks):
        raise ParameterError("partition must cover every index exactly once with nonempty blocks")


def quotient_matrix(m, blocks: Sequence[Sequence[int]]) -> QuotientMatrix:
    """Average-row-sum quotient of a symmetric matrix over a vertex partition."""
    if isinstance(m, SymmetricMatrix) and m.exact:
        rows = m.fraction_rows()
        exact = True
    else:
        vals = m.values if isinstance(m, SymmetricMatrix) else np.asarray(m, dtype=float)
        rows = vals.tolist()
        exact = False
    n = len(rows)
    _check_partition(n, blocks)
    entries, equitable = [], True
    for bi in blocks:
        row = []
        for bj in blocks:
            sums = [sum(rows[u][v] for v in bj) for u in bi]
            if exact:
                if any(s != sums[0] for s in sums):
                    equitable = False
                row.append(sum(sums, Fraction(0)) / len(bi))
            else:
                if max(sums) - min(sums) > 1e-12 * max(1.0, max(abs(s) for s in sums)):
                    equitable = False
                row.append(sum(sums) / len(bi))
        entries.append(tuple(row))
    return QuotientMatrix(tuple(entries), tuple(tuple(b) for b in blocks), equitable)


# ---------------------------------------------------------------- shortcuts

@dataclass(frozen=True)
class Inherited:
    value: object  # Fraction when exact, float otherwise
    multiplicity: int
    part: int
    adjacency_eigenvalue: object


@dataclass(frozen=True)
class ShortcutSpectrum:
    kind: str
    inherited: tuple
    quotient: tuple  # rows; exact Fractions for the distance theorem
    quotient_sym: np.ndarray
    quotient_values: np.ndarray
    spectrum: Spectrum

    def quotient_charpoly(self) -> Poly:
        return char_poly_exact(self.quotient)

    def inherited_pairs(self) -> list[tuple]:
        """Inherited eigenvalues merged across parts, descending."""
        acc: dict = {}
        for it in self.inherited:
            acc[it.value] = acc.get(it.value, 0) + it.multiplicity
        return sorted(acc.items(), key=lambda kv: -float(kv[0]))

    def to_json(self) -> str:
        def fmt(x):
            return f"{x.numerator}/{x.denominator}" if isinstance(x, Fraction) else repr(float(x))

        return json.dumps({
            "kind": self.kind,
            "inherited": [
                {"value": fmt(i.value), "multiplicity": i.multiplicity, "part": i.part,
                 "adjacency_eigenvalue": fmt(i.adjacency_eigenvalue)}
                for i in self.inherited
            ],
            "quotient": [[fmt(x) for x in row] for row in self.quotient],
            "quotient_eigenvalues": [float(x) for x in self.quotient_values],
            "pairs": [[float(v), int(mu)] for v, mu in self.spectrum.pairs],
        })


def regular_part_eigenvalues(part: Graph, index: int = 0) -> tuple[int, list]:
    """Degree r of a regular graph and its adjacency eigenvalues other than one copy of r.

    Integer eigenvalues are recovered exactly from the characteristic
    polynomial; any remaining ones are returned as floats.
    """
    if not part.is_regular():
        raise PreconditionError(f"part {index} is not regular")
    r = part.degree(0) if part.n else 0
    if part.n == 1:
        return r, []
    p = char_poly_exact(build_matrix(part, "A"))
    p = p.exact_div(Poly((-r, 1)))
    exact: list = []
    for cand in range(-r, r + 1):
        lin = Poly((-cand, 1))
        while p.degree >= 1 and p(cand) == 0:
            p = p.exact_div(lin)
            exact.append(Fraction(cand))
    rest: list = []
    if p.degree >= 1:
        roots = np.roots([float(c) for c in p.descending()])
        rest = sorted((float(np.real(z)) for z in roots), reverse=True)
    return r, sorted(exact, reverse=True) + rest


def _skeleton_ok(spec: JoinedUnionSpec):
    if not spec.skeleton.is_connected():
        raise PreconditionError("skeleton must be connected")


def _merge(kind: str, inherited: list, qvals: np.ndarray) -> Spectrum:
    vals = [float(i.value) for i in inherited for _ in range(i.multiplicity)] + list(qvals)
    return Spectrum(kind, group_values(vals, GROUP_TOL), GROUP_TOL)


def _collapse(entries: list) -> list:
    """Group equal exact values inside one part's inherited list."""
    out: list = []
    for val, lam, part in entries:
        if out and out[-1][0] == val and isinstance(val, Fraction):
            out[-1][1] += 1
        else:
            out.append([val, 1, part, lam])
    return [Inherited(v, k, p, lam) for v, k, p, lam in out]


def nl_joined_union_spectrum(spec: JoinedUnionSpec) -> ShortcutSpectrum:
    """Normalized Laplacian spectrum of a joined union of regular graphs."""
    _skeleton_ok(spec)
    sk, parts = spec.skeleton, spec.parts
    n_i = spec.orders
    alpha = [sum(n_i[j] for j in sk.adj[i]) for i in range(sk.n)]
    inherited = []
    regs = []
    for i, part in enumerate(parts):
        r, lams = regular_part_eigenvalues(part, i)
        regs.append(r)
        if r + alpha[i] == 0:
            raise PreconditionError("isolated vertices make the normalized Laplacian undefined")
        rows = []
        for lam in lams:
            val = (1 - lam / Fraction(r + alpha[i])) if isinstance(lam, Fraction) else 1 - lam / (r + alpha[i])
            rows.append((val, lam, i))
        inherited.extend(_collapse(rows))
    k = sk.n
    q = []
    for i in range(k):
        row = []
        for j in range(k):
            if i == j:
                row.append(alpha[i] / (alpha[i] + regs[i]))
            elif sk.has_edge(i, j):
                row.append(-n_i[j] / sqrt((regs[i] + alpha[i]) * (regs[j] + alpha[j])))
            else:
                row.append(0.0)
        q.append(tuple(row))
    s = np.sqrt(n_i)
    qs = s[:, None] * np.array(q) / s[None, :]
    qvals = eigenvalues(qs)
    return ShortcutSpectrum("NL", tuple(inherited), tuple(q), qs, qvals, _merge("NL", inherited, qvals))


def dsq_joined_union_spectrum(spec: JoinedUnionSpec) -> ShortcutSpectrum:
    """Distance signless Laplacian spectrum of a joined union of regular graphs."""
    _skeleton_ok(spec)
    sk, parts = spec.skeleton, spec.parts
    if sk.n == 1:
        raise PreconditionError("skeleton needs at least two vertices")
    n_i = spec.orders
    d = distance_matrix(sk)
    nprime = [int(sum(n_i[k] * d[i, k] for k in range(sk.n))) for i in range(sk.n)]
    inherited = []
    regs = []
    for i, part in enumerate(parts):
        r, lams = regular_part_eigenvalues(part, i)
        regs.append(r)
        base = 2 * n_i[i] + nprime[i] - r - 4
        rows = [((base - lam) if isinstance(lam, Fraction) else base - lam, lam, i) for lam in lams]
        inherited.extend(_collapse(rows))
    k = sk.n
    q = tuple(
        tuple(
            Fraction(4 * n_i[i] + nprime[i] - 2 * regs[i] - 4) if i == j else Fraction(n_i[j] * int(d[i, j]))
            for j in range(k)
        )
        for i in range(k)
    )
    s = np.sqrt(n_i)
    qs = s[:, None] * np.array([[float(x) for x in row] for row in q]) / s[None, :]
    qvals = eigenvalues(qs)
    return ShortcutSpectrum("DistQ", tuple(inherited), q, qs, qvals, _merge("DistQ", inherited, qvals))


# ---------------------------------------------------------------- block symmetry

def assemble_block_matrix(x, beta, b, c, copies: int) -> np.ndarray:
    """[[X, beta..beta], [beta^T, B, C..C], ..., [beta^T, C..C, B]] with ``copies`` B blocks."""
    x = np.atleast_2d(np.asarray(x, dtype=float)) if np.size(x) else np.zeros((0, 0))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    c = np.atleast_2d(np.asarray(c, dtype=float))
    q, p = b.shape[0], x.shape[0]
    beta = np.asarray(beta, dtype=float).reshape(p, q)
    size = p + copies * q
    m = np.zeros((size, size))
    m[:p, :p] = x
    for i in range(copies):
        lo = p + i * q
        m[:p, lo:lo + q] = beta
        m[lo:lo + q, :p] = beta.T
        for j in range(copies):
            lj = p + j * q
            m[lo:lo + q, lj:lj + q] = b if i == j else c
    return m


def block_symmetric_reduce(x, beta, b, c, copies: int) -> tuple[Spectrum, np.ndarray]:
    """Split the spectrum of the block-symmetric matrix into the spectrum of B - C
    (each value repeated ``copies - 1`` times) and the reduced matrix
    [[X, sqrt(c) beta], [sqrt(c) beta^T, B + (c - 1) C]]."""
    if copies < 1:
        raise ParameterError("need at least one copy of B")
    x = np.atleast_2d(np.asarray(x, dtype=float)) if np.size(x) else np.zeros((0, 0))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    c = np.atleast_2d(np.asarray(c, dtype=float))
    q, p = b.shape[0], x.shape[0]
    if b.shape != (q, q) or c.shape != (q, q) or x.shape != (p, p):
        raise ParameterError("block dimensions are inconsistent")
    beta = np.asarray(beta, dtype=float)
    if beta.size != p * q:
        raise ParameterError("beta must be p x q")
    beta = beta.reshape(p, q)
    diff = eigenvalues(b - c) if copies > 1 else np.zeros(0)
    inherited = Spectrum.from_values("block", np.repeat(diff, copies - 1))
    reduced = np.zeros((p + q, p + q))
    reduced[:p, :p] = x
    reduced[:p, p:] = sqrt(copies) * beta
    reduced[p:, :p] = sqrt(copies) * beta.T
    reduced[p:, p:] = b + (copies - 1) * c
    return inherited, reduced
