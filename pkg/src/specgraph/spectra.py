"""Graph matrices, grouped spectra, exact characteristic polynomials and spectral functionals."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt, lcm
from typing import Sequence

import numpy as np

from .errors import ParameterError, PreconditionError
from .graph import Graph, distance_matrix
from .poly import Poly

KINDS = ("A", "L", "NL", "Q", "Dist", "DistL", "DistQ", "Dalpha", "Tr")
GROUP_TOL = 1e-8


def as_fraction(x) -> Fraction:
    """Exact rational from int, Fraction, decimal string or float (via its repr)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, (float, np.floating)):
        return Fraction(repr(float(x)))
    return Fraction(str(x))


@dataclass(frozen=True)
class SymmetricMatrix:
    """``values`` is the binary64 matrix; when exact, ``num / den`` reproduces it."""

    kind: str
    values: np.ndarray
    num: np.ndarray | None = None
    den: int = 1
    alpha: Fraction | None = None

    @property
    def order(self) -> int:
        return self.values.shape[0]

    @property
    def exact(self) -> bool:
        return self.num is not None

    def fraction_rows(self) -> list[list[Fraction]]:
        if self.num is None:
            raise ParameterError(f"{self.kind} matrix has no exact form")
        return [[Fraction(int(x), self.den) for x in row] for row in self.num]


def _exact(kind: str, num: np.ndarray, den: int = 1, alpha=None) -> SymmetricMatrix:
    num = np.asarray(num, dtype=np.int64)
    return SymmetricMatrix(kind, num.astype(float) / den, num, den, alpha)


def build_matrix(g: Graph, kind: str, alpha=None) -> SymmetricMatrix:
    if kind not in KINDS:
        raise ParameterError(f"unknown matrix kind {kind!r}; choose from {KINDS}")
    if (kind == "Dalpha") != (alpha is not None):
        raise ParameterError("alpha is required for Dalpha and only for Dalpha")
    a = g.adjacency()
    deg = np.diag(a.sum(axis=1))
    if kind == "A":
        return _exact(kind, a)
    if kind == "L":
        return _exact(kind, deg - a)
    if kind == "Q":
        return _exact(kind, deg + a)
    if kind == "NL":
        d = a.sum(axis=1)
        if g.n and d.min() == 0:
            raise PreconditionError(f"vertex {int(np.argmin(d))} is isolated; NL undefined")
        s = 1.0 / np.sqrt(d.astype(float))
        vals = np.eye(g.n) - s[:, None] * a * s[None, :]
        return SymmetricMatrix(kind, vals)
    dist = distance_matrix(g)
    tr = np.diag(dist.sum(axis=1))
    if kind == "Dist":
        return _exact(kind, dist)
    if kind == "DistL":
        return _exact(kind, tr - dist)
    if kind == "DistQ":
        return _exact(kind, tr + dist)
    if kind == "Tr":
        return _exact(kind, tr)
    al = as_fraction(alpha)
    if not 0 <= al <= 1:
        raise ParameterError("alpha must lie in [0, 1]")
    p, q = al.numerator, al.denominator
    return _exact(kind, p * tr + (q - p) * dist, q, al)


# ---------------------------------------------------------------- spectra

@dataclass(frozen=True)
class Spectrum:
    kind: str
    pairs: tuple  # ((value, multiplicity), ...) descending
    tol: float = GROUP_TOL

    @property
    def order(self) -> int:
        return sum(m for _, m in self.pairs)

    def values(self) -> np.ndarray:
        return np.array([v for v, m in self.pairs for _ in range(m)], dtype=float)

    def multiplicity(self, x: float, tol: float | None = None) -> int:
        tol = self.tol if tol is None else tol
        return sum(m for v, m in self.pairs if abs(v - x) <= tol * max(1.0, abs(x)))

    def to_json(self) -> str:
        return json.dumps(
            {"kind": self.kind, "pairs": [[float(v), int(m)] for v, m in self.pairs], "tol": self.tol}
        )

    @classmethod
    def from_values(cls, kind: str, values, tol: float = GROUP_TOL) -> "Spectrum":
        return cls(kind, group_values(values, tol), tol)


def group_values(values, tol: float = GROUP_TOL) -> tuple:
    """Group a multiset of reals into descending (value, multiplicity) pairs.

    A value joins the current group when it is within ``tol * max(1, |value|)``
    of the group's first member; the reported value is the group mean.
    """
    vals = sorted((float(v) for v in values), reverse=True)
    groups: list[list[float]] = []
    for v in vals:
        if groups and abs(groups[-1][0] - v) <= tol * max(1.0, abs(v)):
            groups[-1].append(v)
        else:
            groups.append([v])
    return tuple((float(np.mean(gr)), len(gr)) for gr in groups)


def eigenvalues(m) -> np.ndarray:
    """Descending eigenvalues of a symmetric matrix (LAPACK symmetric driver)."""
    vals = m.values if isinstance(m, SymmetricMatrix) else np.asarray(m, dtype=float)
    if vals.ndim != 2 or vals.shape[0] != vals.shape[1]:
        raise ParameterError("matrix must be square")
    if vals.size and np.max(np.abs(vals - vals.T)) > 1e-12 * max(1.0, np.max(np.abs(vals))):
        raise ParameterError("matrix is not symmetric")
    return np.linalg.eigvalsh(vals)[::-1]


def eigen(m, kind: str | None = None, tol: float = GROUP_TOL) -> Spectrum:
    k = m.kind if isinstance(m, SymmetricMatrix) else (kind or "custom")
    return Spectrum.from_values(k, eigenvalues(m), tol)


def spectrum(g: Graph, kind: str, alpha=None) -> Spectrum:
    return eigen(build_matrix(g, kind, alpha))


def same_multiset(a, b, tol: float = 1e-8) -> bool:
    a = a.values() if isinstance(a, Spectrum) else a
    b = b.values() if isinstance(b, Spectrum) else b
    x = np.sort(np.asarray(a, dtype=float))
    y = np.sort(np.asarray(b, dtype=float))
    if x.shape != y.shape:
        return False
    return bool(np.all(np.abs(x - y) <= tol * np.maximum(1.0, np.abs(y))))


# ---------------------------------------------------------------- exact char-poly

_PRIME_TOP = 1 << 26


@lru_cache(maxsize=None)
def _primes(count: int) -> tuple:
    out, c = [], _PRIME_TOP - 1
    while len(out) < count:
        if c % 2 and all(c % d for d in range(3, isqrt(c) + 1, 2)):
            out.append(c)
        c -= 2
    return tuple(out)


def _charpoly_mod(a: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial (ascending coefficients) modulo p via Hessenberg form."""
    h = np.mod(a, p).astype(np.int64)
    n = h.shape[0]
    for j in range(n - 2):
        nz = np.nonzero(h[j + 1:, j])[0]
        if nz.size == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            h[[i, j + 1], :] = h[[j + 1, i], :]
            h[:, [i, j + 1]] = h[:, [j + 1, i]]
        inv = pow(int(h[j + 1, j]), p - 2, p)
        ks = np.arange(j + 2, n)
        u = (h[ks, j] * inv) % p
        if not u.any():
            continue
        h[ks, :] = (h[ks, :] - u[:, None] * h[j + 1, :][None, :]) % p
        h[:, j + 1] = (h[:, j + 1] + (h[:, ks] @ u) % p) % p
    polys = [np.zeros(n + 1, dtype=np.int64)]
    polys[0][0] = 1
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = np.zeros(n + 1, dtype=np.int64)
        cur[1:] = prev[:-1]
        cur = (cur - int(h[m - 1, m - 1]) * prev) % p
        t = 1
        for i in range(m - 1, 0, -1):
            t = t * int(h[i, i - 1]) % p
            c = int(h[i - 1, m - 1]) * t % p
            if c:
                cur = (cur - c * polys[i - 1]) % p
        polys.append(cur)
    return [int(x) for x in polys[n]]


def _int_charpoly(num: np.ndarray) -> list[int]:
    n = num.shape[0]
    if n == 0:
        return [1]
    if n >= 2048:
        raise ParameterError("exact char-poly supports order < 2048")
    ints = [[int(x) for x in row] for row in num]
    r2 = max(sum(x * x for x in row) for row in ints)
    r = isqrt(r2) + 1
    bound = max(comb(n, k) * r ** k for k in range(n + 1))
    need, modulus, primes = 2 * bound + 1, 1, []
    k = 1
    while modulus <= need:
        primes = list(_primes(k))
        modulus = 1
        for q in primes:
            modulus *= q
        k += 1
    big = np.array(ints, dtype=object)
    residues = []
    for q in primes:
        reduced = np.array([[x % q for x in row] for row in big], dtype=np.int64)
        residues.append(_charpoly_mod(reduced, q))
    coeffs = []
    for idx in range(n + 1):
        x, mod = 0, 1
        for q, res in zip(primes, residues):
            # incremental CRT
            t = ((res[idx] - x) * pow(mod, -1, q)) % q
            x += mod * t
            mod *= q
        if x > mod // 2:
            x -= mod
        coeffs.append(x)
    return coeffs


def char_poly_exact(m) -> Poly:
    """det(xI - M) over the rationals for an exact matrix.

    Accepts a SymmetricMatrix with an exact form or any square array of ints,
    Fractions or decimal strings.  Computed modulo several primes with a
    Hadamard-type coefficient bound, then lifted by Chinese remaindering.
    """
    if isinstance(m, SymmetricMatrix):
        if not m.exact:
            raise ParameterError(f"{m.kind} matrix has no exact form")
        num, den = m.num, m.den
    else:
        rows = [[as_fraction(x) for x in row] for row in m]
        den = 1
        for row in rows:
            for x in row:
                den = lcm(den, x.denominator)
        num = np.array([[int(x * den) for x in row] for row in rows], dtype=object)
    n = len(num)
    a = _int_charpoly(np.asarray(num, dtype=object))
    return Poly(Fraction(a[k], den ** (n - k)) for k in range(n + 1))


def char_poly_leverrier(rows: Sequence[Sequence]) -> Poly:
    """Faddeev-LeVerrier over exact rationals; small-matrix reference."""
    a = [[as_fraction(x) for x in row] for row in rows]
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
        prod = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += coeffs[n - k + 1]
        mk = prod
        am = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return Poly(coeffs)


# ---------------------------------------------------------------- functionals

def s_k(spec, k: int) -> float:
    vals = spec.values() if isinstance(spec, Spectrum) else np.sort(np.asarray(spec, float))[::-1]
    if not 1 <= k <= len(vals):
        raise ParameterError(f"k={k} outside [1, {len(vals)}]")
    return float(np.sum(vals[:k]))


def laplacian_energy(g: Graph) -> tuple[float, int]:
    """Return (LE, sigma); the three equivalent forms are cross-checked."""
    mu = eigenvalues(build_matrix(g, "L"))
    dbar = 2 * g.m / g.n
    le_abs = float(np.sum(np.abs(mu - dbar)))
    sigma = int(np.sum(mu >= dbar - 1e-9))
    le_sigma = 2 * (float(np.sum(mu[:sigma])) - sigma * dbar)
    partial = np.cumsum(mu) - dbar * np.arange(1, g.n + 1)
    le_max = 2 * max(0.0, float(np.max(partial)))
    tol = 1e-8 * max(1, g.n)
    if abs(le_abs - le_sigma) > tol or abs(le_abs - le_max) > tol:
        raise ArithmeticError(f"LE forms disagree: {le_abs}, {le_sigma}, {le_max}")
    return le_abs, sigma


def dalpha_eigenvalues(g: Graph, alpha) -> np.ndarray:
    return eigenvalues(build_matrix(g, "Dalpha", alpha))


def generalized_distance_energy(g: Graph, alpha) -> float:
    """Sum of |eigenvalue - 2*alpha*W/n| for D_alpha; checked against the 2*max form."""
    al = float(as_fraction(alpha))
    if not 0 <= al < 1:
        raise ParameterError("alpha must lie in [0, 1)")
    vals = dalpha_eigenvalues(g, alpha)
    w = distance_matrix(g).sum() / 2
    centre = 2 * al * w / g.n
    e_abs = float(np.sum(np.abs(vals - centre)))
    partial = np.cumsum(vals) - centre * np.arange(1, g.n + 1)
    e_max = 2 * float(np.max(partial))
    if abs(e_abs - e_max) > 1e-8 * max(1.0, e_abs):
        raise ArithmeticError(f"energy forms disagree: {e_abs} vs {e_max}")
    return e_abs


def energy_forms(values, centre: float) -> tuple[float, float]:
    """(|.|-sum, 2*max partial-sum) forms of sum |x_i - centre|."""
    vals = np.sort(np.asarray(values, float))[::-1]
    partial = np.cumsum(vals) - centre * np.arange(1, len(vals) + 1)
    return float(np.sum(np.abs(vals - centre))), 2 * float(np.max(partial))
