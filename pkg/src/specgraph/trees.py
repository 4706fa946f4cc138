"""Exact tree algorithms: bottom-up characteristic polynomial, congruent
diagonalization of L(T) + alpha*I, sigma, and free-tree enumeration."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterator

from .errors import ParameterError
from .graph import Graph
from .poly import Poly
from .spectra import as_fraction


@dataclass(frozen=True)
class RootedTree:
    graph: Graph
    root: int
    parent: tuple  # parent[root] == -1
    children: tuple  # ascending child lists
    order: tuple  # bottom-up (post-order) processing order

    @property
    def n(self) -> int:
        return self.graph.n


def rooted(g: Graph, root: int = 0) -> RootedTree:
    if isinstance(g, RootedTree):
        return g
    if g.m != g.n - 1 or not g.is_connected():
        raise ParameterError("input is not a tree")
    parent = [-1] * g.n
    children = [[] for _ in range(g.n)]
    post, stack, seen = [], [(root, False)], {root}
    while stack:
        v, expanded = stack.pop()
        if expanded:
            post.append(v)
            continue
        stack.append((v, True))
        for u in reversed(g.adj[v]):
            if u not in seen:
                seen.add(u)
                parent[u] = v
                children[v].append(u)
                stack.append((u, False))
    children = tuple(tuple(sorted(c)) for c in children)
    return RootedTree(g, root, tuple(parent), children, tuple(post))


# ---------------------------------------------------------------- characteristic polynomial

def _primitive_pair(num: Poly, den: Poly) -> tuple[Poly, Poly, Fraction]:
    """Divide both by their common rational content g; returns (num/g, den/g, g)."""
    a, b = num.content(), den.content()
    g = Fraction(gcd(a.numerator, b.numerator), lcm(a.denominator, b.denominator))
    return num * (1 / g), den * (1 / g), g


@dataclass(frozen=True)
class CharPolyTrace:
    poly: Poly
    num: tuple  # numerator of a(v) per vertex
    den: tuple  # denominator of a(v) per vertex


def tree_charpoly_trace(t, verify: bool = False) -> CharPolyTrace:
    """Bottom-up rational functions a(v) = mu - d_v - sum over children 1/a(c).

    Each a(v) is kept as a pair (N_v, D_v) with D_v the product of the
    children's numerators, so the product of all a(v) telescopes to N_root.
    With ``verify`` the full product is also formed and divided exactly.
    """
    rt = rooted(t)
    g = rt.graph
    mu = Poly.x()
    num: list = [None] * g.n
    den: list = [None] * g.n
    scale = Fraction(1)
    for v in rt.order:
        kids = rt.children[v]
        base = mu - g.degree(v)
        if not kids:
            num[v], den[v] = base, Poly((1,))
            continue
        k = len(kids)
        prefix = [Poly((1,))]
        for c in kids:
            prefix.append(prefix[-1] * num[c])
        suffix = [Poly((1,))] * (k + 1)
        for i in range(k - 1, -1, -1):
            suffix[i] = suffix[i + 1] * num[kids[i]]
        total = prefix[k]
        acc = base * total
        for i, c in enumerate(kids):
            if num[c].is_zero():
                raise ArithmeticError(f"a({c}) vanished identically")
            acc = acc - den[c] * prefix[i] * suffix[i + 1]
        num[v], den[v], g_v = _primitive_pair(acc, total)
        scale *= g_v
    # den[v] * g_v is the product of the children's numerators, so the
    # product of all a(v) collapses to the root numerator times the scales
    p = num[rt.root] * scale
    if verify:
        top, bottom = Poly((1,)), Poly((1,))
        for v in range(g.n):
            top = top * num[v]
            bottom = bottom * den[v]
        full = top.exact_div(bottom)
        if full != p:
            raise ArithmeticError("telescoped product disagrees with the full product")
    return CharPolyTrace(p, tuple(num), tuple(den))


def tree_charpoly(t) -> Poly:
    """Characteristic polynomial det(mu I - L(T)) of a tree, exactly."""
    return tree_charpoly_trace(t).poly


# ---------------------------------------------------------------- inertia by diagonal congruence

@dataclass(frozen=True)
class DiagResult:
    values: tuple  # exact diagonal entry per vertex
    positive: int
    negative: int
    zero: int
    removed: tuple  # (child, parent) edges virtually deleted


def diagonalize_tree(t, alpha) -> DiagResult:
    """Diagonal matrix congruent to L(T) + alpha*I, processed bottom-up.

    Positive entries count Laplacian eigenvalues above -alpha, negative entries
    those below, zeros the multiplicity of -alpha.
    """
    rt = rooted(t)
    g = rt.graph
    al = as_fraction(alpha)
    a = [Fraction(g.degree(v)) + al for v in range(g.n)]
    cut = [False] * g.n  # cut[v]: edge from v to its parent removed
    removed = []
    for v in rt.order:
        kids = [c for c in rt.children[v] if not cut[c]]
        if not rt.children[v]:
            continue
        zero_kids = [c for c in kids if a[c] == 0]
        if not zero_kids:
            a[v] -= sum((1 / a[c] for c in kids), Fraction(0))
        else:
            c = zero_kids[0]
            a[v] = Fraction(-1, 2)
            a[c] = Fraction(2)
            if rt.parent[v] >= 0:
                cut[v] = True
                removed.append((v, rt.parent[v]))
    pos = sum(1 for x in a if x > 0)
    neg = sum(1 for x in a if x < 0)
    return DiagResult(tuple(a), pos, neg, g.n - pos - neg, tuple(removed))


def count_in_interval(t, lo, hi) -> int:
    """Number of Laplacian eigenvalues in (lo, hi], by two diagonalizations."""
    above_lo = diagonalize_tree(t, -as_fraction(lo)).positive
    above_hi = diagonalize_tree(t, -as_fraction(hi)).positive
    return above_lo - above_hi


def sigma_tree(t) -> int:
    """Number of Laplacian eigenvalues >= average degree 2 - 2/n, exactly."""
    g = t.graph if isinstance(t, RootedTree) else t
    dbar = 2 - Fraction(2, g.n)
    return g.n - diagonalize_tree(t, -dbar).negative


# ---------------------------------------------------------------- enumeration

def levels_to_tree(levels) -> Graph:
    """Rooted level sequence (root at level 0) to a Graph with vertex i per entry."""
    last_at = {}
    edges = []
    for i, lv in enumerate(levels):
        if lv > 0:
            edges.append((last_at[lv - 1], i))
        last_at[lv] = i
    return Graph.from_edges(len(levels), edges)


def _successor_rooted(seq: list[int], p: int | None = None) -> list[int] | None:
    """Next rooted level sequence in reverse-lexicographic order."""
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    period = p - q
    for i in range(p, len(out)):
        out[i] = out[i - period]
    return out


def _split(seq: list[int]) -> tuple[list[int], list[int]]:
    """Split off the first principal subtree (shifted up a level) from the rest."""
    m = len(seq)
    for i in range(2, len(seq)):
        if seq[i] == 1:
            m = i
            break
    left = [x - 1 for x in seq[1:m]]
    rest = [0] + seq[m:]
    return left, rest


def _to_free_candidate(seq: list[int]) -> list[int] | None:
    """Accept seq if it is the centred canonical form, else jump to the next candidate."""
    left, rest = _split(seq)
    lh, rh = max(left), max(rest)
    ok = rh >= lh
    if ok and rh == lh:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            ok = False
    if ok:
        return seq
    p = len(left)
    nxt = _successor_rooted(seq, p)
    if nxt is None:
        return None
    if seq[p] > 2:
        new_left, _ = _split(nxt)
        tail = list(range(1, max(new_left) + 2))
        nxt[-len(tail):] = tail
    return nxt


def enumerate_tree_levels(n: int) -> Iterator[list[int]]:
    if not 1 <= n <= 20:
        raise ParameterError("tree enumeration supports 1 <= n <= 20")
    if n <= 2:
        yield list(range(n))
        return
    seq = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while seq is not None:
        seq = _to_free_candidate(seq)
        if seq is None:
            return
        yield seq
        seq = _successor_rooted(seq)


def enumerate_trees(n: int) -> Iterator[Graph]:
    """One tree per isomorphism class of free trees on n vertices."""
    for seq in enumerate_tree_levels(n):
        yield levels_to_tree(seq)


def tree_canonical(g: Graph) -> str:
    """Centre-rooted AHU string; equal strings iff isomorphic trees."""
    n = g.n
    if n == 1:
        return "()"
    deg = g.degrees()
    layer = [v for v in range(n) if deg[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for u in g.adj[v]:
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt
    centres = layer

    def enc(v, parent):
        return "(" + "".join(sorted(enc(u, v) for u in g.adj[v] if u != parent)) + ")"

    return min(enc(c, -1) for c in centres)
