"""Guaranteed k-ranges for Brouwer's inequality S_k(G) <= m + k(k+1)/2, plus the
graph families those ranges are meant for."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from .errors import ParameterError
from .graph import Graph, canonical_form, complete, enumerate_graphs


@dataclass(frozen=True)
class KRange:
    source: str
    intervals: tuple  # (lo, hi) pairs, hi None meaning n
    reason: str = ""
    params: dict = field(default_factory=dict)
    hypothesis_ok: bool = True

    @property
    def empty(self) -> bool:
        return not self.intervals

    def resolve(self, n: int) -> list[tuple[int, int]]:
        out = []
        for lo, hi in self.intervals:
            hi = n if hi is None else min(hi, n)
            lo = max(lo, 1)
            if lo <= hi:
                out.append((lo, hi))
        return out

    def covered(self, n: int) -> list[int]:
        ks = set()
        for lo, hi in self.resolve(n):
            ks.update(range(lo, hi + 1))
        return sorted(ks)

    def contains(self, k: int, n: int) -> bool:
        return any(lo <= k <= hi for lo, hi in self.resolve(n))

    def label(self, n: int | None = None) -> str:
        if self.empty:
            return f"no guaranteed k ({self.reason})" if self.reason else "no guaranteed k"
        if self.intervals == ((1, None),):
            return "all k"
        parts = []
        for lo, hi in (self.resolve(n) if n is not None else self.intervals):
            parts.append(f"[{lo},{'n' if hi is None else hi}]")
        return "k in " + " U ".join(parts)


# ---------------------------------------------------------------- exact rounding of (A +- sqrt(D))/2

def floor_half_plus(a: int, d: int) -> int:
    """floor((a + sqrt(d)) / 2) for integers a and d >= 0."""
    r = isqrt(d)
    return (a + r) // 2


def ceil_half_plus(a: int, d: int) -> int:
    r = isqrt(d)
    if r * r == d:
        return -((-(a + r)) // 2)
    return (a + r) // 2 + 1


def floor_half_minus(a: int, d: int) -> int:
    """floor((a - sqrt(d)) / 2)."""
    r = isqrt(d)
    if r * r == d:
        return (a - r) // 2
    return (a - r - 1) // 2


def _merge(intervals: list) -> tuple:
    """Sort and merge touching intervals (hi None = open end)."""
    big = 10 ** 18
    items = sorted((lo, big if hi is None else hi) for lo, hi in intervals if hi is None or lo <= hi)
    out: list = []
    for lo, hi in items:
        if out and lo <= out[-1][1] + 1:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return tuple((lo, None if hi == big else hi) for lo, hi in out)


# ---------------------------------------------------------------- theorem formulas

def range_clique_cyclic(omega: int, r: int, c: int) -> KRange:
    """Graph with clique K_omega whose removal leaves r nontrivial c-cyclic components."""
    params = dict(omega=omega, r=r, c=c)
    if omega < 2 or r < 1 or c < 0:
        return KRange("thm3.1", (), "needs omega >= 2, r >= 1, c >= 0", params, False)
    e = 8 * r * (c - 1)
    ivs = []
    d_low = 16 * omega + e + 9
    if d_low < 0:
        delta1 = omega - 2
    else:
        delta1 = min(omega - 2, floor_half_minus(2 * omega + 3, d_low))
    if delta1 >= 1:
        ivs.append((1, delta1))
    d_high = 4 * omega * omega - 4 * omega + e + 9
    start = max(omega - 1, 1) if d_high < 0 else max(ceil_half_plus(3, d_high), 1)
    ivs.append((start, None))
    return KRange("thm3.1", _merge(ivs), "", params)


def range_biclique_cyclic(s: int, r: int, c: int) -> KRange:
    """Graph with maximal K_{s,s} whose removal leaves r nontrivial c-cyclic components."""
    params = dict(s=s, r=r, c=c)
    if s < 2 or r < 1 or c < 0:
        return KRange("thm3.10", (), "needs s >= 2, r >= 1, c >= 0", params, False)
    d = 20 * s - 4 * s * s + 8 * r * (c - 1) + 9
    if d <= 0:
        return KRange("thm3.10", ((1, None),), "", params)
    ivs = []
    y = floor_half_minus(2 * s + 3, d)
    if y >= 1:
        ivs.append((1, y))
    ivs.append((max(ceil_half_plus(2 * s + 3, d), 1), None))
    return KRange("thm3.10", _merge(ivs), "", params)


def _half_n_floor(n: int) -> int:
    return (n - 1) // 2


def _half_n_ceil(n: int) -> int:
    return -((-(n - 1)) // 2)


def range_size_one_degree(n: int, m: int, p: int, r: int) -> KRange:
    """Connected graph on n vertices and m edges with p vertices of degree r."""
    params = dict(n=n, m=m, p=p, r=r)
    if n < 4 or p < 1 or r < 1:
        return KRange("thm2", (), "needs n >= 4, p >= 1, r >= 1", params, False)
    ivs = []
    if 2 * m >= (2 * n - r - 1) * r:
        ivs.append((1, r))
    size_ok = 8 * m >= (n - 1) * (3 * n - 1) - 4 * (n - 1 - 2 * r) * p
    if size_ok and 2 * p < n:
        ivs.append((r + 1, _half_n_floor(n)))
    if size_ok and 2 * p > n:
        ivs.append((_half_n_ceil(n), n))
    reason = "" if ivs else "size condition not met"
    return KRange("thm2", _merge(ivs), reason, params)


def range_size_two_degrees(n: int, m: int, p: int, q: int, r: int, s: int) -> KRange:
    """Connected graph with p vertices of degree r and q vertices of degree s > r."""
    params = dict(n=n, m=m, p=p, q=q, r=r, s=s)
    if n < 4 or p < 1 or q < 1 or p == q or not s > r >= 1:
        return KRange("thm3", (), "needs n >= 4, p, q >= 1, p != q, s > r >= 1", params, False)
    ivs = []
    if 2 * m >= (2 * n - r - 1) * r:
        ivs.append((1, r))
    mid = (2 * n > 2 * p + 2 * s + 1 and 2 * m >= s * (2 * n - 2 * p - s - 1) + 2 * p * r) or (
        2 * n < 2 * p + 2 * r + 3 and 2 * m >= (r + 1) * (2 * n - 2 * p - r - 2) + 2 * p * r)
    if mid:
        ivs.append((r + 1, s))
    size_ok = 8 * m >= (n - 1) * (3 * n - 1) - 4 * (n - 2 * r - 1) * p - 4 * (n - 2 * s - 1) * q
    if size_ok and 2 * (p + q) < n:
        ivs.append((s + 1, _half_n_floor(n)))
    if size_ok and 2 * (p + q) > n:
        ivs.append((_half_n_ceil(n), n))
    reason = "" if ivs else "size condition not met"
    return KRange("thm3", _merge(ivs), reason, params)


def range_split_with_cycle(omega: int, t: int) -> KRange:
    """Clique with pendant stars and one cycle C_t fused at a clique vertex."""
    params = dict(omega=omega, t=t)
    if omega < 2 or t < 3:
        return KRange("thm4", (), "needs omega >= 2, t >= 3", params, False)
    d = 8 * t - 15  # u = sqrt(d) / 2
    ivs = []
    hi = floor_half_minus(2 * omega - 1, d)
    if hi >= 1:
        ivs.append((1, hi))
    ivs.append((ceil_half_plus(2 * omega - 1, d), None))
    return KRange("thm4", _merge(ivs), "", params)


def range_clique_family(omega: int, a: int, c: int) -> KRange:
    """Claimed k for C_omega(a,...,a) built from c-cyclic blocks of order a + 1."""
    params = dict(omega=omega, a=a, c=c)
    if omega < 2 or a < 1 or c < 0:
        return KRange("thm3.8", (), "needs omega >= 2, a >= 1, c >= 0", params, False)
    if c == 0:
        return KRange("thm3.8", ((1, None),), "", params)
    if c == 1:
        if a > omega + 1:
            return KRange("thm3.8", (), "needs a <= omega + 1", params, False)
        return KRange("thm3.8", _merge([(1, omega), (omega + 2, None)]), "", params)
    if c == 2:
        ivs = [(1, omega), (omega + 3, None)]
        if a <= omega + 2:
            ivs.append((omega + 1, omega + 1))
        if 2 * a <= 4 * omega + 1:
            ivs.append((omega + 2, omega + 2))
        return KRange("thm3.8", _merge(ivs), "", params)
    # a <= omega - 1/2 + sqrt((2c - 1) omega)  <=>  (2a - 2 omega + 1)^2 <= 4 (2c - 1) omega when lhs >= 0
    lhs = 2 * a - 2 * omega + 1
    if lhs <= 0 or lhs * lhs <= 4 * (2 * c - 1) * omega:
        return KRange("thm3.8", ((1, None),), "", params)
    return KRange("thm3.8", (), "a too large for c >= 3", params, False)


THEOREMS = {
    "thm3.1": (range_clique_cyclic, ("omega", "r", "c")),
    "thm3.10": (range_biclique_cyclic, ("s", "r", "c")),
    "thm2": (range_size_one_degree, ("n", "m", "p", "r")),
    "thm3": (range_size_two_degrees, ("n", "m", "p", "q", "r", "s")),
    "thm4": (range_split_with_cycle, ("omega", "t")),
    "thm3.8": (range_clique_family, ("omega", "a", "c")),
}


def brouwer_guaranteed_ranges(theorem: str, params: dict) -> KRange:
    if theorem not in THEOREMS:
        raise ParameterError(f"unknown theorem id {theorem!r}; choose from {sorted(THEOREMS)}")
    fn, names = THEOREMS[theorem]
    missing = [k for k in names if k not in params]
    if missing:
        raise ParameterError(f"{theorem} needs parameters {names}")
    return fn(*(int(params[k]) for k in names))


def perfect_square_seq(t: int) -> tuple[int, int]:
    """b_t = b_{t-1} + 8(t + 1) with b_0 = 0, and x_t = b_t + 9."""
    if t < 0:
        raise ParameterError("t must be >= 0")
    b = 0
    for i in range(1, t + 1):
        b += 8 * (i + 1)
    return b, b + 9


# ---------------------------------------------------------------- families

def attach_at_clique(omega: int, blocks: list[tuple[Graph, int]]) -> Graph:
    """K_omega with blocks[i][0] glued at clique vertex i by its vertex blocks[i][1]."""
    if len(blocks) != omega:
        raise ParameterError("need one block per clique vertex")
    edges = list(complete(omega).edges())
    nxt = omega
    for i, (h, root) in enumerate(blocks):
        label = {}
        for v in range(h.n):
            if v == root:
                label[v] = i
            else:
                label[v] = nxt
                nxt += 1
        edges += [(label[u], label[v]) for u, v in h.edges()]
    return Graph.from_edges(nxt, edges)


def c_cyclic_blocks(order: int, c: int) -> list[tuple[Graph, int]]:
    """Connected c-cyclic graphs of the given order with each attachment vertex, up to isomorphism."""
    out, seen = [], set()
    for h in enumerate_graphs(order, connected_only=True):
        if h.m != order - 1 + c:
            continue
        for root in range(h.n):
            # mark the root by hanging a private leaf on it, then canonicalise
            marked = Graph.from_edges(h.n + 2, list(h.edges()) + [(root, h.n), (h.n, h.n + 1)])
            key = canonical_form(marked)[0]
            if key not in seen:
                seen.add(key)
                out.append((h, root))
    return out


def clique_family(omega: int, a: int, c: int) -> list[Graph]:
    """Members of C_omega(a,...,a): the same rooted c-cyclic block on every clique vertex."""
    if omega < 2 or a < 1:
        raise ParameterError("needs omega >= 2 and a >= 1")
    return [attach_at_clique(omega, [(h, root)] * omega) for h, root in c_cyclic_blocks(a + 1, c)]


def split_cycle_graph(omega: int, a: int, t: int) -> Graph:
    """Pendant stars K_{1,a} on omega - 1 clique vertices; the last carries a - 2 leaves and C_t."""
    if omega < 2 or a < 2 or t < 3:
        raise ParameterError("needs omega >= 2, a >= 2, t >= 3")
    star_block = Graph.from_edges(a + 1, [(0, i) for i in range(1, a + 1)])
    last_edges = [(0, i) for i in range(1, a - 1)]
    cyc = [0] + list(range(a - 1, a - 1 + t - 1))
    last_edges += [(cyc[i], cyc[(i + 1) % t]) for i in range(t)]
    last = Graph.from_edges(a - 2 + t, last_edges)
    return attach_at_clique(omega, [(star_block, 0)] * (omega - 1) + [(last, 0)])
