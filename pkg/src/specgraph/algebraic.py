"""Divisor arithmetic, power graphs and zero-divisor graphs of Z_n."""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

from .errors import ParameterError
from .graph import Graph, JoinedUnionSpec, complete, empty, joined_union


def factorize(n: int) -> dict[int, int]:
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def tau(n: int) -> int:
    out = 1
    for e in factorize(n).values():
        out *= e + 1
    return out


@dataclass(frozen=True)
class DivisorData:
    n: int
    proper: tuple  # divisors d with 1 < d < n, ascending
    phi_of: dict  # phi(d) for every divisor d of n
    tau: int
    phi_n: int
    factors: dict


def divisor_data(n: int) -> DivisorData:
    if n < 2:
        raise ParameterError("divisor data needs n >= 2")
    divs = [d for d in range(1, n + 1) if n % d == 0]
    return DivisorData(
        n,
        tuple(d for d in divs if 1 < d < n),
        {d: phi(d) for d in divs},
        tau(n),
        phi(n),
        factorize(n),
    )


def _proper_or_fail(n: int) -> tuple:
    dd = divisor_data(n)
    if not dd.proper:
        raise ParameterError(f"{n} has no proper divisors; the divisor graph would be empty")
    return dd.proper


def divisibility_graph(n: int) -> Graph:
    """Proper divisors of n, adjacent when one divides the other."""
    ds = _proper_or_fail(n)
    k = len(ds)
    return Graph.from_edges(
        k,
        ((i, j) for i in range(k) for j in range(i + 1, k) if ds[j] % ds[i] == 0),
    )


def zero_divisor_quotient_graph(n: int) -> Graph:
    """Proper divisors of n, adjacent when n divides their product."""
    ds = _proper_or_fail(n)
    k = len(ds)
    return Graph.from_edges(
        k,
        ((i, j) for i in range(k) for j in range(i + 1, k) if (ds[i] * ds[j]) % n == 0),
    )


@dataclass(frozen=True)
class ZnDecomposition:
    skeleton: Graph
    labels: tuple  # divisor attached to each skeleton vertex
    kinds: tuple  # "clique" or "coclique" per part
    blocks: tuple  # residues of Z_n in each part, ascending

    @property
    def orders(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def parts(self) -> list[Graph]:
        return [complete(len(b)) if k == "clique" else empty(len(b))
                for k, b in zip(self.kinds, self.blocks)]

    def spec(self) -> JoinedUnionSpec:
        return JoinedUnionSpec(self.skeleton, tuple(self.parts()))

    def build(self) -> Graph:
        return joined_union(self.skeleton, self.parts())

    def vertex_order(self) -> list[int]:
        return [x for b in self.blocks for x in b]

    def to_json(self) -> str:
        return json.dumps({
            "skeleton_order": self.skeleton.n,
            "skeleton_edges": [list(e) for e in self.skeleton.edges()],
            "parts": [
                {"label": lab, "kind": k, "order": len(b), "residues": list(b)}
                for lab, k, b in zip(self.labels, self.kinds, self.blocks)
            ],
        })


def power_graph_direct(n: int) -> Graph:
    """x ~ y iff one lies in the cyclic subgroup generated by the other."""
    if n < 3:
        raise ParameterError("power graph needs n >= 3")
    g = [gcd(x, n) for x in range(n)]  # gcd(0, n) == n
    # <y> = multiples of gcd(y, n), so x in <y> iff gcd(y, n) | x
    return Graph.from_edges(
        n,
        ((x, y) for x in range(n) for y in range(x + 1, n) if x % g[y] == 0 or y % g[x] == 0),
    )


def power_graph(n: int) -> tuple[Graph, ZnDecomposition]:
    """Direct power graph of Z_n and its decomposition.

    The first part holds the identity and the generators (a clique of order
    phi(n) + 1) and is joined to everything; part d holds the elements of
    order d, a clique of order phi(d), for each proper divisor d.
    """
    g = power_graph_direct(n)
    ds = divisor_data(n).proper
    blocks = [tuple(x for x in range(n) if x == 0 or gcd(x, n) == 1)]
    for d in ds:
        blocks.append(tuple(x for x in range(1, n) if gcd(x, n) == n // d))
    k = len(ds)
    edges = [(0, i + 1) for i in range(k)]
    edges += [(i + 1, j + 1) for i in range(k) for j in range(i + 1, k) if ds[j] % ds[i] == 0]
    skel = Graph.from_edges(k + 1, edges)
    dec = ZnDecomposition(skel, (1,) + tuple(ds), ("clique",) * (k + 1), tuple(blocks))
    return g, dec


def zero_divisor_graph_direct(n: int) -> Graph:
    """Nonzero zero-divisors of Z_n in ascending order, u ~ v iff n | uv."""
    verts = [x for x in range(1, n) if gcd(x, n) > 1]
    if not verts:
        raise ParameterError(f"Z_{n} has no nonzero zero-divisors")
    k = len(verts)
    return Graph.from_edges(
        k,
        ((i, j) for i in range(k) for j in range(i + 1, k) if (verts[i] * verts[j]) % n == 0),
    )


def zero_divisors(n: int) -> list[int]:
    return [x for x in range(1, n) if gcd(x, n) > 1]


def zero_divisor_graph(n: int) -> tuple[Graph, ZnDecomposition]:
    """Direct zero-divisor graph and its decomposition over the gcd classes A_d.

    Vertex i of the direct graph is the i-th nonzero zero-divisor; decomposition
    blocks list residues, so use ``zero_divisors`` to translate.
    """
    g = zero_divisor_graph_direct(n)
    ds = divisor_data(n).proper
    blocks = tuple(tuple(x for x in range(1, n) if gcd(x, n) == d) for d in ds)
    kinds = tuple("clique" if (d * d) % n == 0 else "coclique" for d in ds)
    dec = ZnDecomposition(zero_divisor_quotient_graph(n), tuple(ds), kinds, blocks)
    return g, dec


def decomposition_matches(g: Graph, dec: ZnDecomposition, residues: list[int] | None = None) -> bool:
    """True when g, relabelled block by block, equals the joined-union rebuild."""
    index = {x: i for i, x in enumerate(residues)} if residues is not None else None
    order = [index[x] if index else x for x in dec.vertex_order()]
    if sorted(order) != list(range(g.n)):
        return False
    return g.relabel(order) == dec.build()
