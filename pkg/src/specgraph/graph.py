"""Simple undirected graphs, named families, joined unions, metrics and codecs."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapacityError, ConnectivityError, ParameterError, ParseError


@dataclass(frozen=True)
class Graph:
    """Vertices are 0..n-1; ``adj[v]`` is the sorted tuple of neighbours of v."""

    n: int
    adj: tuple

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise ParameterError("adjacency length must equal n")
        for v, nb in enumerate(self.adj):
            for u in nb:
                if u == v:
                    raise ParameterError(f"loop at vertex {v}")
                if not 0 <= u < self.n:
                    raise ParameterError(f"neighbour {u} of {v} out of range")
                if v not in self.adj[u]:
                    raise ParameterError(f"asymmetric edge {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ParameterError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge {u}-{v} out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def from_adjacency(cls, a) -> "Graph":
        a = np.asarray(a)
        n = a.shape[0]
        iu, ju = np.nonzero(np.triu(a, 1))
        return cls.from_edges(n, zip(iu.tolist(), ju.tolist()))

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [s], deque([s])
            while queue:
                v = queue.popleft()
                for u in self.adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        comp.append(u)
                        queue.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Return the graph whose vertex i is vertex ``order[i]`` of self."""
        pos = {v: i for i, v in enumerate(order)}
        return Graph.from_edges(self.n, ((pos[u], pos[v]) for u, v in self.edges()))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        pos = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            ((pos[u], pos[v]) for u, v in self.edges() if u in pos and v in pos),
        )

    def complement(self) -> "Graph":
        return Graph.from_edges(
            self.n,
            ((u, v) for u in range(self.n) for v in range(u + 1, self.n) if v not in self.adj[u]),
        )

    def remove_edge(self, u: int, v: int) -> "Graph":
        return Graph.from_edges(self.n, (e for e in self.edges() if e != (min(u, v), max(u, v))))

    def add_edge(self, u: int, v: int) -> "Graph":
        return Graph.from_edges(self.n, self.edges() + [(u, v)])

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    edges, off = [], 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges())
        off += g.n
    return Graph.from_edges(off, edges)


# ---------------------------------------------------------------- families

def _need(cond: bool, msg: str):
    if not cond:
        raise ParameterError(msg)


def empty(n: int) -> Graph:
    _need(n >= 1, "null graph needs n >= 1")
    return Graph.from_edges(n, [])


def path(n: int) -> Graph:
    _need(n >= 1, "path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    _need(n >= 3, "cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    _need(n >= 1, "complete graph needs n >= 1")
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    _need(len(sizes) >= 1 and all(s >= 1 for s in sizes), "part sizes must be positive")
    label = [i for i, s in enumerate(sizes) for _ in range(s)]
    n = len(label)
    return Graph.from_edges(
        n, ((u, v) for u in range(n) for v in range(u + 1, n) if label[u] != label[v])
    )


def complete_bipartite(a: int, b: int) -> Graph:
    return complete_multipartite([a, b])


def star(n: int) -> Graph:
    """Star on n vertices, centre 0."""
    _need(n >= 1, "star needs n >= 1")
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def join(g1: Graph, g2: Graph) -> Graph:
    return joined_union(complete(2), [g1, g2])


def complete_split(omega: int, n: int) -> Graph:
    """Clique on 0..omega-1 joined to an independent set of n - omega vertices."""
    _need(1 <= omega <= n, "complete split needs 1 <= omega <= n")
    if omega == n:
        return complete(n)
    return join(complete(omega), empty(n - omega))


def wheel(n: int) -> Graph:
    """Hub 0 joined to a cycle on n - 1 vertices."""
    _need(n >= 4, "wheel needs n >= 4")
    return join(complete(1), cycle(n - 1))


def cone(a: int, b: int) -> Graph:
    """b independent hubs (listed first) joined to a cycle of length a."""
    _need(a >= 3 and b >= 1, "cone needs a >= 3, b >= 1")
    return join(empty(b), cycle(a))


def friendship(n: int) -> Graph:
    """n triangles sharing the hub 0; order 2n + 1."""
    _need(n >= 1, "friendship graph needs n >= 1")
    return firefly(0, n)


def firefly(p: int, n: int) -> Graph:
    """Hub 0, then p pendant vertices, then n - p triangles through the hub."""
    _need(n >= 1 and 0 <= p <= n, "firefly needs n >= 1 and 0 <= p <= n")
    parts = [complete(1)] + [complete(1)] * p + [complete(2)] * (n - p)
    return joined_union(star(n + 1), parts)


def generalized_wheel(a: int, b: int) -> Graph:
    """Hub 0 joined to a disjoint copies of the cycle C_b."""
    _need(a >= 1 and b >= 3, "generalized wheel needs a >= 1, b >= 3")
    return join(complete(1), disjoint_union([cycle(b)] * a))


def double_broom3(a: int, b: int) -> Graph:
    """Adjacent centres 0 and 1 carrying a and b leaves (diameter 3)."""
    _need(a >= 1 and b >= 1, "diameter-3 double broom needs a, b >= 1")
    edges = [(0, 1)] + [(0, 2 + i) for i in range(a)] + [(1, 2 + a + i) for i in range(b)]
    return Graph.from_edges(a + b + 2, edges)


def double_broom4(a: int, b: int) -> Graph:
    """Middle vertex 0 adjacent to centres 1 and 2 carrying a and b leaves (diameter 4)."""
    _need(a >= 1 and b >= 1, "diameter-4 double broom needs a, b >= 1")
    edges = [(0, 1), (0, 2)] + [(1, 3 + i) for i in range(a)] + [(2, 3 + a + i) for i in range(b)]
    return Graph.from_edges(a + b + 3, edges)


def sns_tree(p: int, leaves: Sequence[int]) -> Graph:
    """Diameter-4 SNS tree.

    Root 0 carries p pendant vertices and r = len(leaves) level-one vertices;
    level-one vertex i carries ``leaves[i]`` pendant vertices.  At least two
    level-one vertices must carry leaves so the diameter is four.
    """
    r = len(leaves)
    _need(p >= 0 and r >= 2 and all(s >= 0 for s in leaves), "bad SNS parameters")
    _need(sum(1 for s in leaves if s > 0) >= 2, "SNS tree needs two non-empty branches")
    edges = [(0, 1 + i) for i in range(r)]
    nxt = 1 + r
    for _ in range(p):
        edges.append((0, nxt))
        nxt += 1
    for i, s in enumerate(leaves):
        for _ in range(s):
            edges.append((1 + i, nxt))
            nxt += 1
    return Graph.from_edges(nxt, edges)


def t4_2a2b(a: int, b: int) -> Graph:
    """Root with a + b pendant paths of length two; order 2(a + b) + 1."""
    _need(a >= 1 and b >= 1, "T(4;2a,2b) needs a, b >= 1")
    return sns_tree(0, [1] * (a + b))


def t_prime(r: int, s1: int) -> Graph:
    _need(r >= 2 and s1 >= 2, "T' needs r >= 2, s1 >= 2")
    return sns_tree(0, [s1] + [1] * (r - 1))


def t_double_prime(r: int, s1: int, s2: int) -> Graph:
    _need(r >= 2 and s1 >= 2 and s2 >= 2, "T'' needs r >= 2, s1, s2 >= 2")
    return sns_tree(0, [s1, s2] + [1] * (r - 2))


FAMILIES = {
    "path": (path, ("n",)),
    "cycle": (cycle, ("n",)),
    "complete": (complete, ("n",)),
    "empty": (empty, ("n",)),
    "complete_bipartite": (complete_bipartite, ("a", "b")),
    "complete_multipartite": (complete_multipartite, ("sizes",)),
    "star": (star, ("n",)),
    "complete_split": (complete_split, ("omega", "n")),
    "wheel": (wheel, ("n",)),
    "cone": (cone, ("a", "b")),
    "friendship": (friendship, ("n",)),
    "firefly": (firefly, ("p", "n")),
    "generalized_wheel": (generalized_wheel, ("a", "b")),
    "double_broom3": (double_broom3, ("a", "b")),
    "double_broom4": (double_broom4, ("a", "b")),
    "t4_2a2b": (t4_2a2b, ("a", "b")),
    "t_prime": (t_prime, ("r", "s1")),
    "t_double_prime": (t_double_prime, ("r", "s1", "s2")),
    "sns_tree": (sns_tree, ("p", "leaves")),
}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)

    def label(self) -> str:
        inner = ",".join(f"{k}={self.params[k]}" for k in sorted(self.params))
        return f"{self.family}({inner})"


def build_named(spec: FamilySpec) -> Graph:
    if spec.family not in FAMILIES:
        raise ParameterError(f"unknown family {spec.family!r}")
    fn, names = FAMILIES[spec.family]
    missing = [k for k in names if k not in spec.params]
    extra = [k for k in spec.params if k not in names]
    if missing or extra:
        raise ParameterError(f"{spec.family} takes parameters {names}")
    return fn(*(spec.params[k] for k in names))


# ---------------------------------------------------------------- joined union

@dataclass(frozen=True)
class JoinedUnionSpec:
    skeleton: Graph
    parts: tuple

    def __post_init__(self):
        if len(self.parts) != self.skeleton.n:
            raise ParameterError("number of parts must equal skeleton order")
        if any(p.n < 1 for p in self.parts):
            raise ParameterError("every part needs at least one vertex")

    @property
    def orders(self) -> list[int]:
        return [p.n for p in self.parts]

    def blocks(self) -> list[list[int]]:
        out, off = [], 0
        for p in self.parts:
            out.append(list(range(off, off + p.n)))
            off += p.n
        return out


def joined_union(skeleton: Graph, parts: Sequence[Graph]) -> Graph:
    """Replace skeleton vertex i by ``parts[i]``; join parts of adjacent vertices.

    Part i occupies a consecutive block of vertex indices.
    """
    spec = JoinedUnionSpec(skeleton, tuple(parts))
    blocks = spec.blocks()
    edges = []
    for i, p in enumerate(parts):
        off = blocks[i][0]
        edges.extend((u + off, v + off) for u, v in p.edges())
    for i, j in skeleton.edges():
        edges.extend(itertools.product(blocks[i], blocks[j]))
    return Graph.from_edges(sum(spec.orders), edges)


# ---------------------------------------------------------------- metrics

@dataclass(frozen=True)
class TransmissionProfile:
    tr: tuple
    wiener: int
    regular: bool


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple
    conjugate: tuple
    average: float


def bfs_distances(g: Graph, s: int) -> list[int]:
    dist = [-1] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for u in g.adj[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def distance_matrix(g: Graph) -> np.ndarray:
    d = np.zeros((g.n, g.n), dtype=np.int64)
    for s in range(g.n):
        row = bfs_distances(g, s)
        for t, x in enumerate(row):
            if x < 0:
                raise ConnectivityError(s, t)
        d[s] = row
    return d


def distances(g: Graph):
    """Return (distance matrix, TransmissionProfile, diameter) of a connected graph."""
    d = distance_matrix(g)
    tr = tuple(int(x) for x in d.sum(axis=1))
    prof = TransmissionProfile(tr, sum(tr) // 2, len(set(tr)) <= 1)
    return d, prof, int(d.max()) if g.n else 0


def degree_profile(g: Graph) -> DegreeProfile:
    deg = sorted(g.degrees(), reverse=True)
    conj = tuple(sum(1 for d in deg if d >= k) for k in range(1, g.n + 1))
    avg = 2 * g.m / g.n if g.n else 0.0
    return DegreeProfile(tuple(deg), conj, avg)


# ---------------------------------------------------------------- text formats

def _g6_size(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise ParameterError("graph6 supports n < 258048")


def to_graph6(g: Graph) -> str:
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _g6_size(g.n) + body


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise ParseError("empty graph6 string", 0)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 character {ch!r}", i)
    if s[0] == "~":
        if len(s) < 4:
            raise ParseError("truncated long-form header", len(s))
        if s[1] == "~":
            raise ParseError("8-byte size header is not supported", 1)
        n = ((ord(s[1]) - 63) << 12) | ((ord(s[2]) - 63) << 6) | (ord(s[3]) - 63)
        pos = 4
    else:
        n = ord(s[0]) - 63
        pos = 1
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(s) - pos != need:
        raise ParseError(f"expected {need} data bytes for n={n}, found {len(s) - pos}", pos)
    bits = []
    for ch in s[pos:]:
        v = ord(ch) - 63
        bits.extend((v >> (5 - k)) & 1 for k in range(6))
    edges, k = [], 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def read_graph6_file(path: str) -> Iterator[Graph]:
    with open(path) as fh:
        for line in fh:
            if line.strip():
                yield from_graph6(line)


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 2:
        raise ParseError("edge list needs an 'n m' header", 0)
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(r[0]), int(r[1])) for r in rows[1:]]
    except (ValueError, IndexError) as exc:
        raise ParseError(f"bad edge-list line: {exc}", 0) from None
    if len(edges) != m:
        raise ParseError(f"header promises {m} edges, found {len(edges)}", 0)
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------- enumeration

MAX_ENUM_N = 8
MAX_CANON_ORDERS = 200_000


def _refined_cells(g: Graph) -> list[list[int]]:
    """Iterated degree refinement; cells come out in an isomorphism-invariant order."""
    color = g.degrees()
    ncls = len(set(color))
    while True:
        sig = [(color[v], tuple(sorted(color[u] for u in g.adj[v]))) for v in range(g.n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        color = [ranks[s] for s in sig]
        if len(ranks) == ncls:
            break
        ncls = len(ranks)
    cells = [[] for _ in range(ncls)]
    for v in range(g.n):
        cells[color[v]].append(v)
    return cells


def canonical_form(g: Graph) -> tuple[int, tuple]:
    """Minimum edge-bit code over all orderings compatible with the refined cells.

    Returns (code, order) where ``g.relabel(order)`` is the canonical representative.
    """
    n = g.n
    if n <= 1:
        return 0, tuple(range(n))
    cells = _refined_cells(g)
    count = 1
    for c in cells:
        count *= factorial(len(c))
    if count > MAX_CANON_ORDERS:
        raise CapacityError(f"canonical form would scan {count} orderings; use is_isomorphic")
    per_cell = [np.array(list(itertools.permutations(c)), dtype=np.int64) for c in cells]
    orders = per_cell[0]
    for block in per_cell[1:]:
        a = np.repeat(orders, len(block), axis=0)
        b = np.tile(block, (len(orders), 1))
        orders = np.hstack([a, b])
    # pos[k, v] is the position of vertex v under ordering k
    pos = np.empty_like(orders)
    rows = np.arange(len(orders))[:, None]
    pos[rows, orders] = np.arange(n)[None, :]
    edges = g.edges()
    if not edges:
        return 0, tuple(range(n))
    eu = np.array([e[0] for e in edges])
    ev = np.array([e[1] for e in edges])
    pu, pv = pos[:, eu], pos[:, ev]
    lo, hi = np.minimum(pu, pv), np.maximum(pu, pv)
    # graph6 bit order: column-major upper triangle, earliest pairs most significant
    idx = hi * (hi - 1) // 2 + lo
    nbits = n * (n - 1) // 2
    codes = (np.int64(1) << (nbits - 1 - idx)).sum(axis=1)
    best = int(np.argmin(codes))
    return int(codes[best]), tuple(int(x) for x in orders[best])


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_form(g)[1])


def _extend_all(prev: list[Graph], n: int) -> list[Graph]:
    seen = {}
    for h in prev:
        for mask in range(1 << (n - 1)):
            edges = h.edges() + [(v, n - 1) for v in range(n - 1) if mask >> v & 1]
            g = Graph.from_edges(n, edges)
            code, order = canonical_form(g)
            if code not in seen:
                seen[code] = g.relabel(order)
    return [seen[c] for c in sorted(seen)]


@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple:
    if n == 1:
        return (Graph(1, ((),)),)
    return tuple(_extend_all(list(_all_graphs(n - 1)), n))


def enumerate_graphs(n: int, connected_only: bool = False) -> Iterator[Graph]:
    """One canonical representative per isomorphism class, in a fixed order."""
    if n < 1:
        raise ParameterError("n must be positive")
    if n > MAX_ENUM_N:
        raise CapacityError(
            f"built-in enumeration stops at n={MAX_ENUM_N}; ingest a graph6 corpus instead"
        )
    for g in _all_graphs(n):
        if not connected_only or g.is_connected():
            yield g


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Backtracking search over colour classes refined on the disjoint union."""
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    n = g.n
    cells = _refined_cells(disjoint_union([g, h]))
    color = [0] * (2 * n)
    for i, cell in enumerate(cells):
        if sum(1 for v in cell if v < n) * 2 != len(cell):
            return False
        for v in cell:
            color[v] = i
    targets = {i: [v - n for v in cell if v >= n] for i, cell in enumerate(cells)}
    # visit g in BFS order from small classes so constraints bite early
    order, seen = [], [False] * n
    for s in sorted(range(n), key=lambda v: (len(cells[color[v]]), v)):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
    hsets = [set(nb) for nb in h.adj]
    image, used = [-1] * n, [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        mapped = [image[u] for u in g.adj[v] if image[u] >= 0]
        for w in targets[color[v]]:
            if used[w] or not all(x in hsets[w] for x in mapped):
                continue
            # mapped non-neighbours of v must stay non-neighbours of w
            if sum(1 for x in h.adj[w] if used[x]) != len(mapped):
                continue
            image[v], used[w] = w, True
            if extend(i + 1):
                return True
            image[v], used[w] = -1, False
        return False

    return extend(0)


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    mask = rng.random((n, n)) < p
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n) if mask[u, v]))


def random_connected_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Random spanning tree plus independent extra edges, so always connected."""
    t = random_tree(n, rng)
    extra = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, t.edges() + extra)


def random_tree(n: int, rng: np.random.Generator) -> Graph:
    """Uniform labelled tree via a random Pruefer sequence."""
    if n == 1:
        return Graph(1, ((),))
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    seq = rng.integers(0, n, size=n - 2).tolist()
    return prufer_to_tree(seq)


def prufer_to_tree(seq: Sequence[int]) -> Graph:
    import heapq

    n = len(seq) + 2
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return Graph.from_edges(n, edges)
