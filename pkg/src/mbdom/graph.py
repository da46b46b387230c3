"""Bitset graphs: parsing, generators and small exact graph algorithms.

Vertices are ``0..n-1`` and every vertex set is an ``int`` bitmask, so the
whole package can pass sets around as plain integers.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import networkx as nx

MAX_VERTICES = 62
DOMINATION_CAP = 20
ISOMORPHISM_CAP = 12


class GraphError(ValueError):
    """Invalid graph construction or invalid arguments for a graph routine."""


class ParseError(GraphError):
    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class ResourceLimitError(RuntimeError):
    """A size cap of an exponential routine was exceeded."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``adj[v]`` is the open neighbourhood of ``v`` as a bitmask. Labels are
    metadata for generator landmarks and are ignored by equality.
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[str | None, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, a in enumerate(self.adj):
            if a & ~full:
                raise GraphError(f"neighbour of {v} out of range")
            if a >> v & 1:
                raise GraphError(f"self-loop at {v}")
            for u in bits(a):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("labels length does not match n")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str | None] | None = None,
    ) -> Graph:
        if not 0 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(labels) if labels is not None else None)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def closed(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def label(self, v: int) -> str | None:
        return self.labels[v] if self.labels is not None else None

    def vertex(self, name: str) -> int:
        """Resolve a vertex by label, falling back to a decimal index."""
        if self.labels is not None and name in self.labels:
            return self.labels.index(name)
        try:
            v = int(name)
        except ValueError:
            raise GraphError(f"unknown vertex {name!r}") from None
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range")
        return v

    def neighbours(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == self.full

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph on ``vertices`` (relabelled 0..k-1) and the map back."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        labels = [self.label(v) for v in keep] if self.labels is not None else None
        return Graph.from_edges(len(keep), edges, labels), keep

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> Graph:
        order = sorted(g.nodes())
        index = {v: i for i, v in enumerate(order)}
        return cls.from_edges(len(order), ((index[u], index[v]) for u, v in g.edges()))


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header plus ``u v`` lines format; ``#`` starts a comment."""
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected two integers, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, f"expected two integers, got {line!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError(lineno, "negative count in header")
            if a > MAX_VERTICES:
                raise ParseError(lineno, f"n={a} exceeds the {MAX_VERTICES}-vertex cap")
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(lineno, f"vertex out of range 0..{n - 1}")
        if a == b:
            raise ParseError(lineno, f"self-loop at {a}")
        edges.append((a, b))
    if header is None:
        raise ParseError(0, "missing 'n m' header")
    if len(edges) != header[1]:
        raise ParseError(0, f"header announces {header[1]} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges)


def closed_neighborhood(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    return g.closed(v)


def dominated_by(g: Graph, s: int) -> int:
    """Union of closed neighbourhoods of the vertices in ``s``."""
    out = 0
    for v in bits(s):
        out |= g.adj[v] | (1 << v)
    return out


def is_dominating(g: Graph, s: int) -> bool:
    return dominated_by(g, s) == g.full


@dataclass(frozen=True)
class DomStats:
    gamma: int
    num_gamma_sets: int
    one_witness_set: int


def gamma_sets(g: Graph, cap: int = DOMINATION_CAP) -> tuple[int, list[int]]:
    """Domination number and every minimum dominating set, as bitmasks."""
    if g.n > cap:
        raise ResourceLimitError(f"n={g.n} exceeds domination cap {cap}")
    closed = [g.closed(v) for v in range(g.n)]
    full = g.full
    for k in range(g.n + 1):
        found = []
        for combo in itertools.combinations(range(g.n), k):
            cover = 0
            for v in combo:
                cover |= closed[v]
            if cover == full:
                found.append(mask_of(combo))
        if found:
            return k, found
    raise AssertionError("unreachable: V(G) always dominates")


def domination_stats(g: Graph, cap: int = DOMINATION_CAP) -> DomStats:
    gamma, sets = gamma_sets(g, cap)
    return DomStats(gamma, len(sets), sets[0])


def has_perfect_matching(g: Graph) -> bool:
    if g.n % 2:
        return False
    if g.n == 0:
        return True
    matching = nx.max_weight_matching(g.to_networkx(), maxcardinality=True)
    return 2 * len(matching) == g.n


def perfect_matchings(g: Graph, within: int | None = None) -> Iterator[list[tuple[int, int]]]:
    """Enumerate every perfect matching of the subgraph induced on ``within``."""
    remaining = g.full if within is None else within

    def rec(rem: int, acc: list[tuple[int, int]]) -> Iterator[list[tuple[int, int]]]:
        if not rem:
            yield list(acc)
            return
        v = (rem & -rem).bit_length() - 1
        for u in bits(g.adj[v] & rem):
            acc.append((v, u))
            yield from rec(rem & ~(1 << v) & ~(1 << u), acc)
            acc.pop()

    yield from rec(remaining, [])


def count_perfect_matchings(g: Graph, within: int | None = None) -> int:
    return sum(1 for _ in perfect_matchings(g, within))


def are_isomorphic(g: Graph, h: Graph, cap: int = ISOMORPHISM_CAP) -> bool:
    """Brute-force isomorphism test by backtracking over degree-compatible maps."""
    if g.n > cap or h.n > cap:
        raise ResourceLimitError(f"isomorphism test capped at n={cap}")
    if g.n != h.n or g.m != h.m:
        return False
    dg = [g.degree(v) for v in range(g.n)]
    dh = [h.degree(v) for v in range(h.n)]
    if sorted(dg) != sorted(dh):
        return False
    # most constrained vertices first
    order = sorted(range(g.n), key=lambda v: -dg[v])
    image = [-1] * g.n

    def extend(i: int, used: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        for w in range(h.n):
            if used >> w & 1 or dh[w] != dg[v]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if (g.adj[v] >> u & 1) != (h.adj[w] >> image[u] & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                if extend(i + 1, used | 1 << w):
                    return True
        image[v] = -1
        return False

    return extend(0, 0)


def disjoint_union(*graphs: Graph) -> Graph:
    edges: list[tuple[int, int]] = []
    labels: list[str | None] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        labels.extend(g.label(v) for v in range(g.n))
        offset += g.n
    has_labels = any(lab is not None for lab in labels)
    return Graph.from_edges(offset, edges, labels if has_labels else None)


# --- generators ------------------------------------------------------------


def path(n: int) -> Graph:
    if n < 0:
        raise GraphError("path order must be non-negative")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    labels = [f"x{i + 1}" for i in range(n)]
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], labels)


def star(k: int) -> Graph:
    """K_{1,k} with the hub at vertex 0."""
    if k < 0:
        raise GraphError("star needs k >= 0")
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)], ["hub"] + [None] * k)


def complete(n: int) -> Graph:
    if n < 0:
        raise GraphError("complete graph order must be non-negative")
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def empty(n: int) -> Graph:
    return Graph.from_edges(n, [])


def spider(*legs: int) -> Graph:
    """A centre (vertex 0) with one pendant path per entry of ``legs``."""
    if any(length < 1 for length in legs):
        raise GraphError("spider legs must have length >= 1")
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges, ["centre"] + [None] * (nxt - 1))


def double_star(a: int, b: int) -> Graph:
    """Adjacent centres 0 and 1 carrying ``a`` and ``b`` leaves."""
    if a < 0 or b < 0:
        raise GraphError("double star leaf counts must be non-negative")
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(a)]
    edges += [(1, 2 + a + i) for i in range(b)]
    n = 2 + a + b
    return Graph.from_edges(n, edges, ["c1", "c2"] + [None] * (a + b))


class _Builder:
    def __init__(self) -> None:
        self.labels: list[str | None] = []
        self.edges: list[tuple[int, int]] = []

    def add(self, label: str | None = None) -> int:
        self.labels.append(label)
        return len(self.labels) - 1

    def link(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def triangle_at(self, apex: int) -> None:
        a, b = self.add(), self.add()
        self.link(apex, a)
        self.link(apex, b)
        self.link(a, b)

    def build(self) -> Graph:
        return Graph.from_edges(len(self.labels), self.edges, self.labels)


def grst(r: int, s: int, t: int) -> Graph:
    """Path x1..xr, t-r+1 pendant triangles at x1, s-r+1 at x2, a leaf y_i at x_i (i >= 3)."""
    if not 2 <= r <= s <= t:
        raise GraphError("Grst needs 2 <= r <= s <= t")
    bld = _Builder()
    xs = [bld.add(f"x{i}") for i in range(1, r + 1)]
    for a, b in zip(xs, xs[1:]):
        bld.link(a, b)
    for _ in range(t - r + 1):
        bld.triangle_at(xs[0])
    for _ in range(s - r + 1):
        bld.triangle_at(xs[1])
    for i in range(2, r):
        y = bld.add(f"y{i + 1}")
        bld.link(xs[i], y)
    return bld.build()


def gt(t: int) -> Graph:
    """``t`` triangles sharing one vertex (the ``u`` landmark, vertex 0)."""
    if t < 1:
        raise GraphError("Gt needs t >= 1")
    bld = _Builder()
    centre = bld.add("u")
    for _ in range(t):
        bld.triangle_at(centre)
    return bld.build()


def xnm(n: int, m: int) -> Graph:
    """Adjacent hubs x1 (n pendant triangles) and x2 (m pendant triangles)."""
    if not 1 <= m <= n:
        raise GraphError("Xnm needs 1 <= m <= n")
    bld = _Builder()
    x1, x2 = bld.add("x1"), bld.add("x2")
    bld.link(x1, x2)
    for _ in range(n):
        bld.triangle_at(x1)
    for _ in range(m):
        bld.triangle_at(x2)
    return bld.build()


def yk(k: int) -> Graph:
    if k < 1:
        raise GraphError("Yk needs k >= 1")
    bld = _Builder()
    apex = bld.add("y")
    for _ in range(k):
        bld.triangle_at(apex)
    return bld.build()


def fig4() -> Graph:
    """Diamond on 0..3 (0-3 missing) with pendant ``u`` at 3."""
    return Graph.from_edges(
        5,
        [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)],
        [None, None, None, None, "u"],
    )


GENERATORS = {
    "path": path,
    "cycle": cycle,
    "star": star,
    "complete": complete,
    "empty": empty,
    "spider": spider,
    "double_star": double_star,
    "grst": grst,
    "gt": gt,
    "xnm": xnm,
    "yk": yk,
    "fig4": fig4,
}


def generate(family: str, *params: int) -> Graph:
    """Build a named family member, e.g. ``generate("grst", 2, 2, 3)``."""
    try:
        fn = GENERATORS[family.lower()]
    except KeyError:
        raise GraphError(f"unknown family {family!r}") from None
    try:
        return fn(*params)
    except TypeError as exc:
        raise GraphError(f"bad parameters for {family}: {params}") from exc


def parse_generator(spec: str) -> Graph:
    """Parse ``gen:family[:p1,p2,...]``."""
    parts = spec.split(":")
    if parts[0] != "gen" or len(parts) not in (2, 3) or not parts[1]:
        raise GraphError(f"bad generator spec {spec!r}")
    params: tuple[int, ...] = ()
    if len(parts) == 3 and parts[2]:
        try:
            params = tuple(int(p) for p in parts[2].split(","))
        except ValueError:
            raise GraphError(f"bad generator parameters in {spec!r}") from None
    return generate(parts[1], *params)


def tree_from_prufer(seq: Sequence[int]) -> Graph:
    """Decode a Prüfer sequence over ``0..len(seq)+1``."""
    n = len(seq) + 2
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = next(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = (x for x in range(n) if degree[x] == 1)
    edges.append((u, w))
    return Graph.from_edges(n, edges)


def labelled_trees(n: int) -> Iterator[Graph]:
    """Every labelled tree on ``n`` vertices, one per Prüfer sequence."""
    if n == 1:
        yield Graph.from_edges(1, [])
        return
    if n == 2:
        yield path(2)
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        yield tree_from_prufer(seq)


def unlabelled_trees(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of trees on ``n`` vertices."""
    if n == 1:
        yield Graph.from_edges(1, [])
        return
    for t in nx.nonisomorphic_trees(n):
        yield Graph.from_networkx(t)


def random_tree(n: int, rng: random.Random) -> Graph:
    if n <= 2:
        return path(n)
    return tree_from_prufer([rng.randrange(n) for _ in range(n - 2)])


def random_graph(n: int, rng: random.Random, p: float = 0.3, connected: bool = True) -> Graph:
    """G(n, p) sample; with ``connected`` a random spanning tree is laid first."""
    edges = set(random_tree(n, rng).edges()) if connected and n >= 2 else set()
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))
