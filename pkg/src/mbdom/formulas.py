"""Closed forms and sufficient criteria for the Maker-Breaker domination numbers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .engine import INF, GameValue, finite
from .graph import Graph, GraphError, ResourceLimitError, gamma_sets
from .residual import residual_decompose

MATCHING_CAP = 18


class InvalidPairingError(GraphError):
    pass


@dataclass(frozen=True)
class Pairing:
    pairs: tuple[tuple[int, int], ...]
    is_matching: bool = False

    @classmethod
    def of(cls, g: Graph, pairs: Iterable[tuple[int, int]]) -> Pairing:
        pairs = tuple((int(u), int(v)) for u, v in pairs)
        seen: set[int] = set()
        for u, v in pairs:
            if not (0 <= u < g.n and 0 <= v < g.n):
                raise InvalidPairingError(f"pair ({u}, {v}) outside the graph")
            if u == v or u in seen or v in seen:
                raise InvalidPairingError(f"pair ({u}, {v}) overlaps another pair")
            seen.update((u, v))
        return cls(pairs, all(g.adj[u] >> v & 1 for u, v in pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def partner(self, v: int) -> int | None:
        for a, b in self.pairs:
            if v == a:
                return b
            if v == b:
                return a
        return None


def pairing_check(g: Graph, x: Pairing) -> bool:
    """True iff the common closed neighbourhoods of the pairs cover V(G)."""
    used = 0
    cover = 0
    for u, v in x.pairs:
        if u == v or used >> u & 1 or used >> v & 1:
            raise InvalidPairingError(f"pair ({u}, {v}) overlaps another pair")
        used |= (1 << u) | (1 << v)
        cover |= g.closed(u) & g.closed(v)
    if used & ~g.full:
        raise InvalidPairingError("pairing uses vertices outside the graph")
    return cover == g.full


def find_dominating_matching(g: Graph, cap: int = MATCHING_CAP) -> Pairing | None:
    """The lexicographically least dominating matching, or None.

    Matchings are compared as sorted tuples of sorted edges, so edges are
    added in increasing order and the first dominating prefix found wins.
    A branch is cut when some undominated vertex can no longer be covered
    by any later edge disjoint from the ones already chosen.
    """
    if g.n > cap:
        raise ResourceLimitError(f"n={g.n} exceeds dominating-matching cap {cap}")
    if g.n == 0:
        return None
    full = g.full
    edges = g.edges()
    ends = [(1 << u) | (1 << v) for u, v in edges]
    common = [g.closed(u) & g.closed(v) for u, v in edges]
    dead: set[tuple[int, int, int]] = set()
    chosen: list[int] = []

    def coverable(start: int, used: int, covered: int) -> bool:
        reach = covered
        for i in range(start, len(edges)):
            if not ends[i] & used:
                reach |= common[i]
        return reach == full

    def rec(start: int, used: int, covered: int) -> bool:
        if covered == full:
            return True
        key = (start, used, covered)
        if key in dead or not coverable(start, used, covered):
            return False
        for i in range(start, len(edges)):
            if ends[i] & used or not common[i] & ~covered:
                continue
            chosen.append(i)
            if rec(i + 1, used | ends[i], covered | common[i]):
                return True
            chosen.pop()
        dead.add(key)
        return False

    if not rec(0, 0, 0):
        return None
    return Pairing(tuple(edges[i] for i in chosen), True)


def _is_star_with_k_leaves(g: Graph) -> int | None:
    """Leaf count ``k`` if ``g`` is K_{1,k} (k >= 1), else None."""
    if g.n < 2 or g.m != g.n - 1:
        return None
    hubs = [v for v in range(g.n) if g.degree(v) == g.n - 1]
    if not hubs:
        return None
    hub = hubs[0]
    if all(g.degree(v) == 1 for v in range(g.n) if v != hub):
        return g.n - 1
    return None


def tree_values(t: Graph) -> tuple[GameValue, GameValue]:
    """``(gmb, gmb')`` of a tree from its residual."""
    if not t.is_tree():
        raise GraphError("input is not a tree")
    n = t.n
    if n == 1:
        # Dominator simply takes the vertex; the K1-residual case of the formula needs n >= 3
        return finite(1), INF
    r = residual_decompose(t).residual
    if r.n == 0:
        return finite(n // 2), finite(n // 2)
    if r.n == 1:
        return finite((n - 1) // 2), INF
    k = _is_star_with_k_leaves(r)
    if k is not None and k >= 3:
        return finite((n - k + 1) // 2), INF
    return INF, INF


def cycle_values(n: int) -> tuple[GameValue, GameValue]:
    if n < 3:
        raise GraphError("cycles need n >= 3")
    return finite(n // 2), finite(n // 2)


@dataclass(frozen=True)
class UnionBounds:
    d_low: GameValue
    d_high: GameValue
    s_low: GameValue
    s_high: GameValue

    def brackets(self, d: GameValue, s: GameValue) -> bool:
        return self.d_low <= d <= self.d_high and self.s_low <= s <= self.s_high


def union_bounds(
    gd_g: GameValue, gs_g: GameValue, gd_h: GameValue, gs_h: GameValue
) -> UnionBounds:
    """Bounds on the D- and S-game values of a disjoint union from its parts."""
    return UnionBounds(
        d_low=gd_g + gd_h,
        d_high=min(gs_g + gd_h, gd_g + gs_h),
        s_low=max(gs_g + gd_h, gd_g + gs_h),
        s_high=gs_g + gs_h,
    )


def gamma2_witness(g: Graph) -> int | None:
    """Lowest vertex lying in at least two gamma-sets of a graph with gamma = 2."""
    gamma, sets = gamma_sets(g)
    if gamma != 2:
        raise ValueError(f"gamma2_witness needs gamma = 2, got {gamma}")
    for v in range(g.n):
        if sum(1 for s in sets if s >> v & 1) >= 2:
            return v
    return None


def erdos_selfridge_check(g: Graph) -> bool:
    """Whether the gamma-set hypergraph is a Breaker win by the weight criterion.

    When true, Dominator cannot finish in gamma moves, i.e. ``gmb > gamma``.
    """
    gamma, sets = gamma_sets(g)
    return len(sets) < 2 ** (gamma - 1) if gamma >= 1 else False
