"""Residual graphs: strip pendant P2's until none is left.

The stripped part is a forest with a unique perfect matching (the removed
pairs), which lets game values on ``G`` be read off the smaller residual.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .engine import GameValue, finite, gmb, gmb_prime
from .graph import Graph, bits, has_perfect_matching, mask_of


@dataclass(frozen=True)
class ResidualDecomposition:
    residual: Graph
    residual_vertices: tuple[int, ...]
    """Original index of each residual vertex."""
    removed_pairs: tuple[tuple[int, int], ...]
    """``(leaf, support)`` pairs in removal order, in original indices."""
    original_n: int

    @property
    def removed(self) -> int:
        return mask_of(v for pair in self.removed_pairs for v in pair)

    @property
    def h(self) -> int:
        return 2 * len(self.removed_pairs)

    def is_identity(self) -> bool:
        return not self.removed_pairs

    def to_residual(self, vertex_set: int) -> int:
        """Translate an original vertex set into residual indices (dropping H)."""
        return mask_of(i for i, v in enumerate(self.residual_vertices) if vertex_set >> v & 1)


def _candidates(g: Graph, alive: int) -> list[tuple[int, int]]:
    deg = {v: (g.adj[v] & alive).bit_count() for v in bits(alive)}
    found = []
    for x in bits(alive):
        if deg[x] != 1:
            continue
        y = (g.adj[x] & alive).bit_length() - 1
        if deg[y] == 2:
            found.append((x, y))
        elif deg[y] == 1 and x < y:
            # an isolated P2 disappears entirely
            found.append((x, y))
    return found


def residual_decompose(g: Graph, rng: random.Random | None = None) -> ResidualDecomposition:
    """Iteratively remove pendant P2's (lowest leaf first, or at random with ``rng``)."""
    alive = g.full
    pairs: list[tuple[int, int]] = []
    while True:
        cands = _candidates(g, alive)
        if not cands:
            break
        x, y = rng.choice(cands) if rng is not None else cands[0]
        pairs.append((x, y))
        alive &= ~((1 << x) | (1 << y))
    residual, keep = g.induced(bits(alive))
    return ResidualDecomposition(residual, tuple(keep), tuple(pairs), g.n)


def is_residual_fixpoint(g: Graph) -> bool:
    """True iff ``g`` is empty, K1, or every support vertex has degree >= 3."""
    if g.n <= 1:
        return True
    for v in range(g.n):
        if g.degree(v) == 1:
            support = g.adj[v].bit_length() - 1
            if g.degree(support) < 3:
                return False
    return True


def removed_forest(g: Graph, dec: ResidualDecomposition) -> tuple[Graph, list[int]]:
    return g.induced(bits(dec.removed))


@dataclass(frozen=True)
class ReducedValues:
    sgame_exact: GameValue
    dgame_low: GameValue
    dgame_high: GameValue
    decomposition: ResidualDecomposition


def reduce_and_solve(g: Graph, **solver_kwargs) -> ReducedValues:
    """S-game value and D-game bracket of ``g`` from its residual alone."""
    dec = residual_decompose(g)
    half = dec.h // 2
    r = dec.residual
    d_r = gmb(r, **solver_kwargs)
    s_r = gmb_prime(r, **solver_kwargs)
    high = d_r + half
    if d_r.finite:
        floor = max(half, 1) if g.n else 0
        low = finite(max(half + d_r.value - 1, floor))
    else:
        low = d_r
    return ReducedValues(s_r + half, low, high, dec)


def check_matching_transfer(g: Graph) -> bool:
    return has_perfect_matching(g) == has_perfect_matching(residual_decompose(g).residual)
