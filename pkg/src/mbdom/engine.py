"""Exact game-tree solver for the Maker-Breaker domination game.

A position is fully described by the vertices still free, the vertices
already dominated and the player to move: Staller's picks only matter by
being unavailable, Dominator's only through what they dominate. The value
of a position is the number of *additional* Dominator moves needed under
optimal play, so the memo key carries no history.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import total_ordering

from .graph import Graph, GraphError, ResourceLimitError, bits, domination_stats

SOLVER_CAP = 24
MEMO_CAP = 10_000_000

_INF = 1 << 30


@total_ordering
class GameValue:
    """A non-negative integer or infinity, with saturating addition."""

    __slots__ = ("_k",)

    def __init__(self, k: int | None) -> None:
        if k is not None and k < 0:
            raise ValueError("game values are non-negative")
        self._k = k

    @classmethod
    def parse(cls, text: str) -> GameValue:
        text = text.strip()
        return INF if text == "inf" else cls(int(text))

    @classmethod
    def _from_raw(cls, raw: int) -> GameValue:
        return INF if raw >= _INF else cls(raw)

    @property
    def finite(self) -> bool:
        return self._k is not None

    @property
    def value(self) -> int:
        if self._k is None:
            raise ValueError("infinite game value has no integer value")
        return self._k

    def _raw(self) -> int:
        return _INF if self._k is None else self._k

    def __add__(self, other: GameValue | int) -> GameValue:
        if isinstance(other, int):
            other = GameValue(other)
        if not isinstance(other, GameValue):
            return NotImplemented
        if self._k is None or other._k is None:
            return INF
        return GameValue(self._k + other._k)

    __radd__ = __add__

    def __sub__(self, other: int) -> GameValue:
        if not isinstance(other, int):
            return NotImplemented
        if self._k is None:
            return INF
        return GameValue(max(self._k - other, 0))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            return self._k == other
        if isinstance(other, GameValue):
            return self._k == other._k
        return NotImplemented

    def __lt__(self, other: GameValue | int) -> bool:
        if isinstance(other, int):
            other = GameValue(other)
        if not isinstance(other, GameValue):
            return NotImplemented
        return self._raw() < other._raw()

    def __hash__(self) -> int:
        return hash(self._k)

    def __str__(self) -> str:
        return "inf" if self._k is None else str(self._k)

    def __repr__(self) -> str:
        return "GameValue(inf)" if self._k is None else f"GameValue({self._k})"


INF = GameValue(None)


def finite(k: int) -> GameValue:
    return GameValue(k)


class Player(enum.Enum):
    DOMINATOR = "D"
    STALLER = "S"

    @property
    def other(self) -> Player:
        return Player.STALLER if self is Player.DOMINATOR else Player.DOMINATOR

    @classmethod
    def parse(cls, text: str) -> Player:
        key = text.strip().upper()[:1]
        if key not in ("D", "S"):
            raise ValueError(f"unknown player {text!r}")
        return cls(key)


@dataclass(frozen=True)
class GameConfig:
    graph: Graph
    first: Player = Player.DOMINATOR
    pre_dominated: int = 0
    staller_may_pass: bool = False
    dominator_may_pass: bool = False

    def __post_init__(self) -> None:
        if self.pre_dominated & ~self.graph.full:
            raise GraphError("pre-dominated set contains vertices outside the graph")

    def initial_state(self) -> GameState:
        return GameState(self.graph.full, self.pre_dominated & self.graph.full, self.first)


@dataclass(frozen=True)
class GameState:
    available: int
    dominated: int
    turn: Player
    # set when the previous action was a pass; a second pass would repeat the position
    after_pass: bool = False

    def play(self, graph: Graph, v: int) -> GameState:
        if not self.available >> v & 1:
            raise GraphError(f"vertex {v} is not available")
        dominated = self.dominated
        if self.turn is Player.DOMINATOR:
            dominated |= graph.closed(v)
        return GameState(self.available & ~(1 << v), dominated, self.turn.other)

    def skip(self) -> GameState:
        return GameState(self.available, self.dominated, self.turn.other, after_pass=True)


class Solver:
    """Memoized minimax over (available, dominated, turn) positions.

    One instance owns one memo table, bound to a graph and rule flags; the
    pre-dominated set only enters through the starting position, so positions
    of different ``G|S`` games share entries safely.
    """

    def __init__(
        self,
        graph: Graph,
        *,
        staller_may_pass: bool = False,
        dominator_may_pass: bool = False,
        memo: bool = True,
        max_entries: int = MEMO_CAP,
        cap: int = SOLVER_CAP,
        override_cap: bool = False,
    ) -> None:
        if graph.n > cap and not override_cap:
            raise ResourceLimitError(f"n={graph.n} exceeds solver cap {cap}; pass an override")
        self.graph = graph
        self.staller_may_pass = staller_may_pass
        self.dominator_may_pass = dominator_may_pass
        self.use_memo = memo
        self.max_entries = max_entries
        self.memo: dict[int, int] = {}
        self._closed = tuple(graph.closed(v) for v in range(graph.n))
        self._full = graph.full

    @classmethod
    def for_config(cls, config: GameConfig, **kwargs) -> Solver:
        return cls(
            config.graph,
            staller_may_pass=config.staller_may_pass,
            dominator_may_pass=config.dominator_may_pass,
            **kwargs,
        )

    def value(self, state: GameState) -> GameValue:
        raw = self._value(
            state.available, state.dominated, state.turn is Player.DOMINATOR, state.after_pass
        )
        return GameValue._from_raw(raw)

    def child_values(self, state: GameState) -> dict[int, GameValue]:
        """Value of the position after each available move of the player to move."""
        return {v: self.value(state.play(self.graph, v)) for v in bits(state.available)}

    def _store(self, key: int, val: int) -> int:
        if self.use_memo:
            if len(self.memo) >= self.max_entries:
                raise ResourceLimitError(f"memo table exceeded {self.max_entries} entries")
            self.memo[key] = val
        return val

    def _value(self, avail: int, dom: int, dom_turn: bool, after_pass: bool) -> int:
        full = self._full
        if dom == full:
            return 0
        key = (((avail << 64) | dom) << 2) | (dom_turn << 1) | after_pass
        if self.use_memo:
            hit = self.memo.get(key)
            if hit is not None:
                return hit
        closed = self._closed
        if not avail:
            return self._store(key, _INF)

        # a vertex whose closed neighbourhood Staller can exhaust is lost for good
        undominated = full & ~dom
        threat = 1 if dom_turn else 2
        for w in bits(undominated):
            if (closed[w] & avail).bit_count() < threat:
                return self._store(key, _INF)

        if dom_turn:
            for v in bits(avail):
                if dom | closed[v] == full:
                    return self._store(key, 1)
            best = _INF
            for v in bits(avail):
                val = self._value(avail & ~(1 << v), dom | closed[v], False, False)
                if val < _INF and val + 1 < best:
                    best = val + 1
                    if best == 2:
                        # no move finishes now, so 2 is the floor
                        break
            if self.dominator_may_pass and not after_pass:
                best = min(best, self._value(avail, dom, False, True))
            return self._store(key, best)

        best = 0
        for v in bits(avail):
            val = self._value(avail & ~(1 << v), dom, True, False)
            if val > best:
                best = val
                if best >= _INF:
                    return self._store(key, _INF)
        if self.staller_may_pass and not after_pass:
            best = max(best, self._value(avail, dom, True, True))
        return self._store(key, best)


def solve(config: GameConfig, **solver_kwargs) -> GameValue:
    """Optimal number of Dominator moves for ``config`` (``INF`` if Staller wins)."""
    if config.graph.n == 0 or config.pre_dominated & config.graph.full == config.graph.full:
        return finite(0)
    return Solver.for_config(config, **solver_kwargs).value(config.initial_state())


def gmb(graph: Graph, **solver_kwargs) -> GameValue:
    return solve(GameConfig(graph, Player.DOMINATOR), **solver_kwargs)


def gmb_prime(graph: Graph, **solver_kwargs) -> GameValue:
    return solve(GameConfig(graph, Player.STALLER), **solver_kwargs)


def optimal_move(
    config: GameConfig, state: GameState, solver: Solver | None = None
) -> int:
    """Lowest-indexed move achieving the optimal value for the player to move."""
    if not state.available:
        raise GraphError("no available vertex to move on")
    solver = solver or Solver.for_config(config)
    children = solver.child_values(state)
    pick = min if state.turn is Player.DOMINATOR else max
    target = pick(children.values())
    return next(v for v, val in children.items() if val == target)


@dataclass
class BoundsReport:
    n: int
    gamma: int
    gmb: GameValue
    gmb_prime: GameValue
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_basic_bounds(graph: Graph, **solver_kwargs) -> BoundsReport:
    """Check ``gamma <= gmb <= gmb'`` and the half-order bounds on one graph."""
    n = graph.n
    d = gmb(graph, **solver_kwargs)
    s = gmb_prime(graph, **solver_kwargs)
    gamma = domination_stats(graph).gamma if n else 0
    problems = []
    if n >= 1 and d.finite and not 1 <= d.value <= (n + 1) // 2:
        problems.append(f"gmb={d} outside [1, ceil(n/2)={(n + 1) // 2}]")
    if n >= 1 and s.finite and not 1 <= s.value <= n // 2:
        problems.append(f"gmb'={s} outside [1, floor(n/2)={n // 2}]")
    if d < gamma:
        problems.append(f"gmb={d} below gamma={gamma}")
    if s < d:
        problems.append(f"gmb'={s} below gmb={d}")
    return BoundsReport(n, gamma, d, s, problems)
