"""Playable strategies and a referee that records complete games."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .engine import GameConfig, GameState, Player, Solver, optimal_move
from .formulas import Pairing, pairing_check
from .graph import Graph, GraphError, bits, has_perfect_matching

Move = tuple[Player, int]


class Strategy:
    """Chooses a move from ``(config, state, history)``.

    ``fallbacks`` counts the turns on which a scripted strategy could not
    follow its script and deferred to the exact solver instead.
    """

    name = "strategy"

    def __init__(self) -> None:
        self.fallbacks = 0
        self._solver: Solver | None = None
        self._solver_key: GameConfig | None = None

    def next_move(self, config: GameConfig, state: GameState, history: Sequence[Move]) -> int:
        raise NotImplementedError

    def _optimal(self, config: GameConfig, state: GameState) -> int:
        if self._solver is None or self._solver_key != config:
            self._solver = Solver.for_config(config)
            self._solver_key = config
        return optimal_move(config, state, self._solver)

    def _fallback(self, config: GameConfig, state: GameState) -> int:
        self.fallbacks += 1
        return self._optimal(config, state)


class OptimalStrategy(Strategy):
    name = "optimal"

    def next_move(self, config, state, history):
        return self._optimal(config, state)


class RandomStrategy(Strategy):
    """Uniformly random legal moves, reproducible from the seed and history."""

    name = "random"

    def __init__(self, seed: int = 0) -> None:
        super().__init__()
        self.seed = seed

    def next_move(self, config, state, history):
        trace = ",".join(f"{p.value}{v}" for p, v in history)
        rng = random.Random(f"{self.seed}:{trace}")
        return rng.choice(list(bits(state.available)))


class FirstAvailableStrategy(Strategy):
    name = "first"

    def next_move(self, config, state, history):
        return (state.available & -state.available).bit_length() - 1


class PairingDominatorStrategy(Strategy):
    """Answer Staller inside her pair; otherwise open the lowest untouched pair."""

    name = "pairing"

    def __init__(self, pairing: Pairing) -> None:
        super().__init__()
        self.pairing = pairing

    def next_move(self, config, state, history):
        if not pairing_check(config.graph, self.pairing):
            raise GraphError("pairing is not a pairing dominating set of this graph")
        mine = {v for p, v in history if p is Player.DOMINATOR}
        if history and history[-1][0] is Player.STALLER:
            hit = history[-1][1]
            partner = self.pairing.partner(hit)
            if partner is not None and hit not in mine and partner not in mine:
                if state.available >> partner & 1:
                    return partner
        for u, v in self.pairing.pairs:
            if u in mine or v in mine:
                continue
            for w in sorted((u, v)):
                if state.available >> w & 1:
                    return w
        return (state.available & -state.available).bit_length() - 1


def _bfs_depths(g: Graph, alive: int, root: int) -> dict[int, int]:
    depth = {root: 0}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in bits(g.adj[v] & alive):
            if u not in depth:
                depth[u] = depth[v] + 1
                queue.append(u)
    return depth


def staller_tree_plan(t: Graph, target: int) -> list[tuple[int, int]]:
    """Staller's scripted ``(move, forced Dominator reply)`` pairs on a tree.

    Each step peels a deepest leaf ``x`` and its degree-2 neighbour ``y``.
    Staller takes ``y`` forcing ``x`` unless the target is in ``{x, y}``,
    in which case that pair is postponed to the very end with the target
    of the remaining tree moved to ``y``'s other neighbour.
    """

    def plan(alive: int, v: int) -> list[tuple[int, int]]:
        if alive.bit_count() == 2:
            a, b = bits(alive)
            return [(v, b if v == a else a)]
        root = (alive & -alive).bit_length() - 1
        depth = _bfs_depths(t, alive, root)
        deepest = max(depth.values())
        x = min(u for u, d in depth.items() if d == deepest)
        y = (t.adj[x] & alive).bit_length() - 1
        rest = alive & ~((1 << x) | (1 << y))
        if v not in (x, y):
            return [(y, x)] + plan(rest, v)
        z = (t.adj[y] & rest).bit_length() - 1
        return plan(rest, z) + [(v, y if v == x else x)]

    return plan(t.full, target)


class StallerTreeStrategy(Strategy):
    """S-game Staller on a perfectly matchable tree, finishing on ``target``."""

    name = "tree"

    def __init__(self, tree: Graph, target: int) -> None:
        super().__init__()
        if not tree.is_tree() or not has_perfect_matching(tree):
            raise GraphError("tree strategy needs a tree with a perfect matching")
        if not 0 <= target < tree.n:
            raise GraphError(f"target {target} not in the tree")
        self.tree = tree
        self.target = target
        self.plan = staller_tree_plan(tree, target)

    def next_move(self, config, state, history):
        if config.first is not Player.STALLER:
            raise GraphError("tree strategy is an S-game strategy")
        mine = [v for p, v in history if p is Player.STALLER]
        replies = [v for p, v in history if p is Player.DOMINATOR]
        for i, (_, forced) in enumerate(self.plan[: len(replies)]):
            if replies[i] != forced:
                # Dominator ignored the threat: taking the forced vertex isolates its leaf
                if state.available >> forced & 1:
                    return forced
                return self._fallback(config, state)
        if len(mine) < len(self.plan):
            move = self.plan[len(mine)][0]
            if state.available >> move & 1:
                return move
        return self._fallback(config, state)


class StallerCycleStrategy(Strategy):
    """Staller on C_n (vertex ``i`` adjacent to ``i +- 1``).

    S-game: open on 0, then step two vertices at a time away from
    Dominator's first reply. D-game: answer three vertices ahead of
    Dominator's newest move; once he fills the gap behind, switch to the
    every-second-vertex chain.
    """

    name = "cycle"

    def __init__(self, n: int, first: Player) -> None:
        super().__init__()
        if n < 3:
            raise GraphError("cycle strategy needs n >= 3")
        self.n = n
        self.first = first

    def next_move(self, config, state, history):
        move = self._scripted(history)
        if move is not None and state.available >> move & 1:
            return move
        return self._fallback(config, state)

    def _scripted(self, history: Sequence[Move]) -> int | None:
        n = self.n
        sta = [v for p, v in history if p is Player.STALLER]
        dom = [v for p, v in history if p is Player.DOMINATOR]
        if self.first is Player.STALLER:
            if not sta:
                return 0
            if dom[0] == n - 1:
                step = 1
            elif dom[0] == 1:
                step = -1
            else:
                return None
            for j in range(1, len(sta)):
                if sta[j] != (2 * j * step) % n or dom[j] != ((2 * j - 1) * step) % n:
                    return None
            return (2 * len(sta) * step) % n

        anchor = dom[0]
        chain = False
        last = None
        for j, s in enumerate(sta):
            reply = dom[j + 1] if j + 1 < len(dom) else None
            if reply is None:
                return None
            if chain:
                if reply != (s - 1) % n:
                    return None
            elif reply == (anchor + 4) % n:
                anchor = reply
            elif reply == (anchor + 2) % n:
                chain = True
            else:
                return None
            last = s
        if chain:
            return (last + 2) % n
        return (anchor + 3) % n


@dataclass
class GameRecord:
    moves: list[Move]
    winner: Player
    dominator_moves: int | None
    final_dominated: int
    forfeit: Player | None = None
    diagnostic: str | None = None
    fallbacks: dict[str, int] = field(default_factory=dict)

    def to_text(self) -> str:
        lines = [f"{p.value} {v}" for p, v in self.moves]
        if self.forfeit is not None:
            lines.append(f"# forfeit {self.forfeit.value}: {self.diagnostic}")
        for who, count in self.fallbacks.items():
            if count:
                lines.append(f"# fallback {who} {count}")
        if self.winner is Player.DOMINATOR:
            lines.append(f"WINNER D {self.dominator_moves}")
        else:
            lines.append("WINNER S")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, graph: Graph) -> GameRecord:
        """Parse ``to_text`` output; ``final_dominated`` is recomputed from the moves."""
        moves: list[Move] = []
        winner = None
        count = None
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if parts[0] == "WINNER":
                winner = Player(parts[1])
                count = int(parts[2]) if len(parts) > 2 else None
            else:
                moves.append((Player(parts[0]), int(parts[1])))
        if winner is None:
            raise ValueError("record has no WINNER line")
        dominated = 0
        for p, v in moves:
            if p is Player.DOMINATOR:
                dominated |= graph.closed(v)
        return cls(moves, winner, count, dominated)


def simulate(config: GameConfig, dom: Strategy, sta: Strategy) -> GameRecord:
    """Referee one game; an illegal move forfeits the game for its author."""
    g = config.graph
    state = config.initial_state()
    moves: list[Move] = []
    count = 0

    def record(winner: Player, **extra) -> GameRecord:
        return GameRecord(
            moves,
            winner,
            count if winner is Player.DOMINATOR else None,
            state.dominated,
            fallbacks={"dom": dom.fallbacks, "sta": sta.fallbacks},
            **extra,
        )

    while True:
        if state.dominated == g.full:
            return record(Player.DOMINATOR)
        if not state.available:
            return record(Player.STALLER)
        player = state.turn
        strategy = dom if player is Player.DOMINATOR else sta
        v = strategy.next_move(config, state, tuple(moves))
        if not isinstance(v, int) or not 0 <= v < g.n or not state.available >> v & 1:
            return record(
                player.other,
                forfeit=player,
                diagnostic=f"{strategy.name} chose unavailable vertex {v!r}",
            )
        moves.append((player, v))
        if player is Player.DOMINATOR:
            count += 1
        state = state.play(g, v)


def replay(config: GameConfig, moves: Sequence[Move]) -> tuple[Player, int | None]:
    """Re-referee a move list: ``(winner, dominator move count)``."""
    g = config.graph
    state = config.initial_state()
    count = 0
    if state.dominated == g.full:
        return Player.DOMINATOR, 0
    for player, v in moves:
        if player is not state.turn:
            raise GraphError(f"move {v} played out of turn")
        state = state.play(g, v)
        if player is Player.DOMINATOR:
            count += 1
            if state.dominated == g.full:
                return Player.DOMINATOR, count
    return Player.STALLER, None


def pairing_dominator_strategy(pairing: Pairing) -> PairingDominatorStrategy:
    return PairingDominatorStrategy(pairing)


def staller_tree_strategy(tree: Graph, target: int) -> StallerTreeStrategy:
    return StallerTreeStrategy(tree, target)


def staller_cycle_strategy(n: int, first: Player) -> StallerCycleStrategy:
    return StallerCycleStrategy(n, first)


def optimal_strategy(config: GameConfig) -> OptimalStrategy:
    # the config is bound lazily on first use, so one instance fits any config
    return OptimalStrategy()
