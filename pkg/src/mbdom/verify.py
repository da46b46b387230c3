"""Property suites cross-checking closed forms, lemmas and strategies against the solver.

Each check returns a :class:`Check` carrying the instance count and any
counterexamples (with the offending graph as an edge list), so the same
code backs the CLI ``verify`` command and the acceptance tests.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .engine import (
    GameConfig,
    Player,
    Solver,
    finite,
    gmb,
    gmb_prime,
    solve,
    verify_basic_bounds,
)
from .formulas import (
    Pairing,
    cycle_values,
    erdos_selfridge_check,
    find_dominating_matching,
    gamma2_witness,
    pairing_check,
    tree_values,
    union_bounds,
)
from .graph import (
    Graph,
    are_isomorphic,
    count_perfect_matchings,
    cycle,
    disjoint_union,
    domination_stats,
    gamma_sets,
    has_perfect_matching,
    is_dominating,
    labelled_trees,
    random_graph,
    unlabelled_trees,
    xnm,
    yk,
)
from .residual import (
    check_matching_transfer,
    is_residual_fixpoint,
    reduce_and_solve,
    residual_decompose,
)
from .strategies import (
    OptimalStrategy,
    RandomStrategy,
    StallerCycleStrategy,
    StallerTreeStrategy,
    pairing_dominator_strategy,
    replay,
    simulate,
)


@dataclass
class Check:
    name: str
    instances: int = 0
    failures: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    slowest: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures and self.instances > 0

    def fail(self, message: str, graph: Graph | None = None) -> None:
        if graph is not None:
            message += "\n" + graph.to_edge_list().rstrip()
        self.failures.append(message)

    def summary(self) -> str:
        status = "pass" if self.ok else "fail"
        return f"check={self.name} instances={self.instances} failures={len(self.failures)} status={status}"


def _timed(fn: Callable[[Check], None], name: str) -> Check:
    chk = Check(name)
    start = time.perf_counter()
    fn(chk)
    chk.elapsed = time.perf_counter() - start
    return chk


def all_trees(max_n: int, labelled_up_to: int = 0) -> Iterator[Graph]:
    """Every tree up to ``max_n`` vertices (all labellings for small orders)."""
    for n in range(1, max_n + 1):
        yield from labelled_trees(n) if n <= labelled_up_to else unlabelled_trees(n)


def random_pool(
    seed: int, count: int, n_min: int, n_max: int, connected: bool = True
) -> list[Graph]:
    rng = random.Random(seed)
    pool = []
    for _ in range(count):
        n = rng.randint(n_min, n_max)
        p = rng.choice((0.1, 0.2, 0.3, 0.45, 0.6))
        pool.append(random_graph(n, rng, p, connected))
    return pool


def named_pool() -> list[Graph]:
    from .graph import complete, double_star, fig4, grst, gt, path, spider, star

    return [
        path(2), path(3), path(4), path(5), path(6), path(7),
        cycle(4), cycle(5), cycle(6), cycle(7), cycle(8),
        star(3), star(4), complete(3), complete(4), double_star(2, 2), double_star(1, 2),
        spider(2, 2, 2), spider(1, 2, 2), fig4(), gt(1), gt(2), gt(3),
        grst(2, 2, 2), grst(2, 2, 3), xnm(1, 1), xnm(2, 1), yk(1), yk(2), yk(3),
        disjoint_union(Graph.from_edges(1, []), path(2), path(2)),
    ]  # fmt: skip


# --- closed forms ----------------------------------------------------------


def check_cycles(max_n: int = 14) -> Check:
    def run(chk: Check) -> None:
        for n in range(3, max_n + 1):
            g = cycle(n)
            start = time.perf_counter()
            got = (gmb(g), gmb_prime(g))
            chk.slowest = max(chk.slowest, time.perf_counter() - start)
            chk.instances += 1
            if got != cycle_values(n) or got != (finite(n // 2), finite(n // 2)):
                chk.fail(f"C{n}: solver {got[0]}/{got[1]} vs {n // 2}", g)

    return _timed(run, "cycles")


def check_trees(max_n: int = 11, labelled_up_to: int = 7) -> Check:
    def run(chk: Check) -> None:
        for t in all_trees(max_n, labelled_up_to):
            start = time.perf_counter()
            got = (gmb(t), gmb_prime(t))
            chk.slowest = max(chk.slowest, time.perf_counter() - start)
            chk.instances += 1
            want = tree_values(t)
            if got != want:
                chk.fail(f"tree n={t.n}: formula {want[0]}/{want[1]} solver {got[0]}/{got[1]}", t)

    return _timed(run, "trees")


def check_bounds(graphs: Iterable[Graph]) -> Check:
    def run(chk: Check) -> None:
        for g in graphs:
            rep = verify_basic_bounds(g)
            chk.instances += 1
            if not rep.ok:
                chk.fail("; ".join(rep.violations), g)

    return _timed(run, "bounds")


# --- residual graphs ----------------------------------------------------------


def check_residual_theorem(graphs: Iterable[Graph]) -> Check:
    def run(chk: Check) -> None:
        for g in graphs:
            red = reduce_and_solve(g)
            d, s = gmb(g), gmb_prime(g)
            chk.instances += 1
            if s != red.sgame_exact:
                chk.fail(f"S-game {s} != reduced {red.sgame_exact}", g)
            if not red.dgame_low <= d <= red.dgame_high:
                chk.fail(f"D-game {d} outside [{red.dgame_low}, {red.dgame_high}]", g)

    return _timed(run, "residual-theorem")


def check_residual_structure(graphs: Iterable[Graph], orders: int = 20, seed: int = 0) -> Check:
    """Uniqueness under random removal orders, H's unique matching, fixpoint, matching transfer."""
    rng = random.Random(seed)

    def run(chk: Check) -> None:
        for g in graphs:
            chk.instances += 1
            base = residual_decompose(g)
            r = base.residual
            if not is_residual_fixpoint(r):
                chk.fail("residual is not a fixpoint", g)
            if not residual_decompose(r).is_identity():
                chk.fail("reducing the residual again removed vertices", g)
            forest, _ = g.induced(v for pair in base.removed_pairs for v in pair)
            if forest.n and (forest.m != forest.n - _components(forest)):
                chk.fail("removed part is not a forest", g)
            if forest.n <= 12 and count_perfect_matchings(g, base.removed) != 1:
                chk.fail("removed pairs are not the unique perfect matching of H", g)
            for u, v in base.removed_pairs:
                if not g.adj[u] >> v & 1:
                    chk.fail(f"removed pair ({u}, {v}) is not an edge", g)
            if not check_matching_transfer(g):
                chk.fail("perfect matching does not transfer to the residual", g)
            if r.n <= 12:
                for _ in range(orders):
                    other = residual_decompose(g, rng).residual
                    if not are_isomorphic(r, other):
                        chk.fail("removal order changed the residual", g)
                        break

    return _timed(run, "residual-structure")


def _components(g: Graph) -> int:
    seen = 0
    count = 0
    for v in range(g.n):
        if seen >> v & 1:
            continue
        count += 1
        frontier = 1 << v
        seen |= frontier
        while frontier:
            nxt = 0
            for u in range(g.n):
                if frontier >> u & 1:
                    nxt |= g.adj[u]
            frontier = nxt & ~seen
            seen |= frontier
    return count


# --- unions -----------------------------------------------------------------


def check_union(pairs: int = 30, max_n: int = 7, seed: int = 0) -> Check:
    rng = random.Random(seed)

    def run(chk: Check) -> None:
        for _ in range(pairs):
            g = random_graph(rng.randint(2, max_n), rng, rng.choice((0.2, 0.4, 0.6)))
            h = random_graph(rng.randint(2, max_n), rng, rng.choice((0.2, 0.4, 0.6)))
            b = union_bounds(gmb(g), gmb_prime(g), gmb(h), gmb_prime(h))
            u = disjoint_union(g, h)
            d, s = gmb(u), gmb_prime(u)
            chk.instances += 1
            if not b.brackets(d, s):
                chk.fail(f"union values {d}/{s} outside {b}", u)
        y = disjoint_union(yk(2), yk(3))
        chk.instances += 1
        if (gmb(y), gmb_prime(y)) != (finite(3), finite(4)):
            chk.fail("Y2 u Y3 values differ from 3/4", y)
        x = disjoint_union(xnm(2, 1), yk(1))
        chk.instances += 1
        if (gmb(x), gmb_prime(x)) != (finite(3), finite(4)):
            chk.fail("X21 u Y1 values differ from 3/4", x)

    return _timed(run, "union")


# --- lemmas -------------------------------------------------------------------


def check_continuation(graphs: Iterable[Graph], seed: int = 0) -> Check:
    rng = random.Random(seed)

    def run(chk: Check) -> None:
        for g in graphs:
            a = sum(1 << v for v in range(g.n) if rng.random() < 0.4)
            b = sum(1 << v for v in range(g.n) if a >> v & 1 and rng.random() < 0.5)
            for first in Player:
                solver = Solver(g)
                va = solver.value(GameConfig(g, first, a).initial_state())
                vb = solver.value(GameConfig(g, first, b).initial_state())
                chk.instances += 1
                if not va <= vb:
                    chk.fail(f"{first.value}-game: G|A={va} > G|B={vb} (A={a:#x}, B={b:#x})", g)

    return _timed(run, "continuation")


def check_no_skip(graphs: Iterable[Graph]) -> Check:
    flags = ((True, False), (False, True), (True, True))

    def run(chk: Check) -> None:
        for g in graphs:
            for first in Player:
                base = solve(GameConfig(g, first))
                for s_pass, d_pass in flags:
                    chk.instances += 1
                    cfg = GameConfig(g, first, staller_may_pass=s_pass, dominator_may_pass=d_pass)
                    got = solve(cfg)
                    if got != base:
                        chk.fail(f"{first.value}-game pass(s={s_pass}, d={d_pass}) {got} != {base}", g)

    return _timed(run, "no-skip")


def check_memo_soundness(graphs: Iterable[Graph]) -> Check:
    def run(chk: Check) -> None:
        for g in graphs:
            for first in Player:
                cfg = GameConfig(g, first)
                a, b, c = solve(cfg), solve(cfg), solve(cfg, memo=False)
                chk.instances += 1
                if not a == b == c:
                    chk.fail(f"{first.value}-game memo {a}/{b} vs plain {c}", g)

    return _timed(run, "memo-soundness")


def random_pairing(g: Graph, k: int, rng: random.Random, edges_only: bool = False) -> Pairing:
    if edges_only:
        pairs: list[tuple[int, int]] = []
        used: set[int] = set()
        for u, v in rng.sample(g.edges(), len(g.edges())):
            if u not in used and v not in used:
                pairs.append((u, v))
                used.update((u, v))
            if len(pairs) == k:
                break
        return Pairing.of(g, pairs)
    verts = rng.sample(range(g.n), 2 * k)
    return Pairing.of(g, zip(verts[::2], verts[1::2]))


def selections_dominate(g: Graph, x: Pairing) -> bool:
    """Oracle: all 2^k one-per-pair selections are dominating sets."""
    for choice in itertools.product(*x.pairs):
        if not is_dominating(g, sum(1 << v for v in choice)):
            return False
    return True


def check_pairing_equivalence(count: int = 60, seed: int = 0) -> Check:
    rng = random.Random(seed)

    def run(chk: Check) -> None:
        for _ in range(count):
            k = rng.randint(1, 10)
            n = rng.randint(2 * k, min(2 * k + 6, 24))
            g = random_graph(n, rng, rng.choice((0.3, 0.6, 0.85)))
            x = random_pairing(g, k, rng, edges_only=rng.random() < 0.5 and g.m >= k)
            chk.instances += 1
            if pairing_check(g, x) != selections_dominate(g, x):
                chk.fail(f"pairing {x.pairs} disagrees with brute force", g)

    return _timed(run, "pairing-equivalence")


def check_matching_win(graphs: Iterable[Graph]) -> Check:
    def run(chk: Check) -> None:
        for g in graphs:
            x = find_dominating_matching(g)
            if x is None:
                continue
            chk.instances += 1
            if not pairing_check(g, x):
                chk.fail("returned matching does not dominate", g)
            d, s = gmb(g), gmb_prime(g)
            if not (d <= len(x) and s <= len(x)):
                chk.fail(f"values {d}/{s} exceed |X|={len(x)}", g)

    return _timed(run, "matching-win")


def check_gamma2(graphs: Iterable[Graph]) -> Check:
    def run(chk: Check) -> None:
        for g in graphs:
            if g.n == 0 or domination_stats(g).gamma != 2:
                continue
            chk.instances += 1
            if (gamma2_witness(g) is not None) != (gmb(g) == finite(2)):
                chk.fail(f"witness={gamma2_witness(g)} but gmb={gmb(g)}", g)

    return _timed(run, "gamma2")


def check_erdos_selfridge(graphs: Iterable[Graph]) -> Check:
    def run(chk: Check) -> None:
        for g in graphs:
            if g.n == 0:
                continue
            chk.instances += 1
            gamma = gamma_sets(g)[0]
            if erdos_selfridge_check(g) and not gmb(g) > finite(gamma):
                chk.fail(f"criterion holds but gmb={gmb(g)} <= gamma={gamma}", g)

    return _timed(run, "erdos-selfridge")


def check_monotone_play(graphs: Iterable[Graph], seed: int = 0) -> Check:
    def run(chk: Check) -> None:
        for i, g in enumerate(graphs):
            for first in Player:
                cfg = GameConfig(g, first)
                rec = simulate(cfg, RandomStrategy(seed + i), RandomStrategy(seed - i - 1))
                chk.instances += 1
                state = cfg.initial_state()
                for _, v in rec.moves:
                    nxt = state.play(g, v)
                    if nxt.dominated & state.dominated != state.dominated:
                        chk.fail("dominated set shrank", g)
                    state = nxt
                if replay(cfg, rec.moves) != (rec.winner, rec.dominator_moves):
                    chk.fail("replaying the record changed the outcome", g)

    return _timed(run, "monotone-play")


# --- strategies ---------------------------------------------------------------


def check_tree_strategy(max_n: int = 12) -> Check:
    def run(chk: Check) -> None:
        for n in range(2, max_n + 1, 2):
            for t in unlabelled_trees(n):
                if not has_perfect_matching(t):
                    continue
                for v in range(n):
                    sta = StallerTreeStrategy(t, v)
                    rec = simulate(GameConfig(t, Player.STALLER), OptimalStrategy(), sta)
                    chk.instances += 1
                    last = [u for p, u in rec.moves if p is Player.STALLER][-1]
                    if rec.dominator_moves != n // 2 or last != v:
                        chk.fail(f"target {v}: {rec.dominator_moves} moves, last Staller move {last}", t)

    return _timed(run, "tree-strategy")


def check_cycle_strategy(max_n: int = 14) -> Check:
    def run(chk: Check) -> None:
        for first in Player:
            for n in range(3, max_n + 1):
                sta = StallerCycleStrategy(n, first)
                rec = simulate(GameConfig(cycle(n), first), OptimalStrategy(), sta)
                chk.instances += 1
                if rec.dominator_moves != n // 2 or sta.fallbacks:
                    chk.fail(
                        f"{first.value}-game C{n}: {rec.dominator_moves} moves, "
                        f"{sta.fallbacks} scripted moves missed",
                        cycle(n),
                    )

    return _timed(run, "cycle-strategy")


def check_pairing_strategy(graphs: Iterable[Graph], opponents: int = 200, seed: int = 0) -> Check:
    """Pairing Dominator against optimal and random Stallers, for the least
    dominating matching and for random pairings that pass ``pairing_check``."""

    def play(chk: Check, g: Graph, x: Pairing) -> None:
        for first in Player:
            cfg = GameConfig(g, first)
            stallers = [OptimalStrategy()] + [RandomStrategy(seed + j) for j in range(opponents)]
            for sta in stallers:
                rec = simulate(cfg, pairing_dominator_strategy(x), sta)
                chk.instances += 1
                if rec.winner is not Player.DOMINATOR or rec.dominator_moves > len(x):
                    chk.fail(f"{first.value}-game vs {sta.name}: {rec.to_text().split()[-3:]}", g)
                    break

    def run(chk: Check) -> None:
        rng = random.Random(seed)
        for g in graphs:
            pairings = [find_dominating_matching(g)]
            if g.n >= 2:
                pairings += [random_pairing(g, g.n // 2, rng, edges_only=j % 2 == 0) for j in range(4)]
            for x in pairings:
                if x is not None and pairing_check(g, x):
                    play(chk, g, x)

    return _timed(run, "pairing-strategy")


# --- suites -------------------------------------------------------------------

SUITES = ("bounds", "trees", "cycles", "residual", "union", "lemmas", "strategies")


def run_suite(name: str, max_n: int | None = None, seed: int = 0) -> list[Check]:
    if name == "cycles":
        return [check_cycles(max_n or 14)]
    if name == "trees":
        return [check_trees(max_n or 11)]
    if name == "bounds":
        pool = named_pool() + random_pool(seed, 50, 1, max_n or 10, connected=False)
        return [check_bounds(pool)]
    if name == "residual":
        trees = list(all_trees(min(max_n or 11, 11)))
        graphs = random_pool(seed, 50, 4, min(max_n or 12, 12))
        return [
            check_residual_theorem(trees + graphs),
            check_residual_structure([t for t in trees if t.n <= 10] + graphs, seed=seed),
        ]
    if name == "union":
        return [check_union(seed=seed)]
    if name == "lemmas":
        cap = max_n or 10
        pool = random_pool(seed, 50, 3, cap)
        small = random_pool(seed + 1, 50, 3, min(cap, 10))
        trees = list(all_trees(min(cap, 9)))
        return [
            check_continuation(pool, seed),
            check_no_skip(trees + small),
            check_memo_soundness(small),
            check_pairing_equivalence(seed=seed),
            check_bounds(pool + named_pool()),
            check_residual_structure(trees + pool, seed=seed),
            check_matching_win(pool + named_pool()),
            check_gamma2(pool + named_pool()),
            check_erdos_selfridge(pool + named_pool() + [cycle(14)]),
            check_monotone_play(pool, seed),
        ]
    if name == "strategies":
        pool = named_pool() + random_pool(seed, 20, 4, 8)
        return [
            check_tree_strategy(min(max_n or 12, 12)),
            check_cycle_strategy(max_n or 14),
            check_pairing_strategy(pool, opponents=50, seed=seed),
        ]
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")

