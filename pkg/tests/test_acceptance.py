"""Acceptance criteria, one test per criterion.

Each test prints a single ``ACCEPTANCE <n> PASS|FAIL <detail>`` line straight
to the terminal and then asserts, so ``pytest -v tests/test_acceptance.py``
shows the verdicts even with output capture on. All comparisons are exact.
"""

import sys

import pytest

from mbdom.engine import GameConfig, Player, finite, gmb, gmb_prime, solve
from mbdom.formulas import erdos_selfridge_check, gamma2_witness, union_bounds
from mbdom.graph import (
    Graph,
    cycle,
    disjoint_union,
    domination_stats,
    fig4,
    grst,
    gt,
    path,
    xnm,
    yk,
)
from mbdom.residual import reduce_and_solve
from mbdom.verify import (
    all_trees,
    check_bounds,
    check_continuation,
    check_cycle_strategy,
    check_gamma2,
    check_memo_soundness,
    check_no_skip,
    check_pairing_equivalence,
    check_pairing_strategy,
    check_residual_structure,
    check_residual_theorem,
    check_tree_strategy,
    check_trees,
    named_pool,
    random_pool,
)

SEED = 7


@pytest.fixture
def verdict(capsys):
    def report(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail

    return report


def test_criterion_1_cycles(verdict):
    wrong = []
    calls = 0
    for n in range(3, 15):
        for first in Player:
            calls += 1
            got = solve(GameConfig(cycle(n), first))
            if got != finite(n // 2):
                wrong.append(f"C{n}/{first.value}={got}")
    verdict(1, not wrong and calls == 24, f"cycles 3..14 both games, {calls} solves, wrong={wrong}")


def test_criterion_2_trees(verdict):
    # every labelled tree (Pruefer sequences) up to 7 vertices, every isomorphism class up to 11
    chk = check_trees(max_n=11, labelled_up_to=7)
    ok = chk.ok and chk.slowest <= 1.0
    verdict(2, ok, f"{chk.instances} trees, failures={len(chk.failures)}, slowest solve {chk.slowest:.3f}s")


def test_criterion_3_realization(verdict):
    wrong = []
    for r, s, t in [(2, 2, 2), (2, 2, 3), (2, 3, 3), (2, 3, 4), (3, 3, 4)]:
        g = grst(r, s, t)
        got = (domination_stats(g).gamma, gmb(g), gmb_prime(g))
        if got != (r, finite(s), finite(t)):
            wrong.append(f"G{r}{s}{t}={got}")
    for t in (1, 2, 3):
        g = gt(t)
        got = (domination_stats(g).gamma, gmb(g), gmb_prime(g))
        if got != (1, finite(1), finite(t)):
            wrong.append(f"Gt{t}={got}")
    verdict(3, not wrong, f"8 realization graphs, wrong={wrong}")


def _hang_path(g: Graph, at: int, order: int) -> Graph:
    edges = g.edges() + [(at, g.n)] + [(g.n + i, g.n + i + 1) for i in range(order - 1)]
    return Graph.from_edges(g.n + order, edges)


def test_criterion_4_residual_theorem(verdict):
    trees = list(all_trees(11))
    graphs = random_pool(SEED, 60, 4, 12)
    chk = check_residual_theorem(trees + graphs)
    sharp = []
    p5, p4 = reduce_and_solve(path(5)), reduce_and_solve(path(4))
    if gmb(path(5)) != p5.dgame_low:
        sharp.append("P5 low")
    if gmb(path(4)) != p4.dgame_high:
        sharp.append("P4 high")
    u = fig4().vertex("u")
    for g in (_hang_path(fig4(), u, 2), _hang_path(_hang_path(fig4(), u, 2), 0, 2)):
        red = reduce_and_solve(g)
        if gmb(g) != red.dgame_low or red.dgame_low == red.dgame_high:
            sharp.append(f"fig4+matching n={g.n}")
    ok = chk.ok and not sharp and len(graphs) >= 50
    verdict(4, ok, f"{chk.instances} graphs ({len(trees)} trees), failures={len(chk.failures)}, sharpness misses={sharp}")


def test_criterion_5_union(verdict):
    y = disjoint_union(yk(2), yk(3))
    b = union_bounds(gmb(yk(2)), gmb_prime(yk(2)), gmb(yk(3)), gmb_prime(yk(3)))
    got_y = (gmb(y), gmb_prime(y))
    got_x = (gmb(xnm(2, 1)), gmb_prime(xnm(2, 1)))
    ok = got_y == (finite(3), finite(4)) == (b.d_high, b.s_low) and got_x == (finite(2), finite(3))
    verdict(5, ok, f"Y2+Y3={got_y[0]}/{got_y[1]} bounds d<={b.d_high} s>={b.s_low}; X21={got_x[0]}/{got_x[1]}")


def test_criterion_6_erdos_selfridge(verdict):
    c14, c8 = cycle(14), cycle(8)
    g14, g8 = domination_stats(c14).gamma, domination_stats(c8).gamma
    ok = (
        erdos_selfridge_check(c14) is True
        and gmb(c14) == finite(7)
        and g14 == 5
        and erdos_selfridge_check(c8) is False
        and gmb(c8) == finite(4)
        and g8 == 3
    )
    verdict(6, ok, f"C14 gmb={gmb(c14)} gamma={g14}; C8 gmb={gmb(c8)} gamma={g8}")


def test_criterion_7_lemma_suites(verdict):
    pool = random_pool(SEED, 60, 3, 12)
    small = random_pool(SEED + 1, 60, 3, 10)
    trees9 = list(all_trees(9))
    trees10 = list(all_trees(10))
    checks = [
        check_continuation(pool, SEED),
        check_no_skip(trees9 + small),
        check_memo_soundness(small),
        check_pairing_equivalence(count=60, seed=SEED),
        check_bounds(pool + named_pool()),
        check_residual_structure(trees10 + small, orders=20, seed=SEED),
    ]
    ok = all(c.ok and c.instances >= 50 for c in checks)
    detail = ", ".join(f"{c.name}={c.instances}/{len(c.failures)}" for c in checks)
    verdict(7, ok, f"instances/failures: {detail}")


def test_criterion_8_strategies(verdict):
    checks = [
        check_tree_strategy(12),
        check_cycle_strategy(14),
        check_pairing_strategy(named_pool() + random_pool(SEED, 20, 4, 8), opponents=50, seed=SEED),
    ]
    ok = all(c.ok and c.instances > 0 for c in checks)
    detail = ", ".join(f"{c.name}={c.instances}/{len(c.failures)}" for c in checks)
    verdict(8, ok, f"instances/failures: {detail}")


def test_criterion_9_gamma_two(verdict):
    pool = [g for g in named_pool() + random_pool(SEED, 300, 3, 10) if g.n <= 10]
    chk = check_gamma2(pool)
    fixed = (
        gamma2_witness(cycle(6)) is None
        and gmb(cycle(6)) == finite(3)
        and gamma2_witness(cycle(4)) is not None
        and gmb(cycle(4)) == finite(2)
        and gamma2_witness(path(5)) is not None
        and gmb(path(5)) == finite(2)
    )
    verdict(9, chk.ok and fixed, f"{chk.instances} graphs with gamma=2, failures={len(chk.failures)}, C6/C4/P5 ok={fixed}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
