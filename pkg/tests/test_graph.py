import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs, trees
from mbdom.graph import (
    Graph,
    GraphError,
    ParseError,
    are_isomorphic,
    count_perfect_matchings,
    cycle,
    disjoint_union,
    domination_stats,
    double_star,
    fig4,
    gamma_sets,
    generate,
    grst,
    gt,
    has_perfect_matching,
    is_dominating,
    labelled_trees,
    parse_edge_list,
    parse_generator,
    path,
    spider,
    star,
    tree_from_prufer,
    unlabelled_trees,
    xnm,
    yk,
)


def test_parse_edge_list_roundtrip():
    g = parse_edge_list("# a path\n4 3\n0 1\n1 2  # middle\n2 3\n")
    assert g.n == 4 and g.edges() == [(0, 1), (1, 2), (2, 3)]
    assert parse_edge_list(g.to_edge_list()) == g


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("", 0),
        ("3 2\n0 1\n", 0),
        ("3 1\n0 3\n", 2),
        ("3 1\n1 1\n", 2),
        ("3 1\n0 x\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_edge_list(text)
    assert info.value.lineno == lineno


def test_duplicate_edges_collapse():
    g = parse_edge_list("3 2\n0 1\n1 0\n")
    assert g.edges() == [(0, 1)]


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])


@pytest.mark.parametrize(
    "g, n, m",
    [
        (path(5), 5, 4),
        (cycle(7), 7, 7),
        (star(4), 5, 4),
        (spider(1, 2, 3), 7, 6),
        (double_star(2, 3), 7, 6),
        (gt(3), 7, 9),
        (yk(3), 7, 9),
        (xnm(2, 1), 8, 10),
        (fig4(), 5, 6),
    ],
)
def test_family_orders(g, n, m):
    assert (g.n, g.m) == (n, m)


@pytest.mark.parametrize("r, s, t", [(2, 2, 2), (2, 2, 3), (2, 3, 3), (2, 3, 4), (3, 3, 4), (4, 5, 6)])
def test_grst_order_formula(r, s, t):
    g = grst(r, s, t)
    # the path, one pendant leaf per x_i (i >= 3), two new vertices per triangle
    expected_n = r + (r - 2) + 2 * (t - r + 1) + 2 * (s - r + 1)
    expected_m = (r - 1) + (r - 2) + 3 * (t - r + 1) + 3 * (s - r + 1)
    assert (g.n, g.m) == (expected_n, expected_m)
    assert g.is_connected()


def test_fig4_edges_and_label():
    g = fig4()
    assert g.edges() == [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)]
    assert g.vertex("u") == 4 and g.label(4) == "u"


def test_generator_specs():
    assert parse_generator("gen:cycle:9") == cycle(9)
    assert parse_generator("gen:double_star:2,2") == double_star(2, 2)
    assert parse_generator("gen:fig4") == fig4()
    assert generate("Grst", 2, 2, 3) == grst(2, 2, 3)
    with pytest.raises(GraphError):
        parse_generator("gen:grst:3,2,2")
    with pytest.raises(GraphError):
        parse_generator("gen:nope:1")


@pytest.mark.parametrize(
    "g, gamma, count",
    [(cycle(6), 2, 3), (cycle(14), 5, 14), (path(5), 2, 3), (star(4), 1, 1), (fig4(), 2, 6)],
)
def test_domination_stats_examples(g, gamma, count):
    stats = domination_stats(g)
    assert (stats.gamma, stats.num_gamma_sets) == (gamma, count)
    assert is_dominating(g, stats.one_witness_set)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_gamma_sets_match_brute_force(g):
    gamma, sets = gamma_sets(g)
    if g.n == 0:
        assert gamma == 0
        return
    brute = []
    for k in range(1, g.n + 1):
        brute = [c for c in combinations(range(g.n), k) if is_dominating(g, sum(1 << v for v in c))]
        if brute:
            assert k == gamma
            break
    assert sorted(sum(1 << v for v in c) for c in brute) == sorted(sets)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=10))
def test_perfect_matching_against_exhaustive_count(g):
    assert has_perfect_matching(g) == (count_perfect_matchings(g) > 0)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7), st.integers(0, 2**32 - 1))
def test_isomorphism_against_networkx(g, seed):
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    assert are_isomorphic(g, h)
    other = Graph.from_edges(g.n, g.edges()[1:])
    assert are_isomorphic(g, other) == nx.is_isomorphic(g.to_networkx(), other.to_networkx())


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=9))
def test_networkx_roundtrip(g):
    assert Graph.from_networkx(g.to_networkx()) == g


def test_prufer_enumeration_counts():
    for n in range(1, 7):
        labelled = list(labelled_trees(n))
        assert len(labelled) == max(1, n ** (n - 2))
        assert all(t.is_tree() for t in labelled)
    # unlabelled tree counts (OEIS A000055)
    assert [sum(1 for _ in unlabelled_trees(n)) for n in range(1, 12)] == [
        1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235,
    ]


def test_prufer_labelled_cover_unlabelled():
    for n in range(2, 7):
        reps = list(unlabelled_trees(n))
        seen = [False] * len(reps)
        for t in labelled_trees(n):
            for i, r in enumerate(reps):
                if not seen[i] and are_isomorphic(t, r):
                    seen[i] = True
        assert all(seen)


def test_tree_from_prufer_example():
    assert tree_from_prufer([3, 3, 3]).edges() == [(0, 3), (1, 3), (2, 3), (3, 4)]


@settings(max_examples=40, deadline=None)
@given(trees(max_n=12))
def test_random_trees_are_trees(t):
    assert t.is_tree() and t.m == t.n - 1


def test_disjoint_union_shifts_indices():
    g = disjoint_union(path(2), cycle(3))
    assert g.n == 5 and g.edges() == [(0, 1), (2, 3), (2, 4), (3, 4)]
    assert not g.is_connected()
