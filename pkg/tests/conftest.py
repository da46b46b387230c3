import random

from hypothesis import strategies as st

from mbdom.graph import Graph, random_graph, random_tree


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8, connected: bool = False) -> Graph:
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    p = draw(st.sampled_from([0.15, 0.3, 0.5, 0.7]))
    return random_graph(n, random.Random(seed), p, connected)


@st.composite
def trees(draw, min_n: int = 1, max_n: int = 10) -> Graph:
    n = draw(st.integers(min_n, max_n))
    return random_tree(n, random.Random(draw(st.integers(0, 2**32 - 1))))
