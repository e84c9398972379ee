import pytest
from hypothesis import strategies as st

from factorium.graph import Color, EndColoring, build_graph
from factorium.prescriptions import AllowedSet

R, G = Color.RED, Color.GREEN


@pytest.fixture
def k2():
    return build_graph(2, [(0, 1)])


@pytest.fixture
def k3():
    return build_graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def star():
    return build_graph(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def loop():
    return build_graph(1, [(0, 0)])


@st.composite
def general_graphs(draw, max_n=4, max_m=6, connected=False):
    n = draw(st.integers(1, max_n))
    if connected:
        edges = [(v, draw(st.integers(0, v - 1))) for v in range(1, n)]
    else:
        edges = []
    extra = draw(st.integers(0, max(0, max_m - len(edges))))
    for _ in range(extra):
        edges.append((draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))))
    edges = draw(st.permutations(edges)) if edges else edges
    return build_graph(n, edges)


@st.composite
def colorings_for(draw, graph):
    ends = []
    for e in graph.edges:
        if e.is_loop:
            c = draw(st.sampled_from([R, G]))
            ends.append((c, c))
        else:
            ends.append((draw(st.sampled_from([R, G])), draw(st.sampled_from([R, G]))))
    return EndColoring(tuple(ends))


@st.composite
def colored_graphs(draw, max_n=4, max_m=6, connected=False):
    graph = draw(general_graphs(max_n, max_m, connected))
    return graph, draw(colorings_for(graph))


@st.composite
def allowed_sets(draw, lo=-5, hi=5):
    start = draw(st.integers(lo, hi))
    steps = draw(st.lists(st.sampled_from([1, 2]), max_size=4))
    vals = [start]
    for s in steps:
        vals.append(vals[-1] + s)
    return AllowedSet(tuple(vals))
