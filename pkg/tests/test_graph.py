import pytest
from hypothesis import given, strategies as st

from factorium.graph import (
    CapExceeded,
    Color,
    EndColoring,
    GraphFormatError,
    boundary,
    build_graph,
    colored_degree,
    colored_degrees,
    component_count,
    components,
    end_charge,
    mask_edges,
    odd_component_count,
    parse_graph,
    require_edges_within_cap,
    set_charge,
    write_graph,
)

from conftest import colored_graphs, general_graphs

R, G = Color.RED, Color.GREEN


def test_build_graph_examples(k2, loop, star):
    assert k2.n == 2 and [(e.u, e.v) for e in k2.edges] == [(0, 1)]
    assert loop.edges[0].is_loop and loop.degree(0) == 2
    assert star.degree(0) == 3 and star.degrees() == [3, 1, 1, 1]


@pytest.mark.parametrize("n, edges", [(0, []), (2, [(0, 2)]), (2, [(-1, 0)])])
def test_build_graph_rejects(n, edges):
    with pytest.raises(ValueError):
        build_graph(n, edges)


def test_components(star, k3):
    assert components(star, [0]) == [[1], [2], [3]]
    assert components(k3) == [[0, 1, 2]]
    assert components(build_graph(3, [(0, 1)])) == [[0, 1], [2]]
    assert component_count(star, [1, 2, 3]) == 3


def test_odd_component_count(star, k3, k2):
    assert odd_component_count(star, [0]) == 3
    assert odd_component_count(k3, []) == 1
    assert odd_component_count(k2, []) == 0


def test_boundary(star, k3, loop):
    assert boundary(star, [0]) == {0, 1, 2}
    assert boundary(k3, [0, 1, 2]) == set()
    assert boundary(loop, [0]) == set()


def test_end_charge():
    g = build_graph(2, [(0, 0), (0, 1), (1, 1)])
    col = EndColoring(((R, R), (R, G), (G, G)))
    assert end_charge(g, col, 0, 0) == 2
    assert end_charge(g, col, 1, 1) == -1
    assert end_charge(g, col, 0, 1) == 0
    assert end_charge(g, col, 2, 1) == -2


def test_set_charge():
    g = build_graph(2, [(0, 1), (1, 1)])
    assert set_charge(g, EndColoring(((R, R), (R, R))), 0, {0, 1}) == 2
    assert set_charge(g, EndColoring(((R, G), (R, R))), 0, {0, 1}) == 0
    assert set_charge(g, EndColoring(((R, R), (G, G))), 1, {1}) == -2


def test_colored_degree(k2, star):
    red = EndColoring.uniform(k2)
    assert colored_degrees(k2, red, [0]) == [1, 1]
    proof = EndColoring(((R, G),) * 3)
    assert colored_degrees(star, proof, [0, 1, 2]) == [3, -1, -1, -1]
    assert colored_degree(star, proof, [], 0) == 0


def test_mask_roundtrip():
    assert mask_edges(0b1011) == [0, 1, 3]


@given(colored_graphs(), st.data())
def test_parity_and_even_total(gc, data):
    graph, col = gc
    F = data.draw(st.sets(st.integers(0, max(0, graph.m - 1))) if graph.m else st.just(set()))
    phi = colored_degrees(graph, col, F)
    sub_deg = [0] * graph.n
    for i in F:
        e = graph.edges[i]
        sub_deg[e.u] += 1
        sub_deg[e.v] += 1
    assert all((p - d) % 2 == 0 for p, d in zip(phi, sub_deg))
    assert sum(phi) % 2 == 0
    deg = graph.degrees()
    assert all(-d <= p <= d for p, d in zip(phi, deg))
    red = EndColoring.uniform(graph)
    assert colored_degrees(graph, red, F) == sub_deg


@given(general_graphs(), st.data())
def test_odd_components_parity_and_boundary_symmetry(graph, data):
    S = data.draw(st.sets(st.integers(0, graph.n - 1)))
    assert odd_component_count(graph, S) % 2 == (graph.n - len(S)) % 2
    assert boundary(graph, S) == boundary(graph, set(graph.vertices) - S)


def test_parse_examples():
    g, f, col = parse_graph("vertices 2\nedge 0 1 rr")
    assert g.m == 1 and f is None and col.to_string() == "rr"
    g, f, col = parse_graph("# comment\nvertices 1\nf 2\nedge 0 0 gg\n")
    assert g.edges[0].is_loop and f == [2] and col.to_string() == "gg"
    g, f, col = parse_graph("vertices 3\nedge 0 1\nedge 1 2 gr")
    assert col.to_string() == "rr,gr"
    g, f, col = parse_graph("vertices 2\nedge 0 1")
    assert col is None


@pytest.mark.parametrize("text", [
    "vertices 2\nedge 0 5",
    "edge 0 1\nvertices 2",
    "vertices 1\nedge 0 0 rg",
    "vertices 2\nf 0 1",
    "vertices 2\nf 1",
    "vertices 2\nedge 0 1 rx",
    "vertices 2\nbogus 1",
    "vertices two",
    "",
])
def test_parse_errors(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


@given(colored_graphs(), st.data())
def test_write_parse_roundtrip(gc, data):
    graph, col = gc
    f = data.draw(st.none() | st.lists(st.integers(1, 9), min_size=graph.n, max_size=graph.n))
    if graph.m == 0:
        col = None
    assert parse_graph(write_graph(graph, f, col)) == (graph, f, col)
    assert parse_graph(write_graph(graph, f, None)) == (graph, f, None)


def test_coloring_string_roundtrip(star):
    col = EndColoring.from_string("rg,gg,rr", star)
    assert col.to_string() == "rg,gg,rr"
    with pytest.raises(ValueError):
        EndColoring.from_string("rg,gr", build_graph(1, [(0, 0), (0, 0)]))


def test_edge_cap_env(monkeypatch):
    monkeypatch.setenv("FACTORIUM_CAP_EDGES", "3")
    require_edges_within_cap(3)
    with pytest.raises(CapExceeded):
        require_edges_within_cap(4)
    monkeypatch.setenv("FACTORIUM_CAP_EDGES", "99")
    require_edges_within_cap(24)
    with pytest.raises(CapExceeded):
        require_edges_within_cap(25)
