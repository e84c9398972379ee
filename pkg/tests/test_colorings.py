import pytest
from hypothesis import given, settings, strategies as st

from factorium.colorings import (
    NEITHER,
    NO_FACTOR,
    coloring_at,
    coloring_count,
    enumerate_colorings,
    factor_or_critical_check,
    proof_coloring,
    star_spec,
    universal_factor_check,
)
from factorium.graph import Color, EndColoring, build_graph
from factorium.lovasz import find_colored_factor
from factorium.prescriptions import jf_spec
from factorium.tutte import violating_sets

from conftest import general_graphs

R, G = Color.RED, Color.GREEN


def test_enumeration_counts(k2, loop, star):
    assert len(list(enumerate_colorings(k2))) == 4
    assert len(list(enumerate_colorings(loop))) == 2
    assert len(list(enumerate_colorings(star))) == 64


def test_canonical_order(k2):
    tokens = [c.to_string() for c in enumerate_colorings(k2)]
    assert tokens == ["rr", "rg", "gr", "gg"]
    g = build_graph(1, [(0, 0), (0, 0)])
    assert [c.to_string() for c in enumerate_colorings(g)] == ["rr,rr", "rr,gg", "gg,rr", "gg,gg"]


@given(general_graphs(max_n=3, max_m=4))
def test_enumeration_distinct_and_valid(graph):
    cols = list(enumerate_colorings(graph))
    assert len(cols) == len(set(cols)) == coloring_count(graph)
    for i, c in enumerate(cols):
        c.validate(graph)
        assert coloring_at(graph, i) == c


def test_proof_coloring(star):
    assert proof_coloring(star, [0]).to_string() == "rg,rg,rg"
    assert proof_coloring(star, []) == EndColoring.uniform(star, G)
    assert proof_coloring(star, range(4)) == EndColoring.uniform(star, R)
    g = build_graph(2, [(0, 0), (1, 1)])
    assert proof_coloring(g, [0]).to_string() == "rr,gg"


def test_universal_examples(k2, star):
    assert universal_factor_check(k2, [1, 1]).all_ok
    assert universal_factor_check(k2, [2, 2]).all_ok
    verdict = universal_factor_check(star, [1] * 4)
    assert not verdict.all_ok
    coloring, reason = verdict.counterexample
    assert reason == NO_FACTOR
    # first failure in canonical order is the all-red coloring
    assert coloring == EndColoring.uniform(star)
    spec = star_spec(star, [1] * 4)
    assert find_colored_factor(star, coloring, spec) is None
    assert find_colored_factor(star, proof_coloring(star, [0]), spec) is None


def test_factor_or_critical_examples(k3, loop):
    verdict = factor_or_critical_check(k3, [1] * 3)
    assert verdict.all_ok and verdict.stats["critical"] == 64
    assert factor_or_critical_check(build_graph(1, []), [1]).all_ok
    verdict = factor_or_critical_check(loop, [2])
    assert verdict.all_ok and verdict.stats == {"colorings": 2, "factor": 1, "critical": 1}


def test_factor_or_critical_counterexample():
    path = build_graph(3, [(0, 1), (1, 2)])
    verdict = factor_or_critical_check(path, [1, 1, 1])
    assert not verdict.all_ok and verdict.counterexample[1] == NEITHER


def test_factor_or_critical_rejects_even(k2):
    with pytest.raises(ValueError):
        factor_or_critical_check(k2, [1, 1])


@settings(max_examples=80, deadline=None)
@given(general_graphs(max_n=4, max_m=4, connected=True), st.data())
def test_necessity_witness(graph, data):
    f = data.draw(st.lists(st.integers(1, 3), min_size=graph.n, max_size=graph.n))
    spec = star_spec(graph, f)
    for S in violating_sets(graph, f, include_empty=True):
        assert find_colored_factor(graph, proof_coloring(graph, S), spec) is None


@settings(max_examples=80, deadline=None)
@given(general_graphs(max_n=4, max_m=5), st.data())
def test_all_red_specialisation(graph, data):
    f = data.draw(st.lists(st.integers(1, 4), min_size=graph.n, max_size=graph.n))
    red = EndColoring.uniform(graph)
    colored = find_colored_factor(graph, red, star_spec(graph, f))
    plain = find_colored_factor(graph, red, jf_spec(f))
    assert (colored is None) == (plain is None)
