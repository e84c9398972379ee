"""All 2-end-colorings of a graph and the universally quantified factor checks.

Canonical order: each edge contributes one digit, edge 0 most significant.
A non-loop edge takes ``rr < rg < gr < gg`` (u-end colour first), a loop
takes ``rr < gg``.  The all-red coloring is therefore always first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

from .graph import Color, EndColoring, GeneralGraph, require_edges_within_cap
from .lovasz import critical_from, find_colored_factor, solve
from .prescriptions import DegreeSpec, jf_star_spec

R, G = Color.RED, Color.GREEN
_EDGE_CHOICES = ((R, R), (R, G), (G, R), (G, G))
_LOOP_CHOICES = ((R, R), (G, G))

NO_FACTOR = "no-factor"
NEITHER = "neither-factor-nor-critical"


def coloring_count(graph: GeneralGraph) -> int:
    loops = sum(e.is_loop for e in graph.edges)
    return 2 ** loops * 4 ** (graph.m - loops)


def enumerate_colorings(graph: GeneralGraph) -> Iterator[EndColoring]:
    require_edges_within_cap(graph.m)
    choices = [_LOOP_CHOICES if e.is_loop else _EDGE_CHOICES for e in graph.edges]
    for ends in product(*choices):
        yield EndColoring(ends)


def coloring_at(graph: GeneralGraph, index: int) -> EndColoring:
    """The ``index``-th coloring in canonical order."""
    ends = []
    for e in reversed(graph.edges):
        choices = _LOOP_CHOICES if e.is_loop else _EDGE_CHOICES
        index, digit = divmod(index, len(choices))
        ends.append(choices[digit])
    if index:
        raise IndexError("coloring index out of range")
    return EndColoring(tuple(reversed(ends)))


def proof_coloring(graph: GeneralGraph, S: Iterable[int]) -> EndColoring:
    """Red exactly at the ends lying in S."""
    S = set(S)
    return EndColoring(tuple(
        (R if e.u in S else G, R if e.v in S else G) for e in graph.edges
    ))


@dataclass
class UniversalVerdict:
    all_ok: bool
    counterexample: Optional[tuple[EndColoring, str]] = None
    stats: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        assert self.all_ok == (self.counterexample is None)


def star_spec(graph: GeneralGraph, f: Sequence[int]) -> DegreeSpec:
    return jf_star_spec(f, graph.degrees())


def universal_factor_check(graph: GeneralGraph, f: Sequence[int]) -> UniversalVerdict:
    """Does every 2-end-coloring admit a colored J_f*-factor?"""
    spec = star_spec(graph, f)
    stats = {"colorings": 0, "factor": 0}
    for coloring in enumerate_colorings(graph):
        stats["colorings"] += 1
        if find_colored_factor(graph, coloring, spec) is None:
            return UniversalVerdict(False, (coloring, NO_FACTOR), stats)
        stats["factor"] += 1
    return UniversalVerdict(True, None, stats)


def factor_or_critical_check(graph: GeneralGraph, f: Sequence[int]) -> UniversalVerdict:
    """For odd order: is every coloring either J_f*-critical or factor-admitting?"""
    if graph.n % 2 == 0:
        raise ValueError("factor_or_critical_check needs a graph of odd order")
    spec = star_spec(graph, f)
    stats = {"colorings": 0, "factor": 0, "critical": 0}
    for coloring in enumerate_colorings(graph):
        stats["colorings"] += 1
        if find_colored_factor(graph, coloring, spec) is not None:
            stats["factor"] += 1
            continue
        if critical_from(graph, coloring, spec, solve(graph, coloring, spec)).is_critical:
            stats["critical"] += 1
            continue
        return UniversalVerdict(False, (coloring, NEITHER), stats)
    return UniversalVerdict(True, None, stats)
