"""Brute-force scan of the Tutte-type condition o(G - S) <= f(S)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graph import GeneralGraph, components_of_mask, mask_edges, require_vertices_within_cap


@dataclass(frozen=True)
class ConditionReport:
    holds: bool
    worst_set: tuple[int, ...]
    deficiency: int
    include_empty: bool


def f_sum(f: Sequence[int], S: Iterable[int]) -> int:
    return sum(f[v] for v in S)


def iter_deficiencies(graph: GeneralGraph, f: Sequence[int], include_empty: bool = True) -> Iterator[tuple[int, int]]:
    """Yield ``(subset_mask, o(G - S) - f(S))`` for every scanned S in mask order."""
    require_vertices_within_cap(graph.n)
    if len(f) != graph.n:
        raise ValueError(f"f has {len(f)} values for {graph.n} vertices")
    adj = graph.adjacency_masks()
    full = (1 << graph.n) - 1
    for S in range(0 if include_empty else 1, full + 1):
        odd = sum(1 for c in components_of_mask(adj, full & ~S) if bin(c).count("1") & 1)
        fS = 0
        rest = S
        while rest:
            low = rest & -rest
            fS += f[low.bit_length() - 1]
            rest ^= low
        yield S, odd - fS


def check_condition(graph: GeneralGraph, f: Sequence[int], include_empty: bool) -> ConditionReport:
    """Worst deficiency over all (nonempty, unless ``include_empty``) S.

    Ties go to the smallest subset bitmask.
    """
    worst_mask, worst = None, None
    for S, d in iter_deficiencies(graph, f, include_empty):
        if worst is None or d > worst:
            worst_mask, worst = S, d
    return ConditionReport(
        holds=worst <= 0,
        worst_set=tuple(mask_edges(worst_mask)),
        deficiency=worst,
        include_empty=include_empty,
    )


def violating_sets(graph: GeneralGraph, f: Sequence[int], include_empty: bool = True) -> list[tuple[int, ...]]:
    return [tuple(mask_edges(S)) for S, d in iter_deficiencies(graph, f, include_empty) if d > 0]
