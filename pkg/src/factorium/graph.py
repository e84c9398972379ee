"""General multigraphs with 2-end-colorings.

Vertices are ``0..n-1``; an edge's identity is its position in the edge list,
so parallel edges are told apart by index only.  A loop is an edge ``(v, v)``
and contributes 2 to the ordinary degree of ``v``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

MAX_VERTICES = 24
MAX_EDGES = 24
CAP_ENV = "FACTORIUM_CAP_EDGES"


class CapExceeded(ValueError):
    """Raised when an instance is too large for exhaustive enumeration."""


class GraphFormatError(ValueError):
    pass


def edge_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if not raw:
        return MAX_EDGES
    try:
        cap = int(raw)
    except ValueError:
        raise CapExceeded(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    return max(0, min(cap, MAX_EDGES))


def require_edges_within_cap(m: int) -> None:
    cap = edge_cap()
    if m > cap:
        raise CapExceeded(f"{m} edges exceeds the enumeration cap of {cap}")


def require_vertices_within_cap(n: int) -> None:
    if n > MAX_VERTICES:
        raise CapExceeded(f"{n} vertices exceeds the enumeration cap of {MAX_VERTICES}")


class Color(Enum):
    RED = "r"
    GREEN = "g"

    @property
    def sign(self) -> int:
        return 1 if self is Color.RED else -1


@dataclass(frozen=True, slots=True)
class Edge:
    u: int
    v: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class GeneralGraph:
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        for i, e in enumerate(self.edges):
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise ValueError(f"edge {i} ({e.u},{e.v}) has an endpoint outside 0..{self.n - 1}")

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        """Ordinary degree of ``v`` in G; a loop counts twice."""
        return sum((e.u == v) + (e.v == v) for e in self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            deg[e.u] += 1
            deg[e.v] += 1
        return deg

    def incident(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e.u == v or e.v == v]

    def is_simple(self) -> bool:
        seen = set()
        for e in self.edges:
            if e.is_loop:
                return False
            key = (min(e.u, e.v), max(e.u, e.v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def is_connected(self) -> bool:
        return len(components(self)) == 1

    def adjacency_masks(self) -> list[int]:
        """Neighbour bitmask per vertex, loops ignored."""
        adj = [0] * self.n
        for e in self.edges:
            if e.u != e.v:
                adj[e.u] |= 1 << e.v
                adj[e.v] |= 1 << e.u
        return adj

    def induced(self, vertices: Iterable[int]) -> tuple["GeneralGraph", list[int], list[int]]:
        """Induced subgraph on ``vertices``, relabelled in ascending order.

        Returns the subgraph, the original id of each new vertex, and the
        original id of each new edge.
        """
        keep = sorted(set(vertices))
        if not keep:
            raise ValueError("cannot induce on an empty vertex set")
        index = {v: i for i, v in enumerate(keep)}
        edges = []
        edge_ids = []
        for i, e in enumerate(self.edges):
            if e.u in index and e.v in index:
                edges.append(Edge(index[e.u], index[e.v]))
                edge_ids.append(i)
        return GeneralGraph(len(keep), tuple(edges)), keep, edge_ids


def build_graph(n: int, endpoints: Sequence[tuple[int, int]]) -> GeneralGraph:
    return GeneralGraph(n, tuple(Edge(int(u), int(v)) for u, v in endpoints))


@dataclass(frozen=True)
class EndColoring:
    """Per edge, the colours of its ``u`` end and ``v`` end."""

    ends: tuple[tuple[Color, Color], ...]

    def validate(self, graph: GeneralGraph) -> None:
        if len(self.ends) != graph.m:
            raise ValueError(f"coloring has {len(self.ends)} entries for {graph.m} edges")
        for i, (e, (cu, cv)) in enumerate(zip(graph.edges, self.ends)):
            if e.is_loop and cu is not cv:
                raise ValueError(f"loop {i} must have both ends the same colour")

    @classmethod
    def uniform(cls, graph: GeneralGraph, color: Color = Color.RED) -> "EndColoring":
        return cls(tuple((color, color) for _ in graph.edges))

    def to_string(self) -> str:
        return ",".join(cu.value + cv.value for cu, cv in self.ends)

    @classmethod
    def from_string(cls, text: str, graph: Optional[GeneralGraph] = None) -> "EndColoring":
        text = text.strip()
        tokens = [t.strip() for t in text.split(",")] if text else []
        ends = []
        for tok in tokens:
            if len(tok) != 2 or any(c not in "rg" for c in tok):
                raise ValueError(f"bad coloring token {tok!r}")
            ends.append((Color(tok[0]), Color(tok[1])))
        coloring = cls(tuple(ends))
        if graph is not None:
            coloring.validate(graph)
        return coloring


def charge_table(graph: GeneralGraph, coloring: EndColoring) -> list[tuple[int, int, int, int]]:
    """Per edge ``(u, charge_at_u, v, charge_at_v)``.

    For a loop the whole +-2 is put on ``u`` and ``charge_at_v`` is 0, so
    summing both entries always gives the edge's contribution.
    """
    table = []
    for e, (cu, cv) in zip(graph.edges, coloring.ends):
        if e.is_loop:
            table.append((e.u, 2 * cu.sign, e.v, 0))
        else:
            table.append((e.u, cu.sign, e.v, cv.sign))
    return table


def end_charge(graph: GeneralGraph, coloring: EndColoring, e: int, v: int) -> int:
    edge = graph.edges[e]
    cu, cv = coloring.ends[e]
    if edge.is_loop:
        return 2 * cu.sign if edge.u == v else 0
    if edge.u == v:
        return cu.sign
    if edge.v == v:
        return cv.sign
    return 0


def set_charge(graph: GeneralGraph, coloring: EndColoring, e: int, X: Iterable[int]) -> int:
    return sum(end_charge(graph, coloring, e, x) for x in set(X))


def colored_degree(graph: GeneralGraph, coloring: EndColoring, F: Iterable[int], v: int) -> int:
    return sum(end_charge(graph, coloring, e, v) for e in set(F))


def colored_degrees(graph: GeneralGraph, coloring: EndColoring, F: Iterable[int]) -> list[int]:
    phi = [0] * graph.n
    table = charge_table(graph, coloring)
    for e in set(F):
        u, cu, v, cv = table[e]
        phi[u] += cu
        phi[v] += cv
    return phi


def selection_mask(F: Iterable[int]) -> int:
    mask = 0
    for e in F:
        mask |= 1 << e
    return mask


def mask_edges(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def vertex_mask(S: Iterable[int]) -> int:
    return selection_mask(S)


def components_of_mask(adj: Sequence[int], alive: int) -> list[int]:
    comps = []
    while alive:
        start = alive & -alive
        comp = start
        frontier = start
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            nbrs = adj[low.bit_length() - 1] & alive & ~comp
            comp |= nbrs
            frontier |= nbrs
        comps.append(comp)
        alive &= ~comp
    return comps


def components(graph: GeneralGraph, removed: Iterable[int] = ()) -> list[list[int]]:
    """Vertex sets of the components of ``G - removed``, ordered by least vertex."""
    alive = ((1 << graph.n) - 1) & ~vertex_mask(removed)
    return [mask_edges(c) for c in components_of_mask(graph.adjacency_masks(), alive)]


def component_count(graph: GeneralGraph, S: Iterable[int]) -> int:
    """c(S): number of components of the induced subgraph G[S]."""
    S = set(S)
    return len(components(graph, [v for v in graph.vertices if v not in S]))


def odd_component_count(graph: GeneralGraph, S: Iterable[int]) -> int:
    alive = ((1 << graph.n) - 1) & ~vertex_mask(S)
    comps = components_of_mask(graph.adjacency_masks(), alive)
    return sum(1 for c in comps if bin(c).count("1") & 1)


def boundary(graph: GeneralGraph, S: Iterable[int]) -> set[int]:
    S = set(S)
    return {i for i, e in enumerate(graph.edges) if (e.u in S) != (e.v in S)}


def parse_graph(text: str) -> tuple[GeneralGraph, Optional[list[int]], Optional[EndColoring]]:
    """Read the line-based graph format.

    ``vertices <n>`` must come first, then an optional ``f`` line and any
    number of ``edge u v [cc]`` lines.  The coloring is returned only if at
    least one edge spells out its colours; unspecified edges are ``rr``.
    """
    n = None
    f = None
    endpoints = []
    colors: list[Optional[str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        if n is None:
            if key != "vertices" or len(parts) != 2:
                raise GraphFormatError(f"line {lineno}: expected 'vertices <n>' first")
            n = _parse_int(parts[1], lineno)
            if n < 1:
                raise GraphFormatError(f"line {lineno}: vertex count must be positive")
        elif key == "f":
            if f is not None:
                raise GraphFormatError(f"line {lineno}: duplicate f line")
            f = [_parse_int(p, lineno) for p in parts[1:]]
            if len(f) != n:
                raise GraphFormatError(f"line {lineno}: expected {n} f values, got {len(f)}")
            if any(x < 1 for x in f):
                raise GraphFormatError(f"line {lineno}: f values must be >= 1")
        elif key == "edge":
            if len(parts) not in (3, 4):
                raise GraphFormatError(f"line {lineno}: expected 'edge <u> <v> [cc]'")
            u, v = _parse_int(parts[1], lineno), _parse_int(parts[2], lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"line {lineno}: edge ({u},{v}) out of range 0..{n - 1}")
            cc = parts[3] if len(parts) == 4 else None
            if cc is not None:
                if len(cc) != 2 or any(c not in "rg" for c in cc):
                    raise GraphFormatError(f"line {lineno}: bad colour token {cc!r}")
                if u == v and cc[0] != cc[1]:
                    raise GraphFormatError(f"line {lineno}: loop ends must share a colour")
            endpoints.append((u, v))
            colors.append(cc)
        else:
            raise GraphFormatError(f"line {lineno}: unknown directive {key!r}")
    if n is None:
        raise GraphFormatError("missing 'vertices <n>' line")
    graph = build_graph(n, endpoints)
    coloring = None
    if any(c is not None for c in colors):
        coloring = EndColoring.from_string(",".join(c or "rr" for c in colors))
    return graph, f, coloring


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: {token!r} is not an integer") from None


def write_graph(
    graph: GeneralGraph,
    f: Optional[Sequence[int]] = None,
    coloring: Optional[EndColoring] = None,
) -> str:
    lines = [f"vertices {graph.n}"]
    if f is not None:
        lines.append("f " + " ".join(str(x) for x in f))
    for i, e in enumerate(graph.edges):
        if coloring is None:
            lines.append(f"edge {e.u} {e.v}")
        else:
            cu, cv = coloring.ends[i]
            lines.append(f"edge {e.u} {e.v} {cu.value}{cv.value}")
    return "\n".join(lines) + "\n"
