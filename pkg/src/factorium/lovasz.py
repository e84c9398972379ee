"""Exact degree-prescribed subgraph optimisation and the A/B/C/D structure.

Everything here is exhaustive: ``solve`` walks all edge subsets with a
branch-and-bound that keeps ties, so the set of colored degrees realised by
optimal subgraphs is complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .graph import (
    EndColoring,
    GeneralGraph,
    charge_table,
    colored_degrees,
    component_count,
    components,
    mask_edges,
    require_edges_within_cap,
    set_charge,
    end_charge,
)
from .prescriptions import AllowedSet, DegreeSpec, dist, hull, is_allowed, shift_set
from .report import VerificationReport


@dataclass(frozen=True)
class OptimaSummary:
    delta: int
    I: dict[int, tuple[int, ...]]
    witness_mask: int
    optima_count: int

    @property
    def witness(self) -> list[int]:
        return mask_edges(self.witness_mask)


@dataclass(frozen=True)
class Decomposition:
    A: frozenset[int]
    B: frozenset[int]
    C: frozenset[int]
    D: frozenset[int]

    def as_lists(self) -> dict[str, list[int]]:
        return {k: sorted(getattr(self, k)) for k in "ABCD"}


@dataclass(frozen=True)
class CriticalityVerdict:
    is_critical: bool
    deviant_vertex: Optional[int] = None


def delta_of(graph: GeneralGraph, coloring: EndColoring, spec: DegreeSpec, F: Iterable[int]) -> int:
    phi = colored_degrees(graph, coloring, F)
    return sum(dist(phi[v], spec[v]) for v in graph.vertices)


class _Problem:
    """Precomputed tables shared by the pruned search routines."""

    def __init__(self, graph: GeneralGraph, coloring: EndColoring, spec: DegreeSpec):
        require_edges_within_cap(graph.m)
        coloring.validate(graph)
        missing = [v for v in graph.vertices if v not in spec]
        if missing:
            raise ValueError(f"prescription missing for vertices {missing}")
        n, m = graph.n, graph.m
        self.n, self.m = n, m
        self.charges = charge_table(graph, coloring)
        deg = graph.degrees()
        self.offset = deg
        # dist to H(v) for every achievable colored degree -deg..deg
        self.dist = [[dist(x, spec[v]) for x in range(-deg[v], deg[v] + 1)] for v in range(n)]
        last = [-1] * n
        for i, e in enumerate(graph.edges):
            last[e.u] = max(last[e.u], i)
            last[e.v] = max(last[e.v], i)
        self.closing: list[list[int]] = [[] for _ in range(m)]
        self.isolated = []
        for v in range(n):
            if last[v] < 0:
                self.isolated.append(v)
            else:
                self.closing[last[v]].append(v)
        # charge still available to each vertex from edges i..m-1
        self.rem_lo = [[0] * n for _ in range(m + 1)]
        self.rem_hi = [[0] * n for _ in range(m + 1)]
        for i in range(m - 1, -1, -1):
            lo, hi = self.rem_lo[i + 1][:], self.rem_hi[i + 1][:]
            u, cu, v, cv = self.charges[i]
            for w, c in ((u, cu), (v, cv)):
                if c < 0:
                    lo[w] += c
                elif c > 0:
                    hi[w] += c
            self.rem_lo[i], self.rem_hi[i] = lo, hi
        # vertices not yet closed before deciding edge i
        self.open_before = []
        closed = set(self.isolated)
        for i in range(m):
            self.open_before.append([v for v in range(n) if v not in closed])
            closed.update(self.closing[i])

    def open_bound(self, i: int, phi: list[int]) -> int:
        """Admissible lower bound on the distance still to come at open vertices."""
        total = 0
        lo_rem, hi_rem = self.rem_lo[i], self.rem_hi[i]
        for v in self.open_before[i]:
            row = self.dist[v]
            off = self.offset[v]
            a = phi[v] + lo_rem[v] + off
            b = phi[v] + hi_rem[v] + off
            best = row[a]
            if best:
                for k in range(a + 1, b + 1):
                    d = row[k]
                    if d < best:
                        best = d
                        if not d:
                            break
            total += best
        return total

    def base_cost(self) -> int:
        return sum(self.dist[v][self.offset[v]] for v in self.isolated)


def solve(graph: GeneralGraph, coloring: EndColoring, spec: DegreeSpec) -> OptimaSummary:
    """delta(H), every colored degree realised by an H-optimal subgraph, and
    the optimal subgraph with the least edge bitmask."""
    P = _Problem(graph, coloring, spec)
    n, m = P.n, P.m
    phi = [0] * n
    best = [None]
    seen: list[set[int]] = [set() for _ in range(n)]
    count = [0]
    wmask = [0]

    def leaf(cost: int, mask: int) -> None:
        if best[0] is not None and cost > best[0]:
            return
        if best[0] is None or cost < best[0]:
            best[0] = cost
            for s in seen:
                s.clear()
            count[0] = 0
            wmask[0] = mask
        elif mask < wmask[0]:
            wmask[0] = mask
        count[0] += 1
        for v in range(n):
            seen[v].add(phi[v])

    def close(i: int, cost: int) -> int:
        for v in P.closing[i]:
            cost += P.dist[v][phi[v] + P.offset[v]]
        return cost

    def walk(i: int, cost: int, mask: int) -> None:
        if i == m:
            leaf(cost, mask)
            return
        if best[0] is not None and cost + P.open_bound(i, phi) > best[0]:
            return
        u, cu, v, cv = P.charges[i]
        walk(i + 1, close(i, cost), mask)
        phi[u] += cu
        phi[v] += cv
        walk(i + 1, close(i, cost), mask | (1 << i))
        phi[u] -= cu
        phi[v] -= cv

    walk(0, P.base_cost(), 0)
    return OptimaSummary(
        delta=best[0],
        I={v: tuple(sorted(seen[v])) for v in range(n)},
        witness_mask=wmask[0],
        optima_count=count[0],
    )


def solve_bruteforce(graph: GeneralGraph, coloring: EndColoring, spec: DegreeSpec) -> OptimaSummary:
    """Reference enumeration of all 2^m subgraphs in Gray-code order, no pruning."""
    require_edges_within_cap(graph.m)
    coloring.validate(graph)
    n, m = graph.n, graph.m
    charges = charge_table(graph, coloring)
    phi = [0] * n
    mask = 0
    best = None
    seen: list[set[int]] = [set() for _ in range(n)]
    count = 0
    wmask = 0
    for step in range(1 << m):
        if step:
            i = (step & -step).bit_length() - 1
            u, cu, v, cv = charges[i]
            sign = -1 if mask >> i & 1 else 1
            phi[u] += sign * cu
            phi[v] += sign * cv
            mask ^= 1 << i
        cost = sum(dist(phi[w], spec[w]) for w in range(n))
        if best is None or cost < best:
            best, count, wmask = cost, 0, mask
            seen = [set() for _ in range(n)]
        if cost == best:
            count += 1
            wmask = min(wmask, mask)
            for w in range(n):
                seen[w].add(phi[w])
    return OptimaSummary(best, {v: tuple(sorted(seen[v])) for v in range(n)}, wmask, count)


def find_colored_factor(graph: GeneralGraph, coloring: EndColoring, spec: DegreeSpec) -> Optional[list[int]]:
    """Some subgraph with every colored degree inside its prescription, or None."""
    P = _Problem(graph, coloring, spec)
    if P.base_cost():
        return None
    m = P.m
    phi = [0] * P.n

    def ok_after(i: int) -> bool:
        return all(P.dist[v][phi[v] + P.offset[v]] == 0 for v in P.closing[i])

    def walk(i: int, mask: int) -> Optional[int]:
        if i == m:
            return mask
        if P.open_bound(i, phi):
            return None
        u, cu, v, cv = P.charges[i]
        phi[u] += cu
        phi[v] += cv
        if ok_after(i):
            found = walk(i + 1, mask | (1 << i))
            if found is not None:
                return found
        phi[u] -= cu
        phi[v] -= cv
        if ok_after(i):
            return walk(i + 1, mask)
        return None

    found = walk(0, 0)
    return None if found is None else mask_edges(found)


def classify(graph: GeneralGraph, spec: DegreeSpec, I: dict[int, tuple[int, ...]]) -> Decomposition:
    A, B, C, D = set(), set(), set(), set()
    for v in graph.vertices:
        H = spec[v]
        iv = I[v]
        if all(x in H for x in iv):
            C.add(v)
            continue
        in_a = iv[0] >= H.max
        in_b = iv[-1] <= H.min
        assert not (in_a and in_b), f"vertex {v} classified into both A and B"
        if in_a:
            A.add(v)
        elif in_b:
            B.add(v)
        else:
            D.add(v)
    return Decomposition(frozenset(A), frozenset(B), frozenset(C), frozenset(D))


def decompose(graph: GeneralGraph, coloring: EndColoring, spec: DegreeSpec) -> Decomposition:
    return classify(graph, spec, solve(graph, coloring, spec).I)


def _require_disjoint(X: set[int], Y: set[int]) -> None:
    if X & Y:
        raise ValueError(f"X and Y overlap in {sorted(X & Y)}")


def nu(graph: GeneralGraph, coloring: EndColoring, X: Iterable[int], Y: Iterable[int] = ()) -> int:
    X, Y = set(X), set(Y)
    _require_disjoint(X, Y)
    total = 0
    for e in range(graph.m):
        d = set_charge(graph, coloring, e, Y) - set_charge(graph, coloring, e, X)
        if d >= 1:
            total += d
    return total


def reduced_spec(
    graph: GeneralGraph,
    coloring: EndColoring,
    spec: DegreeSpec,
    X: Iterable[int],
    Y: Iterable[int] = (),
) -> DegreeSpec:
    """H_{X,Y}: shift H(z) by the charge at z of every edge with e(Y) - e(X) = 1."""
    X, Y = set(X), set(Y)
    _require_disjoint(X, Y)
    forced = [
        e for e in range(graph.m)
        if set_charge(graph, coloring, e, Y) - set_charge(graph, coloring, e, X) == 1
    ]
    out = {}
    for z in graph.vertices:
        if z in X or z in Y:
            continue
        k = sum(end_charge(graph, coloring, e, z) for e in forced)
        out[z] = shift_set(spec[z], k)
    return out


def is_critical(graph: GeneralGraph, coloring: EndColoring, spec: DegreeSpec) -> CriticalityVerdict:
    summary = solve(graph, coloring, spec)
    return critical_from(graph, coloring, spec, summary)


def critical_from(
    graph: GeneralGraph, coloring: EndColoring, spec: DegreeSpec, summary: OptimaSummary
) -> CriticalityVerdict:
    parts = classify(graph, spec, summary.I)
    if not graph.is_connected() or len(parts.D) != graph.n:
        return CriticalityVerdict(False)
    phi = colored_degrees(graph, coloring, summary.witness)
    off = [v for v in graph.vertices if phi[v] not in spec[v]]
    return CriticalityVerdict(True, off[0] if off else None)


def restrict(
    graph: GeneralGraph, coloring: EndColoring, spec: DegreeSpec, vertices: Iterable[int]
) -> tuple[GeneralGraph, EndColoring, DegreeSpec, list[int]]:
    """Induced subgraph with its coloring and the spec relabelled to match."""
    sub, keep, edge_ids = graph.induced(vertices)
    sub_coloring = EndColoring(tuple(coloring.ends[i] for i in edge_ids))
    sub_spec = {i: spec[v] for i, v in enumerate(keep)}
    return sub, sub_coloring, sub_spec, keep


def audit_structure(
    graph: GeneralGraph,
    coloring: EndColoring,
    spec: DegreeSpec,
    summary: Optional[OptimaSummary] = None,
) -> VerificationReport:
    """Check the structural facts about optimal subgraphs on one instance:
    no C-D edges, the delta(H) formula, the shape of I_H on D, delta = 1 for
    critical graphs, and criticality of every component of G[D] under
    H_{A,B}."""
    if summary is None:
        summary = solve(graph, coloring, spec)
    parts = classify(graph, spec, summary.I)
    A, B, C, D = parts.A, parts.B, parts.C, parts.D
    report = VerificationReport(instance_id="")

    cd_edges = [i for i, e in enumerate(graph.edges)
                if (e.u in C and e.v in D) or (e.u in D and e.v in C)]
    report.add("no_C_D_edge", not cd_edges, {"edges": cd_edges} if cd_edges else None)

    c_d = component_count(graph, D) if D else 0
    rhs = (c_d + sum(spec[v].min for v in B) - sum(spec[v].max for v in A)
           - nu(graph, coloring, A, B))
    formula = {"delta": summary.delta, "rhs": rhs, "c_D": c_d, **parts.as_lists()}
    report.add("delta_formula", summary.delta == rhs, formula)

    bad = []
    for v in graph.vertices:
        iv = summary.I[v]
        H = spec[v]
        if v not in D:
            if not is_allowed(iv):
                report.notes.append(f"I({v})={list(iv)} is not allowed outside D")
            continue
        problems = _interval_problems(iv, H)
        if problems:
            bad.append({"vertex": v, "I": list(iv), "H": list(H), "problems": problems})
    report.add("interval_shape_on_D", not bad, {"vertices": bad} if bad else None)

    verdict = critical_from(graph, coloring, spec, summary)
    if verdict.is_critical:
        ok = summary.delta == 1
        report.add("critical_delta_one", ok, None if ok else {"delta": summary.delta})
    else:
        report.add("critical_delta_one", None, {"reason": "not critical"})

    if D:
        reduced = reduced_spec(graph, coloring, spec, A, B)
        noncritical = []
        for comp in components(graph, [v for v in graph.vertices if v not in D]):
            sub, sub_col, sub_spec, keep = restrict(graph, coloring, reduced, comp)
            sub_verdict = is_critical(sub, sub_col, sub_spec)
            if not sub_verdict.is_critical:
                noncritical.append(keep)
        report.add("D_components_critical", not noncritical,
                   {"components": noncritical} if noncritical else None)
    else:
        report.add("D_components_critical", None, {"reason": "D is empty"})
    return report


def _interval_problems(iv: tuple[int, ...], H: AllowedSet) -> list[str]:
    problems = []
    if not is_allowed(iv):
        problems.append("I not allowed")
    present = set(iv)
    for u in range(iv[0] + 1, iv[-1]):
        if u - 1 in present and u + 1 in present and u not in present:
            if u not in H or (u - 1) in H or (u + 1) in H:
                problems.append(f"hole at {u}")
    lo, hi = hull(iv)
    for u in range(lo, hi):
        a, b = u in H, (u + 1) in H
        if a and b:
            problems.append(f"{u},{u + 1} both in H")
        elif not a and not b:
            problems.append(f"{u},{u + 1} both outside H")
    return problems
