"""Instance generation and verification campaigns for the factor theorems."""

from __future__ import annotations

import json
import random
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import permutations, product
from typing import Iterable, Iterator, Optional, Sequence, TextIO

from .colorings import (
    coloring_at,
    coloring_count,
    enumerate_colorings,
    factor_or_critical_check,
    proof_coloring,
    star_spec,
    universal_factor_check,
)
from .graph import (
    MAX_EDGES,
    MAX_VERTICES,
    EndColoring,
    GeneralGraph,
    build_graph,
    colored_degrees,
    edge_cap,
    require_edges_within_cap,
    require_vertices_within_cap,
    write_graph,
)
from .lovasz import audit_structure, find_colored_factor
from .prescriptions import make_J
from .report import VerificationReport
from .tutte import check_condition, violating_sets

THEOREMS = ("main-even", "main-odd", "corollary", "classical", "audit")
SCHEMA = "factorium-report/1"
# all violating sets get a necessity check up to this order, only the worst one beyond
NECESSITY_ALL_SETS_MAX_N = 8


@dataclass(frozen=True)
class Instance:
    graph: GeneralGraph
    f: tuple[int, ...]
    tag: str = ""

    def __post_init__(self) -> None:
        if len(self.f) != self.graph.n:
            raise ValueError("f must have one value per vertex")
        if any(x < 1 for x in self.f):
            raise ValueError("f values must be >= 1")


def _canonical_form(n: int, edges: Sequence[tuple[int, int]]) -> tuple:
    best = None
    for perm in permutations(range(n)):
        relabelled = tuple(sorted(
            (min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges
        ))
        if best is None or relabelled < best:
            best = relabelled
    return best


def gen_small_graphs(
    n_max: int,
    m_max: int,
    max_multiplicity: int = 1,
    allow_loops: bool = False,
    dedup: bool = True,
) -> Iterator[GeneralGraph]:
    """Every connected general graph with at most ``n_max`` vertices and
    ``m_max`` edges, each vertex pair (or loop) used at most
    ``max_multiplicity`` times.  With ``dedup`` only the first graph of each
    isomorphism class is kept."""
    require_vertices_within_cap(n_max)
    require_edges_within_cap(m_max)
    if dedup and n_max > 8:
        raise ValueError("isomorphism dedup is only supported up to 8 vertices")
    for n in range(1, n_max + 1):
        slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
        if allow_loops:
            slots += [(i, i) for i in range(n)]
        seen = set()
        by_size: dict[int, list[GeneralGraph]] = {}
        for mult in product(range(max_multiplicity + 1), repeat=len(slots)):
            m = sum(mult)
            if m > m_max:
                continue
            edges = [s for s, k in zip(slots, mult) for _ in range(k)]
            graph = build_graph(n, edges)
            if not graph.is_connected():
                continue
            if dedup:
                key = _canonical_form(n, edges)
                if key in seen:
                    continue
                seen.add(key)
            by_size.setdefault(m, []).append(graph)
        for m in sorted(by_size):
            yield from by_size[m]


def gen_random_graph(n: int, m: int, loop_prob: float = 0.0, seed: int = 0) -> GeneralGraph:
    """A random connected general graph: a random spanning tree plus
    ``m - n + 1`` extra edges (loops with probability ``loop_prob``),
    vertices relabelled and edges shuffled."""
    if n < 1 or m < n - 1:
        raise ValueError(f"cannot build a connected graph with n={n}, m={m}")
    if n == 1 and m > 0 and loop_prob <= 0:
        raise ValueError("a single vertex can only carry loops")
    require_vertices_within_cap(n)
    require_edges_within_cap(m)
    rng = random.Random(seed)
    edges = [(v, rng.randrange(v)) for v in range(1, n)]
    for _ in range(m - n + 1):
        if n == 1 or rng.random() < loop_prob:
            v = rng.randrange(n)
            edges.append((v, v))
        else:
            u, v = rng.sample(range(n), 2)
            edges.append((u, v))
    perm = list(range(n))
    rng.shuffle(perm)
    rng.shuffle(edges)
    return build_graph(n, [(perm[u], perm[v]) for u, v in edges])


def find_uncolored_Jf_factor(graph: GeneralGraph, f: Sequence[int]) -> Optional[list[int]]:
    """Spanning subgraph with deg_F(v) in J_{f(v)} for all v (loops count 2)."""
    require_edges_within_cap(graph.m)
    targets = [set(make_J(fv).values) for fv in f]
    cap = list(f)
    last = [-1] * graph.n
    for i, e in enumerate(graph.edges):
        last[e.u] = last[e.v] = i
    if any(last[v] < 0 and 0 not in targets[v] for v in graph.vertices):
        return None
    deg = [0] * graph.n
    chosen: list[int] = []

    def settled(i: int) -> bool:
        e = graph.edges[i]
        return all(deg[w] in targets[w] for w in {e.u, e.v} if last[w] == i)

    def walk(i: int) -> bool:
        if i == graph.m:
            return True
        e = graph.edges[i]
        deg[e.u] += 1
        deg[e.v] += 1
        if deg[e.u] <= cap[e.u] and deg[e.v] <= cap[e.v] and settled(i):
            chosen.append(i)
            if walk(i + 1):
                return True
            chosen.pop()
        deg[e.u] -= 1
        deg[e.v] -= 1
        return settled(i) and walk(i + 1)

    return list(chosen) if walk(0) else None


def _instance_id(inst: Instance) -> str:
    edges = ";".join(f"{e.u}-{e.v}" for e in inst.graph.edges)
    f = ",".join(map(str, inst.f))
    return f"{inst.tag}n{inst.graph.n}[{edges}]f[{f}]"


def _not_connected(report: VerificationReport, name: str) -> VerificationReport:
    report.add(name, None, {"reason": "graph is not connected"})
    return report


def verify_main_even(inst: Instance) -> VerificationReport:
    """Condition over all S versus a colored J_f*-factor under every coloring,
    plus the necessity-proof coloring for every violating S."""
    graph, f = inst.graph, inst.f
    report = VerificationReport(_instance_id(inst))
    if not graph.is_connected():
        _not_connected(report, "main_even")
        return _not_connected(report, "necessity_witness")
    cond = check_condition(graph, f, include_empty=True)
    verdict = universal_factor_check(graph, f)
    witness = {
        "condition_holds": cond.holds,
        "all_colorings_have_factor": verdict.all_ok,
        "worst_set": list(cond.worst_set),
        "deficiency": cond.deficiency,
    }
    if verdict.counterexample is not None:
        witness["coloring"] = verdict.counterexample[0].to_string()
    if not cond.holds:
        witness["proof_coloring"] = proof_coloring(graph, cond.worst_set).to_string()
    report.add("main_even", cond.holds == verdict.all_ok, witness)

    if cond.holds:
        report.add("necessity_witness", None, {"reason": "condition holds"})
        return report
    if graph.n <= NECESSITY_ALL_SETS_MAX_N:
        sets = violating_sets(graph, f, include_empty=True)
    else:
        sets = [cond.worst_set]
    spec = star_spec(graph, f)
    broken = []
    for S in sets:
        coloring = proof_coloring(graph, S)
        factor = find_colored_factor(graph, coloring, spec)
        if factor is not None:
            broken.append({"S": list(S), "coloring": coloring.to_string(), "factor": factor})
    report.add("necessity_witness", not broken, {
        "sets_checked": len(sets),
        "S": list(cond.worst_set),
        "coloring": proof_coloring(graph, cond.worst_set).to_string(),
        **({"violations": broken} if broken else {}),
    })
    return report


def verify_main_odd(inst: Instance) -> VerificationReport:
    graph, f = inst.graph, inst.f
    if graph.n % 2 == 0:
        raise ValueError("verify_main_odd needs a graph of odd order")
    report = VerificationReport(_instance_id(inst))
    if not graph.is_connected():
        return _not_connected(report, "main_odd")
    cond = check_condition(graph, f, include_empty=False)
    verdict = factor_or_critical_check(graph, f)
    witness = {
        "condition_holds": cond.holds,
        "all_colorings_factor_or_critical": verdict.all_ok,
        "worst_set": list(cond.worst_set),
        "deficiency": cond.deficiency,
        "stats": verdict.stats,
    }
    if verdict.counterexample is not None:
        witness["coloring"] = verdict.counterexample[0].to_string()
    report.add("main_odd", cond.holds == verdict.all_ok, witness)
    return report


def corollary_premises(inst: Instance, coloring: EndColoring) -> Optional[str]:
    """Reason the corollary does not apply, or None if every premise holds."""
    graph, f = inst.graph, inst.f
    if graph.n % 2 == 0:
        return "even order"
    if not graph.is_connected():
        return "graph is not connected"
    if any(x % 2 for x in f):
        return "f is not even-valued"
    phi = colored_degrees(graph, coloring, range(graph.m))
    low = [v for v in graph.vertices if phi[v] < f[v]]
    if low:
        return f"colored degree below f at {low}"
    if not check_condition(graph, f, include_empty=False).holds:
        return "condition fails for some nonempty S"
    return None


def verify_corollary(inst: Instance, coloring: EndColoring) -> VerificationReport:
    report = VerificationReport(_instance_id(inst))
    reason = corollary_premises(inst, coloring)
    if reason is not None:
        report.add("corollary", None, {"reason": reason, "coloring": coloring.to_string()})
        return report
    factor = find_colored_factor(inst.graph, coloring, star_spec(inst.graph, inst.f))
    witness = {"coloring": coloring.to_string()}
    if factor is not None:
        witness["factor"] = factor
    report.add("corollary", factor is not None, witness)
    return report


def verify_corollary_all(inst: Instance) -> VerificationReport:
    """The corollary under every coloring meeting its premises."""
    report = VerificationReport(_instance_id(inst))
    graph, f = inst.graph, inst.f
    if graph.n % 2 == 0 or any(x % 2 for x in f):
        report.add("corollary", None, {"reason": "needs odd order and even-valued f"})
        return report
    if not graph.is_connected():
        return _not_connected(report, "corollary")
    if not check_condition(graph, f, include_empty=False).holds:
        report.add("corollary", None, {"reason": "condition fails for some nonempty S"})
        return report
    applicable = 0
    for coloring in enumerate_colorings(graph):
        sub = verify_corollary(inst, coloring)
        c = sub.checks[0]
        if c.passed is None:
            continue
        applicable += 1
        if not c.passed:
            report.add("corollary", False, {"applicable": applicable, **c.witness})
            return report
    if applicable:
        report.add("corollary", True, {"applicable": applicable})
    else:
        report.add("corollary", None, {"reason": "no coloring meets the degree premise"})
    return report


def verify_classical(inst: Instance) -> VerificationReport:
    """Cui-Kano biconditional, Egawa-Kano-Yan implication and their constant-f
    special cases (Amahashi, Lu-Wang), plus the all-red reduction."""
    graph, f = inst.graph, inst.f
    report = VerificationReport(_instance_id(inst))
    factor = find_uncolored_Jf_factor(graph, f)
    cond = check_condition(graph, f, include_empty=True)
    witness = {"condition_holds": cond.holds, "worst_set": list(cond.worst_set),
               "deficiency": cond.deficiency, "factor": factor}

    even = graph.n % 2 == 0
    odd_f = all(x % 2 for x in f)
    if odd_f and even:
        report.add("cui_kano", cond.holds == (factor is not None), witness)
    else:
        report.add("cui_kano", None, {"reason": "needs odd-valued f and even order"})

    simple_conn = graph.is_simple() and graph.is_connected()
    if simple_conn and even:
        report.add("egawa", (not cond.holds) or factor is not None, witness)
    else:
        report.add("egawa", None, {"reason": "needs a simple connected graph of even order"})

    constant = len(set(f)) == 1
    if constant and f[0] >= 3 and f[0] % 2 and even:
        report.add("amahashi", cond.holds == (factor is not None), witness)
    else:
        report.add("amahashi", None, {"reason": "needs constant odd f >= 3 and even order"})
    if constant and f[0] >= 4 and f[0] % 2 == 0 and simple_conn and even:
        report.add("lu_wang", (not cond.holds) or factor is not None, witness)
    else:
        report.add("lu_wang", None, {"reason": "needs constant even f >= 4, simple connected, even order"})

    red = EndColoring.uniform(graph)
    colored = find_colored_factor(graph, red, star_spec(graph, f))
    report.add("all_red_reduction", (colored is None) == (factor is None),
               {"colored_factor": colored, "factor": factor})
    return report


def audit_colorings(graph: GeneralGraph, budget: Optional[int], salt: str) -> list[EndColoring]:
    total = coloring_count(graph)
    if budget is None or total <= budget:
        return list(enumerate_colorings(graph))
    rng = random.Random(zlib.crc32(salt.encode()))
    picks = sorted(rng.sample(range(total), budget))
    return [coloring_at(graph, i) for i in picks]


def audit_instance(inst: Instance, budget: Optional[int] = None) -> VerificationReport:
    """Structural audit under every coloring, or a seeded sample of ``budget``."""
    report = VerificationReport(_instance_id(inst))
    spec = star_spec(inst.graph, inst.f)
    colorings = audit_colorings(inst.graph, budget, report.instance_id)
    b_nonempty = []
    for coloring in colorings:
        sub = audit_structure(inst.graph, coloring, spec)
        failed = sub.failures
        if failed:
            report.add("structure_audit", False, {
                "coloring": coloring.to_string(),
                "failed": [c.to_json() for c in failed],
                "audited": len(colorings),
            })
            return report
        parts = sub.check("delta_formula").witness
        if parts["B"]:
            b_nonempty.append(coloring.to_string())
    report.add("structure_audit", True, {"audited": len(colorings)})
    report.add("jf_star_B_empty", not b_nonempty,
               {"colorings": b_nonempty[:5]} if b_nonempty else None)
    return report


@dataclass
class CampaignConfig:
    exhaustive: Optional[tuple[int, int, int, bool]] = None  # n_max, m_max, multiplicity, loops
    f_values: tuple[int, ...] = (1, 2, 3)
    f_sample: Optional[int] = None  # f-vectors per graph; None = all
    dedup: bool = True
    sample: Optional[tuple[int, int, int, int]] = None  # n, m_max, graphs, f-vectors per graph
    random_count: int = 0
    random_n: tuple[int, int] = (2, 5)
    random_extra_edges: tuple[int, int] = (0, 2)
    loop_prob: float = 0.1
    seed: int = 0
    theorems: tuple[str, ...] = THEOREMS
    audit_budget: Optional[int] = 64
    threads: int = 1
    timing: bool = False

    def __post_init__(self) -> None:
        unknown = set(self.theorems) - set(THEOREMS)
        if unknown:
            raise ValueError(f"unknown theorem names {sorted(unknown)}; choose from {THEOREMS}")


def _f_vectors(n: int, values: Sequence[int], limit: Optional[int], rng: random.Random) -> list[tuple[int, ...]]:
    total = len(values) ** n
    if limit is None or total <= limit:
        return list(product(values, repeat=n))
    picks = sorted(rng.sample(range(total), limit))
    out = []
    for idx in picks:
        digits = []
        for _ in range(n):
            idx, d = divmod(idx, len(values))
            digits.append(values[d])
        out.append(tuple(reversed(digits)))
    return out


def campaign_instances(config: CampaignConfig) -> Iterator[Instance]:
    rng = random.Random(config.seed)
    if config.exhaustive is not None:
        n_max, m_max, mult, loops = config.exhaustive
        for gi, graph in enumerate(gen_small_graphs(n_max, m_max, mult, loops, config.dedup)):
            for f in _f_vectors(graph.n, config.f_values, config.f_sample, rng):
                yield Instance(graph, f, f"ex{gi}:")
    if config.sample is not None:
        n, m_max, graphs, per_graph = config.sample
        pool = [g for g in gen_small_graphs(n, m_max, 2, True) if g.n == n]
        chosen = pool if len(pool) <= graphs else [pool[i] for i in sorted(rng.sample(range(len(pool)), graphs))]
        for gi, graph in enumerate(chosen):
            for f in _f_vectors(n, config.f_values, per_graph, rng):
                yield Instance(graph, f, f"sm{gi}:")
    lo, hi = config.random_n
    elo, ehi = config.random_extra_edges
    for k in range(config.random_count):
        n = rng.randint(lo, hi)
        m = n - 1 + rng.randint(elo, ehi)
        loop_prob = config.loop_prob if n > 1 else 1.0
        graph = gen_random_graph(n, m, loop_prob, rng.randrange(2 ** 32))
        f = tuple(rng.choice(config.f_values) for _ in range(n))
        yield Instance(graph, f, f"rnd{k}:")


def verify_instance(inst: Instance, config: CampaignConfig) -> VerificationReport:
    start = time.perf_counter()
    report = VerificationReport(_instance_id(inst))
    wanted = set(config.theorems)
    if "main-even" in wanted:
        report.extend(verify_main_even(inst))
    if "main-odd" in wanted:
        if inst.graph.n % 2:
            report.extend(verify_main_odd(inst))
        else:
            report.add("main_odd", None, {"reason": "even order"})
    if "corollary" in wanted:
        report.extend(verify_corollary_all(inst))
    if "classical" in wanted:
        report.extend(verify_classical(inst))
    if "audit" in wanted:
        report.extend(audit_instance(inst, config.audit_budget))
    if config.timing:
        report.millis = int((time.perf_counter() - start) * 1000)
    return report


def _verify_pair(args: tuple[Instance, CampaignConfig]) -> VerificationReport:
    return verify_instance(*args)


@dataclass
class CampaignResult:
    instances: list[Instance]
    reports: list[VerificationReport]
    summary: dict = field(default_factory=dict)

    @property
    def failed(self) -> int:
        return self.summary["failed"]


def run_campaign(config: CampaignConfig, out: Optional[TextIO] = None) -> CampaignResult:
    """Verify every generated instance; reports keep generation order."""
    instances = list(campaign_instances(config))
    if config.threads > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            reports = list(pool.map(_verify_pair, [(i, config) for i in instances], chunksize=8))
    else:
        reports = [verify_instance(i, config) for i in instances]
    per_check: dict[str, dict[str, int]] = {}
    for r in reports:
        for c in r.checks:
            row = per_check.setdefault(c.name, {"pass": 0, "fail": 0, "skip": 0})
            row["skip" if c.passed is None else "pass" if c.passed else "fail"] += 1
    summary = {
        "summary": True,
        "schema": SCHEMA,
        "total": len(reports),
        "failed": sum(not r.ok for r in reports),
        "seed": config.seed,
        "caps": {"vertices": MAX_VERTICES, "edges": edge_cap(), "edges_max": MAX_EDGES},
        "config": _config_json(config),
        "checks": per_check,
    }
    if out is not None:
        write_report(out, instances, reports, summary)
    return CampaignResult(instances, reports, summary)


def _config_json(config: CampaignConfig) -> dict:
    data = asdict(config)
    data.pop("threads")
    data.pop("timing")
    return data


def report_row(inst: Instance, report: VerificationReport) -> dict:
    return {
        "instance_id": report.instance_id,
        "graph": write_graph(inst.graph),
        "f": list(inst.f),
        "checks": [c.to_json() for c in report.checks],
        "millis": report.millis,
    }


def write_report(out: TextIO, instances: Iterable[Instance], reports: Iterable[VerificationReport], summary: dict) -> None:
    for inst, rep in zip(instances, reports):
        out.write(json.dumps(report_row(inst, rep), sort_keys=True) + "\n")
    out.write(json.dumps(summary, sort_keys=True) + "\n")
