"""Command-line interface.

Exit codes: 0 the property holds / no failures, 1 it fails (witness
printed), 2 usage, parse or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .colorings import proof_coloring, star_spec
from .graph import EndColoring, GraphFormatError, GeneralGraph, parse_graph, write_graph
from .harness import THEOREMS, CampaignConfig, gen_random_graph, gen_small_graphs, run_campaign
from .lovasz import audit_structure, classify, critical_from, find_colored_factor, solve
from .tutte import check_condition

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt_set(values) -> str:
    return "{" + ",".join(map(str, sorted(values))) + "}"


def _parse_f(text: str, n: int) -> list[int]:
    try:
        vals = [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"--f expects integers, got {text!r}") from None
    if len(vals) == 1:
        vals = vals * n
    if len(vals) != n:
        raise UsageError(f"--f gives {len(vals)} values for {n} vertices")
    if any(v < 1 for v in vals):
        raise UsageError("f values must be >= 1")
    return vals


def _load(args: argparse.Namespace, need_f: bool = True):
    try:
        text = Path(args.graph).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.graph}: {exc}") from None
    try:
        graph, f, coloring = parse_graph(text)
    except (GraphFormatError, ValueError) as exc:
        raise UsageError(f"{args.graph}: {exc}") from None
    if getattr(args, "f", None):
        f = _parse_f(args.f, graph.n)
    if need_f and f is None:
        raise UsageError("no f values: add an 'f' line to the file or pass --f")
    if getattr(args, "coloring", None):
        try:
            coloring = EndColoring.from_string(args.coloring, graph)
        except ValueError as exc:
            raise UsageError(f"--coloring: {exc}") from None
    elif getattr(args, "proof_set", None) is not None:
        S = list(_ints(args.proof_set))
        if any(not 0 <= v < graph.n for v in S):
            raise UsageError("--proof-set vertex out of range")
        coloring = proof_coloring(graph, S)
    if coloring is None:
        coloring = EndColoring.uniform(graph)
    return graph, f, coloring


def _emit(args: argparse.Namespace, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def cmd_check(args: argparse.Namespace) -> int:
    graph, f, _ = _load(args)
    rep = check_condition(graph, f, include_empty=not args.nonempty_only)
    data = {"holds": rep.holds, "worst_set": list(rep.worst_set),
            "deficiency": rep.deficiency, "include_empty": rep.include_empty}
    text = f"holds={str(rep.holds).lower()} S={_fmt_set(rep.worst_set)} deficiency={rep.deficiency}"
    _emit(args, data, text)
    return EXIT_OK if rep.holds else EXIT_FAIL


def cmd_factor(args: argparse.Namespace) -> int:
    graph, f, coloring = _load(args)
    factor = find_colored_factor(graph, coloring, star_spec(graph, f))
    data = {"factor": factor, "coloring": coloring.to_string()}
    _emit(args, data, "none" if factor is None else f"factor: {factor}")
    return EXIT_OK if factor is not None else EXIT_FAIL


def cmd_decompose(args: argparse.Namespace) -> int:
    graph, f, coloring = _load(args)
    spec = star_spec(graph, f)
    summary = solve(graph, coloring, spec)
    parts = classify(graph, spec, summary.I)
    verdict = critical_from(graph, coloring, spec, summary)
    data = {
        "delta": summary.delta,
        "I": {str(v): list(vals) for v, vals in summary.I.items()},
        "witness": summary.witness,
        "optima_count": summary.optima_count,
        "critical": verdict.is_critical,
        "deviant_vertex": verdict.deviant_vertex,
        **parts.as_lists(),
    }
    lines = [f"delta={summary.delta} optima={summary.optima_count} witness={summary.witness}"]
    lines += [f"{k}={_fmt_set(getattr(parts, k))}" for k in "ABCD"]
    lines += [f"I({v})={_fmt_set(vals)}" for v, vals in summary.I.items()]
    lines.append(f"critical={str(verdict.is_critical).lower()}"
                 + (f" deviant={verdict.deviant_vertex}" if verdict.is_critical else ""))
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    graph, f, coloring = _load(args)
    rep = audit_structure(graph, coloring, star_spec(graph, f))
    data = {"ok": rep.ok, "checks": [c.to_json() for c in rep.checks], "notes": rep.notes}
    lines = []
    for c in rep.checks:
        status = "skip" if c.passed is None else "pass" if c.passed else "FAIL"
        lines.append(f"{status:4} {c.name}" + (f" {json.dumps(c.witness)}" if c.passed is False else ""))
    lines += [f"note {n}" for n in rep.notes]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_FAIL


def _kv(tokens: Sequence[str], keys: dict[str, int]) -> dict[str, int]:
    out = dict(keys)
    for tok in tokens:
        key, sep, val = tok.partition("=")
        if not sep or key not in keys:
            raise UsageError(f"expected one of {sorted(keys)} as key=value, got {tok!r}")
        try:
            out[key] = int(val)
        except ValueError:
            raise UsageError(f"{key} needs an integer, got {val!r}") from None
    return out


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"expected integers, got {text!r}") from None


def cmd_verify(args: argparse.Namespace) -> int:
    exhaustive = None
    if args.exhaustive is not None:
        p = _kv(args.exhaustive, {"n": 3, "m": 4, "mult": 2, "loops": 1})
        exhaustive = (p["n"], p["m"], p["mult"], bool(p["loops"]))
    sample = None
    if args.sample is not None:
        p = _kv(args.sample, {"n": 4, "m": 5, "graphs": 200, "fs": 20})
        sample = (p["n"], p["m"], p["graphs"], p["fs"])
    if exhaustive is None and sample is None and not args.random:
        raise UsageError("give at least one of --exhaustive, --sample, --random")
    theorems = tuple(t.strip() for t in args.theorems.split(",")) if args.theorems else THEOREMS
    rn = _ints(args.random_n)
    rx = _ints(args.random_extra)
    if len(rn) != 2 or len(rx) != 2:
        raise UsageError("--random-n and --random-extra take two integers")
    try:
        config = CampaignConfig(
            exhaustive=exhaustive,
            sample=sample,
            f_values=_ints(args.f_values),
            f_sample=args.f_sample,
            dedup=not args.no_dedup,
            random_count=args.random,
            random_n=rn,
            random_extra_edges=rx,
            loop_prob=args.loop_prob,
            seed=args.seed,
            theorems=theorems,
            audit_budget=None if args.audit_budget <= 0 else args.audit_budget,
            threads=args.threads,
            timing=args.timing,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                result = run_campaign(config, fh)
        else:
            result = run_campaign(config)
    except OSError as exc:
        raise UsageError(f"cannot write report: {exc}") from None
    s = result.summary
    data = {k: s[k] for k in ("total", "failed", "seed", "checks")}
    lines = [f"instances={s['total']} failed={s['failed']} seed={s['seed']}"]
    for name, row in s["checks"].items():
        lines.append(f"  {name}: pass={row['pass']} fail={row['fail']} skip={row['skip']}")
    for inst, rep in zip(result.instances, result.reports):
        for c in rep.failures:
            lines.append(f"FAIL {rep.instance_id} {c.name} {json.dumps(c.witness)}")
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if s["failed"] == 0 else EXIT_FAIL


def cmd_gen(args: argparse.Namespace) -> int:
    graphs: list[GeneralGraph] = []
    if args.exhaustive is not None:
        p = _kv(args.exhaustive, {"n": 3, "m": 4, "mult": 2, "loops": 1})
        graphs += gen_small_graphs(p["n"], p["m"], p["mult"], bool(p["loops"]), dedup=not args.no_dedup)
    if args.random:
        if args.n is None or args.m is None:
            raise UsageError("--random needs --n and --m")
        try:
            graphs += [gen_random_graph(args.n, args.m, args.loop_prob, args.seed + k) for k in range(args.random)]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if not graphs and args.exhaustive is None:
        raise UsageError("give --exhaustive and/or --random")
    if args.out_dir:
        out = Path(args.out_dir)
        try:
            out.mkdir(parents=True, exist_ok=True)
            for i, g in enumerate(graphs):
                (out / f"g{i:05d}.graph").write_text(write_graph(g), encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write graphs: {exc}") from None
        print(f"wrote {len(graphs)} graphs to {out}")
    else:
        print("\n".join(f"# graph {i}\n{write_graph(g)}" for i, g in enumerate(graphs)), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="factorium", description="Exact colored-factor engine.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--threads", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, help: str, coloring: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("graph", help="graph file")
        p.add_argument("--f", help="one value for all vertices or a comma/space separated list")
        if coloring:
            g = p.add_mutually_exclusive_group()
            g.add_argument("--coloring", help="per-edge tokens rr|rg|gr|gg joined by commas")
            g.add_argument("--proof-set", help="colour red exactly the ends in this vertex set")
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        return p

    p = graph_cmd("check", "Tutte-type condition o(G-S) <= f(S)", coloring=False)
    p.add_argument("--nonempty-only", action="store_true", help="skip S = {}")
    p.set_defaults(func=cmd_check)
    graph_cmd("factor", "find a colored J_f*-factor").set_defaults(func=cmd_factor)
    graph_cmd("decompose", "delta, I and the A/B/C/D partition for J_f*").set_defaults(func=cmd_decompose)
    graph_cmd("audit", "structural audit for one coloring").set_defaults(func=cmd_audit)

    p = sub.add_parser("verify", help="run a verification campaign")
    p.add_argument("--exhaustive", nargs="*", metavar="KEY=VAL", help="n= m= mult= loops=")
    p.add_argument("--sample", nargs="*", metavar="KEY=VAL", help="n= m= graphs= fs=")
    p.add_argument("--random", type=int, default=0, metavar="COUNT")
    p.add_argument("--random-n", default="2,5", help="vertex range for random graphs")
    p.add_argument("--random-extra", default="0,2", help="edges beyond a spanning tree")
    p.add_argument("--loop-prob", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--f-values", default="1,2,3")
    p.add_argument("--f-sample", type=int, default=None, help="f-vectors per exhaustive graph")
    p.add_argument("--no-dedup", action="store_true", help="keep isomorphic copies in the exhaustive corpus")
    p.add_argument("--theorems", help=",".join(THEOREMS))
    p.add_argument("--audit-budget", type=int, default=64, help="max colorings audited per instance, 0 = all")
    p.add_argument("--out", help="JSON-lines report path")
    p.add_argument("--timing", action="store_true", help="record per-instance millis")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate graphs in the text format")
    p.add_argument("--exhaustive", nargs="*", metavar="KEY=VAL", help="n= m= mult= loops=")
    p.add_argument("--no-dedup", action="store_true")
    p.add_argument("--random", type=int, default=0, metavar="COUNT")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--loop-prob", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
