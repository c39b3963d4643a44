"""Command-line front end: certify, verify, gen, sweep.

Exit codes: 0 success, 1 verification failure or bad input, 2 budget
exceeded, 3 theorem-violation diagnostic.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterator, Sequence

from .certify import Certificate, certify, sweep, verify
from .corpus import CorpusSpec, atlas_graphs, generate, named_graphs
from .errors import BudgetExceeded, GraphError, TheoremViolation
from .graph import Graph
from .io import format_edgelist, iter_graph6_file, read_graph, to_graph6

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_THEOREM = 0, 1, 2, 3


def _write_json(data: dict, dest: str | None) -> None:
    if dest is None:
        return
    text = json.dumps(data, indent=2, sort_keys=True)
    if dest == "-":
        print(text)
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _parse_params(items: Sequence[str]) -> dict:
    params = {}
    for item in items:
        if "=" not in item:
            raise GraphError(f"parameter {item!r} is not of the form key=value")
        k, v = item.split("=", 1)
        params[k] = v
    return params


def corpus_from_spec(text: str) -> Iterator[tuple[str, Graph]]:
    """``atlas:N``, ``named[:a,b]``, ``file:PATH``, ``empty``, or a family
    with ``key=value`` parameters, e.g. ``random_gnp:n=10,p=0.5,seed=1,count=20``."""
    for part in filter(None, (p.strip() for p in text.split(";"))):
        head, _, rest = part.partition(":")
        if head == "empty":
            continue
        if head == "atlas":
            for i, g in enumerate(atlas_graphs(int(rest or 7))):
                yield f"atlas[{i}]", g
            continue
        if head == "named":
            named = named_graphs()
            keys = rest.split("|") if rest else sorted(named)
            for k in keys:
                yield k, named[k]
            continue
        if head == "file":
            for i, g in enumerate(iter_graph6_file(rest)):
                yield f"{rest}[{i}]", g
            continue
        params = _parse_params([kv for kv in rest.split(",") if kv]) if rest else {}
        count = int(params.pop("count", 1))
        seed = int(params.pop("seed", 0))
        for i in range(count):
            spec = CorpusSpec(head, params, seed + i)
            yield spec.label(), generate(spec)


def cmd_certify(args) -> int:
    g = read_graph(args.path, args.format)
    cert = certify(g, force_tk5=args.force_tk5, budget=args.budget)
    ok = verify(g, cert)
    print(f"{cert.kind} certificate for n={g.n}, m={g.edge_count}; verified: {bool(ok)}")
    _write_json(cert.to_json(), args.json)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    g = read_graph(args.graph, args.format)
    with open(args.certificate, encoding="utf-8") as fh:
        cert = Certificate.from_json(json.load(fh))
    ok = verify(g, cert)
    if ok:
        print(f"{cert.kind} certificate verified")
        return EXIT_OK
    print(f"{cert.kind} certificate rejected: {ok.clause}: {ok.detail}")
    return EXIT_FAIL


def cmd_gen(args) -> int:
    g = generate(CorpusSpec(args.family, _parse_params(args.params), args.seed))
    text = to_graph6(g) + "\n" if args.format == "g6" else format_edgelist(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_sweep(args) -> int:
    graphs = (item for spec in args.corpus for item in corpus_from_spec(spec))
    props = [p for p in args.props.split(",") if p]
    report = sweep(graphs, props)
    fails = report.failures()
    print(f"{len(report.entries)} checks, {len(fails)} failures")
    for e in fails[:20]:
        print(f"FAIL {e.name} {e.prop}: {e.detail}")
    _write_json(report.to_json(), args.json)
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tk5cert", description="Certify graphs as small-cut, planar, or TK5.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="emit one verified certificate for a graph")
    p.add_argument("path")
    p.add_argument("--format", choices=["g6", "edgelist"])
    p.add_argument("--json", metavar="OUT", help="write the certificate as JSON ('-' for stdout)")
    p.add_argument("--force-tk5", action="store_true", help="skip the cut and planarity stages")
    p.add_argument("--budget", type=int, help="search-node limit for TK5 search")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.add_argument("--format", choices=["g6", "edgelist"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a graph from a family")
    p.add_argument("family")
    p.add_argument("params", nargs="*", help="key=value parameters")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["g6", "edgelist"], default="edgelist")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sweep", help="run property checks over a corpus")
    p.add_argument("--corpus", action="append", required=True)
    p.add_argument("--props", default="dichotomy")
    p.add_argument("--json", metavar="OUT")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except TheoremViolation as exc:
        print(f"THEOREM VIOLATION: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except (GraphError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
