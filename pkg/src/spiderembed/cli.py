"""Command-line interface.

Exit codes: 0 embedded / success, 1 proven absent (or invalid
certificate for ``validate``), 2 search budget exhausted, 3 precondition
or input error, 4 proof discrepancy.
"""

import argparse
import json
import os
import sys

from .cycles import DEFAULT_SEARCH_NODES, SearchBudget, max_cycle_through, \
    hamiltonian_cycle
from .embed import embed_4leg_biconnected, embed_any, enumerate_shapes, oracle_embed
from .errors import (BudgetExhaustedError, GraphParseError, PreconditionError,
                     ProofDiscrepancyError)
from .graph import (SpiderEmbedding, SpiderShape, parse_edge_list,
                    serialize_graph, validate_embedding)
from .peel import minimal_dense_subgraph
from .scan import parse_scan_config, run_conjecture_scan


def _default_budget() -> int:
    return int(os.environ.get("SPIDER_BUDGET", DEFAULT_SEARCH_NODES))


def _read_graph(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def _budget(args) -> SearchBudget:
    return SearchBudget(args.budget)


def cmd_peel(args) -> int:
    g = _read_graph(args.graphfile)
    result = minimal_dense_subgraph(g, args.k)
    for v, d in result.removed:
        print(f"removed {v} degree {d}")
    sys.stdout.write(serialize_graph(result.subgraph))
    return 0


def cmd_hamilton(args) -> int:
    g = _read_graph(args.graphfile)
    cert = hamiltonian_cycle(g, _budget(args))
    if cert is None:
        print(json.dumps({"hamiltonian": False}))
        return 1
    print(json.dumps({"hamiltonian": True, "cycle": cert.to_json_obj()}))
    return 0


def cmd_cycle(args) -> int:
    g = _read_graph(args.graphfile)
    cert = max_cycle_through(g, args.through, args.min, _budget(args))
    if cert is None:
        print(json.dumps({"cycle": None}))
        return 1
    print(json.dumps({"cycle": cert.to_json_obj()}))
    return 0


def cmd_embed(args) -> int:
    g = _read_graph(args.graphfile)
    shape = SpiderShape.parse(args.shape)
    outcome = embed_any(g, shape.k, shape, _budget(args),
                        oracle_only=args.oracle_only)
    payload = {
        "embedding": outcome.embedding.to_json_obj() if outcome.embedding else None,
        "trace": outcome.trace.to_json_obj(),
    }
    print(json.dumps(payload))
    return 0 if outcome.embedding is not None else 1


def cmd_embed4(args) -> int:
    g = _read_graph(args.graphfile)
    shape = SpiderShape.parse(args.shape)
    outcome = embed_4leg_biconnected(g, shape, _budget(args))
    print(json.dumps({"embedding": outcome.embedding.to_json_obj(),
                      "trace": outcome.trace.to_json_obj()}))
    return 0


def cmd_oracle(args) -> int:
    g = _read_graph(args.graphfile)
    shape = SpiderShape.parse(args.shape)
    emb = oracle_embed(g, shape, root=args.root, budget=_budget(args))
    if emb is None:
        print(json.dumps({"embedding": None}))
        return 1
    print(json.dumps({"embedding": emb.to_json_obj()}))
    return 0


def cmd_shapes(args) -> int:
    for shape in enumerate_shapes(args.k, args.legs):
        print(",".join(str(l) for l in shape.legs))
    return 0


def cmd_validate(args) -> int:
    g = _read_graph(args.graphfile)
    with open(args.certfile, "r", encoding="utf-8") as fh:
        emb = SpiderEmbedding.from_json_obj(json.load(fh))
    # the certificate's own leg lengths define the shape being claimed
    shape = SpiderShape.from_legs(len(leg) - 1 for leg in emb.legs)
    ok, why = validate_embedding(g, shape, emb)
    print(json.dumps({"valid": ok, "diagnostic": why}))
    return 0 if ok else 1


def cmd_scan(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        cfg = parse_scan_config(fh.read())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as out:
            report = run_conjecture_scan(cfg, out)
    else:
        report = run_conjecture_scan(cfg, sys.stdout)
    print(f"graphs={report.graphs_tested} rows={report.shapes_tested} "
          f"found={report.embeddings_found} "
          f"counterexamples={len(report.counterexamples)} "
          f"discrepancies={len(report.discrepancies)}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spiderembed",
        description="Embed spider trees in dense graphs and scan for "
                    "counterexamples.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_budget(p):
        p.add_argument("--budget", type=int, default=_default_budget(),
                       help="search-node budget (env SPIDER_BUDGET overrides "
                            "the built-in default)")

    p = sub.add_parser("peel", help="extract the dense core by peeling")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("graphfile")
    p.set_defaults(func=cmd_peel)

    p = sub.add_parser("hamilton", help="exact hamiltonian-cycle search")
    add_budget(p)
    p.add_argument("graphfile")
    p.set_defaults(func=cmd_hamilton)

    p = sub.add_parser("cycle", help="maximum cycle through a vertex")
    p.add_argument("--through", type=int, required=True)
    p.add_argument("--min", type=int, default=1,
                   help="length the caller expects; informational only")
    add_budget(p)
    p.add_argument("graphfile")
    p.set_defaults(func=cmd_cycle)

    p = sub.add_parser("embed", help="embed a spider via the full pipeline")
    p.add_argument("--shape", required=True, help="comma-separated leg lengths")
    p.add_argument("--oracle-only", action="store_true",
                   help="skip the constructive routes")
    add_budget(p)
    p.add_argument("graphfile")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("embed4", help="4-leg case machine on a 2-connected graph")
    p.add_argument("--shape", required=True)
    add_budget(p)
    p.add_argument("graphfile")
    p.set_defaults(func=cmd_embed4)

    p = sub.add_parser("oracle", help="exhaustive embedding oracle")
    p.add_argument("--shape", required=True)
    p.add_argument("--root", type=int, default=None)
    add_budget(p)
    p.add_argument("graphfile")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("shapes", help="enumerate spider shapes of size k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--legs", type=int, default=None)
    p.set_defaults(func=cmd_shapes)

    p = sub.add_parser("validate", help="check an embedding certificate")
    p.add_argument("graphfile")
    p.add_argument("certfile")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("scan", help="run a conjecture scan from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None, help="write the JSONL report here")
    p.set_defaults(func=cmd_scan)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ProofDiscrepancyError as exc:
        print(f"proof discrepancy: {exc}", file=sys.stderr)
        if exc.trace is not None:
            print(json.dumps(exc.trace.to_json_obj()), file=sys.stderr)
        return 4
    except (GraphParseError, PreconditionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
