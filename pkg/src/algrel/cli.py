"""Command line interface.

Exit codes: 0 success, 2 usage error, 3 schema error, 4 precondition error,
5 resource-guard refusal, 6 dual route not admitted.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import builders
from .errors import PreconditionError, ResourceLimitError, SchemaError, UnsupportedRouteError
from .oracle import exhaustive_probability, monte_carlo_probability
from .systemfile import dump_system, load_system, validate

EXIT_OK, EXIT_USAGE, EXIT_SCHEMA, EXIT_PRECONDITION, EXIT_RESOURCE, EXIT_ROUTE = 0, 2, 3, 4, 5, 6


class UsageError(Exception):
    pass


def _load(args):
    sys_ = load_system(args.system)
    if not 1 <= args.level <= sys_.levels:
        raise UsageError(f"--level must be in 1..{sys_.levels}, got {args.level}")
    return sys_


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def cmd_compute(args) -> dict:
    s = _load(args)
    j = args.level
    route = s.route_for(j, args.route)
    rel = s.reliability(j, route)
    hn = s.numerator(j, route)
    return {
        "command": "compute",
        "system": str(args.system),
        "kind": s.kind,
        "level": j,
        "route": route,
        "reliability": rel,
        "unreliability": 1.0 - rel,
        "primal_generators": len(s.ideal(j)),
        "dual_generators": len(s.dual_ideal(j)),
        "numerator_summands": len(hn),
        "summands_by_dimension": {str(k): v for k, v in hn.counts_by_dimension().items()},
    }


def _rows(bounds) -> list[dict]:
    return [{"t": b.t, "value": b.value, "kind": b.kind} for b in bounds]


def cmd_bounds(args) -> dict:
    s = _load(args)
    j = args.level
    route = s.route_for(j, args.route)
    return {
        "command": "bounds",
        "system": str(args.system),
        "kind": s.kind,
        "level": j,
        "route": route,
        "reliability_bounds": _rows(s.reliability_bounds(j, route)),
        "unreliability_bounds": _rows(s.unreliability_bounds(j, route)),
        "gn_max_min_path_bound": s.gn_max_min_path_bound(j),
        "gn_coproduct_min_cuts_bound": s.gn_coproduct_min_cuts_bound(j),
    }


def _vectors(args, what: str) -> dict:
    s = _load(args)
    vecs = s.minimal_paths(args.level) if what == "paths" else s.minimal_cuts(args.level)
    out = {
        "command": what,
        "system": str(args.system),
        "kind": s.kind,
        "level": args.level,
        "count": len(vecs),
        "vectors": [list(v) for v in vecs],
    }
    if not vecs:
        out["notice"] = f"no minimal {what} at level {args.level}"
    return out


def cmd_oracle(args) -> dict:
    s = _load(args)
    if args.method == "exhaustive":
        res = exhaustive_probability(s, args.level)
    else:
        if args.seed is None:
            raise UsageError("--seed is required for --method mc")
        res = monte_carlo_probability(s, args.level, args.samples, args.seed)
    rel = res.value if s.kind == "path" else 1.0 - res.value
    out = {
        "command": "oracle",
        "system": str(args.system),
        "kind": s.kind,
        "level": args.level,
        "method": res.method,
        "ideal_probability": res.value,
        "reliability": rel,
        "unreliability": 1.0 - rel,
    }
    if res.method == "monte-carlo":
        out.update(samples=res.samples, seed=res.seed, stderr=res.stderr, rng=res.rng)
    return out


def cmd_gen(args) -> dict:
    rng = np.random.default_rng(args.seed)
    if args.model in ("er", "ba"):
        if args.model == "er":
            g = builders.random_graph("er", args.vertices, args.p, args.seed)
        else:
            g = builders.random_graph("ba", args.vertices, args.m, args.seed)
        m = len(g.edges)
        if m == 0:
            raise PreconditionError("generated graph has no edges")
        doc = {
            "kind": "path",
            "n": m,
            "levels": 1,
            "component_caps": [1] * m,
            "probabilities": [[args.edge_prob] for _ in range(m)],
            "builder": {"type": "network", "graph": g.to_dict()},
        }
    else:
        if args.k:
            spec = builders.KofNSpec(args.n, tuple(args.k))
        else:
            spec = builders.random_kofn_spec(args.n, args.levels, rng)
        table = builders.random_table([spec.levels] * spec.n, rng)
        doc = {
            "kind": "path",
            "n": spec.n,
            "levels": spec.levels,
            "component_caps": [spec.levels] * spec.n,
            "probabilities": [list(r) for r in table.rows],
            "builder": {"type": "kofn", "k": list(spec.k)},
        }
    validate(doc)
    dump_system(doc, args.output)
    return {"command": "gen", "model": args.model, "seed": args.seed, "output": str(args.output), "components": doc["n"]}


def _text(report: dict) -> str:
    lines = []
    for key, val in report.items():
        if isinstance(val, float):
            lines.append(f"{key}: {_fmt(val)}")
        elif key.endswith("_bounds"):
            lines.append(f"{key}:")
            for r in val:
                lines.append(f"  t={r['t']:<3d} {_fmt(r['value'])}  {r['kind']}")
        elif key == "vectors":
            lines.append("vectors:")
            lines.extend("  " + " ".join(str(e) for e in v) for v in val)
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="algrel", description="Algebraic reliability of multi-state coherent systems.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, route_default=None):
        sp.add_argument("--system", required=True, help="system definition (JSON)")
        sp.add_argument("--level", required=True, type=int)
        if route_default:
            sp.add_argument("--route", choices=["auto", "primal", "dual"], default=route_default)
        sp.add_argument("--format", choices=["json", "text"], default="json")

    common(sub.add_parser("compute", help="reliability and unreliability at a level"), "auto")
    common(sub.add_parser("bounds", help="truncation bounds plus max-min path and min-cut product lower bounds"), "primal")
    common(sub.add_parser("paths", help="minimal paths at a level"))
    common(sub.add_parser("cuts", help="minimal cuts at a level"))
    o = sub.add_parser("oracle", help="exhaustive or Monte-Carlo ground truth")
    common(o)
    o.add_argument("--method", choices=["exhaustive", "mc"], required=True)
    o.add_argument("--samples", type=int, default=10**6)
    o.add_argument("--seed", type=int)

    g = sub.add_parser("gen", help="generate a random system file")
    g.add_argument("--model", choices=["er", "ba", "kofn"], required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("-o", "--output", required=True)
    g.add_argument("--vertices", type=int, default=40)
    g.add_argument("--p", type=float, default=0.05, help="ER edge probability")
    g.add_argument("--m", type=int, default=4, help="BA attachment count")
    g.add_argument("--edge-prob", type=float, default=0.9, help="working probability of every edge")
    g.add_argument("--n", type=int, default=10, help="k-out-of-n component count")
    g.add_argument("--levels", type=int, default=4, help="k-out-of-n level count")
    g.add_argument("--k", type=int, nargs="+", help="k-out-of-n thresholds (random if omitted)")
    g.add_argument("--format", choices=["json", "text"], default="json")
    return p


COMMANDS = {
    "compute": cmd_compute,
    "bounds": cmd_bounds,
    "paths": lambda a: _vectors(a, "paths"),
    "cuts": lambda a: _vectors(a, "cuts"),
    "oracle": cmd_oracle,
    "gen": cmd_gen,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"algrel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SchemaError as exc:
        print(f"algrel: schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except UnsupportedRouteError as exc:
        print(f"algrel: unsupported route: {exc}", file=sys.stderr)
        return EXIT_ROUTE
    except ResourceLimitError as exc:
        print(f"algrel: refused: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except PreconditionError as exc:
        print(f"algrel: precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"algrel: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(_text(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
