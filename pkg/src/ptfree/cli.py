"""Command-line entry point.

Every command prints one JSON document on stdout (or a readable table with
``--pretty``). Vertices are 1-based on the command line and in output, as in
the graph files. Exit codes: 0 success, 1 infeasible input or broken promise,
2 bad input or usage, 3 instance beyond a capacity limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .approx import approx_mis_broomfree
from .bench import run_suite
from .errors import CapacityError, GraphInputError, PatternFoundError, SamplingError
from .generators import (
    gen_clawfree_scattered,
    gen_ctfree_scattered,
    gen_p5free_scattered3,
    gen_subdivision,
    sample_free_graph,
)
from .graph import girth
from .oracle import certify_free, exact_treewidth, oracle_mwis, oracle_scattered
from .separator import gyarfas_separator
from .solver import DEFAULT_BRUTE_CUTOFF, solve_mwis_ptfree, solve_scattered_ptfree
from .treewidth import decompose_bounded_degree, decompose_peeled, validate_decomposition

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep control in run() instead of exiting
        raise _UsageError(f"{self.prog}: {message}")


def _one_based(vs) -> list[int]:
    return [v + 1 for v in sorted(vs)]


def _load(args):
    g = io.read_graph(args.graph)
    w = io.parse_weights(Path(args.weights).read_text(), g.n) if getattr(args, "weights", None) else None
    return g, w


# --- commands -----------------------------------------------------------------

def cmd_solve(args) -> tuple[dict, int]:
    g, w = _load(args)
    if args.problem == "mwis":
        rep = solve_mwis_ptfree(g, w, args.t, brute_cutoff=args.brute_cutoff, verify_free=args.verify_free)
    else:
        rep = solve_scattered_ptfree(g, args.t, args.d, verify_free=args.verify_free)
    out = rep.to_json()
    out["witness"] = _one_based(rep.witness)
    return out, EXIT_OK


def cmd_approx(args) -> tuple[dict, int]:
    g = io.read_graph(args.graph)
    rep = approx_mis_broomfree(g, args.d, args.t, brute_force_cap=args.brute_cap, degree_threshold=args.degree_threshold)
    out = rep.to_json()
    out["witness"] = _one_based(rep.witness)
    return out, EXIT_OK


def cmd_oracle(args) -> tuple[dict, int]:
    g, w = _load(args)
    if args.problem == "mis":
        value, wit = oracle_mwis(g)
    elif args.problem == "mwis":
        value, wit = oracle_mwis(g, w)
    else:
        if args.d is None:
            raise GraphInputError("oracle scattered needs --d")
        value, wit = oracle_scattered(g, args.d)
    return {"value": value, "witness": _one_based(wit)}, EXIT_OK


def cmd_treewidth(args) -> tuple[dict, int]:
    g = io.read_graph(args.graph)
    peel = args.peeled or args.mode == "peel"
    td = decompose_peeled(g, args.t) if peel else decompose_bounded_degree(g, args.t, budget=args.budget)
    ok, why = validate_decomposition(g, td)
    out = {"width": td.width, "bags": len(td.bags), "valid": ok, "reason": why}
    if args.exact:
        out["treewidth"] = exact_treewidth(g)
    if args.out:
        Path(args.out).write_text(io.format_td(td, g.n))
        out["out"] = args.out
    return out, EXIT_OK if ok else EXIT_FAIL


def cmd_separator(args) -> tuple[dict, int]:
    g, w = _load(args)
    delta = g.max_degree() if args.delta is None else args.delta
    res = gyarfas_separator(g, args.root - 1, w, args.t, delta)
    return {
        "x": _one_based(res.x),
        "components": [{"vertices": _one_based(c), "weight": wt} for c, wt in res.components],
        "grown_path": [v + 1 for v in res.grown_path],
        "max_component_weight": res.max_component_weight(),
    }, EXIT_OK


def cmd_generate(args) -> tuple[dict, int]:
    source = None
    if args.kind == "sample":
        if args.n is None or args.pattern is None:
            raise GraphInputError("generate sample needs --n and --pattern")
        g_out = sample_free_graph(args.n, args.pattern, args.edge_prob, args.seed, method=args.method)
        promise = {"identity": None, "pattern": args.pattern, "params": {"n": args.n, "edge_prob": args.edge_prob,
                                                                        "method": args.method, "seed": args.seed}}
    else:
        if not args.graph:
            raise GraphInputError(f"generate {args.kind} needs --graph")
        source = io.read_graph(args.graph)
        need = {"clawfree": ["d"], "subdivide": ["g"], "ctfree": ["d", "t"]}.get(args.kind, [])
        missing = [f"--{k}" for k in need if getattr(args, k) is None]
        if missing:
            raise GraphInputError(f"generate {args.kind} needs {' '.join(missing)}")
        if args.kind == "p5free-scattered3":
            red = gen_p5free_scattered3(source)
        elif args.kind == "clawfree":
            red = gen_clawfree_scattered(source, args.d)
        elif args.kind == "subdivide":
            red = gen_subdivision(source, args.g)
        else:
            red = gen_ctfree_scattered(source, args.d, args.t)
        g_out = red.graph
        promise = red.promise.to_json()
    io.write_graph(args.out, g_out)
    sidecar = {"generator": args.kind, "promise": promise, "n": g_out.n, "m": g_out.m}
    if source is not None:
        sidecar["source_sha256"] = io.graph_hash(source)
        sidecar["source_n"], sidecar["source_m"] = source.n, source.m
    side_path = args.out + ".json"
    io.write_sidecar(side_path, sidecar)
    return {"out": args.out, "sidecar": side_path, **sidecar}, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    g = io.read_graph(args.graph)
    out: dict = {}
    ok = True
    if args.pattern:
        free, wit = certify_free(g, args.pattern)
        out["free"] = free
        out["witness"] = None if wit is None else [v + 1 for v in wit]
        ok &= free
    if args.td:
        td, n = io.parse_td(Path(args.td).read_text())
        valid, why = (False, f"decomposition is for {n} vertices, graph has {g.n}") if n != g.n else validate_decomposition(g, td)
        out["td_valid"], out["td_reason"], out["td_width"] = valid, why, td.width
        ok &= valid
    if args.sidecar:
        checks = _check_sidecar(g, io.read_sidecar(args.sidecar), args.source)
        out["promise_checks"] = checks
        ok &= all(c["ok"] for c in checks.values())
    if not out:
        raise GraphInputError("verify needs at least one of --pattern, --td, --sidecar")
    return out, EXIT_OK if ok else EXIT_FAIL


def _check_sidecar(g, sidecar: dict, source_path: str | None) -> dict:
    promise = sidecar.get("promise", {})
    checks = {}
    if promise.get("pattern"):
        free, _ = certify_free(g, promise["pattern"])
        checks["pattern"] = {"ok": free, "pattern": promise["pattern"]}
    if promise.get("max_degree") is not None:
        checks["max_degree"] = {"ok": g.max_degree() <= promise["max_degree"], "actual": g.max_degree()}
    if promise.get("min_girth") is not None:
        gg = girth(g)
        checks["girth"] = {"ok": gg is None or gg >= promise["min_girth"], "actual": gg}
    if source_path and promise.get("identity"):
        source = io.read_graph(source_path)
        if io.graph_hash(source) != sidecar.get("source_sha256"):
            checks["identity"] = {"ok": False, "reason": "source graph hash does not match the sidecar"}
        else:
            alpha = oracle_mwis(source)[0]
            d = promise["d"]
            actual = oracle_mwis(g)[0] if d == 2 else oracle_scattered(g, d)[0]
            expected = alpha + promise["offset"]
            checks["identity"] = {"ok": actual == expected, "expected": expected, "actual": actual}
    return checks


def cmd_bench(args) -> tuple[dict, int]:
    try:
        config = json.loads(Path(args.config).read_text())
    except json.JSONDecodeError as exc:
        raise GraphInputError(f"{args.config}: invalid JSON ({exc})") from None
    if args.oracle_check:
        config["oracle_check"] = True
    report = run_suite(config, seed=args.seed, workers=args.workers)
    if args.out:
        Path(args.out).write_text(json.dumps(report, indent=2) + "\n")
    bad = any(r.get("oracle_match") is False or r.get("error") for r in report["rows"])
    return report, EXIT_FAIL if bad else EXIT_OK


# --- parsing --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ptfree", description="Independent and scattered sets on P_t-free and broom-free graphs.")
    p.add_argument("--seed", type=int, default=0, help="seed for every randomized step")
    p.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="exact solvers for P_t-free graphs")
    s.add_argument("problem", choices=["mwis", "scattered"])
    s.add_argument("--graph", required=True)
    s.add_argument("--weights")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--d", type=int)
    s.add_argument("--brute-cutoff", type=int, default=DEFAULT_BRUTE_CUTOFF)
    s.add_argument("--verify-free", action="store_true", help="check P_t-freeness before solving")
    s.set_defaults(func=cmd_solve)

    a = sub.add_parser("approx", help="d-approximate MIS on broom-free graphs")
    a.add_argument("problem", choices=["broom"])
    a.add_argument("--graph", required=True)
    a.add_argument("--d", type=int, required=True)
    a.add_argument("--t", type=int, required=True)
    a.add_argument("--brute-cap", type=int)
    a.add_argument("--degree-threshold", type=float)
    a.set_defaults(func=cmd_approx)

    o = sub.add_parser("oracle", help="brute-force ground truth")
    o.add_argument("problem", choices=["mis", "mwis", "scattered"])
    o.add_argument("--graph", required=True)
    o.add_argument("--weights")
    o.add_argument("--d", type=int)
    o.set_defaults(func=cmd_oracle)

    t = sub.add_parser("treewidth", help="build and validate a tree decomposition")
    t.add_argument("--graph", required=True)
    t.add_argument("--t", type=int, required=True)
    t.add_argument("--mode", choices=["degree", "peel"], default="degree",
                   help="peel: put high-degree vertices into every bag (for unbounded degree)")
    t.add_argument("--peeled", action="store_true", help="same as --mode peel")
    t.add_argument("--budget", type=int, help="override the (t-1)*maxdeg size parameter")
    t.add_argument("--exact", action="store_true", help="also report the exact treewidth (n <= 16)")
    t.add_argument("--out", help="write the decomposition in 'td' format")
    t.set_defaults(func=cmd_treewidth)

    sp = sub.add_parser("separator", help="balanced separator grown along an induced path")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--root", type=int, default=1)
    sp.add_argument("--weights")
    sp.add_argument("--delta", type=int, help="degree bound (default: the max degree)")
    sp.set_defaults(func=cmd_separator)

    gsub = sub.add_parser("generate", help="reduction instances and random free graphs")
    gsub.add_argument("kind", choices=["p5free-scattered3", "clawfree", "subdivide", "ctfree", "sample"])
    gsub.add_argument("--graph")
    gsub.add_argument("--out", required=True)
    gsub.add_argument("--d", type=int)
    gsub.add_argument("--t", type=int)
    gsub.add_argument("--g", type=int, help="subdivide: 2g new vertices per edge")
    gsub.add_argument("--n", type=int)
    gsub.add_argument("--pattern")
    gsub.add_argument("--edge-prob", type=float, default=0.2)
    gsub.add_argument("--method", choices=["rejection", "greedy", "planted"], default="rejection")
    gsub.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check freeness, decompositions and generator promises")
    v.add_argument("--graph", required=True)
    v.add_argument("--pattern")
    v.add_argument("--td")
    v.add_argument("--sidecar", help="promise file written by generate")
    v.add_argument("--source", help="source graph, to check the promised identity by brute force")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="run a benchmark suite")
    b.add_argument("--config", required=True)
    b.add_argument("--workers", type=int)
    b.add_argument("--oracle-check", action="store_true")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return p


def _pretty(result: dict) -> str:
    if "rows" in result:
        cols = ["id", "n", "m", "t", "d", "value", "branch_nodes", "tw_fallbacks", "wall_time", "timed_out", "oracle_match"]
        cells = [cols] + [
            [f"{r.get(c):.4f}" if isinstance(r.get(c), float) else str(r.get(c, "")) for c in cols] for r in result["rows"]
        ]
        widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
        lines = ["  ".join(x.ljust(wd) for x, wd in zip(row, widths)) for row in cells]
        if result.get("fit"):
            lines.append(f"fitted slope of log2(time) vs sqrt(n ln n): {result['fit']['slope']:.4f}")
        return "\n".join(lines)
    return "\n".join(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}" for k, v in result.items())


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    pretty = False
    try:
        args = parser.parse_args(argv)
        pretty = args.pretty
        result, code = args.func(args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except _UsageError as exc:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        result, code = {"error": str(exc)}, EXIT_INPUT
    except PatternFoundError as exc:
        result, code = {"error": str(exc), "witness": [v + 1 for v in exc.witness]}, EXIT_FAIL
    except SamplingError as exc:
        result, code = {"error": str(exc)}, EXIT_FAIL
    except CapacityError as exc:
        result, code = {"error": str(exc)}, EXIT_CAPACITY
    except (GraphInputError, OSError) as exc:
        result, code = {"error": str(exc)}, EXIT_INPUT
    print(_pretty(result) if pretty else json.dumps(result), file=stdout)
    return code


def main() -> None:
    sys.exit(run())
