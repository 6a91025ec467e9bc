"""Benchmark harness: run solver suites in worker processes with a per-instance timeout.

A suite is a JSON object::

    {
      "timeout": 10.0,
      "workers": 2,
      "oracle_check": false,
      "families": [
        {"name": "c5", "family": "substitution", "problem": "mwis", "t": 5,
         "sizes": [20, 40, 60], "seeds": [1, 2]}
      ]
    }

Families: ``substitution`` (cograph modules substituted into C_5),
``cograph``, ``split`` and ``sample`` (needs ``pattern``, ``edge_prob`` and
optionally ``method``). Problems: ``mwis`` (random weights in [1, 100]) and
``scattered`` (needs ``d``).
"""

from __future__ import annotations

import math
import multiprocessing as mp
import random
import statistics
import time
from dataclasses import dataclass

from .errors import CapacityError, GraphInputError
from .graph import Graph, cycle_graph
from .generators import random_cograph, random_split_graph, random_substitution, sample_free_graph
from .oracle import oracle_mwis, oracle_scattered
from .solver import DEFAULT_BRUTE_CUTOFF, solve_mwis_ptfree, solve_scattered_ptfree

FAMILIES = ("substitution", "cograph", "split", "sample")
PROBLEMS = ("mwis", "scattered")


@dataclass(frozen=True)
class InstanceSpec:
    id: str
    family: str
    problem: str
    n: int
    t: int
    d: int | None
    seed: int
    options: tuple[tuple[str, object], ...] = ()

    def option(self, key: str, default=None):
        return dict(self.options).get(key, default)


def expand_suite(config: dict, seed: int = 0) -> list[InstanceSpec]:
    """Turn family entries into concrete instances; ``seed`` shifts every instance seed."""
    specs = []
    for fam in config.get("families", []):
        family = fam.get("family")
        problem = fam.get("problem", "mwis")
        if family not in FAMILIES:
            raise GraphInputError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
        if problem not in PROBLEMS:
            raise GraphInputError(f"unknown problem {problem!r}")
        t = int(fam.get("t", 5))
        d = fam.get("d")
        if problem == "scattered" and d is None:
            raise GraphInputError("scattered families need 'd'")
        name = fam.get("name", family)
        extra = tuple(sorted((k, v) for k, v in fam.items() if k in ("pattern", "edge_prob", "method", "brute_cutoff")))
        for n in fam.get("sizes", []):
            for s in fam.get("seeds", [0]):
                specs.append(
                    InstanceSpec(f"{name}/n{int(n):05d}/s{s}", family, problem, int(n), t, d, int(s) + seed, extra)
                )
    return sorted(specs, key=lambda s: s.id)


def build_instance(spec: InstanceSpec) -> Graph:
    if spec.family == "substitution":
        return random_substitution(cycle_graph(5), spec.n, spec.seed)
    if spec.family == "cograph":
        return random_cograph(spec.n, spec.seed)
    if spec.family == "split":
        return random_split_graph(spec.n, spec.seed)
    return sample_free_graph(
        spec.n,
        spec.option("pattern", f"path:{spec.t}"),
        float(spec.option("edge_prob", 0.2)),
        spec.seed,
        method=spec.option("method", "greedy"),
    )


def run_instance(spec: InstanceSpec, oracle_check: bool = False) -> dict:
    g = build_instance(spec)
    row = {"id": spec.id, "family": spec.family, "problem": spec.problem, "n": g.n, "m": g.m, "t": spec.t, "d": spec.d}
    if spec.problem == "mwis":
        rng = random.Random(spec.seed)
        w = [rng.randint(1, 100) for _ in range(g.n)]
        report = solve_mwis_ptfree(g, w, spec.t, brute_cutoff=int(spec.option("brute_cutoff", DEFAULT_BRUTE_CUTOFF)))
    else:
        w = None
        report = solve_scattered_ptfree(g, spec.t, spec.d)
    row.update(
        value=report.value,
        branch_nodes=report.stats.branch_nodes,
        tw_fallbacks=report.stats.tw_fallbacks,
        wall_time=report.stats.wall_time,
        oracle_match=None,
    )
    if oracle_check:
        try:
            truth = oracle_mwis(g, w)[0] if spec.problem == "mwis" else oracle_scattered(g, spec.d)[0]
            row["oracle_match"] = truth == report.value
        except CapacityError:
            pass
    return row


def _worker(spec: InstanceSpec, oracle_check: bool, conn) -> None:
    try:
        conn.send(run_instance(spec, oracle_check))
    except Exception as exc:  # reported in the row, never fatal to the suite
        conn.send({"id": spec.id, "error": f"{type(exc).__name__}: {exc}"})
    finally:
        conn.close()


def _blank_row(spec: InstanceSpec) -> dict:
    return {
        "id": spec.id, "family": spec.family, "problem": spec.problem, "n": spec.n, "m": None,
        "t": spec.t, "d": spec.d, "value": None, "branch_nodes": None, "tw_fallbacks": None,
        "wall_time": None, "oracle_match": None,
    }


def run_suite(config: dict, seed: int = 0, workers: int | None = None) -> dict:
    """Run every instance; return ``{"rows": [...], "fit": {...} or None}``.

    Rows come back sorted by instance id. A row is flagged ``timed_out`` when
    its worker (instance generation included) ran past the timeout, whether
    it was killed or finished late.
    """
    specs = expand_suite(config, seed)
    timeout = float(config.get("timeout", 60.0))
    limit = max(1, int(workers or config.get("workers", 1)))
    oracle_check = bool(config.get("oracle_check", False))
    rows: dict[str, dict] = {}
    pending = list(specs)
    running: dict[str, tuple] = {}
    while pending or running:
        while pending and len(running) < limit:
            spec = pending.pop(0)
            parent, child = mp.Pipe(duplex=False)
            proc = mp.Process(target=_worker, args=(spec, oracle_check, child), daemon=True)
            proc.start()
            child.close()
            running[spec.id] = (spec, proc, parent, time.monotonic())
        for key, (spec, proc, conn, started) in list(running.items()):
            elapsed = time.monotonic() - started
            if conn.poll():
                try:
                    got = conn.recv()
                except EOFError:
                    got = {"id": spec.id, "error": "worker exited without a result"}
                proc.join()
                row = _blank_row(spec)
                row.update(got)
                row["elapsed"] = elapsed
                row["timed_out"] = elapsed > timeout or (row.get("wall_time") or 0.0) > timeout
                rows[key] = row
            elif elapsed > timeout:
                proc.terminate()
                proc.join()
                rows[key] = dict(_blank_row(spec), elapsed=elapsed, timed_out=True)
            elif not proc.is_alive():
                proc.join()
                rows[key] = dict(_blank_row(spec), elapsed=elapsed, timed_out=False, error="worker died")
            else:
                continue
            conn.close()
            del running[key]
        if running:
            time.sleep(0.002)
    ordered = [rows[s.id] for s in specs]
    return {"rows": ordered, "fit": fit_exponent(ordered)}


def fit_exponent(rows: list[dict]) -> dict | None:
    """Least-squares slope of log2(wall_time) against sqrt(n log n)."""
    pts = [
        (math.sqrt(r["n"] * math.log(r["n"])), math.log2(r["wall_time"]))
        for r in rows
        if not r.get("timed_out") and r.get("wall_time") and r["n"] > 1
    ]
    if len({x for x, _ in pts}) < 2:
        return None
    slope, intercept = statistics.linear_regression([x for x, _ in pts], [y for _, y in pts])
    return {"slope": slope, "intercept": intercept, "points": len(pts), "x": "sqrt(n ln n)", "y": "log2(wall_time)"}
