"""Exact solvers for P_t-free graphs.

Maximum-weight independent set branches on high-degree vertices until the
degree drops below a threshold of order sqrt(n log n / t). Then the graph
has a tree decomposition of width O(t * degree), and a table DP finishes.
Scattered set skips the branching: the peeled decomposition already has
width O(t * sqrt(m)).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .errors import InternalError, NotPtFreeError
from .graph import (
    Graph,
    WeightMap,
    bits,
    check_weights,
    find_induced_path,
    induced_subgraph,
    is_independent,
    is_scattered,
    mask_components,
    popcount,
    to_mask,
)
from .oracle import max_weight_independent
from .treewidth import decompose_bounded_degree, decompose_peeled
from .twdp import ScatteredParams, make_nice, mwis_on_decomposition, scatter_distance, scattered_on_decomposition

DEFAULT_BRUTE_CUTOFF = 20


@dataclass
class SolveStats:
    branch_nodes: int = 0
    tw_fallbacks: int = 0
    max_depth: int = 0
    wall_time: float = 0.0


@dataclass
class SolveReport:
    value: int
    witness: frozenset[int]
    stats: SolveStats = field(default_factory=SolveStats)

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "witness": sorted(self.witness),
            "stats": {
                "branch_nodes": self.stats.branch_nodes,
                "tw_fallbacks": self.stats.tw_fallbacks,
                "max_depth": self.stats.max_depth,
                "wall_time": self.stats.wall_time,
            },
        }


def degree_threshold(n: int, t: int) -> float:
    """sqrt(n ln(n+1) / t): vertices of degree >= its ceiling get branched on."""
    return math.sqrt(n * math.log(n + 1) / t)


def branch_limit(n: int, t: int) -> int:
    # "degree > Delta" with Delta rounded up: branch iff degree > ceil(Delta) - 1
    return math.ceil(degree_threshold(n, t)) - 1


@dataclass(frozen=True)
class Subproblem:
    graph: Graph
    weights: tuple[int, ...]
    labels: tuple[int, ...]  # labels[i] is the original id of vertex i
    credit: int


def branch_on_vertex(g: Graph, w: WeightMap | None, v: int) -> tuple[Subproblem, Subproblem]:
    """Split on ``v``: the first branch drops v, the second takes it and drops N[v]."""
    g.check_vertex(v)
    wt = check_weights(g, w)
    out = []
    for removed, credit in ((1 << v, 0), (g.masks[v] | 1 << v, wt[v])):
        sub, labels = induced_subgraph(g, bits(g.all_mask & ~removed))
        out.append(Subproblem(sub, tuple(wt[i] for i in labels), labels, credit))
    return out[0], out[1]


def _relabelled(exc: NotPtFreeError, labels) -> NotPtFreeError:
    return NotPtFreeError(str(exc), [labels[i] for i in exc.witness])


def _check_free(g: Graph, t: int) -> None:
    path = find_induced_path(g, t)
    if path is not None:
        raise NotPtFreeError(f"graph contains an induced path on {t} vertices", path)


def solve_mwis_ptfree(
    g: Graph,
    w: WeightMap | None,
    t: int,
    *,
    brute_cutoff: int = DEFAULT_BRUTE_CUTOFF,
    verify_free: bool = False,
) -> SolveReport:
    """Maximum-weight independent set of a P_t-free graph.

    Components with at most ``brute_cutoff`` vertices go to exhaustive
    search; set it to 0 to force branching and decomposition everywhere.
    """
    started = time.perf_counter()
    wt = check_weights(g, w)
    if verify_free:
        _check_free(g, t)
    masks = g.masks
    stats = SolveStats()

    def solve(mask: int, depth: int) -> tuple[int, int]:
        total, chosen = 0, 0
        for comp in mask_components(masks, mask):
            val, sel = solve_component(comp, depth)
            total += val
            chosen |= sel
        return total, chosen

    def solve_component(comp: int, depth: int) -> tuple[int, int]:
        stats.max_depth = max(stats.max_depth, depth)
        size = popcount(comp)
        if size <= brute_cutoff:
            return max_weight_independent(masks, comp, wt)
        limit = branch_limit(size, t)
        best_v, best_deg = -1, -1
        for v in bits(comp):
            deg = popcount(masks[v] & comp)
            if deg > best_deg:
                best_v, best_deg = v, deg
        if best_deg > limit:
            stats.branch_nodes += 1
            bit = 1 << best_v
            inc_val, inc_sel = solve(comp & ~masks[best_v] & ~bit, depth + 1)
            inc_val += wt[best_v]
            exc_val, exc_sel = solve(comp & ~bit, depth + 1)
            if inc_val >= exc_val:
                return inc_val, inc_sel | bit
            return exc_val, exc_sel
        stats.tw_fallbacks += 1
        sub, labels = induced_subgraph(g, bits(comp))
        try:
            td = decompose_bounded_degree(sub, t)
        except NotPtFreeError as exc:
            raise _relabelled(exc, labels) from None
        val, sel = mwis_on_decomposition(sub, [wt[i] for i in labels], make_nice(td, sub))
        return val, to_mask(labels[i] for i in sel)

    value, chosen = solve(g.all_mask, 0)
    witness = frozenset(bits(chosen))
    if not is_independent(g, witness) or sum(wt[v] for v in witness) != value:
        raise InternalError("solver witness failed re-verification")
    stats.wall_time = time.perf_counter() - started
    return SolveReport(value, witness, stats)


def solve_scattered_ptfree(
    g: Graph, t: int, params: ScatteredParams | int, *, verify_free: bool = False
) -> SolveReport:
    """Maximum d-scattered set of a P_t-free graph via the peeled decomposition."""
    started = time.perf_counter()
    d = scatter_distance(params)
    if verify_free:
        _check_free(g, t)
    stats = SolveStats()
    value, witness = 0, set()
    for comp in mask_components(g.masks, g.all_mask):
        sub, labels = induced_subgraph(g, bits(comp))
        if sub.n == 1:
            value += 1
            witness.add(labels[0])
            continue
        stats.tw_fallbacks += 1
        try:
            td = decompose_peeled(sub, t)
        except NotPtFreeError as exc:
            raise _relabelled(exc, labels) from None
        val, sel = scattered_on_decomposition(sub, d, make_nice(td, sub))
        value += val
        witness.update(labels[i] for i in sel)
    witness = frozenset(witness)
    if len(witness) != value or not is_scattered(g, witness, d):
        raise InternalError("scattered witness failed re-verification")
    stats.wall_time = time.perf_counter() - started
    return SolveReport(value, witness, stats)
