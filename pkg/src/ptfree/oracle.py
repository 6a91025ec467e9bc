"""Brute-force ground truth, kept deliberately simple.

The decomposition and table DP share no code with this module. The solvers
do reuse :func:`max_weight_independent` for tiny components, so equivalence
tests switch that shortcut off.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapacityError, GraphInputError
from .graph import (
    Graph,
    WeightMap,
    bfs_distances,
    bits,
    broom,
    check_weights,
    claw,
    cycle_graph,
    find_induced,
    find_induced_path,
    path_graph,
)

ENV_MAX_N = "PTFREE_ORACLE_MAX_N"


@dataclass(frozen=True)
class OracleLimit:
    max_n_mis: int = 22
    max_n_scattered: int = 16

    def __post_init__(self) -> None:
        if self.max_n_mis <= 0 or self.max_n_scattered <= 0:
            raise GraphInputError("oracle limits must be positive")

    @classmethod
    def from_env(cls) -> "OracleLimit":
        raw = os.environ.get(ENV_MAX_N)
        if not raw:
            return cls()
        try:
            n = int(raw)
        except ValueError:
            raise GraphInputError(f"{ENV_MAX_N} must be an integer, got {raw!r}") from None
        return cls(max_n_mis=n, max_n_scattered=n)


def max_weight_independent(masks, cand: int, weights) -> tuple[int, int]:
    """Exhaustive include/exclude search over ``cand`` with a sum bound.

    Returns ``(value, witness_mask)``. Vertices are decided lowest first,
    including before excluding, and only strict improvements replace the
    incumbent, so the witness is the first optimum in that order.
    """
    best_val = -1
    best_set = 0

    def rest_weight(c: int) -> int:
        return sum(weights[v] for v in bits(c))

    def search(c: int, val: int, chosen: int) -> None:
        nonlocal best_val, best_set
        if val + rest_weight(c) <= best_val:
            return
        if not c:
            best_val, best_set = val, chosen
            return
        low = c & -c
        v = low.bit_length() - 1
        search(c & ~masks[v] & ~low, val + weights[v], chosen | low)
        search(c & ~low, val, chosen)

    search(cand, 0, 0)
    return best_val, best_set


def oracle_mwis(g: Graph, w: WeightMap | None = None, limit: OracleLimit | None = None) -> tuple[int, frozenset[int]]:
    limit = limit or OracleLimit.from_env()
    if g.n > limit.max_n_mis:
        raise CapacityError(f"oracle_mwis capped at n={limit.max_n_mis}, got n={g.n}")
    wt = check_weights(g, w)
    value, chosen = max_weight_independent(g.masks, g.all_mask, wt)
    return value, frozenset(bits(chosen))


def oracle_scattered(g: Graph, d: int, limit: OracleLimit | None = None) -> tuple[int, frozenset[int]]:
    """Largest vertex set with all pairwise distances at least ``d``."""
    limit = limit or OracleLimit.from_env()
    if d < 2:
        raise GraphInputError(f"d must be at least 2, got {d}")
    if g.n > limit.max_n_scattered:
        raise CapacityError(f"oracle_scattered capped at n={limit.max_n_scattered}, got n={g.n}")
    conflict = []
    for v in range(g.n):
        mask = 0
        for u, dist in enumerate(bfs_distances(g, v)):
            if dist is not None and 0 < dist < d:
                mask |= 1 << u
        conflict.append(mask)
    value, chosen = max_weight_independent(conflict, g.all_mask, (1,) * g.n)
    return value, frozenset(bits(chosen))


def parse_pattern(spec: str | tuple) -> tuple:
    """Normalise ``"path:5"``, ``"cycle:4"``, ``"claw"``, ``"broom:2:3"`` or tuples."""
    if isinstance(spec, str):
        head, *rest = spec.strip().lower().split(":")
        try:
            spec = (head, *(int(x) for x in rest))
        except ValueError:
            raise GraphInputError(f"bad pattern {spec!r}") from None
    kind = spec[0]
    arity = {"path": 2, "cycle": 2, "claw": 1, "broom": 3}
    if kind not in arity or len(spec) != arity[kind]:
        raise GraphInputError(f"bad pattern {spec!r}; expected path:t, cycle:t, claw or broom:d:t")
    return tuple(spec)


def pattern_graph(spec: str | tuple) -> Graph:
    kind, *args = parse_pattern(spec)
    if kind == "path":
        return path_graph(args[0])
    if kind == "cycle":
        return cycle_graph(args[0])
    if kind == "claw":
        return claw()
    return broom(args[0], args[1])


def certify_free(g: Graph, pattern: str | tuple) -> tuple[bool, list[int] | None]:
    """``(True, None)`` if ``g`` is pattern-free, else ``(False, embedding)``."""
    kind, *args = parse_pattern(pattern)
    if kind == "path":
        witness = find_induced_path(g, args[0])
    else:
        witness = find_induced(g, pattern_graph(pattern))
    return witness is None, witness


def exact_treewidth(g: Graph) -> int:
    """Treewidth by the subset recurrence over elimination prefixes; tiny graphs only."""
    n = g.n
    if n == 0:
        return -1
    if n > 16:
        raise CapacityError(f"exact_treewidth capped at n=16, got n={n}")
    masks = g.masks

    def q_size(s: int, v: int) -> int:
        # vertices outside s + v reachable from v through s
        seen = 1 << v
        frontier = 1 << v
        out = 0
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= masks[u]
            nxt &= ~seen
            seen |= nxt
            out |= nxt & ~s
            frontier = nxt & s
        return bin(out).count("1")

    @lru_cache(maxsize=None)
    def tw(s: int) -> int:
        if not s:
            return -1
        best = n
        for v in bits(s):
            rest = s & ~(1 << v)
            best = min(best, max(tw(rest), q_size(rest, v)))
        return best

    return tw((1 << n) - 1)
