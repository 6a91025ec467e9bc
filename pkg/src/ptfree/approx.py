"""d-approximate maximum independent set on broom-free graphs.

Every step except one is an exhaustive branching, so it keeps the optimum
of its subproblem. The lossy step takes a maximum independent set ``I_A`` of
``G - B`` greedily, where ``B`` is the giant component left after removing
a small connected neighbourhood. That step loses at most ``d * |I_A|``
because no vertex of ``N(B)`` sees ``d`` independent vertices inside ``B``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import GraphInputError, InternalError, NotBroomFreeError, NotPtFreeError
from .graph import Graph, bits, delete_vertices, induced_subgraph, is_independent, mask_components, popcount, to_mask
from .oracle import max_weight_independent, oracle_mwis
from .separator import gyarfas_separator

HIGH_DEGREE = "high-degree-branch"
SMALL_NA0 = "small-N[A0]-branch"
L_SMALL_D = "L-found-small-D-branch"
L_SEPARATOR = "L-found-separator-branch"
GREEDY = "greedy-IA"
BRUTE = "brute-force"


@dataclass(frozen=True)
class GreedyStep:
    component: frozenset[int]
    b: frozenset[int]
    i_a: frozenset[int]


@dataclass
class ApproxReport:
    value: int
    witness: frozenset[int]
    case_trace: list[str] = field(default_factory=list)
    greedy_steps: list[GreedyStep] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"value": self.value, "witness": sorted(self.witness), "case_trace": list(self.case_trace)}


def default_brute_force_cap(d: int, t: int) -> int:
    return (2 * d * t) ** 4


def _closed(masks, s: int) -> int:
    out = s
    for v in bits(s):
        out |= masks[v]
    return out


def _independent_subsets(masks, x: int):
    """All independent subsets of ``x``, as masks, the empty set first."""
    order = list(bits(x))

    def rec(i: int, chosen: int, banned: int):
        if i == len(order):
            yield chosen
            return
        yield from rec(i + 1, chosen, banned)
        v = order[i]
        if not banned >> v & 1:
            yield from rec(i + 1, chosen | 1 << v, banned | masks[v])

    yield from rec(0, 0, 0)


def _find_independent(masks, cand: int, size: int, chosen: int = 0) -> int | None:
    """Lexicographically first independent subset of ``cand`` with ``size`` vertices."""
    if size == 0:
        return chosen
    if popcount(cand) < size:
        return None
    for v in bits(cand):
        found = _find_independent(masks, cand & ~masks[v] & ~((1 << (v + 1)) - 1), size - 1, chosen | 1 << v)
        if found is not None:
            return found
    return None


def approx_mis_broomfree(
    g: Graph,
    d: int,
    t: int,
    *,
    brute_force_cap: int | None = None,
    degree_threshold: float | None = None,
) -> ApproxReport:
    """Independent set of size at least alpha(g) / d on a broom-free graph.

    ``brute_force_cap`` and ``degree_threshold`` shrink the exhaustive-search
    size and the high-degree cutoff so that small graphs reach the
    structural cases. The size assertions of the analysis are only checked
    when both are left at their defaults.

    Raises :class:`NotBroomFreeError` with an induced broom (handle first,
    then leaves) if the separator step finds a long path from ``v``.
    """
    if d < 2 or t < 2:
        raise GraphInputError(f"d and t must be at least 2, got d={d}, t={t}")
    cap = default_brute_force_cap(d, t) if brute_force_cap is None else brute_force_cap
    strict = brute_force_cap is None and degree_threshold is None
    masks = g.masks
    ones = (1,) * g.n
    trace: list[str] = []
    greedy: list[GreedyStep] = []
    memo: dict[int, int] = {}

    def solve(mask: int) -> int:
        chosen = 0
        for comp in mask_components(masks, mask):
            chosen |= solve_component(comp)
        return chosen

    def branch_on(comp: int, x: int) -> int:
        best, best_size = 0, -1
        rest = comp & ~x
        for sub in _independent_subsets(masks, x & comp):
            cand = sub | solve(rest & ~_closed(masks, sub))
            if popcount(cand) > best_size:
                best, best_size = cand, popcount(cand)
        return best

    def solve_component(comp: int) -> int:
        if comp in memo:
            return memo[comp]
        memo[comp] = result = structured(comp)
        return result

    def structured(comp: int) -> int:
        n = popcount(comp)
        if n <= cap:
            trace.append(BRUTE)
            return max_weight_independent(masks, comp, ones)[1]
        delta = n ** 0.25 / (2 * d * t) if degree_threshold is None else degree_threshold
        top_v, top_deg = -1, -1
        for v in bits(comp):
            deg = popcount(masks[v] & comp)
            if deg > top_deg:
                top_v, top_deg = v, deg
        if top_deg > delta:
            trace.append(HIGH_DEGREE)
            bit = 1 << top_v
            inc = bit | solve(comp & ~masks[top_v] & ~bit)
            exc = solve(comp & ~bit)
            return inc if popcount(inc) >= popcount(exc) else exc

        root_n = math.sqrt(n)
        a0 = comp & -comp
        na0 = _closed(masks, a0) & comp
        while popcount(na0) < root_n:
            frontier = na0 & ~a0
            a0 |= frontier & -frontier
            na0 = _closed(masks, a0) & comp
        if strict and popcount(na0) > root_n + delta:
            raise InternalError("|N[A0]| exceeds sqrt(n) + Delta")

        pieces = mask_components(masks, comp & ~na0)
        b = max(pieces, key=popcount, default=0)
        if popcount(b) < n - n ** 0.75:
            if strict and popcount(na0) > 2 * root_n:
                raise InternalError("|N[A0]| exceeds 2 sqrt(n)")
            trace.append(SMALL_NA0)
            return branch_on(comp, na0)

        s = _closed(masks, b) & comp & ~b
        a1 = next(c for c in mask_components(masks, comp & ~s) if c & a0)
        for v in bits(s):
            leaves = _find_independent(masks, masks[v] & b, d)
            if leaves is None:
                continue
            nl_minus_v = _closed(masks, leaves) & comp & ~(1 << v)
            dmask = next(c for c in mask_components(masks, comp & ~nl_minus_v) if c & a1)
            if strict and popcount(dmask) < root_n / 2:
                raise InternalError("|D| below sqrt(n) / 2")
            if popcount(dmask) < n - root_n:
                trace.append(L_SMALL_D)
                return branch_on(comp, nl_minus_v)
            return separator_branch(comp, v, leaves, nl_minus_v, dmask, delta)

        trace.append(GREEDY)
        i_a = max_weight_independent(masks, comp & ~b, ones)[1]
        greedy.append(GreedyStep(frozenset(bits(comp)), frozenset(bits(b)), frozenset(bits(i_a))))
        return i_a | solve(comp & ~_closed(masks, i_a))

    def separator_branch(comp: int, v: int, leaves: int, nl_minus_v: int, dmask: int, delta: float) -> int:
        sub, labels = induced_subgraph(g, bits(dmask))
        root = labels.index(v)
        try:
            sep = gyarfas_separator(sub, root, None, t, sub.max_degree())
        except NotPtFreeError as exc:
            path = [labels[i] for i in exc.witness]
            raise NotBroomFreeError(
                f"induced broom B({d},{t}): path from {v} plus {d} leaves", path[::-1] + list(bits(leaves))
            ) from None
        x_d = to_mask(labels[i] for i in sep.x)
        if strict and popcount(x_d) > (t - 1) * delta + 1:
            raise InternalError("|X_D| exceeds (t-1) Delta + 1")
        x = x_d | nl_minus_v
        if strict and any(popcount(c) > popcount(comp) / 2 for c in mask_components(masks, comp & ~x)):
            raise InternalError("component above n/2 after the separator branch")
        trace.append(L_SEPARATOR)
        return branch_on(comp, x)

    chosen = solve(g.all_mask)
    witness = frozenset(bits(chosen))
    if not is_independent(g, witness):
        raise InternalError("approximate witness is not independent")
    return ApproxReport(len(witness), witness, trace, greedy)


def greedy_step_bound_check(g: Graph, b, i_a, d: int) -> bool:
    """Whether alpha(g) - alpha(g - N[i_a]) <= d |i_a|, by brute force."""
    i_a = set(i_a)
    closed = set(i_a)
    for v in i_a:
        closed.update(g.neighbors(v))
    rest, _ = delete_vertices(g, closed)
    return oracle_mwis(g)[0] - oracle_mwis(rest)[0] <= d * len(i_a)
