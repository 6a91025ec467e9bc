"""Balanced separators grown along an induced path.

Starting from a root vertex, the separator is the closed neighbourhood of an
induced path that is extended, one vertex at a time, toward the unique
component carrying more than half of the total weight. If the graph has no
induced path on ``t`` vertices ending at the root, the walk stops after at
most ``t - 1`` path vertices, giving a separator of size at most
``(t - 1) * delta + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GraphInputError, InternalError, NotPtFreeError
from .graph import Graph, WeightMap, bits, check_weights, mask_components, popcount


@dataclass(frozen=True)
class SeparatorResult:
    x: frozenset[int]
    components: list[tuple[frozenset[int], int]]
    grown_path: list[int]
    # big component B_i seen before each path vertex was chosen, for auditing
    big_trace: list[frozenset[int]] = field(default_factory=list)

    def max_component_weight(self) -> int:
        return max((w for _, w in self.components), default=0)

    def to_json(self) -> dict:
        return {
            "x": sorted(self.x),
            "components": [{"vertices": sorted(c), "weight": w} for c, w in self.components],
            "grown_path": list(self.grown_path),
        }


def _weight(mask: int, w: tuple[int, ...]) -> int:
    return sum(w[v] for v in bits(mask))


def gyarfas_separator(g: Graph, v0: int, w: WeightMap | None, t: int, delta: int) -> SeparatorResult:
    """Grow an induced path from ``v0`` until no component of G - X is heavy.

    A component is heavy ("big") when its weight exceeds half the total;
    comparisons are done as ``2 * w(C) > w(V)`` so they stay exact.

    Raises :class:`NotPtFreeError` when the path reaches ``t`` vertices,
    which certifies an induced P_t with endpoint ``v0``.
    """
    g.check_vertex(v0)
    if t < 2:
        raise GraphInputError(f"t must be at least 2, got {t}")
    if g.max_degree() > delta:
        raise GraphInputError(f"max degree {g.max_degree()} exceeds the supplied bound delta={delta}")
    if len(mask_components(g.masks, g.all_mask)) != 1:
        raise GraphInputError("separator input graph must be connected")
    wt = check_weights(g, w)
    total = sum(wt)
    masks = g.masks
    everything = g.all_mask

    def big_component(removed: int) -> int:
        found = 0
        for comp in mask_components(masks, everything & ~removed):
            if 2 * _weight(comp, wt) > total:
                if found:
                    raise InternalError("two components each heavier than half the total")
                found = comp
        return found

    path = [v0]
    trace: list[frozenset[int]] = []
    a_mask = 1 << v0
    b_prev = big_component(a_mask)
    if b_prev:
        trace.append(frozenset(bits(b_prev)))
        if not masks[v0] & b_prev:
            raise InternalError("root is not adjacent to the heavy component")
        a_mask |= masks[v0]
        while True:
            b_next = big_component(a_mask)
            if not b_next:
                break
            # v_{i+1} in B_i, adjacent to v_i and to B_{i+1}
            touching = 0
            for u in bits(b_next):
                touching |= masks[u]
            eligible = b_prev & masks[path[-1]] & touching
            if not eligible:
                raise InternalError("no vertex available to extend the path")
            nxt = (eligible & -eligible).bit_length() - 1
            path.append(nxt)
            trace.append(frozenset(bits(b_next)))
            if len(path) >= t:
                raise NotPtFreeError(
                    f"induced path on {t} vertices starting at vertex {v0}", path[:t]
                )
            a_mask |= masks[nxt] | (1 << nxt)
            b_prev = b_next

    comps = [(frozenset(bits(c)), _weight(c, wt)) for c in mask_components(masks, everything & ~a_mask)]
    if popcount(a_mask) > (len(path)) * delta + 1:
        raise InternalError("separator larger than the path bound")
    return SeparatorResult(frozenset(bits(a_mask)), comps, path, trace)
