"""Tree decompositions of P_t-free graphs.

``decompose_bounded_degree`` runs the classic (W, S) recursion of the
4-approximation for treewidth, but replaces its exponential balanced
separator search with :func:`~ptfree.separator.gyarfas_separator`, so the
whole construction is polynomial. ``decompose_peeled`` first strips the
vertices of degree at least ceil(sqrt(m)) and adds them to every bag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import GraphInputError, InternalError, NotPtFreeError
from .graph import Graph, bits, induced_subgraph, mask_components, popcount, to_mask
from .separator import gyarfas_separator


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[tuple[int, ...], ...]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @classmethod
    def build(cls, bags, tree_edges) -> "TreeDecomposition":
        canon_edges = sorted({(min(a, b), max(a, b)) for a, b in tree_edges})
        return cls(tuple(tuple(sorted(set(b))) for b in bags), tuple(canon_edges))


def _tree_adjacency(td: TreeDecomposition) -> list[list[int]]:
    nbr: list[list[int]] = [[] for _ in td.bags]
    for a, b in td.tree_edges:
        nbr[a].append(b)
        nbr[b].append(a)
    return nbr


def tree_shape_defect(td: TreeDecomposition) -> str | None:
    """Why ``tree_edges`` fail to form a tree on the bag indices, or None."""
    k = len(td.bags)
    if k == 0:
        return "tree: no bags"
    for a, b in td.tree_edges:
        if not (0 <= a < k and 0 <= b < k) or a == b:
            return f"tree: bad edge ({a}, {b})"
    if len(set(td.tree_edges)) != k - 1:
        return "tree: edge count is not bags - 1"
    nbr = _tree_adjacency(td)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in nbr[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != k:
        return "tree: bags are not connected"
    return None


def running_intersection_defect(td: TreeDecomposition) -> str | None:
    """(T3): the bags holding any one vertex must form a subtree."""
    nbr = _tree_adjacency(td)
    holders: dict[int, set[int]] = {}
    for i, bag in enumerate(td.bags):
        for v in bag:
            holders.setdefault(v, set()).add(i)
    for v, own in sorted(holders.items()):
        start = min(own)
        reach = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in nbr[x]:
                if y in own and y not in reach:
                    reach.add(y)
                    stack.append(y)
        if reach != own:
            return f"T3: bags holding vertex {v} are not connected"
    return None


def validate_decomposition(g: Graph, td: TreeDecomposition) -> tuple[bool, str | None]:
    """Check the tree property and axioms (T1)-(T3).

    Returns ``(True, None)`` or ``(False, reason)`` naming the first failure.
    """
    why = tree_shape_defect(td)
    if why:
        return False, why
    covered = 0
    bag_masks = []
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not (0 <= v < g.n):
                return False, f"T1: bag {i} holds unknown vertex {v}"
        bm = to_mask(bag)
        bag_masks.append(bm)
        covered |= bm
    for v in range(g.n):
        if not covered >> v & 1:
            return False, f"T1: vertex {v} is in no bag"
    for u, v in g.edges:
        pair = (1 << u) | (1 << v)
        if not any(bm & pair == pair for bm in bag_masks):
            return False, f"T2: edge ({u}, {v}) is in no bag"
    why = running_intersection_defect(td)
    if why:
        return False, why
    return True, None


class _Builder:
    def __init__(self) -> None:
        self.bags: list[int] = []
        self.edges: list[tuple[int, int]] = []

    def add(self, bag_mask: int, parent: int | None) -> int:
        self.bags.append(bag_mask)
        node = len(self.bags) - 1
        if parent is not None:
            self.edges.append((parent, node))
        return node

    def finish(self) -> TreeDecomposition:
        return TreeDecomposition.build([tuple(bits(b)) for b in self.bags], self.edges)


def _decompose_component(g: Graph, comp: int, t: int, builder: _Builder, budget: int | None) -> int:
    """Decompose the connected piece ``comp`` of ``g``; return its root node."""
    masks = g.masks
    delta = max((popcount(masks[v] & comp) for v in bits(comp)), default=0)
    k = (t - 1) * delta if budget is None else budget
    s_cap = 3 * k + 4
    leaf_cap = 4 * k + 5
    root = None
    stack: list[tuple[int, int, int | None]] = [(comp, 0, None)]
    while stack:
        w_mask, s_mask, parent = stack.pop()
        if popcount(w_mask) <= leaf_cap:
            node = builder.add(w_mask, parent)
            root = node if parent is None else root
            continue
        s_size = popcount(s_mask)
        if budget is None and s_size > s_cap:
            raise InternalError(f"|S|={s_size} exceeds 3k+4={s_cap}")
        inner = w_mask & ~s_mask
        if s_size < s_cap:
            low = inner & -inner
            s_hat = s_mask | low
        else:
            sub, labels = induced_subgraph(g, bits(w_mask))
            weights = [1 if s_mask >> v & 1 else 0 for v in labels]
            try:
                sep = gyarfas_separator(sub, 0, weights, t, delta)
            except NotPtFreeError as exc:
                raise NotPtFreeError(str(exc), [labels[i] for i in exc.witness]) from None
            x_mask = to_mask(labels[i] for i in sep.x)
            if not x_mask & ~s_mask:
                if budget is None:
                    raise InternalError("separator fell inside S, contradicting the size argument")
                x_mask |= inner & -inner
            s_hat = s_mask | x_mask
        if budget is None and popcount(s_hat) > leaf_cap:
            raise InternalError("bag exceeds 4k+5 vertices")
        node = builder.add(s_hat, parent)
        root = node if parent is None else root
        for d_mask in reversed(mask_components(masks, w_mask & ~s_hat)):
            nd = 0
            for v in bits(d_mask):
                nd |= masks[v]
            nd &= ~d_mask
            stack.append((d_mask | nd, nd, node))
    assert root is not None
    return root


def decompose_bounded_degree(g: Graph, t: int, *, budget: int | None = None) -> TreeDecomposition:
    """Tree decomposition of width at most 4(t-1)*maxdeg + 4 of a P_t-free graph.

    Raises :class:`NotPtFreeError` (with the induced path as witness) if a
    separator call runs into an induced P_t.

    ``budget`` replaces k = (t-1)*maxdeg in the size thresholds. Small
    values force the separator branch on graphs that would otherwise fit in
    one bag; the output is still a valid decomposition, but the width bound
    and the size checks of the analysis no longer apply.
    """
    if t < 2:
        raise GraphInputError(f"t must be at least 2, got {t}")
    if budget is not None and budget < 0:
        raise GraphInputError(f"budget must be nonnegative, got {budget}")
    builder = _Builder()
    if g.n == 0:
        builder.add(0, None)
        return builder.finish()
    roots = [_decompose_component(g, comp, t, builder, budget) for comp in mask_components(g.masks, g.all_mask)]
    for r in roots[1:]:
        builder.edges.append((roots[0], r))
    return builder.finish()


def peel_threshold(m: int) -> int:
    return max(1, math.isqrt(m - 1) + 1) if m > 0 else 1


def decompose_peeled(g: Graph, t: int) -> TreeDecomposition:
    """Decompose G - X and put X into every bag, X = {v : deg(v) >= ceil(sqrt(m))}."""
    threshold = peel_threshold(g.m)
    peeled = [v for v in range(g.n) if g.degree(v) >= threshold]
    rest, labels = induced_subgraph(g, (v for v in range(g.n) if g.degree(v) < threshold))
    inner = decompose_bounded_degree(rest, t)
    bags = [tuple(labels[i] for i in bag) + tuple(peeled) for bag in inner.bags]
    return TreeDecomposition.build(bags, inner.tree_edges)
