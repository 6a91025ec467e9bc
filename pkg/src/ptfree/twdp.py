"""Dynamic programming over nice tree decompositions.

Two problems are solved here: maximum-weight independent set and
d-scattered set (pairwise distance at least d).

The scattered-set tables label every bag vertex with its distance to the
solution, capped at ``r + 1`` where ``r = (d - 1) // 2``. Labels are checked
locally: adjacent labels differ by at most one, and a vertex with label
``j`` in ``1..r`` needs a neighbour labelled ``j - 1``. Together these force
the labels to be the true capped distances. Pairwise distance is then
enforced through "close" edges (label sum at most ``d - 2``): a set is
d-scattered exactly when no component of the close-edge graph holds two
solution vertices. Labels alone cannot see that (a 4-cycle with one chosen
vertex and an 8-cycle with two antipodal ones look identical everywhere),
so each state also carries the partition of bag vertices into close-edge
components of the processed graph, plus a flag per class telling whether it
already contains a forgotten solution vertex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GraphInputError
from .graph import Graph, WeightMap, bits, check_weights, to_mask
from .treewidth import (
    TreeDecomposition,
    running_intersection_defect,
    tree_shape_defect,
    validate_decomposition,
)

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass(frozen=True)
class ScatteredParams:
    d: int

    def __post_init__(self) -> None:
        if not isinstance(self.d, int) or self.d < 2:
            raise GraphInputError(f"d must be an integer >= 2, got {self.d!r}")


def scatter_distance(params: "ScatteredParams | int") -> int:
    return params.d if isinstance(params, ScatteredParams) else ScatteredParams(params).d


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: tuple[int, ...]
    vertex: int | None = None
    children: tuple[int, ...] = ()


@dataclass(frozen=True)
class NiceDecomposition:
    """Nodes are stored children-first; the last node is the root (empty bag)."""

    nodes: tuple[NiceNode, ...]

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max(len(x.bag) for x in self.nodes) - 1

    def to_tree_decomposition(self) -> TreeDecomposition:
        edges = [(i, c) for i, node in enumerate(self.nodes) for c in node.children]
        return TreeDecomposition.build([x.bag for x in self.nodes], edges)

    def check(self) -> str | None:
        """Return a description of the first structural defect, or None."""
        for i, x in enumerate(self.nodes):
            if any(c >= i for c in x.children):
                return f"node {i}: child index not below parent"
            kids = [self.nodes[c].bag for c in x.children]
            if x.kind == LEAF:
                if x.children or x.bag:
                    return f"node {i}: leaf must be childless with an empty bag"
            elif x.kind == INTRODUCE:
                if len(kids) != 1 or x.vertex in kids[0] or set(x.bag) != set(kids[0]) | {x.vertex}:
                    return f"node {i}: bad introduce"
            elif x.kind == FORGET:
                if len(kids) != 1 or x.vertex in x.bag or set(kids[0]) != set(x.bag) | {x.vertex}:
                    return f"node {i}: bad forget"
            elif x.kind == JOIN:
                if len(kids) != 2 or any(k != x.bag for k in kids):
                    return f"node {i}: bad join"
            else:
                return f"node {i}: unknown kind {x.kind!r}"
        if self.nodes[self.root].bag:
            return "root bag is not empty"
        return None


def _graph_aware_order(vertices: list[int], g: Graph | None, present: int) -> list[int]:
    if g is None or len(vertices) < 2:
        return vertices
    order = []
    have = present
    left = set(vertices)
    while left:
        v = min(left, key=lambda x: (-bin(g.masks[x] & have).count("1"), x))
        order.append(v)
        have |= 1 << v
        left.remove(v)
    return order


def make_nice(td: TreeDecomposition, g: Graph | None = None) -> NiceDecomposition:
    """Convert ``td`` into a nice decomposition of the same width.

    With ``g`` supplied the input is validated against it and vertices
    introduced in one run are ordered so each new vertex sees as many
    already-present neighbours as possible, which keeps DP tables small.
    """
    if g is not None:
        ok, why = validate_decomposition(g, td)
        if not ok:
            raise GraphInputError(f"invalid tree decomposition: {why}")
    else:
        why = tree_shape_defect(td) or running_intersection_defect(td)
        if why:
            raise GraphInputError(f"invalid tree decomposition: {why}")

    k = len(td.bags)
    nbr: list[list[int]] = [[] for _ in range(k)]
    for a, b in td.tree_edges:
        nbr[a].append(b)
        nbr[b].append(a)
    parent = [-1] * k
    order = [0]
    seen = {0}
    for x in order:
        for y in sorted(nbr[x]):
            if y not in seen:
                seen.add(y)
                parent[y] = x
                order.append(y)
    kids: list[list[int]] = [[] for _ in range(k)]
    for y in order[1:]:
        kids[parent[y]].append(y)

    nodes: list[NiceNode] = []

    def push(node: NiceNode) -> int:
        nodes.append(node)
        return len(nodes) - 1

    def morph(top: int, bag: tuple[int, ...], target: tuple[int, ...]) -> int:
        cur = list(bag)
        for v in sorted(set(bag) - set(target)):
            cur.remove(v)
            top = push(NiceNode(FORGET, tuple(cur), v, (top,)))
        missing = sorted(set(target) - set(bag))
        for v in _graph_aware_order(missing, g, to_mask(cur)):
            cur = sorted(cur + [v])
            top = push(NiceNode(INTRODUCE, tuple(cur), v, (top,)))
        return top

    top_of: dict[int, int] = {}
    for x in reversed(order):
        bag = td.bags[x]
        if not kids[x]:
            top_of[x] = morph(push(NiceNode(LEAF, ())), (), bag)
            continue
        branches = [morph(top_of[c], td.bags[c], bag) for c in kids[x]]
        top = branches[0]
        for other in branches[1:]:
            top = push(NiceNode(JOIN, bag, None, (top, other)))
        top_of[x] = top
    morph(top_of[0], td.bags[0], ())
    return NiceDecomposition(tuple(nodes))


# -- maximum-weight independent set -------------------------------------------


def mwis_on_decomposition(g: Graph, w: WeightMap | None, nd: NiceDecomposition) -> tuple[int, frozenset[int]]:
    """Maximum weight of an independent set, with a witness.

    States are independent subsets of the bag (as bitmasks); a vertex's
    weight is collected when it is forgotten, so joins never double count.
    """
    wt = check_weights(g, w)
    masks = g.masks
    tables: list[dict[int, int] | None] = [None] * len(nd.nodes)
    back: dict[int, dict[int, int]] = {}
    for i, node in enumerate(nd.nodes):
        if node.kind == LEAF:
            tables[i] = {0: 0}
        elif node.kind == INTRODUCE:
            child = tables[node.children[0]]
            v = node.vertex
            bit = 1 << v
            table = {}
            for s, val in child.items():
                table[s] = val
                if not masks[v] & s:
                    table[s | bit] = val
            tables[i] = table
        elif node.kind == FORGET:
            child = tables[node.children[0]]
            v = node.vertex
            bit = 1 << v
            table = {}
            ptr = {}
            for s in sorted(child):
                val = child[s] + (wt[v] if s & bit else 0)
                key = s & ~bit
                if key not in table or val > table[key]:
                    table[key] = val
                    ptr[key] = s
            tables[i] = table
            back[i] = ptr
        else:
            left, right = tables[node.children[0]], tables[node.children[1]]
            tables[i] = {s: val + right[s] for s, val in left.items() if s in right}
        for c in node.children:
            tables[c] = None

    value = tables[nd.root][0]
    chosen = []
    stack = [(nd.root, 0)]
    while stack:
        i, s = stack.pop()
        node = nd.nodes[i]
        if node.kind == INTRODUCE:
            stack.append((node.children[0], s & ~(1 << node.vertex)))
        elif node.kind == FORGET:
            s_child = back[i][s]
            if s_child >> node.vertex & 1:
                chosen.append(node.vertex)
            stack.append((node.children[0], s_child))
        elif node.kind == JOIN:
            stack.extend((c, s) for c in node.children)
    return value, frozenset(chosen)


# -- d-scattered set -----------------------------------------------------------

# A state is (labels, witnessed, classes, flagged):
#   labels[i]    capped distance of bag[i] to the solution
#   witnessed[i] bag[i] already has a neighbour one step closer (or needs none)
#   classes[i]   close-edge class of bag[i], canonically numbered 0, 1, ...
#   flagged[c]   class c contains an already-forgotten solution vertex


def _canon(classes: list[int], flags: dict[int, bool]) -> tuple[tuple[int, ...], tuple[bool, ...]]:
    rename: dict[int, int] = {}
    out = []
    for c in classes:
        if c not in rename:
            rename[c] = len(rename)
        out.append(rename[c])
    fl = [False] * len(rename)
    for old, new in rename.items():
        fl[new] = flags.get(old, False)
    return tuple(out), tuple(fl)


class _Scattered:
    def __init__(self, g: Graph, d: int):
        self.g = g
        self.d = d
        self.cap = (d - 1) // 2 + 1
        self.close = d - 2

    def needs_witness(self, label: int) -> bool:
        return 0 < label < self.cap

    def introduce(self, state, bag, pos, v, a):
        labels, wit, classes, flags = state
        cap = self.cap
        vmask = self.g.masks[v]
        nbrs = [i for i, u in enumerate(bag) if i != pos and vmask >> u & 1]
        new_labels = list(labels)
        new_labels.insert(pos, a)
        for i in nbrs:
            b = new_labels[i]
            if (b < cap and a > b + 1) or (a < cap and b > a + 1):
                return None
        new_wit = list(wit)
        new_wit.insert(pos, not self.needs_witness(a) or any(new_labels[i] == a - 1 for i in nbrs))
        for i in nbrs:
            if self.needs_witness(new_labels[i]) and new_labels[i] == a + 1:
                new_wit[i] = True
        fresh = max(classes, default=-1) + 1
        new_classes = list(classes)
        new_classes.insert(pos, fresh)
        merged = {fresh}
        for i in nbrs:
            if new_labels[i] + a <= self.close:
                merged.add(new_classes[i])
        flag_map = dict(enumerate(flags))
        if len(merged) > 1 or a == 0:
            hits = sum(1 for c in merged if flag_map.get(c, False))
            hits += sum(1 for i, c in enumerate(new_classes) if c in merged and new_labels[i] == 0)
            if hits > 1:
                return None
            any_flag = any(flag_map.get(c, False) for c in merged)
            new_classes = [fresh if c in merged else c for c in new_classes]
            flag_map[fresh] = any_flag
        cl, fl = _canon(new_classes, flag_map)
        return tuple(new_labels), tuple(new_wit), cl, fl

    def forget(self, state, pos):
        labels, wit, classes, flags = state
        if not wit[pos]:
            return None, 0
        a = labels[pos]
        c = classes[pos]
        flag_map = dict(enumerate(flags))
        rest = list(classes[:pos] + classes[pos + 1:])
        if a == 0:
            flag_map[c] = True
        cl, fl = _canon(rest, flag_map)
        new = (labels[:pos] + labels[pos + 1:], wit[:pos] + wit[pos + 1:], cl, fl)
        return new, 1 if a == 0 else 0

    def join(self, s1, s2):
        labels, wit1, cl1, fl1 = s1
        _, wit2, cl2, fl2 = s2
        k = len(labels)
        parent = list(range(k))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for classes in (cl1, cl2):
            first: dict[int, int] = {}
            for i, c in enumerate(classes):
                if c in first:
                    parent[find(i)] = find(first[c])
                else:
                    first[c] = i
        hits: dict[int, int] = {}
        for classes, flags in ((cl1, fl1), (cl2, fl2)):
            done = set()
            for i, c in enumerate(classes):
                if flags[c] and c not in done:
                    done.add(c)
                    r = find(i)
                    hits[r] = hits.get(r, 0) + 1
        for i in range(k):
            if labels[i] == 0:
                r = find(i)
                hits[r] = hits.get(r, 0) + 1
        if any(h > 1 for h in hits.values()):
            return None
        roots = [find(i) for i in range(k)]
        flag_map = {}
        for classes, flags in ((cl1, fl1), (cl2, fl2)):
            for i, c in enumerate(classes):
                if flags[c]:
                    flag_map[roots[i]] = True
        cl, fl = _canon(roots, flag_map)
        wit = tuple(x or y for x, y in zip(wit1, wit2))
        return labels, wit, cl, fl


def scattered_on_decomposition(
    g: Graph, params: ScatteredParams | int, nd: NiceDecomposition
) -> tuple[int, frozenset[int]]:
    """Maximum size of a vertex set with pairwise distance >= ``d``, with a witness."""
    d = scatter_distance(params)
    if g.n == 0:
        return 0, frozenset()
    d = min(d, max(g.n, 2))
    dp = _Scattered(g, d)
    masks = g.masks
    # vertices occurring anywhere in each subtree: a bag vertex whose whole
    # neighbourhood lies inside has seen all its edges, so its witness is final
    below = [0] * len(nd.nodes)
    for i, node in enumerate(nd.nodes):
        acc = to_mask(node.bag)
        for c in node.children:
            acc |= below[c]
        below[i] = acc

    def settled_ok(state, bag, i):
        _, wit, _, _ = state
        for p, v in enumerate(bag):
            if not wit[p] and masks[v] & ~below[i] == 0:
                return False
        return True

    tables: list[dict | None] = [None] * len(nd.nodes)
    back: list[dict | None] = [None] * len(nd.nodes)
    labels_range = range(dp.cap + 1)
    for i, node in enumerate(nd.nodes):
        table: dict = {}
        ptr: dict = {}
        if node.kind == LEAF:
            table[((), (), (), ())] = 0
        elif node.kind == INTRODUCE:
            pos = node.bag.index(node.vertex)
            for s, val in tables[node.children[0]].items():
                for a in labels_range:
                    ns = dp.introduce(s, node.bag, pos, node.vertex, a)
                    if ns is None or not settled_ok(ns, node.bag, i):
                        continue
                    if ns not in table or val > table[ns]:
                        table[ns] = val
                        ptr[ns] = s
        elif node.kind == FORGET:
            child_bag = nd.nodes[node.children[0]].bag
            pos = child_bag.index(node.vertex)
            for s, val in tables[node.children[0]].items():
                ns, gain = dp.forget(s, pos)
                if ns is None:
                    continue
                if ns not in table or val + gain > table[ns]:
                    table[ns] = val + gain
                    ptr[ns] = s
        else:
            left, right = tables[node.children[0]], tables[node.children[1]]
            by_labels: dict[tuple, list] = {}
            for s in right:
                by_labels.setdefault(s[0], []).append(s)
            for s1, v1 in left.items():
                for s2 in by_labels.get(s1[0], ()):
                    ns = dp.join(s1, s2)
                    if ns is None or not settled_ok(ns, node.bag, i):
                        continue
                    val = v1 + right[s2]
                    if ns not in table or val > table[ns]:
                        table[ns] = val
                        ptr[ns] = (s1, s2)
        tables[i] = table
        back[i] = ptr
        for c in node.children:
            tables[c] = None

    root_table = tables[nd.root]
    empty = ((), (), (), ())
    value = root_table[empty]
    chosen = []
    stack = [(nd.root, empty)]
    while stack:
        i, s = stack.pop()
        node = nd.nodes[i]
        if node.kind == LEAF:
            continue
        if node.kind == JOIN:
            s1, s2 = back[i][s]
            stack.append((node.children[0], s1))
            stack.append((node.children[1], s2))
            continue
        prev = back[i][s]
        if node.kind == FORGET:
            child_bag = nd.nodes[node.children[0]].bag
            if prev[0][child_bag.index(node.vertex)] == 0:
                chosen.append(node.vertex)
        stack.append((node.children[0], prev))
    return value, frozenset(chosen)
