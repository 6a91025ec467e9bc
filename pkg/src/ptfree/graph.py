"""Immutable simple graphs on dense vertex indices, plus induced-structure search.

Every vertex set handed around internally is either a ``frozenset`` or a
Python ``int`` used as a bitmask (bit ``v`` set iff vertex ``v`` is a member).
The bitmask form is what the solvers use in their inner loops.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Sequence

from .errors import CapacityError, GraphInputError

DEFAULT_PATTERN_CAP = 12

WeightMap = Sequence[int]
VertexSet = frozenset


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    Duplicate edges in the input are collapsed; self-loops and out-of-range
    endpoints raise :class:`GraphInputError`. Instances never change after
    construction, so they can be shared freely.
    """

    __slots__ = ("n", "edges", "adj", "masks", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphInputError(f"vertex count must be nonnegative, got {n}")
        canon = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphInputError(f"self-loop at vertex {u}")
            canon.add((u, v) if u < v else (v, u))
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in canon:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges = tuple(sorted(canon))
        self.adj = tuple(tuple(sorted(a)) for a in nbrs)
        self.masks = tuple(to_mask(a) for a in self.adj)
        self._hash = hash((n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise GraphInputError(f"{v!r} is not a vertex of a graph with n={self.n}")

    def closed_neighborhood(self, vertices: Iterable[int]) -> frozenset[int]:
        mask = 0
        for v in vertices:
            mask |= self.masks[v] | (1 << v)
        return frozenset(bits(mask))

    def open_neighborhood(self, vertices: Iterable[int]) -> frozenset[int]:
        vs = set(vertices)
        return self.closed_neighborhood(vs) - vs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def check_weights(g: Graph, w: WeightMap | None) -> tuple[int, ...]:
    """Return ``w`` as a tuple of ints, or unit weights when ``w`` is None."""
    if w is None:
        return (1,) * g.n
    w = tuple(w)
    if len(w) != g.n:
        raise GraphInputError(f"weight map has {len(w)} entries for {g.n} vertices")
    for v, x in enumerate(w):
        if int(x) != x or x < 0:
            raise GraphInputError(f"weight of vertex {v} must be a nonnegative integer, got {x!r}")
    return tuple(int(x) for x in w)


# -- traversal ---------------------------------------------------------------


def mask_components(masks: Sequence[int], sub: int) -> list[int]:
    """Connected components of the subgraph induced by bitmask ``sub``."""
    comps = []
    rest = sub
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= masks[v]
            nxt &= sub & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Vertex sets of the connected components, ordered by smallest vertex."""
    return [frozenset(bits(c)) for c in mask_components(g.masks, g.all_mask)]


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(mask_components(g.masks, g.all_mask)) == 1


def bfs_distances(g: Graph, source: int) -> list[int | None]:
    """Edge distances from ``source``; unreachable vertices map to None."""
    g.check_vertex(source)
    dist: list[int | None] = [None] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if dist[v] is None:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def all_pairs_distances(g: Graph) -> list[list[int | None]]:
    return [bfs_distances(g, s) for s in range(g.n)]


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``(G[s], labels)`` where ``labels[i]`` is the original id of new vertex ``i``.

    New indices follow the increasing order of the original ids, so the
    inverse map is ``{v: i for i, v in enumerate(labels)}``.
    """
    labels = tuple(sorted(set(s)))
    for v in labels:
        g.check_vertex(v)
    index = {v: i for i, v in enumerate(labels)}
    keep = to_mask(labels)
    edges = []
    for i, v in enumerate(labels):
        for u in bits(g.masks[v] & keep):
            if u > v:
                edges.append((i, index[u]))
    return Graph(len(labels), edges), labels


def delete_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    gone = set(s)
    return induced_subgraph(g, (v for v in range(g.n) if v not in gone))


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    mask = to_mask(s)
    return all(not (g.masks[v] & mask) for v in bits(mask))


def is_scattered(g: Graph, s: Iterable[int], d: int) -> bool:
    """True iff every two members of ``s`` are at distance at least ``d``."""
    members = sorted(set(s))
    for i, u in enumerate(members):
        dist = bfs_distances(g, u)
        for v in members[i + 1:]:
            if dist[v] is not None and dist[v] < d:
                return False
    return True


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, or None for a forest."""
    best = None
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for v in g.adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    length = dist[u] + dist[v] + 1
                    if best is None or length < best:
                        best = length
    return best


# -- induced pattern search --------------------------------------------------


def find_induced_path(g: Graph, t: int, start: int | None = None) -> list[int] | None:
    """Return an induced path on ``t`` vertices, or None if there is none.

    With ``start`` given, only paths having ``start`` as an endpoint count.
    Paths are grown one vertex at a time, only through neighbours of the
    last vertex that see no earlier path vertex, so the search is
    exponential in ``t`` only.
    """
    if t < 1:
        raise GraphInputError(f"path length t must be positive, got {t}")
    masks = g.masks
    path: list[int] = []

    def grow(last: int, blocked: int) -> bool:
        if len(path) == t:
            return True
        for u in bits(masks[last] & ~blocked):
            path.append(u)
            if grow(u, blocked | masks[last] | (1 << last)):
                return True
            path.pop()
        return False

    if start is not None:
        g.check_vertex(start)
        roots: Iterable[int] = (start,)
    else:
        roots = range(g.n)
    for s in roots:
        path[:] = [s]
        if grow(s, 1 << s):
            return list(path)
    return None


def contains_induced_path(g: Graph, t: int) -> bool:
    return find_induced_path(g, t) is not None


def _pattern_order(h: Graph) -> list[int]:
    order: list[int] = []
    placed = 0
    remaining = set(range(h.n))
    while remaining:
        # most already-placed neighbours first, then highest degree
        v = min(remaining, key=lambda x: (-bin(h.masks[x] & placed).count("1"), -h.degree(x), x))
        order.append(v)
        placed |= 1 << v
        remaining.remove(v)
    return order


def find_induced(g: Graph, h: Graph, cap: int = DEFAULT_PATTERN_CAP) -> list[int] | None:
    """Return an induced embedding of ``h`` into ``g`` or None.

    The embedding is a list ``phi`` with ``phi[i]`` the image of pattern
    vertex ``i``; it preserves adjacency and non-adjacency.
    """
    if h.n > cap:
        raise CapacityError(f"pattern has {h.n} vertices, cap is {cap}")
    if h.n == 0:
        return []
    if h.n > g.n:
        return None
    order = _pattern_order(h)
    gm, hm = g.masks, h.masks
    deg_ok = [to_mask(v for v in range(g.n) if g.degree(v) >= h.degree(x)) for x in range(h.n)]
    image = [-1] * h.n
    everything = g.all_mask

    def extend(i: int, used: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        cand = deg_ok[x] & ~used
        for y in order[:i]:
            if hm[x] >> y & 1:
                cand &= gm[image[y]]
            else:
                cand &= everything & ~gm[image[y]]
            if not cand:
                return False
        for v in bits(cand):
            image[x] = v
            if extend(i + 1, used | (1 << v)):
                return True
        image[x] = -1
        return False

    if extend(0, 0):
        return list(image)
    return None


def contains_induced(g: Graph, h: Graph, cap: int = DEFAULT_PATTERN_CAP) -> bool:
    return find_induced(g, h, cap) is not None


# -- named graphs --------------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphInputError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def star_graph(k: int) -> Graph:
    """K_{1,k} with centre 0."""
    return Graph(k + 1, ((0, i) for i in range(1, k + 1)))


def claw() -> Graph:
    return star_graph(3)


def broom(d: int, t: int) -> Graph:
    """The broom: an induced path ``0..t-1`` with ``d`` leaves hung on vertex ``t-1``."""
    if d < 2 or t < 2:
        raise GraphInputError(f"broom needs d >= 2 and t >= 2, got d={d}, t={t}")
    edges = [(i, i + 1) for i in range(t - 1)]
    edges += [(t - 1, t + j) for j in range(d)]
    return Graph(t + d, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    return Graph(offset, edges)


def line_graph(g: Graph) -> tuple[Graph, tuple[tuple[int, int], ...]]:
    """Line graph of ``g``; vertex ``i`` of the result stands for ``g.edges[i]``."""
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        incident[u].append(i)
        incident[v].append(i)
    edges = []
    for group in incident:
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                edges.append((group[a], group[b]))
    return Graph(g.m, edges), g.edges
