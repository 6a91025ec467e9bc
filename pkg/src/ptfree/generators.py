"""Reduction instances with exact independence-number identities, and samplers.

Each reduction returns a :class:`Reduction` whose :class:`Promise` states
``alpha_d(output) == alpha(source) + offset`` together with the structural
properties the output is guaranteed to have. Composite graphs number the
source vertices first, then new vertices edge by edge in ``g.edges`` order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import GraphInputError, SamplingError
from .graph import Graph, girth, line_graph
from .oracle import certify_free, parse_pattern


@dataclass(frozen=True)
class Promise:
    identity: str
    d: int  # the identity is about alpha_d of the output (d=2 is plain alpha)
    offset: int
    pattern: str | None = None  # output is free of this pattern
    max_degree: int | None = None
    min_girth: int | None = None  # output girth is at least this (None: no claim)
    params: dict = field(default_factory=dict)

    def predicted(self, alpha_source: int) -> int:
        return alpha_source + self.offset

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "d": self.d,
            "offset": self.offset,
            "pattern": self.pattern,
            "max_degree": self.max_degree,
            "min_girth": self.min_girth,
            "params": dict(self.params),
        }


@dataclass(frozen=True)
class Reduction:
    graph: Graph
    promise: Promise
    # claw-free construction only: the graph whose line graph is ``graph``,
    # and the support edge behind each output vertex
    support: Graph | None = None
    support_edges: tuple[tuple[int, int], ...] | None = None

    def __iter__(self):
        yield self.graph
        yield self.promise


def _require_max_degree(g: Graph, bound: int) -> None:
    if g.max_degree() > bound:
        raise GraphInputError(f"source graph must have max degree <= {bound}, got {g.max_degree()}")


class _Grower:
    """Append-only edge list with fresh vertex ids after the source vertices."""

    def __init__(self, g: Graph) -> None:
        self.n = g.n
        self.edges = list(g.edges)

    def new_path(self, start: int, length: int) -> int:
        """Hang a path of ``length`` edges from ``start``; return its far end."""
        cur = start
        for _ in range(length):
            self.edges.append((cur, self.n))
            cur = self.n
            self.n += 1
        return cur

    def graph(self) -> Graph:
        return Graph(self.n, self.edges)


def _subdivided(g: Graph, per_edge: int, hang=None) -> _Grower:
    """Replace each edge by a path through ``per_edge`` new vertices."""
    out = _Grower(g)
    out.edges = []
    for u, v in g.edges:
        inner = list(range(out.n, out.n + per_edge))
        out.n += per_edge
        chain = [u, *inner, v]
        out.edges.extend(zip(chain, chain[1:]))
        if hang:
            for x in inner:
                hang(out, x)
    return out


def gen_p5free_scattered3(g: Graph) -> Reduction:
    """Add a vertex per edge, all edge-vertices forming a clique, each seeing its two ends."""
    _require_max_degree(g, 3)
    isolated = [v for v in range(g.n) if g.degree(v) == 0]
    if isolated:
        raise GraphInputError(f"source graph has isolated vertices {isolated}")
    m = g.m
    edges = [(g.n + i, g.n + j) for i in range(m) for j in range(i + 1, m)]
    for i, (u, v) in enumerate(g.edges):
        edges += [(u, g.n + i), (v, g.n + i)]
    out = Graph(g.n + m, edges)
    return Reduction(out, Promise("alpha_3(g') = alpha(g)", 3, 0, pattern="path:5"))


def clawfree_support(g: Graph, d: int) -> Graph:
    """The graph whose line graph is the claw-free instance.

    Odd d: hang a path of (d-1)/2 edges from every vertex. Even d: subdivide
    every edge once, then hang paths of d/2 - 1 edges from the original vertices.
    """
    if d < 3:
        raise GraphInputError(f"d must be at least 3, got {d}")
    if d % 2:
        out, ell = _Grower(g), (d - 1) // 2
    else:
        out, ell = _subdivided(g, 1), d // 2 - 1
    for v in range(g.n):
        out.new_path(v, ell)
    return out.graph()


def gen_clawfree_scattered(g: Graph, d: int) -> Reduction:
    _require_max_degree(g, 3)
    support = clawfree_support(g, d)
    out, edge_map = line_graph(support)
    promise = Promise(f"alpha_{d}(g') = alpha(g)", d, 0, pattern="claw", max_degree=6, params={"d": d})
    return Reduction(out, promise, support, edge_map)


def gen_subdivision(g: Graph, gsub: int) -> Reduction:
    """Subdivide every edge with ``2 * gsub`` new vertices."""
    if gsub < 1:
        raise GraphInputError(f"gsub must be at least 1, got {gsub}")
    out = _subdivided(g, 2 * gsub).graph()
    base = girth(g)
    promise = Promise(
        f"alpha(g') = alpha(g) + {gsub}*m",
        2,
        gsub * g.m,
        max_degree=max(g.max_degree(), 2) if g.m else 0,
        min_girth=None if base is None else base * (2 * gsub + 1),
        params={"gsub": gsub},
    )
    return Reduction(out, promise)


def gen_ctfree_scattered(g: Graph, d: int, t: int) -> Reduction:
    """Subdivide each edge with d-2 vertices and hang a (d-1)-edge path from each."""
    if d < 2 or t < 3:
        raise GraphInputError(f"need d >= 2 and t >= 3, got d={d}, t={t}")
    _require_max_degree(g, 3)
    base = girth(g)
    if base is not None and base <= t:
        raise GraphInputError(f"source girth {base} must exceed t={t}")
    pattern = f"cycle:{t}"
    params = {"d": d, "t": t}
    if d == 2:
        return Reduction(g, Promise("alpha_2(g') = alpha(g)", 2, 0, pattern=pattern, max_degree=3, params=params))
    out = _subdivided(g, d - 2, hang=lambda grower, x: grower.new_path(x, d - 1)).graph()
    promise = Promise(
        f"alpha_{d}(g') = alpha(g) + m*{d - 2}",
        d,
        g.m * (d - 2),
        pattern=pattern,
        max_degree=3,
        min_girth=None if base is None else (d - 1) * base,
        params=params,
    )
    return Reduction(out, promise)


# --- random P_t-free (and other pattern-free) graphs ---------------------------

def _gnp(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def _is_free(g: Graph, pattern) -> bool:
    return certify_free(g, pattern)[0]


def _greedy_edges(n: int, base: list[tuple[int, int]], p: float, pattern, rng: random.Random) -> Graph:
    edges = list(base)
    present = set(edges)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in present]
    rng.shuffle(pairs)
    for e in pairs:
        if rng.random() < p and _is_free(Graph(n, edges + [e]), pattern):
            edges.append(e)
    return Graph(n, edges)


def sample_free_graph(
    n: int,
    pattern,
    edge_prob: float,
    seed: int,
    *,
    method: str = "rejection",
    budget: int = 2000,
) -> Graph:
    """Random pattern-free graph, deterministic in ``seed``.

    ``rejection`` draws G(n, p) until one is free. ``greedy`` visits vertex
    pairs in random order and keeps each with probability ``edge_prob`` if
    freeness survives. ``planted`` starts from disjoint cliques (free of every
    pattern with an induced P_3) and then adds links greedily.
    """
    if n < 1:
        raise GraphInputError(f"n must be positive, got {n}")
    if not 0.0 <= edge_prob <= 1.0:
        raise GraphInputError(f"edge_prob must lie in [0, 1], got {edge_prob}")
    parse_pattern(pattern)
    rng = random.Random(seed)
    if method == "rejection":
        for _ in range(budget):
            g = _gnp(n, edge_prob, rng)
            if _is_free(g, pattern):
                return g
        raise SamplingError(f"no {pattern}-free graph in {budget} draws at p={edge_prob}; try a lower edge_prob")
    if method == "greedy":
        return _greedy_edges(n, [], edge_prob, pattern, rng)
    if method == "planted":
        order = list(range(n))
        rng.shuffle(order)
        base = []
        i = 0
        while i < n:
            size = rng.randint(1, max(1, n // 3))
            block = sorted(order[i : i + size])
            base += [(u, v) for j, u in enumerate(block) for v in block[j + 1 :]]
            i += size
        if not _is_free(Graph(n, base), pattern):
            raise SamplingError(f"planted cliques already contain {pattern}; use another method")
        return _greedy_edges(n, base, edge_prob, pattern, rng)
    raise GraphInputError(f"unknown sampling method {method!r}")


def random_cograph(n: int, seed: int, *, connected: bool = True, join_prob: float = 0.5) -> Graph:
    """Random P_4-free graph built from single vertices by unions and joins."""
    if n < 1:
        raise GraphInputError(f"n must be positive, got {n}")
    rng = random.Random(seed)

    def build(vs: list[int], top: bool) -> list[tuple[int, int]]:
        if len(vs) == 1:
            return []
        cut = rng.randint(1, len(vs) - 1)
        left, right = vs[:cut], vs[cut:]
        edges = build(left, False) + build(right, False)
        if (top and connected) or rng.random() < join_prob:
            edges += [(min(u, v), max(u, v)) for u in left for v in right]
        return edges

    vs = list(range(n))
    rng.shuffle(vs)
    return Graph(n, build(vs, True))


def random_split_graph(n: int, seed: int, *, clique_frac: float = 0.4, edge_prob: float = 0.3) -> Graph:
    """Clique plus independent set with random edges between them (P_5-free)."""
    rng = random.Random(seed)
    k = max(1, round(n * clique_frac))
    edges = [(u, v) for u in range(k) for v in range(u + 1, k)]
    edges += [(u, v) for v in range(k, n) for u in range(k) if rng.random() < edge_prob]
    return Graph(n, edges)


def random_substitution(base: Graph, n: int, seed: int, *, join_prob: float = 0.2) -> Graph:
    """Replace each vertex of ``base`` by a random cograph module, ``n`` vertices in all.

    Modules of adjacent base vertices are completely joined. Substitution
    keeps a graph free of any prime pattern such as P_t (t >= 4), so a
    P_5-free base (say C_5) yields P_5-free output.
    """
    if base.n < 1 or n < base.n:
        raise GraphInputError(f"need 1 <= base.n <= n, got base.n={base.n}, n={n}")
    rng = random.Random(seed)
    sizes = [n // base.n + (1 if i < n % base.n else 0) for i in range(base.n)]
    offsets = [sum(sizes[:i]) for i in range(base.n)]
    edges = []
    for i, size in enumerate(sizes):
        module = random_cograph(size, rng.randrange(2**32), connected=False, join_prob=join_prob)
        edges += [(u + offsets[i], v + offsets[i]) for u, v in module.edges]
    for i, j in base.edges:
        edges += [
            (u, v)
            for u in range(offsets[i], offsets[i] + sizes[i])
            for v in range(offsets[j], offsets[j] + sizes[j])
        ]
    return Graph(n, [(min(u, v), max(u, v)) for u, v in edges])
