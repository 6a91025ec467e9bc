import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ptfree.graph import Graph, contains_induced_path, girth
from ptfree.treewidth import TreeDecomposition

settings.register_profile(
    "repo", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much]
)
settings.load_profile("repo")


def gnp(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, chosen) if keep])


def ptfree_corpus(seed: int, count: int, t_choices, max_n: int, *, connected: bool = False):
    """Rejection-sampled P_t-free graphs: list of (graph, t)."""
    from ptfree.graph import is_connected

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, max_n)
        t = rng.choice(t_choices)
        g = gnp(rng, n, rng.random() * 0.7)
        if connected and not is_connected(g):
            continue
        if not contains_induced_path(g, t):
            out.append((g, t))
    return out


def elimination_decomposition(g: Graph, order) -> TreeDecomposition:
    """Tree decomposition from an elimination ordering, built independently of the package."""
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    position = {v: i for i, v in enumerate(order)}
    bags, parent_of = [], {}
    for v in order:
        later = {u for u in adj[v] if position[u] > position[v]}
        bags.append({v} | later)
        for a in later:
            for b in later:
                if a != b:
                    adj[a].add(b)
        if later:
            parent_of[v] = min(later, key=position.get)
    edges = [(position[v], position[p]) for v, p in parent_of.items()]
    # join the roots of separate components into one tree
    roots = [position[v] for v in order if v not in parent_of]
    edges += [(roots[0], r) for r in roots[1:]]
    if not bags:
        bags = [set()]
    return TreeDecomposition.build(bags, edges)


def subcubic(rng, n, *, no_isolated=False, min_girth=None, tries=40):
    """Random graph with max degree 3, optionally without isolated vertices or short cycles."""
    while True:
        edges, deg = [], [0] * n
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(pairs)
        for u, v in pairs[: tries]:
            if deg[u] < 3 and deg[v] < 3 and rng.random() < 0.6:
                trial = Graph(n, edges + [(u, v)])
                if min_girth is not None and (girth(trial) or min_girth + 1) <= min_girth:
                    continue
                edges.append((u, v))
                deg[u] += 1
                deg[v] += 1
        g = Graph(n, edges)
        if not no_isolated or all(deg):
            return g


def separator_gadget(rng, r):
    """A dense core joined to a 4-cycle through v, built to reach the separator case."""
    s, core_r = [1, 2, 3], list(range(8, 8 + r))
    edges = [(0, x) for x in s] + [(0, 4)] + [(4, x) for x in s]
    core = s + core_r
    edges += [(x, y) for i, x in enumerate(core) for y in core[i + 1 :] if rng.random() < 0.9]
    edges += [(4, 5), (4, 6), (5, 7), (6, 7)]
    edges += [(7, x) for x in core_r[: rng.randint(1, 3)]]
    return Graph(8 + r, edges)
