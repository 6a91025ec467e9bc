"""File formats: DIMACS graphs, weight files, tree decompositions, JSON sidecars.

Vertex ids in files are 1-based; everything in memory is 0-based.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .errors import GraphInputError
from .graph import Graph
from .treewidth import TreeDecomposition


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and line[0] not in "c#":
            yield lineno, line.split()


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphInputError(f"line {lineno}: expected an integer, got {tok!r}") from None


def parse_dimacs(text: str) -> Graph:
    """``p edge <n> <m>`` header followed by ``e <u> <v>`` lines."""
    n = None
    declared_m = None
    edges = []
    for lineno, toks in _content_lines(text):
        if toks[0] == "p":
            if n is not None or len(toks) != 4:
                raise GraphInputError(f"line {lineno}: expected a single 'p edge <n> <m>' header")
            n, declared_m = _int(toks[2], lineno), _int(toks[3], lineno)
        elif toks[0] == "e":
            if n is None:
                raise GraphInputError(f"line {lineno}: edge before the 'p' header")
            if len(toks) != 3:
                raise GraphInputError(f"line {lineno}: expected 'e <u> <v>'")
            u, v = _int(toks[1], lineno), _int(toks[2], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphInputError(f"line {lineno}: vertex out of range 1..{n}")
            edges.append((u - 1, v - 1))
        else:
            raise GraphInputError(f"line {lineno}: unknown record {toks[0]!r}")
    if n is None:
        raise GraphInputError("missing 'p edge <n> <m>' header")
    if declared_m != len(edges):
        raise GraphInputError(f"header declares {declared_m} edges but {len(edges)} were listed")
    return Graph(n, edges)


def format_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_weights(text: str, n: int) -> tuple[int, ...]:
    """``<vertex> <weight>`` per line; every vertex must appear exactly once."""
    w: list[int | None] = [None] * n
    for lineno, toks in _content_lines(text):
        if len(toks) != 2:
            raise GraphInputError(f"line {lineno}: expected '<vertex> <weight>'")
        v, x = _int(toks[0], lineno), _int(toks[1], lineno)
        if not 1 <= v <= n:
            raise GraphInputError(f"line {lineno}: vertex {v} out of range 1..{n}")
        if x < 0:
            raise GraphInputError(f"line {lineno}: negative weight {x}")
        if w[v - 1] is not None:
            raise GraphInputError(f"line {lineno}: vertex {v} listed twice")
        w[v - 1] = x
    missing = [i + 1 for i, x in enumerate(w) if x is None]
    if missing:
        raise GraphInputError(f"no weight for vertices {missing[:10]}")
    return tuple(w)  # type: ignore[arg-type]


def format_weights(w) -> str:
    return "".join(f"{v + 1} {x}\n" for v, x in enumerate(w))


def format_td(td: TreeDecomposition, n: int) -> str:
    """``td <bags> <width+1> <n>``, then ``b <id> <vertices>``, then tree edges."""
    lines = [f"td {len(td.bags)} {td.width + 1} {n}"]
    lines += [" ".join(["b", str(i + 1), *(str(v + 1) for v in bag)]) for i, bag in enumerate(td.bags)]
    lines += [f"{a + 1} {b + 1}" for a, b in td.tree_edges]
    return "\n".join(lines) + "\n"


def parse_td(text: str) -> tuple[TreeDecomposition, int]:
    """Inverse of :func:`format_td`; returns the decomposition and the vertex count.

    The PACE header spelling ``s td ...`` is accepted too.
    """
    header = None
    bags: dict[int, tuple[int, ...]] = {}
    edges = []
    for lineno, toks in _content_lines(text):
        if toks[0] in ("s", "td"):
            if toks[0] == "s":
                toks = toks[1:]
            if header is not None or len(toks) != 4 or toks[0] != "td":
                raise GraphInputError(f"line {lineno}: expected 'td <bags> <width+1> <n>'")
            header = tuple(_int(x, lineno) for x in toks[1:])
        elif toks[0] == "b":
            i = _int(toks[1], lineno)
            if i in bags:
                raise GraphInputError(f"line {lineno}: bag {i} defined twice")
            bags[i] = tuple(_int(x, lineno) - 1 for x in toks[2:])
        elif len(toks) == 2:
            edges.append((_int(toks[0], lineno) - 1, _int(toks[1], lineno) - 1))
        else:
            raise GraphInputError(f"line {lineno}: unrecognised line")
    if header is None:
        raise GraphInputError("missing 'td' header")
    count, _, n = header
    if sorted(bags) != list(range(1, count + 1)):
        raise GraphInputError(f"expected bags numbered 1..{count}")
    return TreeDecomposition.build([bags[i + 1] for i in range(count)], edges), n


def read_graph(path: str | Path) -> Graph:
    return parse_dimacs(Path(path).read_text())


def write_graph(path: str | Path, g: Graph) -> None:
    Path(path).write_text(format_dimacs(g))


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(format_dimacs(g).encode()).hexdigest()


def write_sidecar(path: str | Path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_sidecar(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise GraphInputError(f"{path}: invalid JSON ({exc})") from None
