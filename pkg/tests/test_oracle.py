import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ptfree.errors import CapacityError, GraphInputError
from ptfree.graph import (
    Graph,
    broom,
    complete_graph,
    cycle_graph,
    empty_graph,
    is_independent,
    is_scattered,
    path_graph,
    petersen_graph,
    star_graph,
)
from ptfree.oracle import (
    ENV_MAX_N,
    OracleLimit,
    certify_free,
    exact_treewidth,
    oracle_mwis,
    oracle_scattered,
    parse_pattern,
    pattern_graph,
)

from conftest import graphs


def subsets(n):
    for r in range(n + 1):
        yield from itertools.combinations(range(n), r)


def naive_mwis(g, w):
    return max(sum(w[v] for v in s) for s in subsets(g.n) if is_independent(g, s))


def naive_scattered(g, d):
    return max(len(s) for s in subsets(g.n) if is_scattered(g, s, d))


@pytest.mark.parametrize(
    "g,expected",
    [(complete_graph(3), 1), (petersen_graph(), 4), (cycle_graph(5), 2), (empty_graph(6), 6), (empty_graph(0), 0)],
)
def test_mis_examples(g, expected):
    value, witness = oracle_mwis(g)
    assert value == expected == len(witness)
    assert is_independent(g, witness)


def test_weighted_path():
    assert oracle_mwis(path_graph(4), [1, 10, 1, 10]) == (20, frozenset({1, 3}))


@pytest.mark.parametrize(
    "g,d,expected",
    [(path_graph(7), 3, 3), (complete_graph(5), 3, 1), (cycle_graph(9), 3, 3), (cycle_graph(9), 4, 2), (Graph(3), 9, 3)],
)
def test_scattered_examples(g, d, expected):
    value, witness = oracle_scattered(g, d)
    assert value == expected and is_scattered(g, witness, d)


@given(graphs(max_n=8), st.data())
def test_mwis_agrees_with_subset_enumeration(g, data):
    w = data.draw(st.lists(st.integers(0, 30), min_size=g.n, max_size=g.n))
    value, witness = oracle_mwis(g, w)
    assert value == naive_mwis(g, w) == sum(w[v] for v in witness)


@given(graphs(max_n=8), st.integers(2, 5))
def test_scattered_agrees_with_subset_enumeration(g, d):
    assert oracle_scattered(g, d)[0] == naive_scattered(g, d)


@given(graphs(max_n=9))
def test_two_scattered_is_mis(g):
    assert oracle_scattered(g, 2)[0] == oracle_mwis(g)[0]


def test_capacity_and_input_errors():
    with pytest.raises(CapacityError):
        oracle_mwis(empty_graph(23))
    with pytest.raises(CapacityError):
        oracle_scattered(empty_graph(17), 3)
    with pytest.raises(GraphInputError):
        oracle_scattered(path_graph(3), 1)
    with pytest.raises(GraphInputError):
        OracleLimit(0, 5)
    assert oracle_mwis(empty_graph(23), limit=OracleLimit(30, 30))[0] == 23


def test_env_override(monkeypatch):
    monkeypatch.setenv(ENV_MAX_N, "5")
    with pytest.raises(CapacityError):
        oracle_mwis(empty_graph(6))
    assert oracle_mwis(empty_graph(5))[0] == 5
    monkeypatch.setenv(ENV_MAX_N, "lots")
    with pytest.raises(GraphInputError):
        OracleLimit.from_env()
    monkeypatch.delenv(ENV_MAX_N)
    assert OracleLimit.from_env() == OracleLimit()


def test_certify_free_examples():
    assert certify_free(cycle_graph(5), "path:5") == (True, None)
    free, witness = certify_free(path_graph(5), "path:4")
    assert not free and len(witness) == 4
    assert certify_free(complete_graph(5), "claw")[0]
    assert not certify_free(star_graph(3), "claw")[0]
    assert certify_free(path_graph(8), "cycle:4")[0]
    assert not certify_free(broom(2, 3), ("broom", 2, 3))[0]
    assert certify_free(path_graph(10), "broom:2:3")[0]


@pytest.mark.parametrize("bad", ["path", "path:x", "star:3", "broom:2", ("claw", 1)])
def test_bad_patterns(bad):
    with pytest.raises(GraphInputError):
        parse_pattern(bad)


def test_pattern_graphs():
    assert parse_pattern(" Path:5 ") == ("path", 5)
    assert pattern_graph("cycle:4") == cycle_graph(4)
    assert pattern_graph("broom:3:4") == broom(3, 4)


@pytest.mark.parametrize(
    "g,expected",
    [
        (empty_graph(0), -1),
        (empty_graph(4), 0),
        (path_graph(6), 1),
        (cycle_graph(7), 2),
        (complete_graph(6), 5),
        (petersen_graph(), 4),
    ],
)
def test_exact_treewidth_values(g, expected):
    assert exact_treewidth(g) == expected


def test_exact_treewidth_cap():
    with pytest.raises(CapacityError):
        exact_treewidth(empty_graph(17))
