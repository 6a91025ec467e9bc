import itertools
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ptfree.errors import GraphInputError, NotPtFreeError
from ptfree.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    is_independent,
    is_scattered,
    path_graph,
    star_graph,
)
from ptfree.oracle import oracle_mwis, oracle_scattered
from ptfree.solver import (
    SolveReport,
    branch_limit,
    branch_on_vertex,
    degree_threshold,
    solve_mwis_ptfree,
    solve_scattered_ptfree,
)
from ptfree.twdp import ScatteredParams

from conftest import gnp, graphs, ptfree_corpus


def test_edgeless_takes_everything():
    report = solve_mwis_ptfree(empty_graph(7), [5] * 7, 3, brute_cutoff=0)
    assert report.value == 35 and report.witness == frozenset(range(7))


def test_five_cycle():
    assert solve_mwis_ptfree(cycle_graph(5), None, 5, brute_cutoff=0).value == 2


def test_empty_graph():
    report = solve_mwis_ptfree(empty_graph(0), None, 3)
    assert report.value == 0 and report.witness == frozenset()
    assert solve_scattered_ptfree(empty_graph(0), 3, 3).value == 0


def test_threshold_formula():
    assert degree_threshold(100, 5) == pytest.approx(math.sqrt(100 * math.log(101) / 5))
    for n in range(1, 80):
        for t in (2, 5, 9):
            assert branch_limit(n, t) == math.ceil(degree_threshold(n, t)) - 1


def test_branch_on_edge():
    drop, take = branch_on_vertex(complete_graph(2), [3, 4], 0)
    assert drop.graph.n == 1 and drop.labels == (1,) and drop.credit == 0 and drop.weights == (4,)
    assert take.graph.n == 0 and take.credit == 3


def test_branch_on_star_centre():
    drop, take = branch_on_vertex(star_graph(4), None, 0)
    assert drop.graph == empty_graph(4) and drop.labels == (1, 2, 3, 4)
    assert take.graph.n == 0 and take.credit == 1


def test_branch_on_bad_vertex():
    with pytest.raises(GraphInputError):
        branch_on_vertex(path_graph(3), None, 3)


@given(graphs(min_n=1, max_n=9), st.data())
def test_branch_identity(g, data):
    # the better branch always equals the optimum
    w = data.draw(st.lists(st.integers(0, 20), min_size=g.n, max_size=g.n))
    v = data.draw(st.integers(0, g.n - 1))
    drop, take = branch_on_vertex(g, w, v)
    best = max(oracle_mwis(s.graph, s.weights)[0] + s.credit for s in (drop, take))
    assert best == oracle_mwis(g, w)[0]


def test_matches_oracle_on_ptfree_corpus():
    rng = random.Random(17)
    for g, t in ptfree_corpus(23, 120, (3, 4, 5, 6), 18):
        w = [rng.randint(0, 100) for _ in range(g.n)]
        report = solve_mwis_ptfree(g, w, t, brute_cutoff=0)
        assert report.value == oracle_mwis(g, w)[0]
        assert is_independent(g, report.witness)
        assert sum(w[v] for v in report.witness) == report.value


@given(graphs(max_n=12), st.data())
def test_correct_on_any_graph_when_t_exceeds_n(g, data):
    w = data.draw(st.lists(st.integers(0, 50), min_size=g.n, max_size=g.n))
    assert solve_mwis_ptfree(g, w, g.n + 1, brute_cutoff=0).value == oracle_mwis(g, w)[0]


def test_brute_cutoff_does_not_change_the_answer():
    rng = random.Random(5)
    for g, t in ptfree_corpus(9, 30, (4, 5), 16):
        w = [rng.randint(0, 30) for _ in range(g.n)]
        assert solve_mwis_ptfree(g, w, t).value == solve_mwis_ptfree(g, w, t, brute_cutoff=0).value


def test_branching_happens_on_dense_graphs():
    g = gnp(random.Random(1), 24, 0.7)
    report = solve_mwis_ptfree(g, None, 25, brute_cutoff=0)
    assert report.stats.branch_nodes > 0 and report.stats.tw_fallbacks > 0
    assert report.stats.max_depth >= 1


def test_deterministic():
    rng = random.Random(2)
    g = gnp(rng, 16, 0.4)
    w = [rng.randint(0, 9) for _ in range(g.n)]
    a = solve_mwis_ptfree(g, w, 17, brute_cutoff=0)
    b = solve_mwis_ptfree(g, w, 17, brute_cutoff=0)
    assert (a.value, a.witness, a.stats.branch_nodes) == (b.value, b.witness, b.stats.branch_nodes)


def test_verify_free_reports_path_in_original_labels():
    g = disjoint_union(complete_graph(3), path_graph(6))
    with pytest.raises(NotPtFreeError) as info:
        solve_mwis_ptfree(g, None, 5, verify_free=True)
    w = info.value.witness
    assert len(w) == 5 and all(v >= 3 for v in w)
    for i, j in itertools.combinations(range(5), 2):
        assert g.has_edge(w[i], w[j]) == (j == i + 1)
    assert solve_mwis_ptfree(cycle_graph(5), None, 5, verify_free=True).value == 2


def test_bad_weights():
    with pytest.raises(GraphInputError):
        solve_mwis_ptfree(path_graph(3), [1, -1, 1], 4)
    with pytest.raises(GraphInputError):
        solve_mwis_ptfree(path_graph(3), [1, 1], 4)


def test_report_json():
    out = solve_mwis_ptfree(path_graph(4), [1, 10, 1, 10], 5).to_json()
    assert out["value"] == 20 and out["witness"] == [1, 3]
    assert set(out["stats"]) == {"branch_nodes", "tw_fallbacks", "max_depth", "wall_time"}
    assert isinstance(SolveReport(0, frozenset()).to_json()["stats"]["wall_time"], float)


@pytest.mark.parametrize(
    "g,t,d,expected",
    [
        (path_graph(7), 8, 3, 3),
        (cycle_graph(9), 10, 3, 3),
        (complete_graph(5), 3, 3, 1),
        (empty_graph(4), 3, 5, 4),
        (disjoint_union(path_graph(5), Graph(1)), 6, 4, 3),
    ],
)
def test_scattered_examples(g, t, d, expected):
    report = solve_scattered_ptfree(g, t, d)
    assert report.value == expected and is_scattered(g, report.witness, d)
    assert solve_scattered_ptfree(g, t, ScatteredParams(d)).value == expected


def test_scattered_matches_oracle_on_ptfree_corpus():
    rng = random.Random(3)
    for g, t in ptfree_corpus(31, 100, (4, 5, 6), 14):
        d = rng.choice((2, 3, 4, 5))
        report = solve_scattered_ptfree(g, t, d)
        assert report.value == oracle_scattered(g, d)[0]
        assert is_scattered(g, report.witness, d)
        if d == 2:
            assert report.value == oracle_mwis(g)[0]


def test_scattered_rejects_small_d():
    with pytest.raises(GraphInputError):
        solve_scattered_ptfree(path_graph(4), 5, 1)


def test_scattered_verify_free():
    with pytest.raises(NotPtFreeError) as info:
        solve_scattered_ptfree(path_graph(8), 4, 3, verify_free=True)
    assert len(info.value.witness) == 4
