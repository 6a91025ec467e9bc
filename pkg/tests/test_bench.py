import pytest

from ptfree.bench import build_instance, expand_suite, fit_exponent, run_instance, run_suite
from ptfree.errors import GraphInputError
from ptfree.graph import contains_induced_path


SMALL = {
    "timeout": 30,
    "workers": 2,
    "oracle_check": True,
    "families": [
        {"name": "c5", "family": "substitution", "problem": "mwis", "t": 5, "sizes": [8, 14], "seeds": [1, 2]},
        {"name": "co", "family": "cograph", "problem": "scattered", "t": 4, "d": 3, "sizes": [10], "seeds": [3]},
        {"name": "sp", "family": "split", "problem": "mwis", "t": 5, "sizes": [12], "seeds": [4]},
        {
            "name": "sa",
            "family": "sample",
            "problem": "mwis",
            "t": 5,
            "pattern": "path:5",
            "edge_prob": 0.3,
            "sizes": [9],
            "seeds": [5],
            "brute_cutoff": 0,
        },
    ],
}


def test_expansion_is_sorted_and_seeded():
    specs = expand_suite(SMALL, seed=10)
    ids = [s.id for s in specs]
    assert ids == sorted(ids) and len(ids) == 7
    assert "c5/n00008/s1" in ids
    assert {s.seed for s in specs if s.id.startswith("c5")} == {11, 12}


@pytest.mark.parametrize(
    "family",
    [
        {"family": "nope", "sizes": [5]},
        {"family": "cograph", "problem": "coloring", "sizes": [5]},
        {"family": "cograph", "problem": "scattered", "sizes": [5]},
    ],
)
def test_bad_families(family):
    with pytest.raises(GraphInputError):
        expand_suite({"families": [family]})


def test_instances_belong_to_their_family():
    for spec in expand_suite(SMALL):
        g = build_instance(spec)
        assert g.n == spec.n
        assert not contains_induced_path(g, spec.t)


def test_run_instance_matches_oracle():
    for spec in expand_suite(SMALL):
        row = run_instance(spec, oracle_check=True)
        assert row["oracle_match"] is True


def test_run_suite_rows():
    out = run_suite(SMALL, seed=0)
    rows = out["rows"]
    assert [r["id"] for r in rows] == sorted(r["id"] for r in rows)
    assert all(r["oracle_match"] and not r["timed_out"] for r in rows)
    assert out == out and (out["fit"] is None or "slope" in out["fit"])


def test_deterministic_values():
    a = [r["value"] for r in run_suite(SMALL, seed=3, workers=1)["rows"]]
    b = [r["value"] for r in run_suite(SMALL, seed=3, workers=2)["rows"]]
    assert a == b


def test_timeout_flags_rows():
    family = {"family": "substitution", "problem": "mwis", "t": 5, "sizes": [150, 200], "seeds": [1]}
    rows = run_suite({"timeout": 0.001, "families": [family]})["rows"]
    assert rows and all(r["timed_out"] for r in rows)


def test_empty_suite():
    assert run_suite({"families": []}) == {"rows": [], "fit": None}


def test_fit_exponent_recovers_slope():
    import math

    rows = [{"n": n, "wall_time": 2 ** (0.5 * math.sqrt(n * math.log(n))), "timed_out": False} for n in (10, 20, 40, 80)]
    fit = fit_exponent(rows)
    assert fit["slope"] == pytest.approx(0.5) and fit["points"] == 4
    assert fit_exponent(rows[:1]) is None


def test_five_sampled_p5free_graphs_all_match_the_oracle():
    family = {
        "family": "sample", "problem": "mwis", "t": 5, "pattern": "path:5", "edge_prob": 0.3,
        "sizes": [12, 14, 16, 18, 20], "seeds": [1],
    }
    rows = run_suite({"families": [family], "oracle_check": True, "workers": 2})["rows"]
    assert len(rows) == 5 and all(r["oracle_match"] is True for r in rows)
    assert [r["n"] for r in rows] == [12, 14, 16, 18, 20]
