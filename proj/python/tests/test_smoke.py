from fractions import Fraction

import pytest

import dynmwm


def test_oracle_solver_tracks_best_edge():
    s = dynmwm.Solver("oracle")
    s.insert(0, 1, 1)
    s.insert(1, 2, Fraction(3, 2))
    assert s.weight() == Fraction(3, 2)
    assert s.vertex_match(1) == 2
    s.erase(1, 2)
    assert s.matching() == [(0, 1, Fraction(1))]


def test_gadget_mwm_is_two_and_a_half():
    w, chosen = dynmwm.mwm([(0, 1, 1), (1, 2, 1), (2, 3, Fraction(3, 2))])
    assert w == Fraction(5, 2)
    assert {(u, v) for u, v, _ in chosen} == {(0, 1), (2, 3)}


def test_degree_two_rejects_degree_three():
    s = dynmwm.Solver("degree-two", eps=Fraction(1, 2))
    s.insert(0, 1, 1)
    s.insert(0, 2, 1)
    with pytest.raises(ValueError):
        s.insert(0, 3, 1)


def test_framework_run_with_audit():
    trace = dynmwm.gen_trace("uniform-random", n=8, events=60, seed=3, hi=50)
    summary, csv = dynmwm.run_trace("framework/standard", trace, oracle_audit=True)
    assert summary["ok"]
    assert summary["events"] == 60
    assert csv.splitlines()[0].startswith("seq,op,u,v,w")
    assert Fraction(summary["min_ratio"]) >= Fraction(1, 2)


def test_runs_are_deterministic():
    trace = dynmwm.gen_trace("sliding-window", n=10, events=40, seed=9, window=4)
    a = dynmwm.run_trace("low-recourse(oracle-churn)", trace, eps=Fraction(1, 4), max_weight=100)
    b = dynmwm.run_trace("low-recourse(oracle-churn)", trace, eps=Fraction(1, 4), max_weight=100)
    assert a[1] == b[1]


def test_unfold_single_edge():
    assert dynmwm.unfold_stats([(0, 1, 3)], 3) == (6, 3, 3)


def test_alpha_certificate():
    cert = dynmwm.certify_alpha()
    assert cert["holds"]
    assert Fraction(cert["ratio"]) == Fraction(2, 3) - Fraction(1, 54)


def test_unknown_solver():
    with pytest.raises(ValueError):
        dynmwm.Solver("nope")
