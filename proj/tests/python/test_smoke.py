from fractions import Fraction

import pytest

import spround

STAR = "0 1 1/2\n0 2 1/2\n0 3 1/2\n"
FORMULA = "p cnf 4 3\n1 2 -3 0\n1 3 -4 0\n-1 -3 4 0\n"


def test_graph_construction():
    g = spround.Graph(3, [(1, 0, "1/2"), (1, 2, Fraction(5, 2))])
    assert g.vertex_count == 3
    assert g.edges == [(0, 1, Fraction(1, 2)), (1, 2, Fraction(5, 2))]
    assert spround.Graph.parse(g.serialize()).edges == g.edges


def test_bad_graph_raises_value_error():
    with pytest.raises(ValueError, match="line 1: self-loop"):
        spround.Graph.parse("0 0 1")


def test_star_decision():
    star = spround.Graph.parse(STAR)
    assert not spround.decide(star, 1)
    assert spround.decide(star, 1, mode="closed")
    assert spround.extract_rounding(star, 1) is None
    assert spround.brute_force_decide(star, 1, level="oblivious") is None
    assert spround.minimize_epsilon(star)[0] == 1
    assert spround.brute_force_min_epsilon(star) == 1


def test_tree_rounding_and_verification():
    path = spround.Graph.parse("0 1 0.5\n1 2 0.5\n")
    rounding = spround.extract_rounding(path, "1")
    assert rounding in ([1, 0], [0, 1])
    report = spround.verify(path, rounding, 1)
    assert report["passed"] and report["witness"] is None
    assert spround.error_range_set(path, 1) == [(Fraction(-1, 2), 0), (0, Fraction(1, 2))]
    assert spround.two_rounding(path) == [0, 1]


def test_path_rounding():
    assert spround.round_path(["1/2", "1/2", "1/2"]) == [1, 0, 1]


def test_budget():
    star = spround.Graph.parse(STAR)
    with pytest.raises(spround.BudgetExceeded):
        spround.count_roundings(star, 1, budget=4)


def test_reduction_round_trip():
    red = spround.reduce(FORMULA)
    assert red.D == 35
    psi = [False, True, True, False]
    rounding = red.rounding_from_assignment(psi)
    assert spround.verify(red.graph, rounding, 1, level="strong")["passed"]
    assert red.assignment_from_rounding(rounding) == psi
