import itertools

import pytest

from conftest import random_models
from qpotts.classical import (
    automorphisms,
    brute_force_automorphisms,
    compose,
    cycles,
    disjoint_pair_search,
    format_cycles,
    group_name,
    identity,
    inverse,
    parse_cycles,
    perm_order,
    permutation_matrix,
    support,
)
from qpotts.instances import complete, cube, example2, path, single_vertex, triangle
from qpotts.model import GuardError, build_model


def test_cycle_notation_round_trip():
    labels = cube(2).labels
    p = parse_cycles("(1 2 3 4)(1' 2' 3' 4')", labels)
    assert format_cycles(p, labels) == "(1 2 3 4)(1' 2' 3' 4')"
    assert perm_order(p) == 4
    assert len(cycles(p)) == 2
    assert parse_cycles("()", labels) == identity(8)


@pytest.mark.parametrize("bad", ["(1 2", "(1 9)", "(1 2)(2 3)"])
def test_parse_cycles_errors(bad):
    with pytest.raises(ValueError):
        parse_cycles(bad, cube(2).labels)


def test_permutation_helpers():
    a = (1, 2, 0, 3)
    assert compose(a, inverse(a)) == identity(4)
    assert support(a) == frozenset({0, 1, 2})
    P = permutation_matrix(a)
    assert P[1, 0] == 1 and P.sum() == 4


@pytest.mark.parametrize(
    "model, order, name",
    [
        (cube(1), 48, "G(48)"),
        (cube(2), 4, "Z2 x Z2"),
        (example2(0, 1), 4, "Z2 x Z2"),
        (example2(1, 1), 4, "Z2 x Z2"),
        (triangle(), 6, "S3"),
        (path(4), 2, "Z2"),
        (single_vertex(), 1, "1"),
        (complete(4), 24, "S4"),
    ],
)
def test_group_orders(model, order, name):
    aut = automorphisms(model)
    assert aut.order == order
    assert group_name(aut) == name
    assert aut.element_set() == brute_force_automorphisms(model).element_set()


def test_example2_control_generators_commute():
    aut = automorphisms(example2(1, 1))
    assert len(aut.generators) == 2
    a, b = aut.generators
    assert perm_order(a) == perm_order(b) == 2
    assert compose(a, b) == compose(b, a)


def test_matches_brute_force_on_random_models():
    for m in random_models(11, 25, 1, 7):
        assert automorphisms(m).element_set() == brute_force_automorphisms(m).element_set()


def test_weights_distinguish_edges():
    m = build_model("abcd", [("a", "b"), ("c", "d")], {("a", "b"): 2})
    assert automorphisms(m).order == 4


def test_disjoint_pair_search():
    s, t = disjoint_pair_search(automorphisms(cube(1)))
    assert not support(s) & support(t)
    assert perm_order(s) == perm_order(t) == 2
    assert disjoint_pair_search(automorphisms(triangle())) is None


def test_brute_force_guard():
    m = build_model([str(k) for k in range(9)], [])
    with pytest.raises(GuardError):
        brute_force_automorphisms(m)


def test_all_elements_are_automorphisms():
    m = cube(1)
    J = m.J
    for g in automorphisms(m).elements:
        assert all(J[g[i]][g[j]] == J[i][j] for i, j in itertools.product(range(8), repeat=2))
