import copy
from fractions import Fraction

import pytest

from conftest import random_models
from qpotts.classical import automorphisms
from qpotts.instances import cube, example2, single_edge, single_vertex, triangle
from qpotts.linear import LinearSystem
from qpotts.model import build_model
from qpotts.relations import (
    Inconsistent,
    all_commute,
    commutant_identities,
    extract_presentation,
    init_relations,
    permutation_violations,
    propagate,
    saturate,
)

PRIMES = "1234"


def st(rs, model, a, b):
    return rs.state(model.index[a], model.index[b])


def test_linear_system_normal_forms():
    s = LinearSystem([({"a": 1, "b": 1}, 1), ({"b": 1, "c": -1}, 0)])
    assert s.normal_form("a") == ({"c": Fraction(-1)}, Fraction(1))
    assert s.implies({"a": 1, "c": 1}, 1)
    assert not s.implies({"a": 1}, 0)
    bad = LinearSystem([({"x": 1}, 1), ({"x": 1}, 2)])
    assert bad.inconsistent


def test_init_relations_seeds_level_zeros():
    m = example2(0, 1)
    rs = init_relations(m)
    assert st(rs, m, "1", "3") == "0"
    assert st(rs, m, "3", "5") == "0"
    assert st(rs, m, "1", "7") != "0"
    assert len(rs.identities) == 16


@pytest.mark.parametrize("lam", [2, "1/2", "3+i"])
def test_cube_fixpoint(lam):
    m = cube(lam)
    rs = saturate(m)
    assert rs.at_fixpoint
    others = [x for x in PRIMES[:3]] + [x + "'" for x in PRIMES[:3]]
    for i in others:
        for v in ("4", "4'"):
            assert st(rs, m, i, v) == "0"
            assert st(rs, m, v, i) == "0"
    assert st(rs, m, "2", "1") == "0"
    assert st(rs, m, "2", "3") == "0"
    for i in PRIMES:
        for j in PRIMES:
            assert st(rs, m, i + "'", j) == st(rs, m, i, j + "'")
            assert st(rs, m, i + "'", j + "'") == st(rs, m, i, j)
    assert all_commute(rs)


def test_cube_fixpoint_blocks():
    m = cube(2)
    pres = extract_presentation(saturate(m))
    blocks = sorted(sorted(m.labels[v] for v in rows) for rows, _ in pres.blocks)
    assert ["1", "1'", "3", "3'"] in blocks
    assert ["2", "2'"] in blocks or ["2", "2'", "4", "4'"] in blocks


def test_cube_lambda_one_keeps_noncommuting_entries():
    rs = saturate(cube(1))
    assert not all_commute(rs)
    assert not rs.is_zero(0, 1)


EXAMPLE2_GRID = [
    ["x1", "1-x1", "0", "0", "0", "0", "0", "0"],
    ["1-x1", "x1", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "x3", "1-x3", "0", "0", "0", "0"],
    ["0", "0", "1-x3", "x3", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "x3", "1-x3", "0", "0"],
    ["0", "0", "0", "0", "1-x3", "x3", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "x3", "1-x3"],
    ["0", "0", "0", "0", "0", "0", "1-x3", "x3"],
]


def test_example2_fixpoint_matrix():
    m = example2(0, 1)
    assert list(m.labels) == [str(k) for k in range(1, 9)]
    pres = extract_presentation(saturate(m))
    assert [list(r) for r in pres.grid] == EXAMPLE2_GRID
    assert [pres.names[r] for r in pres.independent] == ["x1", "x3"]
    assert len(pres.components) == 2


def test_example2_relation_chain():
    m = example2(0, 1)
    rs = saturate(m)
    ix = m.index
    e = lambda a, b: (ix[a], ix[b])  # noqa: E731
    assert rs.same_class(e("3", "3"), e("5", "5"))
    assert rs.same_class(e("5", "5"), e("7", "7"))
    assert rs.same_class(e("3", "4"), e("7", "8"))
    assert rs.implies({e("1", "1"): 1, e("1", "2"): 1}, 1)
    assert not rs.implies({e("1", "1"): 1, e("3", "3"): -1}, 0)


def test_example2_control_commutes():
    assert all_commute(saturate(example2(1, 1)))


@pytest.mark.parametrize("model", [cube(2), cube("3+i"), example2(1, 1), example2("1/2", 1)])
def test_adjacency_commutant_is_implied(model):
    rs = saturate(model)
    A = model.adjacency()
    tmp = copy.deepcopy(rs)
    before = len(tmp.identities)
    commutant_identities(tmp, model, matrix=A.tolist(), tag="QA=AQ")
    for ident in tmp.identities[before:]:
        coeffs = {divmod(e, model.n): c for e, c in ident.coeffs}
        assert rs.implies(coeffs, ident.const), ident.source


def test_trivial_models():
    rs = saturate(single_vertex())
    assert rs.state(0, 0) == "1"
    rs = saturate(single_edge(1))
    assert rs.same_class((0, 0), (1, 1)) and rs.same_class((0, 1), (1, 0))
    assert all_commute(rs)


def test_triangle_keeps_all_entries():
    rs = saturate(triangle())
    assert not any(rs.is_zero(i, j) for i in range(3) for j in range(3))


def test_measure_decreases_along_trace():
    rs = saturate(cube(2))
    measures = [t.measure for t in rs.trace]
    assert measures == sorted(measures, reverse=True)


def test_inconsistent_identity_detected():
    m = single_edge(1)
    rs = init_relations(m)
    rs.add_identity({rs.entry(0, 0): Fraction(1)}, Fraction(2), "planted")
    with pytest.raises(Inconsistent):
        propagate(rs)


def test_negative_positive_combination_detected():
    m = build_model("abc", [("a", "b")])
    rs = init_relations(m)
    rs.add_identity({rs.entry(0, 1): Fraction(1), rs.entry(0, 2): Fraction(1)}, Fraction(-1), "planted")
    with pytest.raises(Inconsistent):
        propagate(rs)


def test_permutation_violations_reports_non_automorphism():
    m = cube(2)
    rs = saturate(m)
    rot = [m.index[x] for x in ("2", "3", "4", "1", "2'", "3'", "4'", "1'")]
    assert permutation_violations(rs, rot)


@pytest.mark.parametrize("seed", range(3))
def test_automorphisms_satisfy_fixpoint(seed):
    for m in random_models(100 + seed, 8, 2, 6):
        rs = saturate(m)
        for g in automorphisms(m).elements:
            assert permutation_violations(rs, g) == []
