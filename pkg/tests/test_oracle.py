import cmath
import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_model, random_models
from qpotts.classical import compose, inverse
from qpotts.instances import cube, single_edge, single_vertex, triangle
from qpotts.model import GuardError, build_model
from qpotts.oracle import (
    ConfigurationError,
    GroupAlgebraElement,
    bilinear_form,
    check_preservation,
    energy_spectrum,
    hamiltonian,
    lift_configuration,
    partition_function,
)
from qpotts.scalars import GaussianRational as G
from qpotts.scalars import parse_scalar


def direct_spectrum(model):
    """Independent per-configuration count with plain Fractions (edge form, doubled)."""
    counts = {}
    for omega in itertools.product(range(model.q), repeat=model.n):
        e = G(Fraction(0), Fraction(0))
        for i, j in model.edges:
            if omega[i] == omega[j]:
                e = e + model.J[i][j] + model.J[i][j]
        counts[e] = counts.get(e, 0) + 1
    return counts


def test_triangle_spectrum():
    spec = energy_spectrum(triangle()).as_dict()
    assert spec == {parse_scalar("6"): 2, parse_scalar("2"): 6}


def test_triangle_partition_at_one():
    z = partition_function(triangle(), 1.0)
    assert z == pytest.approx(2 * math.exp(-6) + 6 * math.exp(-2), rel=1e-14)


def test_single_edge_low_temperature():
    # only the two disagreeing configurations survive
    assert partition_function(single_edge(1), 50.0) == pytest.approx(2.0, abs=1e-12)


def test_single_vertex_partition():
    assert partition_function(single_vertex(3), 0.7) == 3


def test_hamiltonian_counts_ordered_pairs():
    m = single_edge("1/2")
    assert hamiltonian(m, (0, 0)) == 1
    assert hamiltonian(m, (0, 1)) == 0


def test_hamiltonian_rejects_bad_configuration():
    with pytest.raises(ConfigurationError):
        hamiltonian(triangle(), (0, 2, 0))
    with pytest.raises(ConfigurationError):
        hamiltonian(triangle(), (0, 1))


@pytest.mark.parametrize("seed", range(6))
def test_spectrum_matches_direct_count(seed):
    m = random_model(random.Random(seed), 4, q=3, weights=("1", "-1/3", "2+i"))
    assert energy_spectrum(m).as_dict() == direct_spectrum(m)


def test_complex_couplings_give_complex_partition_function():
    m = build_model("ab", [("a", "b")], {("a", "b"): "i"})
    z = partition_function(m, 0.5)
    assert isinstance(z, complex)
    assert z == pytest.approx(2 * cmath.exp(-0.5 * 2j) + 2)


def test_group_algebra_basics():
    q = 3
    d1, d2 = GroupAlgebraElement.delta(1, q), GroupAlgebraElement.delta(2, q)
    assert d1 * d2 == GroupAlgebraElement.delta(0, q)
    assert d1.star() == d2
    assert (d1.star() * d1).tau() == 1
    assert (d1.star() * d2).tau() == 0
    assert (GroupAlgebraElement.zero(q) * d1) == GroupAlgebraElement.zero(q)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=6), st.integers(2, 5))
def test_lift_round_trip(omega, q):
    omega = [s % q for s in omega]
    lifted = lift_configuration(omega, q)
    back = [next(g for g, c in enumerate(x.coeffs) if c == 1) for x in lifted]
    assert back == omega
    assert all(sum(1 for c in x.coeffs if c != 0) == 1 for x in lifted)


@pytest.mark.parametrize("seed", range(4))
def test_bilinear_form_reproduces_hamiltonian(seed):
    m = random_model(random.Random(seed), 4, q=3, weights=("1", "1/2", "i"))
    for omega in itertools.product(range(3), repeat=4):
        L = lift_configuration(omega, 3)
        assert bilinear_form(m, L, L) == hamiltonian(m, omega)


def test_bilinear_form_length_mismatch():
    m = triangle()
    with pytest.raises(ValueError):
        bilinear_form(m, lift_configuration((0, 1, 0), 2), lift_configuration((0, 1, 0), 3))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.permutations(range(3)))
def test_spin_relabeling_invariance(seed, relabel):
    m = random_model(random.Random(seed), 4, q=3)
    for omega in itertools.product(range(3), repeat=4):
        assert hamiltonian(m, [relabel[s] for s in omega]) == hamiltonian(m, omega)


def test_check_preservation_cube():
    m = cube(2)
    idx = m.index
    rot = [0] * 8
    for a, b in zip("1234", "2341"):
        rot[idx[a]] = idx[b]
        rot[idx[a + "'"]] = idx[b + "'"]
    assert not check_preservation(m, rot)
    assert check_preservation(cube(1), rot)


def test_check_preservation_closed_under_composition():
    for m in random_models(7, 5, 3, 5):
        good = [p for p in itertools.permutations(range(m.n)) if check_preservation(m, p)]
        for a in good:
            assert check_preservation(m, inverse(a))
            for b in good[:4]:
                assert check_preservation(m, compose(a, b))


def test_guard():
    m = build_model([str(k) for k in range(30)], [], q=2)
    with pytest.raises(GuardError):
        energy_spectrum(m)
