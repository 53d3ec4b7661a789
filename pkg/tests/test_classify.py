import numpy as np
import pytest

from qpotts.classical import automorphisms, disjoint_pair_search, identity
from qpotts.classify import (
    COMMUTATIVE,
    QUANTUM,
    UNDETERMINED,
    CertificateError,
    NumericRep,
    build_numeric_certificate,
    classify,
    permutation_rep,
    structure_hint,
    verify_numeric_rep,
)
from qpotts.instances import complete, cube, example2, single_vertex, triangle
from qpotts.relations import saturate


def run(model):
    return classify(model, saturate(model), automorphisms(model))


def test_angle_projections_commutator():
    # independent check of the witness size for the two rank-one projections
    p = np.array([[1, 0], [0, 0]])
    q = np.full((2, 2), 0.5)
    assert np.abs(p @ q - q @ p).max() == 0.5
    assert np.linalg.norm(p @ q - q @ p, 2) == pytest.approx(0.5)


@pytest.mark.parametrize("lam", [2, "1/2", "3+i"])
def test_cube_commutative(lam):
    c = run(cube(lam))
    assert c.verdict == COMMUTATIVE
    assert c.structure_hint == "C(Z2 x Z2)"
    assert c.certificate is None


def test_cube_control_quantum():
    c = run(cube(1))
    assert c.verdict == QUANTUM
    v = c.verification
    assert v.exact and v.passed
    assert all(r == 0 for r in v.residuals.values())
    assert v.commutator == 0.5


def test_example2_quantum_free_product():
    c = run(example2(0, 1))
    assert c.verdict == QUANTUM
    assert c.structure_hint == "C(Z2) * C(Z2)"
    assert max(c.verification.residuals.values()) < 1e-12


def test_example2_control_not_quantum():
    c = run(example2(1, 1))
    assert c.verdict == COMMUTATIVE
    assert c.structure_hint == "C(Z2 x Z2)"


def test_small_cases():
    assert run(triangle()).verdict == UNDETERMINED
    assert run(triangle()).structure_hint is None
    assert run(single_vertex()).verdict == COMMUTATIVE


def test_complete_graph_k4_is_quantum():
    c = run(complete(4))
    assert c.verdict == QUANTUM


def test_permutation_reps_of_automorphisms_verify():
    m = cube(1)
    rs = saturate(m)
    for g in automorphisms(m).elements[:12]:
        ver = verify_numeric_rep(m, permutation_rep(g), 1e-12, rs)
        assert ver.passed and ver.commutator == 0


def test_non_automorphism_fails_verification():
    m = cube(2)
    rot = tuple(m.index[x] for x in ("2", "3", "4", "1", "2'", "3'", "4'", "1'"))
    ver = verify_numeric_rep(m, permutation_rep(rot), 1e-9)
    assert not ver.passed
    assert ver.residuals["commutant"] > 0


def test_perturbed_certificate_fails():
    m = cube(1)
    s, t = disjoint_pair_search(automorphisms(m))
    cert = build_numeric_certificate(m, None, s, t)
    entries = cert.entries.copy()
    entries[0, 0] = entries[0, 0] + 1e-6
    ver = verify_numeric_rep(m, NumericRep(2, entries), 1e-9)
    assert not ver.passed
    assert verify_numeric_rep(m, NumericRep(2, cert.entries), 1e-9).passed


def test_certificate_rejects_bad_witnesses():
    m = cube(1)
    s, t = disjoint_pair_search(automorphisms(m))
    with pytest.raises(CertificateError):
        build_numeric_certificate(m, None, s, s)
    with pytest.raises(CertificateError):
        build_numeric_certificate(m, None, identity(8), t)


def test_hint_without_group():
    assert structure_hint(saturate(example2(0, 1))) == "C(Z2) * C(Z2)"
