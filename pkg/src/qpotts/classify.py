"""Verdicts on saturated presentations, with checkable certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .classical import (
    AutGroup,
    Perm,
    SearchIncomplete,
    disjoint_pair_search,
    format_cycles,
    group_name,
    identity,
    perm_order,
    support,
)
from .model import PottsModel, level_function
from .relations import ONE_STATE, ZERO_STATE, RelationSet, all_commute, relation_components
from .scalars import ONE, ZERO, GaussianRational

COMMUTATIVE = "Commutative"
QUANTUM = "Quantum"
UNDETERMINED = "Undetermined"

DEFAULT_TOL = 1e-9
MIN_WITNESS = 1e-2

FAMILIES = ("projection", "row_column_sums", "presentation", "commutant", "bilinear", "level_function")


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class NumericRep:
    """A d-dimensional magic unitary: ``entries[i, j]`` is the d x d matrix of q[i, j].

    ``exact`` holds the same matrices as objects of :class:`GaussianRational`
    when the construction is rational; verification then runs exactly.
    """

    dimension: int
    entries: np.ndarray
    exact: np.ndarray | None = None
    witness: tuple[Perm, Perm] | None = None


@dataclass
class Verification:
    residuals: dict[str, float]
    tol: float
    exact: bool
    commutator: float = 0.0
    commutator_pair: tuple[tuple[int, int], tuple[int, int]] | None = None
    commutator_exact: GaussianRational | None = None

    @property
    def passed(self) -> bool:
        return all(r < self.tol for r in self.residuals.values())


@dataclass
class Classification:
    verdict: str
    classical_group: AutGroup
    structure_hint: str | None = None
    certificate: NumericRep | None = None
    verification: Verification | None = None
    notes: list[str] = field(default_factory=list)


# --- representations -----------------------------------------------------------


def _gr_matrix(rows: Sequence[Sequence]) -> np.ndarray:
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for a, row in enumerate(rows):
        for b, x in enumerate(row):
            out[a, b] = GaussianRational.coerce(x)
    return out


def _to_complex(exact: np.ndarray) -> np.ndarray:
    return np.vectorize(complex, otypes=[complex])(exact)


def rep_from_exact(exact: np.ndarray, witness=None) -> NumericRep:
    return NumericRep(exact.shape[2], _to_complex(exact), exact, witness)


def permutation_rep(perm: Perm) -> NumericRep:
    """The classical point q[i, j] = [i = perm(j)] as a 1-dimensional representation."""
    n = len(perm)
    exact = np.empty((n, n, 1, 1), dtype=object)
    for i in range(n):
        for j in range(n):
            exact[i, j, 0, 0] = ONE if i == perm[j] else ZERO
    return rep_from_exact(exact)


PROJ_P = ((1, 0), (0, 0))
PROJ_Q = ((Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 2), Fraction(1, 2)))


def build_numeric_certificate(model: PottsModel, rs: RelationSet | None, sigma: Perm, tau: Perm) -> NumericRep:
    """Two-dimensional magic unitary from involutive automorphisms with disjoint supports.

    On the support of ``sigma`` the entries follow (1-p) id + p sigma, on the
    support of ``tau`` they follow (1-q) id + q tau, and they are the identity
    pattern elsewhere. p and q are rank-one projections at angle pi/4, so
    every entry is rational.
    """
    n = model.n
    s_sup, t_sup = support(sigma), support(tau)
    if not s_sup or not t_sup:
        raise CertificateError("witness permutations must be nontrivial")
    if s_sup & t_sup:
        raise CertificateError("witness permutations have overlapping supports")
    if perm_order(sigma) != 2 or perm_order(tau) != 2:
        raise CertificateError("only involutive witnesses are supported")
    I2 = _gr_matrix(((1, 0), (0, 1)))
    Z2 = _gr_matrix(((0, 0), (0, 0)))
    p, q = _gr_matrix(PROJ_P), _gr_matrix(PROJ_Q)
    exact = np.empty((n, n, 2, 2), dtype=object)
    for i in range(n):
        for j in range(n):
            if i in s_sup:
                proj, perm = p, sigma
            elif i in t_sup:
                proj, perm = q, tau
            else:
                exact[i, j] = I2 if i == j else Z2
                continue
            m = Z2.copy()
            if i == j:
                m = m + (I2 - proj)
            if i == perm[j]:
                m = m + proj
            exact[i, j] = m
    return rep_from_exact(exact, (sigma, tau))


def _is_zero_block(m) -> bool:
    if m.dtype == object:
        return all(z.is_zero() for z in m.ravel())
    return not m.any()


def _maxabs(x) -> float:
    x = np.asarray(x)
    if x.size == 0:
        return 0.0
    if x.dtype == object:
        return max(abs(complex(v)) for v in x.ravel())
    return float(np.abs(x).max())


def verify_numeric_rep(
    model: PottsModel,
    rep: NumericRep,
    tol: float = DEFAULT_TOL,
    rs: RelationSet | None = None,
) -> Verification:
    """Residual per relation family; exact arithmetic when the rep carries rational entries."""
    n = model.n
    exact = rep.exact is not None
    M = rep.exact if exact else np.asarray(rep.entries, dtype=complex)
    if M.shape[:2] != (n, n) or M.shape[2] != M.shape[3]:
        raise CertificateError(f"representation has shape {M.shape}, expected ({n}, {n}, d, d)")
    d = M.shape[2]
    if exact:
        I = _gr_matrix([[1 if a == b else 0 for b in range(d)] for a in range(d)])
        Jm = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                Jm[i, j] = model.J[i][j]
        conj = np.vectorize(lambda z: z.conjugate(), otypes=[object])
        f = np.array(level_function(model), dtype=object)
    else:
        I = np.eye(d, dtype=complex)
        Jm = model.complex_matrix()
        conj = np.conj
        f = np.array([complex(x) for x in level_function(model)])

    res = {k: 0.0 for k in FAMILIES}

    def bump(family, value):
        res[family] = max(res[family], _maxabs(value))

    for i in range(n):
        for j in range(n):
            m = M[i, j]
            bump("projection", m - conj(m).T)
            bump("projection", m @ m - m)
    for i in range(n):
        bump("row_column_sums", sum((M[i, j] for j in range(n)), start=0 * I) - I)
        bump("row_column_sums", sum((M[j, i] for j in range(n)), start=0 * I) - I)

    # QJ - JQ and the level-function identity
    for i in range(n):
        for j in range(n):
            qj = sum((M[i, k] * Jm[k, j] for k in range(n)), start=0 * I)
            jq = sum((Jm[i, k] * M[k, j] for k in range(n)), start=0 * I)
            bump("commutant", qj - jq)
        bump("level_function", sum((M[i, k] * f[k] for k in range(n)), start=0 * I) - f[i] * I)

    # Q^{bc} = sum_kl J_kl q_kb q_lc must equal J_bc 1
    for b in range(n):
        for c in range(n):
            acc = 0 * I
            for k in range(n):
                if _is_zero_block(M[k, b]):
                    continue
                row = sum((Jm[k, l] * M[l, c] for l in range(n)), start=0 * I)
                acc = acc + M[k, b] @ row
            bump("bilinear", acc - Jm[b, c] * I)

    if rs is not None:
        for (i, j), value in _presentation_targets(rs):
            bump("presentation", M[i, j] - value * I)
        for (a, b), (c, e) in _equal_pairs(rs):
            bump("presentation", M[a, b] - M[c, e])
        for (a, b), (c, e) in _zero_pairs(rs):
            bump("presentation", M[a, b] @ M[c, e])
        for ident in rs.identities:
            acc = 0 * I
            for ent, coef in ident.coeffs:
                i, j = divmod(ent, n)
                acc = acc + M[i, j] * (GaussianRational(coef) if exact else float(coef))
            bump("presentation", acc - (GaussianRational(ident.const) if exact else float(ident.const)) * I)
    else:
        del res["presentation"]

    ver = Verification(res, tol, exact)
    num = np.asarray(rep.entries, dtype=complex).reshape(n * n, d, d)
    best, pair = 0.0, None
    for a in range(n * n):
        comm = np.abs(np.einsum("ij,bjk->bik", num[a], num) - np.einsum("bij,jk->bik", num, num[a])).max(axis=(1, 2))
        b = int(np.argmax(comm))
        if comm[b] > best + 1e-15:
            best, pair = float(comm[b]), (divmod(a, n), divmod(b, n))
    ver.commutator, ver.commutator_pair = best, pair
    if exact and pair is not None:
        (a, b), (c, e) = pair
        diff = (M[a, b] @ M[c, e] - M[c, e] @ M[a, b]).ravel()
        top = max(diff, key=lambda z: abs(complex(z)))
        if top.is_real():
            ver.commutator_exact = GaussianRational(abs(top.re))
    return ver


def _presentation_targets(rs: RelationSet):
    for i in range(rs.n):
        for j in range(rs.n):
            s = rs.state(i, j)
            if s == ZERO_STATE:
                yield (i, j), 0
            elif s == ONE_STATE:
                yield (i, j), 1


def _equal_pairs(rs: RelationSet):
    for rep, members in rs.classes().items():
        a = divmod(rep, rs.n)
        for e in members:
            if e != rep:
                yield a, divmod(e, rs.n)


def _zero_pairs(rs: RelationSet):
    N = rs.n * rs.n
    for e in range(N):
        if rs.find(e) >= rs.zero_node:
            continue
        mask = rs.zp[e]
        for f in range(N):
            if mask >> f & 1 and rs.find(f) < rs.zero_node:
                yield divmod(e, rs.n), divmod(f, rs.n)


# --- verdicts -----------------------------------------------------------------


def _restricted_group(aut: AutGroup, vertices: set[int]) -> AutGroup | None:
    if aut.elements is None:
        return None
    n = aut.n
    seen = set()
    for g in aut.elements:
        seen.add(tuple(g[v] if v in vertices else v for v in range(n)))
    els = tuple(sorted(seen))
    if any(sorted(g) != list(range(n)) for g in els):
        return None
    gens = tuple(g for g in els if g != identity(n))
    return AutGroup(n, gens, len(els), elements=els)


def structure_hint(rs: RelationSet, aut: AutGroup | None = None) -> str | None:
    """Name the presentation by templates; a hint, not a verified claim."""
    classes = rs.classes()
    if not classes:
        return None
    if all_commute(rs) and aut is not None:
        return f"C({group_name(aut)})"
    comps = relation_components(rs)
    names = []
    for comp in comps:
        cset = set(comp)
        indep = [r for r in comp if not any(frozenset((r, o)) in rs.complements for o in comp if o < r)]
        commuting = all(frozenset((a, b)) in rs.commuting for a in comp for b in comp if a < b)
        if len(indep) == 1:
            names.append("C(Z2)")
        elif commuting and aut is not None:
            verts = {v for r in cset for e in classes[r] for v in divmod(e, rs.n)}
            sub = _restricted_group(aut, verts)
            names.append(f"C({group_name(sub)})" if sub is not None else "unnamed component")
        else:
            names.append("unnamed component")
    if len(names) == 1 and names[0] == "unnamed component":
        return None
    return " * ".join(names)


def classify(model: PottsModel, rs: RelationSet, aut: AutGroup, tol: float = DEFAULT_TOL) -> Classification:
    notes = [
        "verdict concerns the saturated presentation, not the universal object beyond it",
        "the spin-state count q does not enter the relations",
    ]
    if model.zero_pattern_matches_adjacency():
        notes.append("nonzero couplings exactly on edges: the quantum symmetry group sits inside the quantum automorphism group of the graph")
    else:
        notes.append("some edges carry zero coupling: adjacency and coupling zero patterns differ")
    hint = structure_hint(rs, aut)
    if all_commute(rs):
        notes.append("all surviving generators commute (R-comm closure)")
        return Classification(COMMUTATIVE, aut, hint, notes=notes)
    try:
        pair = disjoint_pair_search(aut)
    except SearchIncomplete as exc:
        notes.append(f"disjoint-automorphism search incomplete: {exc}")
        pair = None
    if pair is None:
        notes.append("no disjoint-support automorphism pair; no certificate")
        return Classification(UNDETERMINED, aut, hint, notes=notes)
    sigma, tau = pair
    labels = model.labels
    try:
        cert = build_numeric_certificate(model, rs, sigma, tau)
    except CertificateError as exc:
        notes.append(f"certificate construction failed: {exc}")
        return Classification(UNDETERMINED, aut, hint, notes=notes)
    ver = verify_numeric_rep(model, cert, tol, rs)
    notes.append(f"disjoint automorphisms {format_cycles(sigma, labels)} and {format_cycles(tau, labels)}")
    if ver.passed and ver.commutator >= MIN_WITNESS:
        return Classification(QUANTUM, aut, hint, cert, ver, notes)
    notes.append("certificate failed verification")
    return Classification(UNDETERMINED, aut, hint, cert, ver, notes)
