"""Exact enumeration oracles for the Potts hamiltonian and its group-algebra form.

The hamiltonian sums over *ordered* vertex pairs, so an edge whose endpoints
agree contributes twice its coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .model import GuardError, PottsModel
from .scalars import ONE, ZERO, GaussianRational

MAX_CONFIGURATIONS = 2**24
_CHUNK = 1 << 16


class ConfigurationError(ValueError):
    pass


def _check_config(model: PottsModel, omega: Sequence[int]) -> tuple[int, ...]:
    omega = tuple(int(s) for s in omega)
    if len(omega) != model.n:
        raise ConfigurationError(f"configuration has length {len(omega)}, expected {model.n}")
    for s in omega:
        if not 0 <= s < model.q:
            raise ConfigurationError(f"spin {s} out of range [0, {model.q})")
    return omega


def hamiltonian(model: PottsModel, omega: Sequence[int]) -> GaussianRational:
    omega = _check_config(model, omega)
    total = ZERO
    for i in range(model.n):
        for j in range(model.n):
            if omega[i] == omega[j]:
                total = total + model.J[i][j]
    return total


# --- group algebra of Z_q -------------------------------------------------


@dataclass(frozen=True)
class GroupAlgebraElement:
    """A function Z_q -> C stored densely; ``coeffs[g]`` is the value at g."""

    coeffs: tuple[GaussianRational, ...]

    @property
    def q(self) -> int:
        return len(self.coeffs)

    @classmethod
    def delta(cls, g: int, q: int) -> "GroupAlgebraElement":
        return cls(tuple(ONE if h == g else ZERO for h in range(q)))

    @classmethod
    def zero(cls, q: int) -> "GroupAlgebraElement":
        return cls((ZERO,) * q)

    def star(self) -> "GroupAlgebraElement":
        q = self.q
        return GroupAlgebraElement(tuple(self.coeffs[(-g) % q].conjugate() for g in range(q)))

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        # convolution
        if other.q != self.q:
            raise ValueError("group algebra elements over different Z_q")
        q = self.q
        out = [ZERO] * q
        for g, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for h, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[(g + h) % q] = out[(g + h) % q] + a * b
        return GroupAlgebraElement(tuple(out))

    def tau(self) -> GaussianRational:
        return self.coeffs[0]


def lift_configuration(omega: Sequence[int], q: int) -> list[GroupAlgebraElement]:
    return [GroupAlgebraElement.delta(int(s), q) for s in omega]


def bilinear_form(
    model: PottsModel,
    F: Sequence[GroupAlgebraElement],
    H: Sequence[GroupAlgebraElement],
) -> GaussianRational:
    """sum_{i,j} J_ij tau(F(i)^* * H(j))."""
    if len(F) != model.n or len(H) != model.n:
        raise ValueError("one group algebra element per vertex required")
    qs = {e.q for e in F} | {e.q for e in H}
    if len(qs) != 1:
        raise ValueError(f"group algebra length mismatch: {sorted(qs)}")
    total = ZERO
    for i in range(model.n):
        fi = F[i].star()
        for j in range(model.n):
            w = model.J[i][j]
            if w.is_zero():
                continue
            total = total + w * (fi * H[j]).tau()
    return total


# --- exhaustive enumeration ---------------------------------------------


def _guard(model: PottsModel) -> None:
    if model.q**model.n > MAX_CONFIGURATIONS:
        raise GuardError(f"q^n = {model.q}^{model.n} exceeds the enumeration limit 2^24")


def _config_chunks(n: int, q: int) -> Iterator[np.ndarray]:
    total = q**n
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        yield (idx[:, None] // powers[None, :]) % q


def _scaled_couplings(J) -> tuple[list[tuple[int, int, int, int]], int]:
    """Upper-triangle couplings as (i, j, 2*re*D, 2*im*D) integers with common denominator D."""
    n = len(J)
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            den = math.lcm(den, J[i][j].re.denominator, J[i][j].im.denominator)
    terms = []
    for i in range(n):
        for j in range(i + 1, n):
            w = J[i][j]
            if not w.is_zero():
                terms.append((i, j, int(2 * w.re * den), int(2 * w.im * den)))
    return terms, den


def _energies(J, n: int, q: int) -> Iterator[tuple[np.ndarray, np.ndarray, int]]:
    terms, den = _scaled_couplings(J)
    bound = sum(abs(a) + abs(b) for _, _, a, b in terms)
    dtype = np.int64 if bound < 2**62 else object
    for conf in _config_chunks(n, q):
        re = np.zeros(len(conf), dtype=dtype)
        im = np.zeros(len(conf), dtype=dtype)
        for i, j, a, b in terms:
            eq = (conf[:, i] == conf[:, j]).astype(dtype)
            if a:
                re = re + a * eq
            if b:
                im = im + b * eq
        yield re, im, den


@dataclass(frozen=True)
class EnergySpectrum:
    """Exact energies with multiplicities, sorted by (real, imaginary) part."""

    levels: tuple[tuple[GaussianRational, int], ...]

    def as_dict(self) -> dict[GaussianRational, int]:
        return dict(self.levels)

    def total(self) -> int:
        return sum(m for _, m in self.levels)


def energy_spectrum(model: PottsModel) -> EnergySpectrum:
    _guard(model)
    counts: dict[tuple[int, int], int] = {}
    den = 1
    for re, im, den in _energies(model.J, model.n, model.q):
        pairs, mult = np.unique(np.stack([re, im], axis=1), axis=0, return_counts=True)
        for (a, b), m in zip(pairs.tolist(), mult.tolist()):
            counts[(int(a), int(b))] = counts.get((int(a), int(b)), 0) + int(m)
    levels = sorted(
        ((GaussianRational(Fraction(a, den), Fraction(b, den)), m) for (a, b), m in counts.items()),
        key=lambda t: t[0].sort_key(),
    )
    return EnergySpectrum(tuple(levels))


def partition_function(model: PottsModel, beta: float, spectrum: EnergySpectrum | None = None):
    """Z(beta) = sum over levels of multiplicity * exp(-beta * E).

    Returns a float for real couplings and a complex number otherwise.
    """
    beta = float(beta)
    if not math.isfinite(beta):
        raise ValueError("beta must be finite")
    spectrum = spectrum or energy_spectrum(model)
    if all(e.is_real() for e, _ in spectrum.levels):
        return math.fsum(m * math.exp(-beta * float(e.re)) for e, m in spectrum.levels)
    terms = [m * np.exp(-beta * complex(e)) for e, m in spectrum.levels]
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def check_preservation(model: PottsModel, sigma: Sequence[int]) -> bool:
    """Does the permutation matrix of ``sigma`` preserve the hamiltonian on every configuration?

    For a permutation matrix the operator entries reduce to the scalars
    J[sigma^-1(i)][sigma^-1(j)], so both sides are compared as exact energies.
    """
    _guard(model)
    n = model.n
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(n)):
        raise ValueError("sigma is not a permutation of the vertices")
    inv = [0] * n
    for i, s in enumerate(sigma):
        inv[s] = i
    moved = tuple(tuple(model.J[inv[i]][inv[j]] for j in range(n)) for i in range(n))
    for (ra, ia, _), (rb, ib, _) in zip(_energies(model.J, n, model.q), _energies(moved, n, model.q)):
        if not (np.array_equal(ra, rb) and np.array_equal(ia, ib)):
            return False
    return True
