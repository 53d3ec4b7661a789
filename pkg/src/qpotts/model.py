"""Weighted-graph Potts instances and the combinatorial data derived from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .scalars import ZERO, GaussianRational, Number

MAX_ENGINE_VERTICES = 64


class ModelError(ValueError):
    """Raised for an invalid Potts instance."""


class GuardError(RuntimeError):
    """The instance exceeds a size limit of an exhaustive or symbolic routine."""


@dataclass(frozen=True)
class PottsModel:
    """A q-state Potts model on a finite weighted graph.

    ``J`` is the full coupling matrix indexed by ordered vertex pairs; it is
    symmetric with zero diagonal and vanishes off the edge set. Edges carrying
    weight zero are kept in ``edges``, so adjacency is not recoverable from
    ``J`` alone.
    """

    labels: tuple[str, ...]
    edges: frozenset[tuple[int, int]]
    J: tuple[tuple[GaussianRational, ...], ...]
    q: int
    index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {lab: i for i, lab in enumerate(self.labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    def weight(self, i: int, j: int) -> GaussianRational:
        return self.J[i][j]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for i, j in self.edges:
            a[i, j] = a[j, i] = 1
        return a

    def is_real(self) -> bool:
        return all(w.is_real() for row in self.J for w in row)

    def zero_pattern_matches_adjacency(self) -> bool:
        """True when every edge carries a nonzero weight, i.e. J vanishes exactly off E."""
        return all(not self.J[i][j].is_zero() for i, j in self.edges)

    def complex_matrix(self) -> np.ndarray:
        return np.array([[complex(w) for w in row] for row in self.J], dtype=complex)


def build_model(
    labels: Sequence[str],
    edges: Iterable[tuple[str, str]],
    weights: Mapping[tuple[str, str], Number] | None = None,
    q: int = 2,
    default_weight: Number = 1,
) -> PottsModel:
    """Validate and assemble a :class:`PottsModel`.

    ``weights`` is keyed by unordered label pairs (either orientation);
    edges missing from it get ``default_weight``.
    """
    labels = tuple(str(x) for x in labels)
    if len(set(labels)) != len(labels):
        dup = sorted({x for x in labels if labels.count(x) > 1})
        raise ModelError(f"duplicate vertex labels: {dup}")
    if not isinstance(q, int) or isinstance(q, bool) or q < 2:
        raise ModelError(f"q must be an integer >= 2, got {q!r}")
    index = {lab: i for i, lab in enumerate(labels)}

    def _pair(u: str, v: str) -> tuple[int, int]:
        u, v = str(u), str(v)
        for x in (u, v):
            if x not in index:
                raise ModelError(f"unknown vertex {x!r}")
        if u == v:
            raise ModelError(f"self-loop at vertex {u!r}")
        i, j = index[u], index[v]
        return (i, j) if i < j else (j, i)

    edge_set: set[tuple[int, int]] = set()
    for u, v in edges:
        edge_set.add(_pair(u, v))

    n = len(labels)
    J = [[ZERO] * n for _ in range(n)]
    default = GaussianRational.coerce(default_weight)
    for i, j in edge_set:
        J[i][j] = J[j][i] = default
    for (u, v), w in (weights or {}).items():
        p = _pair(u, v)
        if p not in edge_set:
            raise ModelError(f"weight assigned to non-edge {{{u}, {v}}}")
        i, j = p
        J[i][j] = J[j][i] = GaussianRational.coerce(w)
    return PottsModel(labels, frozenset(edge_set), tuple(tuple(r) for r in J), q)


@dataclass(frozen=True)
class ColorTable:
    """Dense ids for the distinct coupling values; scalar 0 always has id 0."""

    colors: Mapping[GaussianRational, int]
    color_of: np.ndarray

    @property
    def count(self) -> int:
        return len(self.colors)

    def value_of(self, color: int) -> GaussianRational:
        for v, c in self.colors.items():
            if c == color:
                return v
        raise KeyError(color)


def color_table(model: PottsModel) -> ColorTable:
    colors: dict[GaussianRational, int] = {ZERO: 0}
    n = model.n
    color_of = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            w = model.J[i][j]
            if w not in colors:
                colors[w] = len(colors)
            color_of[i, j] = colors[w]
    color_of.setflags(write=False)
    return ColorTable(colors, color_of)


def level_function(model: PottsModel) -> tuple[GaussianRational, ...]:
    """Row sums of the coupling matrix, one per vertex."""
    out = []
    for row in model.J:
        s = ZERO
        for w in row:
            s = s + w
        out.append(s)
    return tuple(out)


def level_classes(model: PottsModel) -> list[list[int]]:
    """Vertices grouped by level-function value, in order of first appearance."""
    groups: dict[GaussianRational, list[int]] = {}
    for v, val in enumerate(level_function(model)):
        groups.setdefault(val, []).append(v)
    return list(groups.values())
