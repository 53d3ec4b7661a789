"""Ready-made Potts instances: the cube and the 8-vertex cubic example, plus small graphs."""

from __future__ import annotations

from itertools import combinations

from .model import PottsModel, build_model
from .scalars import Number

CUBE_LABELS = ("1", "2", "3", "4", "1'", "2'", "3'", "4'")


def cube(lam: Number = 1, q: int = 2) -> PottsModel:
    """Cube with faces 1-2-3-4 and 1'-2'-3'-4', rungs i-i'; edge {4, 4'} has weight ``lam``."""
    edges = []
    for side in ("", "'"):
        ring = [f"{k}{side}" for k in "1234"]
        edges += [(ring[k], ring[(k + 1) % 4]) for k in range(4)]
    edges += [(k, f"{k}'") for k in "1234"]
    return build_model(CUBE_LABELS, edges, {("4", "4'"): lam}, q)


EXAMPLE2_EDGES = (
    ("1", "2"), ("1", "7"), ("1", "8"), ("7", "8"),
    ("7", "3"), ("3", "5"), ("3", "4"), ("5", "6"),
    ("5", "2"), ("2", "6"), ("6", "4"), ("4", "8"),
)


def example2(lam1: Number = 0, lam2: Number = 1, q: int = 2) -> PottsModel:
    """The 8-vertex cubic graph with dashed edges weighted ``lam1`` and edge {5, 6} weighted ``lam2``.

    Only the twelve drawn edges carry weight; every other pair has coupling 0.
    """
    weights = {
        ("7", "8"): lam1, ("1", "7"): lam1, ("1", "8"): lam1,
        ("2", "5"): lam1, ("2", "6"): lam1, ("5", "6"): lam2,
    }
    return build_model([str(k) for k in range(1, 9)], EXAMPLE2_EDGES, weights, q)


def path(n: int, q: int = 2) -> PottsModel:
    labels = [str(k) for k in range(1, n + 1)]
    return build_model(labels, list(zip(labels, labels[1:])), q=q)


def complete(n: int, q: int = 2, weight: Number = 1) -> PottsModel:
    labels = [str(k) for k in range(1, n + 1)]
    return build_model(labels, list(combinations(labels, 2)), q=q, default_weight=weight)


def triangle(q: int = 2) -> PottsModel:
    return complete(3, q)


def single_vertex(q: int = 2) -> PottsModel:
    return build_model(["1"], [], q=q)


def single_edge(weight: Number = 1, q: int = 2) -> PottsModel:
    return build_model(["1", "2"], [("1", "2")], {("1", "2"): weight}, q)
