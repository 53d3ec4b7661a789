"""Classical symmetries: permutations commuting with the coupling matrix.

The search is individualization-refinement backtracking over the colour
matrix of exact coupling values. The group order comes from the stabilizer
chain that the search walks: at every base level the orbit of the base point
is found exactly, and the order is the product of the orbit lengths.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import MAX_ENGINE_VERTICES, GuardError, PottsModel, color_table, level_classes

Perm = tuple[int, ...]

MAX_ELEMENTS = 10**5
MAX_BRUTE_FORCE = 8


class SearchIncomplete(RuntimeError):
    """The group is too large to enumerate its elements."""


# --- permutation helpers ---------------------------------------------------


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Perm, b: Perm) -> Perm:
    """(a o b)(x) = a(b(x))."""
    return tuple(a[x] for x in b)


def inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def support(a: Perm) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(a) if i != x)


def perm_order(a: Perm) -> int:
    k, cur, ident = 1, a, identity(len(a))
    while cur != ident:
        cur = compose(a, cur)
        k += 1
    return k


def cycles(a: Perm) -> list[tuple[int, ...]]:
    seen, out = set(), []
    for start in range(len(a)):
        if start in seen or a[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = a[x]
        out.append(tuple(cyc))
    return out


def format_cycles(a: Perm, labels: Sequence[str]) -> str:
    cs = cycles(a)
    if not cs:
        return "()"
    return "".join("(" + " ".join(labels[x] for x in c) + ")" for c in cs)


def parse_cycles(text: str, labels: Sequence[str]) -> Perm:
    """Parse cycle notation over vertex labels, e.g. ``"(1 2 3 4)(1' 2' 3' 4')"``."""
    index = {lab: i for i, lab in enumerate(labels)}
    images = list(range(len(labels)))
    body = text.strip()
    if body in ("", "()", "id"):
        return tuple(images)
    groups = re.findall(r"\(([^()]*)\)", body)
    if re.sub(r"\([^()]*\)", "", body).strip():
        raise ValueError(f"malformed cycle notation {text!r}")
    seen: set[int] = set()
    for g in groups:
        toks = [t for t in re.split(r"[\s,]+", g.strip()) if t]
        try:
            pts = [index[t] for t in toks]
        except KeyError as exc:
            raise ValueError(f"unknown vertex {exc.args[0]!r} in permutation") from None
        if seen & set(pts) or len(set(pts)) != len(pts):
            raise ValueError(f"cycles in {text!r} are not disjoint")
        seen |= set(pts)
        for k, x in enumerate(pts):
            images[x] = pts[(k + 1) % len(pts)]
    return tuple(images)


def is_automorphism(color_of: np.ndarray, perm: Sequence[int]) -> bool:
    p = np.asarray(perm)
    return bool(np.array_equal(color_of[np.ix_(p, p)], color_of))


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    """P e_j = e_{perm[j]}."""
    n = len(perm)
    P = np.zeros((n, n), dtype=np.int64)
    for j, i in enumerate(perm):
        P[i, j] = 1
    return P


# --- the group -------------------------------------------------------------


@dataclass(frozen=True)
class AutGroup:
    n: int
    generators: tuple[Perm, ...]
    order: int
    base: tuple[int, ...] = ()
    orbit_sizes: tuple[int, ...] = ()
    elements: tuple[Perm, ...] | None = None

    def element_set(self) -> frozenset[Perm]:
        if self.elements is None:
            raise SearchIncomplete(f"group of order {self.order} exceeds enumeration limit")
        return frozenset(self.elements)


def _orbit_transversal(point: int, gens: Sequence[Perm], n: int) -> dict[int, Perm]:
    reps = {point: identity(n)}
    queue = [point]
    for x in queue:
        for g in gens:
            y = g[x]
            if y not in reps:
                reps[y] = compose(g, reps[x])
                queue.append(y)
    return reps


def _elements_from_chain(n: int, base: Sequence[int], level_gens: Sequence[Sequence[Perm]]) -> list[Perm]:
    elements = [identity(n)]
    for i in range(len(base) - 1, -1, -1):
        gens = [g for lv in level_gens[i:] for g in lv]
        trans = _orbit_transversal(base[i], gens, n)
        elements = [compose(t, h) for t in trans.values() for h in elements]
    return sorted(elements)


# --- refinement --------------------------------------------------------------


def _refine(cells: list[list[int]], C: np.ndarray, ncolors: int) -> tuple[list[list[int]], list]:
    """Equitable refinement by colour-degree vectors; returns the new cells and a split trace."""
    n = C.shape[0]
    trace = []
    while True:
        cell_of = np.empty(n, dtype=np.int64)
        for k, cell in enumerate(cells):
            cell_of[cell] = k
        keys = cell_of[None, :] * ncolors + C
        width = len(cells) * ncolors
        new_cells: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sigs: dict[bytes, list[int]] = {}
            for v in cell:
                sigs.setdefault(np.bincount(keys[v], minlength=width).tobytes(), []).append(v)
            if len(sigs) == 1:
                new_cells.append(cell)
                continue
            split = True
            parts = sorted(sigs.items())
            trace.append(tuple((s, len(vs)) for s, vs in parts))
            new_cells.extend(vs for _, vs in parts)
        cells = new_cells
        trace.append(len(cells))
        if not split:
            return cells, trace


def _individualize(cells: list[list[int]], v: int) -> list[list[int]]:
    out = []
    for cell in cells:
        if v in cell and len(cell) > 1:
            out.append([v])
            out.append([x for x in cell if x != v])
        else:
            out.append(cell)
    return out


def _target_cell(cells: list[list[int]]) -> int:
    best = max(len(c) for c in cells)
    return next(k for k, c in enumerate(cells) if len(c) == best)


def _extend(C, ncolors, left, right) -> Perm | None:
    left, tl = _refine(left, C, ncolors)
    right, tr = _refine(right, C, ncolors)
    if tl != tr or [len(c) for c in left] != [len(c) for c in right]:
        return None
    if all(len(c) == 1 for c in left):
        images = [0] * C.shape[0]
        for a, b in zip(left, right):
            images[a[0]] = b[0]
        perm = tuple(images)
        return perm if is_automorphism(C, perm) else None
    k = _target_cell(left)
    v = min(left[k])
    for w in sorted(right[k]):
        found = _extend(C, ncolors, _individualize(left, v), _individualize(right, w))
        if found is not None:
            return found
    return None


def initial_cells(model: PottsModel) -> list[list[int]]:
    """Level-function classes refined to colour-degree stability."""
    ct = color_table(model)
    cells, _ = _refine([sorted(c) for c in level_classes(model)], ct.color_of, ct.count)
    return cells


def automorphisms(model: PottsModel) -> AutGroup:
    n = model.n
    if n > MAX_ENGINE_VERTICES:
        raise GuardError(f"n = {n} exceeds the supported maximum {MAX_ENGINE_VERTICES}")
    ct = color_table(model)
    C, m = ct.color_of, ct.count
    cells = initial_cells(model)
    base: list[int] = []
    level_gens: list[list[Perm]] = []
    sizes: list[int] = []
    while not all(len(c) == 1 for c in cells):
        k = _target_cell(cells)
        b = min(cells[k])
        left = _individualize(cells, b)
        gens: list[Perm] = []
        orbit = {b}
        for c in sorted(cells[k]):
            if c in orbit:
                continue
            perm = _extend(C, m, left, _individualize(cells, c))
            if perm is not None:
                gens.append(perm)
                orbit = set(_orbit_transversal(b, gens, n))
        base.append(b)
        level_gens.append(gens)
        sizes.append(len(orbit))
        cells, _ = _refine(left, C, m)
    order = 1
    for s in sizes:
        order *= s
    elements = None
    if order <= MAX_ELEMENTS:
        elements = tuple(_elements_from_chain(n, base, level_gens))
        assert len(elements) == order
    generators = tuple(g for lv in level_gens for g in lv)
    return AutGroup(n, generators, order, tuple(base), tuple(sizes), elements)


def brute_force_automorphisms(model: PottsModel) -> AutGroup:
    """Filter all n! permutations; the oracle for :func:`automorphisms`."""
    n = model.n
    if n > MAX_BRUTE_FORCE:
        raise GuardError(f"brute force limited to n <= {MAX_BRUTE_FORCE}, got {n}")
    C = color_table(model).color_of
    found = tuple(p for p in itertools.permutations(range(n)) if is_automorphism(C, p))
    return AutGroup(n, tuple(p for p in found if p != identity(n)), len(found), elements=found)


def disjoint_pair_search(aut: AutGroup) -> tuple[Perm, Perm] | None:
    """Two nontrivial automorphisms with disjoint supports, involutions preferred.

    Candidates are ordered by (order, support size, images), so the result
    is deterministic.
    """
    if aut.elements is None:
        raise SearchIncomplete(f"group of order {aut.order} too large to search")
    ident = identity(aut.n)
    nontrivial = [g for g in aut.elements if g != ident]
    by_support: dict[frozenset[int], Perm] = {}
    for g in sorted(nontrivial, key=lambda g: (perm_order(g) != 2, len(support(g)), g)):
        by_support.setdefault(support(g), g)
    pool = list(by_support.items())
    involutions = [(s, g) for s, g in pool if perm_order(g) == 2]
    for candidates in (involutions, pool):
        for (s1, g1), (s2, g2) in itertools.combinations(candidates, 2):
            if not s1 & s2:
                return g1, g2
    return None


def group_name(aut: AutGroup) -> str:
    """A short name for small groups: ``1``, ``Zk``, ``Z2 x Z2 ...``, ``Sk``; else ``G(order)``."""
    if aut.order == 1:
        return "1"
    if aut.elements is None:
        return f"G({aut.order})"
    els = aut.elements
    orders = [perm_order(g) for g in els]
    abelian = all(compose(a, b) == compose(b, a) for a in aut.generators for b in aut.generators)
    if max(orders) == aut.order:
        return f"Z{aut.order}"
    if abelian and max(orders) == 2:
        k = aut.order.bit_length() - 1
        return " x ".join(["Z2"] * k)
    moved = set().union(*(support(g) for g in aut.generators))
    m = len(moved)
    if aut.order == _factorial(m):
        return f"S{m}"
    return f"G({aut.order})"


def _factorial(m: int) -> int:
    out = 1
    for k in range(2, m + 1):
        out *= k
    return out
