"""Saturation of the quantum-permutation presentation commuting with the couplings.

Generators are the entries ``q[i, j]`` of an n x n magic unitary Q. The
relation set tracks, per entry, whether it is forced to 0, forced to 1 or
is a variable; forced equalities between entries (a union-find whose two
extra nodes are the constants 0 and 1); degree-two zero products; and
affine identities with rational coefficients. :func:`propagate` applies the
rule system to a fixpoint in the fixed order

    R-subst, R-pos, R-eq, R-sum1, R-wl

and :func:`commutation_closure` (R-comm) is computed on the result. R-comm
never feeds back into the other rules, so running it once after the
fixpoint is the same as running it last in every round.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .classical import _refine
from .linear import LinearSystem, form_key
from .model import MAX_ENGINE_VERTICES, GuardError, PottsModel, color_table, level_function
from .scalars import GaussianRational

ZERO_STATE = "0"
ONE_STATE = "1"


class Inconsistent(RuntimeError):
    """The relations force a contradiction such as 0 = 1."""


@dataclass(frozen=True)
class Identity:
    """``sum(c * q[e]) = const * 1`` over flat entry indices ``e = i*n + j``."""

    coeffs: tuple[tuple[int, Fraction], ...]
    const: Fraction
    source: str


@dataclass
class TraceEvent:
    rule: str
    message: str
    measure: int


@dataclass
class RelationSet:
    model: PottsModel
    parent: list[int]
    zp: list[int]
    identities: list[Identity] = field(default_factory=list)
    commuting: set[frozenset[int]] = field(default_factory=set)
    complements: set[frozenset[int]] = field(default_factory=set)
    trace: list[TraceEvent] = field(default_factory=list)
    at_fixpoint: bool = False
    _system: LinearSystem | None = field(default=None, repr=False)

    # -- bookkeeping ------------------------------------------------------

    @property
    def n(self) -> int:
        return self.model.n

    @property
    def zero_node(self) -> int:
        return self.n * self.n

    @property
    def one_node(self) -> int:
        return self.n * self.n + 1

    def entry(self, i: int, j: int) -> int:
        return i * self.n + j

    def entry_name(self, e: int) -> str:
        i, j = divmod(e, self.n)
        return f"q[{self.model.labels[i]},{self.model.labels[j]}]"

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def state(self, i: int, j: int):
        """``"0"``, ``"1"`` or the canonical variable id (the class's smallest entry)."""
        r = self.find(self.entry(i, j))
        if r == self.zero_node:
            return ZERO_STATE
        if r == self.one_node:
            return ONE_STATE
        return r

    def is_zero(self, i: int, j: int) -> bool:
        return self.state(i, j) == ZERO_STATE

    def same_class(self, a: tuple[int, int], b: tuple[int, int]) -> bool:
        return self.find(self.entry(*a)) == self.find(self.entry(*b))

    def classes(self) -> dict[int, list[int]]:
        """Surviving variable classes keyed by representative, members in row-major order."""
        out: dict[int, list[int]] = {}
        for e in range(self.n * self.n):
            r = self.find(e)
            if r < self.zero_node:
                out.setdefault(r, []).append(e)
        return out

    def measure(self) -> int:
        """Variable classes plus undetermined entries; drops on every effective rule."""
        cls = self.classes()
        return len(cls) + sum(len(m) for m in cls.values())

    def class_zero_mask(self, rep: int, members: Sequence[int] | None = None) -> int:
        mask = 0
        for e in members if members is not None else self.classes().get(rep, []):
            mask |= self.zp[e]
        return mask

    def zero_product(self, a: int, b: int) -> bool:
        """Is ``q[a] q[b] = 0`` among the seeded zero products (entry level)?"""
        return bool(self.zp[a] >> b & 1)

    def classes_orthogonal(self, ra: int, rb: int, classes=None) -> bool:
        classes = classes if classes is not None else self.classes()
        mask = self.class_zero_mask(ra, classes[ra])
        return any(mask >> e & 1 for e in classes[rb])

    def _log(self, rule: str, message: str) -> None:
        self.trace.append(TraceEvent(rule, message, self.measure()))

    # -- state changes --------------------------------------------------------

    def _union(self, a: int, b: int, rule: str, why: str) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        consts = {self.zero_node, self.one_node}
        if ra in consts and rb in consts:
            raise Inconsistent(f"{rule}: 0 = 1 forced ({why})")
        # constants are absorbing; otherwise the smaller entry index represents the class
        if rb in consts or (ra not in consts and rb < ra):
            ra, rb = rb, ra
        self.parent[rb] = ra
        self._system = None
        root = ra
        if root == self.zero_node:
            self._log(rule, f"{self.entry_name(b if b < self.zero_node else a)} = 0 ({why})")
        elif root == self.one_node:
            self._log(rule, f"{self.entry_name(b if b < self.zero_node else a)} = 1 ({why})")
        else:
            self._log(rule, f"{self.entry_name(a)} = {self.entry_name(b)} ({why})")
            members = [e for e in range(self.n * self.n) if self.find(e) == root]
            mask = self.class_zero_mask(root, members)
            if any(mask >> e & 1 for e in members):
                # a = a^2 = ab = 0
                self._union(root, self.zero_node, rule, "merged class has a vanishing square")
        return True

    def set_zero(self, e: int, rule: str, why: str) -> bool:
        return self._union(e, self.zero_node, rule, why)

    def set_one(self, e: int, rule: str, why: str) -> bool:
        return self._union(e, self.one_node, rule, why)

    def merge(self, a: int, b: int, rule: str, why: str) -> bool:
        return self._union(a, b, rule, why)

    # -- linear identities ----------------------------------------------------

    def add_identity(self, coeffs: dict[int, Fraction], const: Fraction, source: str) -> Identity:
        ident = Identity(tuple(sorted((e, Fraction(c)) for e, c in coeffs.items() if c)), Fraction(const), source)
        self.identities.append(ident)
        self._system = None
        return ident

    def normalize(self, ident: Identity) -> tuple[dict[int, Fraction], Fraction]:
        """Substitute current states: 0 drops out, 1 moves to the constant, classes collapse."""
        form: dict[int, Fraction] = {}
        const = ident.const
        for e, c in ident.coeffs:
            r = self.find(e)
            if r == self.zero_node:
                continue
            if r == self.one_node:
                const -= c
                continue
            form[r] = form.get(r, Fraction(0)) + c
        return {r: c for r, c in form.items() if c}, const

    def system(self) -> LinearSystem:
        if self._system is None:
            self._system = LinearSystem(self.normalize(ident) for ident in self.identities)
        return self._system

    def implies(self, coeffs: dict[tuple[int, int], Fraction | int], const: Fraction | int = 0) -> bool:
        """Is ``sum(c * q[i,j]) = const`` a consequence of the current relations?"""
        form: dict[int, Fraction] = {}
        const = Fraction(const)
        for (i, j), c in coeffs.items():
            r = self.find(self.entry(i, j))
            c = Fraction(c)
            if r == self.zero_node:
                continue
            if r == self.one_node:
                const -= c
                continue
            form[r] = form.get(r, Fraction(0)) + c
        return self.system().implies(form, const)

    def commute(self, a: tuple[int, int], b: tuple[int, int]) -> bool:
        ra, rb = self.find(self.entry(*a)), self.find(self.entry(*b))
        if ra >= self.zero_node or rb >= self.zero_node or ra == rb:
            return True
        return frozenset((ra, rb)) in self.commuting


# --- seeding -------------------------------------------------------------------


def _zero_product_masks(color_of: np.ndarray) -> list[int]:
    n = color_of.shape[0]
    eye = np.eye(n, dtype=bool)
    masks = []
    for k in range(n):
        for i in range(n):
            m = color_of[k][:, None] != color_of[i][None, :]  # [l, j]: J_kl != J_ij
            m |= eye[k][:, None] & ~eye[i][None, :]  # same row, different column
            m |= ~eye[k][:, None] & eye[i][None, :]  # same column, different row
            bits = np.packbits(m.ravel(), bitorder="little")
            masks.append(int.from_bytes(bits.tobytes(), "little"))
    return masks


def init_relations(model: PottsModel) -> RelationSet:
    """Magic-unitary axioms, level-set vanishing, and colour-vanishing zero products."""
    n = model.n
    if n > MAX_ENGINE_VERTICES:
        raise GuardError(f"n = {n} exceeds the supported maximum {MAX_ENGINE_VERTICES}")
    ct = color_table(model)
    rs = RelationSet(model, list(range(n * n + 2)), _zero_product_masks(ct.color_of))
    f = level_function(model)
    for v in range(n):
        for w in range(n):
            if f[v] != f[w]:
                rs.set_zero(rs.entry(v, w), "seed-level", f"f({model.labels[v]}) != f({model.labels[w]})")
    for i in range(n):
        rs.add_identity({rs.entry(i, j): Fraction(1) for j in range(n)}, Fraction(1), f"row {model.labels[i]}")
    for j in range(n):
        rs.add_identity({rs.entry(i, j): Fraction(1) for i in range(n)}, Fraction(1), f"column {model.labels[j]}")
    return rs


def commutant_identities(rs: RelationSet, model: PottsModel | None = None, matrix=None, tag: str = "QJ=JQ") -> RelationSet:
    """Append (QJ - JQ)[i, j] = 0 for every entry, split into real and imaginary parts.

    ``matrix`` overrides the coupling matrix (any square matrix of exact
    scalars); identities that are already implied are still recorded.
    """
    model = model or rs.model
    M = matrix if matrix is not None else model.J
    n = model.n
    parts = [("re", lambda z: z.re)]
    if any(getattr(M[i][j], "im", 0) for i in range(n) for j in range(n)):
        parts.append(("im", lambda z: z.im))
    for name, part in parts:
        P = [[Fraction(part(_as_gr(M[i][j]))) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                coeffs: dict[int, Fraction] = {}
                for k in range(n):
                    if P[k][j]:
                        e = rs.entry(i, k)
                        coeffs[e] = coeffs.get(e, Fraction(0)) + P[k][j]
                    if P[i][k]:
                        e = rs.entry(k, j)
                        coeffs[e] = coeffs.get(e, Fraction(0)) - P[i][k]
                coeffs = {e: c for e, c in coeffs.items() if c}
                if coeffs:
                    li, lj = model.labels[i], model.labels[j]
                    rs.add_identity(coeffs, Fraction(0), f"{tag} ({li},{lj}) {name}")
    return rs


def _as_gr(x):
    return GaussianRational.coerce(x)


# --- rules -----------------------------------------------------------------------


def _rule_subst(rs: RelationSet) -> list[tuple[dict[int, Fraction], Fraction, str]]:
    normalized = []
    for ident in rs.identities:
        form, const = rs.normalize(ident)
        if not form:
            if const != 0:
                raise Inconsistent(f"R-subst: identity '{ident.source}' reduces to 0 = {const}")
            continue
        normalized.append((form, const, ident.source))
    system = rs.system()
    if system.inconsistent:
        raise Inconsistent("R-subst: the linear identities are contradictory")
    for var in list(system.pivots):
        form, const = system.normal_form(var)
        if not form and const not in (0, 1):
            raise Inconsistent(f"R-subst: projection {rs.entry_name(var)} forced to the scalar {const}")
    return normalized


def _positive_consequences(form: dict[int, Fraction], const: Fraction):
    """Variables forced to 0 by positivity of ``sum c_k v_k = const``, or ``None`` if nothing follows."""
    signs = {c > 0 for c in form.values()}
    if len(signs) != 1:
        return None
    if signs == {False}:
        form = {v: -c for v, c in form.items()}
        const = -const
    if const < 0:
        raise Inconsistent("R-pos: positive combination of projections equals a negative scalar")
    return [v for v, c in form.items() if c > const]


def _rule_pos(rs: RelationSet, normalized) -> bool:
    changed = False
    system = rs.system()
    candidates = [(f, c, src) for f, c, src in normalized]
    candidates += [(f, c, "reduced identity") for f, c in system.rows()]
    for form, const, src in candidates:
        hit = _positive_consequences(form, const)
        for v in hit or ():
            changed |= rs.set_zero(v, "R-pos", f"positivity in '{src}'")
    # v = -w with both projections forces both to vanish
    by_key: dict[tuple, int] = {}
    for var in rs.classes():
        nf = system.normal_form(var)
        by_key.setdefault(form_key(*nf), var)
    for var in list(rs.classes()):
        if rs.find(var) != var:
            continue
        nf, c = system.normal_form(var)
        other = by_key.get(form_key({u: -d for u, d in nf.items()}, -c))
        if other is not None and other != var:
            changed |= rs.set_zero(var, "R-pos", f"{rs.entry_name(var)} = -{rs.entry_name(other)}")
            changed |= rs.set_zero(other, "R-pos", f"{rs.entry_name(other)} = -{rs.entry_name(var)}")
    return changed


def _rule_eq(rs: RelationSet) -> bool:
    changed = False
    system = rs.system()
    groups: dict[tuple, list[int]] = {}
    for var in sorted(rs.classes()):
        nf, c = system.normal_form(var)
        if not nf:
            if c == 0:
                changed |= rs.set_zero(var, "R-eq", "reduces to 0")
            elif c == 1:
                changed |= rs.set_one(var, "R-eq", "reduces to 1")
            continue
        groups.setdefault(form_key(nf, c), []).append(var)
    for members in groups.values():
        for other in members[1:]:
            changed |= rs.merge(members[0], other, "R-eq", "equal normal forms")
    return changed


def _rule_sum1(rs: RelationSet) -> bool:
    n = rs.n
    changed = False
    lines = [[(i, j) for j in range(n)] for i in range(n)] + [[(i, j) for i in range(n)] for j in range(n)]
    for line in lines:
        states = [rs.state(i, j) for i, j in line]
        ones = [p for p, s in zip(line, states) if s == ONE_STATE]
        live = [p for p, s in zip(line, states) if s != ZERO_STATE]
        if ones:
            for p in live:
                if p != ones[0]:
                    changed |= rs.set_zero(rs.entry(*p), "R-sum1", f"{rs.entry_name(rs.entry(*ones[0]))} = 1 in the same line")
        elif len(live) == 1:
            changed |= rs.set_one(rs.entry(*live[0]), "R-sum1", "only surviving entry of its line")
        elif not live:
            raise Inconsistent("R-sum1: a row or column of Q vanishes")
    # a unit entry kills every entry it has a zero product with
    for e in range(n * n):
        if rs.find(e) == rs.one_node:
            mask = rs.zp[e]
            for f in range(n * n):
                if mask >> f & 1 and rs.find(f) != rs.zero_node:
                    changed |= rs.set_zero(f, "R-sum1", f"zero product with {rs.entry_name(e)} = 1")
    return changed


def support_partition(rs: RelationSet) -> list[list[int]]:
    """Vertices linked through entries that are not forced to zero."""
    n = rs.n
    parent = list(range(n))

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in range(n):
        for w in range(n):
            if not rs.is_zero(v, w):
                a, b = root(v), root(w)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(root(v), []).append(v)
    return [cells[k] for k in sorted(cells)]


def _rule_wl(rs: RelationSet) -> bool:
    ct = color_table(rs.model)
    cells, _ = _refine(support_partition(rs), ct.color_of, ct.count)
    cell_of = {v: k for k, c in enumerate(cells) for v in c}
    changed = False
    for v in range(rs.n):
        for w in range(rs.n):
            if cell_of[v] != cell_of[w] and not rs.is_zero(v, w):
                changed |= rs.set_zero(rs.entry(v, w), "R-wl", "colour-degree refinement separates the vertices (derived rule)")
    return changed


def propagate(rs: RelationSet, max_rounds: int = 10_000) -> RelationSet:
    """Apply the rules until nothing changes, then close commutation."""
    for _ in range(max_rounds):
        normalized = _rule_subst(rs)
        changed = _rule_pos(rs, normalized)
        changed |= _rule_eq(rs)
        changed |= _rule_sum1(rs)
        changed |= _rule_wl(rs)
        if not changed:
            break
    else:  # pragma: no cover - the measure bounds the number of rounds
        raise RuntimeError("propagation did not converge")
    _rule_subst(rs)
    commutation_closure(rs)
    rs.at_fixpoint = True
    return rs


def commutation_closure(rs: RelationSet) -> set[frozenset[int]]:
    """R-comm: pairs of surviving classes provably commuting.

    Seeds are mutually orthogonal pairs (ab = ba = 0), complementary pairs
    (a = 1 - b), and equal classes. The closure step: if an identity
    expresses ``w`` affinely in variables that all commute with ``v``,
    then ``w`` commutes with ``v``.
    """
    classes = rs.classes()
    reps = sorted(classes)
    system = rs.system()
    comm: dict[int, set[int]] = {r: {r} for r in reps}
    masks = {r: rs.class_zero_mask(r, classes[r]) for r in reps}
    for a in reps:
        for b in reps:
            if a < b and any(masks[a] >> e & 1 for e in classes[b]):
                comm[a].add(b)
                comm[b].add(a)
    complements = set()
    for a in reps:
        nf, c = system.normal_form(a)
        for b in reps:
            if b > a and system.implies({a: Fraction(1), b: Fraction(1)}, Fraction(1)):
                complements.add(frozenset((a, b)))
                comm[a].add(b)
                comm[b].add(a)
    forms = [set(f) for f, _ in system.rows()]
    forms += [set(rs.normalize(ident)[0]) for ident in rs.identities]
    forms = [f for f in forms if len(f) >= 2]
    changed = True
    while changed:
        changed = False
        for vars_ in forms:
            for v in reps:
                missing = [w for w in vars_ if w not in comm[v]]
                if len(missing) == 1:
                    w = missing[0]
                    comm[v].add(w)
                    comm[w].add(v)
                    changed = True
    rs.complements = complements
    rs.commuting = {frozenset((a, b)) for a in reps for b in comm[a] if a < b}
    return rs.commuting


def saturate(model: PottsModel) -> RelationSet:
    """init, commutant identities, propagate."""
    return propagate(commutant_identities(init_relations(model), model))


def all_commute(rs: RelationSet) -> bool:
    reps = sorted(rs.classes())
    return all(frozenset((a, b)) in rs.commuting for k, a in enumerate(reps) for b in reps[k + 1 :])


# --- presentation ----------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    names: dict[int, str]
    members: dict[int, tuple[int, ...]]
    grid: tuple[tuple[str, ...], ...]
    independent: tuple[int, ...]
    complements: tuple[tuple[int, int], ...]
    relations: tuple[str, ...]
    blocks: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    components: tuple[tuple[int, ...], ...]

    def text(self, labels: Sequence[str]) -> str:
        width = max((len(s) for row in self.grid for s in row), default=1)
        lines = ["Q ="]
        for row in self.grid:
            lines.append("  [ " + "  ".join(s.rjust(width) for s in row) + " ]")
        lines.append("variables:")
        for r, name in self.names.items():
            i_j = ", ".join(_label_entry(e, labels) for e in self.members[r])
            lines.append(f"  {name} = {i_j}")
        if self.relations:
            lines.append("relations:")
            lines.extend(f"  {r}" for r in self.relations)
        lines.append("blocks:")
        for rows, cols in self.blocks:
            lines.append("  {" + ",".join(labels[i] for i in rows) + "} x {" + ",".join(labels[j] for j in cols) + "}")
        return "\n".join(lines)


def _label_entry(e: int, labels: Sequence[str]) -> str:
    n = len(labels)
    i, j = divmod(e, n)
    return f"q[{labels[i]},{labels[j]}]"


def _components(reps: list[int], links: Iterable[tuple[int, int]]) -> list[tuple[int, ...]]:
    parent = {r: r for r in reps}

    def root(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in links:
        ra, rb = root(a), root(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    comps: dict[int, list[int]] = {}
    for r in reps:
        comps.setdefault(root(r), []).append(r)
    return [tuple(c) for _, c in sorted(comps.items())]


def relation_components(rs: RelationSet) -> list[tuple[int, ...]]:
    """Variable classes grouped by shared relations (identities, zero products)."""
    classes = rs.classes()
    reps = sorted(classes)
    links = []
    for form, _ in rs.system().rows():
        vs = sorted(form)
        links += [(vs[0], v) for v in vs[1:]]
    for ident in rs.identities:
        vs = sorted(rs.normalize(ident)[0])
        links += [(vs[0], v) for v in vs[1:]]
    masks = {r: rs.class_zero_mask(r, classes[r]) for r in reps}
    for a in reps:
        for b in reps:
            if a < b and any(masks[a] >> e & 1 for e in classes[b]):
                links.append((a, b))
    return _components(reps, links)


def extract_presentation(rs: RelationSet) -> Presentation:
    n = rs.n
    classes = rs.classes()
    reps = sorted(classes)
    names = {r: f"x{k + 1}" for k, r in enumerate(reps)}
    system = rs.system()

    comp_of: dict[int, int] = {}
    for pair in sorted(rs.complements, key=sorted):
        a, b = sorted(pair)
        if b not in comp_of and a not in comp_of:
            comp_of[b] = a
    independent = tuple(r for r in reps if r not in comp_of)

    def show(r):
        if r in comp_of:
            return f"1-{names[comp_of[r]]}"
        return names[r]

    grid = []
    for i in range(n):
        row = []
        for j in range(n):
            s = rs.state(i, j)
            row.append(s if isinstance(s, str) else show(s))
        grid.append(tuple(row))

    relations = [f"{names[b]} = 1 - {names[a]}" for b, a in sorted(comp_of.items())]
    simple = {form_key({a: Fraction(1), b: Fraction(1)}, Fraction(1)) for a, b in comp_of.items()}
    for form, const in system.rows():
        if form_key(form, const) in simple or len(form) < 2:
            continue
        relations.append(_format_form(form, const, names))
    zeros = []
    for k, a in enumerate(reps):
        mask = rs.class_zero_mask(a, classes[a])
        for b in reps[k + 1 :]:
            if any(mask >> e & 1 for e in classes[b]) and frozenset((a, b)) not in rs.complements:
                zeros.append(f"{names[a]}*{names[b]} = 0")
    relations += zeros
    for k, a in enumerate(reps):
        for b in reps[k + 1 :]:
            pair = frozenset((a, b))
            if pair in rs.commuting and f"{names[a]}*{names[b]} = 0" not in zeros and pair not in rs.complements:
                relations.append(f"[{names[a]}, {names[b]}] = 0")

    # block decomposition: rows and columns joined by live entries and shared classes
    parent = list(range(2 * n))

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def join(a, b):
        a, b = root(a), root(b)
        if a != b:
            parent[max(a, b)] = min(a, b)

    first_row_of: dict[int, int] = {}
    for i in range(n):
        for j in range(n):
            s = rs.state(i, j)
            if s == ZERO_STATE:
                continue
            join(i, n + j)
            if not isinstance(s, str):
                key = comp_of.get(s, s)
                if key in first_row_of:
                    join(first_row_of[key], i)
                else:
                    first_row_of[key] = i
    blocks: dict[int, tuple[list[int], list[int]]] = {}
    for x in range(2 * n):
        rows, cols = blocks.setdefault(root(x), ([], []))
        (rows if x < n else cols).append(x if x < n else x - n)
    block_list = tuple(sorted((tuple(r), tuple(c)) for r, c in blocks.values()))

    return Presentation(
        names=names,
        members={r: tuple(classes[r]) for r in reps},
        grid=tuple(grid),
        independent=independent,
        complements=tuple(sorted((a, b) for b, a in comp_of.items())),
        relations=tuple(relations),
        blocks=block_list,
        components=tuple(relation_components(rs)),
    )


def _format_form(form, const, names) -> str:
    terms = []
    for v, c in sorted(form.items()):
        if c == 1:
            terms.append(f"+ {names[v]}")
        elif c == -1:
            terms.append(f"- {names[v]}")
        elif c > 0:
            terms.append(f"+ {c}*{names[v]}")
        else:
            terms.append(f"- {-c}*{names[v]}")
    lhs = " ".join(terms).lstrip("+ ")
    if lhs.startswith("- "):
        lhs = "-" + lhs[2:]
    return f"{lhs} = {const}"


def permutation_violations(rs: RelationSet, perm: Sequence[int]) -> list[str]:
    """Relations broken by the classical point q[i, j] = [i = perm(j)]; empty when all hold exactly."""
    n = rs.n
    value = [0] * (n * n)
    for j, i in enumerate(perm):
        value[rs.entry(i, j)] = 1
    out = []
    class_value: dict[int, int] = {}
    for e in range(n * n):
        r = rs.find(e)
        if r == rs.zero_node and value[e]:
            out.append(f"{rs.entry_name(e)} is forced to 0")
        elif r == rs.one_node and not value[e]:
            out.append(f"{rs.entry_name(e)} is forced to 1")
        elif r < rs.zero_node and class_value.setdefault(r, value[e]) != value[e]:
            out.append(f"{rs.entry_name(e)} differs from its class {rs.entry_name(r)}")
    ones = [e for e in range(n * n) if value[e]]
    for a in ones:
        for b in ones:
            if rs.zero_product(a, b):
                out.append(f"{rs.entry_name(a)}*{rs.entry_name(b)} is forced to 0")
    for ident in rs.identities:
        if sum(c * value[e] for e, c in ident.coeffs) != ident.const:
            out.append(f"identity '{ident.source}' fails")
    return out
