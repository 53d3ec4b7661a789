"""Sparse exact row reduction over the rationals.

A linear form is a ``dict[var, Fraction]`` together with a constant; the
identity it encodes is ``sum(c * var) = const``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

Form = dict[Hashable, Fraction]


class LinearSystem:
    """Reduced row echelon form of a set of affine identities.

    ``pivots[p] = (form, const)`` means ``p + sum(form) = const`` where no
    variable of ``form`` is a pivot.
    """

    def __init__(self, rows: Iterable[tuple[Mapping[Hashable, Fraction], Fraction]]):
        self.pivots: dict[Hashable, tuple[Form, Fraction]] = {}
        self.inconsistent = False
        for form, const in rows:
            self._add(dict(form), Fraction(const))

    def reduce(self, form: Mapping, const: Fraction = Fraction(0)) -> tuple[Form, Fraction]:
        out: Form = {}
        const = Fraction(const)
        for v, c in form.items():
            if c == 0:
                continue
            if v in self.pivots:
                pf, pc = self.pivots[v]
                const -= c * pc
                for u, d in pf.items():
                    out[u] = out.get(u, Fraction(0)) - c * d
            else:
                out[v] = out.get(v, Fraction(0)) + c
        return {v: c for v, c in out.items() if c != 0}, const

    def _add(self, form: Form, const: Fraction) -> None:
        form, const = self.reduce(form, const)
        if not form:
            if const != 0:
                self.inconsistent = True
            return
        p = min(form, key=_order_key)
        cp = form.pop(p)
        form = {v: c / cp for v, c in form.items()}
        const = const / cp
        for q, (qf, qc) in list(self.pivots.items()):
            c = qf.get(p)
            if c:
                new = dict(qf)
                del new[p]
                for u, d in form.items():
                    val = new.get(u, Fraction(0)) - c * d
                    if val:
                        new[u] = val
                    else:
                        new.pop(u, None)
                self.pivots[q] = (new, qc - c * const)
        self.pivots[p] = (form, const)

    def normal_form(self, var: Hashable) -> tuple[Form, Fraction]:
        """Affine expression of ``var`` in the free variables: ``var = sum(form) + const``."""
        if var in self.pivots:
            pf, pc = self.pivots[var]
            return {u: -d for u, d in pf.items()}, pc
        return {var: Fraction(1)}, Fraction(0)

    def implies(self, form: Mapping, const: Fraction = Fraction(0)) -> bool:
        rest, c = self.reduce(form, const)
        return not rest and c == 0

    def rows(self) -> list[tuple[Form, Fraction]]:
        return [({p: Fraction(1), **pf}, pc) for p, (pf, pc) in sorted(self.pivots.items(), key=lambda t: _order_key(t[0]))]


def _order_key(v):
    return (0, v) if isinstance(v, int) else (1, str(v))


def form_key(form: Mapping, const: Fraction) -> tuple:
    return (tuple(sorted(((k, v) for k, v in form.items() if v), key=lambda t: _order_key(t[0]))), const)
