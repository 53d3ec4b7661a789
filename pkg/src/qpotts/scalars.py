"""Exact complex-rational scalars used for couplings."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Number = Union[int, Fraction, "GaussianRational"]

_RAT = r"[+-]?\d+(?:/\d+)?"
_FULL = re.compile(rf"^(?P<re>{_RAT})?(?:(?P<im>[+-](?:\d+(?:/\d+)?)?)i)?$")
_PURE_IM = re.compile(rf"^(?P<im>[+-]?(?:\d+(?:/\d+)?)?)i$")


@dataclass(frozen=True, order=False)
class GaussianRational:
    """An exact number ``re + im*i`` with rational parts.

    Fractions are already kept in lowest terms with a positive denominator,
    so dataclass equality is exact structural equality.
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, x: Number) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(Fraction(x))
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        num = self * o.conjugate()
        return GaussianRational(num.re / den, num.im / den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def _fmt_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Inverse of :func:`parse_scalar`: ``"3"``, ``"-1/2"``, ``"3+i"``, ``"1/2-3/4i"``."""
    if z.im == 0:
        return _fmt_rat(z.re)
    if z.im == 1:
        im = "i"
    elif z.im == -1:
        im = "-i"
    else:
        im = _fmt_rat(z.im) + "i"
    if z.re == 0:
        return im
    sign = "" if im.startswith("-") else "+"
    return f"{_fmt_rat(z.re)}{sign}{im}"


def _rat(tok: str) -> Fraction:
    if tok in ("", "+"):
        return Fraction(1)
    if tok == "-":
        return Fraction(-1)
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {tok!r}") from exc


def parse_scalar(text: str) -> GaussianRational:
    """Parse ``"a/b"``, ``"a"``, ``"a/b+c/di"`` (and ``"i"``, ``"-2i"``) exactly."""
    s = str(text).replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    m = _PURE_IM.match(s)
    if m:
        return GaussianRational(0, _rat(m.group("im")))
    m = _FULL.match(s)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"malformed scalar {text!r}")
    re_part = _rat(m.group("re")) if m.group("re") is not None else Fraction(0)
    im_part = _rat(m.group("im")) if m.group("im") is not None else Fraction(0)
    return GaussianRational(re_part, im_part)
