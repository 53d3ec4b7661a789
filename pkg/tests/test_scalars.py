from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qpotts.scalars import GaussianRational as G
from qpotts.scalars import format_scalar, parse_scalar

fractions = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)


@pytest.mark.parametrize(
    "text, re, im",
    [
        ("3", 3, 0),
        ("-2/4", Fraction(-1, 2), 0),
        ("1/2+3/4i", Fraction(1, 2), Fraction(3, 4)),
        ("3+i", 3, 1),
        ("i", 0, 1),
        ("-2i", 0, -2),
        ("1-i", 1, -1),
    ],
)
def test_parse(text, re, im):
    assert parse_scalar(text) == G(Fraction(re), Fraction(im))


@pytest.mark.parametrize("bad", ["", "1/0", "abc", "1//2", "2+", "1.5"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


@given(fractions, fractions)
def test_format_round_trip(a, b):
    z = G(a, b)
    assert parse_scalar(format_scalar(z)) == z


@given(fractions, fractions, fractions, fractions)
def test_field_arithmetic(a, b, c, d):
    x, y = G(a, b), G(c, d)
    assert x + y - y == x
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    if not y.is_zero():
        assert x / y * y == x
    assert complex(x * y) == pytest.approx(complex(x) * complex(y))


def test_canonical_equality_and_hash():
    assert G(Fraction(2, 4), Fraction(0)) == G(Fraction(1, 2), Fraction(0))
    assert hash(G(Fraction(1, 2), Fraction(0))) == hash(Fraction(1, 2))
    assert G.coerce(2) == parse_scalar("2")
