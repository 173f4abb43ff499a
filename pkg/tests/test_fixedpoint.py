from fractions import Fraction

import pytest

from bfdecide.errors import OutOfRange
from bfdecide.fixedpoint import (
    FixedPointFormat,
    FixedPointValue,
    fraction_to_decimal,
    on_grid,
    parse_decimal,
    quantize,
    to_decimal,
)

Q8F4 = FixedPointFormat(8, 4)


def test_format_validation():
    with pytest.raises(ValueError):
        FixedPointFormat(8, 8)
    with pytest.raises(ValueError):
        FixedPointFormat(65, 4)
    with pytest.raises(ValueError):
        FixedPointFormat(4, 1)


def test_range():
    assert Q8F4.min_value == Fraction(-8)
    assert Q8F4.max_value == Fraction(127, 16)
    assert Q8F4.step == Fraction(1, 16)


def test_quantize_zero():
    assert quantize(0.0, Q8F4).raw == 0


def test_quantize_one():
    assert quantize(1.0, Q8F4).raw == 16


def test_quantize_point_one():
    # 0.1 sits between 0.0625 and 0.125; nearest is 0.125 -> raw 2
    assert quantize(0.1, Q8F4).raw == 2


def test_quantize_ties_to_even():
    assert quantize(Fraction(3, 32), Q8F4).raw == 2  # between raw 1 and 2
    assert quantize(Fraction(5, 32), Q8F4).raw == 2  # between raw 2 and 3


def test_quantize_out_of_range():
    with pytest.raises(OutOfRange):
        quantize(8.0, Q8F4)
    with pytest.raises(OutOfRange):
        quantize(-8.1, Q8F4)


def test_quantize_idempotent_on_grid():
    for raw in range(Q8F4.raw_min, Q8F4.raw_max + 1):
        v = FixedPointValue(Q8F4, raw)
        assert quantize(v.value(), Q8F4) == v


def test_value_roundtrip_through_rational():
    v = FixedPointValue(Q8F4, -37)
    assert v.value() == Fraction(-37, 16)
    assert float(v) == -37 / 16


def test_decimal_roundtrip_exhaustive():
    for raw in range(Q8F4.raw_min, Q8F4.raw_max + 1):
        v = FixedPointValue(Q8F4, raw)
        assert parse_decimal(to_decimal(v), Q8F4) == v


def test_parse_decimal_rejects_off_grid():
    with pytest.raises(OutOfRange):
        parse_decimal("0.1", Q8F4)


def test_fraction_to_decimal_exact():
    assert fraction_to_decimal(Fraction(-3, 16)) == "-0.1875"
    assert fraction_to_decimal(Fraction(5)) == "5"
    with pytest.raises(ValueError):
        fraction_to_decimal(Fraction(1, 3))


def test_on_grid():
    assert on_grid(Fraction(1, 16), Q8F4)
    assert not on_grid(Fraction(1, 32), Q8F4)
    assert not on_grid(Fraction(100), Q8F4)


def test_rational_arithmetic_exact():
    # cross-multiplication identity over random pairs
    import random

    rng = random.Random(7)
    for _ in range(1000):
        a, b = rng.randint(-10**9, 10**9), rng.randint(1, 10**9)
        c, d = rng.randint(-10**9, 10**9), rng.randint(1, 10**9)
        s = Fraction(a, b) + Fraction(c, d)
        assert s == Fraction(a * d + c * b, b * d)
        assert s.denominator > 0
        from math import gcd

        assert gcd(s.numerator, s.denominator) == 1
