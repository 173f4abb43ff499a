"""Two's-complement fixed-point scalars.

A format (Q, F) represents raw integers in [-2^(Q-1), 2^(Q-1)-1] scaled by
2^(-F).  Values round-trip exactly through Fraction, which is what the
exact witness checker relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import OutOfRange

# Exact rationals throughout the toolkit are plain fractions.Fraction;
# the alias documents intent at call sites.
Rational = Fraction


@dataclass(frozen=True)
class FixedPointFormat:
    total_bits: int
    frac_bits: int

    def __post_init__(self):
        if not (2 <= self.frac_bits < self.total_bits <= 64):
            raise ValueError(
                f"need 2 <= frac_bits < total_bits <= 64, "
                f"got Q={self.total_bits}, F={self.frac_bits}"
            )

    @property
    def raw_min(self) -> int:
        return -(1 << (self.total_bits - 1))

    @property
    def raw_max(self) -> int:
        return (1 << (self.total_bits - 1)) - 1

    @property
    def step(self) -> Fraction:
        return Fraction(1, 1 << self.frac_bits)

    @property
    def min_value(self) -> Fraction:
        return self.raw_min * self.step

    @property
    def max_value(self) -> Fraction:
        return self.raw_max * self.step


@dataclass(frozen=True)
class FixedPointValue:
    format: FixedPointFormat
    raw: int

    def __post_init__(self):
        if not (self.format.raw_min <= self.raw <= self.format.raw_max):
            raise OutOfRange(f"raw {self.raw} outside {self.format}")

    def value(self) -> Fraction:
        return Fraction(self.raw, 1 << self.format.frac_bits)

    def __float__(self) -> float:
        return self.raw / (1 << self.format.frac_bits)


def quantize(x, fmt: FixedPointFormat) -> FixedPointValue:
    """Round x to the nearest grid point (ties to even raw)."""
    scaled = Fraction(x) * (1 << fmt.frac_bits)
    floor = scaled.numerator // scaled.denominator
    rem = scaled - floor
    if rem > Fraction(1, 2):
        raw = floor + 1
    elif rem < Fraction(1, 2):
        raw = floor
    else:
        raw = floor + 1 if floor % 2 else floor
    if not (fmt.raw_min <= raw <= fmt.raw_max):
        raise OutOfRange(f"{x} not representable in Q={fmt.total_bits}, F={fmt.frac_bits}")
    return FixedPointValue(fmt, raw)


def on_grid(x: Fraction, fmt: FixedPointFormat) -> bool:
    scaled = Fraction(x) * (1 << fmt.frac_bits)
    return (
        scaled.denominator == 1
        and fmt.raw_min <= scaled.numerator <= fmt.raw_max
    )


def to_decimal(v: FixedPointValue) -> str:
    """Exact decimal string for a grid value (2^-F has a finite expansion)."""
    return fraction_to_decimal(v.value())


def fraction_to_decimal(x: Fraction) -> str:
    """Exact decimal string; denominator must be a power of two."""
    den = x.denominator
    f = den.bit_length() - 1
    if den != (1 << f):
        raise ValueError(f"{x} has no finite binary-fraction expansion")
    sign = "-" if x < 0 else ""
    scaled = abs(x.numerator) * 5**f  # |x| * 10^f
    digits = str(scaled).rjust(f + 1, "0")
    if f == 0:
        return sign + digits
    return f"{sign}{digits[:-f]}.{digits[-f:]}"


def parse_decimal(s: str, fmt: FixedPointFormat) -> FixedPointValue:
    """Parse an exact decimal; reject values off the format's grid."""
    x = Fraction(s)
    if not on_grid(x, fmt):
        raise OutOfRange(f"{s} is not on the 2^-{fmt.frac_bits} grid of {fmt}")
    return FixedPointValue(fmt, int(x * (1 << fmt.frac_bits)))
