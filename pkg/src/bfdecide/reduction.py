"""Karp reduction from PARTITION to the beamforming decision problem.

A list of integers a can be split into two equal-sum halves exactly when
the quadratic p'(I + aa')p attains its minimum value N over sign vectors
p in {-1, +1}^N.  Writing I + aa' = V'V with V upper triangular and
substituting w = Vp turns that question into membership of ((V^-1)', N)
in the beamforming language: the rows of (V^-1)' recover the entries of
p, so the unit-magnitude constraints force p to a sign vector while the
squared-norm budget N caps the quadratic.

The channel matrix is quantized to a fine fixed-point grid on the way
out; a brute-force PARTITION decider over all 2^N sign patterns serves
as the correctness oracle at small sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, InvalidParameter, SizeLimitExceeded
from .fixedpoint import FixedPointFormat
from .instance import BFInstance, from_float_channels
from .linalg import invert, sqrt_decompose

BRUTE_FORCE_LIMIT = 24

# Default output format: fine enough that quantization error stays far
# below the 1e-3 membership tolerance used at the reduction boundary.
REDUCED_FORMAT = FixedPointFormat(32, 24)

DEFAULT_EPSILON = 1e-3


@dataclass(frozen=True)
class PartitionInstance:
    """A multiset of nonzero integers to split into two equal-sum halves."""

    values: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) < 1:
            raise InvalidParameter("need at least one value")
        for v in vals:
            if v == 0:
                raise InvalidParameter("values must be nonzero")
            if not -(1 << 31) <= v < (1 << 31):
                raise InvalidParameter(f"value {v} does not fit in 32 bits")

    @property
    def size(self) -> int:
        return len(self.values)


def gram_matrix(p: PartitionInstance) -> np.ndarray:
    """I + aa', the positive definite quadratic form behind the reduction."""
    a = np.array(p.values, dtype=float)
    return np.eye(p.size) + np.outer(a, a)


def reduce(
    p: PartitionInstance,
    fmt: FixedPointFormat = REDUCED_FORMAT,
    epsilon: float = DEFAULT_EPSILON,
) -> BFInstance:
    """Map a PARTITION instance to an equivalent beamforming instance.

    The output has N antennas, N users, channel matrix (V^-1)' for the
    Cholesky factor V of I + aa', and squared-norm budget N.  Membership
    of the output (up to the epsilon boundary tolerance) decides the
    original partition question.
    """
    n = p.size
    v_mat = sqrt_decompose(gram_matrix(p))
    h = invert(v_mat).T
    provenance = (
        f"reduced from partition a={list(p.values)} epsilon={epsilon:g}"
    )
    return from_float_channels(h, Fraction(n), fmt, provenance=provenance)


def eval_partition_objective(p: PartitionInstance, point) -> float:
    """p_1^2 + ... + p_N^2 + (sum p_n a_n)^2 at an arbitrary real point."""
    x = np.asarray(point, dtype=float)
    if x.shape != (p.size,):
        raise DimensionMismatch(
            f"point has shape {x.shape}, expected ({p.size},)"
        )
    a = np.array(p.values, dtype=float)
    return float(x @ x + (x @ a) ** 2)


@dataclass(frozen=True)
class PartitionAnswer:
    feasible: bool
    signs: tuple | None = None  # +1/-1 per value when feasible

    def __bool__(self):
        return self.feasible


def brute_force_partition(p: PartitionInstance) -> PartitionAnswer:
    """Exhaustive sweep over sign vectors; the reduction's ground truth.

    Returns the first sign vector with zero signed sum, verified in
    integer arithmetic, or a negative answer after the full sweep.
    """
    n = p.size
    if n > BRUTE_FORCE_LIMIT:
        raise SizeLimitExceeded(f"{n} values exceed limit {BRUTE_FORCE_LIMIT}")
    vals = p.values
    for code in range(1 << n):
        total = 0
        for i in range(n):
            total += vals[i] if (code >> i) & 1 == 0 else -vals[i]
        if total == 0:
            signs = tuple(1 if (code >> i) & 1 == 0 else -1 for i in range(n))
            assert sum(s * v for s, v in zip(signs, vals)) == 0
            return PartitionAnswer(True, signs)
    return PartitionAnswer(False)
