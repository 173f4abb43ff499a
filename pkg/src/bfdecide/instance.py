"""Problem data model: construction, normalization, generation, file I/O.

An instance is a channel matrix H (column h_m is user m's channel) together
with a budget kappa on the squared beamformer norm.  Membership means some w
with sum w(n)^2 <= kappa achieves |h_m^T w| >= 1 for every user.

kappa bounds the SQUARED norm throughout; all reported objectives are
squared norms.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidParameter,
    OutOfRange,
    ParseError,
    ZeroChannelColumn,
)
from .fixedpoint import (
    FixedPointFormat,
    FixedPointValue,
    fraction_to_decimal,
    quantize,
)

ORACLE_TOL = 1e-9


@dataclass(frozen=True)
class BFInstance:
    n_antennas: int
    n_users: int
    channels: tuple  # tuple of M columns, each a tuple of N Fractions
    kappa: Fraction
    fmt: FixedPointFormat
    provenance: str | None = None  # free-form comment kept in the file

    def __post_init__(self):
        if len(self.channels) != self.n_users:
            raise DimensionMismatch("channel column count != n_users")
        for m, col in enumerate(self.channels):
            if len(col) != self.n_antennas:
                raise DimensionMismatch(f"column {m} has wrong length")
            if all(x == 0 for x in col):
                raise ZeroChannelColumn(f"channel column {m} is zero")
        if self.kappa < 0:
            raise InvalidParameter("kappa must be nonnegative")

    def channel_array(self) -> np.ndarray:
        """H as a float N x M array (column m = h_m)."""
        return np.array(
            [[float(x) for x in col] for col in self.channels], dtype=float
        ).T

    def with_kappa(self, kappa) -> "BFInstance":
        return replace(self, kappa=Fraction(kappa))


@dataclass(frozen=True)
class RawQoSInstance:
    channels: np.ndarray  # N x M
    noise_vars: tuple  # sigma_m^2
    snr_targets: tuple  # gamma_m

    def __post_init__(self):
        m = self.channels.shape[1]
        if len(self.noise_vars) != m or len(self.snr_targets) != m:
            raise DimensionMismatch("noise/SNR lists must have one entry per user")


@dataclass(frozen=True)
class Witness:
    w: tuple  # N FixedPointValue (exact path) or N floats (oracle path)
    z: tuple | None = None  # optional signs in {+1, -1}


@dataclass(frozen=True)
class CheckResult:
    accepted: bool
    reason: str | None = None
    index: int | None = None  # first violated user constraint, if any

    def __bool__(self):
        return self.accepted


def normalize(raw: RawQoSInstance) -> np.ndarray:
    """Scale column m by 1/(gamma_m sigma_m^2) so the SNR target becomes 1."""
    for s2, g in zip(raw.noise_vars, raw.snr_targets):
        if s2 <= 0 or g <= 0:
            raise InvalidParameter("noise variances and SNR targets must be positive")
    scale = np.array(
        [1.0 / (g * s2) for s2, g in zip(raw.noise_vars, raw.snr_targets)]
    )
    return np.asarray(raw.channels, dtype=float) * scale[None, :]


def from_float_channels(h, kappa, fmt: FixedPointFormat, provenance=None) -> BFInstance:
    """Quantize a float N x M channel matrix onto fmt's grid."""
    h = np.asarray(h, dtype=float)
    n, m = h.shape
    cols = tuple(
        tuple(quantize(h[i, j], fmt).value() for i in range(n)) for j in range(m)
    )
    return BFInstance(n, m, cols, Fraction(kappa), fmt, provenance)


def generate(
    n_antennas: int,
    n_users: int,
    seed: int,
    fmt: FixedPointFormat,
    kappa=Fraction(0),
) -> BFInstance:
    """Seeded i.i.d. standard-normal channels, quantized onto fmt's grid.

    The rare draw outside the representable range is redrawn (deterministic
    given the seed).
    """
    if n_antennas < 1 or n_users < 1:
        raise InvalidParameter("need at least one antenna and one user")
    rng = np.random.default_rng(seed)
    lo, hi = float(fmt.min_value), float(fmt.max_value)
    cols = []
    for _ in range(n_users):
        while True:
            col = []
            for _ in range(n_antennas):
                x = rng.standard_normal()
                while not (lo <= x <= hi):
                    x = rng.standard_normal()
                col.append(quantize(x, fmt).value())
            # a column quantized to all-zero would make the instance degenerate
            if any(col):
                break
        cols.append(tuple(col))
    return BFInstance(n_antennas, n_users, tuple(cols), Fraction(kappa), fmt)


def snap_kappa(x, fmt: FixedPointFormat, direction: str = "up") -> Fraction:
    """Snap kappa onto the 2^-2F pitch the encoder compares at."""
    pitch = 1 << (2 * fmt.frac_bits)
    scaled = Fraction(x) * pitch
    n = scaled.numerator // scaled.denominator
    if direction == "up" and scaled != n:
        n += 1
    elif direction == "nearest":
        n = round(Fraction(x) * pitch)
    return Fraction(n, pitch)


def check_witness(inst: BFInstance, witness: Witness) -> CheckResult:
    """Accept iff sum w(n)^2 <= kappa and |h_m^T w| >= 1 for every m.

    Fixed-point witnesses are checked in exact rational arithmetic; float
    witnesses with tolerance 1e-9.
    """
    if len(witness.w) != inst.n_antennas:
        raise DimensionMismatch("witness length != n_antennas")
    if witness.z is not None and len(witness.z) != inst.n_users:
        raise DimensionMismatch("sign vector length != n_users")
    exact = all(isinstance(x, FixedPointValue) for x in witness.w)
    if exact:
        w = [x.value() for x in witness.w]
        slack = Fraction(0)
    else:
        w = [float(x) for x in witness.w]
        slack = ORACLE_TOL
    norm_sq = sum(x * x for x in w)
    if norm_sq > inst.kappa + slack:
        return CheckResult(False, "norm budget exceeded", None)
    for m, col in enumerate(inst.channels):
        if exact:
            dot = sum(h * x for h, x in zip(col, w))
        else:
            dot = sum(float(h) * x for h, x in zip(col, w))
        if abs(dot) < 1 - slack:
            return CheckResult(False, f"user {m} below unit SNR", m)
    return CheckResult(True)


def serialize(inst: BFInstance) -> str:
    out = io.StringIO()
    out.write("bf-instance v1\n")
    if inst.provenance:
        for line in inst.provenance.splitlines():
            out.write(f"# {line}\n")
    out.write(f"n {inst.n_antennas}\n")
    out.write(f"m {inst.n_users}\n")
    out.write(f"kappa {fraction_to_decimal(inst.kappa)}\n")
    out.write(f"format {inst.fmt.total_bits} {inst.fmt.frac_bits}\n")
    for col in inst.channels:
        out.write("row " + " ".join(fraction_to_decimal(x) for x in col) + "\n")
    return out.getvalue()


def parse(text: str) -> BFInstance:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "bf-instance v1":
        raise ParseError("missing 'bf-instance v1' header")
    comments = []
    fields = {}
    rows = []
    for ln in lines[1:]:
        ln = ln.strip()
        if ln.startswith("#"):
            comments.append(ln[1:].strip())
            continue
        key, _, rest = ln.partition(" ")
        if key in ("n", "m", "kappa", "format"):
            fields[key] = rest.strip()
        elif key == "row":
            rows.append(rest.split())
        else:
            raise ParseError(f"unknown line: {ln!r}")
    try:
        n = int(fields["n"])
        m = int(fields["m"])
        q, f = (int(t) for t in fields["format"].split())
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad header fields: {exc}") from exc
    fmt = FixedPointFormat(q, f)
    kappa = Fraction(fields["kappa"])
    pitch = 1 << (2 * f)
    if (kappa * pitch).denominator != 1:
        raise ParseError("kappa is off the declared format's grid")
    if len(rows) != m:
        raise ParseError(f"expected {m} rows, got {len(rows)}")
    cols = []
    for row in rows:
        if len(row) != n:
            raise ParseError(f"expected {n} entries per row, got {len(row)}")
        col = []
        for tok in row:
            x = Fraction(tok)
            scaled = x * (1 << f)
            if scaled.denominator != 1 or not (
                fmt.raw_min <= scaled.numerator <= fmt.raw_max
            ):
                raise ParseError(f"entry {tok} is off the declared grid")
            col.append(x)
        cols.append(tuple(col))
    provenance = "\n".join(comments) if comments else None
    try:
        return BFInstance(n, m, tuple(cols), kappa, fmt, provenance)
    except (ZeroChannelColumn, DimensionMismatch, InvalidParameter, OutOfRange) as exc:
        raise ParseError(str(exc)) from exc
