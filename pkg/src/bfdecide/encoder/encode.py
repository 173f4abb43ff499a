"""Bit-blasting a problem instance to CNF.

Semantics: the formula is satisfiable iff fixed-point w (Q bits, F
fractional) and Booleans z exist with

    sum_n w(n)^2 <= kappa       and      z(m) * h_m^T w >= 1  for all m

evaluated EXACTLY: products are kept at full 2Q width (2F fractional bits)
and sums run in an accumulator widened by ceil(log2 N) + 1 guard bits, so
no intermediate result can wrap and a satisfying assignment decodes to a
witness that passes the exact rational checker.  Overflow flags of every
block are pinned to 0.

Constants (channel entries, kappa, the unit threshold) are baked in as
literals of a single pinned variable, and gates are emitted uniformly
without constant simplification: clause counts therefore depend only on
(N, M, Q, mode), never on the channel realization, which keeps the size
model exact.  The pinned literals are removed by the solver's level-0
propagation at negligible cost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from ..errors import InconsistentAssignment, UnrepresentableConstant
from ..fixedpoint import FixedPointFormat, FixedPointValue
from ..instance import BFInstance, Witness
from .circuits import (
    bits_to_int,
    build_comp,
    build_mult,
    build_signflip,
    build_sum,
    cond_negate,
    geq_signed,
    int_to_bits,
    multiply,
    ripple_add,
    sign_extend,
)
from .cnf import CnfFormula, CnfSink, tseitin


class BlockCounts(NamedTuple):
    mult: int
    sum: int
    comp: int
    sign: int
    consist: int


@dataclass(frozen=True)
class BlockCosts:
    c_sum: int
    c_mult: int
    c_comp: int
    c_sign: int
    c_consist: int

    def __post_init__(self):
        if min(self.c_sum, self.c_mult, self.c_comp, self.c_sign, self.c_consist) <= 0:
            raise ValueError("block costs must be positive")
        if self.c_mult < self.c_sum:
            raise ValueError("a multiplier contains adders; c_mult >= c_sum")


@dataclass
class EncodingInfo:
    inst: BFInstance
    fmt: FixedPointFormat
    mode: str
    w_vars: list  # [copy][antenna][bit]
    z_vars: list


def count_blocks(n_antennas: int, n_users: int) -> BlockCounts:
    """Block counts behind the size model: NM + N multiplications,
    (N-1)(M+1) summations, M+1 comparisons, M sign flips, M-1 consistency
    links."""
    n, m = n_antennas, n_users
    return BlockCounts(n * m + n, (n - 1) * (m + 1), m + 1, m, m - 1)


def estimate_size(n_antennas: int, n_users: int, costs: BlockCosts) -> int:
    """Clause-count estimate; an approximation of the measured CNF (block
    concatenation overhead is ignored)."""
    c = count_blocks(n_antennas, n_users)
    return (
        c.mult * costs.c_mult
        + c.sum * costs.c_sum
        + c.comp * costs.c_comp
        + c.sign * costs.c_sign
        + c.consist * costs.c_consist
    )


def measure_block_costs(fmt: FixedPointFormat) -> BlockCosts:
    """Clause counts of the block library at the given format.

    The consistency cost is the 2 bi-implication clauses per bit that link
    one duplicated scalar copy to its original.
    """
    return BlockCosts(
        c_sum=len(tseitin(build_sum(fmt)).clauses),
        c_mult=len(tseitin(build_mult(fmt)).clauses),
        c_comp=len(tseitin(build_comp(fmt)).clauses),
        c_sign=len(tseitin(build_signflip(fmt)).clauses),
        c_consist=2 * fmt.total_bits,
    )


def accumulator_width(fmt: FixedPointFormat, n_antennas: int) -> int:
    return 2 * fmt.total_bits + max(1, n_antennas - 1).bit_length() + 1


def _check_representable(inst: BFInstance, fmt: FixedPointFormat, width: int):
    scale = 1 << fmt.frac_bits
    for m, col in enumerate(inst.channels):
        for n, x in enumerate(col):
            scaled = x * scale
            if scaled.denominator != 1 or not (
                fmt.raw_min <= scaled.numerator <= fmt.raw_max
            ):
                raise UnrepresentableConstant(
                    f"h_{m + 1}({n + 1}) = {x} off the Q={fmt.total_bits}, "
                    f"F={fmt.frac_bits} grid"
                )
    kscaled = inst.kappa * (1 << (2 * fmt.frac_bits))
    if kscaled.denominator != 1:
        raise UnrepresentableConstant(
            f"kappa = {inst.kappa} off the budget grid (pitch 2^-{2 * fmt.frac_bits})"
        )


def encode_instance(
    inst: BFInstance, fmt: FixedPointFormat | None = None, mode: str = "shared"
) -> CnfFormula:
    """Bit-blast the instance; returns the CNF with attached EncodingInfo.

    Variable order: w bits of the primary copy by (antenna, bit), then the
    M sign-control bits, then duplicated copies (if any), then Tseitin
    auxiliaries in creation order.
    """
    if mode not in ("shared", "duplicated"):
        raise ValueError(f"unknown mode {mode!r}")
    fmt = fmt or inst.fmt
    n, m, q = inst.n_antennas, inst.n_users, fmt.total_bits
    width = accumulator_width(fmt, n)
    _check_representable(inst, fmt, width)

    formula = CnfFormula()
    n_copies = m + 1 if mode == "duplicated" else 1
    w_vars = [[[0] * q for _ in range(n)] for _ in range(n_copies)]
    for ant in range(n):
        for bit in range(q):
            v = formula.new_var()
            w_vars[0][ant][bit] = v
            formula.var_map[(f"w{ant}", bit, 0)] = v
    z_vars = []
    for user in range(m):
        v = formula.new_var()
        z_vars.append(v)
        formula.var_map[(f"z{user}", 0, 0)] = v
    for copy in range(1, n_copies):
        for ant in range(n):
            for bit in range(q):
                v = formula.new_var()
                w_vars[copy][ant][bit] = v
                formula.var_map[(f"w{ant}", bit, copy)] = v

    sink = CnfSink(formula)

    def const_bits(raw, nbits):
        return [sink.const(bool((raw >> i) & 1)) for i in range(nbits)]

    def accumulate(product_list):
        acc = sign_extend(product_list[0], width)
        for p in product_list[1:]:
            acc, ovf = ripple_add(sink, acc, sign_extend(p, width))
            sink.force(ovf, False)
        return acc

    scale = 1 << fmt.frac_bits
    one_bits = const_bits(1 << (2 * fmt.frac_bits), width)
    # A budget above the largest squared norm any representable w can
    # reach is vacuous, so it is clamped to that ceiling; this keeps the
    # constant inside the accumulator without changing the decision.
    norm_cap = n * (1 << (q - 1)) ** 2
    kappa_bits = const_bits(min(int(inst.kappa * scale * scale), norm_cap), width)

    # norm constraint: sum of squares of the primary copy, <= kappa
    squares = [multiply(sink, wb, wb) for wb in w_vars[0]]
    norm = accumulate(squares)
    sink.force(geq_signed(sink, kappa_bits, norm))

    # per-user constraints
    for user in range(m):
        copy = w_vars[user + 1] if mode == "duplicated" else w_vars[0]
        hraw = [int(inst.channels[user][ant] * scale) for ant in range(n)]
        prods = [
            multiply(sink, const_bits(hraw[ant], q), copy[ant]) for ant in range(n)
        ]
        total = accumulate(prods)
        flipped, ovf = cond_negate(sink, total, z_vars[user])
        sink.force(ovf, False)
        sink.force(geq_signed(sink, flipped, one_bits))

    # duplicated copies agree with the primary, bit by bit
    if mode == "duplicated":
        for copy in range(1, n_copies):
            for ant in range(n):
                for bit in range(q):
                    x = w_vars[0][ant][bit]
                    y = w_vars[copy][ant][bit]
                    formula.add_clause((x, -y))
                    formula.add_clause((-x, y))

    formula.info = EncodingInfo(inst, fmt, mode, w_vars, z_vars)
    return formula


def decode_witness(formula: CnfFormula, assignment) -> Witness:
    """Extract (w, z) from a satisfying assignment.

    assignment is a bool sequence indexed by var-1.  Disagreeing duplicate
    copies signal an internal error (the consistency clauses forbid it).
    """
    info: EncodingInfo = formula.info
    q = info.fmt.total_bits

    def bits(copy, ant):
        return [assignment[info.w_vars[copy][ant][b] - 1] for b in range(q)]

    w = []
    for ant in range(info.inst.n_antennas):
        primary = bits(0, ant)
        for copy in range(1, len(info.w_vars)):
            if bits(copy, ant) != primary:
                raise InconsistentAssignment(
                    f"copy {copy} of w({ant + 1}) disagrees with the primary"
                )
        w.append(FixedPointValue(info.fmt, bits_to_int(primary)))
    z = tuple(-1 if assignment[v - 1] else 1 for v in info.z_vars)
    return Witness(tuple(w), z)
