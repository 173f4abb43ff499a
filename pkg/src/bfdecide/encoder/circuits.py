"""Composable two's-complement circuit blocks.

Wires are DIMACS-style literals: a positive int names a variable, negation
is free.  Builders are generic over a gate sink, so the same logic backs
both the standalone block library (simulation, cost measurement) and the
direct-to-CNF instance encoder.

Bit lists are LSB first.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..fixedpoint import FixedPointFormat

AND, OR, XOR = "AND", "OR", "XOR"


@dataclass
class CircuitBlock:
    kind: str  # Sum | Mult | Comp | SignFlip
    input_vars: list
    output_vars: list  # data bits first, flag bit last (as literals)
    gates: list = field(default_factory=list)  # (op, lit_a, lit_b, out_var)
    const_vars: dict = field(default_factory=dict)  # var -> pinned value
    n_vars: int = 0

    def simulate(self, inputs: dict) -> dict:
        """Evaluate all wires given {input_var: bool}; returns var -> bool."""
        values = dict(inputs)
        values.update(self.const_vars)
        for op, a, b, out in self.gates:
            va = values[a] if a > 0 else not values[-a]
            vb = values[b] if b > 0 else not values[-b]
            if op == AND:
                values[out] = va and vb
            elif op == OR:
                values[out] = va or vb
            else:
                values[out] = va != vb
        return values

    def output_bits(self, values: dict) -> list:
        return [values[o] if o > 0 else not values[-o] for o in self.output_vars]


class GateSink:
    """Allocates wires and records gates."""

    def new_var(self) -> int:
        raise NotImplementedError

    def const(self, value: bool) -> int:
        """Literal pinned to the given truth value."""
        raise NotImplementedError

    def emit(self, op: str, a: int, b: int) -> int:
        raise NotImplementedError


class BlockBuilder(GateSink):
    def __init__(self, kind: str):
        self.block = CircuitBlock(kind, [], [])
        self._false = None

    def new_var(self) -> int:
        self.block.n_vars += 1
        return self.block.n_vars

    def const(self, value: bool) -> int:
        if self._false is None:
            v = self.new_var()
            self.block.const_vars[v] = False
            self._false = v
        return -self._false if value else self._false

    def emit(self, op, a, b) -> int:
        out = self.new_var()
        self.block.gates.append((op, a, b, out))
        return out

    def inputs(self, count) -> list:
        vs = [self.new_var() for _ in range(count)]
        self.block.input_vars.extend(vs)
        return vs

    def finish(self, outputs) -> CircuitBlock:
        self.block.output_vars = list(outputs)
        return self.block


# --- width-generic arithmetic -------------------------------------------------


def full_add(sink, a, b, cin):
    x = sink.emit(XOR, a, b)
    s = sink.emit(XOR, x, cin)
    c1 = sink.emit(AND, a, b)
    c2 = sink.emit(AND, x, cin)
    return s, sink.emit(OR, c1, c2)


def half_add(sink, a, b):
    return sink.emit(XOR, a, b), sink.emit(AND, a, b)


def ripple_add(sink, a_bits, b_bits, cin=None):
    """Same-width two's-complement add; returns (sum_bits, overflow_lit).

    Overflow is carry-into-msb XOR carry-out-of-msb.
    """
    assert len(a_bits) == len(b_bits)
    width = len(a_bits)
    out = []
    carry = cin if cin is not None else sink.const(False)
    for i in range(width):
        if i == width - 1:
            carry_into_msb = carry
        s, carry = full_add(sink, a_bits[i], b_bits[i], carry)
        out.append(s)
    ovf = sink.emit(XOR, carry_into_msb, carry)
    return out, ovf


def add_modular(sink, a_bits, b_bits):
    """Add b into a modulo 2^len(a); b may be narrower (low-aligned)."""
    out = []
    carry = None
    for i, a in enumerate(a_bits):
        if i < len(b_bits):
            if carry is None:
                s, carry = half_add(sink, a, b_bits[i])
            else:
                s, carry = full_add(sink, a, b_bits[i], carry)
        elif carry is not None:
            s, carry = half_add(sink, a, carry)
        else:
            s = a
        out.append(s)
    return out


def sign_extend(bits, width):
    return list(bits) + [bits[-1]] * (width - len(bits))


def multiply(sink, a_bits, b_bits):
    """Exact signed product at width len(a)+len(b) (shift-and-add)."""
    width = len(a_bits) + len(b_bits)
    a_ext = sign_extend(a_bits, width)
    b_ext = sign_extend(b_bits, width)
    acc = [sink.emit(AND, a_ext[k], b_ext[0]) for k in range(width)]
    for j in range(1, width):
        row = [sink.emit(AND, a_ext[k - j], b_ext[j]) for k in range(j, width)]
        acc[j:] = add_modular(sink, acc[j:], row)
    return acc


def geq_signed(sink, a_bits, b_bits):
    """One literal, true iff a >= b as signed integers."""
    assert len(a_bits) == len(b_bits)
    a_ext = sign_extend(a_bits, len(a_bits) + 1)
    b_ext = sign_extend(b_bits, len(b_bits) + 1)
    # a - b = a + ~b + 1; the extended width cannot overflow
    carry = sink.const(True)
    for a, b in zip(a_ext, b_ext):
        s, carry = full_add(sink, a, -b, carry)
    return -s  # sign bit clear <=> a >= b


def cond_negate(sink, bits, ctrl):
    """Two's-complement negation when ctrl is true; returns (bits, overflow).

    Overflow only when negating the minimum value.
    """
    flipped = [sink.emit(XOR, b, ctrl) for b in bits]
    out = []
    carry = ctrl
    for f in flipped:
        s, carry = half_add(sink, f, carry)
        out.append(s)
    # input == min value: msb set, all lower bits clear
    is_min = bits[-1]
    for b in bits[:-1]:
        is_min = sink.emit(AND, is_min, -b)
    ovf = sink.emit(AND, is_min, ctrl)
    return out, ovf


# --- the standalone block library --------------------------------------------


def build_sum(fmt: FixedPointFormat) -> CircuitBlock:
    """Q-bit adder with overflow flag."""
    bld = BlockBuilder("Sum")
    a = bld.inputs(fmt.total_bits)
    b = bld.inputs(fmt.total_bits)
    s, ovf = ripple_add(bld, a, b)
    return bld.finish(s + [ovf])


def build_mult(fmt: FixedPointFormat) -> CircuitBlock:
    """Fixed-point multiplier: exact 2Q product, F-bit arithmetic right shift,
    Q-bit result; flag set when the shifted value does not fit Q bits."""
    q, f = fmt.total_bits, fmt.frac_bits
    bld = BlockBuilder("Mult")
    a = bld.inputs(q)
    b = bld.inputs(q)
    prod = multiply(bld, a, b)  # 2Q bits, 2F fractional
    res = prod[f : f + q]
    ovf = bld.const(False)
    for j in range(f + q, 2 * q):
        ovf = bld.emit(OR, ovf, bld.emit(XOR, prod[j], res[-1]))
    return bld.finish(res + [ovf])


def build_comp(fmt: FixedPointFormat) -> CircuitBlock:
    """Signed a >= b comparator, one output bit."""
    bld = BlockBuilder("Comp")
    a = bld.inputs(fmt.total_bits)
    b = bld.inputs(fmt.total_bits)
    return bld.finish([geq_signed(bld, a, b)])


def build_signflip(fmt: FixedPointFormat) -> CircuitBlock:
    """Conditional negation: ctrl=0 passes through, ctrl=1 negates."""
    bld = BlockBuilder("SignFlip")
    a = bld.inputs(fmt.total_bits)
    ctrl = bld.inputs(1)[0]
    out, ovf = cond_negate(bld, a, ctrl)
    return bld.finish(out + [ovf])


# --- bit packing helpers ------------------------------------------------------


def int_to_bits(raw: int, width: int) -> list:
    """Two's-complement bit list, LSB first."""
    return [bool((raw >> i) & 1) for i in range(width)]


def bits_to_int(bits) -> int:
    """Signed integer from a two's-complement bit list."""
    val = sum(1 << i for i, b in enumerate(bits) if b)
    if bits[-1]:
        val -= 1 << len(bits)
    return val
