"""SMT-LIB2 (QF_NRA) export for cross-validation with external solvers.

The script declares one Real per antenna and one Bool per user; each user's
Bool selects the polarity of its linear constraint.  Constants are exact
decimals (grid values have finite expansions), so a conforming solver
decides the same real-valued question the instance poses.
"""

from __future__ import annotations

from fractions import Fraction

from ..fixedpoint import FixedPointFormat, fraction_to_decimal
from ..instance import BFInstance


def _num(x: Fraction) -> str:
    d = fraction_to_decimal(Fraction(x))
    if d.startswith("-"):
        return f"(- {d[1:]})"
    return d


def export_smtlib(inst: BFInstance, fmt: FixedPointFormat | None = None) -> bytes:
    n, m = inst.n_antennas, inst.n_users
    lines = [
        "(set-logic QF_NRA)",
        f"; multicast beamforming feasibility, N={n} M={m}",
    ]
    for i in range(n):
        lines.append(f"(declare-const w{i + 1} Real)")
    for j in range(m):
        lines.append(f"(declare-const z{j + 1} Bool)")
    sq = " ".join(f"(* w{i + 1} w{i + 1})" for i in range(n))
    norm = f"(+ {sq})" if n > 1 else sq
    lines.append(f"(assert (<= {norm} {_num(inst.kappa)}))")
    for j in range(m):
        terms = " ".join(
            f"(* {_num(inst.channels[j][i])} w{i + 1})" for i in range(n)
        )
        lin = f"(+ {terms})" if n > 1 else terms
        lines.append(
            f"(assert (>= (* (ite z{j + 1} (- 1) 1) {lin}) 1))"
        )
    lines.append("(check-sat)")
    lines.append("(get-model)")
    return ("\n".join(lines) + "\n").encode()
