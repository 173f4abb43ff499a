"""Clause database and DIMACS export."""

from __future__ import annotations

from dataclasses import dataclass, field

from .circuits import AND, OR, XOR, GateSink


@dataclass
class CnfFormula:
    num_vars: int = 0
    clauses: list = field(default_factory=list)  # tuples of literals
    var_map: dict = field(default_factory=dict)  # (name, bit, copy) -> var
    info: object = None  # EncodingInfo for instance encodings

    def new_var(self) -> int:
        self.num_vars += 1
        return self.num_vars

    def add_clause(self, lits):
        lits = tuple(lits)
        if not lits:
            raise ValueError("empty clause")
        for l in lits:
            if l == 0 or abs(l) > self.num_vars:
                raise ValueError(f"literal {l} references an undeclared variable")
        self.clauses.append(lits)

    def check(self, assignment) -> bool:
        """assignment: sequence of bools indexed by var-1."""
        return all(
            any(assignment[l - 1] if l > 0 else not assignment[-l - 1] for l in cl)
            for cl in self.clauses
        )


class CnfSink(GateSink):
    """Gate sink writing Tseitin clauses straight into a CnfFormula."""

    def __init__(self, formula: CnfFormula):
        self.formula = formula
        self._true = None

    def new_var(self) -> int:
        return self.formula.new_var()

    def const(self, value: bool) -> int:
        if self._true is None:
            self._true = self.formula.new_var()
            self.formula.add_clause((self._true,))
        return self._true if value else -self._true

    def emit(self, op, a, b) -> int:
        o = self.formula.new_var()
        add = self.formula.add_clause
        if op == AND:
            add((-a, -b, o))
            add((a, -o))
            add((b, -o))
        elif op == OR:
            add((a, b, -o))
            add((-a, o))
            add((-b, o))
        elif op == XOR:
            add((-a, -b, -o))
            add((a, b, -o))
            add((a, -b, o))
            add((-a, b, o))
        else:
            raise ValueError(op)
        return o

    def force(self, lit, value=True):
        self.formula.add_clause((lit if value else -lit,))


def tseitin(block) -> CnfFormula:
    """CNF for a standalone CircuitBlock (inputs keep their variable ids)."""
    formula = CnfFormula(num_vars=block.n_vars)
    for var, val in block.const_vars.items():
        formula.add_clause((var if val else -var,))
    for op, a, b, out in block.gates:
        add = formula.add_clause
        if op == AND:
            add((-a, -b, out))
            add((a, -out))
            add((b, -out))
        elif op == OR:
            add((a, b, -out))
            add((-a, out))
            add((-b, out))
        else:
            add((-a, -b, -out))
            add((a, b, -out))
            add((a, -b, out))
            add((-a, b, out))
    return formula


def export_dimacs(formula: CnfFormula) -> bytes:
    lines = [f"p cnf {formula.num_vars} {len(formula.clauses)}"]
    for cl in formula.clauses:
        lines.append(" ".join(str(l) for l in cl) + " 0")
    return ("\n".join(lines) + "\n").encode()


def parse_dimacs(data: bytes) -> CnfFormula:
    num_vars = 0
    clauses = []
    for raw in data.decode().splitlines():
        s = raw.strip()
        if not s or s.startswith("c"):
            continue
        if s.startswith("p"):
            parts = s.split()
            num_vars = int(parts[2])
            continue
        lits = tuple(int(t) for t in s.split() if t != "0")
        if lits:
            clauses.append(lits)
    f = CnfFormula(num_vars=num_vars)
    for cl in clauses:
        f.add_clause(cl)
    return f
