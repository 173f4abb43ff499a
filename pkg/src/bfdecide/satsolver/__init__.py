"""Self-contained CDCL SAT solver with a compiled hot core.

The propagation loop dominates solve time, so it is implemented twice:
once in Cython (``_ccore``) and once in pure Python (``pycore``).  The
compiled core is selected at import when available; both follow the same
deterministic algorithm.  ``benchmarks/bench_solver_cores.py`` compares
them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import pycore

try:
    from . import _ccore

    HAVE_COMPILED_CORE = True
except ImportError:  # built without the extension
    _ccore = None
    HAVE_COMPILED_CORE = False


@dataclass(frozen=True)
class SolverResult:
    status: str  # "sat" | "unsat" | "timeout"
    assignment: list | None = None  # bools indexed by var-1 when sat
    stats: dict = field(default_factory=dict)


def solve(formula, budget_s=None, seed=0, core=None) -> SolverResult:
    """Decide a CnfFormula; sat assignments are re-verified before return.

    core: None (auto), "compiled", or "python".
    """
    if core is None:
        core = "compiled" if HAVE_COMPILED_CORE else "python"
    if core == "compiled":
        if not HAVE_COMPILED_CORE:
            raise RuntimeError("compiled solver core is not available")
        status, model, stats = _ccore.solve_cnf(
            formula.num_vars, formula.clauses, budget_s, seed
        )
    elif core == "python":
        status, model, stats = pycore.solve_cnf(
            formula.num_vars, formula.clauses, budget_s, seed
        )
    else:
        raise ValueError(f"unknown core {core!r}")
    if status == "sat":
        assert formula.check(model), "satisfying assignment failed re-verification"
    return SolverResult(status, model, stats)


__all__ = ["SolverResult", "solve", "HAVE_COMPILED_CORE"]
