"""Compare the compiled and pure-Python solver cores.

Runs both cores on a mix of encoded beamforming instances and random
3-CNF formulas, checks that the verdicts agree, and prints per-formula
wall times with the speedup of the compiled core.

Usage: python3 benchmarks/bench_solver_cores.py [--quick]
"""

import argparse
import random
import time
from fractions import Fraction

from bfdecide import generate, satsolver
from bfdecide.encoder import CnfFormula, encode_instance
from bfdecide.fixedpoint import FixedPointFormat
from bfdecide.instance import snap_kappa
from bfdecide.oracle import enumerate_optimal


def beamforming_cases(quick):
    fmt = FixedPointFormat(8, 4)
    seeds = [1, 5, 7] if quick else [1, 5, 7, 11, 4]
    for seed in seeds:
        n, m = 2, 2 + seed % 2
        inst = generate(n, m, seed=seed, fmt=fmt)
        v_star = enumerate_optimal(inst).v_star
        for mult, direction in ((0.8, "down"), (1.5, "up")):
            kappa = snap_kappa(Fraction(mult * v_star), fmt, direction)
            label = f"bf n={n} m={m} seed={seed} mult={mult}"
            yield label, encode_instance(inst.with_kappa(kappa))


def random_cnf_cases(quick):
    rng = random.Random(3)
    count = 5 if quick else 15
    for i in range(count):
        nv = rng.randint(60, 120)
        clauses = []
        for _ in range(int(4.1 * nv)):
            vs = rng.sample(range(1, nv + 1), 3)
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
        yield f"rand3 vars={nv} #{i}", CnfFormula(
            num_vars=nv, clauses=tuple(clauses)
        )


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller case set")
    args = parser.parse_args()

    if not satsolver.HAVE_COMPILED_CORE:
        raise SystemExit("compiled core not built; nothing to compare")

    print(f"{'case':40s} {'verdict':8s} {'python':>9s} {'compiled':>9s} {'speedup':>8s}")
    totals = {"python": 0.0, "compiled": 0.0}
    cases = list(beamforming_cases(args.quick)) + list(random_cnf_cases(args.quick))
    for label, formula in cases:
        row = {}
        verdicts = set()
        for core in ("python", "compiled"):
            t0 = time.perf_counter()
            result = satsolver.solve(formula, core=core)
            row[core] = time.perf_counter() - t0
            totals[core] += row[core]
            verdicts.add(result.status)
        assert len(verdicts) == 1, f"core disagreement on {label}"
        speedup = row["python"] / row["compiled"] if row["compiled"] > 0 else float("inf")
        print(
            f"{label:40s} {verdicts.pop():8s} "
            f"{row['python']:8.3f}s {row['compiled']:8.3f}s {speedup:7.1f}x"
        )
    overall = totals["python"] / totals["compiled"]
    print(
        f"\ntotal python {totals['python']:.2f}s, "
        f"compiled {totals['compiled']:.2f}s, overall speedup {overall:.1f}x"
    )


if __name__ == "__main__":
    main()
