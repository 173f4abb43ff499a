"""Command line surface and benchmark harness.

Subcommands cover instance generation, solving through either backend,
witness checking, the partition reduction, size estimation, DIMACS and
SMT-LIB export, raw CNF solving, the kappa sanity ladder, and the
scaling sweep with CSV output.

Exit codes are a stable contract: 0 success (member / sat / accepted),
1 nonmember / unsat / rejected, 2 usage error, 3 timeout.
"""

from __future__ import annotations

import argparse
import os
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import satsolver
from .encoder import (
    count_blocks,
    decode_witness,
    encode_instance,
    estimate_size,
    export_dimacs,
    export_smtlib,
    measure_block_costs,
    parse_dimacs,
)
from .errors import BfError
from .fixedpoint import FixedPointFormat
from .instance import (
    Witness,
    check_witness,
    generate,
    parse,
    serialize,
    snap_kappa,
)
from .oracle import decide_enum, enumerate_optimal
from .reduction import PartitionInstance
from .reduction import reduce as partition_reduce

EXIT_OK = 0
EXIT_NONMEMBER = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 3

DEFAULT_TIMEOUT_S = 300.0
DEFAULT_MULTIPLIERS = (0.5, 0.99, 1.0, 1.1, 1.5, 2.0)

CSV_COLUMNS = (
    "axis,n,m,q,f,kappa_mult,backend,seed,verdict,objective,v_star,"
    "wall_ms,encode_ms,vars,clauses"
)


def _fmt_from_args(args) -> FixedPointFormat:
    return FixedPointFormat(args.bits, args.frac_bits)


def _write_text(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_bytes(data: bytes, out: str | None):
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)


def _load_instance(path: str):
    with open(path) as fh:
        return parse(fh.read())


def _witness_objective(w) -> float:
    return float(sum(Fraction(x.value() if hasattr(x, "value") else x) ** 2 for x in w))


def _ladder_kappa(mult: float, v_star: float, fmt: FixedPointFormat) -> Fraction:
    """Snap mult*v_star onto the budget grid, away from the boundary.

    Sub-unit rungs round down and super-unit rungs round up; the 0.99 and
    1.0 rungs move one extra grid step outward so the verdict is not
    decided by quantization of the boundary itself.
    """
    pitch = Fraction(1, 1 << (2 * fmt.frac_bits))
    if mult < 1.0:
        kappa = snap_kappa(Fraction(mult * v_star), fmt, direction="down")
        if mult >= 0.99:
            kappa = max(Fraction(0), kappa - pitch)
    else:
        kappa = snap_kappa(Fraction(mult * v_star), fmt, direction="up")
        if mult <= 1.0:
            kappa += pitch
    return kappa


def _solve_sat(inst, mode: str, timeout_s: float, seed: int):
    """Encode + solve + decode; returns (verdict, objective, timings, formula)."""
    t0 = time.perf_counter()
    formula = encode_instance(inst, mode=mode)
    encode_ms = 1000.0 * (time.perf_counter() - t0)
    t1 = time.perf_counter()
    result = satsolver.solve(formula, budget_s=timeout_s, seed=seed)
    wall_ms = 1000.0 * (time.perf_counter() - t1)
    objective = None
    if result.status == "sat":
        witness = decode_witness(formula, result.assignment)
        res = check_witness(inst, witness)
        if not res:
            raise BfError(f"decoded witness rejected: {res.reason}")
        objective = _witness_objective(witness.w)
        verdict = "member"
    elif result.status == "unsat":
        verdict = "nonmember"
    else:
        verdict = "timeout"
    return verdict, objective, wall_ms, encode_ms, formula


# --- subcommands ---


def cmd_gen(args) -> int:
    fmt = _fmt_from_args(args)
    inst = generate(args.antennas, args.users, seed=args.seed, fmt=fmt)
    if args.kappa is not None:
        kappa = snap_kappa(Fraction(args.kappa), fmt, direction="up")
    elif args.kappa_mult is not None:
        v_star = enumerate_optimal(inst).v_star
        kappa = snap_kappa(Fraction(args.kappa_mult * v_star), fmt, direction="up")
    else:
        print("gen: one of --kappa / --kappa-mult is required", file=sys.stderr)
        return EXIT_USAGE
    _write_text(serialize(inst.with_kappa(kappa)), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    if args.backend == "enum":
        t0 = time.perf_counter()
        dec = decide_enum(inst)
        wall_ms = 1000.0 * (time.perf_counter() - t0)
        verdict = "member" if dec.member else "nonmember"
        print(f"{verdict} v_star={dec.v_star:.9g} wall_ms={wall_ms:.1f}")
        return EXIT_OK if dec.member else EXIT_NONMEMBER
    verdict, objective, wall_ms, encode_ms, _ = _solve_sat(
        inst, args.mode, args.timeout_s, args.seed
    )
    line = f"{verdict}"
    if objective is not None:
        line += f" objective={objective:.9g}"
    line += f" wall_ms={wall_ms:.1f} encode_ms={encode_ms:.1f}"
    print(line)
    if verdict == "member":
        return EXIT_OK
    if verdict == "nonmember":
        return EXIT_NONMEMBER
    return EXIT_TIMEOUT


def cmd_check(args) -> int:
    inst = _load_instance(args.instance)
    with open(args.witness) as fh:
        vals = [float(tok) for tok in fh.read().split()]
    result = check_witness(inst, Witness(tuple(vals)))
    if result:
        print("accept")
        return EXIT_OK
    print(f"reject {result.reason} (constraint {result.index})")
    return EXIT_NONMEMBER


def cmd_reduce(args) -> int:
    inst = partition_reduce(PartitionInstance(tuple(args.values)))
    _write_text(serialize(inst), args.out)
    return EXIT_OK


def cmd_estimate(args) -> int:
    fmt = _fmt_from_args(args)
    counts = count_blocks(args.antennas, args.users)
    costs = measure_block_costs(fmt)
    total = estimate_size(args.antennas, args.users, costs)
    print(
        f"blocks mult={counts.mult} sum={counts.sum} comp={counts.comp} "
        f"sign={counts.sign} consist={counts.consist}"
    )
    print(
        f"costs c_mult={costs.c_mult} c_sum={costs.c_sum} c_comp={costs.c_comp} "
        f"c_sign={costs.c_sign} c_consist={costs.c_consist}"
    )
    print(f"estimated_clauses {total}")
    return EXIT_OK


def cmd_export(args) -> int:
    inst = _load_instance(args.instance)
    if args.format == "smtlib":
        _write_bytes(export_smtlib(inst), args.out)
    else:
        formula = encode_instance(inst, mode=args.mode)
        _write_bytes(export_dimacs(formula), args.out)
    return EXIT_OK


def cmd_sat(args) -> int:
    with open(args.cnf, "rb") as fh:
        formula = parse_dimacs(fh.read())
    result = satsolver.solve(formula, budget_s=args.timeout_s, seed=args.seed)
    if result.status == "sat":
        print("s SATISFIABLE")
        lits = [
            (i + 1) if val else -(i + 1)
            for i, val in enumerate(result.assignment)
        ]
        print("v " + " ".join(str(l) for l in lits) + " 0")
        return EXIT_OK
    if result.status == "unsat":
        print("s UNSATISFIABLE")
        return EXIT_NONMEMBER
    print("s UNKNOWN")
    return EXIT_TIMEOUT


def cmd_sanity(args) -> int:
    if args.instance:
        inst = _load_instance(args.instance)
        fmt = inst.fmt
    else:
        fmt = _fmt_from_args(args)
        inst = generate(args.antennas, args.users, seed=args.seed, fmt=fmt)
    v_star = enumerate_optimal(inst).v_star
    mults = args.multipliers or list(DEFAULT_MULTIPLIERS)
    print(f"v_star {v_star:.9g}")
    print("mult verdict objective wall_ms")
    for mult in mults:
        kappa = _ladder_kappa(mult, v_star, fmt)
        verdict, objective, wall_ms, _, _ = _solve_sat(
            inst.with_kappa(kappa), args.mode, args.timeout_s, args.seed
        )
        obj = f"{objective:.9g}" if objective is not None else "-"
        print(f"{mult:g} {verdict} {obj} {wall_ms:.1f}")
    return EXIT_OK


def _sweep_trial(job):
    (axis, n, m, q, f, seed, kappa_mult, timeout_s, mode) = job
    fmt = FixedPointFormat(q, f)
    inst = generate(n, m, seed=seed, fmt=fmt)
    v_star = enumerate_optimal(inst).v_star
    kappa = snap_kappa(Fraction(kappa_mult * v_star), fmt, direction="up")
    verdict, objective, wall_ms, encode_ms, formula = _solve_sat(
        inst.with_kappa(kappa), mode, timeout_s, seed
    )
    return {
        "axis": axis,
        "n": n,
        "m": m,
        "q": q,
        "f": f,
        "kappa_mult": f"{kappa_mult:g}",
        "backend": "sat",
        "seed": seed,
        "verdict": verdict,
        "objective": f"{objective:.9g}" if objective is not None else "",
        "v_star": f"{v_star:.9g}",
        "wall_ms": f"{wall_ms:.1f}",
        "encode_ms": f"{encode_ms:.1f}",
        "vars": formula.num_vars,
        "clauses": len(formula.clauses),
    }


def _pool_size() -> int:
    env = os.environ.get("BF_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def cmd_sweep(args) -> int:
    sizes = args.range
    jobs = []
    for i, size in enumerate(sizes):
        n, m = (size, args.fixed) if args.axis == "antennas" else (args.fixed, size)
        for trial in range(args.trials):
            seed = args.seed + 1000 * i + trial
            jobs.append(
                (args.axis, n, m, args.bits, args.frac_bits, seed,
                 args.kappa_mult, args.timeout_s, args.mode)
            )
    workers = _pool_size()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_trial, jobs))
    else:
        rows = [_sweep_trial(job) for job in jobs]
    lines = [CSV_COLUMNS]
    cols = CSV_COLUMNS.split(",")
    for row in rows:
        lines.append(",".join(str(row[c]) for c in cols))
    per_size = len(sizes) and args.trials
    for i, size in enumerate(sizes):
        chunk = rows[i * args.trials : (i + 1) * args.trials]
        times = [float(r["wall_ms"]) for r in chunk]
        base = dict(chunk[0])
        for stat, value in (
            ("median", statistics.median(times)),
            ("mean", statistics.fmean(times)),
        ):
            summary = dict(base)
            summary.update(
                seed="", verdict=stat, objective="", v_star="",
                wall_ms=f"{value:.1f}", encode_ms="", vars="", clauses="",
            )
            lines.append(",".join(str(summary[c]) for c in cols))
    _write_text("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# --- argument parsing ---


def _add_format_flags(p, q_default=8, f_default=4):
    p.add_argument("-q", "--bits", type=int, default=q_default)
    p.add_argument("-f", "--frac-bits", type=int, default=f_default)


def _add_solver_flags(p):
    p.add_argument("--mode", choices=("shared", "duplicated"), default="shared")
    p.add_argument("--timeout-s", type=float, default=DEFAULT_TIMEOUT_S)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="bfdecide",
        description="Decision procedures for single-group multicast beamforming.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument("-n", "--antennas", type=int, required=True)
    p.add_argument("-m", "--users", type=int, required=True)
    _add_format_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kappa", type=str)
    p.add_argument("--kappa-mult", type=float)
    p.add_argument("--out", type=str)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="decide membership of an instance file")
    p.add_argument("instance")
    p.add_argument("--backend", choices=("sat", "enum"), default="sat")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="verify a witness against an instance")
    p.add_argument("instance")
    p.add_argument("witness")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reduce", help="reduce a partition multiset to an instance")
    p.add_argument("values", type=int, nargs="+")
    p.add_argument("--out", type=str)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("estimate", help="predict CNF size from block counts")
    p.add_argument("-n", "--antennas", type=int, required=True)
    p.add_argument("-m", "--users", type=int, required=True)
    _add_format_flags(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("export", help="export an instance as DIMACS or SMT-LIB")
    p.add_argument("instance")
    p.add_argument("--format", choices=("dimacs", "smtlib"), default="dimacs")
    p.add_argument("--mode", choices=("shared", "duplicated"), default="shared")
    p.add_argument("--out", type=str)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("sat", help="solve a DIMACS CNF file")
    p.add_argument("cnf")
    p.add_argument("--timeout-s", type=float, default=DEFAULT_TIMEOUT_S)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("sanity", help="run the kappa ladder against one instance")
    p.add_argument("instance", nargs="?")
    p.add_argument("-n", "--antennas", type=int, default=2)
    p.add_argument("-m", "--users", type=int, default=3)
    _add_format_flags(p)
    p.add_argument("--multipliers", type=float, nargs="+")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_sanity)

    p = sub.add_parser("sweep", help="scaling benchmark, CSV output")
    p.add_argument("--axis", choices=("antennas", "users"), required=True)
    p.add_argument("--range", type=int, nargs="+", required=True)
    p.add_argument("--fixed", type=int, default=4)
    p.add_argument("--trials", type=int, default=15)
    p.add_argument("--kappa-mult", type=float, default=100.0)
    _add_format_flags(p)
    _add_solver_flags(p)
    p.add_argument("--out", type=str)
    p.set_defaults(func=cmd_sweep)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
