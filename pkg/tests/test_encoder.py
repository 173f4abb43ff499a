from fractions import Fraction

import numpy as np
import pytest

from bfdecide import satsolver
from bfdecide.encoder import (
    count_blocks,
    decode_witness,
    encode_instance,
    estimate_size,
    export_dimacs,
    export_smtlib,
    measure_block_costs,
    parse_dimacs,
)
from bfdecide.errors import UnrepresentableConstant
from bfdecide.fixedpoint import FixedPointFormat
from bfdecide.instance import BFInstance, check_witness, generate, snap_kappa

FMT = FixedPointFormat(8, 4)


def grid_feasible(inst):
    """Exhaustive check over the full fixed-point grid (tiny N only)."""
    fmt = inst.fmt
    step = float(fmt.step)
    vals = np.arange(int(fmt.raw_min), int(fmt.raw_max) + 1) * step
    grids = np.meshgrid(*([vals] * inst.n_antennas), indexing="ij")
    w = np.stack([g.ravel() for g in grids], axis=1)
    ok = (w * w).sum(axis=1) <= float(inst.kappa) + 1e-12
    ok &= (np.abs(w @ inst.channel_array()) >= 1 - 1e-12).all(axis=1)
    return bool(ok.any())


def single_channel(kappa):
    return BFInstance(1, 1, ((Fraction(1),),), Fraction(kappa), FMT)


class TestCounts:
    @pytest.mark.parametrize(
        "n,m,expected",
        [
            (1, 1, (2, 0, 2, 1, 0)),
            (4, 4, (20, 15, 5, 4, 3)),
            (2, 5, (12, 6, 6, 5, 4)),
        ],
    )
    def test_block_counts(self, n, m, expected):
        assert tuple(count_blocks(n, m)) == expected

    def test_estimate_tracks_affine_growth(self):
        costs = measure_block_costs(FMT)
        e = [estimate_size(3, m, costs) for m in (2, 4, 6)]
        assert e[2] - e[1] == e[1] - e[0]  # exact affinity in M


class TestEncodeTrivial:
    def test_unit_channel_sat(self):
        formula = encode_instance(single_channel(1))
        result = satsolver.solve(formula)
        assert result.status == "sat"
        witness = decode_witness(formula, result.assignment)
        assert check_witness(single_channel(1), witness)
        assert abs(float(witness.w[0].value())) == 1

    def test_unit_channel_unsat_below_one(self):
        formula = encode_instance(single_channel(Fraction(1, 2)))
        assert satsolver.solve(formula).status == "unsat"

    def test_modes_agree(self):
        for kappa in (Fraction(1, 2), Fraction(1), Fraction(2)):
            inst = single_channel(kappa)
            a = satsolver.solve(encode_instance(inst, mode="shared"))
            b = satsolver.solve(encode_instance(inst, mode="duplicated"))
            assert a.status == b.status


class TestEncodeVsGrid:
    def test_verdicts_match_grid_enumeration(self):
        for seed in range(15):
            n = 1 + seed % 2
            m = 1 + seed % 3
            mode = "shared" if seed % 2 == 0 else "duplicated"
            inst = generate(n, m, seed=seed, fmt=FMT)
            inst = inst.with_kappa(snap_kappa(Fraction(3, 2) * n, FMT))
            formula = encode_instance(inst, mode=mode)
            result = satsolver.solve(formula)
            assert (result.status == "sat") == grid_feasible(inst), seed
            if result.status == "sat":
                witness = decode_witness(formula, result.assignment)
                res = check_witness(inst, witness)
                assert res, res.reason

    def test_decoded_signs_match_channel_sides(self):
        inst = generate(2, 3, seed=8, fmt=FMT).with_kappa(Fraction(3))
        formula = encode_instance(inst)
        result = satsolver.solve(formula)
        assert result.status == "sat"
        witness = decode_witness(formula, result.assignment)
        w = np.array([float(x.value()) for x in witness.w])
        products = inst.channel_array().T @ w
        for z, p in zip(witness.z, products):
            assert z * p >= 1 - 1e-12


class TestKappaMonotone:
    def test_sat_set_grows_with_budget(self):
        inst = generate(2, 2, seed=3, fmt=FMT)
        prev_sat = False
        for kappa in (Fraction(1, 4), Fraction(1), Fraction(2), Fraction(8)):
            status = satsolver.solve(
                encode_instance(inst.with_kappa(kappa))
            ).status
            sat = status == "sat"
            assert sat or not prev_sat or not sat  # once sat, stays sat
            if prev_sat:
                assert sat
            prev_sat = sat


class TestSizeModel:
    def test_counts_independent_of_channels(self):
        sizes = set()
        for seed in range(5):
            inst = generate(2, 3, seed=seed, fmt=FMT).with_kappa(Fraction(2))
            formula = encode_instance(inst, mode="duplicated")
            sizes.add((formula.num_vars, len(formula.clauses)))
        assert len(sizes) == 1

    def test_estimate_within_factor_three(self):
        costs = measure_block_costs(FMT)
        for n, m in [(2, 2), (3, 4), (4, 3)]:
            inst = generate(n, m, seed=0, fmt=FMT).with_kappa(Fraction(2))
            measured = len(encode_instance(inst, mode="duplicated").clauses)
            est = estimate_size(n, m, costs)
            assert est <= 3 * measured and measured <= 3 * est


class TestKappaRepresentability:
    def test_off_pitch_kappa_rejected(self):
        inst = single_channel(Fraction(1, 3))
        with pytest.raises(UnrepresentableConstant):
            encode_instance(inst)

    def test_huge_kappa_clamps_to_vacuous_budget(self):
        # any budget beyond the largest representable norm is equivalent
        inst = single_channel(Fraction(10**6))
        result = satsolver.solve(encode_instance(inst))
        assert result.status == "sat"


class TestDimacs:
    def test_header_and_roundtrip(self):
        formula = encode_instance(single_channel(1))
        data = export_dimacs(formula)
        first = data.decode().splitlines()[0].split()
        assert first[:2] == ["p", "cnf"]
        assert int(first[2]) == formula.num_vars
        assert int(first[3]) == len(formula.clauses)
        back = parse_dimacs(data)
        assert back.num_vars == formula.num_vars
        assert list(back.clauses) == [tuple(c) for c in formula.clauses]


class TestSmtlib:
    def test_script_structure(self):
        inst = generate(2, 2, seed=0, fmt=FMT).with_kappa(Fraction(2))
        text = export_smtlib(inst).decode()
        assert text.startswith("(set-logic QF_NRA)")
        assert text.count("declare-const w") == 2
        assert text.count("declare-const z") == 2
        assert text.count("(assert") == 3  # norm + one per user
        assert "(check-sat)" in text
