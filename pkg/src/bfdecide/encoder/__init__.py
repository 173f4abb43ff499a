from .circuits import (
    CircuitBlock,
    bits_to_int,
    build_comp,
    build_mult,
    build_signflip,
    build_sum,
    int_to_bits,
)
from .cnf import CnfFormula, export_dimacs, parse_dimacs, tseitin
from .encode import (
    BlockCosts,
    BlockCounts,
    count_blocks,
    decode_witness,
    encode_instance,
    estimate_size,
    measure_block_costs,
)
from .smtlib import export_smtlib

__all__ = [
    "CircuitBlock",
    "CnfFormula",
    "BlockCosts",
    "BlockCounts",
    "bits_to_int",
    "int_to_bits",
    "build_sum",
    "build_mult",
    "build_comp",
    "build_signflip",
    "count_blocks",
    "decode_witness",
    "encode_instance",
    "estimate_size",
    "measure_block_costs",
    "export_dimacs",
    "parse_dimacs",
    "tseitin",
    "export_smtlib",
]
