"""Decision procedures for real-valued single-group multicast beamforming.

Two backends decide whether (H, kappa) admits a beamformer w with
sum w(n)^2 <= kappa and |h_m^T w| >= 1 for all users: exact sign-vector
enumeration over convex QPs, and bit-blasted SAT over a fixed-point
witness grid.  A PARTITION reduction, encoding-size model, and benchmark
harness round out the toolkit.
"""

from .fixedpoint import FixedPointFormat, FixedPointValue, Rational, quantize
from .instance import BFInstance, Witness, check_witness, generate, normalize

__all__ = [
    "FixedPointFormat",
    "FixedPointValue",
    "Rational",
    "quantize",
    "BFInstance",
    "Witness",
    "check_witness",
    "generate",
    "normalize",
]

__version__ = "0.1.0"
