"""Exact enumeration backend: 2^M sign resolutions, one convex QP each.

Fixing a sign vector z turns every |h_m^T w| >= 1 constraint into the linear
z(m) h_m^T w >= 1, leaving the convex min-norm QP

    min ||w||_2^2   s.t.  Diag(z) H^T w >= 1.

Each QP is solved exactly by enumerating candidate active subsets and
checking the KKT system, so the result doubles as its own certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import BfError, DimensionMismatch, SizeLimitExceeded
from .instance import BFInstance

ENUM_LIMIT = 20  # max users for exhaustive sign enumeration
DUAL_TOL = 1e-9
FEAS_TOL = 1e-9
KKT_TOL = 1e-8
GRAM_PIVOT_TOL = 1e-12


@dataclass(frozen=True)
class SignVector:
    signs: tuple  # entries in {+1, -1}

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def from_index(cls, code: int, n_users: int) -> "SignVector":
        # bit i clear -> user i gets +1
        return cls(tuple(-1 if (code >> i) & 1 else 1 for i in range(n_users)))

    def to_index(self) -> int:
        return sum(1 << i for i, s in enumerate(self.signs) if s == -1)


@dataclass(frozen=True)
class QpProblem:
    """min w^T A w + c^T w s.t. D w >= b with A = I, b = 1, c = 0."""

    d_tilde: np.ndarray  # M x N, row m = z(m) h_m^T

    @property
    def n_constraints(self) -> int:
        return self.d_tilde.shape[0]

    @property
    def n_vars(self) -> int:
        return self.d_tilde.shape[1]

    @property
    def a_tilde(self) -> np.ndarray:
        return np.eye(self.n_vars)

    @property
    def b_tilde(self) -> np.ndarray:
        return np.ones(self.n_constraints)

    @property
    def c_tilde(self) -> np.ndarray:
        return np.zeros(self.n_vars)


@dataclass(frozen=True)
class QpSolution:
    status: str  # "optimal" | "infeasible"
    w_star: np.ndarray | None = None
    objective: float | None = None  # squared norm
    active_set: tuple = ()
    duals: tuple = ()


@dataclass(frozen=True)
class EnumerationResult:
    v_star: float
    w_star: np.ndarray
    z_star: SignVector
    per_sign_log: tuple  # 2^M entries of (SignVector, status, objective|None)


def build_qp(inst: BFInstance, z: SignVector) -> QpProblem:
    if len(z.signs) != inst.n_users:
        raise DimensionMismatch("sign vector length != n_users")
    h = inst.channel_array()  # N x M
    d = np.array(z.signs, dtype=float)[:, None] * h.T
    return QpProblem(d)


def qp_solve(prob: QpProblem) -> QpSolution:
    """Exact min-norm QP via KKT active-subset enumeration.

    Candidate subsets S are scanned in increasing cardinality; the first
    nonsingular Gram system with nonnegative multipliers and full primal
    feasibility is the optimum (strict convexity makes it unique).
    """
    m, n = prob.d_tilde.shape
    if m > ENUM_LIMIT:
        raise SizeLimitExceeded(f"M={m} exceeds the enumeration bound {ENUM_LIMIT}")
    d = prob.d_tilde
    if m == 0:
        return QpSolution("optimal", np.zeros(n), 0.0)
    for size in range(1, min(m, n) + 1):
        for subset in combinations(range(m), size):
            d_s = d[list(subset)]
            gram = d_s @ d_s.T
            try:
                chol = np.linalg.cholesky(gram)
            except np.linalg.LinAlgError:
                continue
            if np.min(np.diag(chol)) < GRAM_PIVOT_TOL:
                continue
            try:
                lam = np.linalg.solve(gram, np.ones(size))
            except np.linalg.LinAlgError:
                continue
            if np.min(lam) < -DUAL_TOL:
                continue
            w = d_s.T @ lam
            if np.min(d @ w) >= 1 - FEAS_TOL:
                return QpSolution(
                    "optimal", w, float(w @ w), subset, tuple(lam)
                )
    if _feasibility_sweep(d):
        raise BfError("active-subset enumeration failed on a feasible QP")
    return QpSolution("infeasible")


def _feasibility_sweep(d: np.ndarray, starts: int = 32, iters: int = 300) -> bool:
    """Subgradient ascent on min_m d_m^T w from random starts.

    Guards against numerically rejected pivots: the problem is declared
    infeasible only if no start pushes the worst slack to ~1.
    """
    rng = np.random.default_rng(0)
    m, n = d.shape
    best = -np.inf
    for _ in range(starts):
        w = rng.standard_normal(n)
        for it in range(iters):
            slacks = d @ w
            worst = int(np.argmin(slacks))
            best = max(best, float(slacks[worst]))
            if best >= 1 - 1e-6:
                return True
            g = d[worst]
            norm = np.linalg.norm(g)
            if norm < 1e-15:
                break
            w = w + (2.0 / (1 + it) ** 0.5) * g / norm
    return best >= 1 - 1e-6


def verify_kkt(prob: QpProblem, sol: QpSolution) -> bool:
    """Stationarity, primal/dual feasibility, complementary slackness."""
    if sol.status != "optimal":
        return False
    d = prob.d_tilde
    w = sol.w_star
    lam = np.asarray(sol.duals, dtype=float)
    if len(sol.active_set) != len(lam):
        return False
    if lam.size and np.min(lam) < -KKT_TOL:
        return False
    d_s = d[list(sol.active_set)] if sol.active_set else np.zeros((0, d.shape[1]))
    # stationarity of 0.5 grad: w = D_S^T lambda
    if np.max(np.abs(w - d_s.T @ lam), initial=0.0) > KKT_TOL:
        return False
    slacks = d @ w - 1
    if slacks.size and np.min(slacks) < -KKT_TOL:
        return False
    for idx in sol.active_set:
        if abs(slacks[idx]) > KKT_TOL:
            return False
    return True


def enumerate_optimal(inst: BFInstance) -> EnumerationResult:
    """Solve the QP for all 2^M sign vectors and take the minimum.

    z and -z give mirrored problems (w -> -w), so only half the codes are
    solved; the log still carries all 2^M entries.
    """
    m = inst.n_users
    if m > ENUM_LIMIT:
        raise SizeLimitExceeded(f"M={m} exceeds the enumeration bound {ENUM_LIMIT}")
    solved: dict[int, QpSolution] = {}
    full = (1 << m) - 1
    log = []
    best = None  # (objective, code, solution)
    for code in range(1 << m):
        mirror = full ^ code
        if mirror in solved:
            prev = solved[mirror]
            sol = (
                QpSolution(
                    "optimal", -prev.w_star, prev.objective, prev.active_set, prev.duals
                )
                if prev.status == "optimal"
                else prev
            )
        else:
            sol = qp_solve(build_qp(inst, SignVector.from_index(code, m)))
        solved[code] = sol
        z = SignVector.from_index(code, m)
        log.append((z, sol.status, sol.objective))
        if sol.status == "optimal" and (best is None or sol.objective < best[0]):
            best = (sol.objective, code, sol)
    if best is None:
        raise BfError("no sign vector yielded a feasible QP (zero channel column?)")
    obj, code, sol = best
    return EnumerationResult(
        obj, sol.w_star, SignVector.from_index(code, m), tuple(log)
    )


@dataclass(frozen=True)
class EnumDecision:
    member: bool
    v_star: float
    w_star: np.ndarray
    z_star: SignVector


def decide_enum(inst: BFInstance) -> EnumDecision:
    """Member iff the enumerated optimum fits the squared-norm budget."""
    res = enumerate_optimal(inst)
    return EnumDecision(res.v_star <= float(inst.kappa), res.v_star, res.w_star, res.z_star)
