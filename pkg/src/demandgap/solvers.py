"""Numerical kernels behind the existence results.

Three primitives: irreducibility of nonnegative matrices (strong
connectivity of the positive-entry digraph), dominant eigenpairs of
nonnegative matrices by shifted power iteration, and nonnegative
least-squares membership tests for column cones.  On top of them sit two
constructive equilibrium solvers for economies whose property matrix
factors as ``B = C @ B1``:

* :func:`spectral_equilibrium` prices the goods so that every consumer's
  budget matches the stationary weights of the row-normalised factor
  ``B1`` (valid when ``B1`` is irreducible and the resulting budget vector
  lies in the cone spanned by the rows of ``C``);
* :func:`unit_value_equilibrium` prices every demand bundle at unit value
  (valid when the column sums of ``B1`` reproduce total supply through
  ``C``).

Both verify the returned price by substitution and never return an
unverified price.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import nnls
from scipy.sparse.csgraph import connected_components

from .errors import (
    NoConvergence,
    NoPositivePrice,
    NotInCone,
    NotIrreducible,
    PreconditionFailed,
)
from .exchange import (
    DEFAULT_TOL,
    DEFAULT_TOL_POS,
    EquilibriumReport,
    ExchangeEconomy,
    check_equilibrium,
)

PF_TOL = 1e-10
PF_MAX_ITER = 100_000
CONE_TOL = 1e-8

__all__ = [
    "PF_TOL",
    "PF_MAX_ITER",
    "CONE_TOL",
    "PerronResult",
    "ConeSolution",
    "ConstructedEquilibrium",
    "is_irreducible",
    "perron_eigen",
    "solve_nonneg",
    "spectral_equilibrium",
    "unit_value_equilibrium",
]


def _nonneg_square(M, name: str = "M") -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square, got shape {M.shape}")
    if (M < 0).any():
        raise ValueError(f"{name} must be nonnegative")
    return M


def is_irreducible(M) -> bool:
    """True when the digraph with an edge i -> j for ``M[i, j] > 0`` is
    strongly connected.  A 1x1 matrix is irreducible iff its entry is
    positive (self-loop convention)."""
    M = _nonneg_square(M)
    if M.shape[0] == 1:
        return bool(M[0, 0] > 0)
    n_comp, _ = connected_components(M > 0, directed=True, connection="strong")
    return n_comp == 1


@dataclass(frozen=True)
class PerronResult:
    """Dominant eigenpair of a nonnegative matrix.

    ``right`` and ``left`` are scaled to max-norm 1 and are strictly
    positive when the matrix is irreducible.  ``residual`` is the larger of
    the two eigen-residuals ``max |M v - rho v|``; ``rho_left`` is the
    eigenvalue estimated from the transpose iteration (it agrees with
    ``rho`` up to the residual tolerance).
    """

    rho: float
    right: np.ndarray
    left: np.ndarray
    iterations: int
    residual: float
    rho_left: float


def _power(M: np.ndarray, pf_tol: float, max_iter: int) -> tuple[float, np.ndarray, int, float]:
    """Shifted power iteration on a nonnegative matrix.

    The shift ``eps = 1e-3 * max(M)`` breaks the period-2 (and higher)
    oscillation of permutation-like matrices; the eigenvalue is read back
    on the unshifted matrix via the Rayleigh quotient, so no shift
    subtraction error accumulates.  Starts from the uniform vector, which
    always overlaps the dominant nonnegative eigenvector.
    """
    n = M.shape[0]
    top = float(M.max(initial=0.0))
    if top == 0.0:
        return 0.0, np.ones(n), 0, 0.0
    shift = 1e-3 * top
    Ms = M + shift * np.eye(n)
    v = np.ones(n)
    rho = 0.0
    residual = np.inf
    for it in range(1, max_iter + 1):
        w = Ms @ v
        v = w / w.max()
        mv = M @ v
        rho = float(v @ mv) / float(v @ v)
        residual = float(np.abs(mv - rho * v).max())
        if residual <= pf_tol:
            return rho, v, it, residual
    raise NoConvergence(max_iter, residual)


def perron_eigen(M, pf_tol: float = PF_TOL, max_iter: int = PF_MAX_ITER) -> PerronResult:
    """Dominant eigenvalue and strictly positive eigenvectors of an
    irreducible nonnegative matrix.

    ``pf_tol`` bounds ``max |M v - rho v|`` with ``v`` at max-norm 1, so it
    is an absolute tolerance on the scale of the matrix entries; rescale it
    for matrices far from unit scale.
    """
    M = _nonneg_square(M)
    if not is_irreducible(M):
        raise NotIrreducible("matrix graph is not strongly connected")
    rho_r, right, it_r, res_r = _power(M, pf_tol, max_iter)
    rho_l, left, it_l, res_l = _power(M.T, pf_tol, max_iter)
    return PerronResult(
        rho=rho_r,
        right=right,
        left=left,
        iterations=it_r + it_l,
        residual=max(res_r, res_l),
        rho_left=rho_l,
    )


@dataclass(frozen=True)
class ConeSolution:
    """Nonnegative coefficients fitting a target in a column cone.

    ``interior`` is true when every coefficient stays above 1e-10 after
    max-normalisation; a zero target yields the boundary solution y = 0.
    """

    y: np.ndarray
    residual: float
    interior: bool


def solve_nonneg(C, target, cone_tol: float = CONE_TOL) -> ConeSolution:
    """Solve ``C y = target`` for ``y >= 0`` (nonnegative least squares).

    Succeeds when the residual is within ``cone_tol * ||target||``;
    otherwise the target lies outside the cone of the columns and
    :class:`NotInCone` is raised.
    """
    C = np.asarray(C, dtype=float)
    target = np.asarray(target, dtype=float).reshape(-1)
    if C.ndim != 2 or C.shape[0] != target.shape[0]:
        raise ValueError(
            f"matrix shape {C.shape} does not match target length {target.shape[0]}"
        )
    if (target < 0).any():
        raise ValueError("target must be nonnegative")
    norm = float(np.linalg.norm(target))
    if norm == 0.0:
        return ConeSolution(y=np.zeros(C.shape[1]), residual=0.0, interior=False)
    y, rnorm = nnls(C, target, maxiter=max(30, 10 * C.shape[1]))
    threshold = cone_tol * norm
    if rnorm > threshold:
        raise NotInCone(float(rnorm), threshold)
    ymax = float(y.max(initial=0.0))
    interior = ymax > 0 and float(y.min()) / ymax > 1e-10
    return ConeSolution(y=y, residual=float(rnorm), interior=interior)


@dataclass(frozen=True)
class ConstructedEquilibrium:
    """Price constructed by one of the existence solvers, plus evidence.

    ``scales`` are the per-consumer demand scales realised at ``p``;
    ``budget`` is the per-consumer bundle-value vector used by the spectral
    construction (None for the unit-value route); ``report`` is the
    substitution check of the clearing conditions.
    """

    p: np.ndarray
    strictly_positive: bool
    scales: np.ndarray
    report: EquilibriumReport
    budget: np.ndarray | None = None


def _strictly_positive(p: np.ndarray, tol_pos: float) -> bool:
    top = float(p.max(initial=0.0))
    return top > 0 and float(p.min()) / top > max(tol_pos, 1e-10)


def spectral_equilibrium(
    C,
    B1,
    pf_tol: float = PF_TOL,
    cone_tol: float = CONE_TOL,
    tol: float = DEFAULT_TOL,
    tol_pos: float = DEFAULT_TOL_POS,
) -> ConstructedEquilibrium:
    """Equilibrium price for the economy ``(C, C @ B1)`` with ``B1``
    irreducible.

    The consumer scales are the row sums ``y_k`` of ``B1``.  Row-normalising
    ``B1`` by them gives a stochastic matrix whose left dominant vector,
    divided by the scales, is the budget vector ``d``: pricing the goods so
    that bundle ``k`` costs ``d_k`` clears every market exactly.  The price
    solves ``C.T p = d`` and exists (nonnegatively) iff ``d`` lies in the
    cone of the rows of ``C``; otherwise :class:`NoPositivePrice` is
    raised.  The returned price is rescaled to max-norm 1.
    """
    C = np.asarray(C, dtype=float)
    B1 = _nonneg_square(B1, "B1")
    if C.ndim != 2 or C.shape[1] != B1.shape[0]:
        raise ValueError(f"C shape {C.shape} does not match B1 shape {B1.shape}")
    if (C < 0).any():
        raise ValueError("C must be nonnegative")
    if (C.sum(axis=0) <= 0).any():
        raise ValueError("every column of C must have a positive sum")
    if not is_irreducible(B1):
        raise NotIrreducible("B1 graph is not strongly connected")

    y = B1.sum(axis=1)
    stochastic = B1 / y[:, None]
    pr = perron_eigen(stochastic, pf_tol=pf_tol)
    d = pr.left / y
    d = d / d.max()

    try:
        sol = solve_nonneg(C.T, d, cone_tol=cone_tol)
    except NotInCone as e:
        raise NoPositivePrice(
            f"budget vector is outside the row cone of C: {e}"
        ) from e

    p = sol.y
    p = p / p.max()
    report = check_equilibrium(ExchangeEconomy(C, C @ B1), p, tol=tol, tol_pos=tol_pos)
    if not report.is_equilibrium:
        raise NoPositivePrice(
            f"constructed price fails substitution on goods {report.violated_set} "
            f"(max violation {report.max_violation():.3e})"
        )
    return ConstructedEquilibrium(
        p=p,
        strictly_positive=_strictly_positive(p, tol_pos),
        scales=y,
        report=report,
        budget=d,
    )


def unit_value_equilibrium(
    C,
    B1,
    psi,
    tol: float = DEFAULT_TOL,
    cone_tol: float = CONE_TOL,
    tol_pos: float = DEFAULT_TOL_POS,
) -> ConstructedEquilibrium:
    """Equilibrium price for ``(C, C @ B1)`` with unit bundle values.

    Requires the column sums of ``B1`` to reproduce the supply ``psi``
    through ``C`` (verified, not assumed; :class:`PreconditionFailed`
    otherwise).  The price solves ``<C_i, p> = 1`` for every consumer; a
    boundary solution (some zero prices) is returned with
    ``strictly_positive=False``.
    """
    C = np.asarray(C, dtype=float)
    B1 = _nonneg_square(B1, "B1")
    psi = np.asarray(psi, dtype=float).reshape(-1)
    if C.ndim != 2 or C.shape[1] != B1.shape[0] or psi.shape[0] != C.shape[0]:
        raise ValueError(
            f"inconsistent shapes: C {C.shape}, B1 {B1.shape}, psi {psi.shape}"
        )
    if (C.sum(axis=0) <= 0).any():
        raise ValueError("every column of C must have a positive sum")

    y_bar = B1.sum(axis=0)
    gap = np.abs(C @ y_bar - psi) / np.maximum(1.0, np.abs(psi))
    if gap.max(initial=0.0) > tol:
        raise PreconditionFailed(
            "supply-balance",
            f"column sums of B1 miss the supply through C by {gap.max():.3e}",
        )

    try:
        sol = solve_nonneg(C.T, np.ones(C.shape[1]), cone_tol=cone_tol)
    except NotInCone as e:
        raise NoPositivePrice(
            f"the all-ones budget is outside the row cone of C: {e}"
        ) from e

    p = sol.y
    report = check_equilibrium(ExchangeEconomy(C, C @ B1), p, tol=tol, tol_pos=tol_pos)
    if not report.is_equilibrium:
        raise NoPositivePrice(
            f"constructed price fails substitution on goods {report.violated_set}; "
            "psi is inconsistent with the economy's supply"
        )
    return ConstructedEquilibrium(
        p=p,
        strictly_positive=_strictly_positive(p, tol_pos),
        scales=y_bar,
        report=report,
        budget=None,
    )
