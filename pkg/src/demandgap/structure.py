"""Structure of the endowments that make a given price an equilibrium.

Fixing the demand matrix ``C`` and a price vector ``p`` whose support is
``I``, every property matrix that clears the market decomposes into three
parts: a rank-one "proportional to total supply" term, a combination of
zero-value transfer directions supported on ``I`` (the clearing basis), and
transfers supported off the price support.  This module synthesizes
endowments from such parts, decomposes given endowments back, builds the
equivalent redistribution that makes the equilibrium degenerate (prices off
the support become arbitrary), and computes the real-money-value indicator
that degeneracy erodes.

Index sets are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptySupport,
    NegativeEndowment,
    NoMoneySupply,
    NotAnEquilibrium,
    RankDeficiency,
    SupportMismatch,
)
from .exchange import (
    DEFAULT_TOL,
    DEFAULT_TOL_POS,
    ExchangeEconomy,
    as_price,
    check_equilibrium,
    demand_scales,
)

DEFAULT_RANK_TOL = 1e-8

__all__ = [
    "RepresentationParts",
    "ClearingBasis",
    "DegenerateTransform",
    "clearing_basis",
    "synthesize_property",
    "decompose_property",
    "is_equivalent",
    "degenerate_transform",
    "degeneracy_multiplicity",
    "real_money_value",
]


def _index_set(I, n: int) -> tuple[int, ...]:
    idx = tuple(sorted(int(k) for k in I))
    if len(set(idx)) != len(idx):
        raise ValueError(f"index set has duplicates: {I}")
    if idx and (idx[0] < 0 or idx[-1] >= n):
        raise ValueError(f"index set {I} out of range for n = {n}")
    return idx


@dataclass(frozen=True)
class RepresentationParts:
    """Ingredients of the endowment representation.

    ``y``: demand scales solving ``sum_i y_i C_i = psi_bar``.
    ``a``: expansion coefficients of the on-support transfers in the
    clearing basis, shape ``(|I|, l)``, each row summing to 1 across
    consumers.
    ``d0``: off-support transfers, shape ``(n, l)``, identically zero on the
    rows in ``I``; columns sum to zero in the ``exact`` case and to a
    nonnegative vector in the ``partial`` (deficit-carrying) case.
    """

    y: np.ndarray
    a: np.ndarray
    d0: np.ndarray
    I: tuple[int, ...]
    case: str = "exact"

    def __post_init__(self):
        object.__setattr__(self, "y", np.asarray(self.y, dtype=float).reshape(-1))
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float))
        object.__setattr__(self, "d0", np.asarray(self.d0, dtype=float))
        object.__setattr__(self, "I", _index_set(self.I, self.d0.shape[0]))
        if self.case not in ("exact", "partial"):
            raise ValueError(f"case must be 'exact' or 'partial', got {self.case!r}")

    def validate(self, tol: float = DEFAULT_TOL, a_tol: float = 1e-12) -> None:
        """Raise ValueError when an invariant is broken."""
        n, l = self.d0.shape
        if self.y.shape != (l,) or self.a.shape != (len(self.I), l):
            raise ValueError(
                f"inconsistent shapes: y {self.y.shape}, a {self.a.shape}, "
                f"d0 {self.d0.shape}, |I| = {len(self.I)}"
            )
        if (self.y < 0).any():
            raise ValueError("y must be nonnegative")
        col_sums = self.a.sum(axis=1)
        if np.abs(col_sums - 1.0).max(initial=0.0) > a_tol:
            raise ValueError("each clearing-basis coefficient row must sum to 1")
        if self.I and np.abs(self.d0[list(self.I), :]).max(initial=0.0) > 0:
            raise ValueError("d0 must vanish on the support rows")
        row_sums = self.d0.sum(axis=1)
        scale = np.maximum(1.0, np.abs(self.d0).max(initial=0.0))
        if self.case == "exact":
            if np.abs(row_sums).max(initial=0.0) > tol * scale:
                raise ValueError("d0 columns must sum to zero in the exact case")
        elif (row_sums < -tol * scale).any():
            raise ValueError("d0 column sums must be nonnegative in the partial case")


@dataclass(frozen=True)
class ClearingBasis:
    """Zero-value transfer directions on the price support.

    Column ``j`` is ``g_s = e_s - (p_s / sum_{t in I} p_t) * e_I`` for the
    j-th support index ``s``.  The columns have zero value at any price
    agreeing on ``I``, sum to the zero vector, and span a space of dimension
    ``|I| - 1``.
    """

    G: np.ndarray
    I: tuple[int, ...]

    @property
    def rank(self) -> int:
        return max(len(self.I) - 1, 0)


def clearing_basis(p, I, rank_tol: float = DEFAULT_RANK_TOL) -> ClearingBasis:
    """Build the clearing basis for price vector ``p`` on support ``I``."""
    price = as_price(p)
    q = price.normalized()
    n = q.shape[0]
    idx = _index_set(I, n)
    if not idx:
        raise EmptySupport("clearing basis needs a nonempty support")
    sub = q[list(idx)]
    if (sub <= 0).any():
        raise SupportMismatch(f"prices must be strictly positive on I = {idx}")
    total = sub.sum()
    G = np.zeros((n, len(idx)))
    for j, s in enumerate(idx):
        G[list(idx), j] = -q[s] / total
        G[s, j] += 1.0
    sv = np.linalg.svd(G, compute_uv=False)
    numerical_rank = int((sv > rank_tol * sv[0]).sum()) if sv.size and sv[0] > 0 else 0
    if numerical_rank != max(len(idx) - 1, 0):
        raise RankDeficiency(
            f"clearing basis rank {numerical_rank}, expected {len(idx) - 1}"
        )
    return ClearingBasis(G=G, I=idx)


def synthesize_property(
    C,
    p,
    parts: RepresentationParts,
    tol: float = DEFAULT_TOL,
    tol_pos: float = DEFAULT_TOL_POS,
) -> np.ndarray:
    """Build the property matrix realised by ``parts`` at price ``p``.

    The result clears the market at ``p`` by construction: every column has
    value ``y_i <C_i, p>`` and the columns sum to ``sum_i y_i C_i`` plus the
    declared off-support slack.  Negative entries mean the chosen
    coefficients are infeasible; the function raises instead of projecting,
    because projection would silently destroy the clearing property.
    Magnitudes below the negativity tolerance are snapped to zero.
    """
    C = np.asarray(C, dtype=float)
    parts.validate(tol=tol)
    n, l = C.shape
    if parts.d0.shape != (n, l):
        raise ValueError(f"d0 shape {parts.d0.shape} does not match C {C.shape}")
    price = as_price(p, tol_pos)
    q = price.normalized()
    idx = list(parts.I)
    off = [k for k in range(n) if k not in parts.I]
    if (q[idx] <= tol_pos).any() or (off and (q[off] > tol_pos).any()):
        raise SupportMismatch(
            f"price support must be exactly I = {parts.I} (tol_pos = {tol_pos})"
        )

    psi_bar = C @ parts.y
    if (psi_bar[idx] <= 0).any():
        raise ValueError("sum_i y_i C_i must be strictly positive on the support")
    demand_value = C.T @ q
    if (demand_value <= tol_pos).any():
        raise ValueError("every consumer must demand something on the support")

    basis = clearing_basis(q, parts.I)
    shares = parts.y * demand_value / float(psi_bar @ q)
    B = np.outer(psi_bar, shares) + basis.G @ parts.a + parts.d0

    neg_tol = 1e-12 * max(1.0, float(np.abs(B).max()))
    if B.min() < -neg_tol:
        k, i = np.unravel_index(np.argmin(B), B.shape)
        raise NegativeEndowment(int(k), int(i), float(B[k, i]))
    B[np.abs(B) < neg_tol] = 0.0
    return B


def decompose_property(
    econ: ExchangeEconomy,
    p,
    I,
    case: str = "exact",
    tol: float = DEFAULT_TOL,
    tol_pos: float = DEFAULT_TOL_POS,
) -> tuple[RepresentationParts, float]:
    """Split the economy's endowments into representation parts at ``p``.

    ``case='exact'`` requires demand to equal supply in every good;
    ``case='partial'`` allows strict deficits off the support.  Returns the
    parts and the relative reconstruction residual of the round trip
    through :func:`synthesize_property` (which is zero up to roundoff).

    The clearing-basis expansion is gauged by the uniform ``1/l``
    symmetrisation, so repeated decompositions are deterministic.
    """
    price = as_price(p, tol_pos)
    q = price.normalized()
    idx = _index_set(I, econ.n)
    off = [k for k in range(econ.n) if k not in idx]
    if not idx:
        raise EmptySupport("decomposition needs a nonempty support")
    if (q[list(idx)] <= tol_pos).any() or (off and (q[off] > tol_pos).any()):
        raise SupportMismatch(f"price support must be exactly I = {idx}")

    report = check_equilibrium(econ, price, tol=tol, tol_pos=tol_pos)
    if report.violated_set:
        raise NotAnEquilibrium(f"demand exceeds supply on goods {report.violated_set}")
    if case == "exact":
        if report.strict_set:
            raise NotAnEquilibrium(
                f"strict deficits on goods {report.strict_set}; use case='partial'"
            )
    else:
        deficits_on_support = set(report.strict_set) & set(idx)
        if deficits_on_support:
            raise NotAnEquilibrium(
                f"deficits on the price support {sorted(deficits_on_support)}"
            )

    y = demand_scales(econ, price, tol_pos)
    psi_bar = econ.C @ y
    satisfied_value = float(psi_bar @ q)
    if satisfied_value <= tol_pos:
        raise NotAnEquilibrium("the economy has no valued supply at this price")
    demand_value = econ.C.T @ q
    shares = y * demand_value / satisfied_value
    D = econ.B - np.outer(psi_bar, shares)

    d1 = np.zeros_like(D)
    d1[list(idx), :] = D[list(idx), :]
    d0 = D - d1

    basis = clearing_basis(q, idx)
    if len(idx) == 1:
        if np.abs(d1).max(initial=0.0) > tol * max(1.0, float(np.abs(econ.B).max())):
            raise RankDeficiency(
                "single-good support left a nonzero on-support transfer"
            )
        h = np.zeros((1, econ.l))
    else:
        h = np.linalg.pinv(basis.G) @ d1
    a = h + 1.0 / econ.l

    parts = RepresentationParts(y=y, a=a, d0=d0, I=idx, case=case)
    B_rt = synthesize_property(econ.C, price, parts, tol=tol, tol_pos=tol_pos)
    residual = float(
        np.abs(B_rt - econ.B).max() / max(1.0, float(np.abs(econ.B).max()))
    )
    return parts, residual


def is_equivalent(B, B_bar, p, tol: float = DEFAULT_TOL) -> bool:
    """True when the two property distributions have the same per-consumer
    value at price ``p`` (an equivalent redistribution)."""
    B = np.asarray(B, dtype=float)
    B_bar = np.asarray(B_bar, dtype=float)
    if B.shape != B_bar.shape:
        from .errors import DimensionMismatch

        raise DimensionMismatch(f"shapes differ: {B.shape} vs {B_bar.shape}")
    q = as_price(p).normalized()
    base = B.T @ q
    gap = np.abs((B_bar - B).T @ q)
    return bool((gap <= tol * (1.0 + np.abs(base))).all())


@dataclass(frozen=True)
class DegenerateTransform:
    """Equivalent redistribution that degenerates the equilibrium.

    After the transfer, endowments off the price support equal the scaled
    demands ``y_i C_i`` there, so any choice of off-support prices leaves
    the equilibrium (and the demand scales) intact.  The family of
    equilibrium prices through ``p`` then has dimension at least
    ``multiplicity_lower_bound = n - |I|``.
    """

    transfer: np.ndarray
    B_bar: np.ndarray
    multiplicity_lower_bound: int
    I: tuple[int, ...]
    mode: str
    y: np.ndarray


def degenerate_transform(
    econ: ExchangeEconomy,
    p,
    I,
    mode: str = "exact",
    tol: float = DEFAULT_TOL,
    tol_pos: float = DEFAULT_TOL_POS,
) -> DegenerateTransform:
    """Construct the degenerating redistribution at equilibrium price ``p``.

    ``mode='exact'`` preserves total supply (column sums of the transfer are
    zero); ``mode='partial'`` starts from a deficit-carrying equilibrium and
    shrinks off-support supply down to demand (column sums nonpositive).
    """
    if mode not in ("exact", "partial"):
        raise ValueError(f"mode must be 'exact' or 'partial', got {mode!r}")
    price = as_price(p, tol_pos)
    q = price.normalized()
    idx = _index_set(I, econ.n)
    if not idx:
        raise EmptySupport("degenerate transform needs a nonempty support")
    off = [k for k in range(econ.n) if k not in idx]
    if (q[list(idx)] <= tol_pos).any() or (off and (q[off] > tol_pos).any()):
        raise SupportMismatch(f"price support must be exactly I = {idx}")

    report = check_equilibrium(econ, price, tol=tol, tol_pos=tol_pos)
    if report.violated_set:
        raise NotAnEquilibrium(f"demand exceeds supply on goods {report.violated_set}")
    if mode == "exact" and report.strict_set:
        raise NotAnEquilibrium(
            f"strict deficits on goods {report.strict_set}; use mode='partial'"
        )
    if set(report.strict_set) & set(idx):
        raise NotAnEquilibrium("deficits on the price support")

    y = demand_scales(econ, price, tol_pos)
    B_bar = econ.B.copy()
    if off:
        B_bar[off, :] = econ.C[off, :] * y[None, :]
    transfer = B_bar - econ.B

    # Column sums of the transfer must vanish (exact) or be nonpositive
    # (partial); anything else means the clearing check above was wrong.
    net = transfer.sum(axis=1)
    scale = tol * max(1.0, float(np.abs(econ.B).max()))
    bad = np.abs(net).max(initial=0.0) > scale if mode == "exact" else net.max(initial=0.0) > scale
    if bad:
        raise RankDeficiency(
            f"degenerating transfer violates its column-sum law (mode={mode})"
        )
    return DegenerateTransform(
        transfer=transfer,
        B_bar=B_bar,
        multiplicity_lower_bound=econ.n - len(idx),
        I=idx,
        mode=mode,
        y=y,
    )


def degeneracy_multiplicity(
    B_bar,
    C,
    y,
    I=None,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> int:
    """Dimension of the price family fixed by the residual columns.

    Computes ``n - rank([b_i - y_i C_i])`` with the rank read off the
    singular values at ``rank_tol`` relative to the largest one.  When the
    support ``I`` is supplied the result is checked against the guaranteed
    lower bound ``n - |I|``.
    """
    B_bar = np.asarray(B_bar, dtype=float)
    C = np.asarray(C, dtype=float)
    y = np.asarray(y, dtype=float).reshape(-1)
    residual = B_bar - C * y[None, :]
    sv = np.linalg.svd(residual, compute_uv=False)
    rank = int((sv > rank_tol * sv[0]).sum()) if sv.size and sv[0] > 0 else 0
    multiplicity = B_bar.shape[0] - rank
    if I is not None:
        bound = B_bar.shape[0] - len(_index_set(I, B_bar.shape[0]))
        if multiplicity < bound:
            raise RankDeficiency(
                f"multiplicity {multiplicity} below the guaranteed bound {bound}; "
                "rank tolerance likely misjudged"
            )
    return multiplicity


def real_money_value(p, psi) -> float:
    """Value of the non-money supply per unit of money supply.

    ``p`` is normalised to money price 1 first.  Under a degenerate
    equilibrium family this is set-valued: sample the off-support prices to
    trace the range.  (The display defining the indicator is ambiguous about
    taking a reciprocal; this returns the ratio as shown, and callers can
    invert it.)
    """
    p = np.asarray(p, dtype=float).reshape(-1)
    psi = np.asarray(psi, dtype=float).reshape(-1)
    if psi[0] <= 0:
        raise NoMoneySupply(f"money supply {psi[0]!r} must be positive")
    if p[0] <= 0:
        raise ValueError("money price must be positive to normalise")
    q = p / p[0]
    return float(q[1:] @ psi[1:] / psi[0])
