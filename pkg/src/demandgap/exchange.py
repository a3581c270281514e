"""Exchange economy state and market-clearing tests.

The model: ``l`` consumers trade ``n`` goods.  Consumer ``i`` owns the
endowment column ``b_i`` of the property matrix ``B`` (physical units) and
wants a bundle proportional to the demand column ``C_i`` of the demand
matrix ``C``.  Good 0 is money by convention.  At prices ``p`` the consumer
sells the endowment and buys ``y_i * C_i`` where the demand scale is

    y_i = <b_i, p> / <C_i, p>,

so each consumer exactly spends the endowment value.  Markets clear when
aggregate demand ``sum_i C_i y_i`` does not exceed total supply
``psi = sum_i b_i`` in every good, with equality on the goods that carry a
positive price.

Everything here is a pure function over immutable value objects; it is safe
to evaluate in parallel over prices or economies.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, ZeroDemandValue

DEFAULT_TOL = 1e-9
DEFAULT_TOL_POS = 1e-12

__all__ = [
    "DEFAULT_TOL",
    "DEFAULT_TOL_POS",
    "ExchangeEconomy",
    "PriceVector",
    "EquilibriumReport",
    "CertificateReport",
    "total_supply",
    "demand_scales",
    "excess_demand",
    "check_equilibrium",
    "verify_certificate",
]


def _as_matrix(a, name: str) -> np.ndarray:
    m = np.asarray(a, dtype=float)
    if m.ndim != 2:
        raise DimensionMismatch(f"{name} must be a 2-d array, got shape {m.shape}")
    return m


def total_supply(B) -> np.ndarray:
    """Total supply ``psi_k = sum_i B[k, i]`` (sum over consumers).

    Zero rows are allowed here; the equilibrium checks flag them.
    """
    return _as_matrix(B, "B").sum(axis=1)


@dataclass(frozen=True)
class ExchangeEconomy:
    """Demand matrix ``C`` and property matrix ``B``, both ``n x l``.

    Columns index consumers, rows index goods; good 0 is money.  Entries
    must be nonnegative.  Zero demand columns are tolerated at construction
    (industrial constructions can produce them) but any price evaluation
    that touches them raises :class:`ZeroDemandValue`.
    """

    C: np.ndarray
    B: np.ndarray
    full_support: bool = field(default=False, compare=False)

    def __post_init__(self):
        C = _as_matrix(self.C, "C")
        B = _as_matrix(self.B, "B")
        if C.shape != B.shape:
            raise DimensionMismatch(
                f"C and B must have the same shape, got {C.shape} vs {B.shape}"
            )
        if (C < 0).any() or (B < 0).any():
            raise ValueError("C and B must be nonnegative")
        C.setflags(write=False)
        B.setflags(write=False)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "B", B)
        if self.full_support and (self.total_supply() <= 0).any():
            raise ValueError("full-support economy requires psi > 0 for every good")

    @property
    def n(self) -> int:
        return self.C.shape[0]

    @property
    def l(self) -> int:
        return self.C.shape[1]

    def total_supply(self) -> np.ndarray:
        return total_supply(self.B)

    def demand_support_ok(self, I) -> bool:
        """True when every consumer demands something inside the index set I."""
        idx = np.asarray(sorted(I), dtype=int)
        return bool((self.C[idx, :].sum(axis=0) > 0).all())


@dataclass(frozen=True)
class PriceVector:
    """Nonnegative price vector; component 0 is the money price.

    ``support`` is the set of strictly positive components, decided at
    ``tol_pos`` after normalising to unit money price when possible (unit
    max-norm otherwise).
    """

    p: np.ndarray
    tol_pos: float = DEFAULT_TOL_POS

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float).reshape(-1)
        if (p < 0).any():
            raise ValueError("prices must be nonnegative")
        if not (p > 0).any():
            raise ValueError("price vector must be nonzero")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    def normalized(self) -> np.ndarray:
        """Prices scaled to money price 1 (max-norm 1 when money is free)."""
        if self.p[0] > 0:
            return self.p / self.p[0]
        return self.p / self.p.max()

    @property
    def support(self) -> tuple[int, ...]:
        q = self.normalized()
        return tuple(int(k) for k in np.flatnonzero(q > self.tol_pos))


def as_price(p, tol_pos: float = DEFAULT_TOL_POS) -> PriceVector:
    """Coerce an array-like or PriceVector into a PriceVector."""
    if isinstance(p, PriceVector):
        return p
    return PriceVector(np.asarray(p, dtype=float), tol_pos=tol_pos)


@dataclass(frozen=True)
class EquilibriumReport:
    """Per-good clearing diagnosis at a price vector.

    ``equality_set`` holds goods where demand meets supply within tolerance,
    ``strict_set`` goods in strict deficit, ``violated_set`` goods where
    demand exceeds supply.  The three sets partition ``range(n)``.
    ``zero_price_on_deficit`` records whether every strict-deficit good
    carries a (numerically) zero price, the consistency law tying deficits
    to worthless goods.
    """

    demand: np.ndarray
    residual: np.ndarray
    equality_set: tuple[int, ...]
    strict_set: tuple[int, ...]
    violated_set: tuple[int, ...]
    is_equilibrium: bool
    zero_price_on_deficit: bool
    tol: float

    def max_violation(self) -> float:
        if not self.violated_set:
            return 0.0
        return float(self.residual[list(self.violated_set)].max())


def demand_scales(econ: ExchangeEconomy, p, tol_pos: float = DEFAULT_TOL_POS) -> np.ndarray:
    """Demand scales ``y_i = <b_i, p> / <C_i, p>`` for every consumer.

    Raises :class:`ZeroDemandValue` when some bundle value ``<C_i, p>`` is
    not positive, which signals a violated support precondition on the
    demand matrix.
    """
    price = as_price(p, tol_pos)
    q = price.normalized()
    if q.shape[0] != econ.n:
        raise DimensionMismatch(
            f"price length {q.shape[0]} != good count {econ.n}"
        )
    demand_value = econ.C.T @ q
    bad = np.flatnonzero(demand_value <= tol_pos)
    if bad.size:
        raise ZeroDemandValue(int(bad[0]), float(demand_value[bad[0]]))
    return (econ.B.T @ q) / demand_value


def excess_demand(econ: ExchangeEconomy, p, tol_pos: float = DEFAULT_TOL_POS) -> np.ndarray:
    """Aggregate demand minus total supply, per good (sign of the clearing
    violation; nonpositive everywhere at an equilibrium price)."""
    y = demand_scales(econ, p, tol_pos)
    return econ.C @ y - econ.total_supply()


def check_equilibrium(
    econ: ExchangeEconomy,
    p,
    tol: float = DEFAULT_TOL,
    tol_pos: float = DEFAULT_TOL_POS,
) -> EquilibriumReport:
    """Classify every good as cleared, in strict deficit, or violated.

    The equality comparison is relative: ``|residual_k| <= tol * max(1,
    psi_k)``.  ``is_equilibrium`` is true iff no good is violated.
    """
    price = as_price(p, tol_pos)
    psi = econ.total_supply()
    y = demand_scales(econ, price, tol_pos)
    demand = econ.C @ y
    residual = demand - psi

    if (psi == 0).any():
        zeros = np.flatnonzero(psi == 0)
        warnings.warn(
            f"goods with zero total supply: {zeros.tolist()}",
            RuntimeWarning,
            stacklevel=2,
        )

    band = tol * np.maximum(1.0, psi)
    equality = np.abs(residual) <= band
    deficit = residual < -band
    violated = residual > band

    q = price.normalized()
    strict = np.flatnonzero(deficit)
    zero_price_on_deficit = bool((q[strict] <= tol_pos).all()) if strict.size else True

    return EquilibriumReport(
        demand=demand,
        residual=residual,
        equality_set=tuple(int(k) for k in np.flatnonzero(equality)),
        strict_set=tuple(int(k) for k in strict),
        violated_set=tuple(int(k) for k in np.flatnonzero(violated)),
        is_equilibrium=not violated.any(),
        zero_price_on_deficit=zero_price_on_deficit,
        tol=tol,
    )


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of the equilibrium certificate check.

    ``ok`` summarises the verdict; ``failed`` names the violated clauses.
    ``diagnostics`` maps clause names to the measured discrepancies,
    including the supply-value identity ``<psi, p> == <psi_bar, p>``
    (evaluated against the satisfied supply ``psi_bar``; a literal reading
    against itself would be vacuous, so the check is reported explicitly).
    """

    ok: bool
    failed: tuple[str, ...]
    diagnostics: dict


def verify_certificate(
    econ: ExchangeEconomy,
    p,
    y,
    psi_bar,
    tol: float = DEFAULT_TOL,
    tol_pos: float = DEFAULT_TOL_POS,
) -> CertificateReport:
    """Check the certificate (y, psi_bar, p) for an equilibrium of ``econ``.

    Clauses checked, in order:

    * ``nonzero``:    y and psi_bar are nonnegative and nonzero;
    * ``cone``:       psi_bar == sum_i y_i C_i within tolerance;
    * ``bounded``:    psi_bar <= psi componentwise;
    * ``demand-value``: <C_i, p> > 0 for every consumer;
    * ``transfers``:  d_i = b_i - y_i <C_i,p>/<psi_bar,p> psi_bar has
      zero value per consumer and sums to psi - psi_bar;
    * ``supply-value``: <psi, p> == <psi_bar, p>.
    """
    y = np.asarray(y, dtype=float).reshape(-1)
    psi_bar = np.asarray(psi_bar, dtype=float).reshape(-1)
    price = as_price(p, tol_pos)
    q = price.normalized()
    if y.shape[0] != econ.l or psi_bar.shape[0] != econ.n or q.shape[0] != econ.n:
        raise DimensionMismatch(
            f"certificate dimensions (y: {y.shape[0]}, psi_bar: {psi_bar.shape[0]}, "
            f"p: {q.shape[0]}) do not match economy ({econ.n} goods, {econ.l} consumers)"
        )

    psi = econ.total_supply()
    failed: list[str] = []
    diag: dict = {}

    if (y < 0).any() or not (y > 0).any():
        failed.append("nonzero")
        diag["nonzero"] = "y must be nonnegative and nonzero"
    if (psi_bar < 0).any() or not (psi_bar > 0).any():
        if "nonzero" not in failed:
            failed.append("nonzero")
        diag["nonzero"] = "psi_bar must be nonnegative and nonzero"

    scale = np.maximum(1.0, np.abs(psi_bar))
    cone_gap = np.abs(econ.C @ y - psi_bar)
    diag["cone"] = float((cone_gap / scale).max()) if cone_gap.size else 0.0
    if diag["cone"] > tol:
        failed.append("cone")

    excess = psi_bar - psi
    diag["bounded"] = float(np.maximum(excess / np.maximum(1.0, psi), 0.0).max())
    if diag["bounded"] > tol:
        failed.append("bounded")

    demand_value = econ.C.T @ q
    diag["demand-value"] = float(demand_value.min())
    if (demand_value <= tol_pos).any():
        failed.append("demand-value")
        # The transfer clause below would divide by these values.
        return CertificateReport(False, tuple(failed), diag)

    psi_bar_value = float(psi_bar @ q)
    if psi_bar_value <= tol_pos:
        failed.append("transfers")
        diag["transfers"] = "psi_bar has zero value at p"
        return CertificateReport(False, tuple(failed), diag)

    shares = y * demand_value / psi_bar_value
    D = econ.B - np.outer(psi_bar, shares)
    value_gap = np.abs(D.T @ q) / np.maximum(1.0, np.abs(econ.B.T @ q))
    sum_gap = np.abs(D.sum(axis=1) - (psi - psi_bar)) / scale
    diag["transfers"] = float(max(value_gap.max(), sum_gap.max()))
    if diag["transfers"] > tol:
        failed.append("transfers")

    supply_value_gap = abs(float((psi - psi_bar) @ q)) / max(1.0, abs(float(psi @ q)))
    diag["supply-value"] = supply_value_gap
    if supply_value_gap > tol:
        failed.append("supply-value")

    return CertificateReport(not failed, tuple(failed), diag)
