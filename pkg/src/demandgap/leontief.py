"""National economy as an aggregated exchange model.

A country with ``m`` pure industries is described in value form by the
intermediate-flow matrix ``X`` (``X[k, i]`` = value of good k used by
industry i), gross output values, final consumption (household consumption
plus gross capital formation), exports, imports, and the taxation shares
``pi`` that channel each industry's newly produced value back into
production-side demand.

From these accounts one can build the underlying exchange economy with
``2m + 1`` agents (industries, industry households, one foreign-trade
agent), test the value-form clearing inequalities industry by industry, and
run the constructive national equilibrium solve: find nonnegative demand
scales reproducing supply, certify that the scaled production matrix has
spectral radius one, and read the prices off its dominant eigenvector.

The canonical internal representation is value form, because national
tables are published in value terms; physical-form inputs are converted on
ingestion at declared prices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BlockMismatch,
    NoConvergence,
    NotAnEquilibrium,
    NotInCone,
    RhoNotOne,
    ZeroDenominator,
)
from .exchange import (
    DEFAULT_TOL,
    DEFAULT_TOL_POS,
    ExchangeEconomy,
    check_equilibrium,
    demand_scales,
)
from .solvers import CONE_TOL, PF_MAX_ITER, PF_TOL, _power, is_irreducible, perron_eigen, solve_nonneg

RHO_TOL = 1e-6

__all__ = [
    "RHO_TOL",
    "IOAccounts",
    "AggregationMap",
    "NationalEquilibrium",
    "ValueBalanceReport",
    "aggregate",
    "aggregate_accounts",
    "check_aggregation_agreement",
    "build_exchange_from_iot",
    "solve_national_equilibrium",
    "check_value_equilibrium",
]


def _vector(v, m: int, name: str) -> np.ndarray:
    arr = np.asarray(v, dtype=float).reshape(-1)
    if arr.shape[0] != m:
        raise ValueError(f"{name} must have length {m}, got {arr.shape[0]}")
    if (arr < 0).any():
        raise ValueError(f"{name} must be nonnegative")
    return arr


@dataclass(frozen=True)
class IOAccounts:
    """Value-form input-output accounts for ``m`` industries.

    ``X[k, i]`` is the value of good k absorbed by industry i; ``Xout`` the
    gross output values; ``Cf`` final consumption (households plus capital
    formation); ``E`` exports; ``Imp`` imports; ``pi`` the taxation shares
    in [0, 1].  All value entries are nonnegative.
    """

    X: np.ndarray
    Xout: np.ndarray
    Cf: np.ndarray
    E: np.ndarray
    Imp: np.ndarray
    pi: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        if X.ndim != 2 or X.shape[0] != X.shape[1]:
            raise ValueError(f"X must be square, got shape {X.shape}")
        if (X < 0).any():
            raise ValueError("X must be nonnegative")
        m = X.shape[0]
        Xout = _vector(self.Xout, m, "Xout")
        Cf = _vector(self.Cf, m, "Cf")
        E = _vector(self.E, m, "E")
        Imp = _vector(self.Imp, m, "Imp")
        pi = np.asarray(self.pi, dtype=float).reshape(-1)
        if pi.shape == (1,) and m > 1:
            pi = np.full(m, float(pi[0]))
        if pi.shape[0] != m:
            raise ValueError(f"pi must have length {m}, got {pi.shape[0]}")
        if (pi < 0).any() or (pi > 1).any():
            raise ValueError("pi entries must lie in [0, 1]")
        for name, arr in [
            ("X", X), ("Xout", Xout), ("Cf", Cf), ("E", E), ("Imp", Imp), ("pi", pi),
        ]:
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_physical(cls, A, x, p, cf, e, imp, pi) -> "IOAccounts":
        """Convert technical coefficients and physical quantities to value
        form at the declared prices."""
        A = np.asarray(A, dtype=float)
        x = np.asarray(x, dtype=float).reshape(-1)
        p = np.asarray(p, dtype=float).reshape(-1)
        return cls(
            X=p[:, None] * A * x[None, :],
            Xout=p * x,
            Cf=p * np.asarray(cf, dtype=float),
            E=p * np.asarray(e, dtype=float),
            Imp=p * np.asarray(imp, dtype=float),
            pi=pi,
        )

    @property
    def m(self) -> int:
        return self.X.shape[0]

    def input_value(self) -> np.ndarray:
        """Per-industry value of intermediate inputs (column sums of X)."""
        return self.X.sum(axis=0)

    def gross_value_added(self) -> float:
        return float(self.Xout.sum() - self.X.sum())

    def coefficients(self) -> np.ndarray:
        """Technical coefficients at unit prices: X[:, i] / Xout[i] (zero
        columns for industries with no output)."""
        out = np.zeros_like(self.X)
        live = self.Xout > 0
        out[:, live] = self.X[:, live] / self.Xout[live]
        return out

    def balance_residual(self) -> np.ndarray:
        """Interindustry balance gap: Xout - (X @ 1 + Cf + E - Imp)."""
        return self.Xout - (self.X.sum(axis=1) + self.Cf + self.E - self.Imp)

    def scaled(self, alpha: float) -> "IOAccounts":
        return IOAccounts(
            X=alpha * self.X,
            Xout=alpha * self.Xout,
            Cf=alpha * self.Cf,
            E=alpha * self.E,
            Imp=alpha * self.Imp,
            pi=self.pi,
        )


@dataclass(frozen=True)
class AggregationMap:
    """Partition of ``range(n)`` into ordered blocks; maps vectors and row
    systems to their block sums."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(int(k) for k in b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise BlockMismatch("empty aggregation block")
            if seen & set(b):
                raise BlockMismatch("aggregation blocks overlap")
            seen |= set(b)
        if seen != set(range(len(seen))) or not seen:
            raise BlockMismatch("blocks must partition 0..n-1 exactly")

    @classmethod
    def identity(cls, n: int) -> "AggregationMap":
        return cls(tuple((k,) for k in range(n)))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def m(self) -> int:
        return len(self.blocks)

    def apply(self, v) -> np.ndarray:
        """Block sums of a vector or of the rows of a matrix."""
        arr = np.asarray(v, dtype=float)
        if arr.shape[0] != self.n:
            raise BlockMismatch(
                f"data has {arr.shape[0]} rows, map expects {self.n}"
            )
        return np.stack([arr[list(b)].sum(axis=0) for b in self.blocks])


def aggregate(obj, mapping: AggregationMap):
    """Aggregate a vector, matrix (by rows), or exchange economy.

    Aggregation conserves totals exactly: the sum of the image equals the
    sum of the preimage.
    """
    if isinstance(obj, ExchangeEconomy):
        return ExchangeEconomy(mapping.apply(obj.C), mapping.apply(obj.B))
    return mapping.apply(obj)


def aggregate_accounts(acc: IOAccounts, mapping: AggregationMap, pi=None) -> IOAccounts:
    """Block-sum value accounts.  ``pi`` for the merged industries defaults
    to the gross-output-weighted average of the original shares."""
    if mapping.n != acc.m:
        raise BlockMismatch(f"map covers {mapping.n} industries, table has {acc.m}")
    X_u = mapping.apply(mapping.apply(acc.X).T).T
    Xout_u = mapping.apply(acc.Xout)
    if pi is None:
        pi_u = np.empty(mapping.m)
        for j, b in enumerate(mapping.blocks):
            w = acc.Xout[list(b)]
            pi_u[j] = float(acc.pi[list(b)] @ w / w.sum()) if w.sum() > 0 else float(
                acc.pi[list(b)].mean()
            )
    else:
        pi_u = np.asarray(pi, dtype=float)
    return IOAccounts(
        X=X_u,
        Xout=Xout_u,
        Cf=mapping.apply(acc.Cf),
        E=mapping.apply(acc.E),
        Imp=mapping.apply(acc.Imp),
        pi=pi_u,
    )


def check_aggregation_agreement(
    econ: ExchangeEconomy,
    p0,
    mapping: AggregationMap,
    p_u,
    tol: float = DEFAULT_TOL,
    tol_pos: float = DEFAULT_TOL_POS,
) -> bool:
    """True when the aggregated clearing inequalities at ``p_u`` hold and
    their equality pattern matches the aggregation of the disaggregated
    equilibrium at ``p0``."""
    report = check_equilibrium(econ, p0, tol=tol, tol_pos=tol_pos)
    if not report.is_equilibrium:
        raise NotAnEquilibrium(
            f"p0 is not an equilibrium (violations on {report.violated_set})"
        )
    y = demand_scales(econ, p0, tol_pos)
    C_u = mapping.apply(econ.C)
    B_u = mapping.apply(econ.B)
    psi_u = B_u.sum(axis=1)
    residual_u = C_u @ y - psi_u
    band = tol * np.maximum(1.0, psi_u)
    pattern_disagg = np.abs(residual_u) <= band

    report_u = check_equilibrium(
        ExchangeEconomy(C_u, B_u), p_u, tol=tol, tol_pos=tol_pos
    )
    if not report_u.is_equilibrium:
        return False
    pattern_agg = np.zeros(mapping.m, dtype=bool)
    pattern_agg[list(report_u.equality_set)] = True
    return bool((pattern_disagg == pattern_agg).all())


def build_exchange_from_iot(acc: IOAccounts, p, x) -> ExchangeEconomy:
    """Underlying exchange economy with ``2m + 1`` agents.

    Conversion to physical units uses the declared prices ``p`` (> 0) and
    gross outputs ``x``.  Agent layout: industries 0..m-1 supply their own
    output and demand intermediate inputs; households m..2m-1 supply the
    intermediate use of their industry's good and demand the final-
    consumption pattern, weighted by resource income plus the untaxed share
    of new value; the last agent is foreign trade (supplies imports,
    demands exports).

    Degenerate agents (zero output, no inputs, or a vacuous trade agent)
    produce zero demand columns; price evaluations on such economies raise
    ``ZeroDemandValue`` when they touch them.  The interindustry balance is
    reported by :meth:`IOAccounts.balance_residual`, not enforced here.
    """
    m = acc.m
    p = np.asarray(p, dtype=float).reshape(-1)
    x = np.asarray(x, dtype=float).reshape(-1)
    if p.shape[0] != m or x.shape[0] != m:
        raise ValueError(f"p and x must have length {m}")
    if (p <= 0).any():
        raise ValueError("conversion prices must be strictly positive")
    if (x < 0).any():
        raise ValueError("gross outputs must be nonnegative")

    A = np.zeros((m, m))
    live = x > 0
    A[:, live] = acc.X[:, live] / (p[:, None] * x[None, live])
    cf = acc.Cf / p
    e = acc.E / p
    imp = acc.Imp / p

    cf_value = float(acc.Cf.sum())
    if cf_value <= 0:
        raise ZeroDenominator("final consumption value")
    e_value = float(p @ e)
    if e_value <= 0 and (imp > 0).any():
        raise ZeroDenominator("export value (imports present)")

    new_value = x * (p - A.T @ p)
    resource = A @ x
    resource_income = p * resource
    total_value = float(resource_income.sum() + new_value.sum())
    if total_value <= 0:
        raise ZeroDenominator("gross output value")
    weights = ((1.0 - acc.pi) * new_value + resource_income) / total_value
    if (weights < 0).any():
        bad = int(np.argmin(weights))
        raise ValueError(
            f"industry {bad} has negative untaxed new value; cannot form "
            "household demand weights"
        )

    C = np.zeros((m, 2 * m + 1))
    B = np.zeros((m, 2 * m + 1))
    C[:, :m] = A * x[None, :]
    B[:, :m] = np.diag(x)
    C[:, m:2 * m] = cf[:, None] * weights[None, :]
    B[:, m:2 * m] = np.diag(resource)
    C[:, 2 * m] = e
    B[:, 2 * m] = imp
    return ExchangeEconomy(C, B)


@dataclass(frozen=True)
class ValueBalanceReport:
    """Per-industry residuals of the value-form clearing inequalities.

    ``residual`` is demand-side minus supply-side, so positive entries are
    violations; the economy is in the aggregated equilibrium state iff all
    residuals are below the tolerance band.
    """

    residual: np.ndarray
    violated: tuple[int, ...]
    is_equilibrium: bool
    tol: float


def _value_demand_terms(acc: IOAccounts) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three demand-side terms of the value-form inequality.

    Industries with zero input value contribute nothing to the first term
    (their share is defined as zero).  A vacuous trade account (no exports
    and no imports) contributes a zero third term; exports with zero total
    against positive imports are a hard error.
    """
    col = acc.input_value()
    live = col > 0
    ratio = np.zeros(acc.m)
    ratio[live] = acc.pi[live] * acc.Xout[live] / col[live]
    production = acc.X @ ratio

    cf_total = float(acc.Cf.sum())
    if cf_total <= 0:
        raise ZeroDenominator("total final consumption")
    household_income = float(
        ((1.0 - acc.pi) * acc.Xout).sum() + (acc.X @ acc.pi).sum()
    )
    household = acc.Cf * (household_income / cf_total)

    e_total = float(acc.E.sum())
    imp_total = float(acc.Imp.sum())
    if e_total <= 0:
        if imp_total > 0:
            raise ZeroDenominator("total exports (imports present)")
        trade = np.zeros(acc.m)
    else:
        trade = imp_total / e_total * acc.E
    return production, household, trade


def check_value_equilibrium(acc: IOAccounts, tol: float = DEFAULT_TOL) -> ValueBalanceReport:
    """Evaluate the value-form clearing inequalities industry by industry.

    The residual is the left side (production demand + household demand +
    export demand) minus the right side (gross output + imports + taxed
    intermediate use), which equals the demand deficit ``D_k - S_k`` of the
    recession diagnostics.  Verdict: equilibrium iff every residual is at
    most ``tol * max(1, S_k)``.
    """
    production, household, trade = _value_demand_terms(acc)
    lhs = production + household + trade
    rhs = acc.Xout + acc.Imp + acc.X @ acc.pi
    residual = lhs - rhs
    band = tol * np.maximum(1.0, acc.Xout + acc.Imp)
    violated = tuple(int(k) for k in np.flatnonzero(residual > band))
    return ValueBalanceReport(
        residual=residual,
        violated=violated,
        is_equilibrium=not violated,
        tol=tol,
    )


@dataclass(frozen=True)
class NationalEquilibrium:
    """Result of the constructive national equilibrium solve.

    ``y`` has ``m + 2`` components (industry scales, household scale, trade
    scale); ``p`` is the certified-or-candidate price vector at max-norm 1;
    ``I``/``J`` split the industries into equality and strict-slack sets.
    ``certified`` is true only when the spectral radius is one within
    tolerance, the price solves the value equations, the household/trade
    closure identities hold at ``p``, and prices vanish on ``J``.
    """

    y: np.ndarray
    p: np.ndarray
    rho: float
    I: tuple[int, ...]
    J: tuple[int, ...]
    certified: bool
    diagnostics: dict = field(compare=False)


def solve_national_equilibrium(
    acc: IOAccounts,
    rho_tol: float = RHO_TOL,
    cone_tol: float = CONE_TOL,
    tol: float = DEFAULT_TOL,
    pf_tol: float = PF_TOL,
    strict: bool = True,
) -> NationalEquilibrium:
    """Run the constructive equilibrium procedure on value accounts.

    Steps: (a) find nonnegative scales ``y`` reproducing supply from the
    demand columns ``[X | Cf | E]`` — the guaranteed seed ``(1 + pi, 1, 1)``
    is preferred whenever it fits, otherwise the nonnegative least-squares
    solution is used; (b) form the scaled production matrix
    ``A(y)[i, j] = a_ij y_j / pi_i`` and compute its spectral radius;
    (c) read the candidate prices off the dominant eigenvector of the value
    system; (d) check the closure identities for the household and trade
    scales and the positivity side conditions.

    The solve never rescales ``y`` to force the spectral radius to one: it
    certifies or it reports.  With ``strict=True`` a spectral radius away
    from one raises :class:`RhoNotOne` (the exception carries the partial
    solution); ``strict=False`` returns the uncertified solution for
    inspection.
    """
    m = acc.m
    if float(acc.Cf.sum()) <= 0:
        raise ZeroDenominator("total final consumption")
    if float(acc.E.sum()) <= 0 and float(acc.Imp.sum()) > 0:
        raise ZeroDenominator("total exports (imports present)")
    if (acc.pi <= 0).any():
        raise ZeroDenominator("pi (taxation shares must be positive here)")

    A = acc.coefficients()
    C_big = np.column_stack([acc.X, acc.Cf, acc.E])
    target = acc.Xout + acc.Imp + acc.X @ acc.pi

    seed = np.concatenate([1.0 + acc.pi, [1.0, 1.0]])
    seed_residual = float(np.linalg.norm(C_big @ seed - target))
    sol = solve_nonneg(C_big, target, cone_tol=cone_tol)
    seed_used = seed_residual <= max(
        cone_tol * float(np.linalg.norm(target)), sol.residual * (1.0 + 1e-9)
    )
    y = seed if seed_used else sol.y

    residual = C_big @ y - target
    band = max(tol, cone_tol) * np.maximum(1.0, target)
    over = residual > band
    if over.any():
        raise NotInCone(float(residual[over].max()), float(band[over].max()))
    I = tuple(int(k) for k in np.flatnonzero(np.abs(residual) <= band))
    J = tuple(int(k) for k in np.flatnonzero(residual < -band))

    A_y = A * y[None, :m] / acc.pi[:, None]
    reducible = not is_irreducible(A_y)
    if reducible:
        rho = float(np.abs(np.linalg.eigvals(A_y)).max()) if m > 1 else float(A_y[0, 0])
    else:
        rho = perron_eigen(A_y, pf_tol=pf_tol).rho

    # Price system: diag(y/pi) A^T p = p, same spectral radius as A(y).
    M = (y[:m] / acc.pi)[:, None] * A.T
    try:
        rho_m, p, _, p_residual = _power(M, pf_tol, PF_MAX_ITER)
    except NoConvergence:
        vals, vecs = np.linalg.eig(M)
        k = int(np.argmax(np.abs(vals)))
        rho_m = float(np.abs(vals[k]))
        v = np.real(vecs[:, k])
        if v.sum() < 0:
            v = -v
        p = np.abs(v)
        p_residual = float(np.abs(M @ p - rho_m * p).max())
    p = p / p.max() if p.max() > 0 else p

    diag: dict = {
        "rho_gap": abs(rho - 1.0),
        "rho_price_system": rho_m,
        "price_eigen_residual": p_residual,
        "value_equation_residual": float(np.abs(M @ p - p).max()),
        "seed_used": seed_used,
        "scales_residual": float(np.abs(residual).max()),
        "reducible": reducible,
    }

    cf_value = float(acc.Cf @ p)
    e_value = float(acc.E @ p)
    imp_value = float(acc.Imp @ p)
    input_value_at_p = A.T @ p
    diag["input_value_min"] = float(input_value_at_p.min(initial=np.inf))

    closure_tol = max(rho_tol, tol)
    if cf_value > DEFAULT_TOL_POS:
        household_scale = float(
            (((1.0 - acc.pi) * acc.Xout) @ p + p @ (acc.X @ acc.pi)) / cf_value
        )
        diag["closure_household"] = abs(household_scale - y[m]) / max(1.0, abs(y[m]))
    else:
        diag["closure_household"] = np.inf
    if e_value > DEFAULT_TOL_POS:
        trade_scale = imp_value / e_value
        diag["closure_trade"] = abs(trade_scale - y[m + 1]) / max(1.0, abs(y[m + 1]))
    elif imp_value <= DEFAULT_TOL_POS and float(acc.E.sum() + acc.Imp.sum()) == 0.0:
        diag["closure_trade"] = 0.0  # vacuous trade agent
    else:
        diag["closure_trade"] = np.inf

    prices_vanish_on_J = bool(
        (p[list(J)] <= DEFAULT_TOL_POS * max(1.0, p.max())).all()
    ) if J else True
    positivity_ok = cf_value > DEFAULT_TOL_POS and (
        e_value > DEFAULT_TOL_POS or float(acc.E.sum() + acc.Imp.sum()) == 0.0
    )
    certified = (
        abs(rho - 1.0) <= rho_tol
        and diag["value_equation_residual"] <= max(pf_tol * 10, rho_tol)
        and diag["closure_household"] <= closure_tol
        and diag["closure_trade"] <= closure_tol
        and positivity_ok
        and prices_vanish_on_J
    )
    diag["positivity_ok"] = positivity_ok
    diag["prices_vanish_on_J"] = prices_vanish_on_J

    result = NationalEquilibrium(
        y=y, p=p, rho=rho, I=I, J=J, certified=certified, diagnostics=diag
    )
    if strict and abs(rho - 1.0) > rho_tol:
        raise RhoNotOne(rho, solution=result)
    return result
