"""National model: accounts, aggregation, agent construction, the
constructive solve, and the value-form clearing test."""

import numpy as np
import pytest

from demandgap import (
    AggregationMap,
    BlockMismatch,
    ExchangeEconomy,
    IOAccounts,
    NotAnEquilibrium,
    NotInCone,
    RhoNotOne,
    ZeroDemandValue,
    ZeroDenominator,
    aggregate,
    aggregate_accounts,
    build_exchange_from_iot,
    check_aggregation_agreement,
    check_value_equilibrium,
    demand_vector,
    excess_demand,
    solve_national_equilibrium,
    supply_vector,
    synthesize_property,
)
from demandgap.structure import RepresentationParts
from demandgap.fixtures import (
    random_consistent_accounts,
    random_equilibrium,
    toy_accounts,
)


def certified_accounts(seed: int, m: int, trade_scale: float = 0.2):
    """Accounts engineered so the constructive solve certifies: balanced
    trade and coefficients rescaled to put the production spectral radius
    at one under the guaranteed seed scales."""
    rng = np.random.default_rng(seed)
    A = rng.uniform(0.05, 1.0, (m, m))
    A = A / A.sum(axis=1, keepdims=True) * 0.4
    pi = rng.uniform(0.3, 1.0, m)
    scaled = A * (1.0 + pi)[None, :] / pi[:, None]
    A = A / np.abs(np.linalg.eigvals(scaled)).max()
    x = np.linalg.solve(np.eye(m) - A, rng.uniform(5.0, 10.0, m))
    gross = x - A @ x
    e = gross * trade_scale
    imp = e.copy()
    cf = x - A @ x - e + imp
    return IOAccounts.from_physical(A, x, np.ones(m), cf, e, imp, pi)


class TestIOAccounts:
    def test_validation(self):
        with pytest.raises(ValueError):
            IOAccounts(X=[[1.0, -1.0], [0.0, 1.0]], Xout=[1, 1], Cf=[1, 1],
                       E=[0, 0], Imp=[0, 0], pi=[1, 1])
        with pytest.raises(ValueError):
            IOAccounts(X=np.ones((2, 2)), Xout=[1, 1], Cf=[1, 1],
                       E=[0, 0], Imp=[0, 0], pi=[1.5, 1.0])

    def test_scalar_pi_broadcast(self):
        acc = IOAccounts(X=np.ones((3, 3)), Xout=np.ones(3), Cf=np.ones(3),
                         E=np.ones(3), Imp=np.ones(3), pi=[0.5])
        np.testing.assert_array_equal(acc.pi, [0.5, 0.5, 0.5])

    def test_from_physical_and_back(self):
        rng = np.random.default_rng(0)
        m = 3
        A = rng.uniform(0.05, 0.25, (m, m))
        x = rng.uniform(10, 20, m)
        p = rng.uniform(0.5, 2.0, m)
        acc = IOAccounts.from_physical(A, x, p, cf=np.ones(m), e=np.ones(m),
                                       imp=np.ones(m), pi=np.ones(m))
        np.testing.assert_allclose(acc.Xout, p * x)
        np.testing.assert_allclose(acc.X, p[:, None] * A * x[None, :])
        np.testing.assert_allclose(acc.coefficients(), p[:, None] * A / p[None, :] * 1.0, rtol=1e-12)

    def test_balance_residual_on_consistent_accounts(self):
        acc, p, x = random_consistent_accounts(1, 5)
        np.testing.assert_allclose(
            acc.balance_residual(), np.zeros(5), atol=1e-9 * acc.Xout.max()
        )


class TestAggregation:
    def test_block_sum_vector(self):
        mapping = AggregationMap(((0, 1), (2,)))
        np.testing.assert_array_equal(mapping.apply([1.0, 2.0, 3.0]), [3.0, 3.0])

    def test_identity_map(self):
        mapping = AggregationMap.identity(3)
        v = np.array([1.0, 2.0, 3.0])
        np.testing.assert_array_equal(mapping.apply(v), v)

    def test_partition_validation(self):
        with pytest.raises(BlockMismatch):
            AggregationMap(((0, 1), (1, 2)))
        with pytest.raises(BlockMismatch):
            AggregationMap(((0,), (2,)))

    def test_totals_conserved(self):
        # up to summation-order roundoff (float addition is not associative)
        rng = np.random.default_rng(2)
        v = rng.uniform(0, 10, 7)
        mapping = AggregationMap(((0, 3), (1, 2, 6), (4, 5)))
        assert mapping.apply(v).sum() == pytest.approx(v.sum(), rel=1e-14)

    def test_aggregate_economy(self):
        econ, p, parts = random_equilibrium(3, n=4, l=3, support=4)
        mapping = AggregationMap(((0, 1), (2, 3)))
        small = aggregate(econ, mapping)
        assert small.n == 2 and small.l == 3
        np.testing.assert_allclose(small.total_supply().sum(), econ.total_supply().sum())

    def test_aggregate_accounts_weighted_pi(self):
        acc = toy_accounts(pi=(1.0, 0.5))
        merged = aggregate_accounts(acc, AggregationMap(((0, 1),)))
        assert merged.m == 1
        np.testing.assert_allclose(merged.Xout, [200.0])
        np.testing.assert_allclose(merged.X, [[70.0]])
        assert merged.pi[0] == pytest.approx(0.75)  # output-weighted


class TestAggregationAgreement:
    def test_identity_aggregation_agrees(self):
        econ, p, parts = random_equilibrium(4, n=4, l=3, support=4)
        mapping = AggregationMap.identity(4)
        assert check_aggregation_agreement(econ, p, mapping, p)

    def test_full_aggregation_exact_economy(self):
        # equality everywhere, so the single aggregated inequality is tight
        econ, p, parts = random_equilibrium(5, n=4, l=3, support=4)
        mapping = AggregationMap((tuple(range(4)),))
        assert check_aggregation_agreement(econ, p, mapping, np.array([1.0]))

    def test_full_aggregation_slack_economy_disagrees(self):
        # total demand < total supply, but the aggregated model always clears
        econ, p, parts = random_equilibrium(6, n=4, l=3, support=2, slack=True)
        mapping = AggregationMap((tuple(range(4)),))
        assert not check_aggregation_agreement(econ, p, mapping, np.array([1.0]))

    def test_block_constant_prices_agree(self):
        # synthesize an equilibrium whose price is constant on each block:
        # the block prices then clear the aggregated economy the same way
        rng = np.random.default_rng(7)
        blocks = ((0, 1), (2, 3), (4,))
        n, l = 5, 4
        C = rng.uniform(0.2, 1.2, (n, l))
        p = np.empty(n)
        levels = rng.uniform(0.5, 1.5, len(blocks))
        for j, b in enumerate(blocks):
            p[list(b)] = levels[j]
        parts = RepresentationParts(
            y=rng.uniform(0.5, 1.5, l),
            a=np.full((n, l), 1.0 / l),
            d0=np.zeros((n, l)),
            I=tuple(range(n)),
        )
        B = synthesize_property(C, p, parts)
        econ = ExchangeEconomy(C, B)
        assert check_aggregation_agreement(econ, p, AggregationMap(blocks), levels)

    def test_requires_equilibrium(self):
        econ, p, parts = random_equilibrium(8, n=4, l=3, support=4)
        bad = np.asarray(p) * 0 + np.array([1.0, 10.0, 0.1, 0.1])
        with pytest.raises(NotAnEquilibrium):
            check_aggregation_agreement(econ, bad, AggregationMap.identity(4), bad)


class TestBuildExchange:
    def test_agent_layout(self):
        acc, p, x = random_consistent_accounts(9, 3, pi=np.ones(3))
        econ = build_exchange_from_iot(acc, p, x)
        assert econ.n == 3 and econ.l == 7
        np.testing.assert_allclose(np.diag(econ.B[:, :3]), x)
        A = acc.coefficients()  # value-form coefficients at unit prices
        phys_A = acc.X / (p[:, None] * x[None, :])
        np.testing.assert_allclose(econ.C[:, :3], phys_A * x[None, :], rtol=1e-12)
        np.testing.assert_allclose(np.diag(econ.B[:, 3:6]), phys_A @ x, rtol=1e-12)
        np.testing.assert_allclose(econ.B[:, 6] * p, acc.Imp, rtol=1e-12)
        np.testing.assert_allclose(econ.C[:, 6] * p, acc.E, rtol=1e-12)

    def test_full_tax_households_live_on_resource_income(self):
        acc, p, x = random_consistent_accounts(10, 4, pi=np.ones(4))
        econ = build_exchange_from_iot(acc, p, x)
        phys_A = acc.X / (p[:, None] * x[None, :])
        resource_income = p * (phys_A @ x)
        weights = resource_income / (p @ x)
        cf = acc.Cf / p
        np.testing.assert_allclose(econ.C[:, 4:8], cf[:, None] * weights[None, :], rtol=1e-10)

    def test_excess_demand_matches_value_gap(self):
        for seed in range(5):
            acc, p, x = random_consistent_accounts(seed, 4, pi=np.ones(4))
            econ = build_exchange_from_iot(acc, p, x)
            z = excess_demand(econ, p)
            gap = demand_vector(acc) - supply_vector(acc)
            np.testing.assert_allclose(p * z, gap, atol=1e-9 * np.abs(gap).max())

    def test_toy_accounts_cross_module(self):
        acc = toy_accounts()
        p = np.ones(2)
        econ = build_exchange_from_iot(acc, p, acc.Xout)
        z = excess_demand(econ, p)
        np.testing.assert_allclose(p * z, [13.75, -13.75], atol=1e-9)

    def test_vacuous_production_raises_on_evaluation(self):
        # single industry with no inputs: its demand column is zero
        acc = IOAccounts(X=[[0.0]], Xout=[1.0], Cf=[1.0], E=[0.0], Imp=[0.0], pi=[1.0])
        econ = build_exchange_from_iot(acc, np.array([1.0]), np.array([1.0]))
        with pytest.raises(ZeroDemandValue):
            excess_demand(econ, np.array([1.0]))

    def test_single_industry_scalar_reduction(self):
        # no inputs, no trade, untaxed: household demand is exactly final
        # consumption and the market clears with equality
        acc = IOAccounts(X=[[0.0]], Xout=[1.0], Cf=[1.0], E=[0.0], Imp=[0.0], pi=[0.0])
        D, S = demand_vector(acc), supply_vector(acc)
        np.testing.assert_allclose(D, S, atol=1e-15)
        report = check_value_equilibrium(acc)
        assert report.is_equilibrium
        np.testing.assert_allclose(report.residual, [0.0], atol=1e-15)

    def test_zero_consumption_value_rejected(self):
        acc = IOAccounts(X=[[0.5]], Xout=[1.0], Cf=[0.0], E=[0.0], Imp=[0.0], pi=[1.0])
        with pytest.raises(ZeroDenominator):
            build_exchange_from_iot(acc, np.array([1.0]), np.array([1.0]))

    def test_imports_without_exports_rejected(self):
        acc = IOAccounts(X=[[0.5]], Xout=[1.0], Cf=[1.0], E=[0.0], Imp=[0.5], pi=[1.0])
        with pytest.raises(ZeroDenominator):
            build_exchange_from_iot(acc, np.array([1.0]), np.array([1.0]))


class TestValueEquilibrium:
    def test_toy_accounts_violation_pattern(self):
        report = check_value_equilibrium(toy_accounts())
        np.testing.assert_allclose(report.residual, [13.75, -13.75])
        assert report.violated == (0,)
        assert not report.is_equilibrium

    def test_balanced_autarky_clears(self):
        # one industry, all value taxed back into production, no trade
        a, x = 0.3, 10.0
        acc = IOAccounts(
            X=[[a * x]], Xout=[x], Cf=[(1 - a) * x], E=[0.0], Imp=[0.0], pi=[1.0]
        )
        report = check_value_equilibrium(acc)
        np.testing.assert_allclose(report.residual, [0.0], atol=1e-12)
        assert report.is_equilibrium

    def test_homogeneity(self):
        acc = toy_accounts(pi=(0.8, 0.6))
        base = check_value_equilibrium(acc)
        for alpha in (1e-3, 7.0, 1e4):
            scaled = check_value_equilibrium(acc.scaled(alpha))
            np.testing.assert_allclose(scaled.residual, alpha * base.residual, rtol=1e-12)
            assert scaled.violated == base.violated

    def test_missing_consumption_rejected(self):
        acc = IOAccounts(X=[[1.0]], Xout=[2.0], Cf=[0.0], E=[1.0], Imp=[1.0], pi=[1.0])
        with pytest.raises(ZeroDenominator):
            check_value_equilibrium(acc)


class TestNationalEquilibrium:
    def test_seed_identity_consistent_accounts(self):
        for seed in range(10):
            acc, _, _ = random_consistent_accounts(seed, int(3 + seed % 5))
            C_big = np.column_stack([acc.X, acc.Cf, acc.E])
            seed_y = np.concatenate([1.0 + acc.pi, [1.0, 1.0]])
            target = acc.Xout + acc.Imp + acc.X @ acc.pi
            gap = np.abs(C_big @ seed_y - target) / np.maximum(1.0, target)
            assert gap.max() <= 1e-12

    def test_certified_solution(self):
        acc = certified_accounts(5, 4)
        sol = solve_national_equilibrium(acc, strict=False)
        assert sol.certified
        assert abs(sol.rho - 1.0) <= 1e-6
        assert (sol.p > 0).all()
        assert sol.J == ()
        assert sol.diagnostics["seed_used"]
        # scales solve the supply system exactly
        C_big = np.column_stack([acc.X, acc.Cf, acc.E])
        target = acc.Xout + acc.Imp + acc.X @ acc.pi
        np.testing.assert_allclose(C_big @ sol.y, target, rtol=1e-9)

    def test_price_solves_value_equations(self):
        acc = certified_accounts(6, 5)
        sol = solve_national_equilibrium(acc, strict=False)
        A = acc.coefficients()
        lhs = sol.y[:5] * (A.T @ sol.p)
        np.testing.assert_allclose(lhs, acc.pi * sol.p, atol=1e-8)

    def test_uncertified_raises_in_strict_mode(self):
        acc = toy_accounts()
        with pytest.raises(RhoNotOne) as exc:
            solve_national_equilibrium(acc)
        assert exc.value.solution is not None
        assert exc.value.rho == pytest.approx(exc.value.solution.rho)

    def test_vacuous_production_reports_zero_rho(self):
        acc = IOAccounts(X=[[0.0]], Xout=[1.0], Cf=[1.0], E=[0.0], Imp=[0.0], pi=[1.0])
        with pytest.raises(RhoNotOne) as exc:
            solve_national_equilibrium(acc)
        assert exc.value.rho == 0.0

    def test_unreachable_supply_not_in_cone(self):
        acc = IOAccounts(
            X=[[1.0, 1.0], [1.0, 1.0]],
            Xout=[1000.0, 1.0],
            Cf=[1.0, 1.0],
            E=[1.0, 1.0],
            Imp=[1.0, 1.0],
            pi=[1.0, 1.0],
        )
        with pytest.raises(NotInCone):
            solve_national_equilibrium(acc, strict=False)

    def test_zero_pi_rejected(self):
        acc = toy_accounts(pi=(0.0, 1.0))
        with pytest.raises(ZeroDenominator):
            solve_national_equilibrium(acc, strict=False)
