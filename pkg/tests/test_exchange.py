"""Core exchange model: supply, demand scales, clearing checks,
certificates."""

import numpy as np
import pytest

from demandgap import (
    DimensionMismatch,
    ExchangeEconomy,
    PriceVector,
    ZeroDemandValue,
    check_equilibrium,
    demand_scales,
    excess_demand,
    total_supply,
    verify_certificate,
)
from demandgap.fixtures import economy_e1, economy_e2, random_equilibrium


class TestTotalSupply:
    def test_e1_endowments(self):
        B = np.array([[4 / 3, 2 / 3], [2 / 3, 1 / 3]])
        np.testing.assert_allclose(total_supply(B), [2.0, 1.0])

    def test_zero_matrix(self):
        np.testing.assert_array_equal(total_supply(np.zeros((3, 2))), np.zeros(3))

    def test_identity(self):
        np.testing.assert_array_equal(total_supply(np.eye(2)), [1.0, 1.0])


class TestDemandScales:
    def test_e1_unit_prices(self):
        econ, p = economy_e1()
        np.testing.assert_allclose(demand_scales(econ, p), [1.0, 1.0])

    def test_b_equals_c_gives_ones(self):
        rng = np.random.default_rng(0)
        C = rng.uniform(0.1, 2.0, (4, 3))
        econ = ExchangeEconomy(C, C)
        for _ in range(5):
            p = rng.uniform(0.1, 2.0, 4)
            np.testing.assert_allclose(demand_scales(econ, p), np.ones(3), atol=1e-12)

    @pytest.mark.parametrize("b21", [0.0, 0.3, 1.0])
    def test_e2_money_only_prices(self, b21):
        econ, p = economy_e2(b21)
        np.testing.assert_allclose(demand_scales(econ, p), [1.0, 1.0])

    def test_zero_demand_value_raises(self):
        C = np.array([[1.0, 0.0], [1.0, 1.0]])
        econ = ExchangeEconomy(C, np.ones((2, 2)))
        with pytest.raises(ZeroDemandValue) as exc:
            demand_scales(econ, np.array([1.0, 0.0]))
        assert exc.value.consumer == 1


class TestExcessDemand:
    def test_e1_clears(self):
        econ, p = economy_e1()
        np.testing.assert_allclose(excess_demand(econ, p), [0.0, 0.0], atol=1e-12)

    def test_b_equals_c_clears_everywhere(self):
        rng = np.random.default_rng(1)
        C = rng.uniform(0.1, 2.0, (5, 4))
        econ = ExchangeEconomy(C, C)
        p = rng.uniform(0.1, 2.0, 5)
        np.testing.assert_allclose(excess_demand(econ, p), np.zeros(5), atol=1e-12)

    def test_e2_full_money_endowment(self):
        econ, p = economy_e2(1.0)
        np.testing.assert_allclose(excess_demand(econ, p), [0.0, 0.0], atol=1e-12)

    def test_walras_identity(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            n, l = rng.integers(2, 7), rng.integers(2, 7)
            econ = ExchangeEconomy(
                rng.uniform(0.1, 2.0, (n, l)), rng.uniform(0.0, 2.0, (n, l))
            )
            p = rng.uniform(0.1, 2.0, n)
            z = excess_demand(econ, p)
            q = PriceVector(p).normalized()
            scale = max(1.0, float(np.abs(z) @ q))
            assert abs(float(z @ q)) <= 1e-9 * scale

    def test_scale_invariance(self):
        rng = np.random.default_rng(3)
        econ = ExchangeEconomy(rng.uniform(0.1, 2.0, (4, 3)), rng.uniform(0.0, 2.0, (4, 3)))
        p = rng.uniform(0.1, 2.0, 4)
        z = excess_demand(econ, p)
        for alpha in (1e-6, 0.5, 3.0, 1e7):
            z_scaled = excess_demand(econ, alpha * p)
            np.testing.assert_allclose(z_scaled, z, rtol=1e-12, atol=1e-12)


class TestCheckEquilibrium:
    def test_e1_unit_prices(self):
        econ, p = economy_e1()
        report = check_equilibrium(econ, p)
        assert report.is_equilibrium
        assert report.equality_set == (0, 1)
        assert report.strict_set == ()

    def test_e2_degenerate_endowment(self):
        econ, p = economy_e2(1.0)
        report = check_equilibrium(econ, p)
        assert report.is_equilibrium
        assert report.equality_set == (0, 1)

    def test_e1_wrong_price_violates_money_good(self):
        econ, _ = economy_e1()
        report = check_equilibrium(econ, np.array([1.0, 10.0]))
        # direct substitution: y = (8/11, 4), demand = (52/11, 8/11)
        np.testing.assert_allclose(report.residual, [30 / 11, -3 / 11])
        assert not report.is_equilibrium
        assert report.violated_set == (0,)
        assert report.strict_set == (1,)
        assert not report.zero_price_on_deficit  # good 1 is priced yet in deficit

    def test_full_degeneracy_baseline(self):
        rng = np.random.default_rng(4)
        C = rng.uniform(0.1, 2.0, (5, 3))
        econ = ExchangeEconomy(C, C)
        report = check_equilibrium(econ, rng.uniform(0.1, 2.0, 5))
        assert report.is_equilibrium
        assert report.equality_set == tuple(range(5))

    def test_deficit_goods_carry_zero_price(self):
        # degenerate economies built with deficits off the price support
        for seed in range(20):
            econ, p, parts = random_equilibrium(seed, n=5, l=4, support=3, slack=True)
            report = check_equilibrium(econ, p)
            assert report.is_equilibrium
            assert set(report.strict_set) <= set(range(5)) - set(parts.I)
            assert report.zero_price_on_deficit

    def test_zero_supply_warns(self):
        C = np.ones((2, 2))
        B = np.array([[1.0, 1.0], [0.0, 0.0]])
        with pytest.warns(RuntimeWarning, match="zero total supply"):
            check_equilibrium(ExchangeEconomy(C, B), np.array([1.0, 0.0]))


class TestVerifyCertificate:
    def test_e1_certificate(self):
        econ, p = economy_e1()
        result = verify_certificate(econ, p, y=[1.0, 1.0], psi_bar=[2.0, 1.0])
        assert result.ok
        assert result.failed == ()

    def test_degenerate_zero_certificate_rejected(self):
        econ, p = economy_e1()
        result = verify_certificate(econ, p, y=[0.0, 0.0], psi_bar=[0.0, 0.0])
        assert not result.ok
        assert "nonzero" in result.failed

    def test_e2_money_price_certificate(self):
        econ, p = economy_e2(1.0)
        result = verify_certificate(econ, p, y=[1.0, 1.0], psi_bar=[2.0, 1.0])
        assert result.ok

    def test_reports_failing_clause(self):
        econ, p = economy_e1()
        result = verify_certificate(econ, p, y=[1.0, 2.0], psi_bar=[2.0, 1.0])
        assert not result.ok
        assert "cone" in result.failed

    def test_psi_bar_above_supply_rejected(self):
        econ, p = economy_e1()
        result = verify_certificate(econ, p, y=[2.0, 2.0], psi_bar=[4.0, 2.0])
        assert not result.ok
        assert "bounded" in result.failed

    def test_dimension_mismatch(self):
        econ, p = economy_e1()
        with pytest.raises(DimensionMismatch):
            verify_certificate(econ, p, y=[1.0], psi_bar=[2.0, 1.0])


class TestEconomyValidation:
    def test_negative_entries_rejected(self):
        with pytest.raises(ValueError):
            ExchangeEconomy(np.array([[1.0], [-0.1]]), np.ones((2, 1)))

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            ExchangeEconomy(np.ones((2, 2)), np.ones((3, 2)))

    def test_full_support_mode(self):
        C = np.ones((2, 2))
        B = np.array([[1.0, 1.0], [0.0, 0.0]])
        with pytest.raises(ValueError):
            ExchangeEconomy(C, B, full_support=True)

    def test_price_vector_validation(self):
        with pytest.raises(ValueError):
            PriceVector(np.array([0.0, 0.0]))
        with pytest.raises(ValueError):
            PriceVector(np.array([1.0, -1.0]))
        assert PriceVector(np.array([2.0, 1.0, 0.0])).support == (0, 1)
        assert PriceVector(np.array([0.0, 3.0])).support == (1,)
