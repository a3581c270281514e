"""Normalized table parsing, serialization, and config plumbing."""

import numpy as np
import pytest

from demandgap import NegativeValue, SchemaError, parse_niot, serialize_niot
from demandgap.niot import NiotTable, RunConfig, parse_blocks, parse_pi
from demandgap.registries import UKRAINE_38, WIOD_34, registry_for
from demandgap.fixtures import toy_accounts

HEADER = (
    "industry_index,industry_name,X_1,X_2,final_consumption,"
    "gcf_inventory,export,import,gross_output"
)


def write_toy(tmp_path, body=None, meta="country,year,currency\nTOY,2010,MUAH\n"):
    rows = body or [
        "1,Alpha,10,20,40,10,20,5,100",
        "2,Beta,30,10,25,5,10,15,100",
    ]
    table = tmp_path / "toy.csv"
    table.write_text(HEADER + "\n" + "\n".join(rows) + "\n")
    if meta is not None:
        (tmp_path / "meta.csv").write_text(meta)
    return table


class TestParse:
    def test_golden_fixture_matches_toy_accounts(self, tmp_path):
        table = parse_niot(write_toy(tmp_path))
        assert table.country == "TOY" and table.year == 2010
        assert table.currency == "MUAH"
        assert table.indices == (1, 2)
        acc = table.to_accounts(pi=1.0)
        ref = toy_accounts()
        np.testing.assert_array_equal(acc.X, ref.X)
        np.testing.assert_array_equal(acc.Cf, ref.Cf)
        np.testing.assert_array_equal(acc.Xout, ref.Xout)
        np.testing.assert_array_equal(acc.E, ref.E)
        np.testing.assert_array_equal(acc.Imp, ref.Imp)

    def test_final_consumption_is_sum_of_columns(self, tmp_path):
        table = parse_niot(write_toy(tmp_path))
        np.testing.assert_array_equal(table.fc, [40.0, 25.0])
        np.testing.assert_array_equal(table.gcf, [10.0, 5.0])
        np.testing.assert_array_equal(table.final_consumption, [50.0, 30.0])

    def test_empty_file(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        with pytest.raises(SchemaError):
            parse_niot(empty)

    def test_missing_file(self, tmp_path):
        with pytest.raises(SchemaError):
            parse_niot(tmp_path / "nope.csv")

    def test_header_mismatch(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(SchemaError, match="header"):
            parse_niot(bad)

    def test_wrong_row_count(self, tmp_path):
        table = write_toy(tmp_path, body=["1,Alpha,10,20,40,10,20,5,100"])
        with pytest.raises(SchemaError, match="industry rows"):
            parse_niot(table)

    def test_non_numeric_cell(self, tmp_path):
        table = write_toy(
            tmp_path,
            body=["1,Alpha,x,20,40,10,20,5,100", "2,Beta,30,10,25,5,10,15,100"],
        )
        with pytest.raises(SchemaError, match="not a number"):
            parse_niot(table)

    def test_negative_cell_fails_loudly(self, tmp_path):
        table = write_toy(
            tmp_path,
            body=["1,Alpha,10,20,40,-10,20,5,100", "2,Beta,30,10,25,5,10,15,100"],
        )
        with pytest.raises(NegativeValue):
            parse_niot(table)

    def test_negative_cell_clamped_on_request(self, tmp_path):
        table = write_toy(
            tmp_path,
            body=["1,Alpha,10,20,40,-10,20,5,100", "2,Beta,30,10,25,5,10,15,100"],
        )
        with pytest.warns(RuntimeWarning, match="clamping"):
            parsed = parse_niot(table, clamp_negative=True)
        assert parsed.gcf[0] == 0.0

    def test_missing_meta_uses_placeholders(self, tmp_path):
        table = parse_niot(write_toy(tmp_path, meta=None))
        assert table.country == "XXX" and table.year == 0


class TestRoundTrip:
    def test_lossless_values(self, tmp_path):
        rng = np.random.default_rng(0)
        m = 34
        table = NiotTable(
            country="GBR",
            year=2011,
            currency="million USD",
            indices=tuple(range(1, m + 1)),
            names=WIOD_34,
            X=rng.uniform(0, 1000, (m, m)),
            fc=rng.uniform(0, 500, m),
            gcf=rng.uniform(0, 100, m),
            E=rng.uniform(0, 300, m),
            Imp=rng.uniform(0, 300, m),
            Xout=rng.uniform(100, 5000, m),
        )
        path = tmp_path / "gbr.csv"
        serialize_niot(table, path)
        back = parse_niot(path)
        assert back.names == WIOD_34
        np.testing.assert_array_equal(back.X, table.X)  # repr round-trips exactly
        np.testing.assert_array_equal(back.Xout, table.Xout)
        np.testing.assert_array_equal(back.fc, table.fc)
        assert back.country == "GBR" and back.year == 2011

    def test_double_round_trip_is_identical(self, tmp_path):
        table = parse_niot(write_toy(tmp_path))
        p1 = tmp_path / "one.csv"
        serialize_niot(table, p1)
        text1 = p1.read_text()
        p2 = tmp_path / "two.csv"
        serialize_niot(parse_niot(p1), p2)
        assert p2.read_text() == text1


class TestRegistries:
    def test_sizes(self):
        assert len(WIOD_34) == 34
        assert len(UKRAINE_38) == 38

    def test_lookup(self):
        assert registry_for(34) is WIOD_34
        assert registry_for(38) is UKRAINE_38
        assert registry_for(10) is None

    def test_known_entries(self):
        assert WIOD_34[1] == "Mining and Quarrying"
        assert WIOD_34[14] == "Transport Equipment"
        assert UKRAINE_38[4] == "Extraction of crude petroleum and natural gas"
        assert UKRAINE_38[21].startswith("Trade; repair")


class TestConfig:
    def test_pi_scalar(self):
        assert parse_pi("0.5") == 0.5

    def test_pi_file(self, tmp_path):
        f = tmp_path / "pi.csv"
        f.write_text("0.5,0.25\n1.0\n")
        np.testing.assert_array_equal(parse_pi(str(f)), [0.5, 0.25, 1.0])

    def test_pi_missing_file(self):
        with pytest.raises(SchemaError):
            parse_pi("definitely/not/here.csv")

    def test_blocks_file(self, tmp_path):
        f = tmp_path / "map.txt"
        f.write_text("# merge the first two\n1,2\n3\n")
        assert parse_blocks(f) == ((0, 1), (2,))

    def test_config_validation(self):
        with pytest.raises(ValueError):
            RunConfig(pi=1.5)
        with pytest.raises(ValueError):
            RunConfig(tol=0.0)
        with pytest.raises(ValueError):
            RunConfig(format="xml")
        cfg = RunConfig(pi=np.array([0.5, 0.6]))
        np.testing.assert_array_equal(cfg.pi_for(2), [0.5, 0.6])
        with pytest.raises(ValueError):
            cfg.pi_for(3)
