"""National input-output table ingestion.

The normalized table is a CSV with the exact header

    industry_index,industry_name,X_1,...,X_m,final_consumption,gcf_inventory,export,import,gross_output

and one row per supplying industry k (``X_i`` is the value of good k used
by industry i).  Final consumption and gross capital formation / inventory
changes are kept as separate columns for auditability; the model consumes
their sum.  A ``meta.csv`` in the same directory carries
``country,year,currency``.

Upstream spreadsheets vary by vintage, so this module parses only the
normalized layout; converting a published workbook into it is a documented,
user-side step.  Totals are recomputed internally and never trusted from
the file.  Negative cells fail loudly unless clamping is explicitly
requested.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import NegativeValue, SchemaError
from .leontief import IOAccounts

__all__ = ["NiotTable", "RunConfig", "parse_niot", "serialize_niot", "parse_pi", "parse_blocks"]

_FIXED_COLUMNS = ("final_consumption", "gcf_inventory", "export", "import", "gross_output")


@dataclass(frozen=True)
class NiotTable:
    """Parsed national table in value units.

    ``indices`` are the declared industry indices from the file (the
    published numbering); ``fc`` and ``gcf`` stay separate, with
    ``final_consumption`` as their sum.
    """

    country: str
    year: int
    currency: str
    indices: tuple[int, ...]
    names: tuple[str, ...]
    X: np.ndarray
    fc: np.ndarray
    gcf: np.ndarray
    E: np.ndarray
    Imp: np.ndarray
    Xout: np.ndarray

    @property
    def m(self) -> int:
        return self.X.shape[0]

    @property
    def final_consumption(self) -> np.ndarray:
        return self.fc + self.gcf

    def to_accounts(self, pi=1.0) -> IOAccounts:
        """Value-form accounts with the taxation shares ``pi`` (scalar
        broadcast or per-industry vector)."""
        pi_arr = np.asarray(pi, dtype=float).reshape(-1)
        if pi_arr.shape[0] == 1:
            pi_arr = np.full(self.m, float(pi_arr[0]))
        return IOAccounts(
            X=self.X,
            Xout=self.Xout,
            Cf=self.final_consumption,
            E=self.E,
            Imp=self.Imp,
            pi=pi_arr,
        )


def _expected_header(m: int) -> list[str]:
    return (
        ["industry_index", "industry_name"]
        + [f"X_{i}" for i in range(1, m + 1)]
        + list(_FIXED_COLUMNS)
    )


def _parse_cell(text: str, row: int, col: str, clamp_negative: bool) -> float:
    try:
        value = float(text)
    except ValueError:
        raise SchemaError(row, col, f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise SchemaError(row, col, f"non-finite value {text!r}")
    if value < 0:
        if not clamp_negative:
            raise NegativeValue(row, col, value)
        warnings.warn(
            f"clamping negative cell at row {row}, column {col}: {value!r}",
            RuntimeWarning,
            stacklevel=3,
        )
        value = 0.0
    return value


def parse_niot(path, clamp_negative: bool = False) -> NiotTable:
    """Parse a normalized table CSV (and ``meta.csv`` beside it)."""
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as e:
        raise SchemaError(None, None, f"cannot read {path}: {e}") from e
    rows = [r for r in rows if r and any(cell.strip() for cell in r)]
    if not rows:
        raise SchemaError(None, None, "empty table file")

    header = [h.strip() for h in rows[0]]
    m = len(header) - 2 - len(_FIXED_COLUMNS)
    if m < 1 or header != _expected_header(m):
        raise SchemaError(0, None, f"header does not match the normalized schema: {header}")
    body = rows[1:]
    if len(body) != m:
        raise SchemaError(None, None, f"expected {m} industry rows, found {len(body)}")

    indices: list[int] = []
    names: list[str] = []
    X = np.zeros((m, m))
    fc = np.zeros(m)
    gcf = np.zeros(m)
    E = np.zeros(m)
    Imp = np.zeros(m)
    Xout = np.zeros(m)
    for k, row in enumerate(body, start=1):
        if len(row) != len(header):
            raise SchemaError(k, None, f"expected {len(header)} cells, found {len(row)}")
        try:
            indices.append(int(row[0]))
        except ValueError:
            raise SchemaError(k, "industry_index", f"not an integer: {row[0]!r}") from None
        names.append(row[1].strip())
        for i in range(m):
            X[k - 1, i] = _parse_cell(row[2 + i], k, f"X_{i + 1}", clamp_negative)
        tail = row[2 + m:]
        fc[k - 1] = _parse_cell(tail[0], k, "final_consumption", clamp_negative)
        gcf[k - 1] = _parse_cell(tail[1], k, "gcf_inventory", clamp_negative)
        E[k - 1] = _parse_cell(tail[2], k, "export", clamp_negative)
        Imp[k - 1] = _parse_cell(tail[3], k, "import", clamp_negative)
        Xout[k - 1] = _parse_cell(tail[4], k, "gross_output", clamp_negative)

    country, year, currency = "XXX", 0, "value units"
    meta_path = path.parent / "meta.csv"
    if meta_path.exists():
        with meta_path.open(newline="") as fh:
            meta_rows = [r for r in csv.reader(fh) if r]
        if len(meta_rows) < 2 or [h.strip() for h in meta_rows[0]] != ["country", "year", "currency"]:
            raise SchemaError(0, None, "meta.csv must have header country,year,currency")
        country = meta_rows[1][0].strip()
        try:
            year = int(meta_rows[1][1])
        except ValueError:
            raise SchemaError(1, "year", f"not an integer: {meta_rows[1][1]!r}") from None
        currency = meta_rows[1][2].strip()

    return NiotTable(
        country=country,
        year=year,
        currency=currency,
        indices=tuple(indices),
        names=tuple(names),
        X=X,
        fc=fc,
        gcf=gcf,
        E=E,
        Imp=Imp,
        Xout=Xout,
    )


def serialize_niot(table: NiotTable, path, write_meta: bool = True) -> None:
    """Write a table back in the normalized layout.

    Floats are written with ``repr``, which round-trips exactly.
    """
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_expected_header(table.m))
        for k in range(table.m):
            writer.writerow(
                [table.indices[k], table.names[k]]
                + [repr(float(v)) for v in table.X[k]]
                + [
                    repr(float(table.fc[k])),
                    repr(float(table.gcf[k])),
                    repr(float(table.E[k])),
                    repr(float(table.Imp[k])),
                    repr(float(table.Xout[k])),
                ]
            )
    if write_meta:
        with (path.parent / "meta.csv").open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["country", "year", "currency"])
            writer.writerow([table.country, table.year, table.currency])


@dataclass
class RunConfig:
    """Explicit run configuration (no environment variables).

    ``pi`` is a scalar broadcast or a per-industry vector; tolerances must
    be positive.  ``blocks`` optionally aggregates the table before
    analysis.
    """

    pi: float | np.ndarray = 1.0
    tol: float = 1e-9
    rho_tol: float = 1e-6
    pf_tol: float = 1e-10
    cone_tol: float = 1e-8
    rank_tol: float = 1e-8
    top: int = 4
    format: str = "text"
    seed: int = 0
    blocks: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        pi = np.asarray(self.pi, dtype=float).reshape(-1)
        if (pi < 0).any() or (pi > 1).any():
            raise ValueError("pi entries must lie in [0, 1]")
        self.pi = pi if pi.shape[0] > 1 else float(pi[0])
        for name in ("tol", "rho_tol", "pf_tol", "cone_tol", "rank_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.format not in ("json", "csv", "text"):
            raise ValueError(f"format must be json, csv or text, got {self.format!r}")

    def pi_for(self, m: int) -> np.ndarray:
        pi = np.asarray(self.pi, dtype=float).reshape(-1)
        if pi.shape[0] == 1:
            return np.full(m, float(pi[0]))
        if pi.shape[0] != m:
            raise ValueError(f"pi has length {pi.shape[0]}, table has {m} industries")
        return pi


def parse_pi(text: str) -> float | np.ndarray:
    """Interpret a --pi argument: a scalar literal or a CSV file of values."""
    try:
        return float(text)
    except ValueError:
        pass
    path = Path(text)
    try:
        with path.open(newline="") as fh:
            cells = [c for row in csv.reader(fh) for c in row if c.strip()]
    except OSError as e:
        raise SchemaError(None, None, f"cannot read pi file {path}: {e}") from e
    if not cells:
        raise SchemaError(None, None, f"pi file {path} is empty")
    try:
        return np.array([float(c) for c in cells])
    except ValueError as e:
        raise SchemaError(None, None, f"pi file {path}: {e}") from e


def parse_blocks(path) -> tuple[tuple[int, ...], ...]:
    """Read an aggregation map: one block per line of comma-separated
    1-based industry indices."""
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as e:
        raise SchemaError(None, None, f"cannot read map file {path}: {e}") from e
    blocks = []
    for ln, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            members = tuple(int(tok) - 1 for tok in line.split(","))
        except ValueError:
            raise SchemaError(ln, None, f"bad block line: {line!r}") from None
        blocks.append(members)
    if not blocks:
        raise SchemaError(None, None, f"map file {path} has no blocks")
    return tuple(blocks)
