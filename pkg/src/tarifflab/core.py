"""Country records, CSV ingestion and dataset validation."""
from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

REQUIRED_COLUMNS = ("country", "tariff_charged_to_usa_pct", "usa_reciprocal_tariff_pct")
OPTIONAL_COLUMNS = ("eci", "export_value_busd", "coffee_share_pct")
COLUMNS = REQUIRED_COLUMNS + OPTIONAL_COLUMNS

MAX_TARIFF = 1000.0
SHARE_SUM_RANGE = (95.0, 105.0)


class TariffLabError(Exception):
    """Base class for errors raised by tarifflab."""


class ParseError(TariffLabError, ValueError):
    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        self.row = row
        self.column = column
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class InsufficientDataError(TariffLabError, ValueError):
    pass


class DomainError(TariffLabError, ValueError):
    pass


class ValidationError(TariffLabError, ValueError):
    """Raised when an input fails validation; ``problems`` lists every violation."""

    def __init__(self, problems: Iterable[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems) or "validation failed")


class DataWarning(UserWarning):
    pass


@dataclass(frozen=True)
class CountryRecord:
    name: str
    tariff_charged_to_usa: float
    usa_reciprocal_tariff: float
    eci: Optional[float] = None
    export_value_usd_billions: Optional[float] = None
    coffee_share: Optional[float] = None


@dataclass(frozen=True)
class Dataset:
    records: tuple[CountryRecord, ...]
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def names(self) -> list[str]:
        return [r.name for r in self.records]

    def get(self, name: str) -> CountryRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)


@dataclass(frozen=True)
class Issue:
    row: int
    field: str
    message: str

    def __str__(self):
        return f"row {self.row}, {self.field}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[Issue, ...] = field(default_factory=tuple)
    warnings: tuple[Issue, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.errors

    def raise_for_errors(self) -> None:
        if self.errors:
            raise ValidationError(str(e) for e in self.errors)


_FIELD_FOR_COLUMN = {
    "tariff_charged_to_usa_pct": "tariff_charged_to_usa",
    "usa_reciprocal_tariff_pct": "usa_reciprocal_tariff",
    "eci": "eci",
    "export_value_busd": "export_value_usd_billions",
    "coffee_share_pct": "coffee_share",
}


def _number(text: str, row: int, column: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"not a number: {text!r}", row=row, column=column) from None
    if not math.isfinite(value):
        raise ParseError(f"not a finite number: {text!r}", row=row, column=column)
    return value


def parse_dataset(text: str, provenance: str = "") -> Dataset:
    """Parse CSV text in the country schema into a :class:`Dataset`.

    Row numbers in errors are 1-based file lines, the header being row 1.
    Optional columns may be missing or left empty; either way the field is
    ``None``. Unknown columns are ignored with a :class:`DataWarning`.
    """
    reader = csv.reader(io.StringIO(text), strict=True)
    try:
        rows = list(reader)
    except csv.Error as exc:
        raise ParseError(f"malformed CSV: {exc}", row=reader.line_num) from None

    if not rows:
        raise ParseError("missing header row", row=1)
    header = [h.strip() for h in rows[0]]
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise ParseError(f"header lacks required columns {missing}", row=1)
    dupes = sorted({h for h in header if header.count(h) > 1})
    if dupes:
        raise ParseError(f"duplicate header columns {dupes}", row=1)
    extra = [h for h in header if h not in COLUMNS]
    if extra:
        warnings.warn(f"ignoring unknown columns {extra}", DataWarning, stacklevel=2)
    index = {h: i for i, h in enumerate(header) if h in COLUMNS}

    records = []
    for rownum, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise ParseError(f"expected {len(header)} columns, found {len(row)}", row=rownum)
        name = row[index["country"]].strip()
        values: dict[str, Optional[float]] = {}
        for column, attr in _FIELD_FOR_COLUMN.items():
            if column not in index:
                values[attr] = None
                continue
            cell = row[index[column]].strip()
            if cell == "":
                if column in REQUIRED_COLUMNS:
                    raise ParseError("required value is empty", row=rownum, column=column)
                values[attr] = None
            else:
                values[attr] = _number(cell, rownum, column)
        records.append(CountryRecord(name=name, **values))
    return Dataset(tuple(records), provenance)


def load_dataset(path) -> Dataset:
    path = Path(path)
    return parse_dataset(path.read_text(encoding="utf-8"), provenance=str(path))


def _cell(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def serialize_dataset(dataset: Dataset) -> str:
    """Write a dataset back to canonical CSV; floats use ``repr`` so parsing is lossless."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for r in dataset.records:
        writer.writerow([
            r.name,
            _cell(r.tariff_charged_to_usa),
            _cell(r.usa_reciprocal_tariff),
            _cell(r.eci),
            _cell(r.export_value_usd_billions),
            _cell(r.coffee_share),
        ])
    return buf.getvalue()


def validate_dataset(dataset: Dataset) -> ValidationReport:
    """Check a dataset against the record invariants.

    Row indices are 0-based positions in ``dataset.records``.
    """
    errors: list[Issue] = []
    warns: list[Issue] = []
    seen: dict[str, int] = {}
    for i, r in enumerate(dataset.records):
        if not r.name:
            errors.append(Issue(i, "country", "name is empty"))
        elif r.name in seen:
            errors.append(Issue(i, "country", f"duplicate name {r.name!r} (first at row {seen[r.name]})"))
        else:
            seen[r.name] = i
        for attr in ("tariff_charged_to_usa", "usa_reciprocal_tariff"):
            value = getattr(r, attr)
            if value < 0:
                errors.append(Issue(i, attr, f"negative value {value}"))
            elif value >= MAX_TARIFF:
                errors.append(Issue(i, attr, f"value {value} outside [0, {MAX_TARIFF:g})"))
        if r.export_value_usd_billions is not None and r.export_value_usd_billions < 0:
            errors.append(Issue(i, "export_value_usd_billions", f"negative value {r.export_value_usd_billions}"))
        if r.coffee_share is not None and not 0 <= r.coffee_share <= 100:
            errors.append(Issue(i, "coffee_share", f"share {r.coffee_share} outside [0, 100]"))

    shares = [r.coffee_share for r in dataset.records if r.coffee_share is not None]
    if shares:
        total = sum(shares)
        lo, hi = SHARE_SUM_RANGE
        if not lo <= total <= hi:
            warns.append(Issue(-1, "coffee_share", f"shares sum to {total:g}, outside [{lo:g}, {hi:g}]"))
    return ValidationReport(tuple(errors), tuple(warns))


def require_valid(dataset: Dataset) -> Dataset:
    """Raise :class:`ValidationError` if the dataset has errors, emit its warnings, return it."""
    report = validate_dataset(dataset)
    for w in report.warnings:
        warnings.warn(str(w), DataWarning, stacklevel=2)
    report.raise_for_errors()
    return dataset
