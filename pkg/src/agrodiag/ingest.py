"""Loaders for the tabular input formats, plus triennium averaging.

File schemas (delimited text, UTF-8, ``.`` decimal separator, header row):

* crop panel:   ``crop_id,year,area_ha,production_t,price_per_t``
* io panel:     ``year,kind,item_id,quantity,share``   (kind: output | input)
* price series: ``commodity_id,year,price_per_t``
* land use:     ``year,agricultural_land,non_agricultural_land,total_reported``
* value/cost:   ``year,output_value,input_cost``

Loading is single-threaded per source; every returned object is immutable
and safe to share across concurrent readers.
"""
from __future__ import annotations

import csv
import io
import warnings
from contextlib import contextmanager
from typing import Mapping

from .errors import (
    CoverageError,
    DomainError,
    DuplicateKeyError,
    NormalizationError,
    SchemaError,
)
from .panel import (
    CropObservation,
    CropPanel,
    InputOutputPanel,
    IOItem,
    IOYear,
    LandUseRecord,
    PriceSeries,
)

# Shares are accepted and renormalized inside this band, rejected outside it.
# Published share tables round to one decimal, hence +/- 0.001.
SHARE_RENORM_BAND = (0.999, 1.001)


@contextmanager
def _open_text(source):
    """Yield a text stream for a path or pass a file-like object through."""
    if hasattr(source, "read"):
        yield source
    else:
        with open(source, "r", encoding="utf-8", newline="") as fh:
            yield fh


def _rows(stream, expected_header: list[str], what: str):
    """Yield (line_number, row) pairs after validating header and widths."""
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError(f"{what}: empty file, expected header "
                          f"{','.join(expected_header)}") from None
    header = [h.strip() for h in header]
    if header != expected_header:
        raise SchemaError(
            f"{what}: bad header {header!r}, expected {expected_header!r}"
        )
    for line, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(expected_header):
            raise SchemaError(
                f"{what}: row {line} has {len(row)} columns, "
                f"expected {len(expected_header)}"
            )
        yield line, row


def _cell(row: list[str], idx: int, col: str, line: int, what: str,
          cast=float):
    try:
        raw = row[idx]
    except IndexError:
        raise SchemaError(f"{what}: row {line} is missing column '{col}'") from None
    try:
        return cast(raw)
    except ValueError:
        raise SchemaError(
            f"{what}: non-numeric value {raw!r} in column '{col}', row {line}"
        ) from None


def load_crop_panel(source, deflator: Mapping[int, float] | None = None) -> CropPanel:
    """Load a crop panel file; optionally deflate prices to real terms.

    ``deflator`` maps year to an index (base 100); each price is divided by
    ``deflator[year] / 100``. The deflator must cover every year present.
    No deflator is ever invented: nominal prices pass through unchanged.
    """
    what = "crop panel"
    observations = []
    seen: set[tuple[str, int]] = set()
    with _open_text(source) as stream:
        for line, row in _rows(stream, ["crop_id", "year", "area_ha",
                                        "production_t", "price_per_t"], what):
            crop_id = row[0].strip()
            if not crop_id:
                raise SchemaError(f"{what}: empty crop_id in row {line}")
            year = _cell(row, 1, "year", line, what, cast=int)
            area = _cell(row, 2, "area_ha", line, what)
            production = _cell(row, 3, "production_t", line, what)
            price = _cell(row, 4, "price_per_t", line, what)
            if min(area, production, price) < 0:
                raise DomainError(
                    f"{what}: negative value in row {line} for ({crop_id}, {year})"
                )
            if deflator is not None:
                if year not in deflator:
                    raise CoverageError(
                        f"{what}: deflator does not cover year {year} (row {line})"
                    )
                price = price / (deflator[year] / 100.0)
            key = (crop_id, year)
            if key in seen:
                raise DuplicateKeyError(
                    f"{what}: duplicate ({crop_id}, {year}) in row {line}"
                )
            seen.add(key)
            observations.append(
                CropObservation(crop_id, year, area, production, price)
            )
    return CropPanel(observations)


def write_crop_panel(panel: CropPanel, dest) -> None:
    """Write a panel back to the crop-panel schema (round-trips exactly)."""
    own = not hasattr(dest, "write")
    stream = open(dest, "w", encoding="utf-8", newline="") if own else dest
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["crop_id", "year", "area_ha", "production_t",
                         "price_per_t"])
        for obs in panel.observations():
            writer.writerow([obs.crop_id, obs.year, repr(obs.area),
                             repr(obs.production), repr(obs.price)])
    finally:
        if own:
            stream.close()


def crop_panel_to_text(panel: CropPanel) -> str:
    buf = io.StringIO()
    write_crop_panel(panel, buf)
    return buf.getvalue()


def triennium_average(panel: CropPanel, end_year: int) -> CropPanel:
    """Average the three years ending in ``end_year`` into one synthetic year.

    A crop absent in one of the years contributes zero area and production
    to that year's term (not grown means literally nothing harvested), while
    its price is averaged only over years where it was observed: a zero
    price would be meaningless.
    """
    span = (end_year - 2, end_year - 1, end_year)
    missing = [y for y in span if not panel.has_year(y)]
    if missing:
        raise CoverageError(
            f"triennium ending {end_year} needs years {span}, missing {missing}"
        )
    crops = sorted({o.crop_id for y in span for o in panel.observations(y)})
    averaged = []
    for crop in crops:
        found = [panel.get(crop, y) for y in span]
        present = [o for o in found if o is not None]
        area = sum(o.area for o in present) / 3.0
        production = sum(o.production for o in present) / 3.0
        price = sum(o.price for o in present) / len(present)
        averaged.append(CropObservation(crop, end_year, area, production, price))
    return CropPanel(averaged)


def _normalize_shares(items: list[tuple[str, float, float]], year: int,
                      kind: str) -> list[IOItem]:
    total = sum(share for _, _, share in items)
    if abs(total - 1.0) <= 1e-9:
        factor = 1.0
    elif SHARE_RENORM_BAND[0] <= total <= SHARE_RENORM_BAND[1]:
        factor = total
    else:
        raise NormalizationError(
            f"io panel: {kind} shares for {year} sum to {total!r}, outside "
            f"the renormalization band {SHARE_RENORM_BAND}"
        )
    return [IOItem(item_id, qty, share / factor) for item_id, qty, share in items]


def load_io_panel(source) -> InputOutputPanel:
    """Load an input-output panel (quantities plus revenue/cost shares).

    Share sums inside the renormalization band are rescaled to 1, sums
    outside it are rejected. Zero quantities are tolerated here but flagged,
    because they cannot enter a log-ratio later.
    """
    what = "io panel"
    by_year: dict[int, dict[str, list[tuple[str, float, float]]]] = {}
    with _open_text(source) as stream:
        for line, row in _rows(stream, ["year", "kind", "item_id", "quantity",
                                        "share"], what):
            year = _cell(row, 0, "year", line, what, cast=int)
            kind = row[1].strip()
            if kind not in ("output", "input"):
                raise SchemaError(
                    f"{what}: kind must be 'output' or 'input', got {kind!r} "
                    f"in row {line}"
                )
            item_id = row[2].strip()
            if not item_id:
                raise SchemaError(f"{what}: empty item_id in row {line}")
            quantity = _cell(row, 3, "quantity", line, what)
            share = _cell(row, 4, "share", line, what)
            if quantity <= 0 and share > 0:
                warnings.warn(
                    f"{what}: non-positive quantity for {kind} {item_id!r} in "
                    f"{year} (row {line}); it will be rejected if it enters a "
                    f"log-ratio",
                    stacklevel=2,
                )
            bucket = by_year.setdefault(year, {"output": [], "input": []})
            if any(item_id == existing for existing, _, _ in bucket[kind]):
                raise DuplicateKeyError(
                    f"{what}: duplicate {kind} {item_id!r} for {year} in row {line}"
                )
            bucket[kind].append((item_id, quantity, share))
    years = []
    for year in sorted(by_year):
        outputs = _normalize_shares(by_year[year]["output"], year, "output")
        inputs = _normalize_shares(by_year[year]["input"], year, "input")
        years.append(IOYear(year, tuple(outputs), tuple(inputs)))
    return InputOutputPanel(years)


def load_price_table(source) -> dict[str, PriceSeries]:
    """Load every commodity in a price-series file, keyed by commodity id."""
    what = "price series"
    values: dict[str, dict[int, float]] = {}
    with _open_text(source) as stream:
        for line, row in _rows(stream, ["commodity_id", "year", "price_per_t"],
                               what):
            commodity = row[0].strip()
            if not commodity:
                raise SchemaError(f"{what}: empty commodity_id in row {line}")
            year = _cell(row, 1, "year", line, what, cast=int)
            price = _cell(row, 2, "price_per_t", line, what)
            series = values.setdefault(commodity, {})
            if year in series:
                raise DuplicateKeyError(
                    f"{what}: duplicate ({commodity}, {year}) in row {line}"
                )
            series[year] = price
    return {c: PriceSeries(c, v) for c, v in sorted(values.items())}


def load_price_series(source, commodity_id: str | None = None) -> PriceSeries:
    """Load one commodity's price series.

    With ``commodity_id`` the file is filtered to that commodity; without it
    the file must contain exactly one commodity.
    """
    table = load_price_table(source)
    if commodity_id is not None:
        try:
            return table[commodity_id]
        except KeyError:
            raise CoverageError(
                f"price series: commodity {commodity_id!r} not in file "
                f"(have {sorted(table)})"
            ) from None
    if len(table) != 1:
        raise SchemaError(
            f"price series: expected a single commodity, found {sorted(table)}; "
            "pass commodity_id to select one"
        )
    return next(iter(table.values()))


def load_land_use(source) -> list[LandUseRecord]:
    """Load land-use records, sorted by year."""
    what = "land use"
    records: dict[int, LandUseRecord] = {}
    with _open_text(source) as stream:
        for line, row in _rows(stream, ["year", "agricultural_land",
                                        "non_agricultural_land",
                                        "total_reported"], what):
            year = _cell(row, 0, "year", line, what, cast=int)
            if year in records:
                raise DuplicateKeyError(f"{what}: duplicate year {year} in row {line}")
            records[year] = LandUseRecord(
                year,
                _cell(row, 1, "agricultural_land", line, what),
                _cell(row, 2, "non_agricultural_land", line, what),
                _cell(row, 3, "total_reported", line, what),
            )
    return [records[y] for y in sorted(records)]


def load_value_cost(source) -> tuple[dict[int, float], dict[int, float]]:
    """Load per-year aggregate output value and input cost (currency)."""
    what = "value/cost series"
    value: dict[int, float] = {}
    cost: dict[int, float] = {}
    with _open_text(source) as stream:
        for line, row in _rows(stream, ["year", "output_value", "input_cost"],
                               what):
            year = _cell(row, 0, "year", line, what, cast=int)
            if year in value:
                raise DuplicateKeyError(f"{what}: duplicate year {year} in row {line}")
            value[year] = _cell(row, 1, "output_value", line, what)
            cost[year] = _cell(row, 2, "input_cost", line, what)
    return value, cost
