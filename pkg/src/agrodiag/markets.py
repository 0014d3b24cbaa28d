"""Market-functioning indicators: price volatility around a structural
break, value-to-cost and price ratios, crop share tables, land-use ratios.

Everything here is pure and stateless.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import CoverageError, DomainError
from .ingest import triennium_average
from .panel import CropPanel, LandUseRecord, PriceSeries


def coefficient_of_variation(values: Sequence[float], ddof: int = 1) -> float:
    """Standard deviation over mean, in percent.

    ``ddof=1`` (default) uses the sample standard deviation; pass 0 for the
    population convention.
    """
    if len(values) < 2:
        raise CoverageError(
            f"coefficient of variation needs at least 2 values, got {len(values)}"
        )
    arr = np.asarray(values, dtype=float)
    mean = arr.mean()
    if mean <= 0:
        raise DomainError(f"coefficient of variation needs a positive mean, "
                          f"got {mean!r}")
    return float(arr.std(ddof=ddof) / mean * 100.0)


@dataclass(frozen=True)
class BreakStats:
    """Price level and volatility on each side of a structural break."""

    commodity_id: str
    break_year: int
    mean_before: float
    mean_after: float
    cv_before: float
    cv_after: float

    def to_record(self) -> dict:
        return {
            "commodity_id": self.commodity_id,
            "break_year": self.break_year,
            "mean_before": self.mean_before,
            "mean_after": self.mean_after,
            "cv_before": self.cv_before,
            "cv_after": self.cv_after,
        }


def break_analysis(series: PriceSeries, break_year: int,
                   ddof: int = 1) -> BreakStats:
    """Mean and CV before vs after a break year.

    The break year itself belongs to the "after" window: "before" covers
    years up to ``break_year - 1``, "after" covers ``break_year`` onwards.
    """
    before = series.window(last=break_year - 1)
    after = series.window(first=break_year)
    for name, window in (("before", before), ("after", after)):
        if len(window) < 2:
            raise CoverageError(
                f"{name} window for {series.commodity_id!r} around "
                f"{break_year} has {len(window)} observation(s); need >= 2"
            )
    return BreakStats(
        commodity_id=series.commodity_id,
        break_year=break_year,
        mean_before=float(np.mean(before)),
        mean_after=float(np.mean(after)),
        cv_before=coefficient_of_variation(before, ddof=ddof),
        cv_after=coefficient_of_variation(after, ddof=ddof),
    )


def _pointwise_ratio(numerator: Mapping[int, float],
                     denominator: Mapping[int, float],
                     what: str) -> dict[int, float]:
    num_years, den_years = set(numerator), set(denominator)
    if num_years != den_years:
        raise CoverageError(
            f"{what}: year coverage differs "
            f"(only-numerator {sorted(num_years - den_years)}, "
            f"only-denominator {sorted(den_years - num_years)})"
        )
    out: dict[int, float] = {}
    for year in sorted(num_years):
        if denominator[year] <= 0:
            raise DomainError(f"{what}: non-positive denominator in {year}")
        out[year] = numerator[year] / denominator[year]
    return out


def value_cost_ratio(output_value: Mapping[int, float],
                     input_cost: Mapping[int, float]) -> dict[int, float]:
    """Gross output value over total input cost, per year."""
    return _pointwise_ratio(output_value, input_cost, "value/cost ratio")


def price_ratio(numerator: PriceSeries,
                denominator: PriceSeries) -> dict[int, float]:
    """Pointwise ratio of two price series, e.g. grain over fertiliser."""
    return _pointwise_ratio(
        numerator.values, denominator.values,
        f"price ratio {numerator.commodity_id}/{denominator.commodity_id}",
    )


def share_table(panel: CropPanel, te_year: int,
                dimension: str = "area") -> dict[str, float]:
    """Per-crop percent share of area or of output value, triennium-averaged.

    Shares are taken over the triennium ending in ``te_year`` and always
    sum to 100.
    """
    if dimension not in ("area", "value"):
        raise ValueError(f"dimension must be 'area' or 'value', got {dimension!r}")
    te = triennium_average(panel, te_year)
    if dimension == "area":
        weights = {o.crop_id: o.area for o in te.observations(te_year)}
    else:
        weights = {o.crop_id: o.production * o.price
                   for o in te.observations(te_year)}
    total = sum(weights.values())
    if total <= 0:
        raise DomainError(f"total {dimension} in TE {te_year} is not positive")
    return {crop: w / total * 100.0 for crop, w in sorted(weights.items())}


def land_use_ratios(records: Sequence[LandUseRecord],
                    te_year: int) -> dict[str, float]:
    """Agricultural and non-agricultural land as shares of reported area.

    Components are averaged over the triennium ending in ``te_year`` first
    and divided after, the right aggregation for extensive quantities.
    """
    by_year = {r.year: r for r in records}
    span = (te_year - 2, te_year - 1, te_year)
    missing = [y for y in span if y not in by_year]
    if missing:
        raise CoverageError(
            f"land-use triennium ending {te_year} is missing years {missing}"
        )
    window = [by_year[y] for y in span]
    total = sum(r.total_reported for r in window) / 3.0
    if total <= 0:
        raise DomainError(f"total reported area in TE {te_year} is not positive")
    agricultural = sum(r.agricultural_land for r in window) / 3.0
    non_agricultural = sum(r.non_agricultural_land for r in window) / 3.0
    return {
        "al_ratio": agricultural / total,
        "nal_ratio": non_agricultural / total,
    }
