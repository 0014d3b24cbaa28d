"""Shared builders and independent oracles for the test suite.

The oracles re-derive expected values straight from raw numbers and the
written formulas, term by term, without touching the library's internals;
tests freeze or compare against their output.
"""
from __future__ import annotations

import math

from agrodiag.panel import (
    CropObservation,
    CropPanel,
    InputOutputPanel,
    IOItem,
    IOYear,
)

# crop-period values are dicts crop_id -> (area, production, price)


def panel_two_periods(base: dict, term: dict, base_year: int = 2000,
                      term_year: int = 2001) -> CropPanel:
    obs = [CropObservation(c, base_year, *v) for c, v in base.items()]
    obs += [CropObservation(c, term_year, *v) for c, v in term.items()]
    return CropPanel(obs)


def oracle_decompose(base: dict, term: dict) -> dict:
    """Brute-force decomposition evaluated term by term from raw numbers."""
    crops = sorted(set(base) | set(term))
    zero = (0.0, 0.0, 0.0)

    def unpack(period, crop):
        area, production, price = period.get(crop, zero)
        yld = production / area if area > 0 else 0.0
        return area, yld, price

    total_base = sum(v[0] for v in base.values())
    total_term = sum(v[0] for v in term.values())
    revenue_base = sum(v[1] * v[2] for v in base.values())
    revenue_term = sum(v[1] * v[2] for v in term.values())

    area_eff = 0.0
    price_eff = 0.0
    yield_eff = 0.0
    div_eff = 0.0
    for crop in crops:
        a0, y0, p0 = unpack(base, crop)
        a1, y1, p1 = unpack(term, crop)
        s0, s1 = a0 / total_base, a1 / total_term
        area_eff += s0 * y0 * p0 * (total_term - total_base)
        price_eff += total_base * s0 * y0 * (p1 - p0)
        yield_eff += total_base * s0 * p0 * (y1 - y0)
        div_eff += total_base * y0 * p0 * (s1 - s0)
    total = revenue_term - revenue_base
    return {
        "total_dR": total,
        "area_effect": area_eff,
        "price_effect": price_eff,
        "yield_effect": yield_eff,
        "diversification_effect": div_eff,
        "interaction_effect": total - (area_eff + price_eff + yield_eff + div_eff),
    }


# io years are dicts item_id -> (quantity, share)


def io_year(year: int, outputs: dict, inputs: dict) -> IOYear:
    return IOYear(
        year,
        tuple(IOItem(i, q, s) for i, (q, s) in sorted(outputs.items())),
        tuple(IOItem(i, q, s) for i, (q, s) in sorted(inputs.items())),
    )


def io_panel(years: dict) -> InputOutputPanel:
    """``{year: (outputs, inputs)}`` -> panel."""
    return InputOutputPanel(
        io_year(y, outs, ins) for y, (outs, ins) in years.items()
    )


def oracle_tornqvist(out0: dict, out1: dict, in0: dict, in1: dict) -> float:
    """Eq-by-eq evaluation: averaged-share-weighted log quantity ratios."""

    def side(old, new):
        total = 0.0
        for item in sorted(set(old) | set(new)):
            share = 0.5 * (old[item][1] + new[item][1])
            total += share * math.log(new[item][0] / old[item][0])
        return total

    return side(out0, out1) - side(in0, in1)


def relative_error(actual: float, expected: float) -> float:
    return abs(actual - expected) / max(1.0, abs(expected))
