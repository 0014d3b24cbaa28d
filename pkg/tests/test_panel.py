import math

import pytest

from agrodiag.errors import (
    CoverageError,
    DataInconsistencyError,
    DomainError,
    DuplicateKeyError,
    NormalizationError,
)
from agrodiag.panel import (
    CropObservation,
    CropPanel,
    IOItem,
    IOYear,
    LandUseRecord,
    PriceSeries,
)


class TestCropObservation:
    def test_yield_is_derived(self):
        obs = CropObservation("paddy", 2005, area=4.0, production=10.0, price=500.0)
        assert obs.yield_per_ha == 2.5

    def test_yield_undefined_for_zero_area(self):
        obs = CropObservation("paddy", 2005, 0.0, 0.0, 500.0)
        with pytest.raises(DomainError):
            obs.yield_per_ha

    @pytest.mark.parametrize("field", ["area", "production", "price"])
    def test_negative_values_rejected(self, field):
        kwargs = dict(area=1.0, production=1.0, price=1.0)
        kwargs[field] = -0.5
        with pytest.raises(DomainError):
            CropObservation("paddy", 2005, **kwargs)


class TestCropPanel:
    def test_duplicate_key_rejected(self):
        obs = CropObservation("paddy", 2005, 1.0, 1.0, 1.0)
        with pytest.raises(DuplicateKeyError):
            CropPanel([obs, CropObservation("paddy", 2005, 2.0, 2.0, 2.0)])

    def test_years_and_crops_sorted(self):
        panel = CropPanel([
            CropObservation("wheat", 2006, 1.0, 1.0, 1.0),
            CropObservation("paddy", 2005, 1.0, 1.0, 1.0),
        ])
        assert panel.years == (2005, 2006)
        assert panel.crops == ("paddy", "wheat")

    def test_area_shares_sum_to_one(self):
        panel = CropPanel([
            CropObservation("a", 2000, 3.7, 1.0, 1.0),
            CropObservation("b", 2000, 9.1, 1.0, 1.0),
            CropObservation("c", 2000, 0.2, 1.0, 1.0),
        ])
        shares = panel.area_shares(2000)
        assert abs(sum(shares.values()) - 1.0) < 1e-12

    def test_area_shares_need_positive_total(self):
        panel = CropPanel([CropObservation("a", 2000, 0.0, 0.0, 1.0)])
        with pytest.raises(DomainError):
            panel.area_shares(2000)

    def test_missing_year_is_coverage_error(self):
        panel = CropPanel([CropObservation("a", 2000, 1.0, 1.0, 1.0)])
        with pytest.raises(CoverageError):
            panel.total_area(1999)


class TestIOYear:
    def test_share_sum_enforced(self):
        with pytest.raises(NormalizationError):
            IOYear(2000, (IOItem("x", 1.0, 0.7),), (IOItem("l", 1.0, 1.0),))

    def test_exact_shares_accepted(self):
        year = IOYear(2000, (IOItem("x", 1.0, 0.6), IOItem("y", 1.0, 0.4)),
                      (IOItem("l", 1.0, 1.0),))
        assert [it.share for it in year.outputs] == [0.6, 0.4]


class TestPriceSeries:
    def test_years_sorted_and_positive(self):
        series = PriceSeries("wheat", {2002: 700.0, 2001: 650.0})
        assert series.years == (2001, 2002)
        assert series.window(first=2002) == [700.0]

    def test_non_positive_price_rejected(self):
        with pytest.raises(DomainError):
            PriceSeries("wheat", {2001: 0.0})


class TestLandUseRecord:
    def test_components_bounded_by_total(self):
        with pytest.raises(DataInconsistencyError):
            LandUseRecord(2000, 70.0, 40.0, 100.0)

    def test_equality_with_total_allowed(self):
        record = LandUseRecord(2000, 82.0, 18.0, 100.0)
        assert math.isclose(record.agricultural_land + record.non_agricultural_land,
                            record.total_reported)
