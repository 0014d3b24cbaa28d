import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agrodiag.errors import (
    CoverageError,
    DomainError,
    DuplicateKeyError,
    NormalizationError,
    SchemaError,
)
from agrodiag.ingest import (
    crop_panel_to_text,
    load_crop_panel,
    load_io_panel,
    load_land_use,
    load_price_series,
    load_price_table,
    load_value_cost,
    triennium_average,
)
from agrodiag.panel import CropObservation, CropPanel

TWO_CROP_FILE = """crop_id,year,area_ha,production_t,price_per_t
paddy,2005,100,250,500
paddy,2006,110,260,520
wheat,2005,50,90,700
wheat,2006,55,95,710
"""


def load_text(text, **kwargs):
    return load_crop_panel(io.StringIO(text), **kwargs)


class TestLoadCropPanel:
    def test_well_formed_file(self):
        panel = load_text(TWO_CROP_FILE)
        assert len(panel) == 4
        assert panel.crops == ("paddy", "wheat")
        assert panel.get("paddy", 2005).production == 250.0

    def test_deflator_scales_prices(self):
        # index 125 in the second year deflates prices by a factor 0.8
        panel = load_text(TWO_CROP_FILE, deflator={2005: 100.0, 2006: 125.0})
        assert panel.get("paddy", 2005).price == 500.0
        assert panel.get("paddy", 2006).price == pytest.approx(520.0 * 0.8)

    def test_constant_deflator_of_100_is_identity(self):
        plain = load_text(TWO_CROP_FILE)
        deflated = load_text(TWO_CROP_FILE, deflator={2005: 100.0, 2006: 100.0})
        assert plain == deflated

    def test_deflator_must_cover_all_years(self):
        with pytest.raises(CoverageError):
            load_text(TWO_CROP_FILE, deflator={2005: 100.0})

    def test_duplicate_row_cites_row_number(self):
        text = TWO_CROP_FILE + "paddy,2005,1,1,1\n"
        with pytest.raises(DuplicateKeyError, match="row 6"):
            load_text(text)

    def test_missing_column_named(self):
        with pytest.raises(SchemaError, match="header"):
            load_text("crop_id,year,area_ha\npaddy,2005,1\n")

    def test_non_numeric_cell_names_row_and_column(self):
        bad = TWO_CROP_FILE.replace("110", "n/a")
        with pytest.raises(SchemaError, match="area_ha.*row 3"):
            load_text(bad)

    def test_wrong_column_count_named(self):
        with pytest.raises(SchemaError, match="row 2.*columns"):
            load_text("crop_id,year,area_ha,production_t,price_per_t\n"
                      "paddy,2005,1,1\n")

    def test_negative_value_is_domain_error(self):
        bad = TWO_CROP_FILE.replace("250", "-250")
        with pytest.raises(DomainError):
            load_text(bad)

    def test_round_trip_is_identity(self):
        panel = load_text(TWO_CROP_FILE)
        again = load_text(crop_panel_to_text(panel))
        assert panel == again

    @given(st.lists(
        st.tuples(
            st.sampled_from(["paddy", "wheat", "maize", "gram"]),
            st.integers(min_value=1990, max_value=2020),
            st.floats(0.001, 1e6), st.floats(0.0, 1e6), st.floats(0.0, 1e6),
        ),
        min_size=1, max_size=24,
        unique_by=lambda row: (row[0], row[1]),
    ))
    @settings(max_examples=50, deadline=None)
    def test_round_trip_property(self, rows):
        panel = CropPanel(CropObservation(*row) for row in rows)
        assert load_text(crop_panel_to_text(panel)) == panel

    @given(st.integers(min_value=2, max_value=9))
    @settings(max_examples=25, deadline=None)
    def test_share_closure(self, n_crops):
        rows = [(f"c{i}", 2000, float(i + 1) * 1.37, 1.0, 1.0)
                for i in range(n_crops)]
        panel = CropPanel(CropObservation(*row) for row in rows)
        assert abs(sum(panel.area_shares(2000).values()) - 1.0) <= 1e-12


class TestTriennium:
    def make_panel(self, by_year):
        obs = []
        for year, crops in by_year.items():
            for crop, (a, q, p) in crops.items():
                obs.append(CropObservation(crop, year, a, q, p))
        return CropPanel(obs)

    def test_constant_panel_unchanged(self):
        values = {"paddy": (10.0, 25.0, 500.0)}
        panel = self.make_panel({y: values for y in (2004, 2005, 2006)})
        te = triennium_average(panel, 2006)
        obs = te.get("paddy", 2006)
        assert (obs.area, obs.production, obs.price) == (10.0, 25.0, 500.0)

    def test_arithmetic_mean_of_areas(self):
        panel = self.make_panel({
            2004: {"paddy": (10.0, 10.0, 500.0)},
            2005: {"paddy": (20.0, 20.0, 500.0)},
            2006: {"paddy": (30.0, 30.0, 500.0)},
        })
        assert triennium_average(panel, 2006).get("paddy", 2006).area == 20.0

    def test_absent_years_count_as_zero(self):
        # oracle: (0 + 0 + 30) / 3 = 10 for area; price averaged over the
        # single year the crop was observed
        panel = self.make_panel({
            2004: {"wheat": (5.0, 5.0, 700.0)},
            2005: {"wheat": (5.0, 5.0, 700.0)},
            2006: {"wheat": (5.0, 5.0, 700.0), "maize": (30.0, 60.0, 550.0)},
        })
        te = triennium_average(panel, 2006)
        maize = te.get("maize", 2006)
        assert maize.area == pytest.approx(10.0)
        assert maize.production == pytest.approx(20.0)
        assert maize.price == 550.0

    def test_insufficient_years(self):
        panel = self.make_panel({2006: {"paddy": (1.0, 1.0, 1.0)}})
        with pytest.raises(CoverageError):
            triennium_average(panel, 2006)


IO_FILE = """year,kind,item_id,quantity,share
2000,output,grain,100,0.6
2000,output,veg,40,0.4
2000,input,labour,10,1.0
"""


class TestLoadIOPanel:
    def test_exact_shares_accepted_unchanged(self):
        panel = load_io_panel(io.StringIO(IO_FILE))
        assert [it.share for it in panel.outputs(2000)] == [0.6, 0.4]

    def test_shares_inside_band_renormalized(self):
        text = IO_FILE.replace("0.6\n", "0.6005\n")
        panel = load_io_panel(io.StringIO(text))
        assert sum(it.share for it in panel.outputs(2000)) == pytest.approx(1.0, abs=1e-12)

    def test_shares_outside_band_rejected(self):
        text = IO_FILE.replace("0.6\n", "0.7\n")
        with pytest.raises(NormalizationError):
            load_io_panel(io.StringIO(text))

    def test_zero_quantity_flagged_at_load(self):
        text = IO_FILE.replace("2000,output,grain,100", "2000,output,grain,0")
        with pytest.warns(UserWarning, match="grain"):
            load_io_panel(io.StringIO(text))

    def test_bad_kind_rejected(self):
        text = IO_FILE.replace("2000,input,labour", "2000,midput,labour")
        with pytest.raises(SchemaError, match="midput"):
            load_io_panel(io.StringIO(text))


PRICE_FILE = """commodity_id,year,price_per_t
wheat,2002,700
wheat,2003,720
urea,2002,500
"""


class TestLoadPrices:
    def test_table_keyed_by_commodity(self):
        table = load_price_table(io.StringIO(PRICE_FILE))
        assert sorted(table) == ["urea", "wheat"]
        assert table["wheat"].values == {2002: 700.0, 2003: 720.0}

    def test_single_series_needs_unique_commodity(self):
        with pytest.raises(SchemaError):
            load_price_series(io.StringIO(PRICE_FILE))
        series = load_price_series(io.StringIO(PRICE_FILE), "urea")
        assert series.values == {2002: 500.0}

    def test_unknown_commodity(self):
        with pytest.raises(CoverageError):
            load_price_series(io.StringIO(PRICE_FILE), "gram")


class TestLoadLandUseAndCosts:
    def test_land_use_sorted(self):
        text = ("year,agricultural_land,non_agricultural_land,total_reported\n"
                "2001,67,18,100\n2000,68,18,100\n")
        records = load_land_use(io.StringIO(text))
        assert [r.year for r in records] == [2000, 2001]

    def test_value_cost(self):
        text = "year,output_value,input_cost\n2000,1500,1000\n"
        value, cost = load_value_cost(io.StringIO(text))
        assert value == {2000: 1500.0}
        assert cost == {2000: 1000.0}
