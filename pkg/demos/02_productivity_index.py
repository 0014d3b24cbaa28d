"""Output, input and TFP index series from an input-output panel.

The year-over-year log changes weight each item's log quantity ratio by
its value share averaged between the two years, then chain into levels
with base 100. TFP is the output index over the input index.
"""
import math

from agrodiag import IOItem, IOYear, InputOutputPanel, avg_annual_growth, build_index

# ten years of two outputs and three inputs; output grows faster than
# input use, so TFP trends up
years = []
for t in range(10):
    outputs = (
        IOItem("grain", 1000.0 * math.exp(0.025 * t), 0.65),
        IOItem("horticulture", 300.0 * math.exp(0.045 * t), 0.35),
    )
    inputs = (
        IOItem("labour", 500.0 * math.exp(0.002 * t), 0.50),
        IOItem("fertiliser", 120.0 * math.exp(0.018 * t), 0.30),
        IOItem("machinery", 60.0 * math.exp(0.030 * t), 0.20),
    )
    years.append(IOYear(2006 + t, outputs, inputs))

panel = InputOutputPanel(years)

output_idx = build_index(panel, "output", base_year=2006)
input_idx = build_index(panel, "input", base_year=2006)
tfp_idx = build_index(panel, "tfp", base_year=2006)

print("year   output    input      tfp")
for year in tfp_idx.years:
    print(f"{year}  {output_idx.values[year]:8.2f} {input_idx.values[year]:8.2f} "
          f"{tfp_idx.values[year]:8.2f}")

print()
for method in ("loglinear", "cagr"):
    rate = avg_annual_growth(tfp_idx, method=method)
    print(f"average annual TFP growth ({method}): {rate:.2f} %/yr")

# the TFP series is exactly the output/input ratio rebased to 100
for year in tfp_idx.years:
    ratio = 100.0 * output_idx.values[year] / input_idx.values[year]
    assert abs(tfp_idx.values[year] - ratio) < 1e-9 * ratio
