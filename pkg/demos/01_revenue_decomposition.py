"""Where did crop revenue growth come from?

Builds a toy two-period panel and splits the change in gross revenue into
area, price, yield and diversification effects plus the interaction
residual. Play with the numbers and watch the attribution move.
"""
from agrodiag import CropObservation, CropPanel, decompose, gross_revenue

# base period: a paddy/wheat/maize state with 17 kha under crops
base = [
    CropObservation("paddy", 2002, area=9.0, production=18.0, price=520.0),
    CropObservation("wheat", 2002, area=6.0, production=13.2, price=760.0),
    CropObservation("maize", 2002, area=2.0, production=4.4, price=590.0),
]

# terminal period: higher yields and prices, land shifted toward maize
terminal = [
    CropObservation("paddy", 2016, area=8.2, production=21.3, price=1150.0),
    CropObservation("wheat", 2016, area=6.1, production=17.1, price=1280.0),
    CropObservation("maize", 2016, area=2.9, production=9.6, price=1090.0),
]

panel = CropPanel(base + terminal)

print(f"gross revenue 2002: {gross_revenue(panel, 2002):12.1f}")
print(f"gross revenue 2016: {gross_revenue(panel, 2016):12.1f}")
print()

result = decompose(panel, 2002, 2016, period_mode="endpoint")
pct = result.percent

print(f"decomposition of the change ({result.base_label} -> "
      f"{result.terminal_label}):")
for name, value in result.effects.items():
    print(f"  {name:<24s} {value:12.1f}   {pct[name]:7.1f} %")
print(f"  {'total':<24s} {result.total_dR:12.1f}   {pct['total']:7.1f} %")

# the five rows always add up to the total: the interaction term is the
# exact residual of the four first-order effects
assert abs(sum(result.effects.values()) - result.total_dR) < 1e-9
