"""Which crop groups does a region grow disproportionately?

The comparative-advantage index compares the region's area share of a
group against the nation's share of the same group; above one means the
region leans into that group more than the country does.
"""
from agrodiag import AreaShareTable, cai_table

region = AreaShareTable("region", 2015, {
    "vegetables": 470.0,
    "fruits": 410.0,
    "spices": 14.0,
    "flowers": 4.3,
    "aromatic_medicinal": 0.3,
})

nation = AreaShareTable("nation", 2015, {
    "vegetables": 2750.0,
    "fruits": 4050.0,
    "spices": 1400.0,
    "flowers": 540.0,
    "aromatic_medicinal": 260.0,
})

values = cai_table(region, nation)
print("group                region%   nation%    index")
for group, index in sorted(values.items(), key=lambda kv: -kv[1]):
    print(f"{group:<20s} {region.share(group) * 100:7.2f} "
          f"{nation.share(group) * 100:9.2f} {index:8.2f}")

advantaged = [g for g, v in values.items() if v > 1.0]
print(f"\ngroups with comparative advantage (index > 1): {advantaged}")

# sanity: nation-share-weighted indices average to one over a common universe
weighted = sum(nation.share(g) * values[g] for g in values)
print(f"nation-share-weighted mean of the index: {weighted:.6f}")
