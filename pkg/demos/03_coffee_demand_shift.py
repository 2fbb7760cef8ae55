# Vietnam coffee under a 46% tariff with 75% pass-through.
import json

import tarifflab
from tarifflab.tariff_sim import ALL_OTHERS, ScenarioState

elastic = tarifflab.ElasticityParams(ped_magnitude=1.5, pass_through=0.75)
inelastic = tarifflab.ElasticityParams(ped_magnitude=0.5, pass_through=0.75)

dp = tarifflab.price_change(46, 0.75)
print(f"price change {dp:.3f}, cost index {tarifflab.cost_index(dp):.1f}")
for params in (inelastic, elastic):
    state = tarifflab.apply_shock(ScenarioState(), 46, params)
    print(f"|PED| {params.ped_magnitude}: P = {state.price_index:.2f}, Q = {state.quantity_index:.2f}")

with tarifflab.sample_path("coffee_scenario.json").open() as fh:
    scenario = tarifflab.TariffScenario.from_json(json.load(fh))

projection = tarifflab.demand_shift(scenario)
print(f"\n{'origin':<12}{'before':>8}{'after':>8}{'cost':>8}")
for o in projection.origins:
    print(f"{o.name:<12}{o.baseline_share:>8.1f}{o.projected_share:>8.1f}{o.cost_index:>8.1f}")
print(f"Vietnam loses {projection.focal_loss:.2f} points")
print(f"share-weighted import price change: {tarifflab.consumer_price_impact(projection):.2%}")

# Every substitute here is cheaper than Vietnam, so the two redistribution
# modes agree. Make Indonesia dearer and they part ways: cheaper_only leaves
# it at baseline, all_others still hands it a slice.
dearer = tuple(tarifflab.Origin(o.name, o.baseline_share, 60.0 if o.name == "Indonesia" else o.tariff)
               for o in scenario.origins)
for mode in ("cheaper_only", ALL_OTHERS):
    p = tarifflab.demand_shift(tarifflab.TariffScenario(dearer, "Vietnam", scenario.params, mode))
    print(f"{mode:<13} Indonesia {p['Indonesia'].projected_share:.2f}  Brazil {p['Brazil'].projected_share:.2f}")
