# Balancing loops B1 (via exporter revenue) and B2 (via trade volume) erode
# a tariff shock over time.
import tarifflab
from tarifflab.cld import CLDModel, spectral_radius

model = tarifflab.default_model()
print("default parameters:", model.to_json())
print(f"linearized spectral radius: {spectral_radius(model):.3f}  (< 1 means the shock decays)")

states = tarifflab.simulate(model, shock=46, horizon=200)
for s in states[:4] + states[50::50]:
    print(f"t={s.t:>3}  tariff {s.tariff:6.2f}  volume {s.trade_volume:6.2f}  "
          f"revenue {s.exporter_revenue:6.2f}  pressure {s.pressure:.3f}")

# Without pressure gains nothing pushes back and the tariff stays put.
frozen = tarifflab.simulate(CLDModel(pressure_gain_b1=0, pressure_gain_b2=0), shock=46, horizon=10)
print("open loop tariff after 10 steps:", frozen[-1].tariff)

# Stronger lobbying on the revenue loop speeds up the relief.
fast = tarifflab.simulate(CLDModel(pressure_gain_b1=0.08), shock=46, horizon=200)
first_below = next(s.t for s in fast if s.tariff < 5)
print("steps until the tariff falls below 5% with pressure_gain_b1=0.08:", first_below)
