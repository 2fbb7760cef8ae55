# Discounted reciprocity: does the US reciprocal tariff grow less than
# one-for-one with the tariff a partner charges the US?
import tarifflab
from tarifflab.regress import assess_reciprocity, fit_ols, tariff_points

dataset = tarifflab.load_dataset(tarifflab.sample_path())
print(f"{len(dataset)} countries loaded from the illustrative sample")

# Validation never raises; it collects problems for the caller to act on.
report = tarifflab.validate_dataset(dataset)
print("errors:", len(report.errors), " warnings:", len(report.warnings))

fit = fit_ols(tariff_points(dataset))
print(f"reciprocal = {fit.intercept:.2f} + {fit.slope:.3f} * charged   (r^2 = {fit.r_squared:.3f})")

verdict = assess_reciprocity(fit)
print("discounted:", verdict.is_discounted, f" discount factor {verdict.discount_factor:.3f}")

# Residuals show who sits above or below the fitted line; the 10% floor
# pushes low-tariff partners above it.
ranked = sorted(zip(dataset.names, fit.residuals), key=lambda p: p[1])
print("furthest below the line:", [(n, round(r, 1)) for n, r in ranked[:3]])
print("furthest above the line:", [(n, round(r, 1)) for n, r in ranked[-3:]])

# A partner following the pure "half the charged rate" rule lands exactly on y = 0.5x.
print(fit_ols([(0, 0), (40, 20), (90, 45)]).slope)
