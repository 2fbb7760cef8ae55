# Country typologies in (reciprocal tariff, ECI) space with k = 4.
import numpy as np

import tarifflab
from tarifflab.cluster import cluster_dataset, raw_centroids

dataset = tarifflab.load_dataset(tarifflab.sample_path())
model, points = cluster_dataset(dataset, k=4, seed=42, restarts=10)

print(f"inertia (standardized units): {model.inertia:.3f} after {model.n_iter} Lloyd iterations")
centroids = raw_centroids(model, points)
for c in range(model.k):
    tariff, eci = centroids[c]
    print(f"\nGroup {c + 1}: {model.labels[c]}  (mean tariff {tariff:.1f}%, mean ECI {eci:+.2f})")
    print("  ", ", ".join(model.members(c)))
    print("   hull:", [(round(x, 1), round(y, 2)) for x, y in model.hulls[c]])

# Same seed, same answer, whatever order the countries arrive in.
shuffled = list(points)
np.random.default_rng(0).shuffle(shuffled)
again = tarifflab.kmeans(shuffled, k=4, seed=42, restarts=10)
print("\nidentical after shuffling:", again.assignments == model.assignments)

# The three-feature variant also uses the tariff charged to the US.
model3, _ = cluster_dataset(dataset, k=4, seed=42, include_charged=True)
print("three-feature labels:", model3.labels)
