"""Does (Omega, lambda) = (100, 5.1) hold exactly one tunneling doublet?

Prints the two variational counts next to the exact levels and the barrier
top so the three answers can be compared side by side.
"""

from rabitunnel import ModelParams, converged_spectrum
from rabitunnel.potential import barrier_stats, doublet_counts, exact_doublets

params = ModelParams(100.0, 5.1)
counts = doublet_counts(params)
stats = barrier_stats(params)
spec = converged_spectrum(params, k=8)
levels = spec.eigenvalues[:8]

print(f"energy bound          N < {counts.energy_bound:.4f}")
print(f"overlap count         {counts.overlap_count}")
print(f"barrier height        {stats.barrier_height:.4f}")
print(f"well bottom / top     {stats.minimum_value:.4f} / {stats.barrier_value:.4f}")
print("lowest exact levels   " + " ".join(f"{e:.4f}" for e in levels))
print("splittings            " + " ".join(f"{b - a:.4f}" for a, b in zip(levels[::2], levels[1::2])))
print(f"pairs below barrier   {exact_doublets(levels, barrier=stats.barrier_value)}")
