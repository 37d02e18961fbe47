"""Photon statistics of the thermal source.

A thermal beam does not carry a fixed photon number: counts follow the
geometric law p_n = nbar**n / (nbar + 1)**(n + 1), whose variance
nbar*(nbar + 1) sits well above the Poissonian nbar of a laser.  This
script tabulates the law, samples it, and shows that splitting the beam
on a balanced splitter thins the counts but keeps them geometric.
"""

import numpy as np

from thermalqkd.montecarlo import ThermalSourceSpec, sample_thermal, split_fock

NBAR = 3.0
TRIALS = 50000

src = ThermalSourceSpec.from_mean(NBAR)
print("source mean %.1f, truncation for tables at n = %d" % (NBAR, src.truncation))
print()
print("  n   p_n        cumulative")
pmf = src.pmf()
cum = np.cumsum(pmf)
for n in range(10):
    print("%3d   %.6f   %.6f" % (n, pmf[n], cum[n]))
print("population median: %d" % src.population_median())
print()

rng = np.random.default_rng(2024)
counts = sample_thermal(src, rng, size=TRIALS)
print("%d samples: mean %.3f (expect %.3f), var %.3f (expect %.3f)"
      % (TRIALS, counts.mean(), NBAR, counts.var(), NBAR * (NBAR + 1)))

kept, lost = split_fock(counts, 0.5, rng)
print("after a 50:50 split: mean %.3f, var %.3f (thinned law expects %.3f, %.3f)"
      % (kept.mean(), kept.var(), NBAR / 2, (NBAR / 2) * (NBAR / 2 + 1)))
print("photon conservation holds exactly: %s"
      % bool((kept + lost == counts).all()))
