"""
How fragile is scalability?
===========================

With fewer than N(N+1)/2 vectors, scalable frames have empty interior:
arbitrarily close to any of them (in the constructive regime) lies a
non-scalable frame, and the witness below builds one at any requested
distance.  Non-scalable frames behave oppositely: their separator margin
certifies a whole ball of non-scalable neighbors.
"""

import numpy as np

import framescale as fs

r = 1 / np.sqrt(3.0)
base = fs.build_frame(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (r, r, r)])
print("base scalable:", fs.decide(base).scalable)

for eps in (1e-1, 1e-2, 1e-3):
    wit = fs.nonscalable_witness(base, eps, seed=0)
    print(f"eps {eps:.0e}: moved column {wit.column} by {wit.delta:.2e}, "
          f"separator margin {wit.verdict.certificate.margin:.2e}")

# Generic frames attain the maximal outer-product span dimension, which
# is what the witness construction relies on.
probe = fs.generic_dimension_probe(3, 4, trials=200, seed=7)
print("\ngeneric span dimension hit rate:", probe.fraction)

# A non-scalable frame keeps its verdict inside a certified radius.
quadrant = fs.build_frame(2, [
    (1 / np.sqrt(2), 1 / np.sqrt(2)),
    (2 / np.sqrt(5), 1 / np.sqrt(5)),
    (1 / np.sqrt(5), 2 / np.sqrt(5)),
])
probe = fs.closedness_probe(quadrant, seed=11, samples=100)
print(f"\nnon-scalable within radius {probe.radius:.3f}: "
      f"{probe.fraction_nonscalable:.0%} of samples at half that radius")
