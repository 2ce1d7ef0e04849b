"""
Deciding scalability with certificates
======================================

A frame is scalable when nonnegative column rescalings can make it tight.
The decision runs a linear program over the transformed columns F(phi_k)
and always produces a checkable certificate: scaling weights on the
positive side, a strictly separating direction on the negative side.
"""

import numpy as np

import framescale as fs

s3 = np.sqrt(3.0)
mercedes = fs.build_frame(2, [(0, 1), (-s3 / 2, -0.5), (s3 / 2, -0.5)])

v = fs.decide(mercedes)
print("three-at-120-degrees scalable:", v.scalable, "strict:", v.strict)
print("weights:", v.certificate.u, "tight constant:", v.certificate.alpha)
print("residual:", v.certificate.residual)

# All vectors in an open quadrant: every product phi(0) phi(1) is
# positive, so no rescaling can ever cancel the off-diagonal Gram entry.
quadrant = fs.build_frame(2, [
    (1 / np.sqrt(2), 1 / np.sqrt(2)),
    (2 / np.sqrt(5), 1 / np.sqrt(5)),
    (1 / np.sqrt(5), 2 / np.sqrt(5)),
])
print("\nquadrant sign witness:", fs.sign_quick_reject(quadrant))
v = fs.decide(quadrant)
print("quadrant scalable:", v.scalable)
print("separator margin:", v.certificate.margin)
print("separator direction:", v.certificate.h)

# Scalable but only by dropping a vector: the diagonal column is forced
# to weight zero, so the frame is not strictly scalable.
r = 1 / np.sqrt(2.0)
onb_plus = fs.build_frame(2, [(1, 0), (0, 1), (r, r)])
v = fs.decide(onb_plus)
print("\nbasis + diagonal scalable:", v.scalable, "strict:", v.strict)
print("support:", v.certificate.support, "max-min weight:", v.s_star)

# The exact back-end re-derives the same verdicts in rational arithmetic.
exact_v = fs.exact_oracle(onb_plus)
print("\nexact weights:", exact_v.certificate.u_exact)

# Rescale and confirm tightness end to end.
scaled = fs.apply_scaling(onb_plus, v.certificate, parseval=True)
print("rescaled tight:", fs.is_tight(scaled))
