"""
Frames, frame bounds, and tightness
===================================

A frame for R^N is a spanning family of M >= N vectors, stored as the
columns of an N x M matrix.  The optimal frame bounds are the extreme
eigenvalues of Phi Phi^T; the frame is tight when they coincide.
"""

import numpy as np

import framescale as fs

# The standard basis is the simplest tight frame: Phi Phi^T = I.
onb = fs.build_frame(2, [(1, 0), (0, 1)])
print("basis bounds:", fs.frame_bounds(onb))
print("basis tight: ", fs.is_tight(onb))

# Three unit vectors at 120-degree angles: tight with constant 3/2,
# the redundancy M/N.
s3 = np.sqrt(3.0)
mercedes = fs.build_frame(2, [(0, 1), (-s3 / 2, -0.5), (s3 / 2, -0.5)])
print("\nthree-at-120-degrees bounds:", fs.frame_bounds(mercedes))
print("tight:", fs.is_tight(mercedes))

# Appending a diagonal vector to the basis breaks tightness: the dual
# Gram matrix picks up an off-diagonal 1/2.
r = 1 / np.sqrt(2.0)
onb_plus = fs.build_frame(2, [(1, 0), (0, 1), (r, r)])
t = fs.is_tight(onb_plus)
print("\nbasis + diagonal residual:", t.residual, "tight:", t.tight)

# Rotations leave the bounds alone.
ang = np.pi / 7
rot = np.array([[np.cos(ang), -np.sin(ang)], [np.sin(ang), np.cos(ang)]])
rotated = fs.apply_orthogonal(onb_plus, rot)
print("\nbounds before:", fs.frame_bounds(onb_plus))
print("bounds after: ", fs.frame_bounds(rotated))
