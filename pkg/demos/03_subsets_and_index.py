"""
Subset scalability and the scalability index
=============================================

A frame is m-scalable when some m of its columns already form a scalable
frame; the smallest such m is the scalability index.  Size-N queries
reduce to finding N pairwise-orthogonal columns, and the index is never
larger than the dimension of the span of the outer products.
"""

import numpy as np

import framescale as fs

r = 1 / np.sqrt(2.0)
onb_plus = fs.build_frame(2, [(1, 0), (0, 1), (r, r)])

print("orthogonal pair:", fs.orthogonal_subbasis(onb_plus))
print("2 of 3, strict:", fs.is_m_scalable(onb_plus, 2, strict=True).scalable)
print("3 of 3, strict:", fs.is_m_scalable(onb_plus, 3, strict=True).scalable)
print("index:", fs.scalability_index(onb_plus).index)

# No orthogonal pair among the 120-degree vectors, so nothing below the
# full size works.
s3 = np.sqrt(3.0)
mercedes = fs.build_frame(2, [(0, 1), (-s3 / 2, -0.5), (s3 / 2, -0.5)])
print("\n120-degree pair query:", fs.is_m_scalable(mercedes, 2).scalable)
res = fs.is_m_scalable(mercedes, 3, strict=True)
print("120-degree full query:", res.scalable, "witness:", res.witness)
print("index:", fs.scalability_index(mercedes).index)

# Appending one generic unit vector to a basis: strictly N-scalable
# through the basis, but never strictly scalable using all N + 1 vectors.
rng = np.random.default_rng(1)
phi = rng.standard_normal(3)
phi /= np.linalg.norm(phi)
frame = fs.build_frame(3, list(np.eye(3)) + [phi])
print("\nbasis + unit vector, strict at 3:",
      fs.is_m_scalable(frame, 3, strict=True).scalable)
print("basis + unit vector, strict at 4:",
      fs.is_m_scalable(frame, 4, strict=True).scalable)
