"""Affine coordinates on the Grassmannian, classical and general."""
import numpy as np

from projgeom import atlas, projections as pa

np.set_printoptions(precision=4, suppress=True)

# A plane in C^4 and the coordinate chart that sees it best
q = pa.random_projection(4, 2, seed=5)
index = atlas.chart_select(q)
print('chart rows:', index.indices)

# Coordinates: the frame with an identity minor on those rows
a = atlas.classical_affine_coords(q, index)
frame = atlas.frame_from_coords(a, index)
print('frame =\n', frame)
back = atlas.projection_from_frame(frame)
print('round trip error:', np.linalg.norm(back.m - q.m, 2))

# The general chart at any base point p: x = q (p + q - 1)^-2 p - p
p = np.diag([1.0, 0.0])
for z in (1, 1j, 2):
    x = np.array([[0, 0], [z, 0]], dtype=complex)
    q = atlas.phi_inverse(p, x)
    print(f'z = {z}:\n', q.m)
    print('  recovered z:', atlas.phi(p, q).x[1, 0])

# Every x lands inside the unit ball around p, however large
q = atlas.phi_inverse(p, np.array([[0, 0], [1e3, 0]]))
print('||p - q|| for z = 1000:', np.linalg.norm(p - q.m, 2))

# Changing base point
y = atlas.chart_transition(p, np.diag([0.0, 1.0]), np.array([[0, 0], [1, 0]]))
print('same point in the opposite chart:\n', y.x)
