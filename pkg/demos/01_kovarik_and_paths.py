"""Idempotents between two projections, and paths that stay in the ball."""
import numpy as np

import projgeom as pg
from projgeom import projections as pa

np.set_printoptions(precision=4, suppress=True)

# Two lines in C^2 at 45 degrees
p = np.diag([1.0, 0.0])
q = np.full((2, 2), 0.5)

# p + q - 1 squares to 1/2, so it is invertible and the pair is "close"
print('||p - q|| =', pg.spectral_norm(p - q))
print(pa.ball_predicates(p, q))

# Kovarik's idempotent takes its range from p and its kernel from q
r = pa.kovarik(p, q)
print('r =\n', r.m)
print('same range as p, same kernel as q:',
      pa.range_kernel_match(r, p)[0], pa.range_kernel_match(r, q)[1])

# swapping the roles gives the second idempotent; together they invert p + q - 1
r1, r2 = pa.converse_kovarik(p, q)
print('(r1 + r2 - 1)(p + q - 1) =\n', (r1.m + r2.m - np.eye(2)) @ (p + q - np.eye(2)))

# The straight segments p -> r -> q consist of idempotents
for t in (0.0, 0.25, 0.5, 0.75, 1.0):
    f = pa.idempotent_path(p, q, t).m
    print(f't={t:.2f}  ||f^2 - f|| = {np.linalg.norm(f @ f - f, 2):.1e}')

# Orthogonalizing each f(t) gives a path of projections
for g in pa.sample_projection_path(p, q, np.linspace(0, 1, 5)):
    print('g =', g.m.real.round(4).tolist())

# Far apart pairs have no such path through the ball
try:
    pa.projection_path(p, np.eye(2) - p, 0.5)
except pg.ProjGeomError as exc:
    print('complementary pair:', type(exc).__name__)
