"""A projection within 1/sqrt(2) of both members of any equal-rank pair."""
import numpy as np

from projgeom import twoproj as tp
from projgeom.sampling import random_same_rank_pair

np.set_printoptions(precision=4, suppress=True)

# A pair with a generic 2x2 block and a complementary 2x2 block
p = np.diag([1.0, 0.0, 1.0, 0.0])
q = np.zeros((4, 4))
q[:2, :2] = 0.5
q[3, 3] = 1.0

dec = tp.pair_decompose(p, q)
print('dims (Im&Im, Ker&Ker, Im&Ker, Ker&Im, generic):', dec.dims)

h = tp.halmos_form(p, q)
print('angles:', h.angles)

# generic blocks are handled by the bisecting line, the complementary
# block by a partial isometry between the two ranges
r, cert = tp.find_common_ball(p, q, certificate=True)
print('r =\n', r.m.real)
print(f'||p - r|| = {cert.dist_p:.6f}, ||q - r|| = {cert.dist_q:.6f}')

# the same bound holds for random pairs
worst = 0.0
for seed in range(300):
    p, q = random_same_rank_pair(2 + seed % 10, seed)
    worst = max(worst, tp.find_common_ball(p, q, certificate=True)[1].max_dist)
# equal to 1/sqrt(2) up to rounding
print('worst distance over 300 pairs:', worst, ' 1/sqrt(2) =', 1 / np.sqrt(2))
