"""Seeded generators of projections and projection pairs.

Pairs are assembled directly from block data (a unitary, the dimensions of
the four intersection pieces, and the generic angles), so the generator does
not depend on the decomposition code it is used to test.
"""

import numpy as np

from .numeric import adjoint
from .projections import Projection, random_projection

__all__ = ['random_unitary', 'pair_from_blocks', 'random_block_pair',
           'random_same_rank_pair', 'random_pair_in_ball', 'random_hermitian',
           'random_projection', 'ANGLE_MARGIN']

# angles closer than this to 0 or pi/2 are resampled
ANGLE_MARGIN = 1e-4


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) \
        else np.random.default_rng(seed)


def random_unitary(n, seed):
    rng = _rng(seed)
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_hermitian(n, seed, scale=1.0):
    rng = _rng(seed)
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * 0.5 * (z + adjoint(z))


def pair_from_blocks(u, d11, d00, d10, d01, angles):
    """``(p, q)`` equal to ``u (P (+) Q) u^*`` for the canonical block data."""
    n = u.shape[0]
    k = d11 + d00 + d10 + d01
    if k + 2 * len(angles) != n:
        raise ValueError('block dimensions do not add up to n')
    pd = np.r_[np.ones(d11), np.zeros(d00), np.ones(d10), np.zeros(d01)]
    qd = np.r_[np.ones(d11), np.zeros(d00), np.zeros(d10), np.ones(d01)]
    pb = np.zeros((n, n), dtype=complex)
    qb = np.zeros((n, n), dtype=complex)
    pb[:k, :k] = np.diag(pd)
    qb[:k, :k] = np.diag(qd)
    for i, theta in enumerate(angles):
        c, s = np.cos(theta), np.sin(theta)
        j = k + 2 * i
        pb[j:j + 2, j:j + 2] = np.array([[1.0, 0.0], [0.0, 0.0]])
        qb[j:j + 2, j:j + 2] = np.array([[c * c, c * s], [c * s, s * s]])
    p = u @ pb @ adjoint(u)
    q = u @ qb @ adjoint(u)
    p = 0.5 * (p + adjoint(p))
    q = 0.5 * (q + adjoint(q))
    return Projection.from_matrix(p), Projection.from_matrix(q)


def _angles(rng, g, lo=ANGLE_MARGIN, hi=np.pi / 2 - ANGLE_MARGIN):
    return np.sort(rng.uniform(lo, hi, size=g))


def random_block_pair(n, seed, same_rank=True, max_angle=None):
    """Random pair with random piece dimensions and random generic angles.

    Returns ``(p, q, data)`` where ``data`` holds the block dimensions and
    angles used, for use as an oracle.
    """
    rng = _rng(seed)
    g = int(rng.integers(0, n // 2 + 1))
    rest = n - 2 * g
    if same_rank:
        d10 = int(rng.integers(0, rest // 2 + 1))
        d01 = d10
    else:
        d10 = int(rng.integers(0, rest + 1))
        d01 = int(rng.integers(0, rest - d10 + 1))
    left = rest - d10 - d01
    d11 = int(rng.integers(0, left + 1))
    d00 = left - d11
    hi = np.pi / 2 - ANGLE_MARGIN if max_angle is None else max_angle
    angles = _angles(rng, g, hi=hi)
    u = random_unitary(n, rng)
    p, q = pair_from_blocks(u, d11, d00, d10, d01, angles)
    data = {'dims': (d11, d00, d10, d01, 2 * g), 'angles': angles, 'u': u}
    return p, q, data


def random_same_rank_pair(n, seed):
    """Equal-rank pair; alternates Gaussian frames and block-built pairs.

    Gaussian pairs cover the typical case, block-built pairs force the
    intersection pieces (in particular ``Im p & Ker q``) to appear.
    """
    rng = _rng(seed)
    if rng.random() < 0.5:
        k = int(rng.integers(0, n + 1))
        s1, s2 = rng.integers(0, 2 ** 32, size=2)
        return random_projection(n, k, int(s1)), random_projection(n, k, int(s2))
    p, q, _ = random_block_pair(n, rng, same_rank=True)
    return p, q


def random_pair_in_ball(n, seed, max_dist=0.95):
    """Equal-rank pair with ``||p - q|| <= max_dist`` (no ``Im p & Ker q``)."""
    rng = _rng(seed)
    g = int(rng.integers(0, n // 2 + 1))
    rest = n - 2 * g
    d11 = int(rng.integers(0, rest + 1))
    d00 = rest - d11
    angles = _angles(rng, g, hi=np.arcsin(max_dist))
    u = random_unitary(n, rng)
    return pair_from_blocks(u, d11, d00, 0, 0, angles)
