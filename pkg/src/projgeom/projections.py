"""Idempotents, projections, and the algebra relating pairs of them.

The central construction is Kovarik's formula: when ``p + q - 1`` is
invertible, ``r = p (p + q - 1)^{-2} q`` is the idempotent with the range of
``p`` and the kernel of ``q``.  It yields piecewise affine idempotent paths,
and from those, projection-valued paths.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from . import numeric as nm
from .errors import (BadRank, CertificationError, NormNotLessThanOne,
                     NotAProjection, Singular, SumNotInvertible)
from .numeric import DEFAULT_TOL, adjoint, as_matrix, eye, spectral_norm

__all__ = [
    'Idempotent', 'Projection', 'Kind', 'BallReport',
    'classify', 'complement', 'order_leq', 'mv_equivalent',
    'violates_finiteness', 'kovarik', 'converse_kovarik',
    'range_kernel_match', 'imker_residuals', 'ball_predicates',
    'idempotent_path', 'projection_path', 'sample_projection_path',
    'random_projection',
]


def _idem_residual(m):
    return spectral_norm(m @ m - m)


def _herm_residual(m):
    return spectral_norm(m - adjoint(m))


@dataclass(frozen=True, eq=False)
class Idempotent:
    """A square matrix ``e`` with ``e^2 = e``, with its residual on record."""
    m: np.ndarray = field(repr=False)
    residual: float

    @classmethod
    def from_matrix(cls, m, tol=DEFAULT_TOL):
        m = as_matrix(m)
        if m.shape[0] != m.shape[1]:
            raise NotAProjection(f'matrix is not square: {m.shape}')
        res = _idem_residual(m)
        if res > tol.residual_tol:
            raise NotAProjection(f'||e^2 - e|| = {res:.3e}')
        return cls(m, res)

    @property
    def n(self):
        return self.m.shape[0]

    def complement(self):
        return complement(self)


@dataclass(frozen=True, eq=False)
class Projection(Idempotent):
    """A self-adjoint idempotent."""
    herm_residual: float
    rank: int

    @classmethod
    def from_matrix(cls, m, tol=DEFAULT_TOL):
        m = as_matrix(m)
        if m.shape[0] != m.shape[1]:
            raise NotAProjection(f'matrix is not square: {m.shape}')
        res = _idem_residual(m)
        herm = _herm_residual(m)
        if res > tol.residual_tol or herm > tol.residual_tol:
            raise NotAProjection(
                f'||p^2 - p|| = {res:.3e}, ||p - p*|| = {herm:.3e}')
        return cls(m, res, herm, int(round(np.trace(m).real)))

    @classmethod
    def from_subspace(cls, s):
        return cls.from_matrix(nm.projector_of(s))

    def range(self):
        return nm.range_basis(self.m)

    def kernel(self):
        return nm.range_basis(eye(self.n) - self.m)


class Kind(enum.Enum):
    PROJECTION = 'projection'
    IDEMPOTENT = 'idempotent'
    NEITHER = 'neither'


def classify(m, tol=DEFAULT_TOL):
    """Decide whether a square matrix is a projection, an idempotent, or neither."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f'matrix is not square: {m.shape}')
    if _idem_residual(m) > tol.residual_tol:
        return Kind.NEITHER
    if _herm_residual(m) > tol.residual_tol:
        return Kind.IDEMPOTENT
    return Kind.PROJECTION


def _coerce(e, tol=DEFAULT_TOL):
    if isinstance(e, Idempotent):
        return e
    m = as_matrix(e)
    if classify(m, tol) is Kind.PROJECTION:
        return Projection.from_matrix(m, tol)
    return Idempotent.from_matrix(m, tol)


def _coerce_projection(p, tol=DEFAULT_TOL):
    if isinstance(p, Projection):
        return p
    return Projection.from_matrix(p, tol)


def complement(e):
    """``1 - e``; a projection stays a projection."""
    e = _coerce(e)
    m = eye(e.n) - e.m
    if isinstance(e, Projection):
        return Projection(m, e.residual, e.herm_residual, e.n - e.rank)
    return Idempotent(m, e.residual)


def order_leq(p, q, tol=DEFAULT_TOL):
    """``p <= q`` in the projection order, i.e. ``pq = qp = p``."""
    p, q = as_matrix(p), as_matrix(q)
    return bool(spectral_norm(p @ q - p) <= tol.residual_tol
                and spectral_norm(q @ p - p) <= tol.residual_tol)


def mv_equivalent(p, q, tol=DEFAULT_TOL):
    """Murray-von Neumann equivalence in a full matrix algebra.

    Two projections in ``M_n`` are equivalent, unitarily equivalent and
    homotopic exactly when their ranks agree, so this only compares ranks.
    """
    p, q = _coerce_projection(p, tol), _coerce_projection(q, tol)
    if p.n != q.n:
        raise ValueError('projections act on spaces of different dimension')
    return p.rank == q.rank


def violates_finiteness(p, q, tol=DEFAULT_TOL, dist_tol=1e-10):
    """True if ``p <= q`` and ``p ~ q`` but ``p != q``.

    Never true in ``M_n``; exposed so the finiteness property can be tested
    directly.
    """
    if not (order_leq(p, q, tol) and mv_equivalent(p, q, tol)):
        return False
    return spectral_norm(as_matrix(p) - as_matrix(q)) > dist_tol


def _sum_inverse(p, q, tol):
    s = p + q - eye(p.shape[0])
    try:
        return nm.solve_inverse(s, tol, scale=max(spectral_norm(s), 1.0))
    except Singular as exc:
        raise SumNotInvertible('p + q - 1 is not invertible',
                               exc.min_singular_value) from None


def imker_residuals(p, q):
    """The four residuals that decide ``Im p = Im q`` and ``Ker p = Ker q``.

    Returns ``(||p'q||, ||q'p||, ||pq'||, ||qp'||)`` where ``x' = 1 - x``.
    The first two vanish iff the ranges agree, the last two iff the kernels
    agree.
    """
    p, q = as_matrix(p), as_matrix(q)
    one = eye(p.shape[0])
    pc, qc = one - p, one - q
    return (spectral_norm(pc @ q), spectral_norm(qc @ p),
            spectral_norm(p @ qc), spectral_norm(q @ pc))


def range_kernel_match(p, q, tol=DEFAULT_TOL):
    """Return ``(same_range, same_kernel)`` for two idempotents."""
    r1, r2, k1, k2 = imker_residuals(p, q)
    t = tol.residual_tol
    return (r1 <= t and r2 <= t), (k1 <= t and k2 <= t)


def kovarik(p, q, tol=DEFAULT_TOL):
    """Kovarik's idempotent ``r = p (p + q - 1)^{-2} q``.

    Parameters
    ----------
    p, q : Idempotent or array_like
        Idempotents of the same size with ``p + q - 1`` invertible.
    tol : ToleranceConfig

    Returns
    -------
    Idempotent
        ``r`` with ``Im r = Im p`` and ``Ker r = Ker q``.  Both identities are
        checked through :func:`imker_residuals` before returning.

    Raises
    ------
    SumNotInvertible
        If the smallest singular value of ``p + q - 1`` is below
        ``tol.inv_tol`` (relative to ``max(||p + q - 1||, 1)``).
    CertificationError
        If a range/kernel residual exceeds ``tol.residual_tol``, or
        ``||r^2 - r||`` exceeds ``tol.residual_tol * max(1, ||r||)^2``.  This
        happens only very close to the singular boundary.
    """
    pm, qm = as_matrix(p), as_matrix(q)
    inv = _sum_inverse(pm, qm, tol)
    r = pm @ inv @ inv @ qm
    range_res = imker_residuals(r, pm)[:2]
    kernel_res = imker_residuals(r, qm)[2:]
    worst = max(range_res + kernel_res)
    if worst > tol.residual_tol:
        raise CertificationError(
            f'Kovarik idempotent misses its range/kernel checks by {worst:.3e}')
    # rounding in an oblique idempotent grows like ||r||^2
    res = _idem_residual(r)
    if res > tol.residual_tol * max(1.0, spectral_norm(r)) ** 2:
        raise CertificationError(f'||r^2 - r|| = {res:.3e}')
    return Idempotent(r, res)


def converse_kovarik(p, q, tol=DEFAULT_TOL):
    """The idempotents ``r1 = kovarik(p, q)`` and ``r2 = kovarik(q, p)``.

    ``r1 + r2 - 1`` inverts ``p + q - 1``; this is checked at
    ``tol.residual_tol`` before returning.
    """
    pm, qm = as_matrix(p), as_matrix(q)
    r1 = kovarik(pm, qm, tol)
    r2 = kovarik(qm, pm, tol)
    one = eye(pm.shape[0])
    err = spectral_norm((r1.m + r2.m - one) @ (pm + qm - one) - one)
    if err > tol.residual_tol:
        raise CertificationError(
            f'r1 + r2 - 1 fails to invert p + q - 1 by {err:.3e}')
    return r1, r2


@dataclass(frozen=True)
class BallReport:
    """Three independent tests of ``||p - q|| < 1`` for projections.

    invertible_sum: ``p + q - 1`` is invertible.
    norm_lt_one: ``||p - q|| < 1``.
    direct_sum: ``C^n = Im p (+) Ker q``.
    """
    invertible_sum: bool
    norm_lt_one: bool
    direct_sum: bool
    norm_value: float
    min_sv_sum: float

    @property
    def agree(self):
        return self.invertible_sum == self.norm_lt_one == self.direct_sum


def ball_predicates(p, q, tol=DEFAULT_TOL):
    """Evaluate the three equivalent membership tests for ``q`` in ``U_p``.

    Each flag is computed on its own: the smallest singular value of
    ``p + q - 1``, the spectral norm of ``p - q``, and the rank of the
    concatenated bases of ``Im p`` and ``Ker q``.
    """
    p, q = _coerce_projection(p, tol), _coerce_projection(q, tol)
    n = p.n
    if q.n != n:
        raise ValueError('projections act on spaces of different dimension')
    if n == 0:
        return BallReport(True, True, True, 0.0, 0.0)

    s = p.m + q.m - eye(n)
    svals = np.linalg.svd(s, compute_uv=False)
    min_sv = float(svals[-1])
    invertible = min_sv > tol.inv_tol * max(float(svals[0]), 1.0)

    norm_value = spectral_norm(p.m - q.m)
    norm_lt_one = norm_value < 1.0 - tol.rank_tol

    frame = np.hstack([p.range().basis, q.kernel().basis])
    if frame.shape[1] != n:
        direct = False
    else:
        fsv = np.linalg.svd(frame, compute_uv=False)
        direct = bool(fsv[-1] > tol.rank_tol)
    return BallReport(bool(invertible), bool(norm_lt_one), direct,
                      norm_value, min_sv)


def idempotent_path(p, q, t, tol=DEFAULT_TOL):
    """Point ``f(t)`` on the two-segment idempotent path from ``p`` to ``q``.

    The path runs affinely from ``p`` to ``r = kovarik(p, q)`` on
    ``[0, 1/2]`` and from ``r`` to ``q`` on ``[1/2, 1]``; every point is an
    idempotent.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f't must lie in [0, 1], got {t!r}')
    pm, qm = as_matrix(p), as_matrix(q)
    r = kovarik(pm, qm, tol).m
    return _segment_point(pm, r, qm, t)


def _segment_point(pm, r, qm, t):
    if t == 0.0:
        return Idempotent(pm.copy(), _idem_residual(pm))
    if t == 1.0:
        return Idempotent(qm.copy(), _idem_residual(qm))
    if t <= 0.5:
        f = pm + 2.0 * t * (r - pm)
    else:
        f = r + (2.0 * t - 1.0) * (qm - r)
    return Idempotent(f, _idem_residual(f))


def _orthogonalize(f, tol):
    # projection onto Im f along (Im f)^perp
    fm = f.m
    g = kovarik(fm, adjoint(fm), tol).m
    return Projection.from_matrix(0.5 * (g + adjoint(g)), tol)


def projection_path(p, q, t, tol=DEFAULT_TOL):
    """Point ``g(t) = f (f + f^* - 1)^{-2} f^*`` on a projection path.

    ``f = idempotent_path(p, q, t)``; ``g(t)`` is the orthogonal projection
    onto ``Im f(t)``, so ``g(0) = p`` and ``g(1) = q``.

    Raises
    ------
    NormNotLessThanOne
        If ``||p - q|| >= 1``.
    """
    samples = sample_projection_path(p, q, [t], tol)
    return samples[0]


def sample_projection_path(p, q, ts, tol=DEFAULT_TOL):
    """Evaluate :func:`projection_path` at several times, sharing the setup."""
    pm = _coerce_projection(p, tol).m
    qm = _coerce_projection(q, tol).m
    dist = spectral_norm(pm - qm)
    if dist >= 1.0:
        raise NormNotLessThanOne(f'||p - q|| = {dist:.17g}')
    try:
        r = kovarik(pm, qm, tol).m
    except SumNotInvertible:
        raise NormNotLessThanOne(
            f'||p - q|| = {dist:.17g} is numerically 1') from None
    out = []
    for t in ts:
        if not 0.0 <= t <= 1.0:
            raise ValueError(f't must lie in [0, 1], got {t!r}')
        out.append(_orthogonalize(_segment_point(pm, r, qm, t), tol))
    return out


def random_projection(n, k, seed):
    """Rank-``k`` projection on ``C^n`` drawn from a seeded Gaussian frame.

    The range is spanned by ``k`` columns of a complex Gaussian matrix,
    orthonormalized by QR.
    """
    if not 0 <= k <= n:
        raise BadRank(f'need 0 <= k <= n, got k={k}, n={n}')
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    if k == 0:
        return Projection(np.zeros((n, n), dtype=complex), 0.0, 0.0, 0)
    basis, _ = np.linalg.qr(g)
    return Projection.from_subspace(nm.Subspace(basis))
