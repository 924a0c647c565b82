"""Affine coordinate charts on Grassmannians.

Classical charts: a k-dimensional subspace ``F`` of C^n whose frame has an
invertible minor on the rows ``I`` has a unique frame with that minor equal
to the identity; the remaining ``(n - k) x k`` entries are its affine
coordinates.  The chart domain is the open unit ball around the coordinate
projection ``p_I``.

General charts: for any projection ``p`` the map

    phi_p(q) = q (p + q - 1)^{-2} p - p

sends the ball ``{q : ||q - p|| < 1}`` homeomorphically onto the linear space
``p' M p`` (``p' = 1 - p``), with rational inverse

    x  ->  (p + x) (p + x^* x)^{-1} (p + x^*),

the inverse of ``p + x^* x`` being taken inside ``pMp``.

Row indices are 0-based throughout.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import numeric as nm
from .errors import (FrameDeficient, NotInBall, NotInChart, NotInOverlap,
                     SumNotInvertible)
from .numeric import DEFAULT_TOL, adjoint, as_matrix, eye, spectral_norm
from .projections import Projection, _coerce_projection, kovarik

__all__ = [
    'ChartIndex', 'AffineCoordinates', 'standard_projection',
    'projection_from_frame', 'frame_from_coords', 'classical_affine_coords',
    'chart_select', 'phi', 'phi_inverse', 'chart_transition',
    'standard_index_of',
]


@dataclass(frozen=True)
class ChartIndex:
    """A strictly increasing tuple of row indices in ``range(n)``."""
    n: int
    indices: tuple

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f'indices must be strictly increasing: {idx}')
        if idx and not (0 <= idx[0] and idx[-1] < self.n):
            raise ValueError(f'indices out of range for n={self.n}: {idx}')
        object.__setattr__(self, 'indices', idx)

    @property
    def k(self):
        return len(self.indices)

    @property
    def complement(self):
        chosen = set(self.indices)
        return tuple(i for i in range(self.n) if i not in chosen)


@dataclass(frozen=True, eq=False)
class AffineCoordinates:
    """A point ``x`` of ``p' M p`` together with its basepoint ``p``.

    ``x`` is kept as a full n x n matrix, so no basis of ``p' M p`` has to be
    chosen.
    """
    basepoint: Projection
    x: np.ndarray = field(repr=False)

    def __post_init__(self):
        x = as_matrix(self.x)
        p = self.basepoint.m
        pc = eye(p.shape[0]) - p
        if x.shape != p.shape:
            raise ValueError(f'coordinate shape {x.shape} != {p.shape}')
        defect = spectral_norm(x - pc @ x @ p)
        if defect > 1e-10 * max(1.0, spectral_norm(x)):
            raise ValueError(f"x is not in p'Mp (defect {defect:.3e})")
        object.__setattr__(self, 'x', x)

    @classmethod
    def project(cls, p, m):
        """Coordinates ``p' m p`` obtained by compressing an arbitrary matrix."""
        p = _coerce_projection(p)
        pc = eye(p.n) - p.m
        return cls(p, pc @ as_matrix(m) @ p.m)


def standard_projection(index):
    """Coordinate projection ``p_I`` onto ``span{e_i : i in I}``."""
    d = np.zeros(index.n)
    d[list(index.indices)] = 1.0
    m = np.diag(d).astype(complex)
    return Projection(m, 0.0, 0.0, index.k)


def standard_index_of(p, tol=DEFAULT_TOL):
    """Return the :class:`ChartIndex` if ``p`` is a coordinate projection, else None."""
    m = as_matrix(p)
    d = np.diag(m)
    if spectral_norm(m - np.diag(d)) > tol.residual_tol:
        return None
    ones = np.abs(d - 1.0) <= tol.residual_tol
    zeros = np.abs(d) <= tol.residual_tol
    if not np.all(ones | zeros):
        return None
    return ChartIndex(m.shape[0], tuple(np.flatnonzero(ones)))


def projection_from_frame(l, tol=DEFAULT_TOL):
    """Projection ``L (L^* L)^{-1} L^*`` onto the column span of a frame.

    Raises
    ------
    FrameDeficient
        If ``L`` is not left-invertible, i.e. ``s_min <= inv_tol * s_max``.
    """
    l = as_matrix(l)
    n, k = l.shape
    if k > n:
        raise FrameDeficient(f'{k} columns cannot be independent in C^{n}')
    if k == 0:
        return Projection(np.zeros((n, n), dtype=complex), 0.0, 0.0, 0)
    s = np.linalg.svd(l, compute_uv=False)
    if s[-1] <= tol.inv_tol * s[0]:
        raise FrameDeficient(f'frame has smallest singular value {s[-1]:.3e}')
    # QR yields the same projector with better conditioning than the normal equations
    qmat, _ = np.linalg.qr(l)
    return Projection.from_subspace(nm.Subspace(qmat))


def frame_from_coords(a, index):
    """The frame with identity on rows ``I`` and ``a`` on the other rows."""
    a = as_matrix(a)
    n, k = index.n, index.k
    if a.shape != (n - k, k):
        raise ValueError(f'expected a {(n - k, k)} block, got {a.shape}')
    l = np.zeros((n, k), dtype=complex)
    l[list(index.indices), :] = np.eye(k)
    l[list(index.complement), :] = a
    return l


def classical_affine_coords(q, index, tol=DEFAULT_TOL):
    """Affine coordinates of ``Im q`` in the chart of the index set ``I``.

    The coordinates are read off Kovarik's idempotent
    ``q (q + p_I - 1)^{-2} p_I``, whose columns ``I`` form the normalized frame
    (identity on rows ``I``) and whose other columns vanish.

    Raises
    ------
    NotInChart
        If ``||q - p_I|| >= 1``.
    """
    q = _coerce_projection(q, tol)
    if q.rank != index.k or q.n != index.n:
        raise NotInChart(f'rank-{q.rank} projection on C^{q.n} is not in the '
                         f'chart of a {index.k}-subset of {index.n} rows')
    p_i = standard_projection(index)
    try:
        r = kovarik(q.m, p_i.m, tol).m
    except SumNotInvertible:
        raise NotInChart(f'projection is not in the chart {index.indices}') \
            from None
    rows, comp = list(index.indices), list(index.complement)
    return r[np.ix_(comp, rows)]


def _greedy_rows(b, rel_tie=1e-12):
    """Businger-Golub style row pivoting on an orthonormal frame."""
    n, k = b.shape
    resid = b.copy()
    chosen = []
    for _ in range(k):
        norms = np.linalg.norm(resid, axis=1)
        norms[chosen] = -1.0
        best = norms.max()
        # ties resolved towards the smallest row index
        i = int(np.flatnonzero(norms >= best - rel_tie * max(best, 1.0))[0])
        chosen.append(i)
        row = resid[i] / np.linalg.norm(resid[i])
        resid = resid - np.outer(resid @ np.conj(row), row)
    return tuple(sorted(chosen))


def _min_minor_sv(b, rows):
    return np.linalg.svd(b[list(rows), :], compute_uv=False)[-1]


def chart_select(q, tol=DEFAULT_TOL, exhaustive=False):
    """A coordinate chart ``I`` whose ball around ``p_I`` contains ``q``.

    The default uses greedy row pivoting on an orthonormal frame of ``Im q``.
    With ``exhaustive=True`` (``n <= 8`` only) every ``k``-subset is tried
    and the one maximizing the smallest singular value of the minor wins,
    ties going to the lexicographically smallest subset.
    """
    q = _coerce_projection(q, tol)
    b = q.range().basis
    n, k = b.shape
    if not exhaustive:
        return ChartIndex(n, _greedy_rows(b))
    if n > 8:
        raise ValueError('exhaustive chart search is limited to n <= 8')
    best, best_rows = -1.0, None
    for rows in itertools.combinations(range(n), k):
        s = _min_minor_sv(b, rows) if k else 1.0
        if s > best * (1 + 1e-12) + 1e-15:
            best, best_rows = s, rows
    return ChartIndex(n, best_rows)


def phi(p, q, tol=DEFAULT_TOL):
    """Chart map ``q -> q (p + q - 1)^{-2} p - p`` centred at ``p``.

    Raises
    ------
    NotInBall
        If ``p + q - 1`` is not invertible, i.e. ``||p - q|| >= 1``.
    """
    p, q = _coerce_projection(p, tol), _coerce_projection(q, tol)
    try:
        r = kovarik(q.m, p.m, tol).m
    except SumNotInvertible:
        raise NotInBall('q is not in the unit ball around p') from None
    x = r - p.m
    pc = eye(p.n) - p.m
    # remove rounding outside p'Mp
    return AffineCoordinates(p, pc @ x @ p.m)


def phi_inverse(p, x, tol=DEFAULT_TOL):
    """Rational parametrization of the ball around ``p`` by ``p' M p``.

    ``x`` may be :class:`AffineCoordinates` or a raw matrix in ``p' M p``.
    Defined for every ``x``: ``p + x^* x`` is always invertible in ``pMp``.
    """
    p = _coerce_projection(p, tol)
    xm = x.x if isinstance(x, AffineCoordinates) else \
        AffineCoordinates(p, x).x
    one = eye(p.n)
    # (1 + x^*x)^{-1} = (p + x^*x)^{-1} (+) p' since x^*x lives in pMp
    k = np.linalg.solve(one + adjoint(xm) @ xm, one) - (one - p.m)
    q = (p.m + xm) @ k @ (p.m + adjoint(xm))
    return Projection.from_matrix(0.5 * (q + adjoint(q)), tol)


def chart_transition(p1, p2, x, tol=DEFAULT_TOL):
    """Transition map ``phi_{p2} o phi_{p1}^{-1}`` on the overlap of two charts.

    Raises
    ------
    NotInOverlap
        If ``phi_inverse(p1, x)`` is not in the ball around ``p2``.
    """
    q = phi_inverse(p1, x, tol)
    try:
        return phi(p2, q, tol)
    except NotInBall:
        raise NotInOverlap('point lies outside the chart of p2') from None
