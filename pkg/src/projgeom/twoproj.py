"""Geometry of a pair of projections.

Any two projections ``p, q`` on C^n split the space into five orthogonal
pieces: the four intersections of their ranges and kernels, plus a generic
part.  On the generic part the pair is a direct sum of 2x2 blocks

    p = [[1, 0], [0, 0]],    q = [[c^2, cs], [cs, s^2]],

with ``c = cos(theta)``, ``s = sin(theta)``, ``0 < theta < pi/2`` (Halmos'
two-projection form).  From this form one builds a projection ``r`` within
distance ``1/sqrt(2)`` of both ``p`` and ``q`` whenever the two have equal
rank; see :func:`find_common_ball`.
"""

from dataclasses import dataclass, field

import numpy as np

from . import numeric as nm
from .errors import NotOrthogonal, RankMismatch, SumNotInjective
from .numeric import DEFAULT_TOL, Subspace, adjoint, as_matrix, eye, spectral_norm
from .projections import Projection, _coerce_projection

__all__ = [
    'PairDecomposition', 'HalmosForm', 'MidpointCertificate',
    'pair_decompose', 'kernel_dimension_report', 'halmos_form',
    'halmos_reconstruct', 'halmos_involution', 'generic_midpoint',
    'complementary_midpoint', 'find_common_ball',
]

INV_SQRT2 = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class PairDecomposition:
    """The five orthogonal pieces of C^n determined by a projection pair.

    ``m11 = Im p & Im q``, ``m00 = Ker p & Ker q``, ``m10 = Im p & Ker q``,
    ``m01 = Ker p & Im q`` and ``generic`` is the orthocomplement of their
    sum.
    """
    m11: Subspace
    m00: Subspace
    m10: Subspace
    m01: Subspace
    generic: Subspace

    @property
    def dims(self):
        return (self.m11.dim, self.m00.dim, self.m10.dim, self.m01.dim,
                self.generic.dim)

    def parts(self):
        return (self.m11, self.m00, self.m10, self.m01, self.generic)


def pair_decompose(p, q, tol=DEFAULT_TOL):
    """Split C^n into the five canonical pieces of the pair ``(p, q)``."""
    p, q = _coerce_projection(p, tol), _coerce_projection(q, tol)
    if p.n != q.n:
        raise ValueError('projections act on spaces of different dimension')
    im_p, ker_p = p.range(), p.kernel()
    im_q, ker_q = q.range(), q.kernel()
    m11 = nm.subspace_intersection(im_p, im_q, tol)
    m00 = nm.subspace_intersection(ker_p, ker_q, tol)
    m10 = nm.subspace_intersection(im_p, ker_q, tol)
    m01 = nm.subspace_intersection(ker_p, im_q, tol)
    known = np.hstack([m11.basis, m00.basis, m10.basis, m01.basis])
    generic = nm.orth_complement(_polish(known), tol)
    return PairDecomposition(m11, m00, m10, m01, generic)


def _polish(b):
    """Nearest matrix with orthonormal columns (polar factor)."""
    if b.shape[1] == 0:
        return Subspace(b)
    w, _, vh = np.linalg.svd(b, full_matrices=False)
    return Subspace(w @ vh)


def kernel_dimension_report(p, q, tol=DEFAULT_TOL):
    """Dimensions of ``Ker(p+q-1)``, ``Ker(p-q)`` and ``Ker(pq-qp)``.

    For projections the third equals the sum of the first two.  Kernels are
    cut at ``tol.rank_tol`` on the unit scale of projections, so commutators
    that vanish up to rounding are recognized as zero.
    """
    pm = _coerce_projection(p, tol).m
    qm = _coerce_projection(q, tol).m
    one = eye(pm.shape[0])
    d_sum = nm.kernel_basis(pm + qm - one, tol, scale=1.0).dim
    d_diff = nm.kernel_basis(pm - qm, tol, scale=1.0).dim
    d_comm = nm.kernel_basis(pm @ qm - qm @ pm, tol, scale=1.0).dim
    return d_sum, d_diff, d_comm


@dataclass(frozen=True, eq=False)
class HalmosForm:
    """Canonical form of a projection pair.

    Attributes
    ----------
    u : ndarray
        Unitary whose columns are, in order, bases of ``m11``, ``m00``,
        ``m10``, ``m01`` and then the generic 2-blocks as adjacent
        ``(v_i, w_i)`` pairs with ``v_i`` in ``Im p`` and ``w_i`` in
        ``Ker p``.
    angles : ndarray
        ``theta_i`` in ``(0, pi/2)``, ascending, one per generic block.
    dims : tuple
        ``(d11, d00, d10, d01, 2 * len(angles))``.
    """
    u: np.ndarray = field(repr=False)
    angles: np.ndarray
    dims: tuple

    @property
    def n(self):
        return self.u.shape[0]

    def blocks(self):
        """``(p, q)`` in the canonical basis, i.e. ``u^* p u`` and ``u^* q u``."""
        d11, d00, d10, d01, _ = self.dims
        pd = [1.0] * d11 + [0.0] * d00 + [1.0] * d10 + [0.0] * d01
        qd = [1.0] * d11 + [0.0] * d00 + [0.0] * d10 + [1.0] * d01
        k = len(pd)
        n = self.n
        pb = np.zeros((n, n), dtype=complex)
        qb = np.zeros((n, n), dtype=complex)
        pb[:k, :k] = np.diag(pd)
        qb[:k, :k] = np.diag(qd)
        for i, theta in enumerate(self.angles):
            j = k + 2 * i
            c, s = np.cos(theta), np.sin(theta)
            pb[j, j] = 1.0
            qb[j:j + 2, j:j + 2] = [[c * c, c * s], [c * s, s * s]]
        return pb, qb


def halmos_form(p, q, tol=DEFAULT_TOL):
    """Bring a pair of projections to simultaneous block form.

    On the generic part, the cosines are read off the compression of ``pqp``
    to ``Im p``: its eigenvalues are ``c_i^2`` with eigenvectors ``v_i``.
    The partner of ``v_i`` is ``w_i = (1 - p) q v_i / (c_i s_i)``.
    Eigenvalues within ``tol.rank_tol`` of 0 or 1 are moved into the
    intersection pieces rather than kept as extreme angles.
    """
    p, q = _coerce_projection(p, tol), _coerce_projection(q, tol)
    dec = pair_decompose(p, q, tol)
    n = p.n
    cols = {'m11': [dec.m11.basis], 'm00': [dec.m00.basis],
            'm10': [dec.m10.basis], 'm01': [dec.m01.basis]}
    pairs = []

    g = dec.generic
    if g.dim:
        pg = nm.compress(p.m, g)
        qg = nm.compress(q.m, g)
        vals, vecs = np.linalg.eigh(0.5 * (pg + adjoint(pg)))
        vp, vk = vecs[:, vals > 0.5], vecs[:, vals <= 0.5]

        c2, wv = np.linalg.eigh(_herm(adjoint(vp) @ qg @ vp))
        v_all = vp @ wv
        s2, wk = np.linalg.eigh(_herm(adjoint(vk) @ qg @ vk))
        k_all = vk @ wk

        t = tol.rank_tol
        # clustered directions go back to the intersection pieces
        cols['m11'].append(g.basis @ v_all[:, c2 >= 1.0 - t])
        cols['m10'].append(g.basis @ v_all[:, c2 <= t])
        cols['m00'].append(g.basis @ k_all[:, s2 <= t])
        cols['m01'].append(g.basis @ k_all[:, s2 >= 1.0 - t])

        kproj = vk @ adjoint(vk)
        for i in np.flatnonzero((c2 > t) & (c2 < 1.0 - t)):
            v = v_all[:, i]
            cos2 = float(np.real(np.vdot(v, qg @ v)))
            x = kproj @ (qg @ v)
            cs = float(np.linalg.norm(x))
            c = np.sqrt(min(max(cos2, 0.0), 1.0))
            theta = float(np.arctan2(cs / c, c))
            pairs.append((theta, g.basis @ v, g.basis @ (x / cs)))

    pairs.sort(key=lambda item: item[0])
    blocks = [np.hstack(cols[key]) for key in ('m11', 'm00', 'm10', 'm01')]
    gen = [np.column_stack([v, w]) for _, v, w in pairs]
    u = _polish(np.hstack(blocks + gen)).basis
    dims = tuple(b.shape[1] for b in blocks) + (2 * len(pairs),)
    if sum(dims) != n:
        raise ArithmeticError(f'pieces of dimensions {dims} do not fill C^{n}')
    angles = np.array([theta for theta, _, _ in pairs])
    return HalmosForm(u, angles, dims)


def _herm(m):
    return 0.5 * (m + adjoint(m))


def halmos_reconstruct(h, tol=DEFAULT_TOL):
    """Rebuild ``(p, q)`` from a :class:`HalmosForm`."""
    pb, qb = h.blocks()
    u = h.u
    p = _herm(u @ pb @ adjoint(u))
    q = _herm(u @ qb @ adjoint(u))
    return Projection.from_matrix(p, tol), Projection.from_matrix(q, tol)


def halmos_involution(h):
    """Self-adjoint unitary ``tau`` with ``tau p tau = q`` on a generic pair.

    Acts as the identity on ``m11`` and ``m00`` and as ``[[c, s], [s, -c]]``
    on each generic block.  Undefined when ``m10`` or ``m01`` is nonzero.
    """
    d11, d00, d10, d01, _ = h.dims
    if d10 or d01:
        raise SumNotInjective('pair has a nontrivial Ker(p + q - 1)')
    tb = np.zeros((h.n, h.n), dtype=complex)
    k = d11 + d00
    tb[:k, :k] = np.eye(k)
    for i, theta in enumerate(h.angles):
        j = k + 2 * i
        c, s = np.cos(theta), np.sin(theta)
        tb[j:j + 2, j:j + 2] = [[c, s], [s, -c]]
    return _herm(h.u @ tb @ adjoint(h.u))


def _generic_block_midpoint(h):
    """The midpoint ``r`` in the canonical basis of ``h`` (generic part only)."""
    d11, d00, d10, d01, _ = h.dims
    rb = np.zeros((h.n, h.n), dtype=complex)
    rb[:d11, :d11] = np.eye(d11)
    k = d11 + d00 + d10 + d01
    for i, theta in enumerate(h.angles):
        j = k + 2 * i
        c, s = np.cos(theta), np.sin(theta)
        rb[j:j + 2, j:j + 2] = [[(1 + c) / 2, s / 2], [s / 2, (1 - c) / 2]]
    return rb


def generic_midpoint(p, q, tol=DEFAULT_TOL):
    """Projection close to both ``p`` and ``q`` when ``p + q - 1`` is injective.

    On each generic block the result is
    ``r = [[(1 + c)/2, s/2], [s/2, (1 - c)/2]]``; it is 1 on ``Im p & Im q``
    and 0 on ``Ker p & Ker q``.  Then ``(p - r)^2 = (1 - c)/2`` blockwise, so
    ``||p - r|| = ||q - r|| <= 1/sqrt(2)``.

    Raises
    ------
    SumNotInjective
        If ``Im p & Ker q`` or ``Ker p & Im q`` is nonzero.
    """
    h = halmos_form(p, q, tol)
    if h.dims[2] or h.dims[3]:
        raise SumNotInjective(
            f'Ker(p + q - 1) has dimension {h.dims[2] + h.dims[3]}')
    r = _herm(h.u @ _generic_block_midpoint(h) @ adjoint(h.u))
    return Projection.from_matrix(r, tol)


def _column_order_key(b):
    # descending overlap with the canonical basis, ties by index
    mags = np.abs(b)
    return [(-round(float(mags[:, j].max()), 12), int(mags[:, j].argmax()))
            for j in range(b.shape[1])]


def _canonical_basis(s):
    """Deterministic ordering and phase for an orthonormal basis."""
    b = s.basis
    if b.shape[1] == 0:
        return b
    keys = _column_order_key(b)
    order = sorted(range(b.shape[1]), key=lambda j: keys[j])
    b = b[:, order]
    pivots = np.abs(b).argmax(axis=0)
    phases = b[pivots, np.arange(b.shape[1])]
    return b * (np.abs(phases) / phases)


def complementary_midpoint(p0, q0, tol=DEFAULT_TOL):
    """Projection at distance ``1/sqrt(2)`` from two orthogonal equivalent projections.

    With ``pi = p0 + q0`` and a partial isometry ``u`` from ``Im q0`` onto
    ``Im p0``, returns ``r0 = (pi + u + u^*)/2``.  Here ``u = B_p B_q^*`` for
    orthonormal bases of the two ranges.

    Raises
    ------
    RankMismatch
        If ``rank p0 != rank q0``.
    NotOrthogonal
        If ``p0 q0 != 0``.
    """
    p0, q0 = _coerce_projection(p0, tol), _coerce_projection(q0, tol)
    if p0.n != q0.n:
        raise ValueError('projections act on spaces of different dimension')
    if p0.rank != q0.rank:
        raise RankMismatch(f'ranks {p0.rank} and {q0.rank} differ')
    overlap = spectral_norm(p0.m @ q0.m)
    if overlap > tol.residual_tol:
        raise NotOrthogonal(f'||p0 q0|| = {overlap:.3e}')
    bp = _canonical_basis(p0.range())
    bq = _canonical_basis(q0.range())
    u = bp @ adjoint(bq)
    r = 0.5 * (p0.m + q0.m + u + adjoint(u))
    return Projection.from_matrix(_herm(r), tol)


@dataclass(frozen=True)
class MidpointCertificate:
    """Distances and residuals recorded by :func:`find_common_ball`."""
    dist_p: float
    dist_q: float
    idem_residual: float
    herm_residual: float
    dims: tuple

    @property
    def max_dist(self):
        return max(self.dist_p, self.dist_q)


def find_common_ball(p, q, tol=DEFAULT_TOL, certificate=False):
    """A projection ``r`` with ``||p - r|| < 1`` and ``||q - r|| < 1``.

    Works for every pair of equal rank.  Let ``pi`` be the projection onto
    ``Ker(p + q - 1) = (Im p & Ker q) + (Ker p & Im q)``.  On the range of
    ``1 - pi`` the compressed pair has injective ``p + q - 1`` and
    :func:`generic_midpoint` applies; on the range of ``pi`` the compressions
    are complementary and equivalent, and :func:`complementary_midpoint`
    applies.  The result is the sum of the two pieces and satisfies
    ``max(||p - r||, ||q - r||) <= 1/sqrt(2)``.

    Parameters
    ----------
    p, q : Projection or array_like
    tol : ToleranceConfig
    certificate : bool
        Also return a :class:`MidpointCertificate`.

    Raises
    ------
    RankMismatch
        If the ranks differ (the pair is not homotopic).
    """
    p, q = _coerce_projection(p, tol), _coerce_projection(q, tol)
    if p.n != q.n:
        raise ValueError('projections act on spaces of different dimension')
    if p.rank != q.rank:
        raise RankMismatch(f'ranks {p.rank} and {q.rank} differ')
    n = p.n
    h = halmos_form(p, q, tol)
    d11, d00, d10, d01, dg = h.dims

    # generic part (r1) on the range of 1 - pi, via the canonical blocks
    r = h.u @ _generic_block_midpoint(h) @ adjoint(h.u)

    # complementary part (r0) on the range of pi; working with pi p pi and
    # pi q pi in ambient coordinates keeps r0 free of the phases in h.u
    start = d11 + d00
    pi_basis = Subspace(h.u[:, start:start + d10 + d01])
    if pi_basis.dim:
        pi = nm.projector_of(pi_basis)
        p0 = Projection.from_matrix(_herm(pi @ p.m @ pi), tol)
        q0 = Projection.from_matrix(_herm(pi @ q.m @ pi), tol)
        r = r + complementary_midpoint(p0, q0, tol).m

    result = Projection.from_matrix(_herm(r), tol)
    if not certificate:
        return result
    cert = MidpointCertificate(
        dist_p=spectral_norm(result.m - p.m),
        dist_q=spectral_norm(result.m - q.m),
        idem_residual=result.residual,
        herm_residual=result.herm_residual,
        dims=h.dims)
    return result, cert
