"""Dense complex linear algebra used throughout the package.

Every operator is a 2-d complex ``numpy.ndarray``.  Subspaces carry an
orthonormal column basis.  Rank decisions are made against the cutoffs in
:class:`ToleranceConfig`.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import NotHermitian, Singular

__all__ = [
    'ToleranceConfig', 'DEFAULT_TOL', 'Subspace',
    'as_matrix', 'adjoint', 'eye', 'spectral_norm', 'hermitian_eigen',
    'solve_inverse', 'kernel_basis', 'range_basis', 'orth_complement',
    'subspace_intersection', 'projector_of', 'compress', 'lift',
]


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical cutoffs.

    rank_tol
        Relative singular-value cutoff for rank and kernel decisions, and the
        cosine slack used to decide that two subspaces share a direction.
    residual_tol
        Acceptance bound for ``||e^2 - e||`` and ``||e - e^*||``.
    inv_tol
        Relative cutoff on the smallest singular value below which a matrix
        is treated as singular.
    """
    rank_tol: float = 1e-10
    residual_tol: float = 1e-8
    inv_tol: float = 1e-10

    def __post_init__(self):
        for name in ('rank_tol', 'residual_tol', 'inv_tol'):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f'{name} must lie in (0, 1), got {value!r}')


DEFAULT_TOL = ToleranceConfig()


def as_matrix(m):
    """Return ``m`` as a finite 2-d complex array.

    Objects exposing the matrix on an ``m`` attribute (projections,
    idempotents) are unwrapped.
    """
    m = getattr(m, 'm', m)
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f'expected a 2-d matrix, got shape {a.shape}')
    if not np.all(np.isfinite(a)):
        raise ValueError('matrix has non-finite entries')
    return a


def adjoint(m):
    return np.conj(m).T


def eye(n):
    return np.eye(n, dtype=complex)


def spectral_norm(m):
    """Operator norm, i.e. the largest singular value."""
    m = as_matrix(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False)[0])


def hermitian_eigen(m, tol=DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns
    -------
    values : ndarray of float, ascending
    vectors : unitary ndarray whose columns are the eigenvectors

    Raises
    ------
    NotHermitian
        If ``||m - m^*||`` exceeds ``tol.residual_tol``.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise NotHermitian(f'matrix is not square: {m.shape}')
    defect = spectral_norm(m - adjoint(m))
    if defect > tol.residual_tol:
        raise NotHermitian(f'||m - m*|| = {defect:.3e}')
    values, vectors = np.linalg.eigh(0.5 * (m + adjoint(m)))
    return values, vectors


def solve_inverse(m, tol=DEFAULT_TOL, scale=None):
    """Inverse of a square matrix, refusing numerically singular input.

    ``m`` counts as singular when its smallest singular value is at most
    ``tol.inv_tol * scale``; ``scale`` defaults to ``||m||``.
    """
    m = as_matrix(m)
    n, n2 = m.shape
    if n != n2:
        raise ValueError(f'matrix is not square: {m.shape}')
    if n == 0:
        return m.copy()
    s = np.linalg.svd(m, compute_uv=False)
    ref = s[0] if scale is None else scale
    if s[-1] <= tol.inv_tol * ref:
        raise Singular(f'smallest singular value {s[-1]:.3e} below cutoff',
                       s[-1])
    return np.linalg.solve(m, eye(n))


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of C^n given by an orthonormal column basis (n x d)."""
    basis: np.ndarray = field(repr=False)

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=complex)
        if b.ndim != 2:
            raise ValueError('basis must be a 2-d array')
        d = b.shape[1]
        if d > b.shape[0]:
            raise ValueError('more basis vectors than the ambient dimension')
        if d and np.max(np.abs(adjoint(b) @ b - np.eye(d))) > 1e-12:
            raise ValueError('basis columns are not orthonormal')
        object.__setattr__(self, 'basis', b)

    @property
    def ambient_dim(self):
        return self.basis.shape[0]

    @property
    def dim(self):
        return self.basis.shape[1]

    @classmethod
    def empty(cls, n):
        return cls(np.zeros((n, 0), dtype=complex))

    @classmethod
    def full(cls, n):
        return cls(eye(n))

    def __repr__(self):
        return f'Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})'


def kernel_basis(m, tol=DEFAULT_TOL, scale=None):
    """Orthonormal basis of the numerical kernel of ``m``.

    A right singular direction belongs to the kernel when its singular value
    is at most ``tol.rank_tol * scale`` (``scale`` defaults to ``||m||``).
    Passing an explicit scale matters for matrices that are zero in exact
    arithmetic but carry rounding noise, e.g. a commutator of commuting
    projections.
    """
    m = as_matrix(m)
    n = m.shape[1]
    if n == 0:
        return Subspace.empty(0)
    if m.shape[0] == 0:
        return Subspace.full(n)
    _, s, vh = np.linalg.svd(m)
    ref = s[0] if scale is None else scale
    rank = int(np.sum(s > tol.rank_tol * ref))
    return Subspace(adjoint(vh[rank:]))


def orth_complement(s, tol=DEFAULT_TOL):
    """Orthogonal complement of a subspace."""
    if s.dim == 0:
        return Subspace.full(s.ambient_dim)
    return kernel_basis(adjoint(s.basis), tol, scale=1.0)


def range_basis(p):
    """Orthonormal basis of the range of a (numerical) projection.

    Uses the eigenvectors with eigenvalue above 1/2, which is the robust
    split for anything close to a projection.
    """
    p = as_matrix(p)
    values, vectors = np.linalg.eigh(0.5 * (p + adjoint(p)))
    keep = values > 0.5
    return Subspace(vectors[:, keep][:, ::-1])


def subspace_intersection(a, b, tol=DEFAULT_TOL):
    """Intersection of two subspaces via principal angles.

    A principal direction is kept when the cosine of its angle is at least
    ``1 - tol.rank_tol``.  Cosines near 1 are recovered from the sines, which
    are computed from the residual ``(1 - AA^*)B`` to avoid cancellation.
    The dimension of the result does not depend on the argument order.
    """
    if a.ambient_dim != b.ambient_dim:
        raise ValueError('subspaces live in different ambient spaces')
    if a.dim == 0 or b.dim == 0:
        return Subspace.empty(a.ambient_dim)
    count_ab, vecs = _shared_directions(a.basis, b.basis, tol)
    count_ba, _ = _shared_directions(b.basis, a.basis, tol)
    k = min(count_ab, count_ba)
    return Subspace(vecs[:, :k])


def _shared_directions(A, B, tol):
    """Count directions of span(B) close to span(A); return them in B."""
    resid = B - A @ (adjoint(A) @ B)
    _, sines, vh = np.linalg.svd(resid)
    # smallest sines first
    sines = np.clip(sines[::-1], 0.0, 1.0)
    v = adjoint(vh)[:, ::-1]
    one_minus_cos = sines ** 2 / (1.0 + np.sqrt(1.0 - sines ** 2))
    count = int(np.sum(one_minus_cos <= tol.rank_tol))
    return count, B @ v


def projector_of(s):
    """Orthogonal projector ``B B^*`` onto a subspace."""
    b = s.basis
    p = b @ adjoint(b)
    return 0.5 * (p + adjoint(p))


def compress(m, s):
    """Matrix of ``m`` restricted to ``s``, in the basis of ``s``."""
    return adjoint(s.basis) @ as_matrix(m) @ s.basis


def lift(block, s):
    """Inverse of :func:`compress`: embed a block acting on ``s`` into C^n."""
    return s.basis @ block @ adjoint(s.basis)
