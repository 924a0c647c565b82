"""Seeded batteries of invariant checks, reported as JSON.

Trial ``i`` of a suite draws everything from ``numpy.random.default_rng(seed + i)``,
so reports are reproducible and independent of trial order.
"""

import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import atlas, lattice
from . import projections as pa
from . import twoproj as tp
from .errors import ProjGeomError, SumNotInvertible
from .numeric import DEFAULT_TOL, adjoint, eye, spectral_norm
from .sampling import (random_block_pair, random_pair_in_ball,
                       random_same_rank_pair, random_unitary)

__all__ = ['SuiteReport', 'run_suite', 'SUITES', 'check_pair']

SUITES = ('lemmas', 'atlas', 'midpoint', 'dedekind')
INV_SQRT2_BOUND = 0.70710679


@dataclass
class SuiteReport:
    suite: str
    n: int
    trials: int
    seed: int
    failures: int = 0
    worst_residuals: dict = field(default_factory=dict)
    errors: list = field(default_factory=list)
    elapsed: float = 0.0

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True)


class _Recorder:
    """Collects named residuals against their bounds for one suite run."""

    def __init__(self):
        self.worst = {}
        self.failed_trials = 0
        self.errors = []
        self._trial_failed = False

    def start_trial(self):
        self._trial_failed = False

    def end_trial(self):
        if self._trial_failed:
            self.failed_trials += 1

    def residual(self, name, value, bound):
        value = float(value)
        self.worst[name] = max(self.worst.get(name, 0.0), value)
        if not value <= bound:
            self._trial_failed = True

    def flag(self, name, ok):
        self.worst.setdefault(name, 0.0)
        if not ok:
            self.worst[name] += 1.0
            self._trial_failed = True


def _lemmas_trial(rec, n, rng, tol):
    p, q, _ = random_block_pair(n, rng, same_rank=bool(rng.integers(0, 2)))
    one = eye(n)
    s = p.m + q.m - one
    d = p.m - q.m
    rec.residual('sum_square_identity', spectral_norm(s @ s + d @ d - one), 1e-12)

    report = pa.ball_predicates(p, q, tol)
    if abs(report.norm_value - 1.0) >= 1e-6:
        rec.flag('ball_predicate_disagreements', report.agree)

    try:
        r1, r2 = pa.converse_kovarik(p, q, tol)
    except SumNotInvertible:
        pass
    else:
        rec.residual('kovarik_imker', max(pa.imker_residuals(r1.m, p.m)[:2]
                                          + pa.imker_residuals(r1.m, q.m)[2:]),
                     1e-8)
        # implied by the imker bound: ||r^2 - r|| <= eps (1 + 2 ||r||)
        rec.residual('kovarik_idempotent', r1.residual,
                     1e-8 * (1 + 2 * spectral_norm(r1.m)))
        inv = (r1.m + r2.m - one) @ s - one
        rec.residual('converse_inverse', spectral_norm(inv), 1e-8)

    a, b = random_pair_in_ball(n, rng, 0.95)
    ts = np.linspace(0.0, 1.0, 11)
    path = pa.sample_projection_path(a, b, ts, tol)
    rec.residual('path_idempotent', max(g.residual for g in path), 1e-8)
    rec.residual('path_hermitian', max(g.herm_residual for g in path), 1e-8)
    rec.residual('path_endpoints', max(spectral_norm(path[0].m - a.m),
                                       spectral_norm(path[-1].m - b.m)), 1e-10)

    k = int(rng.integers(0, n + 1))
    qq = pa.random_projection(n, k, int(rng.integers(0, 2 ** 32)))
    w = random_unitary(k, rng) if k else np.zeros((0, 0))
    basis = qq.range().basis @ w
    pp = pa.Projection.from_matrix(basis @ adjoint(basis), tol)
    rec.flag('finiteness_violations', not pa.violates_finiteness(pp, qq, tol))


def _atlas_trial(rec, n, rng, tol):
    k = int(rng.integers(0, n + 1))
    p = pa.random_projection(n, k, int(rng.integers(0, 2 ** 32)))
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    x = atlas.AffineCoordinates.project(p, z)
    q = atlas.phi_inverse(p, x, tol)
    back = atlas.phi(p, q, tol)
    rec.residual('phi_after_inverse', spectral_norm(back.x - x.x), 1e-8)

    a, b = random_pair_in_ball(n, rng, 0.95)
    q2 = atlas.phi_inverse(a, atlas.phi(a, b, tol), tol)
    rec.residual('inverse_after_phi', spectral_norm(q2.m - b.m), 1e-8)

    idx = atlas.chart_select(b, tol)
    p_i = atlas.standard_projection(idx)
    rec.flag('chart_cover_failures', spectral_norm(b.m - p_i.m) < 1.0)
    coords = atlas.classical_affine_coords(b, idx, tol)
    rebuilt = atlas.projection_from_frame(atlas.frame_from_coords(coords, idx))
    rec.residual('classical_round_trip', spectral_norm(rebuilt.m - b.m), 1e-8)


def check_pair(rec, p, q, tol):
    """Midpoint and canonical-form checks on one equal-rank pair."""
    r, cert = tp.find_common_ball(p, q, tol, certificate=True)
    rec.residual('midpoint_distance', cert.max_dist, INV_SQRT2_BOUND)
    rec.residual('midpoint_idempotent', cert.idem_residual, 1e-8)
    rec.residual('midpoint_hermitian', cert.herm_residual, 1e-8)
    report = pa.ball_predicates(p, r, tol)
    rec.flag('midpoint_membership_failures',
             report.invertible_sum and report.norm_lt_one and report.direct_sum)

    h = tp.halmos_form(p, q, tol)
    p2, q2 = tp.halmos_reconstruct(h, tol)
    rec.residual('halmos_round_trip', max(spectral_norm(p2.m - p.m),
                                          spectral_norm(q2.m - q.m)), 1e-8)
    d_sum, d_diff, d_comm = tp.kernel_dimension_report(p, q, tol)
    rec.flag('kernel_dimension_mismatches', d_comm == d_sum + d_diff)


def _midpoint_trial(rec, n, rng, tol):
    p, q = random_same_rank_pair(n, rng)
    check_pair(rec, p, q, tol)


def _dedekind_trial(rec, n, rng, tol, index):
    depth = index % 21
    limit = 2 ** 10
    rows = [lattice.valuation_row(j) for j in range(depth + 1)]
    tail = lattice.ValuationProjection(lattice.ResidueSet(
        1, {0}, removed=range(depth + 1)))
    total = tail
    for row in rows:
        total = lattice.orth_sum(total, row)
    rec.flag('partition_failures', total == lattice.ValuationProjection.one())
    counts = [sum(x in part for part in rows + [tail])
              for x in range(1, limit + 1)]
    rec.flag('partition_sampling_failures', all(c == 1 for c in counts))

    _, _, report = lattice.dedekind_pair()
    rec.flag('dedekind_pair_failures', report.ok)
    fam = lattice.ball_disjoint_family(2 + index % 6)
    ordered = all(lattice.leq(a, b) and a != b for a, b in zip(fam, fam[1:]))
    equiv = all(lattice.mv_equiv(a, b) for a in fam for b in fam)
    rec.flag('family_failures', ordered and equiv)


_RUNNERS = {
    'lemmas': _lemmas_trial,
    'atlas': _atlas_trial,
    'midpoint': _midpoint_trial,
}


def run_suite(name, n=8, trials=100, seed=0, tol=DEFAULT_TOL, pairs=()):
    """Run one suite (or ``'all'``) and return a :class:`SuiteReport`.

    ``pairs`` are extra ``(p, q)`` equal-rank projection pairs checked by the
    midpoint battery after the random trials.
    """
    if name != 'all' and name not in SUITES:
        raise ValueError(f'unknown suite {name!r}')
    if not 1 <= n <= 64:
        raise ValueError(f'n must lie in [1, 64], got {n}')
    if trials < 1:
        raise ValueError(f'trials must be positive, got {trials}')
    names = SUITES if name == 'all' else (name,)
    rec = _Recorder()
    start = time.perf_counter()
    for suite in names:
        for i in range(trials):
            rng = np.random.default_rng(seed + i)
            rec.start_trial()
            try:
                if suite == 'dedekind':
                    _dedekind_trial(rec, n, rng, tol, i)
                else:
                    _RUNNERS[suite](rec, n, rng, tol)
            except ProjGeomError as exc:
                rec.flag(f'{suite}_errors', False)
                rec.errors.append(f'{suite}[{i}]: {type(exc).__name__}: {exc}')
            rec.end_trial()
    for p, q in pairs:
        rec.start_trial()
        try:
            check_pair(rec, p, q, tol)
        except ProjGeomError as exc:
            rec.flag('input_pair_errors', False)
            rec.errors.append(f'input: {type(exc).__name__}: {exc}')
        rec.end_trial()
    elapsed = time.perf_counter() - start
    return SuiteReport(suite=name, n=n, trials=trials, seed=seed,
                       failures=rec.failed_trials,
                       worst_residuals=dict(sorted(rec.worst.items())),
                       errors=rec.errors,
                       elapsed=elapsed)
