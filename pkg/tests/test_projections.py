import numpy as np
import pytest
from hypothesis import given, strategies as st

from projgeom import projections as pa
from projgeom.errors import (BadRank, NormNotLessThanOne, NotAProjection,
                             SumNotInvertible)
from projgeom.projections import Kind, Projection
from projgeom.sampling import (random_block_pair, random_pair_in_ball,
                               random_unitary)

from conftest import opnorm

P = np.diag([1.0, 0.0]).astype(complex)
Q = np.full((2, 2), 0.5, dtype=complex)
OBLIQUE = np.array([[1.0, 1.0], [0.0, 0.0]], dtype=complex)
seeds = st.integers(0, 2 ** 32 - 1)


class TestClassify:
    def test_projection(self):
        assert pa.classify(P) is Kind.PROJECTION

    def test_oblique_idempotent(self):
        assert pa.classify(OBLIQUE) is Kind.IDEMPOTENT

    def test_neither(self):
        assert pa.classify([[0.5, 0], [0, 0]]) is Kind.NEITHER

    def test_projection_constructor_rejects_idempotent(self):
        with pytest.raises(NotAProjection):
            Projection.from_matrix(OBLIQUE)

    def test_rank_recorded(self):
        assert Projection.from_matrix(np.diag([1, 1, 0])).rank == 2


class TestComplement:
    def test_projection(self):
        c = pa.complement(Projection.from_matrix(P))
        np.testing.assert_array_equal(c.m, np.diag([0, 1]))
        assert isinstance(c, Projection) and c.rank == 1

    def test_oblique(self):
        c = pa.complement(OBLIQUE)
        np.testing.assert_array_equal(c.m, [[0, -1], [0, 1]])
        assert not isinstance(c, Projection)

    def test_identity(self):
        np.testing.assert_array_equal(pa.complement(np.eye(2)).m, np.zeros((2, 2)))

    def test_involution_is_exact(self):
        e = pa.random_projection(5, 2, 3)
        np.testing.assert_array_equal(pa.complement(pa.complement(e)).m,
                                      np.eye(5) - (np.eye(5) - e.m))


class TestOrderAndEquivalence:
    def test_leq(self):
        assert pa.order_leq(np.diag([1, 0, 0]), np.diag([1, 1, 0]))
        assert not pa.order_leq(np.diag([1, 0]), np.diag([0, 1]))
        assert pa.order_leq(Q, np.eye(2))

    def test_mv_equivalent(self):
        assert pa.mv_equivalent(np.diag([1, 0]), np.diag([0, 1]))
        assert not pa.mv_equivalent(np.diag([1, 1, 0]), np.diag([1, 0, 0]))

    @given(seeds)
    def test_unitary_conjugate_is_equivalent(self, seed):
        p = pa.random_projection(6, 2, seed)
        u = random_unitary(6, seed + 1)
        assert pa.mv_equivalent(p, 0.5 * (u @ p.m @ u.conj().T
                                          + (u @ p.m @ u.conj().T).conj().T))

    def test_matrix_algebra_is_finite(self):
        # p <= q with equal rank forces p = q
        for seed in range(100):
            rng = np.random.default_rng(seed)
            n = int(rng.integers(1, 9))
            k = int(rng.integers(0, n + 1))
            q = pa.random_projection(n, k, seed)
            b = q.range().basis @ (random_unitary(k, rng) if k else np.zeros((0, 0)))
            p = b @ b.conj().T
            assert pa.order_leq(p, q)
            assert opnorm(p - q.m) <= 1e-10
            assert not pa.violates_finiteness(p, q)

    def test_proper_subprojection_is_not_equivalent(self):
        q = pa.random_projection(5, 3, 11)
        b = q.range().basis[:, :2]
        p = b @ b.conj().T
        assert pa.order_leq(p, q) and not pa.mv_equivalent(p, q)


class TestKovarik:
    def test_same_argument(self):
        r = pa.kovarik(P, P)
        np.testing.assert_allclose(r.m, P, atol=1e-15)

    def test_two_by_two(self):
        # (p + q - 1)^2 = I/2, so r = 2pq
        r = pa.kovarik(P, Q)
        np.testing.assert_allclose(r.m, OBLIQUE, atol=1e-14)

    def test_complementary_pair_is_rejected(self):
        with pytest.raises(SumNotInvertible):
            pa.kovarik(P, np.diag([0.0, 1.0]))

    def test_range_and_kernel(self):
        r = pa.kovarik(P, Q)
        assert pa.range_kernel_match(r, P) == (True, False)
        assert pa.range_kernel_match(r, Q) == (False, True)

    @given(seeds, st.integers(2, 10))
    def test_certified_on_random_pairs(self, seed, n):
        p, q, _ = random_block_pair(n, seed, same_rank=False)
        try:
            r = pa.kovarik(p, q)
        except SumNotInvertible:
            assert opnorm(p.m - q.m) > 1 - 1e-6
            return
        assert max(pa.imker_residuals(r.m, p.m)[:2]) <= 1e-8
        assert max(pa.imker_residuals(r.m, q.m)[2:]) <= 1e-8
        # imker residuals eps give ||r^2 - r|| <= eps (1 + 2 ||r||)
        assert opnorm(r.m @ r.m - r.m) <= 1e-8 * (1 + 2 * opnorm(r.m))

    def test_works_for_oblique_idempotents(self):
        e = OBLIQUE
        f = np.array([[1.0, 0.0], [1.0, 0.0]])
        r = pa.kovarik(e, f)
        assert pa.range_kernel_match(r, e)[0]
        assert pa.range_kernel_match(r, f)[1]


class TestConverseKovarik:
    def test_equal_pair(self):
        r1, r2 = pa.converse_kovarik(P, P)
        np.testing.assert_allclose(r1.m, P, atol=1e-15)
        np.testing.assert_allclose(r2.m, P, atol=1e-15)
        s = 2 * P - np.eye(2)
        np.testing.assert_allclose(s @ s, np.eye(2))

    def test_two_by_two(self):
        r1, r2 = pa.converse_kovarik(P, Q)
        np.testing.assert_allclose(r1.m, [[1, 1], [0, 0]], atol=1e-14)
        np.testing.assert_allclose(r2.m, [[1, 0], [1, 0]], atol=1e-14)
        prod = (r1.m + r2.m - np.eye(2)) @ (P + Q - np.eye(2))
        np.testing.assert_allclose(prod, np.eye(2), atol=1e-14)

    def test_complement_rejected(self):
        with pytest.raises(SumNotInvertible):
            pa.converse_kovarik(P, np.eye(2) - P)


class TestRangeKernelMatch:
    def test_cases(self):
        assert pa.range_kernel_match(P, P) == (True, True)
        assert pa.range_kernel_match(OBLIQUE, P) == (True, False)
        assert pa.range_kernel_match(P, np.diag([0, 1])) == (False, False)


class TestBallPredicates:
    def test_equal(self):
        rep = pa.ball_predicates(P, P)
        assert rep.invertible_sum and rep.norm_lt_one and rep.direct_sum
        assert rep.norm_value == 0.0

    def test_complement(self):
        rep = pa.ball_predicates(P, np.eye(2) - P)
        assert not (rep.invertible_sum or rep.norm_lt_one or rep.direct_sum)
        assert rep.norm_value == pytest.approx(1.0)

    def test_two_by_two(self):
        rep = pa.ball_predicates(P, Q)
        assert rep.invertible_sum and rep.norm_lt_one and rep.direct_sum
        assert rep.norm_value == pytest.approx(0.7071068, abs=1e-7)

    def test_rank_mismatch_fails_all(self):
        rep = pa.ball_predicates(np.eye(2), P)
        assert rep.agree and not rep.norm_lt_one

    @given(seeds, st.integers(2, 12))
    def test_sum_square_identity_and_agreement(self, seed, n):
        p, q, _ = random_block_pair(n, seed, same_rank=bool(seed % 2))
        one = np.eye(n)
        s, d = p.m + q.m - one, p.m - q.m
        assert opnorm(s @ s + d @ d - one) <= 1e-12
        rep = pa.ball_predicates(p, q)
        # pairs with Im p & Ker q or a rank gap sit at distance exactly 1
        assert rep.agree


class TestPaths:
    def test_idempotent_path_endpoints(self):
        assert np.array_equal(pa.idempotent_path(P, Q, 0.0).m, P)
        assert np.array_equal(pa.idempotent_path(P, Q, 1.0).m, Q)

    def test_idempotent_path_midpoint_is_kovarik(self):
        np.testing.assert_allclose(pa.idempotent_path(P, Q, 0.5).m, OBLIQUE,
                                   atol=1e-14)

    @pytest.mark.parametrize('t', np.linspace(0, 1, 9))
    def test_idempotent_path_stays_idempotent(self, t):
        f = pa.idempotent_path(P, Q, t).m
        assert opnorm(f @ f - f) <= 1e-12

    def test_projection_path_values(self):
        np.testing.assert_allclose(pa.projection_path(P, Q, 0.0).m, P, atol=1e-12)
        # f(1/2) = [[1, 1], [0, 0]], (f + f^* - 1)^{-2} = I/2, g = f f^*/2 = p
        np.testing.assert_allclose(pa.projection_path(P, Q, 0.5).m, P, atol=1e-12)
        np.testing.assert_allclose(pa.projection_path(P, Q, 1.0).m, Q, atol=1e-12)

    def test_projection_path_refuses_far_pairs(self):
        with pytest.raises(NormNotLessThanOne):
            pa.projection_path(P, np.eye(2) - P, 0.3)

    def test_t_out_of_range(self):
        with pytest.raises(ValueError):
            pa.idempotent_path(P, Q, 1.5)

    @given(seeds, st.integers(2, 8))
    def test_projection_path_validity(self, seed, n):
        p, q = random_pair_in_ball(n, seed, 0.95)
        for g in pa.sample_projection_path(p, q, np.linspace(0, 1, 21)):
            assert opnorm(g.m @ g.m - g.m) <= 1e-8
            assert opnorm(g.m - g.m.conj().T) <= 1e-8
            assert g.rank == p.rank


class TestRandomProjection:
    def test_rank_zero(self):
        np.testing.assert_array_equal(pa.random_projection(3, 0, 1).m, np.zeros((3, 3)))

    def test_full_rank(self):
        np.testing.assert_allclose(pa.random_projection(3, 3, 1).m, np.eye(3),
                                   atol=1e-12)

    def test_trace_and_residual(self):
        p = pa.random_projection(4, 2, 7)
        assert abs(np.trace(p.m).real - 2.0) <= 1e-12
        assert opnorm(p.m @ p.m - p.m) <= 1e-12

    def test_deterministic(self):
        np.testing.assert_array_equal(pa.random_projection(5, 2, 9).m,
                                      pa.random_projection(5, 2, 9).m)

    def test_bad_rank(self):
        with pytest.raises(BadRank):
            pa.random_projection(3, 4, 0)
