import numpy as np
import pytest
from hypothesis import given, strategies as st

from projgeom import projections as pa
from projgeom import twoproj as tp
from projgeom.errors import NotOrthogonal, RankMismatch, SumNotInjective
from projgeom.sampling import (pair_from_blocks, random_block_pair,
                               random_same_rank_pair, random_unitary)

from conftest import opnorm

P = np.diag([1.0, 0.0]).astype(complex)
Q45 = np.full((2, 2), 0.5, dtype=complex)
Q60 = np.array([[0.25, np.sqrt(3) / 4], [np.sqrt(3) / 4, 0.75]], dtype=complex)
seeds = st.integers(0, 2 ** 32 - 1)
BOUND = 0.70710679


def block_midpoint(c, s):
    return np.array([[(1 + c) / 2, s / 2], [s / 2, (1 - c) / 2]])


class TestPairDecompose:
    def test_commuting_diagonals(self):
        dec = tp.pair_decompose(np.diag([1, 1, 0]), np.diag([1, 0, 0]))
        assert dec.dims == (1, 1, 1, 0, 0)
        assert abs(abs(dec.m11.basis[0, 0]) - 1) < 1e-12
        assert abs(abs(dec.m10.basis[1, 0]) - 1) < 1e-12
        assert abs(abs(dec.m00.basis[2, 0]) - 1) < 1e-12

    def test_fully_generic(self):
        assert tp.pair_decompose(P, Q45).dims == (0, 0, 0, 0, 2)

    def test_equal_pair(self):
        p = pa.random_projection(5, 2, 4)
        assert tp.pair_decompose(p, p).dims == (2, 3, 0, 0, 0)

    @given(seeds, st.integers(1, 12))
    def test_dims_and_orthogonality(self, seed, n):
        p, q, data = random_block_pair(n, seed, same_rank=False)
        dec = tp.pair_decompose(p, q)
        assert dec.dims == data['dims']
        parts = dec.parts()
        for i, a in enumerate(parts):
            for b in parts[i + 1:]:
                assert opnorm(a.basis.conj().T @ b.basis) <= 1e-10
        # m10 + m01 spans Ker(p + q - 1), m11 + m00 spans Ker(p - q)
        one = np.eye(n)
        k_sum = np.hstack([dec.m10.basis, dec.m01.basis])
        k_diff = np.hstack([dec.m11.basis, dec.m00.basis])
        assert opnorm((p.m + q.m - one) @ k_sum) <= 1e-10
        assert opnorm((p.m - q.m) @ k_diff) <= 1e-10


class TestKernelDimensionReport:
    def test_commuting_diagonals(self):
        # p + q - 1 = diag(1, 0, -1), p - q = diag(0, 1, 0), [p, q] = 0
        assert tp.kernel_dimension_report(np.diag([1, 1, 0]),
                                          np.diag([1, 0, 0])) == (1, 2, 3)

    def test_generic(self):
        assert tp.kernel_dimension_report(P, Q45) == (0, 0, 0)

    def test_equal(self):
        assert tp.kernel_dimension_report(P, P) == (0, 2, 2)

    @given(seeds, st.integers(1, 12))
    def test_additivity(self, seed, n):
        p, q, data = random_block_pair(n, seed, same_rank=False)
        d11, d00, d10, d01, _ = data['dims']
        assert tp.kernel_dimension_report(p, q) == (
            d10 + d01, d11 + d00, d11 + d00 + d10 + d01)


class TestHalmosForm:
    def test_sixty_degrees(self):
        h = tp.halmos_form(P, Q60)
        np.testing.assert_allclose(h.angles, [np.pi / 3], atol=1e-12)

    def test_forty_five_degrees(self):
        h = tp.halmos_form(P, Q45)
        np.testing.assert_allclose(h.angles, [np.pi / 4], atol=1e-12)
        assert h.dims == (0, 0, 0, 0, 2)

    def test_commuting(self):
        h = tp.halmos_form(np.diag([1, 1, 0, 0]), np.diag([1, 0, 1, 0]))
        assert h.angles.size == 0
        assert h.dims == (1, 1, 1, 1, 0)

    def test_blocks_in_basis(self):
        p, q, _ = random_block_pair(9, 5)
        h = tp.halmos_form(p, q)
        pb, qb = h.blocks()
        u = h.u
        np.testing.assert_allclose(u.conj().T @ p.m @ u, pb, atol=1e-10)
        np.testing.assert_allclose(u.conj().T @ q.m @ u, qb, atol=1e-10)

    @given(seeds, st.integers(1, 14))
    def test_recovers_known_data(self, seed, n):
        p, q, data = random_block_pair(n, seed, same_rank=False)
        h = tp.halmos_form(p, q)
        assert h.dims == data['dims']
        np.testing.assert_allclose(h.angles, data['angles'], atol=1e-9)
        assert opnorm(h.u.conj().T @ h.u - np.eye(n)) <= 1e-10

    def test_angles_near_cutoff_are_reassigned(self):
        # angle 1e-7: 1 - cos ~ 5e-15, treated as a shared direction
        p, q = pair_from_blocks(random_unitary(4, 3), 0, 0, 0, 0, [1e-7, 0.5])
        h = tp.halmos_form(p, q)
        assert h.dims == (1, 1, 0, 0, 2)
        np.testing.assert_allclose(h.angles, [0.5], atol=1e-10)


class TestHalmosReconstruct:
    def test_round_trip_example(self):
        h = tp.halmos_form(P, Q45)
        p, q = tp.halmos_reconstruct(h)
        np.testing.assert_allclose(p.m, P, atol=1e-12)
        np.testing.assert_allclose(q.m, Q45, atol=1e-12)

    def test_no_angles(self):
        u = random_unitary(3, 1)
        h = tp.HalmosForm(u, np.array([]), (2, 1, 0, 0, 0))
        p, q = tp.halmos_reconstruct(h)
        target = u @ np.diag([1, 1, 0]) @ u.conj().T
        np.testing.assert_allclose(p.m, target, atol=1e-12)
        np.testing.assert_allclose(q.m, target, atol=1e-12)

    def test_complementary(self):
        u = random_unitary(2, 2)
        p, q = tp.halmos_reconstruct(tp.HalmosForm(u, np.array([]), (0, 0, 1, 1, 0)))
        np.testing.assert_allclose(u.conj().T @ p.m @ u, np.diag([1, 0]), atol=1e-12)
        np.testing.assert_allclose(u.conj().T @ q.m @ u, np.diag([0, 1]), atol=1e-12)

    @given(seeds, st.integers(1, 16))
    def test_round_trip_random(self, seed, n):
        p, q = random_same_rank_pair(n, seed)
        p2, q2 = tp.halmos_reconstruct(tp.halmos_form(p, q))
        assert opnorm(p2.m - p.m) <= 1e-8
        assert opnorm(q2.m - q.m) <= 1e-8


class TestGenericMidpoint:
    def test_forty_five(self):
        r = tp.generic_midpoint(P, Q45)
        c = s = 1 / np.sqrt(2)
        np.testing.assert_allclose(r.m, block_midpoint(c, s), atol=1e-12)
        np.testing.assert_allclose(r.m, [[0.8535534, 0.3535534],
                                         [0.3535534, 0.1464466]], atol=1e-7)
        # ||p - r|| = sqrt((1 - c)/2)
        assert opnorm(P - r.m) == pytest.approx(0.3826834, abs=1e-7)

    def test_sixty(self):
        r = tp.generic_midpoint(P, Q60)
        np.testing.assert_allclose(r.m, [[0.75, np.sqrt(3) / 4],
                                         [np.sqrt(3) / 4, 0.25]], atol=1e-12)
        assert opnorm(P - r.m) == pytest.approx(0.5, abs=1e-12)

    def test_equal_pair(self):
        p = pa.random_projection(4, 2, 8)
        np.testing.assert_allclose(tp.generic_midpoint(p, p).m, p.m, atol=1e-12)

    def test_rejects_complementary_piece(self):
        with pytest.raises(SumNotInjective):
            tp.generic_midpoint(P, np.eye(2) - P)

    @given(seeds, st.integers(1, 12))
    def test_matches_block_formula_and_involution(self, seed, n):
        rng = np.random.default_rng(seed)
        g = int(rng.integers(0, n // 2 + 1))
        d11 = int(rng.integers(0, n - 2 * g + 1))
        angles = np.sort(rng.uniform(1e-3, np.pi / 2 - 1e-3, g))
        u = random_unitary(n, rng)
        p, q = pair_from_blocks(u, d11, n - 2 * g - d11, 0, 0, angles)
        rb = np.zeros((n, n))
        rb[:d11, :d11] = np.eye(d11)
        k = n - 2 * g
        for i, th in enumerate(angles):
            rb[k + 2 * i:k + 2 * i + 2, k + 2 * i:k + 2 * i + 2] = \
                block_midpoint(np.cos(th), np.sin(th))
        expected = u @ rb @ u.conj().T
        r = tp.generic_midpoint(p, q)
        assert opnorm(r.m - expected) <= 1e-8
        assert opnorm(p.m - r.m) <= 1 / np.sqrt(2) + 1e-8
        assert opnorm(q.m - r.m) <= 1 / np.sqrt(2) + 1e-8

        tau = tp.halmos_involution(tp.halmos_form(p, q))
        assert opnorm(tau @ tau - np.eye(n)) <= 1e-10
        assert opnorm(tau @ p.m @ tau - q.m) <= 1e-8
        assert opnorm(tau @ r.m - r.m @ tau) <= 1e-8


class TestComplementaryMidpoint:
    def test_two_by_two(self):
        r = tp.complementary_midpoint(P, np.eye(2) - P)
        np.testing.assert_allclose(r.m, Q45, atol=1e-15)
        assert opnorm(r.m - P) == pytest.approx(0.7071068, abs=1e-7)

    def test_embedded_block(self):
        r = tp.complementary_midpoint(np.diag([1, 0, 0, 0]), np.diag([0, 1, 0, 0]))
        expected = np.zeros((4, 4))
        expected[:2, :2] = 0.5
        np.testing.assert_allclose(r.m, expected, atol=1e-15)

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatch):
            tp.complementary_midpoint(np.diag([1, 1, 0]), np.diag([0, 0, 1]))

    def test_not_orthogonal(self):
        with pytest.raises(NotOrthogonal):
            tp.complementary_midpoint(P, Q45)

    @given(seeds, st.integers(1, 6))
    def test_distance_is_exactly_inv_sqrt2(self, seed, k):
        u = random_unitary(2 * k + 1, seed)
        bp, bq = u[:, :k], u[:, k:2 * k]
        p0, q0 = bp @ bp.conj().T, bq @ bq.conj().T
        r = tp.complementary_midpoint(p0, q0)
        pi = p0 + q0
        assert opnorm(r.m @ r.m - r.m) <= 1e-12
        assert opnorm(r.m - pi @ r.m @ pi) <= 1e-12
        # (r - p0)^2 = pi / 2
        d = r.m - p0
        assert opnorm(d @ d - pi / 2) <= 1e-12
        assert opnorm(r.m - p0) == pytest.approx(1 / np.sqrt(2), abs=1e-8)
        assert opnorm(r.m - q0) == pytest.approx(1 / np.sqrt(2), abs=1e-8)

    def test_deterministic(self):
        a = tp.complementary_midpoint(np.diag([1, 1, 0, 0]), np.diag([0, 0, 1, 1]))
        b = tp.complementary_midpoint(np.diag([1, 1, 0, 0]), np.diag([0, 0, 1, 1]))
        np.testing.assert_array_equal(a.m, b.m)


class TestFindCommonBall:
    def test_equal_pair(self):
        p = pa.random_projection(5, 3, 2)
        np.testing.assert_allclose(tp.find_common_ball(p, p).m, p.m, atol=1e-12)

    def test_complementary(self):
        np.testing.assert_allclose(tp.find_common_ball(P, np.eye(2) - P).m, Q45,
                                   atol=1e-15)

    def test_mixed_generic_and_complementary(self):
        p = np.zeros((4, 4), dtype=complex)
        q = np.zeros((4, 4), dtype=complex)
        p[:2, :2], q[:2, :2] = P, Q45
        p[2, 2], q[3, 3] = 1.0, 1.0
        r = tp.find_common_ball(p, q).m
        expected = np.zeros((4, 4))
        expected[:2, :2] = block_midpoint(1 / np.sqrt(2), 1 / np.sqrt(2))
        expected[2:, 2:] = 0.5
        np.testing.assert_allclose(r, expected, atol=1e-12)
        assert max(opnorm(r - p), opnorm(r - q)) <= BOUND

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatch):
            tp.find_common_ball(np.eye(2), P)

    @given(seeds, st.integers(1, 16))
    def test_bound_and_membership(self, seed, n):
        p, q = random_same_rank_pair(n, seed)
        r, cert = tp.find_common_ball(p, q, certificate=True)
        assert opnorm(r.m @ r.m - r.m) <= 1e-8
        assert opnorm(r.m - r.m.conj().T) <= 1e-8
        assert max(opnorm(r.m - p.m), opnorm(r.m - q.m)) <= BOUND
        assert cert.max_dist == pytest.approx(
            max(opnorm(r.m - p.m), opnorm(r.m - q.m)), abs=1e-12)
        rep = pa.ball_predicates(p, r)
        assert rep.invertible_sum and rep.norm_lt_one and rep.direct_sum
        rep = pa.ball_predicates(q, r)
        assert rep.invertible_sum and rep.norm_lt_one and rep.direct_sum
