import numpy as np
import pytest
from numpy.testing import assert_allclose

from taylorspec import (
    BallPoint,
    HypothesisError,
    ResolventSingularError,
    adjoint_kernel_identity_residual,
    build_pair,
    classify_point,
    gen_commuting_pure,
    kernel_identity_residual,
    koszul_maps,
    sigma1_via_charfn,
    sigma2_via_charfn,
    sigma3_via_charfn,
    swap_halves,
    theta,
)


def _unit(rng, n):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


class TestTheta:
    def test_zero_pair_is_coordinate_row(self, zero_pair):
        z = BallPoint(0.2, 0.1j)
        eye = np.eye(3)
        assert_allclose(theta(zero_pair, z), np.hstack([0.2 * eye, 0.1j * eye]), atol=1e-14)

    def test_at_origin_is_minus_row(self, diag_pair):
        assert_allclose(theta(diag_pair, (0.0, 0.0)), -diag_pair.row(), atol=1e-14)

    def test_shape(self, nilp_pair):
        assert theta(nilp_pair, (0.1, 0.1)).shape == (2, 4)

    def test_resolvent_pole(self):
        pair = build_pair(0.9 * np.eye(2), np.zeros((2, 2)))
        with pytest.raises(ResolventSingularError):
            theta(pair, (1.0 / 0.9, 0.0))

    def test_contractive_on_ball(self):
        # an inner-function analogue: values stay contractions inside the ball
        rng = np.random.default_rng(8)
        pair = gen_commuting_pure(3, seed=8)
        for _ in range(20):
            r = 0.95 * np.sqrt(rng.uniform())
            ang = rng.uniform(0, 2 * np.pi, size=2)
            u = rng.uniform()
            z = (r * np.sqrt(u) * np.exp(1j * ang[0]), r * np.sqrt(1 - u) * np.exp(1j * ang[1]))
            assert np.linalg.norm(theta(pair, z), 2) <= 1.0 + 1e-10


class TestKernelIdentities:
    def test_diag_pair_kernel_vectors(self, diag_pair):
        # at the first joint eigenvalue both coordinate slots of e1 are killed
        m = theta(diag_pair, (0.1, 0.3)) @ diag_pair.defect
        e1 = np.array([1.0, 0.0])
        zero = np.zeros(2)
        assert np.linalg.norm(m @ np.concatenate([e1, zero])) <= 1e-12
        assert np.linalg.norm(m @ np.concatenate([zero, e1])) <= 1e-12

    @pytest.mark.parametrize("seed", range(6))
    def test_identity_residual_random(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 6))
        pair = gen_commuting_pure(n, seed=1000 + seed)
        r = 0.9 * rng.uniform() ** 0.25
        ang = rng.uniform(0, 2 * np.pi, size=2)
        u = rng.uniform()
        z = (r * np.sqrt(u) * np.exp(1j * ang[0]), r * np.sqrt(1 - u) * np.exp(1j * ang[1]))
        x = _unit(rng, n)
        y = _unit(rng, n)
        assert kernel_identity_residual(pair, z, x, y) <= 1e-10

    @pytest.mark.parametrize("seed", range(6))
    def test_adjoint_identity_residual_random(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 6))
        pair = gen_commuting_pure(n, seed=2000 + seed)
        r = 0.9 * rng.uniform() ** 0.25
        ang = rng.uniform(0, 2 * np.pi, size=2)
        u = rng.uniform()
        z = (r * np.sqrt(u) * np.exp(1j * ang[0]), r * np.sqrt(1 - u) * np.exp(1j * ang[1]))
        x = _unit(rng, n)
        assert adjoint_kernel_identity_residual(pair, z, x) <= 1e-10

    def test_zero_pair_residual_exact(self, zero_pair):
        rng = np.random.default_rng(0)
        x = _unit(rng, 3)
        y = _unit(rng, 3)
        assert kernel_identity_residual(zero_pair, (0.4, 0.2), x, y) <= 1e-14
        assert adjoint_kernel_identity_residual(zero_pair, (0.4, 0.2), x) <= 1e-14


class TestSwapHalves:
    def test_single_vector(self):
        v = np.array([1.0, 2.0, 3.0, 4.0])
        assert_allclose(swap_halves(v.reshape(-1, 1))[:, 0], [-3.0, -4.0, 1.0, 2.0])

    def test_lands_in_cycles(self, nilp_pair):
        crit = sigma2_via_charfn(nilp_pair, (0.0, 0.0))
        maps = koszul_maps(nilp_pair, (0.0, 0.0))
        assert np.linalg.norm(maps.b1 @ crit.witness) <= 1e-10


class TestSigma1:
    def test_diag_pair_eigenvalue(self, diag_pair):
        crit = sigma1_via_charfn(diag_pair, (0.1, 0.3))
        assert crit.holds
        w = crit.witness / crit.witness[np.argmax(np.abs(crit.witness))]
        assert_allclose(w, [1.0, 0.0], atol=1e-10)

    def test_diag_pair_gap_point(self, diag_pair):
        crit = sigma1_via_charfn(diag_pair, (0.15, 0.35))
        assert not crit.holds
        assert crit.witness is None
        assert crit.kernel_dim == 0

    def test_nilpotent_origin(self, nilp_pair):
        crit = sigma1_via_charfn(nilp_pair, (0.0, 0.0))
        assert crit.holds
        w = crit.witness / crit.witness[np.argmax(np.abs(crit.witness))]
        assert_allclose(w, [1.0, 0.0], atol=1e-10)

    def test_zero_pair_origin(self, zero_pair):
        assert sigma1_via_charfn(zero_pair, (0.0, 0.0)).holds

    def test_witness_is_joint_eigenvector(self):
        pair = gen_commuting_pure(4, seed=17)
        from taylorspec import taylor_spectrum

        z1, z2 = taylor_spectrum(pair).values()[0]
        crit = sigma1_via_charfn(pair, (z1, z2))
        assert crit.holds
        v = crit.witness
        assert np.linalg.norm(pair.a1 @ v - z1 * v) <= 1e-7
        assert np.linalg.norm(pair.a2 @ v - z2 * v) <= 1e-7

    def test_requires_pure(self, nonpure_pair):
        with pytest.raises(HypothesisError):
            sigma1_via_charfn(nonpure_pair, (0.0, 0.0))


class TestSigma2:
    def test_nilpotent_origin(self, nilp_pair):
        crit = sigma2_via_charfn(nilp_pair, (0.0, 0.0))
        assert crit.holds
        assert crit.kernel_dim == 3
        maps = koszul_maps(nilp_pair, (0.0, 0.0))
        # witness is a cycle that is not a boundary
        assert np.linalg.norm(maps.b1 @ crit.witness) <= 1e-10
        resid = crit.witness - maps.b0 @ np.linalg.lstsq(maps.b0, crit.witness, rcond=None)[0]
        assert np.linalg.norm(resid) > 0.5

    def test_zero_pair_off_origin(self, zero_pair):
        crit = sigma2_via_charfn(zero_pair, (0.3, 0.0))
        assert not crit.holds
        # the kernel is fat but every swapped cycle is already a boundary
        assert crit.kernel_dim == 3
        assert crit.witness is None

    def test_matches_classification(self):
        pair = gen_commuting_pure(3, seed=19)
        from taylorspec import taylor_spectrum

        for z in taylor_spectrum(pair).values():
            assert sigma2_via_charfn(pair, z).holds == classify_point(pair, z).in_sigma2

    def test_requires_pure(self, nonpure_pair):
        with pytest.raises(HypothesisError):
            sigma2_via_charfn(nonpure_pair, (0.0, 0.0))


class TestSigma3:
    def test_nilpotent_origin(self, nilp_pair):
        crit = sigma3_via_charfn(nilp_pair, (0.0, 0.0))
        assert crit.holds
        w = crit.witness / crit.witness[np.argmax(np.abs(crit.witness))]
        assert_allclose(w, [0.0, 1.0], atol=1e-10)

    def test_zero_pair_off_origin(self, zero_pair):
        crit = sigma3_via_charfn(zero_pair, (0.3, 0.0))
        assert not crit.holds
        assert crit.kernel_dim == 0

    def test_zero_pair_origin(self, zero_pair):
        assert sigma3_via_charfn(zero_pair, (0.0, 0.0)).holds

    def test_forward_direction(self):
        # a kernel vector of the adjoint always certifies surjectivity failure
        pair = gen_commuting_pure(4, seed=23)
        from taylorspec import taylor_spectrum

        for z in taylor_spectrum(pair).values():
            crit = sigma3_via_charfn(pair, z)
            if crit.holds:
                assert classify_point(pair, z).in_sigma3

    def test_requires_pure(self, nonpure_pair):
        with pytest.raises(HypothesisError):
            sigma3_via_charfn(nonpure_pair, (0.0, 0.0))
