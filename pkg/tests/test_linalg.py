import numpy as np
import pytest
from numpy.testing import assert_allclose

from taylorspec import (
    DEFAULT_TOL,
    NotHermitianError,
    NotPSDError,
    SingularMatrixError,
    Tolerance,
    kernel_basis,
    min_eig_hermitian,
    numerical_rank,
    psd_sqrt,
    solve,
)


def _rand_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


class TestTolerance:
    def test_defaults(self):
        tol = Tolerance()
        assert tol.rank_rel == 1e-10
        assert tol.residual_abs == 1e-8
        assert tol.purity_margin == 1e-10

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            Tolerance(rank_rel=-1e-10)


class TestPsdSqrt:
    def test_identity(self):
        assert_allclose(psd_sqrt(np.eye(4)), np.eye(4), atol=1e-14)

    def test_diagonal(self):
        root = psd_sqrt(np.diag([0.25, 4.0]))
        assert_allclose(root, np.diag([0.5, 2.0]), atol=1e-14)

    @pytest.mark.parametrize("seed", range(5))
    def test_squares_back(self, seed):
        rng = np.random.default_rng(seed)
        r = _rand_complex(rng, (5, 5))
        m = r @ r.conj().T
        s = psd_sqrt(m)
        scale = 1.0 + np.linalg.norm(m)
        assert np.linalg.norm(s @ s - m) <= 1e-12 * scale
        assert np.linalg.norm(s - s.conj().T) <= 1e-12 * (1.0 + np.linalg.norm(s))

    def test_monotone_on_diagonals(self):
        d = np.array([0.0, 0.3, 1.0, 2.5])
        assert_allclose(np.diag(psd_sqrt(np.diag(d))), np.sqrt(d), atol=1e-14)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            psd_sqrt(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_indefinite(self):
        with pytest.raises(NotPSDError):
            psd_sqrt(np.diag([1.0, -1.0]))

    def test_clamps_roundoff(self):
        # eigenvalue at -1e-14 relative is roundoff, not indefiniteness
        m = np.diag([1.0, -1e-14])
        root = psd_sqrt(m)
        assert root[1, 1] == 0.0


class TestNumericalRank:
    def test_zero_matrix(self):
        assert numerical_rank(np.zeros((3, 4))) == 0

    def test_tiny_singular_value_ignored(self):
        assert numerical_rank(np.diag([1.0, 1e-20])) == 1

    def test_full_rank(self):
        rng = np.random.default_rng(0)
        assert numerical_rank(_rand_complex(rng, (4, 6))) == 4

    @pytest.mark.parametrize("seed", range(4))
    def test_rank_plus_nullity(self, seed):
        rng = np.random.default_rng(seed)
        cols = int(rng.integers(2, 7))
        rows = int(rng.integers(2, 7))
        inner = int(rng.integers(1, min(rows, cols) + 1))
        m = _rand_complex(rng, (rows, inner)) @ _rand_complex(rng, (inner, cols))
        assert numerical_rank(m) + kernel_basis(m).shape[1] == cols


class TestKernelBasis:
    def test_near_singular_direction(self):
        k = kernel_basis(np.array([[1.0, 0.0], [0.0, 1e-16]]))
        assert k.shape == (2, 1)
        assert abs(k[1, 0]) > 0.999999

    def test_injective_gives_empty(self):
        k = kernel_basis(np.eye(3))
        assert k.shape == (3, 0)

    @pytest.mark.parametrize("seed", range(4))
    def test_vectors_annihilate(self, seed):
        rng = np.random.default_rng(seed)
        m = _rand_complex(rng, (3, 6))  # wide, nullity 3
        k = kernel_basis(m)
        assert k.shape[1] == 3
        assert_allclose(k.conj().T @ k, np.eye(3), atol=1e-12)
        norm_m = np.linalg.norm(m, 2)
        for j in range(k.shape[1]):
            assert np.linalg.norm(m @ k[:, j]) <= 10 * DEFAULT_TOL.rank_rel * norm_m


class TestMinEigHermitian:
    def test_identity(self):
        assert min_eig_hermitian(np.eye(3)) == pytest.approx(1.0)

    def test_indefinite_diagonal(self):
        assert min_eig_hermitian(np.diag([3.0, -2.0])) == pytest.approx(-2.0)

    def test_gram_nonnegative(self):
        rng = np.random.default_rng(1)
        b = _rand_complex(rng, (4, 4))
        assert min_eig_hermitian(b.conj().T @ b) >= -1e-12

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            min_eig_hermitian(np.array([[0.0, 2.0], [0.0, 0.0]]))


class TestSolve:
    def test_residual(self):
        rng = np.random.default_rng(2)
        m = _rand_complex(rng, (5, 5))
        b = _rand_complex(rng, (5, 2))
        x = solve(m, b)
        assert np.linalg.norm(m @ x - b) <= DEFAULT_TOL.residual_abs * (1 + np.linalg.norm(b))

    def test_rejects_singular(self):
        with pytest.raises(SingularMatrixError):
            solve(np.diag([1.0, 0.0]), np.ones(2))

    def test_rejects_non_square(self):
        with pytest.raises(SingularMatrixError):
            solve(np.ones((2, 3)), np.ones(2))
