"""Dense complex linear algebra primitives.

Everything downstream (defect operators, Koszul Laplacians, kernel
criteria) funnels through the handful of helpers in this module, so the
tolerance conventions live here: rank decisions are relative to the
largest singular value, identity residuals are absolute with a mild
scale factor.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitianError, NotPSDError, SingularMatrixError


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds shared across the package.

    rank_rel : relative singular-value cutoff for rank and kernel decisions
    residual_abs : absolute threshold for identity residuals and the
        Laplacian singularity test
    purity_margin : how far below 1 the purity index must stay for a pair
        to count as pure
    """

    rank_rel: float = 1e-10
    residual_abs: float = 1e-8
    purity_margin: float = 1e-10

    def __post_init__(self):
        if min(self.rank_rel, self.residual_abs, self.purity_margin) < 0:
            raise ValueError("tolerances must be nonnegative")


DEFAULT_TOL = Tolerance()


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a 2-d complex128 array and reject non-finite entries."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"expected a matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains non-finite entries")
    return a


def herm(m: np.ndarray) -> np.ndarray:
    """Hermitian part (M + M*)/2."""
    return 0.5 * (m + m.conj().T)


def _check_hermitian(m, tol: Tolerance, who: str) -> np.ndarray:
    a = as_complex_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise NotHermitianError(f"{who}: matrix is {a.shape[0]}x{a.shape[1]}, not square")
    dev = np.linalg.norm(a - a.conj().T)
    if dev > tol.residual_abs * (1.0 + np.linalg.norm(a)):
        raise NotHermitianError(f"{who}: Hermitian deviation {dev:.3e} exceeds tolerance")
    return herm(a)


def psd_sqrt(m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues in [-rank_rel * scale, 0) are treated as roundoff and
    clamped to zero; anything more negative raises NotPSDError, which in
    practice means the originating tuple is not a contraction.
    """
    a = _check_hermitian(m, tol, "psd_sqrt")
    w, v = np.linalg.eigh(a)
    scale = max(abs(w[0]), abs(w[-1]))
    if w[0] < -tol.rank_rel * scale:
        raise NotPSDError(f"psd_sqrt: eigenvalue {w[0]:.3e} below -{tol.rank_rel:.1e}*{scale:.3e}")
    w = np.clip(w, 0.0, None)
    return herm((v * np.sqrt(w)) @ v.conj().T)


def numerical_rank(m, tol: Tolerance = DEFAULT_TOL) -> int:
    """Number of singular values above rank_rel times the largest one."""
    a = as_complex_matrix(m)
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_rel * s[0]))


def kernel_basis(m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the numerical null space, as matrix columns.

    Returns a (cols, k) array; k = 0 when the matrix is injective. The
    columns are the right singular vectors whose singular values fall at
    or below the rank threshold.
    """
    a = as_complex_matrix(m)
    _, s, vh = np.linalg.svd(a)
    rank = 0
    if s.size and s[0] > 0.0:
        rank = int(np.count_nonzero(s > tol.rank_rel * s[0]))
    return vh[rank:].conj().T


def min_eig_hermitian(m, tol: Tolerance = DEFAULT_TOL) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    a = _check_hermitian(m, tol, "min_eig_hermitian")
    return float(np.linalg.eigvalsh(a)[0])


def solve(m, b, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Solve M X = B for X, refusing numerically singular systems."""
    a = as_complex_matrix(m)
    rhs = as_complex_matrix(b)
    if a.shape[0] != a.shape[1]:
        raise SingularMatrixError(f"solve: matrix is {a.shape[0]}x{a.shape[1]}, not square")
    if a.shape[1] != rhs.shape[0]:
        raise SingularMatrixError(
            f"solve: shapes {a.shape} and {rhs.shape} are incompatible")
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= tol.rank_rel * s[0]:
        raise SingularMatrixError("solve: matrix numerically singular")
    return np.linalg.solve(a, rhs)
