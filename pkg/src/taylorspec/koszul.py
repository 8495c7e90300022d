"""Koszul complex of a commuting pair and the joint spectrum.

At a point z = (z1, z2) the two-variable Koszul complex of (A1, A2) is

    0 -> C^n --b0--> C^n + C^n --b1--> C^n -> 0

with b0 = stack(A1 - z1 I, A2 - z2 I) and b1 = [-(A2 - z2 I), A1 - z1 I].
Commutativity makes b1 b0 = 0, and z belongs to the joint spectrum
exactly when the complex fails to be exact somewhere. Exactness at each
of the three slots is probed through the corresponding Laplacian, whose
smallest eigenvalue is zero precisely on the matching spectral part.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ComplexPropertyError, TriangularizationError
from .linalg import DEFAULT_TOL, Tolerance, as_complex_matrix, min_eig_hermitian
from .pair import BallPoint, CommutingPair


@dataclass(frozen=True)
class KoszulMaps:
    """Boundary maps of the complex at one point."""

    point: BallPoint
    b0: np.ndarray
    b1: np.ndarray

    @property
    def n(self) -> int:
        return self.b0.shape[1]


def koszul_maps_raw(a1, a2, z, tol: Tolerance = DEFAULT_TOL) -> KoszulMaps:
    """Boundary maps for raw matrices, skipping contraction validation.

    Useful for adjoint pairs, which commute whenever the originals do
    but need not be contractions. Still verifies b1 b0 = 0.
    """
    m1 = as_complex_matrix(a1)
    m2 = as_complex_matrix(a2)
    point = BallPoint.of(z)
    n = m1.shape[0]
    eye = np.eye(n)
    s1 = m1 - point.z1 * eye
    s2 = m2 - point.z2 * eye
    b0 = np.vstack([s1, s2])
    b1 = np.hstack([-s2, s1])
    resid = np.linalg.norm(b1 @ b0)
    scale = 1.0 + np.linalg.norm(b0) * np.linalg.norm(b1)
    if resid > 1e-10 * scale:
        raise ComplexPropertyError(
            f"b1 b0 has norm {resid:.3e}; the matrices do not commute well enough")
    return KoszulMaps(point=point, b0=b0, b1=b1)


def koszul_maps(pair: CommutingPair, z, tol: Tolerance = DEFAULT_TOL) -> KoszulMaps:
    """Boundary maps of the Koszul complex of a validated pair at z."""
    return koszul_maps_raw(pair.a1, pair.a2, z, tol)


def laplacians(maps: KoszulMaps) -> tuple:
    """The three Koszul Laplacians (lap0, lap1, lap2).

    lap0 = b0* b0, lap1 = b0 b0* + b1* b1, lap2 = b1 b1*. Each is
    Hermitian positive semidefinite; a zero eigenvalue of lap_k marks
    failure of exactness at slot k.
    """
    b0, b1 = maps.b0, maps.b1
    lap0 = b0.conj().T @ b0
    lap1 = b0 @ b0.conj().T + b1.conj().T @ b1
    lap2 = b1 @ b1.conj().T
    return lap0, lap1, lap2


@dataclass(frozen=True)
class SpectrumClassification:
    """Spectral membership of one point, by Laplacian slot."""

    point: BallPoint
    lap0_min: float
    lap1_min: float
    lap2_min: float
    in_sigma1: bool
    in_sigma2: bool
    in_sigma3: bool

    @property
    def in_spectrum(self) -> bool:
        return self.in_sigma1 or self.in_sigma2 or self.in_sigma3


def _singular(lap: np.ndarray, tol: Tolerance) -> tuple:
    lo = min_eig_hermitian(lap, tol)
    thresh = tol.residual_abs * (1.0 + np.linalg.norm(lap, 2))
    return lo, bool(lo <= thresh)


def classify_point(pair: CommutingPair, z, tol: Tolerance = DEFAULT_TOL) -> SpectrumClassification:
    """Test membership of z in each part of the joint spectrum."""
    maps = koszul_maps(pair, z, tol)
    lap0, lap1, lap2 = laplacians(maps)
    m0, s1 = _singular(lap0, tol)
    m1, s2 = _singular(lap1, tol)
    m2, s3 = _singular(lap2, tol)
    return SpectrumClassification(
        point=maps.point,
        lap0_min=m0, lap1_min=m1, lap2_min=m2,
        in_sigma1=s1, in_sigma2=s2, in_sigma3=s3,
    )


@dataclass(frozen=True)
class SpectrumPoint:
    point: BallPoint
    multiplicity: int
    classification: SpectrumClassification


@dataclass(frozen=True)
class SpectrumResult:
    """Joint spectrum as deduplicated points with multiplicities."""

    points: tuple
    method: str

    def values(self) -> list:
        return [(p.point.z1, p.point.z2) for p in self.points]


def _schur_diagonal(pair: CommutingPair, rng, tol: Tolerance):
    """Try to co-triangularize via a Schur basis of a random combination."""
    c = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    _, q = scipy.linalg.schur(c[0] * pair.a1 + c[1] * pair.a2, output="complex")
    t1 = q.conj().T @ pair.a1 @ q
    t2 = q.conj().T @ pair.a2 @ q
    for a, t in ((pair.a1, t1), (pair.a2, t2)):
        low = np.linalg.norm(np.tril(t, -1))
        if low > tol.residual_abs * (1.0 + np.linalg.norm(a)):
            return None
    return np.stack([np.diag(t1), np.diag(t2)], axis=1)


def _best_common_eigvec(a1: np.ndarray, a2: np.ndarray) -> tuple:
    """Approximate common eigenvector, with its joint defect.

    For each eigenvalue of a1 the candidate space is the numerical
    kernel of a1 - lam I (at least one vector, the smallest singular
    direction); compressing a2 to that space and taking its eigenvectors
    yields candidates that are scored by their combined residual.
    """
    n = a1.shape[0]
    eye = np.eye(n)
    best_v, best_r = None, np.inf
    for lam in np.linalg.eigvals(a1):
        _, s, vh = np.linalg.svd(a1 - lam * eye)
        dim = max(1, int(np.count_nonzero(s <= 1e-8 * max(s[0], 1.0))))
        v_space = vh[n - dim :].conj().T
        w = np.linalg.eig(v_space.conj().T @ a2 @ v_space)[1]
        for k in range(w.shape[1]):
            v = v_space @ w[:, k]
            nv = np.linalg.norm(v)
            if nv < 1e-12:
                continue
            v = v / nv
            r = 0.0
            for a in (a1, a2):
                mu = np.vdot(v, a @ v)
                r += np.linalg.norm(a @ v - mu * v)
            if r < best_r:
                best_v, best_r = v, r
    return best_v, best_r


def _staircase_diagonal(a1: np.ndarray, a2: np.ndarray, tol: Tolerance) -> list:
    """Joint triangularization by repeated common-eigenvector deflation."""
    n = a1.shape[0]
    if n == 1:
        return [(a1[0, 0], a2[0, 0])]
    v, resid = _best_common_eigvec(a1, a2)
    scale = 1.0 + np.linalg.norm(a1) + np.linalg.norm(a2)
    if v is None or resid > 1e-6 * scale:
        raise TriangularizationError(
            f"no common eigenvector to residual {resid:.3e} at size {n}")
    seed = np.eye(n, dtype=np.complex128)
    seed[:, 0] = v
    q, r = np.linalg.qr(seed)
    q[:, 0] *= r[0, 0]  # undo the QR phase so the first column is exactly v
    t1 = q.conj().T @ a1 @ q
    t2 = q.conj().T @ a2 @ q
    head = (t1[0, 0], t2[0, 0])
    return [head] + _staircase_diagonal(t1[1:, 1:], t2[1:, 1:], tol)


def _dedup(diag: np.ndarray) -> list:
    """Cluster diagonal pairs within 1e-6 and average each cluster."""
    order = np.lexsort((diag[:, 1].imag, diag[:, 1].real, diag[:, 0].imag, diag[:, 0].real))
    clusters = []
    for idx in order:
        z = diag[idx]
        for members in clusters:
            rep = np.mean(members, axis=0)
            if np.linalg.norm(z - rep) <= 1e-6:
                members.append(z)
                break
        else:
            clusters.append([z])
    out = []
    for members in clusters:
        rep = np.mean(members, axis=0)
        out.append((complex(rep[0]), complex(rep[1]), len(members)))
    out.sort(key=lambda t: (t[0].real, t[0].imag, t[1].real, t[1].imag))
    return out


def taylor_spectrum(pair: CommutingPair, tol: Tolerance = DEFAULT_TOL,
                    seed: int = 0, method: str = "auto") -> SpectrumResult:
    """Compute the joint spectrum of a commuting pair.

    The default strategy draws a random linear combination of the two
    matrices, takes its complex Schur basis and checks that it
    triangularizes both matrices; up to eight draws are attempted before
    falling back to explicit common-eigenvector deflation. Results are
    deterministic in seed. method can force "schur" or "staircase".
    """
    if method not in ("auto", "schur", "staircase"):
        raise ValueError(f"unknown method {method!r}")
    diag = None
    used = method
    if method in ("auto", "schur"):
        rng = np.random.default_rng(seed)
        for _ in range(8):
            diag = _schur_diagonal(pair, rng, tol)
            if diag is not None:
                used = "schur"
                break
        if diag is None and method == "schur":
            raise TriangularizationError("no Schur basis co-triangularized the pair")
    if diag is None:
        pairs = _staircase_diagonal(np.array(pair.a1), np.array(pair.a2), tol)
        diag = np.array(pairs, dtype=np.complex128)
        used = "staircase"

    points = []
    for z1, z2, mult in _dedup(diag):
        pt = BallPoint(z1, z2)
        points.append(SpectrumPoint(
            point=pt,
            multiplicity=mult,
            classification=classify_point(pair, pt, tol),
        ))
    return SpectrumResult(points=tuple(points), method=used)
