"""Characteristic function of a commuting pair and kernel criteria.

The characteristic function of a pair A = (A1, A2) at a ball point z is
the n x 2n matrix

    theta(z) = -[A1 A2] + defect_star (I - z1 A1* - z2 A2*)^{-1} [z1 I  z2 I] defect,

a map from the defect space of the row operator to the defect space of
its adjoint. For pure pairs with injective defect_star it detects all
three parts of the joint spectrum through kernel conditions, which the
sigma*_via_charfn functions implement; each returns the witness vector
it found so callers can re-verify independently.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import HypothesisError, ResolventSingularError
from .koszul import koszul_maps
from .linalg import DEFAULT_TOL, Tolerance, kernel_basis, numerical_rank
from .pair import BallPoint, CommutingPair


def _resolvent_star(pair: CommutingPair, point: BallPoint, tol: Tolerance) -> np.ndarray:
    """I - z1 A1* - z2 A2*, checked invertible."""
    a1s, a2s = pair.adjoints()
    r = np.eye(pair.n) - point.z1 * a1s - point.z2 * a2s
    s = np.linalg.svd(r, compute_uv=False)
    if s[-1] <= tol.rank_rel * max(s[0], 1.0):
        raise ResolventSingularError(
            f"I - z1 A1* - z2 A2* numerically singular at ({point.z1}, {point.z2})")
    return r


def theta(pair: CommutingPair, z, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Evaluate the characteristic function at z, as an (n, 2n) matrix."""
    point = BallPoint.of(z)
    n = pair.n
    r = _resolvent_star(pair, point, tol)
    zrow = np.hstack([point.z1 * np.eye(n), point.z2 * np.eye(n)])
    return -pair.row() + pair.defect_star @ np.linalg.solve(r, zrow @ pair.defect)


def kernel_identity_residual(pair: CommutingPair, z, x, y,
                             tol: Tolerance = DEFAULT_TOL) -> float:
    """Residual of the closed form of theta(z) defect acting on (x; y).

    The product theta(z) defect applied to a stacked vector equals
    defect_star R^{-1} [(z1 x + z2 y) - (A1 x + A2 y)] with
    R = I - z1 A1* - z2 A2*; the returned norm measures how far the two
    evaluations drift apart.
    """
    point = BallPoint.of(z)
    xv = np.asarray(x, dtype=np.complex128).reshape(-1)
    yv = np.asarray(y, dtype=np.complex128).reshape(-1)
    lhs = theta(pair, point, tol) @ (pair.defect @ np.concatenate([xv, yv]))
    r = _resolvent_star(pair, point, tol)
    combo = (point.z1 * xv + point.z2 * yv) - (pair.a1 @ xv + pair.a2 @ yv)
    rhs = pair.defect_star @ np.linalg.solve(r, combo)
    return float(np.linalg.norm(lhs - rhs))


def adjoint_kernel_identity_residual(pair: CommutingPair, z, x,
                                     tol: Tolerance = DEFAULT_TOL) -> float:
    """Residual of the closed form of theta(z)* defect_star acting on x.

    theta(z)* defect_star x = defect [ -(A1* x; A2* x)
                                       + (conj z1; conj z2) kron S^{-1} defect_star^2 x ]
    with S = I - conj(z1) A1 - conj(z2) A2.
    """
    point = BallPoint.of(z)
    xv = np.asarray(x, dtype=np.complex128).reshape(-1)
    lhs = theta(pair, point, tol).conj().T @ (pair.defect_star @ xv)
    s_mat = np.eye(pair.n) - np.conj(point.z1) * pair.a1 - np.conj(point.z2) * pair.a2
    sv = np.linalg.svd(s_mat, compute_uv=False)
    if sv[-1] <= tol.rank_rel * max(sv[0], 1.0):
        raise ResolventSingularError("I - conj(z1) A1 - conj(z2) A2 numerically singular")
    a1s, a2s = pair.adjoints()
    u = np.linalg.solve(s_mat, pair.defect_star @ (pair.defect_star @ xv))
    inner = np.concatenate([
        -(a1s @ xv) + np.conj(point.z1) * u,
        -(a2s @ xv) + np.conj(point.z2) * u,
    ])
    rhs = pair.defect @ inner
    return float(np.linalg.norm(lhs - rhs))


@dataclass(frozen=True)
class KernelCriterion:
    """Outcome of a kernel-based spectrum membership test."""

    holds: bool
    witness: np.ndarray | None
    kernel_dim: int


def _require_pure_injective(pair: CommutingPair, who: str):
    if not pair.is_pure:
        raise HypothesisError(f"{who}: pair is not pure (purity_index {pair.purity_index:.6f})")
    if not pair.defect_star_injective:
        raise HypothesisError(f"{who}: defect_star is not injective")


def swap_halves(vecs: np.ndarray) -> np.ndarray:
    """(x; y) -> (-y; x) on stacked vectors or column collections.

    This is the map carrying kernel vectors of theta(z) defect onto
    one-cycles of the Koszul complex at z.
    """
    v = np.asarray(vecs, dtype=np.complex128)
    half = v.shape[0] // 2
    return np.concatenate([-v[half:], v[:half]], axis=0)


def sigma1_via_charfn(pair: CommutingPair, z, tol: Tolerance = DEFAULT_TOL) -> KernelCriterion:
    """Joint-eigenvector test through the characteristic function.

    z lies in the point part of the spectrum iff some x != 0 is killed
    by theta(z) defect in both slot embeddings (x; 0) and (0; x). The
    witness, when present, is a common eigenvector candidate.
    """
    _require_pure_injective(pair, "sigma1_via_charfn")
    n = pair.n
    m = theta(pair, z, tol) @ pair.defect
    stacked = np.vstack([m[:, :n], m[:, n:]])
    k = kernel_basis(stacked, tol)
    holds = k.shape[1] > 0
    return KernelCriterion(holds=holds, witness=k[:, 0] if holds else None,
                           kernel_dim=k.shape[1])


def sigma2_via_charfn(pair: CommutingPair, z, tol: Tolerance = DEFAULT_TOL) -> KernelCriterion:
    """Middle-homology test through the characteristic function.

    The kernel of theta(z) defect, transported by swap_halves, spans the
    one-cycles; z sits in the middle part iff that span is strictly
    larger than the range of the first boundary map. The witness is a
    one-cycle with a component outside that range.
    """
    _require_pure_injective(pair, "sigma2_via_charfn")
    m = theta(pair, z, tol) @ pair.defect
    k = kernel_basis(m, tol)
    if k.shape[1] == 0:
        return KernelCriterion(holds=False, witness=None, kernel_dim=0)
    b0 = koszul_maps(pair, z, tol).b0
    u, sv, _ = np.linalg.svd(b0)
    rank = int(np.count_nonzero(sv > tol.rank_rel * max(sv[0], 1.0))) if sv.size else 0
    ran = u[:, :rank]
    cycles = swap_halves(k)
    holds = numerical_rank(np.hstack([cycles, ran]), tol) > rank
    witness = None
    if holds:
        out = cycles - ran @ (ran.conj().T @ cycles)
        _, sv2, vh2 = np.linalg.svd(out)
        witness = cycles @ vh2[0].conj()
        witness = witness / np.linalg.norm(witness)
    return KernelCriterion(holds=holds, witness=witness, kernel_dim=k.shape[1])


def sigma3_via_charfn(pair: CommutingPair, z, tol: Tolerance = DEFAULT_TOL) -> KernelCriterion:
    """Surjectivity-defect test: kernel of theta(z)* defect_star."""
    _require_pure_injective(pair, "sigma3_via_charfn")
    m = theta(pair, z, tol).conj().T @ pair.defect_star
    k = kernel_basis(m, tol)
    holds = k.shape[1] > 0
    return KernelCriterion(holds=holds, witness=k[:, 0] if holds else None,
                           kernel_dim=k.shape[1])
