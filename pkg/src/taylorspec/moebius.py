"""Involutive automorphisms of the unit ball acting on points and pairs.

For a nonzero lambda = (lambda1, lambda2) in the open unit ball of C^2
there is a unique involutive biholomorphism of the ball swapping 0 and
lambda. It extends to commuting contraction pairs, and the extension is
again a commuting contraction that is pure when the input is. The two
defect unitaries returned by omega_pair intertwine the characteristic
functions of a pair and of its image, which is what makes the spectral
mapping criteria at the bottom of this module work.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .charfn import swap_halves, theta
from .errors import (
    BadLambdaError,
    DefectSingularError,
    HypothesisError,
    OutsideBallError,
    ResolventSingularError,
    TaylorSpecError,
    ValidationFailedError,
)
from .koszul import classify_point, koszul_maps
from .linalg import DEFAULT_TOL, Tolerance, kernel_basis, numerical_rank
from .pair import BallPoint, CommutingPair, build_pair


@dataclass(frozen=True)
class Automorphism:
    """Ball automorphism data derived from the base point lambda.

    d_lambda holds the 2x2 block coefficients of the defect of the
    constant row [lambda1 I, lambda2 I]; d_lambda_matrix realizes the
    2n x 2n operator for a given n via a Kronecker product.
    d_lambda_star_scale is s = sqrt(1 - |lambda|^2), since the adjoint
    defect of the constant row is the scalar s times the identity.
    """

    lambda1: complex
    lambda2: complex
    norm_sq: float = field(init=False)
    s: float = field(init=False)
    d_lambda: np.ndarray = field(init=False)
    d_lambda_star_scale: float = field(init=False)

    def __post_init__(self):
        l1 = complex(self.lambda1)
        l2 = complex(self.lambda2)
        object.__setattr__(self, "lambda1", l1)
        object.__setattr__(self, "lambda2", l2)
        nsq = abs(l1) ** 2 + abs(l2) ** 2
        if nsq == 0.0:
            raise BadLambdaError("lambda must be nonzero")
        if nsq >= 1.0:
            raise BadLambdaError(f"lambda lies outside the open ball (|lambda|^2 = {nsq:.6f})")
        s = float(np.sqrt(1.0 - nsq))
        block = np.array([
            [abs(l2) ** 2 + abs(l1) ** 2 * s, np.conj(l1) * l2 * (s - 1.0)],
            [l1 * np.conj(l2) * (s - 1.0), abs(l1) ** 2 + abs(l2) ** 2 * s],
        ], dtype=np.complex128) / nsq
        block.setflags(write=False)
        object.__setattr__(self, "norm_sq", float(nsq))
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "d_lambda", block)
        object.__setattr__(self, "d_lambda_star_scale", s)

    def d_lambda_matrix(self, n: int) -> np.ndarray:
        return np.kron(self.d_lambda, np.eye(n))

    def as_point(self) -> BallPoint:
        return BallPoint(self.lambda1, self.lambda2)


def phi_point(auto: Automorphism, z) -> BallPoint:
    """Apply the automorphism to a point of the closed unit ball."""
    point = BallPoint.of(z)
    if point.norm_sq > 1.0 + 1e-12:
        raise OutsideBallError(f"point has |z|^2 = {point.norm_sq:.6f} > 1")
    ip = point.z1 * np.conj(auto.lambda1) + point.z2 * np.conj(auto.lambda2)
    factor = auto.s / (1.0 - ip)
    shrink = (1.0 - auto.s) * ip / auto.norm_sq
    return BallPoint(
        auto.lambda1 - factor * (point.z1 - shrink * auto.lambda1),
        auto.lambda2 - factor * (point.z2 - shrink * auto.lambda2),
    )


def _resolvent(auto: Automorphism, pair: CommutingPair, tol: Tolerance) -> np.ndarray:
    """I - conj(lambda1) A1 - conj(lambda2) A2, checked invertible."""
    r = np.eye(pair.n) - np.conj(auto.lambda1) * pair.a1 - np.conj(auto.lambda2) * pair.a2
    s = np.linalg.svd(r, compute_uv=False)
    if s[-1] <= tol.rank_rel * max(s[0], 1.0):
        raise ResolventSingularError("I - conj(l1) A1 - conj(l2) A2 numerically singular")
    return r


def _lambda_star_row(auto: Automorphism, pair: CommutingPair) -> np.ndarray:
    """The 2n x 2n product of the column [conj(l1) I; conj(l2) I] with the row [A1 A2]."""
    l1c = np.conj(auto.lambda1)
    l2c = np.conj(auto.lambda2)
    return np.block([
        [l1c * pair.a1, l1c * pair.a2],
        [l2c * pair.a1, l2c * pair.a2],
    ])


def phi_tuple(auto: Automorphism, pair: CommutingPair,
              tol: Tolerance = DEFAULT_TOL) -> CommutingPair:
    """Apply the automorphism to a commuting pair.

    The image row is [l1 I, l2 I] - s (I - conj(l1) A1 - conj(l2) A2)^{-1}
    [A1 A2] d_lambda, revalidated through build_pair; a validation
    failure indicates conditioning trouble, not bad input.
    """
    n = pair.n
    r = _resolvent(auto, pair, tol)
    lam_row = np.hstack([auto.lambda1 * np.eye(n), auto.lambda2 * np.eye(n)])
    row = lam_row - auto.s * np.linalg.solve(r, pair.row() @ auto.d_lambda_matrix(n))
    try:
        return build_pair(row[:, :n], row[:, n:], tol)
    except TaylorSpecError as exc:
        raise ValidationFailedError(f"transformed pair failed validation: {exc}") from exc


def phi_tuple_explicit(auto: Automorphism, pair: CommutingPair,
                       tol: Tolerance = DEFAULT_TOL) -> tuple:
    """Componentwise closed form of phi_tuple, as raw matrices.

    Independent of phi_tuple's evaluation path: the block coefficients
    of d_lambda are folded into each component by hand. Used to
    cross-check the operator route.
    """
    n = pair.n
    r = _resolvent(auto, pair, tol)
    rinv = np.linalg.solve(r, np.eye(n))
    l1, l2, s = auto.lambda1, auto.lambda2, auto.s
    pref = s / auto.norm_sq
    c11 = abs(l2) ** 2 + abs(l1) ** 2 * s
    c22 = abs(l1) ** 2 + abs(l2) ** 2 * s
    b1 = l1 * np.eye(n) - pref * rinv @ (c11 * pair.a1 + l1 * np.conj(l2) * (s - 1.0) * pair.a2)
    b2 = l2 * np.eye(n) - pref * rinv @ (np.conj(l1) * l2 * (s - 1.0) * pair.a1 + c22 * pair.a2)
    return b1, b2


def block_resolvent(auto: Automorphism, pair: CommutingPair,
                    tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """(I - Lambda* A)^{-1} assembled from n x n blocks.

    With R = (I - conj(l1) A1 - conj(l2) A2)^{-1}, the inverse is
    [[R (I - conj(l2) A2), conj(l1) A2 R], [conj(l2) A1 R, R (I - conj(l1) A1)]];
    R commutes with both matrices, so the factors may be written on
    either side.
    """
    n = pair.n
    r = _resolvent(auto, pair, tol)
    rinv = np.linalg.solve(r, np.eye(n))
    l1c = np.conj(auto.lambda1)
    l2c = np.conj(auto.lambda2)
    return np.block([
        [rinv @ (np.eye(n) - l2c * pair.a2), l1c * (pair.a2 @ rinv)],
        [l2c * (pair.a1 @ rinv), rinv @ (np.eye(n) - l1c * pair.a1)],
    ])


def _omega_with_image(auto: Automorphism, pair: CommutingPair, image: CommutingPair,
                      tol: Tolerance) -> tuple:
    n = pair.n
    for p, who in ((pair, "input"), (image, "transformed")):
        if not (p.defect_injective and p.defect_star_injective):
            raise DefectSingularError(f"{who} pair has a singular defect operator")
    blockres = block_resolvent(auto, pair, tol)
    direct = np.linalg.inv(np.eye(2 * n) - _lambda_star_row(auto, pair))
    dev = np.linalg.norm(blockres - direct)
    if dev > 1e-10 * (1.0 + np.linalg.norm(direct)):
        raise ValidationFailedError(
            f"block resolvent deviates from direct inversion by {dev:.3e}")
    omega = pair.defect @ blockres @ auto.d_lambda_matrix(n) @ np.linalg.inv(image.defect)
    star_res = np.linalg.inv(
        np.eye(n) - auto.lambda1 * pair.a1.conj().T - auto.lambda2 * pair.a2.conj().T)
    # The two characteristic functions intertwine only after a global
    # phase; the minus sign fixes it, as the constant-tuple case shows.
    omega_star = -auto.s * (pair.defect_star @ star_res @ np.linalg.inv(image.defect_star))
    return omega, omega_star


def omega_pair(auto: Automorphism, pair: CommutingPair,
               tol: Tolerance = DEFAULT_TOL) -> tuple:
    """The two defect unitaries (omega, omega_star) linking pair and image.

    omega acts between the 2n-dimensional defect spaces, omega_star
    between the n-dimensional adjoint defect spaces. Both are unitary
    whenever all four defect operators are invertible, which
    DefectSingularError polices.
    """
    image = phi_tuple(auto, pair, tol)
    return _omega_with_image(auto, pair, image, tol)


def intertwining_residual(auto: Automorphism, pair: CommutingPair, z,
                          tol: Tolerance = DEFAULT_TOL) -> float:
    """Norm of omega_star theta_image(z) - theta_pair(phi(z)) omega."""
    point = BallPoint.of(z)
    image = phi_tuple(auto, pair, tol)
    omega, omega_star = _omega_with_image(auto, pair, image, tol)
    lhs = omega_star @ theta(image, point, tol)
    rhs = theta(pair, phi_point(auto, point), tol) @ omega
    return float(np.linalg.norm(lhs - rhs))


def defect_transport_residuals(auto: Automorphism, pair: CommutingPair,
                               tol: Tolerance = DEFAULT_TOL) -> tuple:
    """Residuals of the two defect transport identities under phi_tuple.

    r1: I - B*B = d_lambda (I - A* Lambda)^{-1} (I - A*A) (I - Lambda* A)^{-1} d_lambda
    r2: I - B B* = s^2 R (I - A A*) R*
    with B the transformed row and R the shared resolvent. Both vanish
    in exact arithmetic; r2 is why injectivity of defect_star transfers
    to the transformed pair.
    """
    n = pair.n
    image = phi_tuple(auto, pair, tol)
    res = np.linalg.inv(np.eye(2 * n) - _lambda_star_row(auto, pair))
    d_full = auto.d_lambda_matrix(n)
    lhs1 = image.defect @ image.defect
    rhs1 = d_full @ res.conj().T @ (pair.defect @ pair.defect) @ res @ d_full
    r1 = float(np.linalg.norm(lhs1 - rhs1))

    r = _resolvent(auto, pair, tol)
    rinv = np.linalg.solve(r, np.eye(n))
    lhs2 = image.defect_star @ image.defect_star
    rhs2 = auto.s ** 2 * rinv @ (pair.defect_star @ pair.defect_star) @ rinv.conj().T
    r2 = float(np.linalg.norm(lhs2 - rhs2))
    return r1, r2


@dataclass(frozen=True)
class ConsistencyReport:
    """Outcome of one spectral mapping check.

    criterion_holds is the kernel criterion evaluated on the source
    pair; mapped_flag is the Koszul classification of the transformed
    pair at the transformed point. forward_only marks criteria that are
    sufficient conditions, where a false criterion makes no claim.
    witness_residuals record how well produced witnesses annihilate.
    """

    point: BallPoint
    mapped_point: BallPoint
    criterion_holds: bool
    mapped_flag: bool
    forward_only: bool
    witness_residuals: tuple

    @property
    def consistent(self) -> bool:
        if self.forward_only:
            return (not self.criterion_holds) or self.mapped_flag
        return self.criterion_holds == self.mapped_flag


def _require(pair: CommutingPair, who: str, need_pure: bool = True):
    if need_pure and not pair.is_pure:
        raise HypothesisError(f"{who}: pair is not pure (purity_index {pair.purity_index:.6f})")
    if not pair.defect_star_injective:
        raise HypothesisError(f"{who}: defect_star is not injective")


def map_sigma1_check(auto: Automorphism, pair: CommutingPair, z,
                     tol: Tolerance = DEFAULT_TOL) -> ConsistencyReport:
    """Point-spectrum mapping: structured kernel vectors of theta(z) defect.

    The transformed point lies in the point part of the transformed
    pair's spectrum iff some y != 0 makes both structured vectors
    G (y; 0) and G (0; y), with G = (I - Lambda* A)^{-1} d_lambda, fall
    in the kernel of theta(z) defect.
    """
    _require(pair, "map_sigma1_check")
    point = BallPoint.of(z)
    n = pair.n
    mapped = phi_point(auto, point)
    image = phi_tuple(auto, pair, tol)
    m = theta(pair, point, tol) @ pair.defect
    g = block_resolvent(auto, pair, tol) @ auto.d_lambda_matrix(n)
    mg = m @ g
    k = kernel_basis(np.vstack([mg[:, :n], mg[:, n:]]), tol)
    criterion = k.shape[1] > 0
    residuals = ()
    if criterion:
        y = k[:, 0]
        residuals = (
            float(np.linalg.norm(m @ (g[:, :n] @ y))),
            float(np.linalg.norm(m @ (g[:, n:] @ y))),
        )
    flag = classify_point(image, mapped, tol).in_sigma1
    return ConsistencyReport(point=point, mapped_point=mapped, criterion_holds=criterion,
                             mapped_flag=flag, forward_only=False, witness_residuals=residuals)


def map_sigma2_check(auto: Automorphism, pair: CommutingPair, z,
                     tol: Tolerance = DEFAULT_TOL) -> ConsistencyReport:
    """Middle-homology mapping via the transported kernel.

    Kernel vectors of theta(z) defect transport to kernel vectors of the
    image's characteristic function through d_lambda^{-1}(I - Lambda* A);
    the transformed point sits in the middle part iff the transported
    one-cycles exceed the range of the image's first boundary map.
    """
    _require(pair, "map_sigma2_check")
    point = BallPoint.of(z)
    n = pair.n
    mapped = phi_point(auto, point)
    image = phi_tuple(auto, pair, tol)
    m = theta(pair, point, tol) @ pair.defect
    k = kernel_basis(m, tol)
    b0 = koszul_maps(image, mapped, tol).b0
    u, sv, _ = np.linalg.svd(b0)
    rank = int(np.count_nonzero(sv > tol.rank_rel * max(sv[0], 1.0))) if sv.size else 0
    ran = u[:, :rank]
    criterion = False
    residuals = ()
    if k.shape[1] > 0:
        transported = np.linalg.solve(
            auto.d_lambda_matrix(n), (np.eye(2 * n) - _lambda_star_row(auto, pair)) @ k)
        m_img = theta(image, mapped, tol) @ image.defect
        quality = float(np.max(
            np.linalg.norm(m_img @ transported, axis=0)
            / np.linalg.norm(transported, axis=0)))
        residuals = (quality,)
        cycles = swap_halves(transported)
        criterion = numerical_rank(np.hstack([cycles, ran]), tol) > rank
    flag = classify_point(image, mapped, tol).in_sigma2
    return ConsistencyReport(point=point, mapped_point=mapped, criterion_holds=criterion,
                             mapped_flag=flag, forward_only=False, witness_residuals=residuals)


def map_sigma3_check(auto: Automorphism, pair: CommutingPair, z,
                     tol: Tolerance = DEFAULT_TOL) -> ConsistencyReport:
    """Surjectivity-defect mapping, a forward-only criterion.

    A kernel vector y of theta(z)* defect_star transforms to
    X = s^{-1}(I - l1 A1* - l2 A2*) y, which witnesses the transformed
    point in the third part of the image's spectrum. An empty kernel
    makes no claim.
    """
    _require(pair, "map_sigma3_check", need_pure=False)
    point = BallPoint.of(z)
    n = pair.n
    mapped = phi_point(auto, point)
    image = phi_tuple(auto, pair, tol)
    m = theta(pair, point, tol).conj().T @ pair.defect_star
    k = kernel_basis(m, tol)
    criterion = k.shape[1] > 0
    residuals = ()
    if criterion:
        y = k[:, 0]
        x = (y - auto.lambda1 * (pair.a1.conj().T @ y)
             - auto.lambda2 * (pair.a2.conj().T @ y)) / auto.s
        m_img = theta(image, mapped, tol).conj().T @ image.defect_star
        residuals = (float(np.linalg.norm(m_img @ x) / max(np.linalg.norm(x), 1e-300)),)
    flag = classify_point(image, mapped, tol).in_sigma3
    return ConsistencyReport(point=point, mapped_point=mapped, criterion_holds=criterion,
                             mapped_flag=flag, forward_only=True, witness_residuals=residuals)
