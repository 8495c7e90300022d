"""Commuting contraction pairs and their defect operators.

A pair (A1, A2) of commuting n x n matrices is treated throughout as the
row operator A = [A1 A2] from C^n + C^n to C^n. The two defect square
roots

    defect_star = (I - A1 A1* - A2 A2*)^(1/2)   (n x n)
    defect      = (I_{2n} - A* A)^(1/2)          (2n x 2n)

exist exactly when the row operator is a contraction, which is what
build_pair enforces. The purity index is the top eigenvalue of
A1 A1* + A2 A2*; strictly below 1 the pair has no isometric part.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    NotCommutingError,
    NotContractionError,
    NotPSDError,
    TupleFormatError,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    as_complex_matrix,
    herm,
    min_eig_hermitian,
    psd_sqrt,
)


@dataclass(frozen=True)
class BallPoint:
    """A point (z1, z2) of C^2, usually inside the unit ball."""

    z1: complex
    z2: complex

    def __post_init__(self):
        object.__setattr__(self, "z1", complex(self.z1))
        object.__setattr__(self, "z2", complex(self.z2))

    @classmethod
    def of(cls, z) -> "BallPoint":
        """Coerce a BallPoint or a (z1, z2) pair."""
        if isinstance(z, BallPoint):
            return z
        z1, z2 = z
        return cls(complex(z1), complex(z2))

    @property
    def norm_sq(self) -> float:
        return abs(self.z1) ** 2 + abs(self.z2) ** 2

    @property
    def is_interior(self) -> bool:
        """True when the point lies in the open unit ball of C^2."""
        return self.norm_sq < 1.0

    def as_tuple(self) -> tuple:
        return (self.z1, self.z2)


@dataclass(frozen=True)
class CommutingPair:
    """Validated commuting contraction pair with cached defect data.

    Instances come from build_pair / gen_commuting_pure / load_pair and
    hold read-only arrays; construct by hand only in tests.
    """

    n: int
    a1: np.ndarray
    a2: np.ndarray
    defect_star: np.ndarray
    defect: np.ndarray
    purity_index: float
    is_pure: bool
    defect_injective: bool
    defect_star_injective: bool

    def row(self) -> np.ndarray:
        """The row operator [A1 A2], shape (n, 2n)."""
        return np.hstack([self.a1, self.a2])

    def adjoints(self) -> tuple:
        return (self.a1.conj().T, self.a2.conj().T)


def _freeze(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.complex128)
    out.setflags(write=False)
    return out


def build_pair(a1, a2, tol: Tolerance = DEFAULT_TOL) -> CommutingPair:
    """Validate matrices and assemble a CommutingPair.

    Raises DimensionMismatchError for shape problems, NotCommutingError
    when the commutator exceeds tolerance, NotContractionError when the
    row operator fails to be a contraction (either defect square would
    have a genuinely negative eigenvalue).
    """
    m1 = as_complex_matrix(a1)
    m2 = as_complex_matrix(a2)
    if m1.shape[0] != m1.shape[1]:
        raise DimensionMismatchError(f"first matrix is {m1.shape[0]}x{m1.shape[1]}, not square")
    if m2.shape != m1.shape:
        raise DimensionMismatchError(f"shapes {m1.shape} and {m2.shape} differ")
    n = m1.shape[0]

    comm = m1 @ m2 - m2 @ m1
    comm_scale = 1.0 + np.linalg.norm(m1) * np.linalg.norm(m2)
    comm_norm = np.linalg.norm(comm)
    if comm_norm > tol.residual_abs * comm_scale:
        raise NotCommutingError(
            f"commutator norm {comm_norm:.3e} exceeds {tol.residual_abs:.1e}*{comm_scale:.3e}")

    gram_star = herm(m1 @ m1.conj().T + m2 @ m2.conj().T)
    row = np.hstack([m1, m2])
    gram = herm(row.conj().T @ row)
    d_star_sq = np.eye(n) - gram_star
    d_sq = np.eye(2 * n) - gram
    try:
        d_star = psd_sqrt(d_star_sq, tol)
        d = psd_sqrt(d_sq, tol)
    except NotPSDError as exc:
        raise NotContractionError(f"row operator is not a contraction: {exc}") from exc

    purity = float(np.linalg.eigvalsh(gram_star)[-1])
    purity = max(purity, 0.0)
    return CommutingPair(
        n=n,
        a1=_freeze(m1),
        a2=_freeze(m2),
        defect_star=_freeze(d_star),
        defect=_freeze(d),
        purity_index=purity,
        is_pure=purity <= 1.0 - tol.purity_margin,
        # judge injectivity on the squared defects, whose eigenvalues sit on
        # the fixed scale [0, 1]; the square root inflates roundoff zeros and
        # a rank relative to the matrix's own top singular value misreads an
        # all-roundoff defect as full rank
        defect_injective=min_eig_hermitian(herm(d_sq), tol) > tol.rank_rel,
        defect_star_injective=min_eig_hermitian(herm(d_star_sq), tol) > tol.rank_rel,
    )


def row_apply(pair: CommutingPair, vec) -> np.ndarray:
    """Apply the row operator: (x; y) in C^{2n} maps to A1 x + A2 y."""
    v = np.asarray(vec, dtype=np.complex128)
    flat = v.ndim == 1
    if flat:
        v = v.reshape(-1, 1)
    if v.shape[0] != 2 * pair.n:
        raise DimensionMismatchError(
            f"expected {2 * pair.n} rows for a stacked (x; y) argument, got {v.shape[0]}")
    out = pair.a1 @ v[: pair.n] + pair.a2 @ v[pair.n :]
    return out[:, 0] if flat else out


def gen_commuting_pure(n: int, seed: int = 0, target_norm: float = 0.9,
                       tol: Tolerance = DEFAULT_TOL) -> CommutingPair:
    """Deterministically generate a pure commuting pair of size n.

    Both matrices are quadratic polynomials in one shared random matrix,
    so they commute exactly; a joint rescale then pins the purity index
    to target_norm**2. The same (n, seed, target_norm) always yields the
    same pair.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 < target_norm < 1.0:
        raise ValueError("target_norm must lie in (0, 1)")
    attempt_seed = seed
    for _ in range(16):
        rng = np.random.default_rng(attempt_seed)
        m = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2 * n)
        c = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        eye = np.eye(n)
        m2 = m @ m
        a1 = c[0] * eye + c[1] * m + c[2] * m2
        a2 = c[3] * eye + c[4] * m + c[5] * m2
        top = float(np.linalg.eigvalsh(herm(a1 @ a1.conj().T + a2 @ a2.conj().T))[-1])
        if top <= 1e-12:
            # both polynomials vanished, essentially impossible but cheap to dodge
            attempt_seed += 1
            continue
        scale = target_norm / np.sqrt(top)
        return build_pair(scale * a1, scale * a2, tol)
    raise RuntimeError("could not generate a nonzero pair")  # pragma: no cover


def _encode(m: np.ndarray) -> list:
    return [[[float(x.real), float(x.imag)] for x in row] for row in m]


def _decode(obj, n: int, key: str) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != n:
        raise TupleFormatError(f"{key}: expected {n} rows")
    out = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != n:
            raise TupleFormatError(f"{key}: row {i} must have {n} entries")
        for j, entry in enumerate(row):
            if (not isinstance(entry, list) or len(entry) != 2
                    or not all(isinstance(t, (int, float)) for t in entry)):
                raise TupleFormatError(f"{key}[{i}][{j}]: expected [re, im]")
            out[i, j] = complex(entry[0], entry[1])
    return out


def pair_to_dict(pair: CommutingPair) -> dict:
    """JSON-ready dict with keys n, A1, A2; entries as [re, im]."""
    return {"n": pair.n, "A1": _encode(pair.a1), "A2": _encode(pair.a2)}


def pair_from_dict(data, tol: Tolerance = DEFAULT_TOL) -> CommutingPair:
    if not isinstance(data, dict):
        raise TupleFormatError("top-level JSON value must be an object")
    missing = {"n", "A1", "A2"} - set(data)
    if missing:
        raise TupleFormatError(f"missing keys: {sorted(missing)}")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise TupleFormatError("n must be a positive integer")
    a1 = _decode(data["A1"], n, "A1")
    a2 = _decode(data["A2"], n, "A2")
    return build_pair(a1, a2, tol)


def save_pair(pair: CommutingPair, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(pair_to_dict(pair), fh, indent=2)
        fh.write("\n")


def load_pair(path, tol: Tolerance = DEFAULT_TOL) -> CommutingPair:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise TupleFormatError(f"invalid JSON: {exc}") from exc
    return pair_from_dict(data, tol)
