"""Property suite: every identity the package claims, as runnable checks.

Each check_* function sweeps randomized instances (deterministic in its
seed), measures the worst residual or counts disagreements, and returns
a PropertyResult. run_suite bundles them for the CLI verify command;
the acceptance tests call the individual checks with their own scopes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .charfn import (
    adjoint_kernel_identity_residual,
    kernel_identity_residual,
    sigma1_via_charfn,
    sigma2_via_charfn,
    sigma3_via_charfn,
    theta,
)
from .koszul import classify_point, koszul_maps_raw, laplacians, taylor_spectrum
from .linalg import DEFAULT_TOL, Tolerance, min_eig_hermitian, psd_sqrt
from .moebius import (
    Automorphism,
    block_resolvent,
    defect_transport_residuals,
    intertwining_residual,
    omega_pair,
    phi_point,
    phi_tuple,
    phi_tuple_explicit,
)
from .pair import (
    BallPoint,
    CommutingPair,
    build_pair,
    gen_commuting_pure,
    pair_from_dict,
    pair_to_dict,
)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    max_residual: float
    threshold: float
    passed: bool
    trials: int
    note: str = ""


def format_result(res: PropertyResult) -> str:
    status = "PASS" if res.passed else "FAIL"
    line = (f"{status}  {res.name:<28} max {res.max_residual:.3e}  "
            f"thr {res.threshold:.1e}  trials {res.trials}")
    if res.note:
        line += f"  [{res.note}]"
    return line


def _unit(rng, n: int) -> np.ndarray:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def _ball_point(rng, radius: float = 0.95) -> BallPoint:
    v = _unit(rng, 2)
    r = radius * rng.uniform() ** 0.25
    return BallPoint(r * v[0], r * v[1])


def _automorphism(rng) -> Automorphism:
    v = _unit(rng, 2)
    r = rng.uniform(0.15, 0.85)
    return Automorphism(r * v[0], r * v[1])


def standard_fixtures(tol: Tolerance = DEFAULT_TOL) -> list:
    """The three hand-built pairs with hand-picked probe points.

    Probe points stay at distance >= 0.02 from each spectrum so the
    Laplacian threshold cleanly separates members from non-members even
    for the nilpotent pair, whose Laplacian minima decay quartically.
    """
    zero = build_pair(np.zeros((3, 3)), np.zeros((3, 3)), tol)
    diag = build_pair(np.diag([0.1, 0.2]), np.diag([0.3, 0.4]), tol)
    nilp = build_pair(np.array([[0, 0.6], [0, 0]]), np.array([[0, 0.3], [0, 0]]), tol)
    return [
        ("zero", zero, [BallPoint(0, 0), BallPoint(0.3, 0), BallPoint(0.1, 0.2),
                        BallPoint(0, 0.45)]),
        ("diagonal", diag, [BallPoint(0.1, 0.3), BallPoint(0.2, 0.4), BallPoint(0.15, 0.35),
                            BallPoint(0, 0), BallPoint(0.5, 0.5)]),
        ("nilpotent", nilp, [BallPoint(0, 0), BallPoint(0.2, 0.1), BallPoint(0.1, 0.05),
                             BallPoint(0.3, 0.2)]),
    ]


def check_pair_invariants(trials: int, seed: int, tol: Tolerance = DEFAULT_TOL,
                          n: int = 4) -> PropertyResult:
    """Defect squares, purity flag, injectivity cross-flag, JSON round-trip."""
    worst = 0.0
    flags_ok = True
    for t in range(trials):
        pair = gen_commuting_pure(n, seed=seed + t)
        gram_star = pair.a1 @ pair.a1.conj().T + pair.a2 @ pair.a2.conj().T
        row = pair.row()
        worst = max(worst,
                    np.linalg.norm(pair.defect_star @ pair.defect_star
                                   - (np.eye(n) - gram_star)),
                    np.linalg.norm(pair.defect @ pair.defect
                                   - (np.eye(2 * n) - row.conj().T @ row)))
        if pair.is_pure != (pair.purity_index <= 1.0 - tol.purity_margin):
            flags_ok = False
        if pair.defect_injective != pair.defect_star_injective:
            flags_ok = False
        back = pair_from_dict(pair_to_dict(pair), tol)
        if not (np.array_equal(back.a1, pair.a1) and np.array_equal(back.a2, pair.a2)):
            flags_ok = False
    threshold = 1e-10
    return PropertyResult("pair-invariants", worst, threshold,
                          worst <= threshold and flags_ok, trials,
                          "" if flags_ok else "flag inconsistency")


def check_koszul_complex(trials: int, seed: int, tol: Tolerance = DEFAULT_TOL,
                         n: int = 4) -> PropertyResult:
    """b1 b0 = 0 relative residual at random points."""
    worst = 0.0
    for t in range(trials):
        pair = gen_commuting_pure(n, seed=seed + t)
        rng = np.random.default_rng(seed + 7000 + t)
        maps = koszul_maps_raw(pair.a1, pair.a2, _ball_point(rng), tol)
        scale = 1.0 + np.linalg.norm(maps.b0) * np.linalg.norm(maps.b1)
        worst = max(worst, np.linalg.norm(maps.b1 @ maps.b0) / scale)
    return PropertyResult("koszul-complex", worst, 1e-10, worst <= 1e-10, trials)


def check_kernel_identity(trials: int, seed: int, tol: Tolerance = DEFAULT_TOL,
                          ns: tuple = (2, 3, 4, 5, 6, 7, 8)) -> PropertyResult:
    """Closed form of theta(z) defect on stacked vectors, scale-normalized."""
    worst = 0.0
    for t in range(trials):
        n = ns[t % len(ns)]
        pair = gen_commuting_pure(n, seed=seed + t)
        rng = np.random.default_rng(seed + 5000 + t)
        z = _ball_point(rng)
        resid = kernel_identity_residual(pair, z, _unit(rng, n), _unit(rng, n), tol)
        worst = max(worst, resid / (1.0 + np.linalg.norm(pair.row(), 2)))
    return PropertyResult("kernel-identity", worst, 1e-9, worst <= 1e-9, trials)


def check_adjoint_kernel_identity(trials: int, seed: int, tol: Tolerance = DEFAULT_TOL,
                                  ns: tuple = (2, 3, 4, 5, 6, 7, 8)) -> PropertyResult:
    worst = 0.0
    for t in range(trials):
        n = ns[t % len(ns)]
        pair = gen_commuting_pure(n, seed=seed + t)
        rng = np.random.default_rng(seed + 6000 + t)
        resid = adjoint_kernel_identity_residual(pair, _ball_point(rng), _unit(rng, n), tol)
        worst = max(worst, resid)
    return PropertyResult("adjoint-kernel-identity", worst, 1e-9, worst <= 1e-9, trials)


def _off_spectrum_points(rng, spectrum_pts, count: int, margin: float = 0.15) -> list:
    out = []
    attempts = 0
    while len(out) < count and attempts < 200 * count:
        attempts += 1
        z = _ball_point(rng, radius=0.95)
        zv = np.array([z.z1, z.z2])
        dist = min((np.linalg.norm(zv - np.array([p.z1, p.z2])) for p in spectrum_pts),
                   default=np.inf)
        if dist >= margin:
            out.append(z)
    return out


def check_spectrum_classification(pairs_per_n: int, off_points: int, seed: int,
                                  tol: Tolerance = DEFAULT_TOL,
                                  ns: tuple = (2, 3, 4)) -> PropertyResult:
    """Triangularization vs Laplacian flags: no false positives or negatives.

    Every computed spectrum point must carry all three membership flags
    (for commuting matrices the three parts coincide as point sets), and
    random ball points well away from the spectrum must carry none.
    """
    mismatches = 0
    total = 0
    for n in ns:
        for i in range(pairs_per_n):
            pair = gen_commuting_pure(n, seed=seed + 1000 * n + i)
            result = taylor_spectrum(pair, tol, seed=seed)
            rng = np.random.default_rng(seed + 1000 * n + i + 101)
            for sp in result.points:
                total += 1
                c = sp.classification
                if not (c.in_sigma1 and c.in_sigma2 and c.in_sigma3):
                    mismatches += 1
            spec_pts = [sp.point for sp in result.points]
            for z in _off_spectrum_points(rng, spec_pts, off_points):
                total += 1
                if classify_point(pair, z, tol).in_spectrum:
                    mismatches += 1
    return PropertyResult("spectrum-classification", float(mismatches), 0.0,
                          mismatches == 0, total)


def check_sigma1_adjoint_duality(pairs: int, seed: int, tol: Tolerance = DEFAULT_TOL,
                                 n: int = 4) -> PropertyResult:
    """Point spectrum of the pair vs cokernel of the adjoint problem.

    z carries a joint eigenvector iff the conjugate point makes the
    adjoint pair's last Laplacian singular.
    """
    mismatches = 0
    total = 0
    for i in range(pairs):
        pair = gen_commuting_pure(n, seed=seed + i)
        result = taylor_spectrum(pair, tol, seed=seed)
        rng = np.random.default_rng(seed + 300 + i)
        probes = [sp.point for sp in result.points]
        probes += _off_spectrum_points(rng, probes, 5)
        for z in probes:
            total += 1
            direct = classify_point(pair, z, tol).in_sigma1
            maps = koszul_maps_raw(pair.a1.conj().T, pair.a2.conj().T,
                                   (np.conj(z.z1), np.conj(z.z2)), tol)
            lap2 = laplacians(maps)[2]
            lo = min_eig_hermitian(lap2, tol)
            dual = lo <= tol.residual_abs * (1.0 + np.linalg.norm(lap2, 2))
            if direct != dual:
                mismatches += 1
    return PropertyResult("sigma1-adjoint-duality", float(mismatches), 0.0,
                          mismatches == 0, total)


def _equivalence_scope(random_pairs: int, seed: int, tol: Tolerance):
    """Fixture points plus random pairs probed on and off their spectra."""
    scope = list(standard_fixtures(tol))
    for i in range(random_pairs):
        n = 2 + i % 3
        pair = gen_commuting_pure(n, seed=seed + 40 + i)
        result = taylor_spectrum(pair, tol, seed=seed)
        rng = np.random.default_rng(seed + 80 + i)
        pts = [sp.point for sp in result.points]
        pts += _off_spectrum_points(rng, pts, 3)
        scope.append((f"random-{i}", pair, pts))
    return scope


def check_sigma1_equivalence(random_pairs: int, seed: int,
                             tol: Tolerance = DEFAULT_TOL) -> PropertyResult:
    mismatches = 0
    total = 0
    for _, pair, pts in _equivalence_scope(random_pairs, seed, tol):
        for z in pts:
            total += 1
            if sigma1_via_charfn(pair, z, tol).holds != classify_point(pair, z, tol).in_sigma1:
                mismatches += 1
    return PropertyResult("sigma1-criterion", float(mismatches), 0.0,
                          mismatches == 0, total)


def check_sigma2_equivalence(random_pairs: int, seed: int,
                             tol: Tolerance = DEFAULT_TOL) -> PropertyResult:
    mismatches = 0
    total = 0
    for _, pair, pts in _equivalence_scope(random_pairs, seed, tol):
        for z in pts:
            total += 1
            if sigma2_via_charfn(pair, z, tol).holds != classify_point(pair, z, tol).in_sigma2:
                mismatches += 1
    return PropertyResult("sigma2-criterion", float(mismatches), 0.0,
                          mismatches == 0, total)


def check_sigma3_forward(random_pairs: int, seed: int,
                         tol: Tolerance = DEFAULT_TOL) -> PropertyResult:
    """Witness implies membership; the converse is reported, not required."""
    violations = 0
    converse_misses = 0
    total = 0
    for _, pair, pts in _equivalence_scope(random_pairs, seed, tol):
        for z in pts:
            total += 1
            crit = sigma3_via_charfn(pair, z, tol)
            flag = classify_point(pair, z, tol).in_sigma3
            if crit.holds and not flag:
                violations += 1
            if flag and not crit.holds:
                converse_misses += 1
    return PropertyResult("sigma3-forward", float(violations), 0.0, violations == 0,
                          total, note=f"converse misses: {converse_misses}")


def check_defect_transport(trials: int, seed: int, tol: Tolerance = DEFAULT_TOL,
                           n: int = 4) -> PropertyResult:
    """Both transport identities, plus injectivity transfer of defect_star."""
    worst = 0.0
    transfer_ok = True
    for t in range(trials):
        pair = gen_commuting_pure(n, seed=seed + t)
        rng = np.random.default_rng(seed + 9000 + t)
        auto = _automorphism(rng)
        r1, r2 = defect_transport_residuals(auto, pair, tol)
        worst = max(worst, r1, r2)
        if pair.defect_star_injective:
            if not phi_tuple(auto, pair, tol).defect_star_injective:
                transfer_ok = False
    return PropertyResult("defect-transport", worst, 1e-8,
                          worst <= 1e-8 and transfer_ok, trials,
                          "" if transfer_ok else "injectivity transfer broken")


def check_unitarity(trials: int, seed: int, tol: Tolerance = DEFAULT_TOL,
                    n: int = 4) -> PropertyResult:
    worst = 0.0
    for t in range(trials):
        pair = gen_commuting_pure(n, seed=seed + t)
        rng = np.random.default_rng(seed + 9100 + t)
        omega, omega_star = omega_pair(_automorphism(rng), pair, tol)
        worst = max(worst,
                    np.linalg.norm(omega.conj().T @ omega - np.eye(2 * n)),
                    np.linalg.norm(omega_star.conj().T @ omega_star - np.eye(n)))
    return PropertyResult("defect-unitarity", worst, 1e-8, worst <= 1e-8, trials)


def check_intertwining(trials: int, seed: int, tol: Tolerance = DEFAULT_TOL,
                       n: int = 4, corrupt: bool = False) -> PropertyResult:
    """Residual of the intertwining relation at random points.

    corrupt=True is a negative-control hook: the unitaries are built
    from a slightly rescaled pair, which must make the check fail.
    """
    worst = 0.0
    for t in range(trials):
        pair = gen_commuting_pure(n, seed=seed + t)
        rng = np.random.default_rng(seed + 9200 + t)
        auto = _automorphism(rng)
        z = auto.as_point() if t % 5 == 4 else _ball_point(rng)
        if corrupt:
            bad = build_pair(0.97 * pair.a1, pair.a2, tol)
            image = phi_tuple(auto, bad, tol)
            omega, omega_star = omega_pair(auto, pair, tol)
            resid = float(np.linalg.norm(
                omega_star @ theta(image, z, tol)
                - theta(pair, phi_point(auto, z), tol) @ omega))
        else:
            resid = intertwining_residual(auto, pair, z, tol)
        worst = max(worst, resid)
    return PropertyResult("intertwining", worst, 1e-7, worst <= 1e-7, trials)


def check_formula_crosschecks(trials: int, seed: int, tol: Tolerance = DEFAULT_TOL,
                              n: int = 4) -> PropertyResult:
    """Dual evaluation paths: block resolvent, defect block, explicit components."""
    worst = 0.0
    for t in range(trials):
        pair = gen_commuting_pure(n, seed=seed + t)
        rng = np.random.default_rng(seed + 9300 + t)
        auto = _automorphism(rng)
        l1c, l2c = np.conj(auto.lambda1), np.conj(auto.lambda2)
        lam_star_a = np.block([
            [l1c * pair.a1, l1c * pair.a2],
            [l2c * pair.a1, l2c * pair.a2],
        ])
        direct = np.linalg.inv(np.eye(2 * n) - lam_star_a)
        worst = max(worst, np.linalg.norm(block_resolvent(auto, pair, tol) - direct))

        lam_gram = np.array([[abs(auto.lambda1) ** 2, l1c * auto.lambda2],
                             [auto.lambda1 * l2c, abs(auto.lambda2) ** 2]])
        d_ref = psd_sqrt(np.eye(2 * n) - np.kron(lam_gram, np.eye(n)), tol)
        worst = max(worst, np.linalg.norm(auto.d_lambda_matrix(n) - d_ref))

        image = phi_tuple(auto, pair, tol)
        b1, b2 = phi_tuple_explicit(auto, pair, tol)
        worst = max(worst, np.linalg.norm(image.a1 - b1), np.linalg.norm(image.a2 - b2))
    return PropertyResult("formula-crosschecks", worst, 1e-10, worst <= 1e-10, trials)


def check_involution_points(trials: int, seed: int) -> PropertyResult:
    worst = 0.0
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        auto = _automorphism(rng)
        z = _ball_point(rng)
        back = phi_point(auto, phi_point(auto, z))
        worst = max(worst, abs(back.z1 - z.z1) + abs(back.z2 - z.z2))
    return PropertyResult("involution-points", worst, 1e-12, worst <= 1e-12, trials)


def check_involution_tuples(trials: int, seed: int, tol: Tolerance = DEFAULT_TOL,
                            n: int = 4) -> PropertyResult:
    worst = 0.0
    for t in range(trials):
        pair = gen_commuting_pure(n, seed=seed + t)
        rng = np.random.default_rng(seed + 9400 + t)
        auto = _automorphism(rng)
        back = phi_tuple(auto, phi_tuple(auto, pair, tol), tol)
        worst = max(worst, np.linalg.norm(back.a1 - pair.a1),
                    np.linalg.norm(back.a2 - pair.a2))
    return PropertyResult("involution-tuples", worst, 1e-8, worst <= 1e-8, trials)


def _hausdorff(set_a: list, set_b: list) -> float:
    if not set_a or not set_b:
        return np.inf if set_a != set_b else 0.0
    pts_a = np.array([[p.z1, p.z2] for p in set_a])
    pts_b = np.array([[p.z1, p.z2] for p in set_b])
    d = np.linalg.norm(pts_a[:, None, :] - pts_b[None, :, :], axis=2)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def check_spectral_mapping(pairs: int, seed: int, tol: Tolerance = DEFAULT_TOL,
                           n: int = 3) -> PropertyResult:
    """Spectrum of the transformed pair vs transform of the spectrum."""
    worst = 0.0
    for i in range(pairs):
        pair = gen_commuting_pure(n, seed=seed + i)
        rng = np.random.default_rng(seed + 9500 + i)
        auto = _automorphism(rng)
        source = [sp.point for sp in taylor_spectrum(pair, tol, seed=seed).points]
        mapped = [phi_point(auto, z) for z in source]
        image_pts = [sp.point
                     for sp in taylor_spectrum(phi_tuple(auto, pair, tol), tol, seed=seed).points]
        worst = max(worst, _hausdorff(mapped, image_pts))
    return PropertyResult("spectral-mapping", worst, 1e-6, worst <= 1e-6, pairs)


def run_suite(n: int, trials: int, seed: int, tol: Tolerance = DEFAULT_TOL,
              corrupt: bool = False) -> list:
    """All property checks at a scope derived from (n, trials)."""
    small = max(2, min(trials, 10))
    return [
        check_pair_invariants(trials, seed, tol, n),
        check_koszul_complex(trials, seed, tol, n),
        check_kernel_identity(trials, seed, tol),
        check_adjoint_kernel_identity(trials, seed, tol),
        check_spectrum_classification(small, 30, seed, tol),
        check_sigma1_adjoint_duality(small, seed, tol, n),
        check_sigma1_equivalence(small, seed, tol),
        check_sigma2_equivalence(small, seed, tol),
        check_sigma3_forward(small, seed, tol),
        check_defect_transport(trials, seed, tol, n),
        check_unitarity(trials, seed, tol, n),
        check_intertwining(trials, seed, tol, n, corrupt=corrupt),
        check_formula_crosschecks(trials, seed, tol, n),
        check_involution_points(max(trials, 100), seed),
        check_involution_tuples(trials, seed, tol, n),
        check_spectral_mapping(small, seed, tol, min(n, 4)),
    ]
