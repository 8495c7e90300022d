from taylorspec.verification import (
    PropertyResult,
    check_intertwining,
    check_kernel_identity,
    check_sigma3_forward,
    check_spectrum_classification,
    format_result,
    run_suite,
    standard_fixtures,
)


def test_format_result_pass_line():
    line = format_result(PropertyResult(
        name="kernel-identity", max_residual=3.2e-12, threshold=1e-9,
        passed=True, trials=40))
    assert line.startswith("PASS")
    assert "kernel-identity" in line
    assert "3.200e-12" in line
    assert "trials 40" in line


def test_format_result_fail_with_note():
    line = format_result(PropertyResult(
        name="x", max_residual=1.0, threshold=1e-9, passed=False,
        trials=1, note="deliberate"))
    assert line.startswith("FAIL")
    assert "deliberate" in line


def test_standard_fixtures_shape():
    fixtures = standard_fixtures()
    names = [name for name, _, _ in fixtures]
    assert names == ["zero", "diagonal", "nilpotent"]
    for _, pair, points in fixtures:
        assert pair.is_pure
        assert len(points) >= 3


def test_kernel_identity_check_runs():
    res = check_kernel_identity(trials=5, seed=1)
    assert res.passed
    assert res.trials == 5
    assert res.max_residual <= res.threshold


def test_classification_counts_mismatches():
    res = check_spectrum_classification(pairs_per_n=2, off_points=10, seed=2)
    assert res.passed
    assert res.max_residual == 0.0


def test_sigma3_note_reports_converse_misses():
    res = check_sigma3_forward(random_pairs=2, seed=3)
    assert res.passed
    assert res.note.startswith("converse misses:")


def test_intertwining_corrupt_mode_fails():
    honest = check_intertwining(trials=5, seed=4)
    corrupted = check_intertwining(trials=5, seed=4, corrupt=True)
    assert honest.passed
    assert not corrupted.passed
    assert corrupted.max_residual > 1e3 * honest.max_residual


def test_run_suite_composition():
    results = run_suite(n=3, trials=2, seed=5)
    names = [r.name for r in results]
    assert len(names) == len(set(names)) == 16
    assert all(r.passed for r in results)


def test_run_suite_deterministic():
    a = run_suite(n=3, trials=2, seed=6)
    b = run_suite(n=3, trials=2, seed=6)
    assert [(r.name, r.max_residual) for r in a] == [(r.name, r.max_residual) for r in b]
