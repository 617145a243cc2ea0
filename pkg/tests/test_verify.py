import pytest

from pgrow.fields import load_snapshot
from pgrow.verify import run_full_verification


def test_full_verification_passes():
    report = run_full_verification(seed=0, n_graphs=20, trials=3)
    assert report.checks_run == 60
    assert report.ok
    assert report.failures == []
    assert report.snapshot_path is None
    assert "checks run: 60" in report.summary()


def test_suite_filter():
    report = run_full_verification(seed=1, n_graphs=10, suites=("invasion",))
    assert report.checks_run == 10
    assert report.ok


def test_injected_fault_is_caught_and_snapshotted(tmp_path):
    snap = tmp_path / "failing.json"
    report = run_full_verification(seed=0, n_graphs=5, trials=2,
                                   suites=("algorithm", "autonomy"),
                                   inject_fault=1e-6, snapshot_path=snap)
    assert not report.ok
    assert report.snapshot_path == str(snap)
    loaded = load_snapshot(snap)
    assert loaded.graph.n == len(loaded.colours)
    assert loaded.extra["suite"] in ("algorithm", "autonomy")
    assert loaded.extra["problems"]


def test_fault_below_tolerance_is_invisible():
    # the comparison tolerance is 1e-9; a 1e-12 nudge must not trip it
    report = run_full_verification(seed=2, n_graphs=5, trials=2,
                                   suites=("algorithm",), inject_fault=1e-12)
    assert report.ok


def test_unknown_suite_is_rejected():
    with pytest.raises(ValueError):
        run_full_verification(seed=0, n_graphs=1, suites=("nonsense",))
