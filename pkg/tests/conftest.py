"""Shared fixtures: expensive runs reused across test modules."""

import pytest

from wlsubspace.harness import load_preset, render_csv, run_mse_sweep


@pytest.fixture(scope="session")
def preset_mse_snr_runs():
    """The bundled MSE-vs-SNR preset run with 1 and with 3 worker threads."""
    cfg = load_preset("fig_mse_snr")
    rows_single = run_mse_sweep(cfg, threads=1)
    rows_threaded = run_mse_sweep(cfg, threads=3)
    return {
        "cfg": cfg,
        "rows": rows_single,
        "csv_single": render_csv(rows_single),
        "csv_threaded": render_csv(rows_threaded),
    }
