import time

import pytest

from oscillax.sweep import SweepConfig, run_sweep

FULL_SCALES = (2, 4, 8, 16, 32, 64, 128)


@pytest.fixture(scope="session")
def a2_global_shell_sweep():
    """Shared full-scale a = 2 sweep; the numerators dominate the suite cost.

    s = 0.25 probes below the a/4 threshold, 0.75 above it, 1.5 far above
    (the boundedness observation).  Returns (records, exponents, elapsed).
    """
    t0 = time.monotonic()
    cfg = SweepConfig(a=2.0, n=2, s_list=(0.25, 0.75, 1.5), N_list=FULL_SCALES,
                      range_kind="global", family="shell", modulated=False)
    records, exponents = run_sweep(cfg, workers=0)
    return records, exponents, time.monotonic() - t0


@pytest.fixture(scope="session")
def a05_modulated_sweep():
    t0 = time.monotonic()
    cfg = SweepConfig(a=0.5, n=2, s_list=(0.0625, 0.375), N_list=FULL_SCALES,
                      range_kind="local", family="shell", modulated=True,
                      y_count=16)
    records, exponents = run_sweep(cfg, workers=0)
    return records, exponents, time.monotonic() - t0
