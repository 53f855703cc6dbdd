"""Extended threshold bracketing at a = 3 (very long running).

The shell family at a = 3 has width N^(-1/2) and its wave packets travel
out to r ~ 3 N^2, so the global maximal field at N = 2^7 needs radial grids
five hundred times larger than the a = 2 case.  This is the same experiment
as the accepted a in {1/2, 2} cases, just far beyond desk scale; run it
explicitly with `pytest -m slow`.
"""

import numpy as np
import pytest

from oscillax.sweep import SweepConfig, run_sweep

pytestmark = pytest.mark.slow


def test_threshold_bracketing_a3():
    N_list = (2, 4, 8, 16, 32, 64, 128)
    cfg = SweepConfig(a=3.0, n=2, s_list=(0.375, 1.0), N_list=N_list,
                      range_kind="global", family="shell", modulated=False)
    _, exps = run_sweep(cfg, workers=0)
    assert exps["0.375"] >= 0.05      # s = a/8: growth visible
    assert exps["1"] <= 0.05          # s = a/4 + 0.25: growth gone
