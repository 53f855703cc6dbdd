"""Panel-based Gauss-Legendre quadrature for oscillatory radial integrals.

All integrals in this package are 1-D integrals of smooth envelopes times
oscillatory factors whose instantaneous frequency is known in advance
(Bessel kernels oscillate at rate r, the time phase at rate a*t*rho^(a-1)).
Panels are sized so that the total phase accumulated across one panel stays
below a fixed budget, which keeps a 16-point rule in its spectral-accuracy
regime; this is a conservative version of the usual "resolve the local
phase derivative" step rule h <= pi / (4 * (r + a*|t|*rho^(a-1) + 1)).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# Phase radians per panel; GL-16 integrates e^{i*phi*x} essentially exactly
# for |phi| * width <= order - a few.
PHASE_BUDGET = 8.0
DEFAULT_ORDER = 16


@lru_cache(maxsize=32)
def _gl_reference(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def panel_rule(breakpoints, order: int = DEFAULT_ORDER):
    """Composite Gauss-Legendre nodes/weights over consecutive panels.

    breakpoints: increasing 1-D array of panel edges (>= 2 entries).
    Returns (nodes, weights) as flat arrays in increasing node order.
    """
    bp = np.asarray(breakpoints, dtype=float)
    if bp.ndim != 1 or bp.size < 2:
        raise ValueError("need at least two panel edges")
    if np.any(np.diff(bp) <= 0):
        raise ValueError("panel edges must be strictly increasing")
    x, w = _gl_reference(order)
    lo = bp[:-1][:, None]
    hi = bp[1:][:, None]
    half = 0.5 * (hi - lo)
    nodes = (0.5 * (hi + lo) + half * x).ravel()
    weights = (half * w).ravel()
    return nodes, weights


def phase_breakpoints(lo, hi, linear_rate=0.0, power_coeff=0.0, power=1.0,
                      panel_cap=None, budget=PHASE_BUDGET, forced=()):
    """Panel edges on [lo, hi] bounding accumulated phase per panel.

    The phase model is psi(x) = linear_rate * x + |power_coeff| * x**power,
    monotone on x >= 0.  Edges are chosen so psi increases by at most
    `budget` across each panel; `panel_cap` additionally limits the panel
    width (used to resolve non-oscillatory structure such as a narrow
    profile).  `forced` points are inserted as exact edges.
    """
    lo = float(lo)
    hi = float(hi)
    if not hi > lo:
        raise ValueError("empty interval")
    linear_rate = abs(float(linear_rate))
    power_coeff = abs(float(power_coeff))
    cap = float(panel_cap) if (panel_cap is not None and panel_cap > 0) else (hi - lo)

    def cost(x):
        # Panels per unit of accumulated phase plus panels per unit width;
        # strictly increasing, so inversion below is well defined.
        out = (linear_rate * x) / budget + (x - lo) / cap
        if power_coeff > 0.0:
            out = out + (power_coeff / budget) * np.power(x, power)
        return out

    total = cost(hi) - cost(lo)
    n_panels = max(int(np.ceil(total)), 1)

    # Equidistribute the cost on a dense grid; dense enough that edge
    # placement error is a small fraction of a panel.
    dense = np.linspace(lo, hi, max(8 * n_panels + 1, 257))
    cost_dense = cost(dense)
    targets = np.linspace(cost_dense[0], cost_dense[-1], n_panels + 1)
    edges = np.interp(targets, cost_dense, dense)
    edges[0], edges[-1] = lo, hi

    if forced:
        extra = [p for p in forced if lo < p < hi]
        if extra:
            edges = np.union1d(edges, np.asarray(extra, dtype=float))
    # Deduplicate edges that collapsed numerically.
    keep = np.concatenate(([True], np.diff(edges) > 1e-300))
    return edges[keep]


def oscillatory_rule(lo, hi, linear_rate=0.0, power_coeff=0.0, power=1.0,
                     panel_cap=None, order: int = DEFAULT_ORDER,
                     budget=PHASE_BUDGET, forced=()):
    """Nodes/weights resolving the given oscillation model on [lo, hi]."""
    edges = phase_breakpoints(lo, hi, linear_rate, power_coeff, power,
                              panel_cap, budget, forced)
    return panel_rule(edges, order)


def trapezoid(y, x):
    return np.trapezoid(y, x)
