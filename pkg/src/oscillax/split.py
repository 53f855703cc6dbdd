"""Linearized maximal operators, frequency/range splits, kernel estimates.

Linearization replaces sup over t by evaluation at a measurable time
selector t(r) with values in (-1, 1); bounds uniform over selectors imply
maximal bounds.  Two linearized operators are provided:

* the 1-D multiplier form, acting on even profiles f on the line,

    (R_t f)(x) = int_R e^{i x xi} e^{i t(x) |xi|^a} gamma_{-2s}(xi)^(1/2) f(xi) dxi,

* the radial Bessel form on L2(R_+), localized by psi at both ends,

    (R_t f)(r) = psi(r) int_0^inf (r rho)^(1/2) J_lam(r rho)
                   e^{i t(r) rho^a} rho^(-s) psi(rho) f(rho) drho.

The radial form splits along the large-argument cosine approximation of the
kernel: the "main" part replaces (r rho)^(1/2) J_lam(r rho) by
sqrt(2/pi) cos(r rho - lam pi/2 - pi/4), and the "remainder" part carries
the difference, which is bounded by C_lam/(r rho) on the support of
psi(r) psi(rho).  Chaining that bound through Cauchy-Schwarz yields the
fully explicit operator bound

    ||R_{t,2} f|| <= C_lam * (int psi(r)^2 r^-2 dr)^(1/2)
                           * (int rho^(-2-2s) psi(rho) drho)^(1/2) * ||f||,

with C_lam taken from an empirical asymptotic certificate.  The kernel

    K(x) = chi_m(x) sup_{|t|<2} | int e^{i x xi} e^{i t |xi|^a}
                                   gamma_{-2s}(xi) chi_mu(xi)^2 dxi |

is sampled on [-2m, 2m] with a trapezoidal L1 estimate; its stability as mu
grows reflects the uniform high-frequency estimate behind the maximal bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bessel import AsymptoticCertificate, bessel_j, bessel_kernel_reduced
from .cutoffs import CutoffFamily, gamma_weight, make_cutoff
from .oscillatory import SymbolParams
from .profiles import Profile, bump
from .quadrature import oscillatory_rule, panel_rule
from .radial import profile_rule

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


@dataclass(frozen=True)
class TimeSelector:
    """Measurable time assignment r -> t(r) sampled on a fixed grid."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if g.shape != v.shape or g.ndim != 1:
            raise ValueError("selector grid and values must be 1-D and aligned")
        if np.any(np.abs(v) >= 1):
            raise ValueError("selector values must satisfy |t| < 1")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)

    @staticmethod
    def random(grid, seed: int, scale: float = 0.999) -> "TimeSelector":
        rng = np.random.default_rng(seed)
        g = np.asarray(grid, dtype=float)
        return TimeSelector(grid=g, values=scale * rng.uniform(-1, 1, g.size))

    @staticmethod
    def constant(grid, t: float) -> "TimeSelector":
        g = np.asarray(grid, dtype=float)
        return TimeSelector(grid=g, values=np.full(g.size, float(t)))

    def match(self, grid) -> np.ndarray:
        g = np.asarray(grid, dtype=float)
        if g.shape != self.grid.shape or not np.array_equal(g, self.grid):
            raise ValueError("selector defined on a different radial grid")
        return self.values


def selector_grid(r_max: float, rho_max: float, order: int = 16):
    """Radial evaluation grid resolving kernels oscillating up to rho_max."""
    return oscillatory_rule(0.0, r_max, linear_rate=rho_max,
                            panel_cap=r_max / 16.0, order=order,
                            forced=(1.0, 2.0))


def apply_selector_multiplier(f: Profile, sel: TimeSelector, p: SymbolParams,
                              weight: str = "dyadic") -> np.ndarray:
    """The 1-D linearized operator with the dyadic Sobolev weight.

    f is interpreted as an even profile on the line; weight "none" drops
    gamma_{-2s}^(1/2) (then t = 0 gives the plain inverse-type transform).
    """
    x = sel.grid
    t = sel.match(sel.grid)
    rho, w = profile_rule(f, 1, osc_rate=float(np.max(np.abs(x))),
                          power_coeff=1.0, power=p.a)
    if weight == "dyadic":
        gam = np.sqrt(gamma_weight(-2.0 * p.s, rho))
    elif weight == "none":
        gam = np.ones_like(rho)
    else:
        raise ValueError("weight must be 'dyadic' or 'none'")
    vec = w * gam * f(rho)
    # Even integrand: int_R = 2 int_0^inf cos(x xi) ... dxi.
    cosmat = np.cos(np.outer(x, rho))
    phase = np.exp(1j * np.outer(t, rho ** p.a))
    return 2.0 * ((cosmat * phase) @ vec)


def _radial_kernels(r: np.ndarray, rho: np.ndarray, lam: float, part: str):
    z = np.outer(r, rho)
    w = r[:, None] * rho[None, :] - lam * (0.5 * math.pi) - 0.25 * math.pi
    if part == "main":
        return _SQRT_2_OVER_PI * np.cos(w)
    full = np.sqrt(z) * np.asarray(bessel_j(lam, z))
    if part == "full":
        return full
    if part == "remainder":
        return full - _SQRT_2_OVER_PI * np.cos(w)
    raise ValueError("part must be 'full', 'main' or 'remainder'")


def apply_selector_radial(f: Profile, sel: TimeSelector, p: SymbolParams,
                          part: str = "full",
                          cutoffs: CutoffFamily | None = None) -> np.ndarray:
    """The psi-localized radial linearized operator, or one of its pieces.

    part "main" keeps the cosine main term of the Bessel kernel, part
    "remainder" keeps the difference; main + remainder recomposes the full
    operator node by node.
    """
    cutoffs = cutoffs or make_cutoff()
    r = sel.grid
    t = sel.match(sel.grid)
    rho, w = profile_rule(f, 1, osc_rate=float(np.max(np.abs(r))),
                          power_coeff=1.0, power=p.a)
    weights = w * rho ** (-p.s) * cutoffs.psi(rho) * f(rho)
    kern = _radial_kernels(r, rho, p.lam, part)
    phase = np.exp(1j * np.outer(t, rho ** p.a))
    out = (kern * phase) @ weights
    return cutoffs.psi(r) * out


def l2_halfline(values: np.ndarray, weights: np.ndarray) -> float:
    return math.sqrt(float(np.sum(weights * np.abs(values) ** 2)))


def remainder_constant(p: SymbolParams, cutoffs: CutoffFamily,
                       cert: AsymptoticCertificate) -> float:
    """Explicit bound constant for the remainder piece of the radial split.

    Product of the certified kernel constant with the two cutoff integrals
    (int psi(r)^2 / r^2 dr)^(1/2) and (int rho^(-2-2s) psi(rho) drho)^(1/2);
    the inner integral converges exactly when s > -1/2.
    """
    if p.s <= -0.5:
        raise ValueError("inner integral diverges for s <= -1/2")
    # psi vanishes on [0,1] and equals 1 beyond 2; split both integrals at 2.
    x, w = panel_rule(np.linspace(1.0, 2.0, 9), order=16)
    psi_vals = cutoffs.psi(x)
    int_range = float(np.sum(w * psi_vals ** 2 / x ** 2)) + 0.5
    expo = 2.0 + 2.0 * p.s
    int_freq = float(np.sum(w * psi_vals * x ** (-expo)))
    int_freq += 2.0 ** (1.0 - expo) / (expo - 1.0)
    return cert.c_lambda_empirical * math.sqrt(int_range) * math.sqrt(int_freq)


def maximal_kernel(m: float, mu: float, p: SymbolParams,
                   cutoffs: CutoffFamily | None = None,
                   t_level0: int = 4, max_level: int = 9,
                   rel_tol: float = 5e-3):
    """Sample K(x) on [-2m, 2m] and estimate its L1 norm.

    The sup over |t| < 2 is taken on a dyadic grid refined until the
    trapezoidal L1 estimate stabilizes.  Returns (x, K, l1_estimate).
    """
    if m <= 1 or mu <= 1:
        raise ValueError("localization parameters must exceed 1")
    cutoffs = cutoffs or make_cutoff()
    hi = 2.0 * mu
    x_half = np.linspace(0.0, 2.0 * m, max(512, int(64 * m) + 1))
    rho, w = oscillatory_rule(0.0, hi, linear_rate=float(x_half[-1]),
                              power_coeff=2.0, power=p.a, panel_cap=0.25)
    vec = w * gamma_weight(-2.0 * p.s, rho) * cutoffs.chi(rho / mu) ** 2
    cosmat = np.cos(np.outer(x_half, rho))  # even integrand on the line
    power = rho ** p.a

    sup_half = np.zeros_like(x_half)
    level = t_level0
    l1_prev = None
    seen = set()
    while True:
        denom = 2 ** level
        ts = 2.0 * np.arange(-(denom - 1), denom) / denom
        new = [t for t in ts if t not in seen]
        seen.update(new)
        for t in new:
            slice_vals = np.abs(2.0 * (cosmat @ (vec * np.exp(1j * t * power))))
            np.maximum(sup_half, slice_vals, out=sup_half)
        k_half = cutoffs.chi(x_half / m) * sup_half
        l1 = 2.0 * float(np.trapezoid(k_half, x_half)) - 0.0
        if l1_prev is not None and abs(l1 - l1_prev) <= rel_tol * l1:
            break
        if level >= max_level:
            break
        l1_prev = l1
        level += 1
    x_full = np.concatenate([-x_half[:0:-1], x_half])
    k_full = np.concatenate([k_half[:0:-1], k_half])
    return x_full, k_full, l1


def tilde_field(g: Profile, p: SymbolParams, r, t,
                freq_cut=None, range_cut=None,
                cutoffs: CutoffFamily | None = None) -> np.ndarray:
    """The weighted propagator int e^{i(x.xi + t|xi|^a)} <xi>^{-s/2} zeta g dxi.

    freq_cut / range_cut select the frequency and range localizations from
    {None, "chi", "psi"}; None means no cutoff on that variable.  Radially
    reduced like the main propagator, shape (len(r), len(t)).
    """
    cutoffs = cutoffs or make_cutoff()
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    rho, w = profile_rule(g, p.n, osc_rate=float(np.max(r_arr)),
                          power_coeff=1.0, power=p.a)
    zeta = {"chi": cutoffs.chi, "psi": cutoffs.psi, None: lambda v: 1.0}[freq_cut]
    base = w * rho ** (p.n - 1) * (1.0 + rho * rho) ** (-p.s / 2.0) * g(rho)
    base = base * zeta(rho)
    kern = bessel_kernel_reduced(p.lam, np.outer(r_arr, rho))
    phase = np.exp(1j * np.outer(rho ** p.a, t_arr))
    out = (2.0 * math.pi) ** (p.n / 2.0) * (kern @ (base[:, None] * phase))
    if range_cut is not None:
        zr = {"chi": cutoffs.chi, "psi": cutoffs.psi}[range_cut]
        out = zr(r_arr)[:, None] * out
    return out


def recompose_residual(g: Profile, p: SymbolParams, r, t,
                       cutoffs: CutoffFamily | None = None) -> float:
    """Max deviation between the whole weighted propagator and its 4 pieces.

    The pieces are indexed by (freq_cut, range_cut) in {chi, psi}^2 and must
    recompose exactly because chi + psi = 1 in both variables.
    """
    cutoffs = cutoffs or make_cutoff()
    whole = tilde_field(g, p, r, t, None, None, cutoffs)
    total = np.zeros_like(whole)
    for fc in ("chi", "psi"):
        for rc in ("chi", "psi"):
            total = total + tilde_field(g, p, r, t, fc, rc, cutoffs)
    return float(np.max(np.abs(whole - total)))


def random_test_profile(seed: int) -> Profile:
    """Random smooth compactly supported profile on [1, 20] for split tests."""
    rng = np.random.default_rng(seed)
    parts = []
    for _ in range(3):
        center = rng.uniform(2.5, 16.0)
        width = rng.uniform(0.8, 2.5)
        parts.append(bump(center, width).scaled(rng.uniform(-1.0, 1.0)))
    out = parts[0]
    for q in parts[1:]:
        out = out.plus(q)
    return out
