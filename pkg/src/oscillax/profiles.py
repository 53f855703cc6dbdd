"""Radial profiles used as test functions, on either side of the transform.

A Profile is a scalar function of the radius rho >= 0 together with the
metadata the quadrature engines need: exact support (when compact), a
characteristic smoothness scale, and the rate of any complex modulation
e^{i y rho} riding on it.  The same class serves spatial profiles f0(r) and
frequency profiles g(rho) = fhat restricted to |xi| = rho.

Named families:

* gaussian(sigma):        exp(-(sigma*rho)^2 / 2)
* bump(center, width):    exp(-1/(1-u^2)) with u = (rho-center)/width
* annular(N):             eta(rho/N), a full dyadic annulus at scale N
* shell(N, width):        bump of the given width centred at rho = N
* sampled(grid, values):  cubic spline through given samples, 0 outside
* bandlimited(seed):      random smooth profile supported in [0, 2]
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.interpolate import CubicSpline

from .cutoffs import chi, eta


def _bump(u: np.ndarray) -> np.ndarray:
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    ui = u[inside]
    out[inside] = np.exp(-1.0 / (1.0 - ui * ui))
    return out


@dataclass(frozen=True, eq=False)
class Profile:
    kind: str
    params: dict
    fn: Callable
    support: Optional[Tuple[float, float]]  # None means rapidly decaying tail
    scale: float                            # smallest feature size
    modulation_rate: float = 0.0
    complex_valued: bool = False

    def __call__(self, rho):
        rho = np.asarray(rho, dtype=float)
        return self.fn(rho)

    def modulate(self, y: float) -> "Profile":
        """e^{i y rho} times this profile; preserves |g| pointwise."""
        y = float(y)
        base = self.fn
        return replace(
            self,
            kind=f"{self.kind}*e^(iy rho)",
            params={**self.params, "y": y},
            fn=(lambda rho, _b=base, _y=y:
                np.exp(1j * _y * np.asarray(rho, dtype=float)) * _b(np.asarray(rho, dtype=float))),
            modulation_rate=self.modulation_rate + abs(y),
            complex_valued=True,
        )

    def conjugate(self) -> "Profile":
        base = self.fn
        return replace(self, kind=f"conj({self.kind})",
                       fn=lambda rho, _b=base: np.conjugate(_b(rho)))

    def scaled(self, alpha: complex) -> "Profile":
        base = self.fn
        return replace(self, params={**self.params, "amplitude": alpha},
                       fn=lambda rho, _b=base, _a=alpha: _a * _b(rho),
                       complex_valued=self.complex_valued or bool(np.iscomplexobj(alpha)))

    def plus(self, other: "Profile") -> "Profile":
        lo = 0.0
        hi = None
        if self.support is not None and other.support is not None:
            lo = min(self.support[0], other.support[0])
            hi = max(self.support[1], other.support[1])
        f1, f2 = self.fn, other.fn
        return Profile(kind=f"{self.kind}+{other.kind}", params={},
                       fn=lambda rho: f1(rho) + f2(rho),
                       support=(lo, hi) if hi is not None else None,
                       scale=min(self.scale, other.scale),
                       modulation_rate=max(self.modulation_rate, other.modulation_rate),
                       complex_valued=self.complex_valued or other.complex_valued)

    def truncation_radius(self, n: int, tol: float = 1e-12) -> float:
        """Radius P with integral of rho^(n-1) |g| beyond P below tol of the total."""
        if self.support is not None:
            return self.support[1]
        # Rapidly decaying profile: walk a geometric grid of candidate cuts.
        hi = self.scale
        total = None
        for _ in range(60):
            hi *= 1.6
            grid = np.linspace(0.0, hi, 4097)
            w = np.abs(self(grid)) * grid ** (n - 1)
            total = np.trapezoid(w, grid)
            tail = np.trapezoid(w[grid >= hi * 0.75], grid[grid >= hi * 0.75])
            if total > 0 and tail < tol * total:
                return hi * 0.75
        raise ValueError("profile does not appear to decay")

    def lower_support(self) -> float:
        return 0.0 if self.support is None else self.support[0]


def gaussian(sigma: float = 1.0) -> Profile:
    sigma = float(sigma)
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return Profile(kind="gaussian", params={"sigma": sigma},
                   fn=lambda rho: np.exp(-0.5 * (sigma * rho) ** 2),
                   support=None, scale=1.0 / sigma)


def bump(center: float = 0.0, width: float = 1.0) -> Profile:
    center, width = float(center), float(width)
    if width <= 0 or center < 0:
        raise ValueError("need width > 0 and center >= 0")
    lo = max(0.0, center - width)
    return Profile(kind="bump", params={"center": center, "width": width},
                   fn=lambda rho: _bump((rho - center) / width),
                   support=(lo, center + width), scale=width / 2.0)


def annular(N: float) -> Profile:
    N = float(N)
    if N <= 0:
        raise ValueError("scale must be positive")
    return Profile(kind="annular", params={"N": N},
                   fn=lambda rho: eta(rho / N),
                   support=(N / 2.0, 2.0 * N), scale=N / 4.0)


def shell(N: float, width: float) -> Profile:
    """Thin smooth shell at radius N; the sharpness probe family."""
    N, width = float(N), float(width)
    if N <= 0 or width <= 0 or width > N:
        raise ValueError("need 0 < width <= N")
    return Profile(kind="shell", params={"N": N, "width": width},
                   fn=lambda rho: _bump((rho - N) / width),
                   support=(N - width, N + width), scale=width / 2.0)


def sampled(grid, values) -> Profile:
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values)
    if grid.ndim != 1 or grid.size < 4:
        raise ValueError("need at least 4 samples")
    if np.any(np.diff(grid) <= 0) or grid[0] <= 0:
        raise ValueError("sample grid must be strictly increasing and positive")
    spline = CubicSpline(grid, values, extrapolate=False)

    def f(rho):
        out = spline(rho)
        return np.where(np.isnan(out), 0.0, out)

    return Profile(kind="sampled", params={"points": int(grid.size)},
                   fn=f, support=(float(grid[0]), float(grid[-1])),
                   scale=float(np.min(np.diff(grid))) * 2.0)


def bandlimited(seed: int, max_freq: float = 2.0, terms: int = 7) -> Profile:
    """Random smooth profile supported in [0, max_freq].

    A random trigonometric polynomial tapered by the plateau cutoff; used
    for uniform-boundedness experiments over compactly supported data.
    """
    rng = np.random.default_rng(seed)
    coeff = rng.standard_normal(terms) / (1.0 + np.arange(terms)) ** 1.5
    half = max_freq / 2.0

    def f(rho):
        rho = np.asarray(rho, dtype=float)
        u = (rho - half) / half
        poly = np.zeros_like(rho)
        for k, c in enumerate(coeff):
            poly += c * np.cos(k * math.pi * u / 2.0)
        return chi(2.0 * rho / max_freq) * poly

    return Profile(kind="bandlimited", params={"seed": int(seed)},
                   fn=f, support=(0.0, max_freq), scale=max_freq / (2.0 * terms))


# The same container serves both sides of the transform; the aliases name
# the intended interpretation at call sites.
RadialProfile = Profile
FrequencyProfile = Profile


_FAMILIES = {
    "gaussian": lambda **kw: gaussian(kw.get("sigma", 1.0)),
    "bump": lambda **kw: bump(kw.get("center", 1.0), kw.get("width", 1.0)),
    "annular": lambda **kw: annular(kw["N"]),
    "shell": lambda **kw: shell(kw["N"], kw["width"]),
    "bandlimited": lambda **kw: bandlimited(kw.get("seed", 0)),
}


def family(name: str, **kw) -> Profile:
    try:
        ctor = _FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(_FAMILIES)}")
    return ctor(**kw)
