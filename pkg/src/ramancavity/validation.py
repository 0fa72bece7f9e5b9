"""Self-check suite: the solver against closed-form optics results.

Each check returns a ``Check``; the oracles here are written out
independently of the transfer-matrix recurrence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from . import fpc, raman
from .analysis import find_narrow_feature
from .config import RunConfig
from .optics import Layer, LayerStack, build_canonical_stack, wavelength_to_omega
from .tmm import Spectrum, intensity_coefficients, mirror_coefficients


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


def airy_slab(n, thickness, wavelength, n0=1.0):
    """Closed-form (T, R) of one slab in a uniform surround."""
    r01 = (n0 - n) / (n0 + n)
    r12 = (n - n0) / (n + n0)
    t01 = 2 * n0 / (n0 + n)
    t12 = 2 * n / (n + n0)
    delta = 2 * np.pi * n * thickness / wavelength
    den = 1 + r01 * r12 * np.exp(2j * delta)
    r = (r01 + r12 * np.exp(2j * delta)) / den
    t = t01 * t12 * np.exp(1j * delta) / den
    return abs(t) ** 2, abs(r) ** 2


def quarter_wave_reflectance(n_h, n_l, m, n0=1.0, ns=1.0):
    """R of (HL)^m H at its design wavelength from the admittance formula."""
    y = (n_h / n_l) ** (2 * m) * n_h**2 / ns
    return ((n0 - y) / (n0 + y)) ** 2


def check_single_slab(cases=100, seed=0) -> Check:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(cases):
        n = complex(rng.uniform(1.1, 3.5), rng.uniform(-0.05, 0.05))
        t = rng.uniform(50e-9, 2e-6)
        lam = rng.uniform(400e-9, 1000e-9)
        stack = LayerStack((Layer("D", t, n),))
        tm, rm = intensity_coefficients(stack, [wavelength_to_omega(lam)])
        ta, ra = airy_slab(n, t, lam)
        worst = max(worst, abs(tm[0] - ta) / ta, abs(rm[0] - ra) / ra)
    return Check("single slab vs Airy formula", worst < 1e-10, f"max rel err {worst:.2e}")


def check_quarter_wave_mirror(n_h=2.35, n_l=1.45, lam=589.6e-9) -> Check:
    worst = 0.0
    for m in range(1, 11):
        stack = build_canonical_stack(n_h, n_l, m, lam)
        _, r_m = mirror_coefficients(stack, wavelength_to_omega(lam))
        ref = quarter_wave_reflectance(n_h, n_l, m)
        worst = max(worst, abs(r_m - ref) / ref)
    return Check("quarter-wave mirror reflectance", worst < 1e-8, f"max rel err {worst:.2e}")


def check_energy_conservation(cfg: RunConfig) -> Check:
    stack = cfg.stack(defect_slices=1)
    grid = cfg.grid()
    t, r = intensity_coefficients(stack, grid)
    err = float(np.max(np.abs(t + r - 1)))
    t0 = float(intensity_coefficients(stack, [cfg.omega0])[0][0])
    ok = err < 1e-10 and abs(t0 - 1) < 1e-8
    return Check("energy conservation, passive cavity", ok,
                 f"max|T+R-1| {err:.1e}, T(omega0)-1 {t0 - 1:.1e}")


def check_overlap() -> Check:
    d = 1.0
    f = fpc.overlap_integral(math.pi / d, math.pi / d, d)
    err = abs(f - 8 / (3 * math.pi))
    return Check("overlap integral, half-wave mode", err < 1e-9, f"abs err {err:.1e}")


def check_eta_finite_difference(cfg: RunConfig) -> Check:
    atom, omega0 = cfg.atom(), cfg.omega0
    h = atom.gamma20 / 100
    worst = 0.0
    for g in np.linspace(0.1, 3.0, 10) * atom.gamma10:
        pump = cfg.pump(g / atom.gamma10)
        lo, hi = omega0 - h, omega0 + h
        dn = raman.raman_susceptibility(atom, pump, np.array([lo, hi])).delta_n
        slope = (dn[1].real - dn[0].real) / (hi - lo)
        eta_fd = 0.75 * omega0 * slope
        eta = raman.eta_factor(atom, pump, 0.75, omega0)
        worst = max(worst, abs(eta_fd - eta) / eta)
    return Check("eta vs finite-difference dispersion", worst < 1e-4, f"max rel err {worst:.4e}")


def check_airy_limit() -> Check:
    worst = 0.0
    for phi in np.linspace(0, 4 * math.pi, 50, endpoint=False):
        p = fpc.FpcParams(0.1, 0.9, 0.0, phi)
        airy = 0.01 / (0.01 + 4 * 0.9 * math.sin(phi / 2) ** 2)
        worst = max(worst, abs(fpc.fpc_transmittance(p) - airy))
    return Check("Fabry-Perot formula at zero gain", worst < 1e-14, f"max abs err {worst:.1e}")


def check_feature_finder() -> Check:
    x = np.linspace(-250, 250, 5001)
    y = 1 + 1 / (1 + (2 * x / 10) ** 2)
    rep = find_narrow_feature(Spectrum(x + 100.0, y, y))
    ok = (rep is not None and abs(rep.height - 2) < 2e-3 and abs(rep.fwhm - 10) < 0.05)
    detail = "no feature" if rep is None else f"height {rep.height:.5f}, fwhm {rep.fwhm:.4f}"
    return Check("synthetic Lorentzian feature", ok, detail)


def run_all(cfg: RunConfig = None) -> List[Check]:
    cfg = cfg or RunConfig()
    checks: List[Callable[[], Check]] = [
        check_single_slab,
        check_quarter_wave_mirror,
        lambda: check_energy_conservation(cfg),
        check_overlap,
        lambda: check_eta_finite_difference(cfg),
        check_airy_limit,
        check_feature_finder,
    ]
    return [c() for c in checks]
