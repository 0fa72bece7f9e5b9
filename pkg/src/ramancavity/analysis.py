"""Spectral analytics: narrow-feature extraction, cavity reduction, G1 scans."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .fpc import FpcParams
from .optics import AtomParams, LayerStack, PumpSpec, omega_to_wavelength
from .raman import eta_factor, gain_coefficient, raman_susceptibility
from .tmm import (DivergingGain, Spectrum, mirror_coefficients, probe_spectrum,
                  pump_field_profile, solve_fields)

logger = logging.getLogger(__name__)

PEAK = "peak"
DIP = "dip"
MIN_CONTRAST = 1e-3
# T above this is treated as having hit the oscillation threshold
DIVERGENCE_CAP = 1e12


@dataclass(frozen=True)
class PeakReport:
    center_omega: float
    height: float
    fwhm: float
    kind: str
    baseline: float

    @property
    def depth(self) -> float:
        return self.baseline - self.height


def find_narrow_feature(spec: Spectrum, which: str = "t") -> Optional[PeakReport]:
    """Locate the dominant narrow peak or dip of T (``which='t'``) or R.

    The baseline is the median of the outer 20% of the window; the
    extremum is refined by a parabola through the three bracketing samples
    and the width is taken at half height above (or below) the baseline.
    Returns None when nothing stands out from the baseline.
    """
    x = np.asarray(spec.omegas, dtype=float)
    y = np.asarray(spec.t_values if which == "t" else spec.r_values, dtype=float)
    n = len(y)
    if n < 3:
        return None
    edge = max(1, int(round(0.1 * n)))
    baseline = float(np.median(np.concatenate([y[:edge], y[-edge:]])))
    dev = y - baseline
    i = int(np.argmax(np.abs(dev)))
    scale = max(abs(y[i]), abs(baseline))
    if scale == 0 or abs(dev[i]) / scale < MIN_CONTRAST:
        return None
    kind = PEAK if dev[i] > 0 else DIP

    center, height = x[i], y[i]
    if 0 < i < n - 1:
        y0, y1, y2 = y[i - 1], y[i], y[i + 1]
        curv = y0 - 2 * y1 + y2
        if curv != 0:
            off = 0.5 * (y0 - y2) / curv
            if abs(off) <= 1:
                h = x[i + 1] - x[i] if off > 0 else x[i] - x[i - 1]
                center = x[i] + off * h
                height = y1 - 0.25 * (y0 - y2) * off

    half = baseline + 0.5 * (height - baseline)
    sign = 1.0 if kind == PEAK else -1.0
    above = sign * (y - half) > 0

    def crossing(step):
        j = i
        while 0 <= j + step < n and above[j + step]:
            j += step
        k = j + step
        if not 0 <= k < n:
            return None
        # linear interpolation between samples j (inside) and k (outside)
        return x[j] + (half - y[j]) * (x[k] - x[j]) / (y[k] - y[j])

    left, right = crossing(-1), crossing(+1)
    fwhm = right - left if left is not None and right is not None else math.nan
    if math.isfinite(fwhm):
        inside = int(np.count_nonzero((x >= left) & (x <= right)))
        if inside < 7:
            logger.warning("only %d samples inside the feature; refine the grid", inside)
    return PeakReport(float(center), float(height), float(fwhm), kind, baseline)


@dataclass(frozen=True)
class CavityReduction:
    """Fabry-Perot parameters for the canonical stack at one pump level."""

    params: FpcParams
    omega0: float
    g1_peak: float  # pump Rabi frequency at the strongest point inside the defect
    overlap: float  # mode-weighted pump intensity / peak pump intensity
    n_eff_im: float


def reduce_to_fpc(stack: LayerStack, atom: AtomParams, pump: PumpSpec) -> CavityReduction:
    """Map the layered cavity onto the single Fabry-Perot cavity.

    d is the defect thickness, T_M/R_M come from the input mirror at the
    Raman-resonant probe frequency, and the effective Im n weights the local
    pump intensity by the empty-cavity probe mode intensity.
    """
    omega1 = pump.omega1(atom)
    omega0 = omega1 - atom.omega20
    t_m, r_m = mirror_coefficients(stack, omega0)
    z_lo, z_hi = stack.defect_bounds()
    d = z_hi - z_lo

    profile = pump_field_profile(stack, omega1, pump.rabi_g1)
    start, stop = stack.defect_range()
    passive = stack.with_defect_indices([1.0] * (stop - start))
    probe = solve_fields(passive, omega0)
    mode = np.array([abs(probe.per_layer[j + 1].field(z)) ** 2
                     for j, z in zip(range(start, stop), profile.z)])
    widths = np.array(passive.thicknesses[start:stop])
    w = mode * widths / np.sum(mode * widths)

    peak_intensity = float(np.max(profile.intensity))
    overlap = float(np.sum(w * profile.intensity)) / peak_intensity
    g1_peak = pump.rabi_g1 * math.sqrt(peak_intensity)

    chi0 = raman_susceptibility(atom, pump.with_rabi(g1_peak), omega0).delta_n
    n_eff_im = overlap * chi0.imag
    alpha_d = float(gain_coefficient(n_eff_im, omega_to_wavelength(omega0))) * d
    eta = 0.0
    if pump.rabi_g1 > 0:
        eta = eta_factor(atom, pump.with_rabi(g1_peak), overlap, omega0)
    params = FpcParams(t_m, r_m, max(alpha_d, 0.0), 2 * math.pi, eta, d)
    return CavityReduction(params, omega0, g1_peak, overlap, n_eff_im)


def threshold_rabi(stack: LayerStack, atom: AtomParams, pump: PumpSpec,
                   factor: float = 1.0) -> float:
    """Input G1 at which alpha*d*R_M = factor * T_M in the cavity reduction."""
    probe = pump if pump.rabi_g1 > 0 else pump.with_rabi(atom.gamma10 * 1e-3)
    p = reduce_to_fpc(stack, atom, probe).params
    return probe.rabi_g1 * math.sqrt(factor * p.t_m / (p.alpha_d * p.r_m))


@dataclass
class RabiScan:
    g1_values: np.ndarray
    t_max: np.ndarray
    r_max: np.ndarray
    kinds: List[str] = field(default_factory=list)
    truncated_at: Optional[float] = None
    gamma10: float = math.nan

    def __post_init__(self):
        if not len(self.g1_values) == len(self.t_max) == len(self.r_max):
            raise ValueError("scan arrays must have equal length")


def _center_value(spec: Spectrum, report: Optional[PeakReport], which: str) -> float:
    if report is not None:
        return report.height
    y = spec.t_values if which == "t" else spec.r_values
    return float(y[int(np.argmin(np.abs(spec.omegas - spec.omega_ref)))])


def scan_rabi(config, g1_grid, workers: Optional[int] = None) -> RabiScan:
    """Central T and R extrema of the probe spectrum for each input G1.

    ``config`` is a RunConfig; ``g1_grid`` is in rad/s. A point whose
    spectrum diverges stops the scan and is recorded in ``truncated_at``.
    """
    g1_grid = np.asarray(g1_grid, dtype=float)
    if np.any(np.diff(g1_grid) <= 0):
        raise ValueError("G1 grid must be strictly increasing")
    stack, atom, grid = config.stack(), config.atom(), config.grid()
    workers = config.workers if workers is None else workers
    g_done, t_max, r_max, kinds = [], [], [], []
    truncated = None
    for g1 in g1_grid:
        pump = config.pump(g1 / config.gamma10_rad_s)
        try:
            spec = probe_spectrum(stack, atom, pump, grid, workers=workers)
        except DivergingGain:
            truncated = float(g1)
            break
        if np.max(spec.t_values) > DIVERGENCE_CAP:
            truncated = float(g1)
            break
        t_rep = find_narrow_feature(spec, "t")
        r_rep = find_narrow_feature(spec, "r")
        g_done.append(g1)
        t_max.append(_center_value(spec, t_rep, "t"))
        r_max.append(_center_value(spec, r_rep, "r"))
        kinds.append(t_rep.kind if t_rep is not None else "none")
    if truncated is not None:
        logger.warning("scan truncated at G1 = %.4g rad/s (threshold reached)", truncated)
    return RabiScan(np.array(g_done), np.array(t_max), np.array(r_max), kinds,
                    truncated, config.gamma10_rad_s)
