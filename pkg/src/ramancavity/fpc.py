"""Closed-form Fabry-Perot model of the gain-filled defect cavity."""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

from scipy import integrate

from .optics import C_LIGHT, InvalidArgument

logger = logging.getLogger(__name__)


class ThresholdReached(ArithmeticError):
    """R_M exp(alpha d) = 1 on resonance: the cavity would self-oscillate."""


class Regime(str, enum.Enum):
    GROWTH = "growth"
    SATURATED = "saturated"
    DIP = "dip"


@dataclass(frozen=True)
class FpcParams:
    t_m: float
    r_m: float
    alpha_d: float = 0.0
    phi: float = 0.0
    eta: float = 0.0
    d: float = 1.0

    def __post_init__(self):
        if not (0 <= self.t_m <= 1 and 0 <= self.r_m <= 1):
            raise InvalidArgument("mirror coefficients must lie in [0, 1]")
        if self.t_m + self.r_m > 1 + 1e-12:
            raise InvalidArgument("T_M + R_M exceeds 1")
        if self.alpha_d < 0:
            raise InvalidArgument("alpha*d must be non-negative (gain only)")
        if self.eta < 0:
            raise InvalidArgument("eta must be non-negative")
        if not self.d > 0:
            raise InvalidArgument("cavity length must be positive")


@dataclass(frozen=True)
class PeakValues:
    exact: float
    small_gain: float


def fpc_transmittance(p: FpcParams) -> float:
    g = math.exp(p.alpha_d)
    s2 = math.sin(p.phi / 2.0) ** 2
    denom = (1.0 - p.r_m * g) ** 2 + 4.0 * p.r_m * g * s2
    if denom == 0.0:
        raise ThresholdReached("R_M exp(alpha d) = 1 on resonance")
    return p.t_m**2 * g / denom


def fpc_peak(p: FpcParams) -> PeakValues:
    """Resonant (Phi = 2 pi m) transmission, exact and small-gain forms."""
    g = math.exp(p.alpha_d)
    if p.r_m * g == 1.0:
        raise ThresholdReached("R_M exp(alpha d) = 1 on resonance")
    exact = p.t_m**2 * g / (1.0 - p.r_m * g) ** 2
    den = p.t_m - p.alpha_d * p.r_m
    small = math.inf if den == 0 else p.t_m**2 / den**2
    return PeakValues(exact, small)


def fpc_linewidth(p: FpcParams, approx: bool = False):
    """(narrow width, cavity width) as full widths at half maximum in rad/s.

    The cavity width is (c/d)|1 - R_M e^{alpha d}| / (e^{alpha d/2} sqrt(R_M)),
    or (c/d)|T_M - alpha d R_M| / sqrt(R_M) with ``approx``; the narrow width
    divides it by the group-index factor 1 + eta.
    """
    if p.r_m <= 0:
        raise InvalidArgument("R_M = 0: there is no cavity")
    if approx:
        cavity = C_LIGHT / p.d * abs(p.t_m - p.alpha_d * p.r_m) / math.sqrt(p.r_m)
    else:
        g = math.exp(p.alpha_d)
        cavity = C_LIGHT / p.d * abs(1.0 - p.r_m * g) / (math.sqrt(g) * math.sqrt(p.r_m))
    return cavity / (1.0 + p.eta), cavity


def overlap_integral(k1: float, k2: float, d: float) -> float:
    """F = int_0^d sin(k2 z) sin^2(k1 z) dz / int_0^d sin^2(k2 z) dz."""
    if not (d > 0 and k1 > 0 and k2 > 0):
        raise InvalidArgument("overlap integral needs positive k1, k2, d")
    opts = dict(epsabs=1e-12 * d, epsrel=1e-13, limit=200)
    num, _ = integrate.quad(lambda z: math.sin(k2 * z) * math.sin(k1 * z) ** 2, 0.0, d, **opts)
    den, _ = integrate.quad(lambda z: math.sin(k2 * z) ** 2, 0.0, d, **opts)
    return num / den


def classify_regime(p: FpcParams) -> Regime:
    if p.alpha_d > 0.1:
        logger.warning("alpha*d = %.3g is not small; regime bounds are approximate", p.alpha_d)
    x = p.alpha_d * p.r_m
    if x < p.t_m:
        return Regime.GROWTH
    if x > 2.0 * p.t_m:
        return Regime.DIP
    return Regime.SATURATED
