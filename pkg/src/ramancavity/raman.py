"""Raman susceptibility of the pumped Lambda medium and derived quantities."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .optics import AtomParams, InvalidArgument, PumpSpec


class SingularDetuning(ValueError):
    """Zero one-photon detuning or zero Raman halfwidth."""


@dataclass(frozen=True)
class RamanResponse:
    """Raman response at one (or an array of) probe frequencies.

    ``chi_r`` is the index perturbation per unit (G1/gamma10)^2, i.e.
    ``coupling_k * gamma10**2 / (Omega1**2 * (Omega_R + i*gamma20))``.
    ``delta_n`` is the full perturbation for the pump's G1.
    """

    chi_r: complex
    delta_n: complex
    detuning_raman: float


def raman_detuning(atom: AtomParams, pump: PumpSpec, omega2):
    """Omega_R = omega20 - (omega1 - omega2)."""
    return atom.omega20 - (pump.omega1(atom) - np.asarray(omega2, dtype=float))


def chi_at_detuning(atom: AtomParams, detuning_omega1: float, omega_r):
    """Index perturbation per unit (G1/gamma10)^2 at Raman detuning ``omega_r``."""
    if detuning_omega1 == 0:
        raise SingularDetuning("one-photon detuning Omega1 is zero")
    return (atom.coupling_k * atom.gamma10**2
            / (detuning_omega1**2 * (omega_r + 1j * atom.gamma20)))


def raman_susceptibility(atom: AtomParams, pump: PumpSpec, omega2) -> RamanResponse:
    """Raman response for probe frequency ``omega2`` (scalar or array)."""
    pump.check_validity(atom)
    omega_r = raman_detuning(atom, pump, omega2)
    chi = chi_at_detuning(atom, pump.detuning_omega1, omega_r)
    dn = chi * (pump.rabi_g1 / atom.gamma10) ** 2
    if np.ndim(chi) == 0:
        return RamanResponse(complex(chi), complex(dn), float(omega_r))
    return RamanResponse(chi, dn, omega_r)


def defect_index_profile(atom: AtomParams, g1_squared_profile, omega1: float,
                         omega2, z_grid=None):
    """Probe index n2(z) = 1 + delta_n(z) for a sampled local pump |G1(z)|^2.

    ``g1_squared_profile`` holds |G1|^2 (rad^2/s^2) at each defect sample.
    For an array ``omega2`` the result has shape (len(omega2), n_samples).
    """
    g2 = np.asarray(g1_squared_profile, dtype=float)
    if z_grid is not None and len(z_grid) != len(g2):
        raise InvalidArgument(
            f"pump profile has {len(g2)} samples but z grid has {len(z_grid)}"
        )
    if np.any(g2 < 0):
        raise InvalidArgument("pump intensity profile must be non-negative")
    detuning_omega1 = atom.omega10 - omega1
    if abs(detuning_omega1) < 10 * atom.gamma10:
        PumpSpec(0.0, detuning_omega1).check_validity(atom)
    omega_r = atom.omega20 - (omega1 - np.asarray(omega2, dtype=float))
    chi = chi_at_detuning(atom, detuning_omega1, omega_r)
    return 1.0 + np.multiply.outer(chi, g2 / atom.gamma10**2)


def gain_coefficient(n2_im, wavelength: float):
    """Intensity gain alpha = -(4 pi / lambda) Im(n); positive for gain."""
    if not wavelength > 0:
        raise InvalidArgument("wavelength must be positive")
    return -4.0 * math.pi / wavelength * np.asarray(n2_im)


def eta_factor(atom: AtomParams, pump: PumpSpec, overlap_f: float, omega0: float) -> float:
    """Dispersion factor eta = K12 |G1|^2 / (Omega1^2 gamma20^2).

    K12 = F * omega0 * coupling_k. ``pump.rabi_g1`` is the pump Rabi frequency
    inside the cavity, and 1 + eta is the group-index factor of the probe.
    """
    if atom.gamma20 == 0:
        raise SingularDetuning("gamma20 is zero")
    if pump.detuning_omega1 == 0:
        raise SingularDetuning("one-photon detuning Omega1 is zero")
    if not 0 < overlap_f <= 1:
        raise InvalidArgument(f"overlap factor must lie in (0, 1], got {overlap_f}")
    k12 = overlap_f * omega0 * atom.coupling_k
    return k12 * pump.rabi_g1**2 / (pump.detuning_omega1**2 * atom.gamma20**2)


def group_index_factor(atom, pump, overlap_f, omega0) -> float:
    return 1.0 + eta_factor(atom, pump, overlap_f, omega0)
