"""Transfer-matrix solution of the layered cavity.

Amplitudes are obtained by the recurrence that enforces continuity of E and
dE/dz at every interface, swept from the exit medium (where only the
outgoing wave exists) back to the input face and then normalised to a unit
incident amplitude.
"""
from __future__ import annotations

import hashlib
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .optics import C_LIGHT, DEFECT, AtomParams, InvalidArgument, Layer, LayerStack, PumpSpec
from .raman import defect_index_profile

MAX_LAYER_EXPONENT = 50.0


class DivergingGain(ArithmeticError):
    """A single layer amplifies (or attenuates) by more than e^50."""

    def __init__(self, message, omega=None):
        super().__init__(message)
        self.omega = omega


class InvalidMedium(ValueError):
    """Zero refractive index somewhere in the stack."""


@dataclass(frozen=True)
class LayerAmplitudes:
    a: complex
    b: complex
    z0: float
    k: complex

    def field(self, z):
        dz = np.asarray(z) - self.z0
        return self.a * np.exp(1j * self.k * dz) + self.b * np.exp(-1j * self.k * dz)

    def derivative(self, z):
        dz = np.asarray(z) - self.z0
        return 1j * self.k * (self.a * np.exp(1j * self.k * dz)
                              - self.b * np.exp(-1j * self.k * dz))


@dataclass(frozen=True)
class FieldSolution:
    """Amplitudes for a unit incident wave.

    ``per_layer[0]`` is the input medium (z < 0), ``per_layer[-1]`` the exit
    medium (z > L); entries in between follow ``stack.layers``.
    """

    per_layer: List[LayerAmplitudes]
    t_coeff: complex
    r_coeff: complex
    frequency: float
    boundaries: List[float]
    n_in: complex = 1.0
    n_out: complex = 1.0

    @property
    def transmittance(self) -> float:
        return self.n_out.real / self.n_in.real * abs(self.t_coeff) ** 2

    @property
    def reflectance(self) -> float:
        return abs(self.r_coeff) ** 2

    def layer_at(self, z: float) -> int:
        """Index into ``per_layer`` of the medium containing ``z``."""
        if z < 0:
            return 0
        j = int(np.searchsorted(self.boundaries, z, side="right"))
        return min(j, len(self.per_layer) - 1)

    def field_at(self, z):
        z = np.atleast_1d(np.asarray(z, dtype=float))
        out = np.empty(z.shape, dtype=complex)
        for i, zi in enumerate(z):
            out[i] = self.per_layer[self.layer_at(zi)].field(zi)
        return out


@dataclass(frozen=True)
class Spectrum:
    omegas: np.ndarray
    t_values: np.ndarray
    r_values: np.ndarray
    omega_ref: float = math.nan
    gamma10: float = math.nan
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.omegas)
        if len(self.t_values) != n or len(self.r_values) != n:
            raise InvalidArgument("spectrum arrays must have equal length")
        if n > 1 and np.any(np.diff(self.omegas) <= 0):
            raise InvalidArgument("frequency grid must be strictly increasing")

    @property
    def detuning(self):
        """Probe detuning from the Raman resonance, (omega_ref - omega)/gamma10."""
        return (self.omega_ref - np.asarray(self.omegas)) / self.gamma10


def _merge_runs(indices, thicknesses):
    """Join neighbouring layers with identical index (an exact identity).

    Keeps rounding from piling up across the uniform slices of an empty
    defect, where the cavity amplifies every error by ~1/T_M.
    """
    out_n, out_t = [indices[0]], [thicknesses[0]]
    for n, t in zip(indices[1:], thicknesses[1:]):
        if np.shape(n) == np.shape(out_n[-1]) and np.array_equal(n, out_n[-1]):
            out_t[-1] += t
        else:
            out_n.append(n)
            out_t.append(t)
    return out_n, out_t


def _sweep(indices, thicknesses, n_in, n_out, omegas, keep=False):
    """Backward recurrence over layers, vectorised over ``omegas``.

    ``indices`` is a list with one entry per layer; each entry is a scalar
    or an array broadcastable against ``omegas``. Returns (A0, B0) for a
    unit outgoing wave, plus the per-layer (A, B, k) list if ``keep``.
    """
    if not keep:
        indices, thicknesses = _merge_runs(indices, thicknesses)
    omegas = np.asarray(omegas, dtype=float)
    k0 = omegas / C_LIGHT
    k_next = complex(n_out) * k0
    a = np.ones_like(k0, dtype=complex)
    b = np.zeros_like(k0, dtype=complex)
    kept = []
    if keep:
        kept.append((a, b, k_next))
    for n, t in zip(reversed(indices), reversed(thicknesses)):
        n = np.asarray(n)
        if np.any(n == 0):
            raise InvalidMedium("refractive index of zero in stack")
        k = n * k0
        expo = np.abs(k.imag) * t
        if np.any(expo > MAX_LAYER_EXPONENT):
            bad = np.atleast_1d(np.broadcast_to(omegas, np.shape(expo)))
            where = np.flatnonzero(np.atleast_1d(expo) > MAX_LAYER_EXPONENT)[0]
            raise DivergingGain(
                f"single-layer gain/loss exponent {np.max(expo):.3g} exceeds "
                f"{MAX_LAYER_EXPONENT:g}", omega=float(bad[where]))
        e_sum = a + b
        d_sum = (k_next / k) * (a - b)
        phase = np.exp(1j * k * t)
        a = 0.5 * (e_sum + d_sum) / phase
        b = 0.5 * (e_sum - d_sum) * phase
        k_next = k
        if keep:
            kept.append((a, b, k))
    k_in = complex(n_in) * k0
    ratio = k_next / k_in
    a0 = 0.5 * ((a + b) + ratio * (a - b))
    b0 = 0.5 * ((a + b) - ratio * (a - b))
    if keep:
        kept.append((a0, b0, k_in))
        kept.reverse()
    return a0, b0, kept


def solve_fields(stack: LayerStack, omega: float, unit_input: bool = True,
                 n_out: Optional[complex] = None) -> FieldSolution:
    """Amplitudes A_j, B_j in every layer at one frequency.

    With ``unit_input`` the incident amplitude is 1; otherwise the exit
    amplitude is 1 (raw recurrence output). ``n_out`` overrides the exit
    medium index (defaults to the surround).
    """
    if omega <= 0:
        raise InvalidArgument("frequency must be positive")
    n_in = stack.surround_index
    n_out = n_in if n_out is None else complex(n_out)
    a0, b0, kept = _sweep(stack.indices, stack.thicknesses, n_in, n_out,
                          omega, keep=True)
    a0, b0 = complex(a0), complex(b0)
    if not (np.isfinite(a0) and np.isfinite(b0)) or a0 == 0:
        raise DivergingGain("recurrence produced a non-finite amplitude", omega)
    scale = 1.0 / a0 if unit_input else 1.0
    z = stack.boundaries
    starts = [0.0] + z[:-1] + [z[-1]]
    per_layer = [LayerAmplitudes(complex(a) * scale, complex(b) * scale, z0, complex(k))
                 for (a, b, k), z0 in zip(kept, starts)]
    return FieldSolution(per_layer, 1.0 / a0, b0 / a0, float(omega), z,
                         complex(n_in), complex(n_out))


def transfer_coefficients(stack: LayerStack, omegas, defect_indices=None,
                          n_out: Optional[complex] = None):
    """Field transmission and reflection (t, r) arrays over ``omegas``.

    ``defect_indices`` of shape (len(omegas), n_slices) replaces the defect
    slice indices frequency by frequency.
    """
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    indices = list(stack.indices)
    if defect_indices is not None:
        start, stop = stack.defect_range()
        defect_indices = np.asarray(defect_indices)
        if defect_indices.shape != (len(omegas), stop - start):
            raise InvalidArgument(
                f"defect index array has shape {defect_indices.shape}, "
                f"expected {(len(omegas), stop - start)}")
        for j in range(start, stop):
            indices[j] = defect_indices[:, j - start]
    n_in = stack.surround_index
    n_out = n_in if n_out is None else complex(n_out)
    a0, b0, _ = _sweep(indices, stack.thicknesses, n_in, n_out, omegas)
    with np.errstate(all="ignore"):
        t, r = 1.0 / a0, b0 / a0
    bad = ~(np.isfinite(t) & np.isfinite(r))
    if np.any(bad):
        raise DivergingGain("non-finite transmission", omega=float(omegas[bad][0]))
    return t, r


def intensity_coefficients(stack: LayerStack, omegas, defect_indices=None,
                           n_out: Optional[complex] = None):
    t, r = transfer_coefficients(stack, omegas, defect_indices, n_out)
    n_in = stack.surround_index
    n_out = n_in if n_out is None else complex(n_out)
    return n_out.real / n_in.real * np.abs(t) ** 2, np.abs(r) ** 2


@dataclass(frozen=True)
class PumpProfile:
    z: np.ndarray
    intensity: np.ndarray  # |E1(z)|^2 relative to the incident wave
    g1_squared: np.ndarray

    @property
    def enhancement(self) -> float:
        return float(np.max(self.intensity))


def pump_field_profile(stack: LayerStack, omega1: float, input_g1: float) -> PumpProfile:
    """Local |G1(z)|^2 at the defect-slice midpoints for the empty cavity.

    The pump sees the defect background index, so the defect slices are
    reset to n = 1 before solving.
    """
    start, stop = stack.defect_range()
    layers = stack.layers
    # The empty defect is uniform, so one layer carries the whole standing
    # wave; solving slice by slice would only accumulate rounding.
    defect = Layer(DEFECT, math.fsum(l.thickness for l in layers[start:stop]), 1.0)
    merged = LayerStack(layers[:start] + (defect,) + layers[stop:], stack.surround_index,
                        stack.period_count, 1)
    sol = solve_fields(merged, omega1)
    z = np.array(stack.defect_midpoints())
    intensity = np.abs(sol.per_layer[start + 1].field(z)) ** 2
    return PumpProfile(z, intensity, intensity * input_g1**2)


def field_enhancement(stack: LayerStack, omega: float, z: float) -> float:
    """|E(z)|^2 for a unit incident wave in the empty cavity."""
    start, stop = stack.defect_range()
    passive = stack.with_defect_indices([1.0] * (stop - start))
    return float(abs(solve_fields(passive, omega).field_at(z)[0]) ** 2)


def config_digest(*parts) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(repr(p).encode())
    return h.hexdigest()[:16]


def probe_spectrum(stack: LayerStack, atom: AtomParams, pump: PumpSpec, omega2_grid,
                   workers: int = 1) -> Spectrum:
    """T(omega2) and R(omega2) of the probe with the pump held undepleted.

    The pump is solved once in the empty cavity; its local intensity sets the
    probe index of every defect slice. Grid points are independent, so with
    ``workers > 1`` contiguous chunks are evaluated in threads; the result
    does not depend on the chunking.
    """
    omega2_grid = np.asarray(omega2_grid, dtype=float)
    pump.check_validity(atom)
    omega1 = pump.omega1(atom)
    profile = pump_field_profile(stack, omega1, pump.rabi_g1)

    def run(chunk):
        n2 = defect_index_profile(atom, profile.g1_squared, omega1, chunk, profile.z)
        return intensity_coefficients(stack, chunk, n2)

    if workers > 1 and len(omega2_grid) > 1:
        chunks = np.array_split(omega2_grid, min(workers, len(omega2_grid)))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, chunks))
        t_vals = np.concatenate([p[0] for p in parts])
        r_vals = np.concatenate([p[1] for p in parts])
    else:
        t_vals, r_vals = run(omega2_grid)

    meta = {"config_digest": config_digest(stack, atom, pump, omega2_grid.tobytes()),
            "g1": pump.rabi_g1, "pump_enhancement": profile.enhancement}
    return Spectrum(omega2_grid, t_vals, r_vals, omega1 - atom.omega20,
                    atom.gamma10, meta)


def mirror_coefficients(stack: LayerStack, omega: float):
    """Intensity (T_M, R_M) of the (HL)^M H input mirror.

    The mirror sits between the surround and the empty defect (n = 1).
    """
    mirror = stack.mirror_half()
    t, r = intensity_coefficients(mirror, [omega], n_out=1.0)
    return float(t[0]), float(r[0])
