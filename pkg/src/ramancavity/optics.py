"""Domain types shared across the package.

Units are SI throughout: lengths in metres, angular frequencies in rad/s.
Frequencies are plain floats and refractive indices plain complex numbers.
The forward wave in every layer is ``A exp(+i k (z - z_j))`` with
``k = n omega / c``, so a medium with ``Im n < 0`` amplifies.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Tuple

C_LIGHT = 299_792_458.0  # m/s

logger = logging.getLogger(__name__)

HIGH = "H"
LOW = "L"
DEFECT = "D"


class InvalidArgument(ValueError):
    """Raised for physically meaningless inputs (negative lengths, M < 0 ...)."""


def wavelength_to_omega(wavelength: float) -> float:
    return 2.0 * math.pi * C_LIGHT / wavelength


def omega_to_wavelength(omega: float) -> float:
    return 2.0 * math.pi * C_LIGHT / omega


@dataclass(frozen=True)
class Layer:
    kind: str
    thickness: float
    index: complex

    def __post_init__(self):
        if self.kind not in (HIGH, LOW, DEFECT):
            raise InvalidArgument(f"unknown layer kind {self.kind!r}")
        if not self.thickness > 0:
            raise InvalidArgument(f"layer thickness must be positive, got {self.thickness}")
        if complex(self.index).real <= 0:
            raise InvalidArgument(f"Re(n) must be positive, got {self.index}")
        if self.kind != DEFECT and complex(self.index).imag != 0:
            raise InvalidArgument("mirror layers must be lossless")
        object.__setattr__(self, "index", complex(self.index))


@dataclass(frozen=True)
class LayerStack:
    """Ordered layers between two identical semi-infinite surround media.

    ``period_count`` and ``defect_slice_count`` describe the canonical
    (HL)^M H D H (LH)^M layout; stacks built by hand may set them to 0.
    """

    layers: Tuple[Layer, ...]
    surround_index: complex = 1.0 + 0j
    period_count: int = 0
    defect_slice_count: int = 0

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        object.__setattr__(self, "surround_index", complex(self.surround_index))
        if not self.layers:
            raise InvalidArgument("stack has no layers")

    def __len__(self):
        return len(self.layers)

    @property
    def thicknesses(self):
        return [layer.thickness for layer in self.layers]

    @property
    def indices(self):
        return [layer.index for layer in self.layers]

    @property
    def boundaries(self):
        """Interface positions z_0 = 0, z_1, ..., z_N = L."""
        z = [0.0]
        for layer in self.layers:
            z.append(z[-1] + layer.thickness)
        return z

    @property
    def length(self) -> float:
        return math.fsum(self.thicknesses)

    def defect_range(self) -> Tuple[int, int]:
        """Half-open index range [start, stop) of the defect slices."""
        idx = [i for i, layer in enumerate(self.layers) if layer.kind == DEFECT]
        if not idx:
            raise InvalidArgument("stack has no defect layer")
        start, stop = idx[0], idx[-1] + 1
        if stop - start != len(idx):
            raise InvalidArgument("defect slices are not contiguous")
        return start, stop

    def defect_bounds(self) -> Tuple[float, float]:
        start, stop = self.defect_range()
        z = self.boundaries
        return z[start], z[stop]

    def defect_midpoints(self):
        start, stop = self.defect_range()
        z = self.boundaries
        return [0.5 * (z[i] + z[i + 1]) for i in range(start, stop)]

    def with_defect_indices(self, indices) -> "LayerStack":
        """Copy of the stack with per-slice defect indices replaced."""
        start, stop = self.defect_range()
        if len(indices) != stop - start:
            raise InvalidArgument(
                f"expected {stop - start} defect indices, got {len(indices)}"
            )
        layers = list(self.layers)
        for i, n in zip(range(start, stop), indices):
            layers[i] = Layer(DEFECT, layers[i].thickness, complex(n))
        return LayerStack(tuple(layers), self.surround_index,
                          self.period_count, self.defect_slice_count)

    def mirror_half(self) -> "LayerStack":
        """The (HL)^M H input mirror on its own."""
        start, _ = self.defect_range()
        return LayerStack(self.layers[:start], self.surround_index, self.period_count, 0)

    def reversed(self) -> "LayerStack":
        return LayerStack(self.layers[::-1], self.surround_index,
                          self.period_count, self.defect_slice_count)


@dataclass(frozen=True)
class AtomParams:
    """Three-level Lambda system.

    ``coupling_k`` (rad/s) stands in for the dipole/density bundle
    2*pi*N*|d21|^2/hbar (Gaussian units); together with the pump Rabi
    frequency G1 = d10*E1/(2*hbar) it fixes the probe index perturbation
    ``coupling_k * G1**2 / (Omega1**2 * (Omega_R + i*gamma20))``.
    """

    omega10: float
    omega20: float
    gamma10: float
    gamma20: float
    coupling_k: float
    density: float = 1e18  # m^-3, informational only

    def __post_init__(self):
        for name in ("omega10", "omega20", "gamma10", "gamma20"):
            if not getattr(self, name) > 0:
                raise InvalidArgument(f"{name} must be positive")
        if self.coupling_k < 0:
            raise InvalidArgument("coupling_k must be non-negative")
        if self.gamma20 >= self.gamma10:
            raise InvalidArgument("gamma20 must be smaller than gamma10")
        if self.omega20 >= 0.1 * self.omega10:
            raise InvalidArgument("omega20 must be much smaller than omega10")

    @property
    def omega12(self) -> float:
        return self.omega10 - self.omega20


@dataclass(frozen=True)
class PumpSpec:
    """Pump Rabi frequency G1 at the input face and one-photon detuning.

    ``detuning_omega1`` is Omega1 = omega10 - omega1; positive means the pump
    sits below the |0>-|1> line.
    """

    rabi_g1: float
    detuning_omega1: float

    def __post_init__(self):
        if self.rabi_g1 < 0:
            raise InvalidArgument("rabi_g1 must be non-negative")

    def omega1(self, atom: AtomParams) -> float:
        return atom.omega10 - self.detuning_omega1

    def check_validity(self, atom: AtomParams) -> bool:
        """Warn when the detuning is too small for the perturbative response."""
        ok = abs(self.detuning_omega1) >= 10.0 * atom.gamma10
        if not ok:
            logger.warning(
                "|Omega1| = %.3g gamma10 is below 10 gamma10; third-order Raman "
                "response is not reliable", abs(self.detuning_omega1) / atom.gamma10,
            )
        return ok

    def with_rabi(self, g1: float) -> "PumpSpec":
        return PumpSpec(g1, self.detuning_omega1)


def raman_resonant_probe(atom: AtomParams, pump: PumpSpec) -> float:
    """Probe frequency omega1 - omega20 that is exactly Raman resonant."""
    return pump.omega1(atom) - atom.omega20


def build_canonical_stack(n_h, n_l, m: int, probe_wavelength: float,
                          defect_slice_count: int = 1,
                          surround_index=1.0) -> LayerStack:
    """(HL)^m H D H (LH)^m with quarter-wave mirrors and a half-wave defect.

    The defect background index is 1, so its thickness is half the probe
    wavelength; it is split into ``defect_slice_count`` equal slices.
    """
    if not probe_wavelength > 0:
        raise InvalidArgument("probe wavelength must be positive")
    if m < 0 or int(m) != m:
        raise InvalidArgument(f"period count must be a non-negative integer, got {m}")
    if defect_slice_count < 1:
        raise InvalidArgument("defect_slice_count must be >= 1")
    n_h, n_l = complex(n_h), complex(n_l)
    h = Layer(HIGH, probe_wavelength / (4.0 * n_h.real), n_h)
    lo = Layer(LOW, probe_wavelength / (4.0 * n_l.real), n_l)

    left = [h, lo] * m + [h]
    right = [h] + [lo, h] * m
    t_slice = 0.5 * probe_wavelength / defect_slice_count
    defect = [Layer(DEFECT, t_slice, 1.0)] * defect_slice_count
    return LayerStack(tuple(left + defect + right), complex(surround_index),
                      int(m), int(defect_slice_count))
