"""Flat ``key = value`` run configuration.

Every physical key carries its unit in the name (``_m``, ``_hz``,
``_rad_s``, ``_over_gamma10``). Lines starting with ``#`` are comments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

import numpy as np

from .optics import (AtomParams, LayerStack, PumpSpec, build_canonical_stack,
                     omega_to_wavelength, wavelength_to_omega)


class ConfigError(ValueError):
    """One or more invalid entries; ``problems`` lists (line, message)."""

    def __init__(self, problems, source="<config>"):
        self.problems = list(problems)
        self.source = source
        lines = [f"{source}:{ln}: {msg}" if ln else f"{source}: {msg}"
                 for ln, msg in self.problems]
        super().__init__("\n".join(lines))


@dataclass(frozen=True)
class RunConfig:
    n_high: float = 2.35
    n_low: float = 1.45
    period_count: int = 10
    defect_slices: int = 4000
    probe_wavelength_m: Optional[float] = None  # None: Raman-resonant probe

    transition10_wavelength_m: float = 589.7558e-9
    raman_splitting_hz: float = 1.8e9
    gamma10_rad_s: float = 2 * math.pi * 1e8
    gamma20_over_gamma10: float = 0.1
    coupling_k_rad_s: float = 2.0e5
    density_m3: float = 1e18

    pump_detuning_over_gamma10: float = 30.0
    pump_rabi_over_gamma10: float = 0.0

    grid_points: int = 2001
    grid_half_span_over_gamma10: float = 0.5
    outer_grid_points: int = 0
    outer_half_span_over_gamma10: float = 40.0

    scan_g1_min_over_gamma10: float = 0.0
    scan_g1_max_over_gamma10: float = 0.02
    scan_points: int = 41

    output_stem: str = "spectrum"
    workers: int = 1

    def atom(self) -> AtomParams:
        g10 = self.gamma10_rad_s
        return AtomParams(
            omega10=wavelength_to_omega(self.transition10_wavelength_m),
            omega20=2 * math.pi * self.raman_splitting_hz,
            gamma10=g10,
            gamma20=self.gamma20_over_gamma10 * g10,
            coupling_k=self.coupling_k_rad_s,
            density=self.density_m3,
        )

    def pump(self, g1_over_gamma10: Optional[float] = None) -> PumpSpec:
        g = self.pump_rabi_over_gamma10 if g1_over_gamma10 is None else g1_over_gamma10
        return PumpSpec(g * self.gamma10_rad_s,
                        self.pump_detuning_over_gamma10 * self.gamma10_rad_s)

    @property
    def omega0(self) -> float:
        """Raman-resonant probe frequency omega1 - omega20."""
        atom = self.atom()
        return self.pump().omega1(atom) - atom.omega20

    def probe_wavelength(self) -> float:
        if self.probe_wavelength_m is not None:
            return self.probe_wavelength_m
        return omega_to_wavelength(self.omega0)

    def stack(self, defect_slices: Optional[int] = None) -> LayerStack:
        return build_canonical_stack(self.n_high, self.n_low, self.period_count,
                                     self.probe_wavelength(),
                                     defect_slices or self.defect_slices)

    def grid(self) -> np.ndarray:
        """Dense grid around omega0, optionally merged with a coarse outer grid."""
        g10 = self.gamma10_rad_s
        inner = self.omega0 + g10 * np.linspace(-self.grid_half_span_over_gamma10,
                                                 self.grid_half_span_over_gamma10,
                                                 self.grid_points)
        if self.outer_grid_points <= 0:
            return inner
        outer = self.omega0 + g10 * np.linspace(-self.outer_half_span_over_gamma10,
                                                 self.outer_half_span_over_gamma10,
                                                 self.outer_grid_points)
        outer = outer[(outer < inner[0]) | (outer > inner[-1])]
        return np.union1d(inner, outer)

    def scan_grid(self) -> np.ndarray:
        return np.linspace(self.scan_g1_min_over_gamma10, self.scan_g1_max_over_gamma10,
                           self.scan_points) * self.gamma10_rad_s


_POSITIVE = {
    "n_high", "n_low", "defect_slices", "probe_wavelength_m", "transition10_wavelength_m",
    "raman_splitting_hz", "gamma10_rad_s", "gamma20_over_gamma10", "density_m3",
    "grid_points", "grid_half_span_over_gamma10", "outer_half_span_over_gamma10",
    "scan_points", "workers",
}
_NON_NEGATIVE = {"period_count", "coupling_k_rad_s", "pump_rabi_over_gamma10",
                 "scan_g1_min_over_gamma10", "scan_g1_max_over_gamma10", "outer_grid_points"}


def _types():
    out = {}
    for f in fields(RunConfig):
        t = f.type if isinstance(f.type, str) else f.type.__name__
        out[f.name] = "int" if t == "int" else "str" if t == "str" else "float"
    return out


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    types = _types()
    values, where, problems = {}, {}, []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            problems.append((lineno, f"expected 'key = value', got {raw.strip()!r}"))
            continue
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in types:
            problems.append((lineno, f"unknown key {key!r}"))
            continue
        if key in values:
            problems.append((lineno, f"duplicate key {key!r} (first on line {where[key]})"))
            continue
        kind = types[key]
        try:
            if kind == "int":
                v = float(value)
                if v != int(v):
                    raise ValueError
                values[key] = int(v)
            elif kind == "float":
                values[key] = float(value)
                if not math.isfinite(values[key]):
                    raise ValueError
            else:
                values[key] = value
        except ValueError:
            problems.append((lineno, f"{key}: cannot parse {value!r} as {kind}"))
            continue
        where[key] = lineno
        if key in _POSITIVE and not values[key] > 0:
            problems.append((lineno, f"{key} must be positive, got {value}"))
        if key in _NON_NEGATIVE and values[key] < 0:
            problems.append((lineno, f"{key} must be non-negative, got {value}"))

    if not problems:
        cfg = RunConfig(**values)
        ln = lambda k: where.get(k, 0)  # noqa: E731
        if cfg.gamma20_over_gamma10 >= 1:
            problems.append((ln("gamma20_over_gamma10"), "gamma20 must be smaller than gamma10"))
        if cfg.scan_g1_max_over_gamma10 < cfg.scan_g1_min_over_gamma10:
            problems.append((ln("scan_g1_max_over_gamma10"), "scan range is decreasing"))
        if cfg.grid_points < 3:
            problems.append((ln("grid_points"), "need at least 3 grid points"))
        if abs(cfg.pump_detuning_over_gamma10) == 0:
            problems.append((ln("pump_detuning_over_gamma10"), "pump detuning must be non-zero"))
    if problems:
        raise ConfigError(problems, source)
    return cfg


def load_config(path) -> RunConfig:
    path = Path(path)
    return parse_config(path.read_text(encoding="utf-8"), str(path))
