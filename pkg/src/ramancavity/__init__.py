"""Probe transmission and reflection of a one-dimensional photonic-crystal
cavity whose defect layer holds a pumped three-level Raman-gain medium."""

from .analysis import (PeakReport, RabiScan, find_narrow_feature, reduce_to_fpc,
                       scan_rabi, threshold_rabi)
from .config import ConfigError, RunConfig, load_config, parse_config
from .fpc import (FpcParams, Regime, ThresholdReached, classify_regime, fpc_linewidth,
                  fpc_peak, fpc_transmittance, overlap_integral)
from .optics import (C_LIGHT, AtomParams, InvalidArgument, Layer, LayerStack, PumpSpec,
                     build_canonical_stack)
from .raman import (RamanResponse, defect_index_profile, eta_factor, gain_coefficient,
                    raman_susceptibility)
from .tmm import (DivergingGain, FieldSolution, InvalidMedium, Spectrum, mirror_coefficients,
                  probe_spectrum, pump_field_profile, solve_fields)

__version__ = "0.1.0"
