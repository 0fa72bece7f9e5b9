"""CSV/JSON/SVG emission of spectra and G1 scans."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .analysis import RabiScan
from .tmm import Spectrum

SPECTRUM_HEADER = ["omega_rad_s", "detuning_over_gamma10", "T", "R"]
SCAN_HEADER = ["g1_over_gamma10", "t_max", "r_max"]


class OutputError(OSError):
    pass


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _open(path, mode="w"):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        return path.open(mode, newline="", encoding="utf-8")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from exc


def emit_spectrum(spec: Spectrum, path, fmt: str = "csv") -> Path:
    path = Path(path)
    if fmt == "json":
        payload = {
            "omegas": [float(x) for x in spec.omegas],
            "t": [float(x) for x in spec.t_values],
            "r": [float(x) for x in spec.r_values],
            "config_digest": spec.metadata.get("config_digest", ""),
        }
        with _open(path) as fh:
            json.dump(payload, fh)
        return path
    detuning = spec.detuning if len(spec.omegas) else []
    with _open(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SPECTRUM_HEADER)
        for row in zip(spec.omegas, detuning, spec.t_values, spec.r_values):
            w.writerow([_fmt(v) for v in row])
    return path


def emit_scan(scan: RabiScan, path, fmt: str = "csv") -> Path:
    path = Path(path)
    g = np.asarray(scan.g1_values) / scan.gamma10
    if fmt == "json":
        payload = {"g1_over_gamma10": g.tolist(), "t_max": list(map(float, scan.t_max)),
                   "r_max": list(map(float, scan.r_max)), "kinds": list(scan.kinds),
                   "truncated_at_over_gamma10":
                       None if scan.truncated_at is None else scan.truncated_at / scan.gamma10}
        with _open(path) as fh:
            json.dump(payload, fh)
        return path
    with _open(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SCAN_HEADER)
        for row in zip(g, scan.t_max, scan.r_max):
            w.writerow([_fmt(v) for v in row])
    return path


def read_csv_columns(path):
    """Header and float columns of a CSV written by this module."""
    try:
        with Path(path).open(newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise OutputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    header, body = rows[0], rows[1:]
    cols = {name: np.array([float(r[i]) for r in body]) for i, name in enumerate(header)}
    return header, cols


def read_spectrum(path) -> Spectrum:
    _, cols = read_csv_columns(path)
    omegas = cols["omega_rad_s"]
    det = cols["detuning_over_gamma10"]
    omega_ref, gamma10 = math.nan, math.nan
    if len(omegas) >= 2 and det[0] != det[-1]:
        gamma10 = (omegas[-1] - omegas[0]) / (det[0] - det[-1])
        omega_ref = omegas[0] + det[0] * gamma10
    return Spectrum(omegas, cols["T"], cols["R"], omega_ref, gamma10)


def _save(fig, path):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    plt.rcParams["svg.hashsalt"] = "ramancavity"
    return plt


def plot_spectrum(spec: Spectrum, path, title: str = "") -> Path:
    """T and R against probe detuning in units of gamma10."""
    plt = _pyplot()
    fig, (ax_t, ax_r) = plt.subplots(1, 2, figsize=(9, 3.6))
    x = spec.detuning
    ax_t.plot(x, spec.t_values, lw=1.2, color="tab:blue")
    ax_r.plot(x, spec.r_values, lw=1.2, color="tab:red")
    ax_t.set_ylabel("T")
    ax_r.set_ylabel("R")
    for ax in (ax_t, ax_r):
        ax.set_xlabel(r"$\Omega_2/\gamma_{10}$")
        ax.grid(alpha=0.3)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    out = _save(fig, path)
    plt.close(fig)
    return out


def plot_scan(scan: RabiScan, path, title: str = "") -> Path:
    """Central T and R extrema against input G1 / gamma10 (log scale)."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5, 3.6))
    g = np.asarray(scan.g1_values) / scan.gamma10
    ax.semilogy(g, scan.t_max, "o-", ms=3, label=r"$T_{max}$")
    ax.semilogy(g, scan.r_max, "s-", ms=3, label=r"$R_{max}$")
    ax.set_xlabel(r"$G_1/\gamma_{10}$")
    ax.legend()
    ax.grid(alpha=0.3, which="both")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    out = _save(fig, path)
    plt.close(fig)
    return out


def emit_plot(data, path, title: str = "") -> Path:
    if isinstance(data, RabiScan):
        return plot_scan(data, path, title)
    return plot_spectrum(data, path, title)
