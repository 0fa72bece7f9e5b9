"""Command-line entry point.

Exit codes: 0 ok, 1 validation failure, 2 config error, 3 solver
divergence / threshold reached, 4 I/O error. Errors are reported on stderr
as a single JSON object with an ``error`` category.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from . import fpc
from .analysis import find_narrow_feature, scan_rabi
from .config import ConfigError, RunConfig, load_config
from .output import OutputError, emit_plot, emit_scan, emit_spectrum
from .tmm import DivergingGain, probe_spectrum
from .validation import run_all

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_DIVERGENCE, EXIT_IO = 0, 1, 2, 3, 4


def _fail(category: str, message: str, code: int, **extra) -> int:
    print(json.dumps({"error": category, "message": message, **extra}), file=sys.stderr)
    return code


def _load(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    if getattr(args, "workers", None):
        cfg = RunConfig(**{**cfg.__dict__, "workers": args.workers})
    return cfg


def _report_line(label, rep, gamma10):
    if rep is None:
        return f"{label}: no narrow feature"
    return (f"{label}: {rep.kind} height={rep.height:.6g} "
            f"fwhm/gamma10={rep.fwhm / gamma10:.6g} baseline={rep.baseline:.6g}")


def cmd_spectrum(args) -> int:
    cfg = _load(args)
    spec = probe_spectrum(cfg.stack(), cfg.atom(), cfg.pump(), cfg.grid(), workers=cfg.workers)
    out = Path(args.out)
    ext = "json" if args.format == "json" else "csv"
    data_path = emit_spectrum(spec, out / f"{cfg.output_stem}_T_R.{ext}", args.format)
    print(f"wrote {data_path}")
    if not args.no_plot:
        print(f"wrote {emit_plot(spec, out / f'{cfg.output_stem}.svg')}")
    g10 = cfg.gamma10_rad_s
    print(_report_line("T", find_narrow_feature(spec, "t"), g10))
    print(_report_line("R", find_narrow_feature(spec, "r"), g10))
    return EXIT_OK


def cmd_scan(args) -> int:
    cfg = _load(args)
    scan = scan_rabi(cfg, cfg.scan_grid())
    out = Path(args.out)
    ext = "json" if args.format == "json" else "csv"
    print(f"wrote {emit_scan(scan, out / f'{cfg.output_stem}_scan.{ext}', args.format)}")
    if not args.no_plot:
        print(f"wrote {emit_plot(scan, out / f'{cfg.output_stem}.svg')}")
    if scan.truncated_at is not None:
        print(f"scan truncated at G1/gamma10 = {scan.truncated_at / cfg.gamma10_rad_s:.6g}"
              " (oscillation threshold)")
    return EXIT_OK


def cmd_validate(args) -> int:
    cfg = _load(args)
    checks = run_all(cfg)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAILED


def cmd_fpc(args) -> int:
    p = fpc.FpcParams(args.tm, args.rm, args.alphad, args.phi, args.eta, args.d)
    result = {"T": fpc.fpc_transmittance(p)}
    peak = fpc.fpc_peak(p)
    result.update(T_max=peak.exact, T_max_small_gain=peak.small_gain,
                  regime=fpc.classify_regime(p).value)
    if p.r_m > 0:
        narrow, cavity = fpc.fpc_linewidth(p)
        result.update(linewidth_rad_s=narrow, cavity_linewidth_rad_s=cavity)
    if args.format == "json":
        print(json.dumps(result))
    else:
        for k, v in result.items():
            print(f"{k}={v:.10g}" if isinstance(v, float) else f"{k}={v}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramancavity",
        description="Probe transmission/reflection of a photonic-crystal cavity with Raman gain.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, outputs=True):
        p.add_argument("--config", help="flat key = value run configuration")
        p.add_argument("--workers", type=int, help="threads for frequency-grid evaluation")
        if outputs:
            p.add_argument("--out", default=".", help="output directory")
            p.add_argument("--format", choices=("csv", "json"), default="csv")
            p.add_argument("--no-plot", action="store_true", help="skip the SVG figure")

    common(sub.add_parser("spectrum", help="probe T/R spectrum for one pump level"))
    common(sub.add_parser("scan", help="central T/R extrema over a G1 sweep"))
    common(sub.add_parser("validate", help="run the closed-form oracle checks"), outputs=False)

    p = sub.add_parser("fpc", help="evaluate the Fabry-Perot model")
    p.add_argument("--tm", type=float, required=True)
    p.add_argument("--rm", type=float, required=True)
    p.add_argument("--alphad", type=float, default=0.0)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--eta", type=float, default=0.0)
    p.add_argument("--d", type=float, default=1.0, help="cavity length in m")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


COMMANDS = {"spectrum": cmd_spectrum, "scan": cmd_scan,
            "validate": cmd_validate, "fpc": cmd_fpc}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        return _fail("config", str(exc), EXIT_CONFIG,
                     problems=[{"line": ln, "message": m} for ln, m in exc.problems])
    except (DivergingGain, fpc.ThresholdReached) as exc:
        omega = getattr(exc, "omega", None)
        extra = {} if omega is None or math.isnan(omega) else {"omega_rad_s": omega}
        return _fail("divergence", str(exc), EXIT_DIVERGENCE, **extra)
    except (OutputError, OSError) as exc:
        return _fail("io", str(exc), EXIT_IO)
    except ValueError as exc:
        return _fail("config", str(exc), EXIT_CONFIG)


if __name__ == "__main__":
    sys.exit(main())
