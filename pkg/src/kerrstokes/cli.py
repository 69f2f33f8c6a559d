"""Command-line interface.

Three subcommands::

    kerrstokes run    --config FILE [--out PATH] [--format csv|json]
                      [--grid START:STOP:COUNT] [--optimize-at OMEGA0]
    kerrstokes figure --figure-id N [--out DIR]
    kerrstokes verify [--out PATH]

Exit codes: 0 success, 1 config parse error, 2 validation / contract error,
3 I/O error, 4 verification failure.  Errors are emitted as one JSON object
on stderr (``{"error": {"code": ..., "issues": [...]}}``); regular results
go to stdout as JSON.  CSV files carry the header ``omega,s_value,s_star``
and 17-significant-digit values, so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
import warnings
from pathlib import Path

from . import __version__
from .config_io import dump_reference_path, load_config
from .errors import ConfigParseError, ConfigValidationError, ScenarioContractError
from .figures import figure_preset
from .scenario import OmegaGrid, collect_issues, run
from .verify import run_checks

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_VERIFY = 4

SCHEMA_VERSION = 1


def _emit_error(code: str, exit_code: int, issues) -> int:
    payload = {
        "error": {
            "code": code,
            "issues": [{"field": f, "message": m} for f, m in issues],
        }
    }
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    return exit_code


def _finite_or_none(value):
    if value is None:
        return None
    return value if math.isfinite(value) else None


def _optimum_payload(optimum):
    if optimum is None:
        return None
    return {
        "delta_phi_opt": _finite_or_none(optimum.delta_phi_opt),
        "delta_phi_numeric": _finite_or_none(optimum.delta_phi_numeric),
        "omega0": optimum.omega0,
        "s_min_closed": optimum.s_min_closed,
        "s_min_numeric": optimum.s_min_numeric,
        "agreement": optimum.agreement,
        "flags": list(optimum.flags),
    }


def _summary_payload(summary):
    return {
        "s0": summary.s0,
        "s1": summary.s1,
        "s2": summary.s2,
        "s3": summary.s3,
        "poincare_radius": summary.poincare_radius,
        "degree_of_polarization": _finite_or_none(summary.degree_of_polarization),
    }


def _write_spectrum_csv(path: Path, series) -> None:
    lines = ["omega,s_value,s_star"]
    for omega, value, star in zip(series.omega, series.values, series.normalized):
        lines.append(f"{omega:.17g},{value:.17g},{star:.17g}")
    with open(path, "w", encoding="ascii", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


def _parse_grid_flag(text: str) -> OmegaGrid:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigParseError(f"--grid expects START:STOP:COUNT, got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigParseError(f"--grid expects numbers START:STOP:COUNT, got {text!r}") from None
    return OmegaGrid(start, stop, count)


def cmd_run(args) -> int:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # warnings are reported structurally below
        try:
            config = load_config(args.config)
        except OSError as exc:
            return _emit_error("io", EXIT_IO, [("config", str(exc))])
        except ConfigParseError as exc:
            return _emit_error("parse", EXIT_PARSE, [("config", str(exc))])
        except ConfigValidationError as exc:
            return _emit_error(
                "validation", EXIT_VALIDATION, [(i.field, i.message) for i in exc.issues]
            )
        try:
            if args.grid is not None:
                config = dataclasses.replace(config, omega_grid=_parse_grid_flag(args.grid))
            if args.optimize_at is not None:
                config = dataclasses.replace(config, omega0=args.optimize_at)
        except ConfigParseError as exc:
            return _emit_error("parse", EXIT_PARSE, [("grid", str(exc))])
        except ValueError as exc:
            return _emit_error("validation", EXIT_VALIDATION, [("grid", str(exc))])

        try:
            result = run(config)
        except ConfigValidationError as exc:
            return _emit_error(
                "validation", EXIT_VALIDATION, [(i.field, i.message) for i in exc.issues]
            )
        except (ScenarioContractError, ValueError) as exc:
            return _emit_error("validation", EXIT_VALIDATION, [("scenario", str(exc))])
        _, warns = collect_issues(config)

    out = Path(args.out) if args.out else Path(f"spectrum.{args.format}")
    series = result.spectrum
    try:
        if args.format == "csv":
            _write_spectrum_csv(out, series)
        else:
            document = {
                "schema_version": SCHEMA_VERSION,
                "kind": config.kind.value,
                "stokes_index": config.stokes_index.value,
                "summary": _summary_payload(result.summary),
                "optimum": _optimum_payload(result.optimum),
                "reference_intensity": series.reference_intensity,
                "spectrum": {
                    "omega": [float(v) for v in series.omega],
                    "s_value": [float(v) for v in series.values],
                    "s_star": [float(v) for v in series.normalized],
                },
            }
            with open(out, "w", encoding="ascii", newline="\n") as handle:
                json.dump(document, handle, sort_keys=True, indent=1)
                handle.write("\n")
    except OSError as exc:
        return _emit_error("io", EXIT_IO, [("out", str(exc))])

    bundle = {
        "schema_version": SCHEMA_VERSION,
        "kind": config.kind.value,
        "stokes_index": config.stokes_index.value,
        "summary": _summary_payload(result.summary),
        "optimum": _optimum_payload(result.optimum),
        "reference_intensity": series.reference_intensity,
        "points": int(series.omega.size),
        "out": str(out),
        "warnings": [{"field": w.field, "message": w.message} for w in warns],
    }
    print(json.dumps(bundle, sort_keys=True))
    return EXIT_OK


def cmd_figure(args) -> int:
    try:
        preset = figure_preset(args.figure_id)
    except ValueError as exc:
        return _emit_error("validation", EXIT_VALIDATION, [("figure-id", str(exc))])
    out_dir = Path(args.out)
    files = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            for label, config in zip(preset.labels, preset.configs):
                result = run(config)
                path = out_dir / f"fig{preset.figure_id}_{label}.csv"
                _write_spectrum_csv(path, result.spectrum)
                files.append(path.name)
        except OSError as exc:
            return _emit_error("io", EXIT_IO, [("out", str(exc))])
    print(
        json.dumps(
            {
                "schema_version": SCHEMA_VERSION,
                "figure_id": preset.figure_id,
                "description": preset.description,
                "files": files,
                "points": preset.configs[0].omega_grid.count,
            },
            sort_keys=True,
        )
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_checks(tau_r_mismatch=args.inject_tau_mismatch)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "passed": report.passed,
        "check_count": len(report.checks),
        "failed": [c.name for c in report.checks if not c.passed],
        "optimizer_flags": list(report.optimizer_flags),
        "elapsed_seconds": round(report.elapsed_seconds, 3),
        "checks": [
            {
                "name": c.name,
                "passed": c.passed,
                "tolerance": c.tolerance,
                "detail": c.detail,
            }
            for c in report.checks
        ],
    }
    text = json.dumps(payload, sort_keys=True, indent=1)
    if args.out:
        try:
            with open(args.out, "w", encoding="ascii", newline="\n") as handle:
                handle.write(text + "\n")
        except OSError as exc:
            return _emit_error("io", EXIT_IO, [("out", str(exc))])
    else:
        print(text)
    return EXIT_OK if report.passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kerrstokes",
        description=(
            "Average Stokes parameters and quantum-fluctuation spectra of "
            "ultrashort pulses in relaxing Kerr media"
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="evaluate one scenario config")
    p_run.add_argument("--config", required=True, help="INI scenario file")
    p_run.add_argument("--out", help="output path (default spectrum.<format>)")
    p_run.add_argument("--format", choices=("csv", "json"), default="csv")
    p_run.add_argument("--grid", help="override the frequency grid, START:STOP:COUNT")
    p_run.add_argument(
        "--optimize-at",
        type=float,
        metavar="OMEGA0",
        help="optimize the phase offset at this reduced frequency",
    )
    p_run.set_defaults(func=cmd_run)

    p_fig = sub.add_parser("figure", help="write the preset curves of one reference figure")
    p_fig.add_argument("--figure-id", type=int, required=True)
    p_fig.add_argument("--out", default=".", help="output directory (default .)")
    p_fig.set_defaults(func=cmd_figure)

    p_ver = sub.add_parser("verify", help="run the numerical self-check suite")
    p_ver.add_argument("--out", help="write the JSON report here instead of stdout")
    p_ver.add_argument(
        "--inject-tau-mismatch", type=float, default=1.0, help=argparse.SUPPRESS
    )
    p_ver.set_defaults(func=cmd_verify)

    p_ref = sub.add_parser(
        "reference-config", help="print the annotated example config (pipe to a file to start)"
    )
    p_ref.set_defaults(
        func=lambda args: (print(Path(dump_reference_path()).read_text(), end=""), EXIT_OK)[1]
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
