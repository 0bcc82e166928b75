"""Command-line front end.

Subcommands::

    eomsim spectrum   --config cfg.json [--format csv|json] [--out path] [--model exact|optical]
    eomsim coherent   --config cfg.json ...
    eomsim two-photon --config cfg.json ...
    eomsim mean-field --config cfg.json ...
    eomsim verify     [--config cfg.json] [--tolerance-scale X] [--format ...] [--out path]

Exit status: 0 on success, 1 for configuration or physics validation errors
(including a failed verify run), 2 for I/O problems such as an unreadable
config file.

Output is deterministic: rows are emitted in sorted order and floats are
written with full round-trip precision, so repeated runs of the same config
are byte-identical.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import verify as verify_mod
from .config import (
    FORMATS,
    MODELS,
    ConfigError,
    RunConfig,
    RunPoint,
    parse_config,
)
from .engine import (
    coherent_output,
    mean_field,
    port_entanglement,
    single_photon_output,
    two_photon_output,
)
from .phase_mod import MultitonePMConfig, PMConfig


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _csv_field(val) -> str:
    if val is None:
        return ""
    if isinstance(val, bool):
        return "true" if val else "false"
    if isinstance(val, float):
        return _fmt(val)
    s = str(val)
    if any(ch in s for ch in ',"\n'):
        s = '"' + s.replace('"', '""') + '"'
    return s


def _csv_table(header: tuple, rows: list) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_csv_field(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _order_basis(eom) -> int | None:
    """Common ladder spacing, if the device has one.

    When every driven arm runs the same single tone the mode offsets are
    reported in units of that tone; otherwise the raw offset is used.
    """
    tones = set()
    for arm in (eom.pm1, eom.pm2):
        if isinstance(arm, MultitonePMConfig):
            return None
        if isinstance(arm, PMConfig):
            tones.add(arm.tone)
    if len(tones) == 1:
        return tones.pop()
    return None


def _alpha_json(alpha: complex) -> list[float]:
    return [alpha.real, alpha.imag]


def _spectrum_point(pt: RunPoint, idx: int, coherent: bool) -> dict:
    if coherent:
        spec = coherent_output(pt.eom, pt.input_port, pt.n0, pt.alpha, pt.truncation, pt.model)
    else:
        spec = single_photon_output(pt.eom, pt.input_port, pt.n0, pt.truncation, pt.model)
    basis = _order_basis(pt.eom)
    rows = []
    for port in (1, 2):
        for mode, amp in sorted(spec.port(port).items()):
            offset = mode - pt.n0
            rows.append({
                "port": port,
                "mode": mode,
                "order": offset // basis if basis else offset,
                "re": amp.real,
                "im": amp.imag,
                "prob": abs(amp) ** 2,
            })
    out = {
        "point": idx,
        "input_port": pt.input_port,
        "mode_in": pt.n0,
        "model": pt.model,
        "total_power": spec.total_power(),
        "rows": rows,
    }
    if coherent:
        out["alpha"] = _alpha_json(pt.alpha)
    return out


def _two_photon_point(pt: RunPoint, idx: int) -> dict:
    state = two_photon_output(pt.eom, pt.n0, pt.truncation, pt.model)
    pairs = []
    for key in sorted(state.amps):
        (p1, m1), (p2, m2) = key
        amp = state.amps[key]
        pairs.append({
            "port_a": p1, "mode_a": m1, "port_b": p2, "mode_b": m2,
            "re": amp.real, "im": amp.imag,
            "prob": state.pair_probability(key),
        })
    svs = [float(s) for s in port_entanglement(state)]
    return {
        "point": idx,
        "mode_in": pt.n0,
        "model": pt.model,
        "norm": state.norm_sq(),
        "pairs": pairs,
        "sectors": state.sector_probabilities(),
        "singular_values": svs,
    }


def _mean_field_point(pt: RunPoint, idx: int) -> dict:
    mf = pt.mean_field
    spec = coherent_output(pt.eom, pt.input_port, pt.n0, pt.alpha, pt.truncation, pt.model)
    series = mean_field(spec, mf.port, mf.times, mf.nu, mf.length, mf.field_scale)
    phasors = [
        {"mode": mode, "omega": omega, "re": ph.real, "im": ph.imag}
        for mode, omega, ph in series.terms
    ]
    samples = [{"t": t, "field": v} for t, v in zip(series.times, series.values)]
    return {
        "point": idx,
        "input_port": pt.input_port,
        "mode_in": pt.n0,
        "alpha": _alpha_json(pt.alpha),
        "port": mf.port,
        "model": pt.model,
        "phasors": phasors,
        "samples": samples,
    }


def run_points(rc: RunConfig) -> list[dict]:
    out = []
    for idx, pt in enumerate(rc.points):
        if rc.command in ("spectrum", "coherent"):
            out.append(_spectrum_point(pt, idx, coherent=rc.command == "coherent"))
        elif rc.command == "two-photon":
            out.append(_two_photon_point(pt, idx))
        else:
            out.append(_mean_field_point(pt, idx))
    return out


def emit_run(command: str, points: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"command": command, "points": points}, indent=2) + "\n"
    if command in ("spectrum", "coherent"):
        header = ("point", "port", "mode", "order", "re", "im", "prob")
        rows = [
            (p["point"], r["port"], r["mode"], r["order"], r["re"], r["im"], r["prob"])
            for p in points
            for r in p["rows"]
        ]
        return _csv_table(header, rows)
    if command == "two-photon":
        header = ("point", "record", "k1", "k2", "k3", "k4", "re", "im", "value")
        rows = []
        for p in points:
            for pr in p["pairs"]:
                rows.append((p["point"], "pair", pr["port_a"], pr["mode_a"],
                             pr["port_b"], pr["mode_b"], pr["re"], pr["im"], pr["prob"]))
            for name, prob in p["sectors"].items():
                rows.append((p["point"], "sector", name, None, None, None, None, None, prob))
            for rank, sv in enumerate(p["singular_values"]):
                rows.append((p["point"], "singular_value", rank, None, None, None, None, None, sv))
            rows.append((p["point"], "norm", None, None, None, None, None, None, p["norm"]))
        return _csv_table(header, rows)
    header = ("point", "record", "mode", "omega", "t", "re", "im", "field")
    rows = []
    for p in points:
        for ph in p["phasors"]:
            rows.append((p["point"], "phasor", ph["mode"], ph["omega"], None,
                         ph["re"], ph["im"], None))
        for s in p["samples"]:
            rows.append((p["point"], "sample", None, None, s["t"], None, None, s["field"]))
    return _csv_table(header, rows)


def emit_verify(results: list, scale: float, fmt: str) -> str:
    if fmt == "json":
        doc = {
            "command": "verify",
            "tolerance_scale": scale,
            "all_passed": all(r.passed for r in results),
            "checks": [dataclasses.asdict(r) for r in results],
        }
        return json.dumps(doc, indent=2) + "\n"
    header = ("index", "name", "passed", "detail")
    rows = [(r.index, r.name, r.passed, r.detail) for r in results]
    return _csv_table(header, rows)


def _write_output(text: str, out_path: str | None) -> int:
    if out_path is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 2
    return 0


def _read_config(path: str) -> tuple[str | None, int]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read(), 0
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return None, 2


def _cmd_run(args) -> int:
    text, status = _read_config(args.config)
    if status:
        return status
    try:
        rc = parse_config(text)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if rc.command != args.command:
        print(f"error: config is for command {rc.command!r}, invoked as {args.command!r}",
              file=sys.stderr)
        return 1
    if args.model is not None:
        rc = dataclasses.replace(
            rc, points=tuple(dataclasses.replace(pt, model=args.model) for pt in rc.points)
        )
    try:
        points = run_points(rc)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    fmt = args.format if args.format is not None else rc.fmt
    return _write_output(emit_run(rc.command, points, fmt), args.out)


def _cmd_verify(args) -> int:
    scale = 1.0
    fmt = None
    if args.config is not None:
        text, status = _read_config(args.config)
        if status:
            return status
        try:
            rc = parse_config(text)
        except ConfigError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        if rc.command != "verify":
            print(f"error: config is for command {rc.command!r}, invoked as 'verify'",
                  file=sys.stderr)
            return 1
        scale = rc.tolerance_scale
        fmt = rc.fmt
    if args.tolerance_scale is not None:
        if args.tolerance_scale <= 0.0:
            print("error: --tolerance-scale must be positive", file=sys.stderr)
            return 1
        scale = args.tolerance_scale
    if args.format is not None:
        fmt = args.format
    results = verify_mod.run_all(scale)
    status = _write_output(emit_verify(results, scale, fmt or "csv"), args.out)
    if status:
        return status
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eomsim",
        description="Quantized-field simulator for dual-arm electro-optic amplitude modulators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run_help = {
        "spectrum": "single-photon output amplitudes per port and mode",
        "coherent": "coherent-state output amplitudes per port and mode",
        "two-photon": "two-photon joint output state, sectors and Schmidt coefficients",
        "mean-field": "classical field phasors and time samples on one port",
    }
    for name, help_text in run_help.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to a JSON run configuration")
        p.add_argument("--format", choices=FORMATS, help="override the output format")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--model", choices=MODELS, help="override the scattering model")
    pv = sub.add_parser("verify", help="run the built-in physics checks")
    pv.add_argument("--config", help="optional JSON config with command 'verify'")
    pv.add_argument("--tolerance-scale", type=float,
                    help="multiply every check tolerance by this factor")
    pv.add_argument("--format", choices=FORMATS, help="report format (default csv)")
    pv.add_argument("--out", help="write the report to this file instead of stdout")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return _cmd_verify(args)
    return _cmd_run(args)


if __name__ == "__main__":
    sys.exit(main())
