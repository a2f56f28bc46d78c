"""Command-line interface.

Subcommands
-----------
force   one force value (plate-plate pressure or sphere-plate force)
energy  plate-pair free energy per unit area
delta   thermal or conductivity correction at one separation
table   the six-column thermal-correction reference table
sweep   any of the above quantities over a range of separations
figure  curve data behind the standard diagnostic figures
coeff   the relaxation correction integrals I_1 / I_2

Common options (accepted by every subcommand): ``--format
{text,csv,json}``, ``--rel-tol``, ``--config FILE.toml``, ``--out
PATH``, ``--dump-config``.  Configuration files carry ``[geometry]``,
``[material]`` and ``[run]`` tables; explicit command-line values win
over the file.  Separations are given in micrometers; defaults are
T = 300 K, aluminum, the modified zero-frequency prescription, and a
relative tolerance of 1e-10.

Exit codes: 0 success, 2 configuration or usage error, 3 convergence
failure (raise ``--max-matsubara`` or loosen ``--rel-tol``).

CSV output uses the fixed schema ``a_um, model, prescription, quantity,
value, est_rel_error`` with floats in ``%.12e`` (reruns are
byte-identical); writing CSV to ``--out PATH`` also writes provenance
to ``PATH.meta.json``.  ``figure`` and ``coeff`` emit the plotting
schema ``x, curve, quantity, value`` instead, since their abscissa is
not generally a separation.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (
    FIGURE_NAMES,
    csv_text,
    delta_T_detailed,
    delta_c_detailed,
    figure_data,
    make_table,
    meta_dict,
    write_json,
)
from .asymptotics import relaxation_integral_1, relaxation_integral_2
from .lifshitz import (
    PlatePlate,
    SpherePlate,
    force_plate_plate,
    force_sphere_plate,
    free_energy_plate_plate,
)
from .models import (
    PRESET_NAMES,
    material_from_mapping,
    material_label,
)
from .quadrature import ConvergenceError, QuadratureSpec
from .reflection import Prescription, PrescriptionError, parse_prescription

__all__ = ["main", "build_parser"]

_UM = 1e-6

_DEFAULTS = {
    "geometry": {"kind": "plate-plate", "a_um": 1.0, "R_um": 100.0},
    "material": {"preset": "Al"},
    "run": {"prescription": "modified-sdm", "temp_k": 300.0,
            "rel_tol": 1e-10, "format": "text", "allow_raw_drude": False,
            "max_matsubara": 0},
}


# ----------------------------------------------------------------------
# Argument parsing
# ----------------------------------------------------------------------

def _range_triple(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected min:max:count, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected min:max:count with numeric fields, got {text!r}")
    if not (hi > lo > 0.0) or n < 2:
        raise argparse.ArgumentTypeError(
            f"need 0 < min < max and count >= 2, got {text!r}")
    return lo, hi, n


def _float_list(text):
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated floats, got {text!r}")


def build_parser():
    """The :mod:`argparse` command-line parser."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"),
                        default=None, help="output format (default text)")
    common.add_argument("--rel-tol", type=float, default=None,
                        help="relative quadrature tolerance (default 1e-10)")
    common.add_argument("--config", default=None, metavar="FILE",
                        help="TOML file with [geometry]/[material]/[run]")
    common.add_argument("--out", default=None, metavar="PATH",
                        help="write output to PATH instead of stdout")
    common.add_argument("--dump-config", action="store_true",
                        help="print the effective configuration as TOML "
                             "and exit")

    physics = argparse.ArgumentParser(add_help=False)
    physics.add_argument("--material", default=None,
                         help="material preset: " + ", ".join(PRESET_NAMES)
                              + " (custom materials via --config)")
    physics.add_argument("--prescription", default=None,
                         choices=[p.value for p in Prescription],
                         help="zero-frequency prescription")
    physics.add_argument("--temp-k", type=float, default=None,
                         help="temperature in kelvin (default 300)")
    physics.add_argument("--allow-raw-drude", action="store_true",
                         default=None,
                         help="permit the literal zero-frequency value "
                              "for dissipative metals")
    physics.add_argument("--max-matsubara", type=int, default=None,
                         help="cap on Matsubara terms (0 = default cap)")

    geometry = argparse.ArgumentParser(add_help=False)
    geometry.add_argument("--geometry",
                          choices=("plate-plate", "sphere-plate"),
                          default=None)
    geometry.add_argument("--a-um", type=float, default=None,
                          help="separation in micrometers")
    geometry.add_argument("--R-um", type=float, default=None,
                          help="sphere curvature radius in micrometers")

    parser = argparse.ArgumentParser(
        prog="casimir",
        description="Finite-temperature dispersion forces between real "
                    "metals, dielectrics and ideal mirrors.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("force", parents=[common, physics, geometry],
                   help="one force value")
    sub.add_parser("energy", parents=[common, physics, geometry],
                   help="plate-pair free energy per unit area")

    p_delta = sub.add_parser("delta", parents=[common, physics, geometry],
                             help="thermal or conductivity correction")
    p_delta.add_argument("--kind",
                         choices=("thermal", "conductivity", "t", "c"),
                         default="thermal",
                         help="t/thermal or c/conductivity")

    p_table = sub.add_parser("table", parents=[common, physics],
                             help="thermal-correction reference table")
    p_table.add_argument("which", nargs="?", default="table1",
                         choices=("table1", "table2", "plate", "sphere",
                                  "1", "2"),
                         help="table1/plate pressure or table2/sphere force"
                              " (default table1)")

    p_sweep = sub.add_parser("sweep", parents=[common, physics],
                             help="a quantity over a separation range")
    p_sweep.add_argument("--a-um", dest="a_um_range", type=_range_triple,
                         required=True, metavar="MIN:MAX:COUNT",
                         help="separation range in micrometers")
    p_sweep.add_argument("--geometry",
                         choices=("plate-plate", "sphere-plate"),
                         default=None)
    p_sweep.add_argument("--R-um", type=float, default=None,
                         help="sphere curvature radius in micrometers")
    p_sweep.add_argument("--log", action="store_true",
                         help="logarithmic spacing")
    p_sweep.add_argument("--quantity",
                         choices=("pressure", "energy", "force",
                                  "delta-t", "delta-c",
                                  "delta-thermal", "delta-conductivity"),
                         default="pressure")

    p_fig = sub.add_parser("figure", parents=[common, physics],
                           help="curve data for a diagnostic figure")
    p_fig.add_argument("--name", choices=FIGURE_NAMES, required=True)
    p_fig.add_argument("--points", type=int, default=21)

    p_coeff = sub.add_parser("coeff", parents=[common],
                             help="relaxation correction integrals")
    p_coeff.add_argument("which", choices=("i1", "i2"))
    group = p_coeff.add_mutually_exclusive_group(required=True)
    group.add_argument("--gamma-tilde", type=_float_list, metavar="G1,G2,...")
    group.add_argument("--grid", type=_range_triple, metavar="MIN:MAX:COUNT")

    return parser


# ----------------------------------------------------------------------
# Configuration merging
# ----------------------------------------------------------------------

def _load_config(path):
    try:
        import tomllib
    except ImportError:  # Python < 3.11
        import tomli as tomllib
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ValueError(f"invalid TOML in {path}: {exc}") from exc


def _effective_config(args):
    """Merge defaults <- config file <- explicit command-line values."""
    file_cfg = _load_config(args.config) if args.config else {}
    for section in file_cfg:
        if section not in _DEFAULTS:
            raise ValueError(
                f"unknown config section [{section}]; expected "
                "[geometry], [material] or [run]")

    cfg = {sec: dict(vals) for sec, vals in _DEFAULTS.items()}
    for sec in ("geometry", "run"):
        for key, value in file_cfg.get(sec, {}).items():
            if key not in cfg[sec]:
                raise ValueError(f"unknown config key {key!r} in [{sec}]")
            cfg[sec][key] = value
    if "material" in file_cfg:
        cfg["material"] = dict(file_cfg["material"])

    def _cli(section, key, attr, transform=None):
        value = getattr(args, attr, None)
        if value is not None:
            cfg[section][key] = transform(value) if transform else value

    _cli("geometry", "kind", "geometry")
    _cli("geometry", "a_um", "a_um")
    _cli("geometry", "R_um", "R_um")
    _cli("run", "prescription", "prescription")
    _cli("run", "temp_k", "temp_k")
    _cli("run", "rel_tol", "rel_tol")
    _cli("run", "format", "format")
    _cli("run", "allow_raw_drude", "allow_raw_drude")
    _cli("run", "max_matsubara", "max_matsubara")
    if getattr(args, "material", None) is not None:
        cfg["material"] = {"preset": args.material}
    return cfg


def _toml_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return repr(value)
    text = str(value).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{text}"'


def _dump_config(cfg):
    lines = []
    for section in ("geometry", "material", "run"):
        lines.append(f"[{section}]")
        for key in sorted(cfg[section]):
            lines.append(f"{key} = {_toml_value(cfg[section][key])}")
        lines.append("")
    return "\n".join(lines)


def _runtime(cfg):
    """Resolve the merged config into live objects."""
    run = cfg["run"]
    model = material_from_mapping(cfg["material"])
    prescription = parse_prescription(run["prescription"])
    quad = QuadratureSpec(rel_tol=float(run["rel_tol"]))
    temp = float(run["temp_k"])
    if temp < 0.0 or not math.isfinite(temp):
        raise ValueError(f"temperature must be >= 0, got {temp!r}")
    cap = int(run["max_matsubara"]) or None
    return model, prescription, quad, temp, bool(run["allow_raw_drude"]), cap


def _geometry(cfg):
    geo = cfg["geometry"]
    a = float(geo["a_um"]) * _UM
    if geo["kind"] == "sphere-plate":
        return SpherePlate(a, float(geo["R_um"]) * _UM)
    if geo["kind"] == "plate-plate":
        return PlatePlate(a)
    raise ValueError(f"unknown geometry kind {geo['kind']!r}")


# ----------------------------------------------------------------------
# Output plumbing
# ----------------------------------------------------------------------

def _figure_csv(rows):
    lines = ["x,curve,quantity,value"]
    for row in rows:
        lines.append(f"{row['x']:.12e},{row['curve']},{row['quantity']},"
                     f"{row['value']:.12e}")
    return "\n".join(lines) + "\n"


def _emit(args, cfg, rows, text, plotting=False):
    fmt = cfg["run"]["format"]
    meta = meta_dict(rel_tol=float(cfg["run"]["rel_tol"]))
    if fmt == "text":
        payload = text
    elif fmt == "csv":
        payload = _figure_csv(rows) if plotting else csv_text(rows)
    elif fmt == "json":
        buf = io.StringIO()
        write_json(buf, rows, meta)
        payload = buf.getvalue()
    else:
        raise ValueError(f"unknown format {fmt!r}")

    if args.out:
        out = Path(args.out)
        out.write_text(payload)
        if fmt == "csv":
            Path(str(out) + ".meta.json").write_text(
                json.dumps(meta, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(payload)
    return 0


def _record(a_um, model, prescription, quantity, value, est):
    return {"a_um": float(a_um), "model": material_label(model),
            "prescription": str(prescription), "quantity": quantity,
            "value": float(value), "est_rel_error": float(est)}


def _force_text(title, result, cfg, extra=()):
    run = cfg["run"]
    geo = cfg["geometry"]
    lines = [title]
    lines.append(f"  a             = {geo['a_um']:g} um")
    if title.startswith("force (sphere"):
        lines.append(f"  R             = {geo['R_um']:g} um")
    lines.append(f"  T             = {float(run['temp_k']):g} K")
    lines.append(f"  prescription  = {run['prescription']}")
    for item in extra:
        lines.append(f"  {item}")
    share = (abs(result.zero_term / result.value) * 100.0
             if result.value != 0.0 else float("nan"))
    lines.append(f"  value         = {result.value:.12e} {result.unit}")
    lines.append(f"  zero-freq term= {result.zero_term:.6e} "
                 f"({share:.1f}% of value)")
    lines.append(f"  matsubara lmax= {result.l_max_used}")
    lines.append(f"  est rel error = {result.est_rel_error:.2e}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# Subcommand implementations
# ----------------------------------------------------------------------

def _cmd_force(args, cfg):
    model, prescription, quad, temp, allow_raw, cap = _runtime(cfg)
    geometry = _geometry(cfg)
    label = material_label(model)
    if isinstance(geometry, PlatePlate):
        res = force_plate_plate(model, prescription, geometry.a, temp,
                                quad=quad, allow_raw_drude=allow_raw,
                                max_matsubara=cap)
        quantity, title = "pressure", "pressure (plate-plate)"
    else:
        res = force_sphere_plate(model, prescription, geometry.a,
                                 geometry.R, temp, quad=quad,
                                 allow_raw_drude=allow_raw,
                                 max_matsubara=cap)
        quantity, title = "force_sphere_plate", "force (sphere-plate)"
    rows = [_record(cfg["geometry"]["a_um"], model, prescription, quantity,
                    res.value, res.est_rel_error)]
    return _emit(args, cfg, rows,
                 _force_text(title, res, cfg, [f"material      = {label}"]))


def _cmd_energy(args, cfg):
    model, prescription, quad, temp, allow_raw, cap = _runtime(cfg)
    geometry = _geometry(cfg)
    res = free_energy_plate_plate(model, prescription, geometry.a, temp,
                                  quad=quad, allow_raw_drude=allow_raw,
                                  max_matsubara=cap)
    label = material_label(model)
    rows = [_record(cfg["geometry"]["a_um"], model, prescription,
                    "free_energy_per_area", res.value, res.est_rel_error)]
    return _emit(args, cfg, rows,
                 _force_text("free energy per unit area (plate-plate)",
                             res, cfg, [f"material      = {label}"]))


def _cmd_delta(args, cfg):
    model, prescription, quad, temp, allow_raw, _cap = _runtime(cfg)
    geometry = _geometry(cfg)
    suffix = "plate" if isinstance(geometry, PlatePlate) else "sphere"
    kind = {"t": "thermal", "c": "conductivity"}.get(args.kind, args.kind)
    if kind == "thermal":
        value, est_abs = delta_T_detailed(model, prescription, geometry,
                                          temp, quad=quad,
                                          allow_raw_drude=allow_raw)
        quantity = f"delta_T_{suffix}"
    else:
        value, est_abs = delta_c_detailed(model, prescription, geometry,
                                          temp, quad=quad,
                                          allow_raw_drude=allow_raw)
        quantity = f"delta_c_{suffix}"
    est_rel = est_abs / max(abs(value), 1e-300)
    rows = [_record(cfg["geometry"]["a_um"], model, prescription, quantity,
                    value, est_rel)]
    text = (f"{quantity} (a = {cfg['geometry']['a_um']:g} um, "
            f"T = {temp:g} K, {material_label(model)}, {prescription})\n"
            f"  value         = {value:.12e}\n"
            f"  est abs error = {est_abs:.2e}\n")
    return _emit(args, cfg, rows, text)


def _cmd_table(args, cfg):
    _model, _prescription, quad, temp, _allow_raw, _cap = _runtime(cfg)
    which = {"table1": 1, "1": 1, "table2": 2, "2": 2,
             "plate": "plate", "sphere": "sphere"}[args.which]
    table = make_table(which, temperature=temp, quad=quad)
    return _emit(args, cfg, table.rows(), table.to_text())


def _cmd_sweep(args, cfg):
    model, prescription, quad, temp, allow_raw, cap = _runtime(cfg)
    lo, hi, n = args.a_um_range
    grid = (np.geomspace(lo, hi, n) if args.log
            else np.linspace(lo, hi, n))
    geo_kind = cfg["geometry"]["kind"]
    r_m = float(cfg["geometry"]["R_um"]) * _UM
    what = {"delta-thermal": "delta-t",
            "delta-conductivity": "delta-c"}.get(args.quantity,
                                                 args.quantity)
    rows = []
    for a_um in grid:
        a = float(a_um) * _UM
        if what == "pressure":
            res = force_plate_plate(model, prescription, a, temp, quad=quad,
                                    allow_raw_drude=allow_raw,
                                    max_matsubara=cap)
            value, est, quantity = res.value, res.est_rel_error, "pressure"
        elif what == "energy":
            res = free_energy_plate_plate(model, prescription, a, temp,
                                          quad=quad,
                                          allow_raw_drude=allow_raw,
                                          max_matsubara=cap)
            value, est = res.value, res.est_rel_error
            quantity = "free_energy_per_area"
        elif what == "force":
            res = force_sphere_plate(model, prescription, a, r_m, temp,
                                     quad=quad, allow_raw_drude=allow_raw,
                                     max_matsubara=cap)
            value, est = res.value, res.est_rel_error
            quantity = "force_sphere_plate"
        else:
            geometry = (PlatePlate(a) if geo_kind == "plate-plate"
                        else SpherePlate(a, r_m))
            suffix = "plate" if geo_kind == "plate-plate" else "sphere"
            fn = delta_T_detailed if what == "delta-t" else delta_c_detailed
            value, est_abs = fn(model, prescription, geometry, temp,
                                quad=quad, allow_raw_drude=allow_raw)
            est = est_abs / max(abs(value), 1e-300)
            kind = "T" if what == "delta-t" else "c"
            quantity = f"delta_{kind}_{suffix}"
        rows.append(_record(a_um, model, prescription, quantity, value, est))
    width = max(len(r["quantity"]) for r in rows)
    lines = [f"{'a (um)':>10}  {'value':>20}  quantity"]
    for r in rows:
        lines.append(f"{r['a_um']:>10.4g}  {r['value']:>20.12e}  "
                     f"{r['quantity']:<{width}}")
    return _emit(args, cfg, rows, "\n".join(lines) + "\n")


def _cmd_figure(args, cfg):
    _model, _prescription, quad, temp, _allow_raw, _cap = _runtime(cfg)
    data = figure_data(args.name, temperature=temp, quad=quad,
                       n_points=args.points)
    rows = []
    for label, ys in sorted(data["curves"].items()):
        for x, y in zip(data["x"], ys):
            rows.append({"x": float(x), "curve": label,
                         "quantity": f"{data['name']}:{data['ylabel']}",
                         "value": float(y)})
    lines = [f"{data['name']}: {data['ylabel']} vs {data['xlabel']}"]
    for label, ys in sorted(data["curves"].items()):
        lines.append(f"curve {label}:")
        for x, y in zip(data["x"], ys):
            lines.append(f"  {x:>12.6g}  {y:>18.9e}")
    return _emit(args, cfg, rows, "\n".join(lines) + "\n", plotting=True)


def _cmd_coeff(args, cfg):
    _model, _prescription, quad, _temp, _allow_raw, _cap = _runtime(cfg)
    if args.gamma_tilde is not None:
        grid = args.gamma_tilde
    else:
        lo, hi, n = args.grid
        grid = np.linspace(lo, hi, n).tolist()
    fn = relaxation_integral_1 if args.which == "i1" else relaxation_integral_2
    name = "I1" if args.which == "i1" else "I2"
    rows = [{"x": float(g), "curve": name, "quantity": "relaxation_integral",
             "value": float(fn(g, quad=quad))} for g in grid]
    lines = [f"{name}(gamma_tilde)"]
    for r in rows:
        lines.append(f"  {r['x']:>12.6g}  {r['value']:.12e}")
    return _emit(args, cfg, rows, "\n".join(lines) + "\n", plotting=True)


_COMMANDS = {
    "force": _cmd_force,
    "energy": _cmd_energy,
    "delta": _cmd_delta,
    "table": _cmd_table,
    "sweep": _cmd_sweep,
    "figure": _cmd_figure,
    "coeff": _cmd_coeff,
}


def main(argv=None):
    """Entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses code 2 for usage errors
        return int(exc.code or 0)
    try:
        cfg = _effective_config(args)
        if args.dump_config:
            payload = _dump_config(cfg)
            if args.out:
                Path(args.out).write_text(payload)
            else:
                sys.stdout.write(payload)
            return 0
        return _COMMANDS[args.command](args, cfg)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (PrescriptionError, ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
