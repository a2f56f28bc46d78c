"""Derived quantities: thermal and finite-conductivity corrections,
reference tables, parameter sweeps, figure data, and serialization.

Definitions (negative forces; ``F`` is the plate pressure or the
sphere-plate force depending on geometry):

* thermal correction        ``delta_T = F(a, T) / F(a, 0) - 1``,
  with the ``T = 0`` denominator computed prescription-free (the
  frequency axis is continuous there),
* conductivity correction   ``delta_c = 1 - F_model(a, T) /
  F_ideal(a, T)``, the fractional reduction relative to an ideal metal
  at the same temperature.

For the sphere-plate geometry both corrections are evaluated as ratios
of plate-pair free energies, to which the sphere force is proportional
with the ``R``-dependent prefactor cancelling exactly.

The reference tables list ``delta_T`` at T = 300 K for aluminum
(dissipative and dissipationless models) and the ideal metal under the
zero-frequency prescriptions of :mod:`casimir.reflection`, over
separations 0.1 um to 10 um.
"""

from __future__ import annotations

import io
import json
import math
import subprocess
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .constants import HBAR_C, ZETA3, c, hbar, k_B
from .models import (
    DrudeMetal,
    IdealMetal,
    PlasmaMetal,
    material_label,
    preset,
)
from .reflection import Prescription, parse_prescription
from .lifshitz import (
    PlatePlate,
    SpherePlate,
    force_plate_plate,
    force_T0,
    free_energy_T0,
    free_energy_plate_plate,
)
from .asymptotics import relaxation_integral_1, relaxation_integral_2

__all__ = [
    "delta_T",
    "delta_T_detailed",
    "delta_c",
    "delta_c_detailed",
    "DeltaTable",
    "make_table",
    "TABLE_SEPARATIONS_UM",
    "gamma_sweep",
    "figure_data",
    "FIGURE_NAMES",
    "CSV_HEADER",
    "write_csv",
    "write_json",
    "meta_dict",
]

#: Row separations (micrometers) of the reference tables.
TABLE_SEPARATIONS_UM = (0.1, 0.3, 0.5, 0.7, 1.0, 3.0, 5.0, 7.0, 10.0)

_UM = 1e-6


def _ideal_plate_t0(a):
    return -math.pi ** 2 * HBAR_C / (240.0 * a ** 4)


def _ideal_energy_t0(a):
    return -math.pi ** 2 * HBAR_C / (720.0 * a ** 3)


def _thermal_value(model, prescription, geometry, T, quad, allow_raw_drude):
    """(value, est_rel) of the T > 0 quantity whose T = 0 ratio is taken."""
    if isinstance(geometry, PlatePlate):
        res = force_plate_plate(model, prescription, geometry.a, T,
                                quad=quad, allow_raw_drude=allow_raw_drude)
    else:
        res = free_energy_plate_plate(model, prescription, geometry.a, T,
                                      quad=quad,
                                      allow_raw_drude=allow_raw_drude)
    return res.value, res.est_rel_error


def _t0_value(model, geometry, quad):
    """(value, est_rel) of the prescription-free T = 0 denominator."""
    a = geometry.a
    if isinstance(model, IdealMetal):
        if isinstance(geometry, PlatePlate):
            return _ideal_plate_t0(a), 0.0
        return _ideal_energy_t0(a), 0.0
    if isinstance(geometry, PlatePlate):
        res = force_T0(model, PlatePlate(a), quad=quad)
    else:
        res = free_energy_T0(model, a, quad=quad)
    return res.value, res.est_rel_error


def _as_geometry(geometry):
    if isinstance(geometry, (PlatePlate, SpherePlate)):
        return geometry
    raise TypeError(f"not a geometry: {geometry!r}")


def delta_T_detailed(model, prescription, geometry, T=300.0, *, quad=None,
                     allow_raw_drude=False, _t0=None):
    """Thermal correction with an absolute error estimate.

    Returns
    -------
    tuple of float
        ``(delta_T, est_abs_error)``.
    """
    geometry = _as_geometry(geometry)
    num, est_n = _thermal_value(model, prescription, geometry, T, quad,
                                allow_raw_drude)
    if _t0 is None:
        den, est_d = _t0_value(model, geometry, quad)
    else:
        den, est_d = _t0
    ratio = num / den
    return ratio - 1.0, abs(ratio) * (est_n + est_d)


def delta_T(model, prescription, geometry, T=300.0, *, quad=None,
            allow_raw_drude=False):
    """Thermal correction ``F(a, T) / F(a, 0) - 1``.

    Parameters
    ----------
    model : material model
    prescription : Prescription or str
        Zero-frequency rule for the ``T > 0`` numerator; the ``T = 0``
        denominator involves no prescription.
    geometry : PlatePlate or SpherePlate
        Selects the plate pressure or the sphere-plate force (the
        latter evaluated as a free-energy ratio; ``R`` cancels).
    T : float
        Temperature in kelvin.

    Returns
    -------
    float
    """
    return delta_T_detailed(model, prescription, geometry, T, quad=quad,
                            allow_raw_drude=allow_raw_drude)[0]


def delta_c_detailed(model, prescription, geometry, T=300.0, *, quad=None,
                     allow_raw_drude=False):
    """Conductivity correction with an absolute error estimate."""
    geometry = _as_geometry(geometry)
    if T == 0.0:
        num, est_n = _t0_value(model, geometry, quad)
        den, est_d = _t0_value(IdealMetal(), geometry, quad)
    else:
        num, est_n = _thermal_value(model, prescription, geometry, T, quad,
                                    allow_raw_drude)
        den, est_d = _thermal_value(IdealMetal(), Prescription.RAW, geometry,
                                    T, quad, False)
    ratio = num / den
    return 1.0 - ratio, abs(ratio) * (est_n + est_d)


def delta_c(model, prescription, geometry, T=300.0, *, quad=None,
            allow_raw_drude=False):
    """Conductivity correction ``1 - F_model(a, T) / F_ideal(a, T)``.

    The ideal-metal reference uses the literal zero-frequency values
    (for an ideal metal all admissible prescriptions coincide).  At
    ``T = 0`` both entries are prescription-free.
    """
    return delta_c_detailed(model, prescription, geometry, T, quad=quad,
                            allow_raw_drude=allow_raw_drude)[0]


# ----------------------------------------------------------------------
# Reference tables
# ----------------------------------------------------------------------

#: (label, model factory, prescription) for the six table columns.
_TABLE_COLUMNS = (
    ("drude-msdm", lambda: preset("Al"), Prescription.MODIFIED_SDM),
    ("plasma-msdm", lambda: preset("Al-plasma"), Prescription.MODIFIED_SDM),
    ("ideal", lambda: IdealMetal(), Prescription.RAW),
    ("drude-zt", lambda: preset("Al"), Prescription.ZERO_TRANSVERSE),
    ("drude-ur", lambda: preset("Al"), Prescription.UNIT_REFLECTION),
    ("plasma-ur", lambda: preset("Al-plasma"), Prescription.UNIT_REFLECTION),
)


@dataclass(frozen=True)
class DeltaTable:
    """Thermal-correction table over separation and prescription."""

    kind: str  # "plate" or "sphere"
    temperature: float
    a_um: tuple
    columns: tuple
    values: np.ndarray  # shape (len(a_um), len(columns))
    est: np.ndarray

    def to_text(self):
        """Fixed-width text rendering, three significant digits."""
        title = ("thermal correction delta_T, "
                 + ("plate-plate pressure" if self.kind == "plate"
                    else "sphere-plate force")
                 + f", T = {self.temperature:g} K")
        header = f"{'a (um)':>8}" + "".join(
            f"{label:>13}" for label in self.columns)
        lines = [title, header]
        for i, a in enumerate(self.a_um):
            cells = "".join(f"{self.values[i, j]:>13.3g}"
                            for j in range(len(self.columns)))
            lines.append(f"{a:>8g}" + cells)
        return "\n".join(lines) + "\n"

    def rows(self):
        """Flat records for CSV/JSON output."""
        quantity = f"delta_T_{self.kind}"
        out = []
        for i, a in enumerate(self.a_um):
            for j, label in enumerate(self.columns):
                _label, factory, prescription = _TABLE_COLUMNS[j]
                out.append({
                    "a_um": a,
                    "model": material_label(factory()),
                    "prescription": str(prescription),
                    "quantity": quantity,
                    "value": float(self.values[i, j]),
                    "est_rel_error": float(
                        self.est[i, j] / max(abs(self.values[i, j]), 1e-300)),
                })
        return out


def make_table(which, *, temperature=300.0, quad=None,
               separations_um=TABLE_SEPARATIONS_UM):
    """Build a thermal-correction reference table.

    Parameters
    ----------
    which : int or str
        1 or "plate" for the plate-pressure table, 2 or "sphere" for
        the sphere-plate table.
    temperature : float
        Temperature of the numerators, kelvin.
    quad : QuadratureSpec, optional
    separations_um : sequence of float
        Row separations in micrometers.

    Returns
    -------
    DeltaTable
    """
    kind = {1: "plate", 2: "sphere", "plate": "plate",
            "sphere": "sphere"}.get(which)
    if kind is None:
        raise ValueError(f"table selector must be 1/2/plate/sphere, "
                         f"got {which!r}")
    n_rows = len(separations_um)
    values = np.empty((n_rows, len(_TABLE_COLUMNS)))
    est = np.empty_like(values)
    for i, a_um in enumerate(separations_um):
        geometry = _geometry_for(kind, a_um * _UM)
        t0_cache = {}
        for j, (_label, factory, prescription) in enumerate(_TABLE_COLUMNS):
            model = factory()
            key = material_label(model)
            if key not in t0_cache:
                t0_cache[key] = _t0_value(model, geometry, quad)
            values[i, j], est[i, j] = delta_T_detailed(
                model, prescription, geometry, temperature, quad=quad,
                _t0=t0_cache[key])
    labels = tuple(col[0] for col in _TABLE_COLUMNS)
    return DeltaTable(kind=kind, temperature=temperature,
                      a_um=tuple(separations_um), columns=labels,
                      values=values, est=est)


# ----------------------------------------------------------------------
# Sweeps and figure data
# ----------------------------------------------------------------------

def gamma_sweep(a, T, gammas, *, omega_p=None, quad=None):
    """``delta_T`` of a dissipative metal versus relaxation frequency.

    Parameters
    ----------
    a : float
        Gap width in meters.
    T : float
        Temperature in kelvin.
    gammas : sequence of float
        Relaxation frequencies in rad/s (may include 0).
    omega_p : float, optional
        Plasma frequency in rad/s; defaults to the aluminum preset's.

    Returns
    -------
    dict
        ``{"gamma_rad_s": list, "delta_T": list, "plasma_reference":
        float}`` -- the reference is the dissipationless limit computed
        once.
    """
    if omega_p is None:
        omega_p = preset("Al-plasma").omega_p
    geometry = PlatePlate(a)
    plasma_ref = delta_T(PlasmaMetal(omega_p), Prescription.MODIFIED_SDM,
                         geometry, T, quad=quad)
    out = []
    for gamma in gammas:
        # The T = 0 denominator depends on gamma, so each point is a
        # full ratio; the dissipationless limit stands in for gamma = 0.
        model = (PlasmaMetal(omega_p) if gamma == 0.0
                 else DrudeMetal(omega_p, gamma))
        out.append(delta_T(model, Prescription.MODIFIED_SDM, geometry, T,
                           quad=quad))
    return {"gamma_rad_s": [float(g) for g in gammas],
            "delta_T": out, "plasma_reference": plasma_ref}


FIGURE_NAMES = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7",
                "fig8")


def _geometry_for(kind, a):
    # The sphere-side corrections are free-energy ratios in which the
    # curvature radius cancels; a 1 m radius marks the geometry without
    # ever tripping the a << R validity warning.
    return PlatePlate(a) if kind == "plate" else SpherePlate(a, 1.0)


def _delta_T_curves(kind, a_grid_um, T, quad):
    al = preset("Al")
    mica = preset("mica")
    curves = {"drude-msdm": [], "drude-zt": [], "dielectric": []}
    for a_um in a_grid_um:
        geometry = _geometry_for(kind, a_um * _UM)
        curves["drude-msdm"].append(delta_T(
            al, Prescription.MODIFIED_SDM, geometry, T, quad=quad))
        curves["drude-zt"].append(delta_T(
            al, Prescription.ZERO_TRANSVERSE, geometry, T, quad=quad))
        curves["dielectric"].append(delta_T(
            mica, Prescription.RAW, geometry, T, quad=quad))
    return curves


def _delta_c_curves(kind, model, a_grid_um, T, quad):
    curves = {"msdm-300K": [], "ur-300K": [], "T0": []}
    for a_um in a_grid_um:
        geometry = _geometry_for(kind, a_um * _UM)
        curves["msdm-300K"].append(delta_c(
            model, Prescription.MODIFIED_SDM, geometry, T, quad=quad))
        curves["ur-300K"].append(delta_c(
            model, Prescription.UNIT_REFLECTION, geometry, T, quad=quad))
        curves["T0"].append(delta_c(
            model, Prescription.RAW, geometry, 0.0, quad=quad))
    return curves


def figure_data(name, *, temperature=300.0, quad=None, n_points=21):
    """Curve data behind the standard diagnostic figures.

    * fig1 / fig5 -- ``delta_T`` versus separation (plate / sphere) for
      the dissipative metal (modified and zero-transverse
      prescriptions) and a constant dielectric,
    * fig2 / fig6 -- ``delta_c`` versus separation for the dissipative
      metal (300 K modified, 300 K unit-reflection, and T = 0),
    * fig3 / fig7 -- the same for the dissipationless metal,
    * fig4        -- ``delta_T`` versus relaxation frequency at a = 2 um,
    * fig8        -- the relaxation integrals I_1, I_2 versus their
      argument.

    Returns
    -------
    dict
        ``{"name", "xlabel", "ylabel", "x", "curves": {label: [y...]}}``.
    """
    if name not in FIGURE_NAMES:
        raise ValueError(f"unknown figure {name!r}; one of {FIGURE_NAMES}")
    T = temperature
    if name in ("fig1", "fig5"):
        kind = "plate" if name == "fig1" else "sphere"
        a_grid = np.geomspace(0.1, 10.0, n_points)
        return {"name": name, "xlabel": "a (um)", "ylabel": "delta_T",
                "x": a_grid.tolist(),
                "curves": _delta_T_curves(kind, a_grid, T, quad)}
    if name in ("fig2", "fig3", "fig6", "fig7"):
        kind = "plate" if name in ("fig2", "fig3") else "sphere"
        model = preset("Al") if name in ("fig2", "fig6") \
            else preset("Al-plasma")
        a_grid = np.geomspace(0.1, 10.0, n_points)
        return {"name": name, "xlabel": "a (um)", "ylabel": "delta_c",
                "x": a_grid.tolist(),
                "curves": _delta_c_curves(kind, model, a_grid, T, quad)}
    if name == "fig4":
        gamma_al = preset("Al").gamma
        gammas = gamma_al * np.geomspace(1e-3, 10.0, n_points)
        sweep = gamma_sweep(2.0 * _UM, T, gammas, quad=quad)
        return {"name": name, "xlabel": "gamma (rad/s)",
                "ylabel": "delta_T", "x": sweep["gamma_rad_s"],
                "curves": {"drude-msdm": sweep["delta_T"],
                           "plasma-reference":
                               [sweep["plasma_reference"]] * len(gammas)}}
    # fig8
    g_grid = np.linspace(0.0, 10.0, n_points)
    return {"name": name, "xlabel": "gamma_tilde", "ylabel": "integral",
            "x": g_grid.tolist(),
            "curves": {
                "I1": [relaxation_integral_1(g, quad=quad) for g in g_grid],
                "I2": [relaxation_integral_2(g, quad=quad) for g in g_grid],
            }}


# ----------------------------------------------------------------------
# Serialization
# ----------------------------------------------------------------------

CSV_HEADER = "a_um,model,prescription,quantity,value,est_rel_error"


def _git_describe():
    try:
        here = Path(__file__).resolve().parent
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            cwd=here, capture_output=True, text=True, timeout=10)
        if out.returncode == 0:
            return out.stdout.strip()
    except (OSError, subprocess.SubprocessError):
        pass
    return None


def meta_dict(rel_tol=None):
    """Provenance block mirrored alongside tabular output."""
    return {
        "package": "casimir",
        "version": __version__,
        "git": _git_describe(),
        "constants": {"hbar": hbar, "c": c, "k_B": k_B, "zeta3": ZETA3},
        "rel_tol": rel_tol,
    }


def _fmt_cell(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, float):
        return f"{value:.12e}"
    return str(value)


def write_csv(stream, rows):
    """Write records to ``stream`` in the fixed column order.

    Floats are rendered as ``%.12e`` so repeated runs on identical
    inputs produce byte-identical files.
    """
    stream.write(CSV_HEADER + "\n")
    keys = CSV_HEADER.split(",")
    for row in rows:
        stream.write(",".join(_fmt_cell(row.get(k)) for k in keys) + "\n")


def csv_text(rows):
    """The CSV rendering as one string."""
    buf = io.StringIO()
    write_csv(buf, rows)
    return buf.getvalue()


def write_json(stream, rows, meta):
    """JSON rendering: ``{"meta": ..., "rows": ...}``, sorted keys."""
    json.dump({"meta": meta, "rows": rows}, stream, indent=2,
              sort_keys=True)
    stream.write("\n")
