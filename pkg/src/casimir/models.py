"""Material models: permittivity along the imaginary frequency axis.

Supported models, with ``xi`` the imaginary angular frequency (rad/s):

* ideal metal         -- perfect reflector (handled symbolically, never
                         through an infinite permittivity in arithmetic)
* plasma metal        -- ``eps(i xi) = 1 + omega_p^2 / xi^2``
* Drude metal         -- ``eps(i xi) = 1 + omega_p^2 / (xi (xi + gamma))``
* dielectric          -- ``eps(i xi) = 1 + (eps0 - 1)/(1 + xi^2/omega_e^2)``
                         (or the constant ``eps0`` when no absorption
                         frequency is given)

All force computations work in the dimensionless frequency
``xi_t = 2 a xi / c`` for gap width ``a``; model parameters then enter as
``omega_p_tilde = 2 a omega_p / c`` and ``gamma_tilde = 2 a gamma / c``,
and the metal's penetration depth is ``delta0 = c / omega_p`` (separation
independent).

The built-in aluminum preset uses omega_p = 1.9e16 rad/s and
gamma = 9.6e13 rad/s (approximately 12.5 eV and 0.063 eV).

Examples
--------
>>> al = preset("Al")
>>> eval_epsilon(al, 1.0, 1e-6)  # doctest: +ELLIPSIS
9797.8...
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import c as _C, EV_TO_RAD_S
from ._kernels import KIND_IDEAL, KIND_PLASMA, KIND_DRUDE, KIND_DIELECTRIC

__all__ = [
    "IdealMetal",
    "PlasmaMetal",
    "DrudeMetal",
    "Dielectric",
    "DimensionlessParams",
    "kind_code",
    "kernel_params",
    "dimensionless",
    "skin_depth",
    "eval_epsilon",
    "eps_minus_one_xi2",
    "preset",
    "PRESET_NAMES",
    "material_from_mapping",
    "material_from_toml",
    "material_label",
]


def _require_positive(name, value, allow_zero=False):
    ok = (value >= 0.0) if allow_zero else (value > 0.0)
    if not ok or not math.isfinite(value):
        kind = ">= 0" if allow_zero else "> 0"
        raise ValueError(f"{name} must be finite and {kind}, got {value!r}")


@dataclass(frozen=True)
class IdealMetal:
    """Perfectly reflecting metal (both reflection coefficients unity)."""


@dataclass(frozen=True)
class PlasmaMetal:
    """Dissipationless free-electron metal.

    Parameters
    ----------
    omega_p : float
        Plasma frequency in rad/s.
    """

    omega_p: float

    def __post_init__(self):
        _require_positive("omega_p", self.omega_p)


@dataclass(frozen=True)
class DrudeMetal:
    """Free-electron metal with relaxation.

    Parameters
    ----------
    omega_p : float
        Plasma frequency in rad/s.
    gamma : float
        Relaxation frequency in rad/s; ``gamma = 0`` evaluates
        identically to ``PlasmaMetal(omega_p)`` at every xi > 0.
    """

    omega_p: float
    gamma: float

    def __post_init__(self):
        _require_positive("omega_p", self.omega_p)
        _require_positive("gamma", self.gamma, allow_zero=True)


@dataclass(frozen=True)
class Dielectric:
    """Dielectric with static constant ``eps0``.

    Parameters
    ----------
    eps0 : float
        Static permittivity, > 1.
    omega_e : float or None
        Main electronic absorption frequency in rad/s for the
        frequency-dependent form; ``None`` keeps the permittivity
        constant at ``eps0`` (the default used for mica-like sheets).
    """

    eps0: float
    omega_e: float | None = None

    def __post_init__(self):
        if not (self.eps0 > 1.0) or not math.isfinite(self.eps0):
            raise ValueError(f"eps0 must be finite and > 1, got {self.eps0!r}")
        if self.omega_e is not None:
            _require_positive("omega_e", self.omega_e)


@dataclass(frozen=True)
class DimensionlessParams:
    """Metal parameters scaled to a specific gap width.

    Attributes
    ----------
    omega_p_tilde : float
        ``2 a omega_p / c`` (infinite for the ideal metal).
    gamma_tilde : float
        ``2 a gamma / c``.
    delta0 : float
        Penetration depth ``c / omega_p`` in meters (0 for ideal metal).
    """

    omega_p_tilde: float
    gamma_tilde: float
    delta0: float


def _check_gap(a):
    if not (a > 0.0) or not math.isfinite(a):
        raise ValueError(f"gap width must be positive and finite, got {a!r}")


def kind_code(model):
    """Integer kernel code of the model variant."""
    if isinstance(model, IdealMetal):
        return KIND_IDEAL
    if isinstance(model, PlasmaMetal):
        return KIND_PLASMA
    if isinstance(model, DrudeMetal):
        return KIND_DRUDE
    if isinstance(model, Dielectric):
        return KIND_DIELECTRIC
    raise TypeError(f"not a material model: {model!r}")


def kernel_params(model, a):
    """Numeric parameter tuple consumed by the integrand kernels.

    Returns
    -------
    tuple
        ``(kind, omega_p_tilde, gamma_tilde, eps0, omega_e_tilde)`` with
        unused slots zeroed (``omega_e_tilde`` is ``inf`` for a constant
        dielectric).
    """
    _check_gap(a)
    scale = 2.0 * a / _C
    if isinstance(model, IdealMetal):
        return (KIND_IDEAL, 0.0, 0.0, 0.0, 0.0)
    if isinstance(model, PlasmaMetal):
        return (KIND_PLASMA, scale * model.omega_p, 0.0, 0.0, 0.0)
    if isinstance(model, DrudeMetal):
        return (KIND_DRUDE, scale * model.omega_p, scale * model.gamma,
                0.0, 0.0)
    if isinstance(model, Dielectric):
        we = math.inf if model.omega_e is None else scale * model.omega_e
        return (KIND_DIELECTRIC, 0.0, 0.0, model.eps0, we)
    raise TypeError(f"not a material model: {model!r}")


def dimensionless(model, a):
    """Dimensionless metal parameters for gap width ``a``.

    Parameters
    ----------
    model : IdealMetal, PlasmaMetal or DrudeMetal
    a : float
        Gap width in meters.

    Returns
    -------
    DimensionlessParams
    """
    _check_gap(a)
    scale = 2.0 * a / _C
    if isinstance(model, IdealMetal):
        return DimensionlessParams(math.inf, 0.0, 0.0)
    if isinstance(model, PlasmaMetal):
        return DimensionlessParams(scale * model.omega_p, 0.0,
                                   _C / model.omega_p)
    if isinstance(model, DrudeMetal):
        return DimensionlessParams(scale * model.omega_p,
                                   scale * model.gamma, _C / model.omega_p)
    raise TypeError(f"dimensionless metal parameters undefined for {model!r}")


def skin_depth(model):
    """Penetration depth ``delta0 = c / omega_p`` in meters (0 if ideal)."""
    if isinstance(model, IdealMetal):
        return 0.0
    if isinstance(model, (PlasmaMetal, DrudeMetal)):
        return _C / model.omega_p
    raise TypeError(f"penetration depth undefined for {model!r}")


def eval_epsilon(model, xi_tilde, a):
    """Permittivity ``eps(i xi)`` at dimensionless frequency ``xi_tilde``.

    Parameters
    ----------
    model : material model
        For ``IdealMetal`` the distinguished marker ``math.inf`` is
        returned; downstream code must branch on the model, never push
        the marker through arithmetic.
    xi_tilde : float or ndarray
        ``2 a xi / c``; must be > 0 for metals (the zero-frequency point
        is owned by the prescription logic), >= 0 for dielectrics.
    a : float
        Gap width in meters.

    Returns
    -------
    float or ndarray
        Always >= 1.
    """
    _check_gap(a)
    xi = np.asarray(xi_tilde, dtype=np.float64)
    if np.any(xi < 0.0):
        raise ValueError("xi_tilde must be >= 0")
    if isinstance(model, IdealMetal):
        return math.inf
    if isinstance(model, (PlasmaMetal, DrudeMetal)):
        if np.any(xi == 0.0):
            raise ValueError(
                "xi_tilde = 0 under a metal model is owned by the "
                "zero-frequency prescription, not the permittivity")
        wp_t = 2.0 * a * model.omega_p / _C
        if isinstance(model, PlasmaMetal):
            out = 1.0 + (wp_t / xi) ** 2
        else:
            ga_t = 2.0 * a * model.gamma / _C
            out = 1.0 + wp_t * wp_t / (xi * (xi + ga_t))
    elif isinstance(model, Dielectric):
        if model.omega_e is None:
            out = np.full(xi.shape, model.eps0)
        else:
            we_t = 2.0 * a * model.omega_e / _C
            out = 1.0 + (model.eps0 - 1.0) / (1.0 + (xi / we_t) ** 2)
    else:
        raise TypeError(f"not a material model: {model!r}")
    return float(out) if out.ndim == 0 else out


def eps_minus_one_xi2(model, xi_tilde, a):
    """``(eps(i xi) - 1) * xi_tilde^2`` in overflow-free closed form.

    This combination (the squared-wavevector contrast entering the
    reflection coefficients) stays finite as ``xi_tilde -> 0`` for every
    model, unlike the permittivity itself.
    """
    _check_gap(a)
    xi = np.asarray(xi_tilde, dtype=np.float64)
    if np.any(xi < 0.0):
        raise ValueError("xi_tilde must be >= 0")
    scale = 2.0 * a / _C
    if isinstance(model, PlasmaMetal):
        wp_t = scale * model.omega_p
        out = np.full(xi.shape, wp_t * wp_t)
    elif isinstance(model, DrudeMetal):
        wp_t = scale * model.omega_p
        ga_t = scale * model.gamma
        out = wp_t * wp_t * xi / (xi + ga_t)
    elif isinstance(model, Dielectric):
        if model.omega_e is None:
            out = (model.eps0 - 1.0) * xi * xi
        else:
            we_t = scale * model.omega_e
            out = (model.eps0 - 1.0) * xi * xi / (1.0 + (xi / we_t) ** 2)
    elif isinstance(model, IdealMetal):
        raise TypeError("ideal metal has no finite permittivity contrast")
    else:
        raise TypeError(f"not a material model: {model!r}")
    return float(out) if out.ndim == 0 else out


# Aluminum parameters in rad/s (about 12.5 eV and 0.063 eV).
_AL_OMEGA_P = 1.9e16
_AL_GAMMA = 9.6e13

_PRESETS = {
    "al": lambda: DrudeMetal(_AL_OMEGA_P, _AL_GAMMA),
    "al-drude": lambda: DrudeMetal(_AL_OMEGA_P, _AL_GAMMA),
    "al-plasma": lambda: PlasmaMetal(_AL_OMEGA_P),
    "ideal": lambda: IdealMetal(),
    "mica": lambda: Dielectric(7.0),
}

PRESET_NAMES = ("Al", "Al-drude", "Al-plasma", "ideal", "mica")


def preset(name):
    """Look up a built-in material by name (case-insensitive).

    Available: ``Al`` (= ``Al-drude``), ``Al-plasma``, ``ideal``,
    ``mica`` (constant dielectric, eps0 = 7).
    """
    try:
        return _PRESETS[name.strip().lower()]()
    except KeyError:
        raise ValueError(
            f"unknown material preset {name!r}; "
            f"choose one of {', '.join(PRESET_NAMES)}") from None


def _frequency_from_mapping(mapping, base, required=True):
    rad_key, ev_key = f"{base}_rad_s", f"{base}_ev"
    if rad_key in mapping and ev_key in mapping:
        raise ValueError(f"give {rad_key} or {ev_key}, not both")
    if rad_key in mapping:
        return float(mapping[rad_key])
    if ev_key in mapping:
        return float(mapping[ev_key]) * EV_TO_RAD_S
    if required:
        raise ValueError(f"missing {rad_key} (or {ev_key})")
    return None


def material_from_mapping(mapping):
    """Build a material from a configuration mapping.

    Accepted keys: ``preset`` (overrides everything else), or ``kind``
    in {"ideal", "plasma", "drude", "dielectric"} with frequencies given
    as ``*_rad_s`` or ``*_ev`` (converted via 1 eV = e/hbar rad/s), and
    ``eps0``/``omega_e_rad_s`` for dielectrics (omit ``omega_e_rad_s``
    for a constant permittivity).
    """
    if "preset" in mapping:
        return preset(str(mapping["preset"]))
    kind = str(mapping.get("kind", "")).strip().lower()
    if kind == "ideal":
        return IdealMetal()
    if kind == "plasma":
        return PlasmaMetal(_frequency_from_mapping(mapping, "omega_p"))
    if kind == "drude":
        return DrudeMetal(_frequency_from_mapping(mapping, "omega_p"),
                          _frequency_from_mapping(mapping, "gamma"))
    if kind == "dielectric":
        if "eps0" not in mapping:
            raise ValueError("dielectric material needs eps0")
        omega_e = _frequency_from_mapping(mapping, "omega_e", required=False)
        return Dielectric(float(mapping["eps0"]), omega_e)
    raise ValueError(
        f"unknown material kind {kind!r}; expected ideal, plasma, drude "
        "or dielectric")


def material_from_toml(path):
    """Load the ``[material]`` table of a TOML file into a model."""
    try:
        import tomllib
    except ImportError:  # Python < 3.11
        import tomli as tomllib
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    if "material" not in data:
        raise ValueError(f"no [material] table in {path}")
    return material_from_mapping(data["material"])


def material_label(model):
    """Short human/CSV label for a model instance.

    Field separators are semicolons so the label can be embedded in a
    comma-separated record without quoting.
    """
    if isinstance(model, IdealMetal):
        return "ideal"
    if isinstance(model, PlasmaMetal):
        return f"plasma(omega_p={model.omega_p:.6g})"
    if isinstance(model, DrudeMetal):
        return f"drude(omega_p={model.omega_p:.6g};gamma={model.gamma:.6g})"
    if isinstance(model, Dielectric):
        if model.omega_e is None:
            return f"dielectric(eps0={model.eps0:.6g})"
        return (f"dielectric(eps0={model.eps0:.6g};"
                f"omega_e={model.omega_e:.6g})")
    raise TypeError(f"not a material model: {model!r}")
