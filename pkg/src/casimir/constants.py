"""Physical constants and unit helpers.

All quantities are SI (2019 redefinition, CODATA 2018 exact values where
applicable).  The dimensionless variables used throughout the package are

    xi_t = 2 a xi / c          (imaginary frequency, units of c/2a)
    y    = 2 a q               (transverse quantity in the Lifshitz formula)
    tau  = 4 pi a k_B T / (hbar c)   (dimensionless Matsubara spacing)

where ``a`` is the gap width.  The effective temperature ``T_eff`` of a gap
is defined by ``k_B T_eff = hbar c / (2 a)``, so that ``tau = 2 pi T/T_eff``.
"""

from __future__ import annotations

import math

from scipy.constants import c, hbar, k as k_B, e as elementary_charge

__all__ = [
    "c",
    "hbar",
    "k_B",
    "HBAR_C",
    "ZETA3",
    "EV_TO_RAD_S",
    "MICROMETER",
    "NANOMETER",
    "effective_temperature",
    "matsubara_spacing",
    "ev_to_rad_s",
]

#: hbar * c in J m.
HBAR_C = hbar * c

#: Riemann zeta(3) (Apery's constant).
ZETA3 = 1.2020569031595942854

#: Angular frequency (rad/s) of a 1 eV photon: e / hbar.
EV_TO_RAD_S = elementary_charge / hbar

MICROMETER = 1e-6
NANOMETER = 1e-9


def effective_temperature(a):
    """Effective temperature T_eff of a gap of width ``a``.

    Defined by ``k_B T_eff = hbar c / (2 a)``; for ``a`` = 1 um this is
    about 1145 K, and room temperature satisfies T << T_eff for
    submicrometer gaps.

    Parameters
    ----------
    a : float
        Gap width in meters (> 0).

    Returns
    -------
    float
        T_eff in kelvin.
    """
    if not (a > 0.0) or not math.isfinite(a):
        raise ValueError(f"gap width must be positive and finite, got {a!r}")
    return HBAR_C / (2.0 * a * k_B)


def matsubara_spacing(a, temperature):
    """Dimensionless spacing tau between Matsubara frequencies.

    The l-th Matsubara frequency is ``xi_l = 2 pi l k_B T / hbar``; in the
    dimensionless variable ``xi_t = 2 a xi / c`` this is ``xi_t_l = tau l``
    with ``tau = 4 pi a k_B T / (hbar c) = 2 pi T / T_eff``.

    Parameters
    ----------
    a : float
        Gap width in meters (> 0).
    temperature : float
        Temperature in kelvin (>= 0).

    Returns
    -------
    float
        tau (0 for ``temperature`` = 0).
    """
    if not (a > 0.0) or not math.isfinite(a):
        raise ValueError(f"gap width must be positive and finite, got {a!r}")
    if temperature < 0.0 or not math.isfinite(temperature):
        raise ValueError(f"temperature must be >= 0 and finite, got {temperature!r}")
    return 4.0 * math.pi * a * k_B * temperature / HBAR_C


def ev_to_rad_s(energy_ev):
    """Convert a photon energy in eV to an angular frequency in rad/s."""
    return energy_ev * EV_TO_RAD_S
