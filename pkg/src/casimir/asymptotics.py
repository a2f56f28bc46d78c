"""Closed-form and series representations of the metal-plate forces.

These are independent of the numerical Matsubara machinery in
:mod:`casimir.lifshitz` (only the shared quadrature primitives are
reused) and serve as cross-checks and fast large-separation formulas.

Ideal metal (exact resummations, any ``T``; ``x_l = pi t l``,
``t = T_eff / T``, ``T_eff = hbar c / (2 a k_B)``):

* plates:  ``F = F0_pp(a) * [1 + 30 sum_l (1/x^4 - cosh x / (x sinh^3 x))]``
  with ``F0_pp = -pi^2 hbar c / (240 a^4)``,
* sphere:  ``F = F0_sp(a) * [1 + 45 sum_l (coth x / x^3 + 1/(x^2 sinh^2 x))
  - 1/t^4]`` with ``F0_sp = -pi^3 hbar c R / (360 a^3)``.

Plasma metal to first order in ``d = delta0 / a`` (``delta0 = c /
omega_p`` the penetration depth): the same brackets acquire
``-16 d / 3 - 60 d sum_l S_pp(x_l)`` (plates) and ``-4 d + 180 d sum_l
S_sp(x_l)`` (sphere) with the exponentially-plus-``1/x^3`` decaying
summands implemented below.  Low-temperature (``t >> 1``) truncations of
those series and the high-temperature (``t << 1``) leading forms, where
dissipation enters through the integrals

* ``I_1(g) = int_0^inf y^2 sqrt(y) / (sqrt(y+g) + sqrt(y)) *
  e^y/(e^y-1)^2 dy``  (``I_1(0) = pi^2/6``),
* ``I_2(g) = int_0^inf y sqrt(y) / (sqrt(y+g) + sqrt(y)) /
  (e^y-1) dy``        (``I_2(0) = pi^2/12``),

are provided separately.  All hyperbolic combinations are evaluated via
``u = e^{-2x}`` to stay overflow-free at arbitrarily large ``x``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .constants import HBAR_C, ZETA3, c as _c, k_B, effective_temperature
from .quadrature import DEFAULT_SPEC, integrate_semi_infinite, sum_until_converged

__all__ = [
    "AsymptoticResult",
    "ideal_force",
    "high_temperature_ideal",
    "plasma_series_pressure",
    "plasma_series_sphere_force",
    "low_temperature_pressure",
    "low_temperature_sphere_force",
    "high_temperature_pressure",
    "high_temperature_sphere_force",
    "relaxation_integral_1",
    "relaxation_integral_2",
]


@dataclass(frozen=True)
class AsymptoticResult:
    """Value of an asymptotic or series formula.

    Attributes
    ----------
    value : float
        Force (N or N/m^2) in the same sign convention as
        :mod:`casimir.lifshitz` (negative = attraction).
    regime : str
        One of ``"zero-T"``, ``"series"``, ``"low-T"``, ``"high-T"``.
    validity_hint : str
        Human-readable reminder of the formula's domain.
    """

    value: float
    regime: str
    validity_hint: str


# ----------------------------------------------------------------------
# Overflow-free hyperbolic building blocks (u = e^{-2x}, om = 1 - u):
#   coth x                    = (1 + u) / om
#   1 / sinh^2 x              = 4 u / om^2
#   cosh x / sinh^3 x         = 4 u (1 + u) / om^3
#   (2 cosh^2 x + 1)/sinh^4 x = 8 u (1 + 4 u + u^2) / om^4
# ----------------------------------------------------------------------

def _coth(x):
    u = math.exp(-2.0 * x)
    return (1.0 + u) / -math.expm1(-2.0 * x)


def _inv_sinh2(x):
    u = math.exp(-2.0 * x)
    om = -math.expm1(-2.0 * x)
    return 4.0 * u / (om * om)


def _cosh_over_sinh3(x):
    u = math.exp(-2.0 * x)
    om = -math.expm1(-2.0 * x)
    return 4.0 * u * (1.0 + u) / (om * om * om)


def _two_cosh2_plus_1_over_sinh4(x):
    u = math.exp(-2.0 * x)
    om = -math.expm1(-2.0 * x)
    return 8.0 * u * (1.0 + 4.0 * u + u * u) / om ** 4


def _check_geometry_scalars(a, T, R=None):
    if not (a > 0.0) or not math.isfinite(a):
        raise ValueError(f"gap width a must be positive, got {a!r}")
    if T < 0.0 or not math.isfinite(T):
        raise ValueError(f"temperature must be >= 0, got {T!r}")
    if R is not None and (not (R > 0.0) or not math.isfinite(R)):
        raise ValueError(f"curvature radius R must be positive, got {R!r}")


def _f0_plate(a):
    return -math.pi ** 2 * HBAR_C / (240.0 * a ** 4)


def _f0_sphere(a, R):
    return -math.pi ** 3 * HBAR_C * R / (360.0 * a ** 3)


def _ideal_plate_bracket(t):
    pit = math.pi * t

    def term(l):
        x = pit * l
        return 30.0 * (1.0 / x ** 4 - _cosh_over_sinh3(x) / x)

    return 1.0 + sum_until_converged(term).value


def _ideal_sphere_bracket(t):
    pit = math.pi * t

    def term(l):
        x = pit * l
        return 45.0 * (_coth(x) / x ** 3 + _inv_sinh2(x) / x ** 2)

    return 1.0 + sum_until_converged(term).value - 1.0 / t ** 4


def ideal_force(geometry, T):
    """Ideal-metal force for either geometry, exact at every ``T``.

    Parameters
    ----------
    geometry : PlatePlate or SpherePlate
        From :mod:`casimir.lifshitz`.
    T : float
        Temperature in kelvin; ``T = 0`` returns the closed forms
        ``-pi^2 hbar c / (240 a^4)`` and ``-pi^3 hbar c R / (360 a^3)``.

    Returns
    -------
    AsymptoticResult
    """
    # Local import sidesteps a cycle (lifshitz never imports this module
    # at runtime, but keep the dependency one-directional for tooling).
    from .lifshitz import PlatePlate, SpherePlate

    if isinstance(geometry, PlatePlate):
        _check_geometry_scalars(geometry.a, T)
        f0 = _f0_plate(geometry.a)
        if T == 0.0:
            return AsymptoticResult(f0, "zero-T", "exact closed form")
        t = effective_temperature(geometry.a) / T
        return AsymptoticResult(f0 * _ideal_plate_bracket(t), "series",
                                "exact resummation, any temperature")
    if isinstance(geometry, SpherePlate):
        _check_geometry_scalars(geometry.a, T, geometry.R)
        f0 = _f0_sphere(geometry.a, geometry.R)
        if T == 0.0:
            return AsymptoticResult(f0, "zero-T", "exact closed form")
        t = effective_temperature(geometry.a) / T
        return AsymptoticResult(f0 * _ideal_sphere_bracket(t), "series",
                                "exact resummation, any temperature")
    raise TypeError(f"not a geometry: {geometry!r}")


def high_temperature_ideal(geometry, T):
    """Leading high-temperature ideal-metal force.

    ``-k_B T zeta(3) / (4 pi a^3)`` between plates;
    ``-k_B T zeta(3) R / (4 a^2)`` for the sphere.
    """
    from .lifshitz import PlatePlate, SpherePlate

    if isinstance(geometry, PlatePlate):
        _check_geometry_scalars(geometry.a, T)
        value = -k_B * T * ZETA3 / (4.0 * math.pi * geometry.a ** 3)
    elif isinstance(geometry, SpherePlate):
        _check_geometry_scalars(geometry.a, T, geometry.R)
        value = -k_B * T * ZETA3 * geometry.R / (4.0 * geometry.a ** 2)
    else:
        raise TypeError(f"not a geometry: {geometry!r}")
    return AsymptoticResult(value, "high-T",
                            "leading term for T >> T_eff (t << 1)")


def _penetration_ratio(a, omega_p):
    if not (omega_p > 0.0) or not math.isfinite(omega_p):
        raise ValueError(f"omega_p must be positive, got {omega_p!r}")
    d = (_c / omega_p) / a
    if d > 0.1:
        warnings.warn(
            f"penetration depth / gap = {d:.3g} > 0.1: first-order "
            "skin-depth expansion is inaccurate here", UserWarning,
            stacklevel=3)
    return d


def _plasma_plate_d_sum(t):
    pit = math.pi * t

    def term(l):
        x = pit * l
        return (_two_cosh2_plus_1_over_sinh4(x)
                - 2.0 * _cosh_over_sinh3(x) / x
                - _inv_sinh2(x) / (2.0 * x * x)
                - _coth(x) / (2.0 * x ** 3))

    return sum_until_converged(term).value


def _plasma_sphere_d_sum(t):
    pit = math.pi * t

    def term(l):
        x = pit * l
        return (_coth(x) / (2.0 * x ** 3)
                - 2.0 / x ** 4
                + _coth(x) * _inv_sinh2(x) / x
                + _inv_sinh2(x) / (x * x))

    return sum_until_converged(term).value


def plasma_series_pressure(a, T, omega_p):
    """Plate pressure for a plasma metal, first order in ``delta0 / a``.

    Exact-in-temperature resummation of the ideal bracket plus the
    skin-depth correction series; reduces to
    ``F0 * (1 - 16 d / 3)`` at ``T = 0``.
    """
    _check_geometry_scalars(a, T)
    d = _penetration_ratio(a, omega_p)
    f0 = _f0_plate(a)
    if T == 0.0:
        return AsymptoticResult(f0 * (1.0 - 16.0 * d / 3.0), "zero-T",
                                "first order in delta0/a")
    t = effective_temperature(a) / T
    bracket = (_ideal_plate_bracket(t) - 16.0 * d / 3.0
               - 60.0 * d * _plasma_plate_d_sum(t))
    return AsymptoticResult(f0 * bracket, "series",
                            "first order in delta0/a, any temperature")


def plasma_series_sphere_force(a, R, T, omega_p):
    """Sphere-plate force for a plasma metal, first order in ``delta0/a``."""
    _check_geometry_scalars(a, T, R)
    d = _penetration_ratio(a, omega_p)
    f0 = _f0_sphere(a, R)
    if T == 0.0:
        return AsymptoticResult(f0 * (1.0 - 4.0 * d), "zero-T",
                                "first order in delta0/a")
    t = effective_temperature(a) / T
    bracket = (_ideal_sphere_bracket(t) - 4.0 * d
               + 180.0 * d * _plasma_sphere_d_sum(t))
    return AsymptoticResult(f0 * bracket, "series",
                            "first order in delta0/a, any temperature")


def _check_low_t(t):
    if t < 5.0:
        warnings.warn(
            f"t = T_eff/T = {t:.3g} < 5: low-temperature truncation "
            "degrades here, prefer the full series", UserWarning,
            stacklevel=3)


def low_temperature_pressure(a, T, omega_p):
    """Leading low-temperature plate pressure for a plasma metal.

    ``F0 * [1 + (1/3) xT^4 - (16/3) d (1 - (45 zeta3 / 8 pi^3) xT^3)]``
    with ``xT = T / T_eff``.
    """
    _check_geometry_scalars(a, T)
    d = _penetration_ratio(a, omega_p)
    f0 = _f0_plate(a)
    if T == 0.0:
        return AsymptoticResult(f0 * (1.0 - 16.0 * d / 3.0), "zero-T",
                                "first order in delta0/a")
    x_t = T / effective_temperature(a)
    _check_low_t(1.0 / x_t)
    bracket = (1.0 + x_t ** 4 / 3.0
               - (16.0 / 3.0) * d
               * (1.0 - 45.0 * ZETA3 / (8.0 * math.pi ** 3) * x_t ** 3))
    return AsymptoticResult(f0 * bracket, "low-T",
                            "leading orders for T << T_eff")


def low_temperature_sphere_force(a, R, T, omega_p):
    """Leading low-temperature sphere-plate force for a plasma metal.

    ``F0 * [1 + (45 zeta3 / pi^3) xT^3 - xT^4
    - 4 d (1 - (45 zeta3 / 2 pi^3) xT^3 + xT^4)]``.
    """
    _check_geometry_scalars(a, T, R)
    d = _penetration_ratio(a, omega_p)
    f0 = _f0_sphere(a, R)
    if T == 0.0:
        return AsymptoticResult(f0 * (1.0 - 4.0 * d), "zero-T",
                                "first order in delta0/a")
    x_t = T / effective_temperature(a)
    _check_low_t(1.0 / x_t)
    z = 45.0 * ZETA3 / math.pi ** 3
    bracket = (1.0 + z * x_t ** 3 - x_t ** 4
               - 4.0 * d * (1.0 - 0.5 * z * x_t ** 3 + x_t ** 4))
    return AsymptoticResult(f0 * bracket, "low-T",
                            "leading orders for T << T_eff")


def relaxation_integral_1(gamma_tilde, *, quad=None):
    """``I_1(g)``: relaxation correction integral of the plate pressure.

    ``int_0^inf y^2 sqrt(y) / (sqrt(y + g) + sqrt(y)) * e^y/(e^y-1)^2
    dy``; equals ``pi^2 / 6`` at ``g = 0`` and decays monotonically.
    """
    if gamma_tilde < 0.0 or not math.isfinite(gamma_tilde):
        raise ValueError(f"gamma_tilde must be >= 0, got {gamma_tilde!r}")
    quad = DEFAULT_SPEC if quad is None else quad

    def f(y):
        emy = np.exp(-y)
        omy = -np.expm1(-y)
        root = np.sqrt(y)
        return (y * y * root / (np.sqrt(y + gamma_tilde) + root)
                * emy / (omy * omy))

    return float(integrate_semi_infinite(f, 0.0, quad, sqrt_lower=True).value)


def relaxation_integral_2(gamma_tilde, *, quad=None):
    """``I_2(g)``: relaxation correction integral of the sphere force.

    ``int_0^inf y sqrt(y) / (sqrt(y + g) + sqrt(y)) / (e^y - 1) dy``;
    equals ``pi^2 / 12`` at ``g = 0`` and decays monotonically.
    """
    if gamma_tilde < 0.0 or not math.isfinite(gamma_tilde):
        raise ValueError(f"gamma_tilde must be >= 0, got {gamma_tilde!r}")
    quad = DEFAULT_SPEC if quad is None else quad

    def f(y):
        emy = np.exp(-y)
        omy = -np.expm1(-y)
        root = np.sqrt(y)
        return y * root / (np.sqrt(y + gamma_tilde) + root) * emy / omy

    return float(integrate_semi_infinite(f, 0.0, quad, sqrt_lower=True).value)


def _check_high_t(a, T):
    t = effective_temperature(a) / T
    if t > 0.5:
        warnings.warn(
            f"t = T_eff/T = {t:.3g} > 0.5: high-temperature form "
            "degrades here, prefer the full computation", UserWarning,
            stacklevel=3)


def high_temperature_pressure(a, T, omega_p, gamma=0.0, *, quad=None):
    """High-temperature plate pressure for a free-electron metal.

    ``-k_B T zeta3 / (4 pi a^3) * [1 - 3 d - (gamma / omega_p)
    I_1(gamma_tilde) / zeta3]`` with ``gamma_tilde = 2 a gamma / c``;
    ``gamma = 0`` gives the dissipationless (plasma) limit
    ``1 - 3 d``.
    """
    _check_geometry_scalars(a, T)
    if T == 0.0:
        raise ValueError("high-temperature form undefined at T = 0")
    if gamma < 0.0:
        raise ValueError(f"gamma must be >= 0, got {gamma!r}")
    d = _penetration_ratio(a, omega_p)
    _check_high_t(a, T)
    bracket = 1.0 - 3.0 * d
    if gamma > 0.0:
        g_t = 2.0 * a * gamma / _c
        bracket -= (gamma / omega_p) * relaxation_integral_1(
            g_t, quad=quad) / ZETA3
    value = -k_B * T * ZETA3 / (4.0 * math.pi * a ** 3) * bracket
    return AsymptoticResult(value, "high-T",
                            "leading term for T >> T_eff, first order "
                            "in delta0/a and gamma/omega_p")


def high_temperature_sphere_force(a, R, T, omega_p, gamma=0.0, *, quad=None):
    """High-temperature sphere-plate force for a free-electron metal.

    ``-k_B T zeta3 R / (4 a^2) * [1 - 2 d - 2 (gamma / omega_p)
    I_2(gamma_tilde) / zeta3]``.
    """
    _check_geometry_scalars(a, T, R)
    if T == 0.0:
        raise ValueError("high-temperature form undefined at T = 0")
    if gamma < 0.0:
        raise ValueError(f"gamma must be >= 0, got {gamma!r}")
    d = _penetration_ratio(a, omega_p)
    _check_high_t(a, T)
    bracket = 1.0 - 2.0 * d
    if gamma > 0.0:
        g_t = 2.0 * a * gamma / _c
        bracket -= 2.0 * (gamma / omega_p) * relaxation_integral_2(
            g_t, quad=quad) / ZETA3
    value = -k_B * T * ZETA3 * R / (4.0 * a ** 2) * bracket
    return AsymptoticResult(value, "high-T",
                            "leading term for T >> T_eff, first order "
                            "in delta0/a and gamma/omega_p")
