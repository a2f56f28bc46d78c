"""Finite-temperature dispersion forces between parallel surfaces.

Quantities (attraction is negative throughout):

* ``force_plate_plate``    -- pressure between two thick parallel plates,
  in N/m^2,
* ``free_energy_plate_plate`` -- free energy of the plate pair per unit
  area, in J/m^2,
* ``force_sphere_plate``   -- force between a sphere (or spherical lens)
  of curvature radius ``R`` and a plate, in N, obtained from the
  plate-pair free energy through the curvature relation
  ``F = 2 pi R E(a)`` valid for ``a << R``.

At temperature ``T > 0`` each quantity is a sum over discrete imaginary
frequencies ``xi_l = tau * l`` with spacing ``tau = 4 pi a k_B T /
(hbar c)`` (dimensionless, ``xi = 2 a omega / c`` units).  With
``y`` the decay variable and ``f_i = r_i^2 e^{-y} / (1 - r_i^2 e^{-y})``,
``g_i = ln(1 - r_i^2 e^{-y})`` built from the squared reflection
coefficients of :mod:`casimir.reflection`:

* pressure      = ``-k_B T / (16 pi a^3) * B_p``,
  ``B_p = Z_p + 2 sum_{l>=1} int_{xi_l}^inf y^2 (f_1 + f_2) dy``,
* free energy   = ``+k_B T / (16 pi a^2) * B_s``,
  ``B_s = Z_s + 2 sum_{l>=1} int_{xi_l}^inf y (g_1 + g_2) dy``,

where ``Z`` is the corresponding integral at ``xi = 0`` with the
coefficients fixed by the zero-frequency prescription.  At ``T = 0``
the sum becomes ``(tau / 2) -> dxi`` and the same integrands are
integrated over continuous ``xi``:

* pressure      = ``-hbar c / (32 pi^2 a^4) * int dxi int y^2 (f1+f2)``,
* free energy   = ``+hbar c / (32 pi^2 a^3) * int dxi int y (g1+g2)``.

An equivalent transverse-wavevector representation (variable
``u = 2 a k_perp``, so ``y = sqrt(xi^2 + u^2)``) is implemented
independently in :func:`force_kperp_representation` as a cross-check of
the change of variables; the two routes share only the zero-frequency
kernels, where the representations coincide identically.

Matsubara sums are evaluated in geometrically growing blocks of terms,
each block done as one vector quadrature on a shared adaptive grid, and
stopped once three consecutive terms each contribute below 1e-12 of the
running total; the reported error estimate adds the quadrature
estimates and a geometric bound ``2 |I_last| / (e^tau - 1)`` on the
truncated remainder.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .constants import HBAR_C, k_B, effective_temperature, matsubara_spacing
from .models import kernel_params
from .reflection import validate_force_combo
from .quadrature import (
    ConvergenceError,
    DEFAULT_SPEC,
    QuadratureSpec,
    integrate_interval,
    integrate_semi_infinite,
)
from . import _kernels as _k

__all__ = [
    "PlatePlate",
    "SpherePlate",
    "ThermalState",
    "ForceResult",
    "force_plate_plate",
    "free_energy_plate_plate",
    "force_sphere_plate",
    "force",
    "force_T0",
    "free_energy_T0",
    "force_kperp_representation",
    "MAX_MATSUBARA_DEFAULT",
]

#: Default cap on the number of Matsubara terms before giving up.
MAX_MATSUBARA_DEFAULT = 10 ** 6

# Series stop rule: this many consecutive terms, each below this
# fraction of the running total, end the sum.
_STOP_REL = 1e-12
_STOP_RUN = 3

_TINY = 1e-300


def _check_positive(name, value):
    if not (value > 0.0) or not math.isfinite(value):
        raise ValueError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class PlatePlate:
    """Two thick parallel plates a gap ``a`` (meters) apart."""

    a: float

    def __post_init__(self):
        _check_positive("gap width a", self.a)


@dataclass(frozen=True)
class SpherePlate:
    """Sphere (or spherical lens) of radius ``R`` above a plate.

    The force is obtained from the plate-pair free energy through the
    curvature relation ``F = 2 pi R E(a)``, accurate for ``a << R``; a
    warning is emitted when ``a / R`` exceeds 1 %.
    """

    a: float
    R: float

    def __post_init__(self):
        _check_positive("gap width a", self.a)
        _check_positive("curvature radius R", self.R)
        if self.a / self.R > 0.01:
            warnings.warn(
                f"a/R = {self.a / self.R:.3g} > 0.01: the curvature "
                "relation F = 2 pi R E(a) degrades away from a << R",
                UserWarning, stacklevel=3)


@dataclass(frozen=True)
class ThermalState:
    """Temperature scales of a gap.

    Attributes
    ----------
    T : float
        Temperature in kelvin.
    T_eff : float
        Effective temperature ``hbar c / (2 a k_B)`` of the gap.
    t : float
        ``T_eff / T`` (infinite at ``T = 0``).
    tau : float
        Dimensionless Matsubara spacing ``4 pi a k_B T / (hbar c)``
        (``= 2 pi / t``).
    """

    T: float
    T_eff: float
    t: float
    tau: float

    @classmethod
    def for_gap(cls, a, T):
        _check_positive("gap width a", a)
        if T < 0.0 or not math.isfinite(T):
            raise ValueError(f"temperature must be >= 0, got {T!r}")
        T_eff = effective_temperature(a)
        t = math.inf if T == 0.0 else T_eff / T
        return cls(T=T, T_eff=T_eff, t=t, tau=matsubara_spacing(a, T))


@dataclass(frozen=True)
class ForceResult:
    """One computed force/energy value with its decomposition.

    Attributes
    ----------
    value : float
        The quantity, negative for attraction.  Equals ``zero_term``
        plus the ``tail_terms`` added left to right (exactly, in float
        arithmetic).
    unit : str
        ``"N/m^2"``, ``"J/m^2"`` or ``"N"``.
    zero_term : float
        Zero-frequency contribution in the same unit (at ``T = 0``,
        where no discrete zero term exists, the full value).
    tail_terms : tuple of float
        Contribution of each Matsubara index ``l = 1, 2, ...`` in the
        same unit (empty at ``T = 0``).
    l_max_used : int
        Largest Matsubara index evaluated (0 at ``T = 0``).
    est_rel_error : float
        Estimated relative error: quadrature estimates plus a geometric
        bound on the truncated Matsubara remainder.
    """

    value: float
    unit: str
    zero_term: float
    tail_terms: tuple
    l_max_used: int
    est_rel_error: float


def _zero_integrand(kp, zmode, sphere):
    kind, wp, ga, e0, we = kp
    kern = _k.sphere_zero if sphere else _k.plate_zero

    def f(y):
        return kern(kind, wp, ga, e0, we, zmode, y)

    return f


def _row_integrand(kp, xis, sphere, kperp):
    """Vector integrand over ``u`` with one row per frequency in ``xis``."""
    kind, wp, ga, e0, we = kp
    col = np.asarray(xis, dtype=np.float64)[:, None]
    if kperp:
        kern = _k.sphere_tail_kperp if sphere else _k.plate_tail_kperp

        def f(u):
            return kern(kind, wp, ga, e0, we, col, u[None, :])

    else:
        kern = _k.sphere_tail if sphere else _k.plate_tail

        def f(u):
            return kern(kind, wp, ga, e0, we, col, col + u[None, :])

    return f


def _matsubara_bracket(kp, zmode, tau, quad, cap, sphere, kperp):
    """Evaluate ``Z + 2 sum_l I_l`` and its per-term decomposition.

    Returns
    -------
    tuple
        ``(zero, zero_err, contribs, l_max, est_rel)`` where ``contribs``
        lists the ``2 I_l`` values in order.
    """
    zres = integrate_semi_infinite(
        _zero_integrand(kp, zmode, sphere), 0.0, quad, sqrt_lower=True)
    zero = float(zres.value)
    zero_err = float(zres.err_estimate)

    running = zero
    contribs = []
    tail_err = 0.0
    streak = 0
    l = 1
    block = 8
    l_last = 0
    i_last = 0.0
    done = False
    while not done:
        hi = min(l + block - 1, cap)
        ls = np.arange(l, hi + 1)
        f = _row_integrand(kp, tau * ls, sphere, kperp)
        floor = max(quad.abs_tol, 0.1 * _STOP_REL * abs(running))
        spec = replace(quad, abs_tol=floor)
        if kperp:
            # Decay in u sets in only beyond u ~ sqrt(2 xi L): cover a
            # margin of tail_length in y = sqrt(xi^2 + u^2) explicitly.
            tl = quad.tail_length
            upper = math.sqrt(tl * (tl + 2.0 * tau * float(ls[-1])))
            res = integrate_interval(f, 0.0, upper, spec)
        else:
            res = integrate_semi_infinite(f, 0.0, spec)
        vals = np.atleast_1d(np.asarray(res.value, dtype=np.float64))
        errs = np.atleast_1d(np.asarray(res.err_estimate, dtype=np.float64))
        for i in range(ls.size):
            contrib = 2.0 * float(vals[i])
            contribs.append(contrib)
            tail_err += 2.0 * float(errs[i])
            running += contrib
            l_last = int(ls[i])
            i_last = float(vals[i])
            if abs(contrib) <= _STOP_REL * abs(running):
                streak += 1
                if streak >= _STOP_RUN:
                    done = True
                    break
            else:
                streak = 0
        if not done and hi >= cap:
            raise ConvergenceError(
                f"Matsubara sum not converged within {cap} terms "
                f"(spacing tau = {tau:.3e}, last term {2 * i_last:.3e}); "
                "raise max_matsubara",
                best=running, err_estimate=None)
        l = hi + 1
        block = min(2 * block, 128)

    trunc = 2.0 * abs(i_last) / math.expm1(min(tau, 700.0))
    est_rel = (zero_err + tail_err + trunc) / max(abs(running), _TINY)
    return zero, zero_err, contribs, l_last, est_rel


def _assemble(pref, unit, zero, contribs, l_max, est_rel):
    zero_term = pref * zero
    tail_terms = tuple(pref * c for c in contribs)
    value = zero_term
    for term in tail_terms:
        value += term
    return ForceResult(value=value, unit=unit, zero_term=zero_term,
                       tail_terms=tail_terms, l_max_used=l_max,
                       est_rel_error=est_rel)


def _thermal_quantity(model, prescription, a, T, sphere, unit_pref, quad,
                      allow_raw_drude, max_matsubara, kperp=False):
    zmode = validate_force_combo(model, prescription, allow_raw_drude)
    quad = DEFAULT_SPEC if quad is None else quad
    kp = kernel_params(model, a)
    tau = matsubara_spacing(a, T)
    cap = MAX_MATSUBARA_DEFAULT if max_matsubara is None else int(max_matsubara)
    if cap < 1:
        raise ValueError(f"max_matsubara must be >= 1, got {max_matsubara!r}")
    pref, unit = unit_pref
    zero, _zerr, contribs, l_max, est = _matsubara_bracket(
        kp, zmode, tau, quad, cap, sphere=sphere, kperp=kperp)
    return _assemble(pref, unit, zero, contribs, l_max, est)


def force_plate_plate(model, prescription, a, T, *, quad=None,
                      allow_raw_drude=False, max_matsubara=None):
    """Pressure between two thick parallel plates, in N/m^2 (< 0).

    Parameters
    ----------
    model : material model
        Both plates are made of this material.
    prescription : Prescription or str
        Zero-frequency rule (ignored at ``T = 0``, where the frequency
        axis is continuous).
    a : float
        Gap width in meters.
    T : float
        Temperature in kelvin; ``T = 0`` switches to the
        continuous-frequency integral.
    quad : QuadratureSpec, optional
        Tolerances; defaults to ``DEFAULT_SPEC``.
    allow_raw_drude : bool
        Permit the literal zero-frequency evaluation of a dissipative
        metal (refused by default, see
        :func:`casimir.reflection.validate_force_combo`).
    max_matsubara : int, optional
        Cap on the number of Matsubara terms; exceeded ->
        :class:`casimir.quadrature.ConvergenceError`.

    Returns
    -------
    ForceResult
    """
    _check_positive("gap width a", a)
    if T == 0.0:
        return force_T0(model, PlatePlate(a), quad=quad)
    pref = -k_B * T / (16.0 * math.pi * a ** 3)
    return _thermal_quantity(model, prescription, a, T, sphere=False,
                             unit_pref=(pref, "N/m^2"), quad=quad,
                             allow_raw_drude=allow_raw_drude,
                             max_matsubara=max_matsubara)


def free_energy_plate_plate(model, prescription, a, T, *, quad=None,
                            allow_raw_drude=False, max_matsubara=None):
    """Free energy of the plate pair per unit area, in J/m^2 (< 0).

    Signature as :func:`force_plate_plate`.
    """
    _check_positive("gap width a", a)
    if T == 0.0:
        return free_energy_T0(model, a, quad=quad)
    pref = k_B * T / (16.0 * math.pi * a ** 2)
    return _thermal_quantity(model, prescription, a, T, sphere=True,
                             unit_pref=(pref, "J/m^2"), quad=quad,
                             allow_raw_drude=allow_raw_drude,
                             max_matsubara=max_matsubara)


def force_sphere_plate(model, prescription, a, R, T, *, quad=None,
                       allow_raw_drude=False, max_matsubara=None):
    """Force between a sphere of radius ``R`` and a plate, in N (< 0).

    Computed as ``2 pi R`` times the plate-pair free energy per unit
    area (curvature relation, ``a << R``); each Matsubara contribution
    is scaled individually so the decomposition of the result mirrors
    the free energy's.
    """
    geometry = SpherePlate(a, R)  # validates and warns on large a/R
    if T == 0.0:
        return force_T0(model, geometry, quad=quad)
    pref = k_B * T * R / (8.0 * a ** 2)
    return _thermal_quantity(model, prescription, a, T, sphere=True,
                             unit_pref=(pref, "N"), quad=quad,
                             allow_raw_drude=allow_raw_drude,
                             max_matsubara=max_matsubara)


def force(model, prescription, geometry, T, **kwargs):
    """Dispatch on geometry: plate-pair pressure or sphere-plate force."""
    if isinstance(geometry, PlatePlate):
        return force_plate_plate(model, prescription, geometry.a, T, **kwargs)
    if isinstance(geometry, SpherePlate):
        return force_sphere_plate(model, prescription, geometry.a,
                                  geometry.R, T, **kwargs)
    raise TypeError(f"not a geometry: {geometry!r}")


def _t0_bracket(kp, sphere, quad):
    """Double integral ``int_0^inf dxi int_0^inf du`` of the row kernel.

    The inner integrals run as one vector quadrature per batch of outer
    nodes, at a tolerance 30x tighter than the outer one; since the
    integrand does not change sign, the inner truncation contributes at
    most that relative amount to the total.
    """
    inner = replace(quad, rel_tol=max(quad.rel_tol / 30.0, 1.05e-14))

    def outer_f(xi):
        rows = _row_integrand(kp, xi, sphere, kperp=False)
        res = integrate_semi_infinite(rows, 0.0, inner)
        return np.atleast_1d(np.asarray(res.value, dtype=np.float64))

    out = integrate_semi_infinite(outer_f, 0.0, quad, sqrt_lower=True)
    value = float(out.value)
    est = float(out.err_estimate) / max(abs(value), _TINY) + inner.rel_tol
    return value, est


def force_T0(model, geometry, *, quad=None):
    """Zero-temperature force for either geometry.

    No zero-frequency prescription enters: the frequency axis is
    continuous and the ``xi = 0`` line has measure zero.

    Returns
    -------
    ForceResult
        ``zero_term`` holds the full value, ``tail_terms`` is empty and
        ``l_max_used`` is 0.
    """
    quad = DEFAULT_SPEC if quad is None else quad
    if isinstance(geometry, PlatePlate):
        a = geometry.a
        kp = kernel_params(model, a)
        bracket, est = _t0_bracket(kp, sphere=False, quad=quad)
        pref = -HBAR_C / (32.0 * math.pi ** 2 * a ** 4)
        unit = "N/m^2"
    elif isinstance(geometry, SpherePlate):
        a = geometry.a
        kp = kernel_params(model, a)
        bracket, est = _t0_bracket(kp, sphere=True, quad=quad)
        pref = HBAR_C * geometry.R / (16.0 * math.pi * a ** 3)
        unit = "N"
    else:
        raise TypeError(f"not a geometry: {geometry!r}")
    value = pref * bracket
    return ForceResult(value=value, unit=unit, zero_term=value,
                       tail_terms=(), l_max_used=0, est_rel_error=est)


def free_energy_T0(model, a, *, quad=None):
    """Plate-pair free energy per unit area at ``T = 0``, in J/m^2."""
    _check_positive("gap width a", a)
    quad = DEFAULT_SPEC if quad is None else quad
    kp = kernel_params(model, a)
    bracket, est = _t0_bracket(kp, sphere=True, quad=quad)
    pref = HBAR_C / (32.0 * math.pi ** 2 * a ** 3)
    value = pref * bracket
    return ForceResult(value=value, unit="J/m^2", zero_term=value,
                       tail_terms=(), l_max_used=0, est_rel_error=est)


def force_kperp_representation(model, prescription, geometry, T, *,
                               quad=None, allow_raw_drude=False,
                               max_matsubara=None):
    """Same quantities as :func:`force`, via the ``u = 2 a k_perp`` route.

    The Matsubara tail integrals use the transverse-wavevector variable
    (integrand ``u * sqrt(xi^2 + u^2) * (f1 + f2)`` for plates,
    ``u * (g1 + g2)`` for the sphere bracket) instead of the decay
    variable ``y``; results must agree with :func:`force` to quadrature
    accuracy.  At ``T = 0`` the check is vacuous and this delegates to
    :func:`force_T0`.
    """
    if T == 0.0:
        return force_T0(model, geometry, quad=quad)
    if isinstance(geometry, PlatePlate):
        pref = -k_B * T / (16.0 * math.pi * geometry.a ** 3)
        return _thermal_quantity(model, prescription, geometry.a, T,
                                 sphere=False, unit_pref=(pref, "N/m^2"),
                                 quad=quad, allow_raw_drude=allow_raw_drude,
                                 max_matsubara=max_matsubara, kperp=True)
    if isinstance(geometry, SpherePlate):
        pref = k_B * T * geometry.R / (8.0 * geometry.a ** 2)
        return _thermal_quantity(model, prescription, geometry.a, T,
                                 sphere=True, unit_pref=(pref, "N"),
                                 quad=quad, allow_raw_drude=allow_raw_drude,
                                 max_matsubara=max_matsubara, kperp=True)
    raise TypeError(f"not a geometry: {geometry!r}")
