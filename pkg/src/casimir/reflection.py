"""Reflection coefficients at imaginary frequencies and the
zero-frequency prescriptions.

Working variables (gap width ``a``):

* ``xi_t = 2 a xi / c``      dimensionless imaginary frequency,
* ``y = 2 a q``              dimensionless decay wavevector, ``y >= xi_t``,
* ``s = sqrt(A + y^2)`` with ``A = (eps - 1) xi_t^2`` the permittivity
  contrast in the closed forms of :func:`casimir.models.eps_minus_one_xi2`.

The two polarization reflection coefficients squared are

* parallel (TM):      ``r1 = (eps y - s) / (eps y + s)``,
* transverse (TE):    ``r2 = (y - s) / (y + s)``,

evaluated with the cancellation-free complements
``1 - r1^2 = 4 eps y s / (eps y + s)^2`` and
``1 - r2^2 = 4 y s / (y + s)^2``.  On the diagonal ``y = xi_t`` they
reduce to ``+-(sqrt(eps) - 1)/(sqrt(eps) + 1)``.

The transverse coefficient of a dissipative (Drude) metal is
discontinuous at the origin of the ``(xi_t, y)`` plane: along any path
with ``xi_t ~ y`` it tends to the finite diagonal value, while at
``xi_t = 0`` exactly it vanishes for every ``y > 0``.  The value used
for the zero-frequency term of the Matsubara sum is therefore a modeling
choice, selected here by a ``Prescription``:

* ``raw``              -- evaluate the model literally at ``xi_t = 0``
                          (plasma keeps a finite transverse reflection;
                          Drude loses it entirely; dielectrics keep only
                          the electrostatic parallel value),
* ``modified-sdm``     -- unit parallel reflection and the transverse
                          coefficient continued along the diagonal
                          ``xi_t = y`` (metals only),
* ``zero-transverse``  -- unit parallel reflection, no transverse
                          contribution (metals with finite permittivity),
* ``unit-reflection``  -- both coefficients set to 1 (ideal-metal-like).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import models as _m
from ._kernels import (
    KIND_DIELECTRIC,
    KIND_DRUDE,
    KIND_IDEAL,
    KIND_PLASMA,
    ZMODE_MODIFIED_SDM,
    ZMODE_RAW,
    ZMODE_UNIT_REFLECTION,
    ZMODE_ZERO_TRANSVERSE,
    zero_pieces,
)

__all__ = [
    "Prescription",
    "PrescriptionError",
    "ReflectionPair",
    "parse_prescription",
    "reflection_pair",
    "reflection_pair_kperp",
    "diagonal_reflection",
    "zero_frequency_values",
    "validate_force_combo",
    "zmode_code",
    "discontinuity_probe",
    "discontinuity_probe_parabolic",
    "probe_limit_parabolic",
]


class PrescriptionError(ValueError):
    """A zero-frequency prescription is invalid for the given model."""


class Prescription(str, enum.Enum):
    """Rule fixing the zero-frequency term of the Matsubara sum."""

    RAW = "raw"
    MODIFIED_SDM = "modified-sdm"
    ZERO_TRANSVERSE = "zero-transverse"
    UNIT_REFLECTION = "unit-reflection"

    def __str__(self):
        return self.value


def parse_prescription(name):
    """Parse a prescription name (accepts enum instances unchanged)."""
    if isinstance(name, Prescription):
        return name
    try:
        return Prescription(str(name).strip().lower())
    except ValueError:
        valid = ", ".join(p.value for p in Prescription)
        raise PrescriptionError(
            f"unknown prescription {name!r}; choose one of {valid}"
        ) from None


_ZMODE_OF = {
    Prescription.RAW: ZMODE_RAW,
    Prescription.MODIFIED_SDM: ZMODE_MODIFIED_SDM,
    Prescription.ZERO_TRANSVERSE: ZMODE_ZERO_TRANSVERSE,
    Prescription.UNIT_REFLECTION: ZMODE_UNIT_REFLECTION,
}


def zmode_code(prescription):
    """Integer kernel code for a prescription."""
    return _ZMODE_OF[parse_prescription(prescription)]


@dataclass(frozen=True)
class ReflectionPair:
    """Signed reflection coefficients (parallel, transverse)."""

    r1: float
    r2: float


def _signed_pair(model, xi, y, a):
    xi = np.asarray(xi, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    xi, y = np.broadcast_arrays(xi, y)
    if np.any(xi <= 0.0):
        raise PrescriptionError(
            "xi_t = 0 is owned by the zero-frequency prescription; use "
            "zero_frequency_values for that term")
    if np.any(y < xi):
        raise ValueError("require y >= xi_t (evanescent decay variable)")
    big_a = _m.eps_minus_one_xi2(model, xi, a)
    big_a = np.asarray(big_a, dtype=np.float64)
    s = np.sqrt(big_a + y * y)
    eps_y = y + big_a * y / (xi * xi)
    r1 = (eps_y - s) / (eps_y + s)
    r2 = (y - s) / (y + s)
    return r1, r2


def reflection_pair(model, xi_tilde, y, a):
    """Signed reflection coefficients at ``(xi_t, y)``, ``y >= xi_t > 0``.

    Parameters
    ----------
    model : material model
        Ideal metal returns the constant pair ``(1, -1)``.
    xi_tilde, y : float or ndarray
        Dimensionless frequency and decay variable (broadcast together).
    a : float
        Gap width in meters.

    Returns
    -------
    ReflectionPair
        Arrays inside when the inputs broadcast to arrays.
    """
    if isinstance(model, _m.IdealMetal):
        xi = np.asarray(xi_tilde, dtype=np.float64)
        yv = np.asarray(y, dtype=np.float64)
        xi, yv = np.broadcast_arrays(xi, yv)
        if np.any(xi <= 0.0):
            raise PrescriptionError(
                "xi_t = 0 is owned by the zero-frequency prescription")
        if np.any(yv < xi):
            raise ValueError("require y >= xi_t")
        one = np.ones(yv.shape)
        if one.ndim == 0:
            return ReflectionPair(1.0, -1.0)
        return ReflectionPair(one, -one)
    r1, r2 = _signed_pair(model, xi_tilde, y, a)
    if r1.ndim == 0:
        return ReflectionPair(float(r1), float(r2))
    return ReflectionPair(r1, r2)


def reflection_pair_kperp(model, xi_tilde, u, a):
    """Reflection coefficients parameterized by ``u = 2 a k_perp``.

    Identical to :func:`reflection_pair` evaluated at
    ``y = sqrt(xi_t^2 + u^2)``.
    """
    xi = np.asarray(xi_tilde, dtype=np.float64)
    uu = np.asarray(u, dtype=np.float64)
    if np.any(uu < 0.0):
        raise ValueError("u must be >= 0")
    y = np.sqrt(xi * xi + uu * uu)
    return reflection_pair(model, xi_tilde, y, a)


def diagonal_reflection(model, y, a):
    """Signed coefficients on the light diagonal ``xi_t = y``.

    There ``eps`` is finite and the pair collapses to
    ``r1 = -r2 = (sqrt(eps) - 1) / (sqrt(eps) + 1)``.
    """
    if isinstance(model, _m.IdealMetal):
        y = np.asarray(y, dtype=np.float64)
        one = np.ones(y.shape)
        if one.ndim == 0:
            return ReflectionPair(1.0, -1.0)
        return ReflectionPair(one, -one)
    eps = _m.eval_epsilon(model, y, a)
    root = np.sqrt(np.asarray(eps, dtype=np.float64))
    r = (root - 1.0) / (root + 1.0)
    if r.ndim == 0:
        return ReflectionPair(float(r), float(-r))
    return ReflectionPair(r, -r)


def zero_frequency_values(model, prescription, y, a):
    """Squared reflection coefficients entering the zero-frequency term.

    Parameters
    ----------
    model : material model
    prescription : Prescription or str
    y : float or ndarray
        Decay variable, > 0.
    a : float
        Gap width in meters.

    Returns
    -------
    tuple of (float or ndarray)
        ``(r1_sq, r2_sq)``.

    Raises
    ------
    PrescriptionError
        For combinations that have no defined value (zero-transverse
        with an ideal metal; any metal-only prescription applied to a
        dielectric).
    """
    prescription = parse_prescription(prescription)
    validate_zero_combo(model, prescription)
    y = np.asarray(y, dtype=np.float64)
    if np.any(y <= 0.0):
        raise ValueError("y must be > 0")
    scalar = y.ndim == 0
    yv = np.atleast_1d(y).astype(np.float64)
    kind, wp_t, ga_t, e0, we_t = _m.kernel_params(model, a)
    r1_sq, _om1, r2_sq, _om2 = zero_pieces(
        kind, wp_t, ga_t, e0, we_t, _ZMODE_OF[prescription], yv)
    if scalar:
        return float(r1_sq[0]), float(r2_sq[0])
    return r1_sq.reshape(y.shape), r2_sq.reshape(y.shape)


def validate_zero_combo(model, prescription):
    """Raise ``PrescriptionError`` if the combination is undefined."""
    prescription = parse_prescription(prescription)
    kind = _m.kind_code(model)
    if kind == KIND_DIELECTRIC and prescription is not Prescription.RAW:
        raise PrescriptionError(
            f"prescription '{prescription}' applies to metals only; "
            "dielectrics take the literal (raw) zero-frequency value")
    if kind == KIND_IDEAL and prescription is Prescription.ZERO_TRANSVERSE:
        raise PrescriptionError(
            "zero-transverse contradicts the ideal metal, whose "
            "transverse reflection is unity at all frequencies")
    return prescription


def validate_force_combo(model, prescription, allow_raw_drude=False):
    """Validate a (model, prescription) pair for a force computation.

    Returns the kernel zero-mode code.  Beyond the combinations rejected
    by :func:`validate_zero_combo`, the literal Drude zero term is
    refused by default because the vanished transverse mode makes the
    result prescription-sensitive in a way that is usually a mistake;
    pass ``allow_raw_drude=True`` to compute it anyway.
    """
    prescription = validate_zero_combo(model, prescription)
    kind = _m.kind_code(model)
    if (kind == KIND_DRUDE and prescription is Prescription.RAW
            and not allow_raw_drude):
        raise PrescriptionError(
            "literal zero-frequency evaluation of a dissipative metal "
            "drops the transverse mode entirely; select a prescription "
            "explicitly or pass allow_raw_drude=True")
    return _ZMODE_OF[prescription]


def discontinuity_probe(model, k, y, a):
    """Squared transverse reflection along the ray ``xi_t = k y``.

    For ``k = 0`` this is the literal zero-frequency value.  For a
    dissipative metal the limit ``k -> 0`` at fixed ``y`` is *not* the
    ``k = 0`` value: the straight-path limit is the value at
    ``xi_t = 0+``, which for Drude vanishes like ``xi_t`` while the
    diagonal value stays O(1) — the discontinuity lives at the origin
    and is reached only along paths entering tangentially (see
    :func:`discontinuity_probe_parabolic`).
    """
    if not (0.0 <= k <= 1.0):
        raise ValueError("require 0 <= k <= 1 so that xi_t <= y")
    y = np.asarray(y, dtype=np.float64)
    if np.any(y <= 0.0):
        raise ValueError("y must be > 0")
    if k == 0.0:
        _r1, r2_sq = zero_frequency_values(model, Prescription.RAW, y, a)
        return r2_sq
    pair = reflection_pair(model, k * y, y, a)
    r2 = np.asarray(pair.r2, dtype=np.float64)
    out = r2 * r2
    return float(out) if out.ndim == 0 else out


def discontinuity_probe_parabolic(model, kappa, y, a):
    """Squared transverse reflection along ``xi_t = kappa y^2``.

    Along these parabolic paths a Drude metal's transverse reflection
    attains a *finite, kappa-dependent* limit as ``y -> 0`` (see
    :func:`probe_limit_parabolic`), exhibiting the origin discontinuity
    that the zero-frequency prescriptions resolve.
    """
    if not (kappa > 0.0) or not math.isfinite(kappa):
        raise ValueError("kappa must be positive and finite")
    y = np.asarray(y, dtype=np.float64)
    if np.any(y <= 0.0):
        raise ValueError("y must be > 0")
    if np.any(kappa * y > 1.0):
        raise ValueError("path leaves the region xi_t <= y; reduce y")
    pair = reflection_pair(model, kappa * y * y, y, a)
    r2 = np.asarray(pair.r2, dtype=np.float64)
    out = r2 * r2
    return float(out) if out.ndim == 0 else out


def probe_limit_parabolic(model, kappa, a):
    """Closed-form ``y -> 0`` limit of the parabolic probe.

    For a Drude metal, ``A = wp_t^2 xi_t / (xi_t + ga_t) ~
    (wp_t^2 / ga_t) kappa y^2`` along ``xi_t = kappa y^2``, so with
    ``B = wp_t^2 kappa / ga_t`` the transverse coefficient tends to
    ``((sqrt(1 + B) - 1) / (sqrt(1 + B) + 1))^2``: every value between
    the literal 0 (kappa -> 0) and the plasma-like 1 (kappa -> inf) is a
    path limit.  For a plasma metal the limit is 1 for every kappa
    (``A`` stays pinned at ``wp_t^2``); -> the discontinuity is a pure
    dissipation effect.
    """
    if not (kappa > 0.0) or not math.isfinite(kappa):
        raise ValueError("kappa must be positive and finite")
    if isinstance(model, _m.PlasmaMetal) or isinstance(model, _m.IdealMetal):
        return 1.0
    if isinstance(model, _m.DrudeMetal):
        if model.gamma == 0.0:
            return 1.0
        p = _m.dimensionless(model, a)
        b = p.omega_p_tilde ** 2 * kappa / p.gamma_tilde
        root = math.sqrt(1.0 + b)
        return ((root - 1.0) / (root + 1.0)) ** 2
    raise TypeError(f"parabolic probe limit undefined for {model!r}")
