"""Hot numerical kernels for the Lifshitz integrands.

Every force integral in this package reduces to batched evaluations of a
small family of elementwise kernels in the dimensionless variables
``xi = 2 a xi_freq / c`` (imaginary frequency) and ``y = 2 a q`` (transverse
quantity), or ``u = 2 a k_perp`` for the transverse-momentum representation:

* plate–plate pressure integrand      ``y^2 [f1 + f2]``
* sphere–plate / free-energy integrand ``y [g1 + g2]``
* their l = 0 (zero-frequency) variants with the prescription-defined
  transverse part
* the (xi, u) representation variants ``u q [f1 + f2]`` and ``u [g1 + g2]``
  with ``q = sqrt(xi^2 + u^2)``

with

    f_i = r_i^2 e^{-y} / (1 - r_i^2 e^{-y}),      g_i = ln(1 - r_i^2 e^{-y}),

reflection coefficients

    r_1 = (eps y - s)/(eps y + s),   r_2 = (y - s)/(y + s),
    s   = sqrt((eps - 1) xi^2 + y^2),

and ``eps = eps(i xi)`` of the material model.  The combination
``A = (eps - 1) xi^2`` is evaluated in closed form per model (plasma
``wp^2``, Drude ``wp^2 xi/(xi + gamma)``, dielectric
``(eps0 - 1) xi^2/(1 + xi^2/we^2)``), so the permittivity itself never has
to be represented near xi = 0.  Cancellation-free forms are used
throughout:

    1 - r_1^2 = 4 eps y s/(eps y + s)^2,   1 - r_2^2 = 4 y s/(y + s)^2,
    f = r^2 e^{-y} / (-expm1(-y) + (1 - r^2) e^{-y}),
    g = log(d) for d = -expm1(-y) + (1 - r^2) e^{-y} < 1/2,
        log1p(-r^2 e^{-y}) otherwise.

Two interchangeable implementations of every kernel are provided:

* explicit-loop scalar cores compiled with ``numba.njit`` (fast for the
  many small batches issued by adaptive quadrature), and
* vectorized pure-numpy twins.

The numba path is used when numba imports successfully and the
environment variable ``CASIMIR_DISABLE_NUMBA`` is unset/false; otherwise
the numpy path is used.  Both implementations are exercised against each
other in the test suite, and ``benchmarks/bench_kernels.py`` times them.
"""

from __future__ import annotations

import math
import os

import numpy as np

__all__ = [
    "KIND_IDEAL",
    "KIND_PLASMA",
    "KIND_DRUDE",
    "KIND_DIELECTRIC",
    "ZMODE_RAW",
    "ZMODE_MODIFIED_SDM",
    "ZMODE_ZERO_TRANSVERSE",
    "ZMODE_UNIT_REFLECTION",
    "NUMBA_ENABLED",
    "plate_tail",
    "sphere_tail",
    "plate_zero",
    "sphere_zero",
    "plate_tail_kperp",
    "sphere_tail_kperp",
    "zero_pieces",
]

# Material kind codes (kernel ABI shared with the models module).
KIND_IDEAL = 0
KIND_PLASMA = 1
KIND_DRUDE = 2
KIND_DIELECTRIC = 3

# Zero-frequency transverse-mode codes (shared with the reflection module).
ZMODE_RAW = 0
ZMODE_MODIFIED_SDM = 1
ZMODE_ZERO_TRANSVERSE = 2
ZMODE_UNIT_REFLECTION = 3


def _env_disabled():
    flag = os.environ.get("CASIMIR_DISABLE_NUMBA", "")
    return flag.strip().lower() in {"1", "true", "yes", "on"}


try:
    if _env_disabled():
        raise ImportError("numba disabled via CASIMIR_DISABLE_NUMBA")
    from numba import njit

    NUMBA_ENABLED = True
except ImportError:  # pragma: no cover - depends on environment
    njit = None
    NUMBA_ENABLED = False


# ----------------------------------------------------------------------
# Pure-numpy implementations (vectorized twins of the scalar cores).
# ----------------------------------------------------------------------

def _np_big_a(kind, wp, ga, e0, we, xi):
    """(eps - 1) xi^2 in closed form per model; xi > 0 arrays."""
    if kind == KIND_PLASMA:
        return np.full(np.shape(xi), wp * wp)
    if kind == KIND_DRUDE:
        return wp * wp * xi / (xi + ga)
    if kind == KIND_DIELECTRIC:
        return (e0 - 1.0) * xi * xi / (1.0 + (xi / we) ** 2)
    raise ValueError(f"no permittivity form for kind code {kind}")


def _np_plate_tail(kind, wp, ga, e0, we, xi, y):
    emy = np.exp(-y)
    omy = -np.expm1(-y)
    if kind == KIND_IDEAL:
        return y * y * 2.0 * emy / omy
    big_a = _np_big_a(kind, wp, ga, e0, we, xi)
    s = np.sqrt(big_a + y * y)
    eps_y = y + big_a * y / (xi * xi)
    d1 = eps_y + s
    r1sq = ((eps_y - s) / d1) ** 2
    om1 = 4.0 * eps_y * s / (d1 * d1)
    d2 = y + s
    r2sq = ((y - s) / d2) ** 2
    om2 = 4.0 * y * s / (d2 * d2)
    f1 = r1sq * emy / (omy + om1 * emy)
    f2 = r2sq * emy / (omy + om2 * emy)
    return y * y * (f1 + f2)


def _np_log_term(rsq, omr, emy, omy):
    """ln(1 - r^2 e^{-y}) with d = omy + omr*emy = 1 - r^2 e^{-y}."""
    d = omy + omr * emy
    return np.where(d < 0.5, np.log(d), np.log1p(-rsq * emy))


def _np_sphere_tail(kind, wp, ga, e0, we, xi, y):
    emy = np.exp(-y)
    omy = -np.expm1(-y)
    if kind == KIND_IDEAL:
        return y * 2.0 * _np_log_term(1.0, 0.0 * y, emy, omy)
    big_a = _np_big_a(kind, wp, ga, e0, we, xi)
    s = np.sqrt(big_a + y * y)
    eps_y = y + big_a * y / (xi * xi)
    d1 = eps_y + s
    r1sq = ((eps_y - s) / d1) ** 2
    om1 = 4.0 * eps_y * s / (d1 * d1)
    d2 = y + s
    r2sq = ((y - s) / d2) ** 2
    om2 = 4.0 * y * s / (d2 * d2)
    g1 = _np_log_term(r1sq, om1, emy, omy)
    g2 = _np_log_term(r2sq, om2, emy, omy)
    return y * (g1 + g2)


def _np_zero_pieces(kind, wp, ga, e0, we, zmode, y):
    """(r1sq, om1, r2sq, om2) at the l = 0 point for the given zmode."""
    one = np.ones(np.shape(y))
    zero = np.zeros(np.shape(y))
    # parallel polarization
    if kind == KIND_DIELECTRIC:
        r1 = (e0 - 1.0) / (e0 + 1.0)
        r1sq = one * (r1 * r1)
        om1 = one - r1sq
    else:
        r1sq = one
        om1 = zero
    # transverse polarization
    if kind == KIND_IDEAL or zmode == ZMODE_UNIT_REFLECTION:
        r2sq = one
        om2 = zero
    elif zmode == ZMODE_ZERO_TRANSVERSE:
        r2sq = zero
        om2 = one
    elif zmode == ZMODE_RAW:
        if kind == KIND_PLASMA:
            s0 = np.sqrt(wp * wp + y * y)
            d = y + s0
            r2sq = ((y - s0) / d) ** 2
            om2 = 4.0 * y * s0 / (d * d)
        else:  # Drude literal limit and dielectric both give r2 = 0
            r2sq = zero
            om2 = one
    elif zmode == ZMODE_MODIFIED_SDM:
        # diagonal value r2^2(y, y) with the model's own eps(i y)
        big_a = _np_big_a(kind, wp, ga, e0, we, y)
        se = np.sqrt(1.0 + big_a / (y * y))
        d = se + 1.0
        r2sq = ((se - 1.0) / d) ** 2
        om2 = 4.0 * se / (d * d)
    else:
        raise ValueError(f"unknown zero-mode code {zmode}")
    return r1sq, om1, r2sq, om2


def _np_plate_zero(kind, wp, ga, e0, we, zmode, y):
    emy = np.exp(-y)
    omy = -np.expm1(-y)
    r1sq, om1, r2sq, om2 = _np_zero_pieces(kind, wp, ga, e0, we, zmode, y)
    f1 = r1sq * emy / (omy + om1 * emy)
    f2 = r2sq * emy / (omy + om2 * emy)
    return y * y * (f1 + f2)


def _np_sphere_zero(kind, wp, ga, e0, we, zmode, y):
    emy = np.exp(-y)
    omy = -np.expm1(-y)
    r1sq, om1, r2sq, om2 = _np_zero_pieces(kind, wp, ga, e0, we, zmode, y)
    g1 = _np_log_term(r1sq, om1, emy, omy)
    g2 = _np_log_term(r2sq, om2, emy, omy)
    return y * (g1 + g2)


def _np_plate_tail_kperp(kind, wp, ga, e0, we, xi, u):
    q = np.sqrt(xi * xi + u * u)
    emq = np.exp(-q)
    omq = -np.expm1(-q)
    if kind == KIND_IDEAL:
        return u * q * 2.0 * emq / omq
    big_a = _np_big_a(kind, wp, ga, e0, we, xi)
    kk = np.sqrt(big_a + q * q)
    eps_q = q + big_a * q / (xi * xi)
    d1 = eps_q + kk
    r1sq = ((eps_q - kk) / d1) ** 2
    om1 = 4.0 * eps_q * kk / (d1 * d1)
    d2 = q + kk
    r2sq = ((q - kk) / d2) ** 2
    om2 = 4.0 * q * kk / (d2 * d2)
    f1 = r1sq * emq / (omq + om1 * emq)
    f2 = r2sq * emq / (omq + om2 * emq)
    return u * q * (f1 + f2)


def _np_sphere_tail_kperp(kind, wp, ga, e0, we, xi, u):
    q = np.sqrt(xi * xi + u * u)
    emq = np.exp(-q)
    omq = -np.expm1(-q)
    if kind == KIND_IDEAL:
        return u * 2.0 * _np_log_term(1.0, 0.0 * q, emq, omq)
    big_a = _np_big_a(kind, wp, ga, e0, we, xi)
    kk = np.sqrt(big_a + q * q)
    eps_q = q + big_a * q / (xi * xi)
    d1 = eps_q + kk
    r1sq = ((eps_q - kk) / d1) ** 2
    om1 = 4.0 * eps_q * kk / (d1 * d1)
    d2 = q + kk
    r2sq = ((q - kk) / d2) ** 2
    om2 = 4.0 * q * kk / (d2 * d2)
    g1 = _np_log_term(r1sq, om1, emq, omq)
    g2 = _np_log_term(r2sq, om2, emq, omq)
    return u * (g1 + g2)


# ----------------------------------------------------------------------
# Numba implementations (scalar cores + explicit loops).
# ----------------------------------------------------------------------

if NUMBA_ENABLED:

    @njit(cache=True)
    def _nb_big_a(kind, wp, ga, e0, we, xi):
        if kind == KIND_PLASMA:
            return wp * wp
        if kind == KIND_DRUDE:
            return wp * wp * xi / (xi + ga)
        # dielectric; (xi/we) underflows to 0 for the constant model (we=inf)
        r = xi / we
        return (e0 - 1.0) * xi * xi / (1.0 + r * r)

    @njit(cache=True)
    def _nb_log_term(rsq, omr, emy, omy):
        d = omy + omr * emy
        if d < 0.5:
            return math.log(d)
        return math.log1p(-rsq * emy)

    @njit(cache=True)
    def _nb_plate_tail_s(kind, wp, ga, e0, we, xi, y):
        emy = math.exp(-y)
        omy = -math.expm1(-y)
        if kind == KIND_IDEAL:
            return y * y * 2.0 * emy / omy
        big_a = _nb_big_a(kind, wp, ga, e0, we, xi)
        s = math.sqrt(big_a + y * y)
        eps_y = y + big_a * y / (xi * xi)
        d1 = eps_y + s
        r1sq = ((eps_y - s) / d1) ** 2
        om1 = 4.0 * eps_y * s / (d1 * d1)
        d2 = y + s
        r2sq = ((y - s) / d2) ** 2
        om2 = 4.0 * y * s / (d2 * d2)
        f1 = r1sq * emy / (omy + om1 * emy)
        f2 = r2sq * emy / (omy + om2 * emy)
        return y * y * (f1 + f2)

    @njit(cache=True)
    def _nb_sphere_tail_s(kind, wp, ga, e0, we, xi, y):
        emy = math.exp(-y)
        omy = -math.expm1(-y)
        if kind == KIND_IDEAL:
            return y * 2.0 * _nb_log_term(1.0, 0.0, emy, omy)
        big_a = _nb_big_a(kind, wp, ga, e0, we, xi)
        s = math.sqrt(big_a + y * y)
        eps_y = y + big_a * y / (xi * xi)
        d1 = eps_y + s
        r1sq = ((eps_y - s) / d1) ** 2
        om1 = 4.0 * eps_y * s / (d1 * d1)
        d2 = y + s
        r2sq = ((y - s) / d2) ** 2
        om2 = 4.0 * y * s / (d2 * d2)
        g1 = _nb_log_term(r1sq, om1, emy, omy)
        g2 = _nb_log_term(r2sq, om2, emy, omy)
        return y * (g1 + g2)

    @njit(cache=True)
    def _nb_zero_pieces(kind, wp, ga, e0, we, zmode, y):
        if kind == KIND_DIELECTRIC:
            r1 = (e0 - 1.0) / (e0 + 1.0)
            r1sq = r1 * r1
            om1 = 1.0 - r1sq
        else:
            r1sq = 1.0
            om1 = 0.0
        if kind == KIND_IDEAL or zmode == ZMODE_UNIT_REFLECTION:
            r2sq = 1.0
            om2 = 0.0
        elif zmode == ZMODE_ZERO_TRANSVERSE:
            r2sq = 0.0
            om2 = 1.0
        elif zmode == ZMODE_RAW:
            if kind == KIND_PLASMA:
                s0 = math.sqrt(wp * wp + y * y)
                d = y + s0
                r2sq = ((y - s0) / d) ** 2
                om2 = 4.0 * y * s0 / (d * d)
            else:
                r2sq = 0.0
                om2 = 1.0
        else:  # ZMODE_MODIFIED_SDM
            big_a = _nb_big_a(kind, wp, ga, e0, we, y)
            se = math.sqrt(1.0 + big_a / (y * y))
            d = se + 1.0
            r2sq = ((se - 1.0) / d) ** 2
            om2 = 4.0 * se / (d * d)
        return r1sq, om1, r2sq, om2

    @njit(cache=True)
    def _nb_plate_zero_s(kind, wp, ga, e0, we, zmode, y):
        emy = math.exp(-y)
        omy = -math.expm1(-y)
        r1sq, om1, r2sq, om2 = _nb_zero_pieces(kind, wp, ga, e0, we, zmode, y)
        f1 = r1sq * emy / (omy + om1 * emy)
        f2 = r2sq * emy / (omy + om2 * emy)
        return y * y * (f1 + f2)

    @njit(cache=True)
    def _nb_sphere_zero_s(kind, wp, ga, e0, we, zmode, y):
        emy = math.exp(-y)
        omy = -math.expm1(-y)
        r1sq, om1, r2sq, om2 = _nb_zero_pieces(kind, wp, ga, e0, we, zmode, y)
        g1 = _nb_log_term(r1sq, om1, emy, omy)
        g2 = _nb_log_term(r2sq, om2, emy, omy)
        return y * (g1 + g2)

    @njit(cache=True)
    def _nb_plate_tail_kperp_s(kind, wp, ga, e0, we, xi, u):
        q = math.sqrt(xi * xi + u * u)
        emq = math.exp(-q)
        omq = -math.expm1(-q)
        if kind == KIND_IDEAL:
            return u * q * 2.0 * emq / omq
        big_a = _nb_big_a(kind, wp, ga, e0, we, xi)
        kk = math.sqrt(big_a + q * q)
        eps_q = q + big_a * q / (xi * xi)
        d1 = eps_q + kk
        r1sq = ((eps_q - kk) / d1) ** 2
        om1 = 4.0 * eps_q * kk / (d1 * d1)
        d2 = q + kk
        r2sq = ((q - kk) / d2) ** 2
        om2 = 4.0 * q * kk / (d2 * d2)
        f1 = r1sq * emq / (omq + om1 * emq)
        f2 = r2sq * emq / (omq + om2 * emq)
        return u * q * (f1 + f2)

    @njit(cache=True)
    def _nb_sphere_tail_kperp_s(kind, wp, ga, e0, we, xi, u):
        q = math.sqrt(xi * xi + u * u)
        emq = math.exp(-q)
        omq = -math.expm1(-q)
        if kind == KIND_IDEAL:
            return u * 2.0 * _nb_log_term(1.0, 0.0, emq, omq)
        big_a = _nb_big_a(kind, wp, ga, e0, we, xi)
        kk = math.sqrt(big_a + q * q)
        eps_q = q + big_a * q / (xi * xi)
        d1 = eps_q + kk
        r1sq = ((eps_q - kk) / d1) ** 2
        om1 = 4.0 * eps_q * kk / (d1 * d1)
        d2 = q + kk
        r2sq = ((q - kk) / d2) ** 2
        om2 = 4.0 * q * kk / (d2 * d2)
        g1 = _nb_log_term(r1sq, om1, emq, omq)
        g2 = _nb_log_term(r2sq, om2, emq, omq)
        return u * (g1 + g2)

    @njit(cache=True)
    def _nb_plate_tail(kind, wp, ga, e0, we, xi, y):
        out = np.empty(y.shape[0], dtype=np.float64)
        for i in range(y.shape[0]):
            out[i] = _nb_plate_tail_s(kind, wp, ga, e0, we, xi[i], y[i])
        return out

    @njit(cache=True)
    def _nb_sphere_tail(kind, wp, ga, e0, we, xi, y):
        out = np.empty(y.shape[0], dtype=np.float64)
        for i in range(y.shape[0]):
            out[i] = _nb_sphere_tail_s(kind, wp, ga, e0, we, xi[i], y[i])
        return out

    @njit(cache=True)
    def _nb_plate_zero(kind, wp, ga, e0, we, zmode, y):
        out = np.empty(y.shape[0], dtype=np.float64)
        for i in range(y.shape[0]):
            out[i] = _nb_plate_zero_s(kind, wp, ga, e0, we, zmode, y[i])
        return out

    @njit(cache=True)
    def _nb_sphere_zero(kind, wp, ga, e0, we, zmode, y):
        out = np.empty(y.shape[0], dtype=np.float64)
        for i in range(y.shape[0]):
            out[i] = _nb_sphere_zero_s(kind, wp, ga, e0, we, zmode, y[i])
        return out

    @njit(cache=True)
    def _nb_plate_tail_kperp(kind, wp, ga, e0, we, xi, u):
        out = np.empty(u.shape[0], dtype=np.float64)
        for i in range(u.shape[0]):
            out[i] = _nb_plate_tail_kperp_s(kind, wp, ga, e0, we, xi[i], u[i])
        return out

    @njit(cache=True)
    def _nb_sphere_tail_kperp(kind, wp, ga, e0, we, xi, u):
        out = np.empty(u.shape[0], dtype=np.float64)
        for i in range(u.shape[0]):
            out[i] = _nb_sphere_tail_kperp_s(kind, wp, ga, e0, we, xi[i], u[i])
        return out


# ----------------------------------------------------------------------
# Dispatchers.
# ----------------------------------------------------------------------

def _dispatch_xy(nb_func, np_func, kind, wp, ga, e0, we, xi, y):
    xi_b, y_b = np.broadcast_arrays(np.asarray(xi, dtype=np.float64),
                                    np.asarray(y, dtype=np.float64))
    if NUMBA_ENABLED:
        out = nb_func(int(kind), float(wp), float(ga), float(e0), float(we),
                      np.ascontiguousarray(xi_b).ravel(),
                      np.ascontiguousarray(y_b).ravel())
        return out.reshape(y_b.shape)
    return np_func(kind, wp, ga, e0, we, xi_b, y_b)


def plate_tail(kind, wp, ga, e0, we, xi, y):
    """Plate-pressure integrand ``y^2 (f1 + f2)`` at xi > 0; broadcasts."""
    if NUMBA_ENABLED:
        return _dispatch_xy(_nb_plate_tail, _np_plate_tail,
                            kind, wp, ga, e0, we, xi, y)
    return _dispatch_xy(None, _np_plate_tail, kind, wp, ga, e0, we, xi, y)


def sphere_tail(kind, wp, ga, e0, we, xi, y):
    """Free-energy/sphere integrand ``y (g1 + g2)`` at xi > 0; broadcasts."""
    if NUMBA_ENABLED:
        return _dispatch_xy(_nb_sphere_tail, _np_sphere_tail,
                            kind, wp, ga, e0, we, xi, y)
    return _dispatch_xy(None, _np_sphere_tail, kind, wp, ga, e0, we, xi, y)


def plate_tail_kperp(kind, wp, ga, e0, we, xi, u):
    """Plate integrand ``u q (f1 + f2)`` in the (xi, u) representation."""
    if NUMBA_ENABLED:
        return _dispatch_xy(_nb_plate_tail_kperp, _np_plate_tail_kperp,
                            kind, wp, ga, e0, we, xi, u)
    return _dispatch_xy(None, _np_plate_tail_kperp, kind, wp, ga, e0, we, xi, u)


def sphere_tail_kperp(kind, wp, ga, e0, we, xi, u):
    """Sphere integrand ``u (g1 + g2)`` in the (xi, u) representation."""
    if NUMBA_ENABLED:
        return _dispatch_xy(_nb_sphere_tail_kperp, _np_sphere_tail_kperp,
                            kind, wp, ga, e0, we, xi, u)
    return _dispatch_xy(None, _np_sphere_tail_kperp, kind, wp, ga, e0, we, xi, u)


def plate_zero(kind, wp, ga, e0, we, zmode, y):
    """l = 0 plate integrand ``y^2 (f1 + Z)`` under zero-mode ``zmode``."""
    y_a = np.asarray(y, dtype=np.float64)
    if NUMBA_ENABLED:
        out = _nb_plate_zero(int(kind), float(wp), float(ga), float(e0),
                             float(we), int(zmode),
                             np.ascontiguousarray(y_a).ravel())
        return out.reshape(y_a.shape)
    return _np_plate_zero(kind, wp, ga, e0, we, zmode, y_a)


def sphere_zero(kind, wp, ga, e0, we, zmode, y):
    """l = 0 sphere integrand ``y (g1 + Z)`` under zero-mode ``zmode``."""
    y_a = np.asarray(y, dtype=np.float64)
    if NUMBA_ENABLED:
        out = _nb_sphere_zero(int(kind), float(wp), float(ga), float(e0),
                              float(we), int(zmode),
                              np.ascontiguousarray(y_a).ravel())
        return out.reshape(y_a.shape)
    return _np_sphere_zero(kind, wp, ga, e0, we, zmode, y_a)


def zero_pieces(kind, wp, ga, e0, we, zmode, y):
    """``(r1_sq, 1 - r1_sq, r2_sq, 1 - r2_sq)`` at the ``l = 0`` point.

    Diagnostic entry point for inspecting what a prescription feeds the
    zero-frequency term; the hot-path kernels embed the same algebra.
    Always the vectorized implementation.
    """
    y_a = np.asarray(y, dtype=np.float64)
    return _np_zero_pieces(kind, wp, ga, e0, we, zmode, y_a)
