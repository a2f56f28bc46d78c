"""Adaptive quadrature and series primitives for Lifshitz-type integrals.

The integrators here are built for smooth integrands that decay at least
like ``e^{-y} * poly(y)`` at large argument, evaluated many times with
slightly different parameters.  Two features are tailored to that use:

* **Vector integrands.**  ``f(x)`` may return shape ``(n,)`` or ``(m, n)``
  for input ``x`` of shape ``(n,)``; with ``(m, n)`` all ``m`` component
  integrals are computed on one shared, adaptively refined panel set.
  This batches whole blocks of Matsubara terms into single kernel sweeps.
* **Endpoint substitution.**  ``integrate_semi_infinite(..., sqrt_lower=
  True)`` integrates in ``u = sqrt(y - lower)``, which turns half-integer
  endpoint behavior (``y^{3/2}``-type integrands, ``y log y`` terms) into
  analytic ones.

Panels are scored with the embedded Gauss 7 / Kronrod 15 pair; every
panel whose error exceeds ``allowance / (2 * n_panels)`` is bisected, and
panel sums are accumulated in ascending-edge order, so results are
deterministic for fixed inputs.  The semi-infinite range is truncated at
``lower + tail_length + 3 log1p(lower)``, ample for ``e^{-y}``-decaying
integrands at the supported tolerances.

Error estimates are conservative (raw ``|K15 - G7|`` per panel); on
success the reported estimate is below the requested allowance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConvergenceError",
    "QuadratureSpec",
    "IntegralResult",
    "SeriesResult",
    "DEFAULT_SPEC",
    "integrate_interval",
    "integrate_semi_infinite",
    "sum_until_converged",
]


class ConvergenceError(RuntimeError):
    """Raised when an integral or series fails to reach tolerance.

    Attributes
    ----------
    best : float or ndarray or None
        Best estimate available at the point of failure.
    err_estimate : float or ndarray or None
        Error estimate attached to ``best``.
    """

    def __init__(self, message, best=None, err_estimate=None):
        super().__init__(message)
        self.best = best
        self.err_estimate = err_estimate


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budgets for the adaptive integrators.

    Parameters
    ----------
    rel_tol : float
        Relative tolerance, must lie strictly inside (1e-14, 1e-2).
    abs_tol : float
        Absolute floor on the allowance (useful for components whose
        true value is zero or underflows).
    max_panels : int
        Hard cap on the number of panels per integral.
    tail_length : float
        Truncation length for semi-infinite ranges (see module notes).
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-300
    max_panels: int = 4096
    tail_length: float = 60.0

    def __post_init__(self):
        if not (1e-14 < self.rel_tol < 1e-2):
            raise ValueError(
                f"rel_tol must lie in (1e-14, 1e-2), got {self.rel_tol!r}")
        if not (self.abs_tol >= 0.0):
            raise ValueError(f"abs_tol must be >= 0, got {self.abs_tol!r}")
        if self.max_panels < 8:
            raise ValueError(f"max_panels must be >= 8, got {self.max_panels!r}")
        if not (self.tail_length > 0.0):
            raise ValueError(
                f"tail_length must be > 0, got {self.tail_length!r}")


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class IntegralResult:
    """Value and diagnostics of one (possibly vector-valued) integral."""

    value: object  # float or ndarray (m,)
    err_estimate: object  # float or ndarray (m,)
    n_panels: int
    neval: int


@dataclass(frozen=True)
class SeriesResult:
    """Partial sum of a convergent series with the index reached."""

    value: float
    n_terms: int
    last_term: float


# 15-point Kronrod extension of 7-point Gauss (abscissae/weights as in
# classic QUADPACK dqk15; verified by polynomial-exactness tests).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Ascending node order: [-x0 ... -x6, 0, x6 ... x0].
_NODES = np.concatenate([-_XGK[:7], _XGK[7:8], _XGK[6::-1]])
_WK_FULL = np.concatenate([_WGK[:7], _WGK[7:8], _WGK[6::-1]])
# Gauss points sit at ascending indices 1, 3, 5, 7, 9, 11, 13.
_WG_FULL = np.concatenate([_WG[:3], _WG[3:4], _WG[2::-1]])
_GAUSS = slice(1, 14, 2)

# Initial panel fractions, denser toward the lower endpoint where the
# Lifshitz integrands concentrate.
_INITIAL_FRACTIONS = np.array(
    [0.0, 1 / 128, 1 / 64, 1 / 32, 1 / 16, 1 / 8, 1 / 4, 1 / 2, 1.0])

_MAX_ROUNDS = 100


def _eval_panels(f, lefts, rights):
    """Evaluate K15/G7 on each [left, right]; returns (vk, ve, neval, vec)."""
    half = 0.5 * (rights - lefts)
    mid = 0.5 * (rights + lefts)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    raw = np.asarray(f(x.ravel()), dtype=np.float64)
    vector = raw.ndim > 1
    vals = raw if vector else raw[None, :]
    m = vals.shape[0]
    v = vals.reshape(m, lefts.size, 15)
    vk = (v @ _WK_FULL) * half[None, :]
    vg = (v[:, :, _GAUSS] @ _WG_FULL) * half[None, :]
    return vk, np.abs(vk - vg), x.size * m, vector


def _adaptive(f, edges, spec):
    """Adaptive refinement over initial panel ``edges`` (ascending)."""
    lefts = edges[:-1].astype(np.float64)
    rights = edges[1:].astype(np.float64)
    span = float(edges[-1] - edges[0])
    vk, ve, neval, vector = _eval_panels(f, lefts, rights)

    for _ in range(_MAX_ROUNDS):
        order = np.argsort(lefts, kind="stable")
        lefts, rights = lefts[order], rights[order]
        vk, ve = vk[:, order], ve[:, order]
        value = vk.sum(axis=1)
        err = ve.sum(axis=1)
        allow = np.maximum(spec.rel_tol * np.abs(value), spec.abs_tol)
        if np.all(err <= allow):
            return value, err, lefts.size, neval, vector

        n_panels = lefts.size
        threshold = allow / (2.0 * n_panels)
        bad = (ve > threshold[:, None]).any(axis=0)
        splittable = (rights - lefts) > span * 1e-15
        bad &= splittable
        if not bad.any():
            raise ConvergenceError(
                "quadrature stalled: remaining error "
                f"{float(np.max(err - allow)):.3e} above allowance on "
                "panels too narrow to split",
                best=value if vector else float(value[0]),
                err_estimate=err if vector else float(err[0]))
        if n_panels + int(bad.sum()) > spec.max_panels:
            raise ConvergenceError(
                f"quadrature exceeded max_panels={spec.max_panels}",
                best=value if vector else float(value[0]),
                err_estimate=err if vector else float(err[0]))

        mids = 0.5 * (lefts[bad] + rights[bad])
        child_l = np.concatenate([lefts[bad], mids])
        child_r = np.concatenate([mids, rights[bad]])
        vk_new, ve_new, ne, _ = _eval_panels(f, child_l, child_r)
        neval += ne
        keep = ~bad
        lefts = np.concatenate([lefts[keep], child_l])
        rights = np.concatenate([rights[keep], child_r])
        vk = np.concatenate([vk[:, keep], vk_new], axis=1)
        ve = np.concatenate([ve[:, keep], ve_new], axis=1)

    raise ConvergenceError(
        f"quadrature did not converge within {_MAX_ROUNDS} refinement rounds")


def _package(value, err, n_panels, neval, vector):
    if vector:
        return IntegralResult(value=value, err_estimate=err,
                              n_panels=n_panels, neval=neval)
    return IntegralResult(value=float(value[0]), err_estimate=float(err[0]),
                          n_panels=n_panels, neval=neval)


def integrate_interval(f, a, b, spec=DEFAULT_SPEC):
    """Integrate ``f`` over the finite interval [a, b].

    Parameters
    ----------
    f : callable
        Maps ``x`` of shape ``(n,)`` to ``(n,)`` or ``(m, n)`` values.
    a, b : float
        Interval endpoints, ``a < b``.
    spec : QuadratureSpec
        Tolerances and budgets.

    Returns
    -------
    IntegralResult
        ``value``/``err_estimate`` are floats for ``(n,)`` integrands and
        shape-(m,) arrays for ``(m, n)`` integrands.
    """
    if not (b > a):
        raise ValueError(f"need b > a, got a={a!r}, b={b!r}")
    edges = a + (b - a) * np.linspace(0.0, 1.0, 9)
    return _package(*_adaptive(f, edges, spec))


def integrate_semi_infinite(f, lower, spec=DEFAULT_SPEC, sqrt_lower=False):
    """Integrate ``f`` over [lower, oo) for integrands decaying like e^-y.

    Parameters
    ----------
    f : callable
        Maps ``x`` of shape ``(n,)`` to ``(n,)`` or ``(m, n)`` values.
        Must decay at least like ``e^{-x} * poly(x)``.
    lower : float
        Lower limit, >= 0.
    spec : QuadratureSpec
        Tolerances and budgets; ``spec.tail_length`` sets the truncation
        point ``lower + tail_length + 3 log1p(lower)``.
    sqrt_lower : bool
        If true, substitute ``x = lower + u^2`` (integrating
        ``2 u f(lower + u^2)`` in ``u``), which restores full order for
        integrands with half-integer powers or logarithms at ``lower``.

    Returns
    -------
    IntegralResult
    """
    if lower < 0.0 or not math.isfinite(lower):
        raise ValueError(f"lower limit must be finite and >= 0, got {lower!r}")
    upper = lower + spec.tail_length + 3.0 * math.log1p(lower)
    if sqrt_lower:
        b = math.sqrt(upper - lower)

        def g(u):
            vals = np.asarray(f(lower + u * u), dtype=np.float64)
            return vals * (2.0 * u)

        edges = b * _INITIAL_FRACTIONS
        return _package(*_adaptive(g, edges, spec))
    edges = lower + (upper - lower) * _INITIAL_FRACTIONS
    return _package(*_adaptive(f, edges, spec))


def sum_until_converged(term, rel_threshold=1e-12, run_length=3,
                        max_terms=10**6, start=1):
    """Sum ``term(l)`` for l = start, start+1, ... until converged.

    Convergence rule: ``run_length`` consecutive terms each contribute
    less than ``rel_threshold`` of the running total (in magnitude).

    Parameters
    ----------
    term : callable
        Maps the integer index ``l`` to a float term.
    rel_threshold : float
        Relative contribution threshold.
    run_length : int
        Number of consecutive below-threshold terms required.
    max_terms : int
        Hard cap on the number of terms; exceeded -> ConvergenceError
        carrying the best partial sum.
    start : int
        First index.

    Returns
    -------
    SeriesResult
    """
    total = 0.0
    streak = 0
    last = 0.0
    for offset in range(max_terms):
        l = start + offset
        last = float(term(l))
        total += last
        if abs(last) <= rel_threshold * abs(total):
            streak += 1
            if streak >= run_length:
                return SeriesResult(value=total, n_terms=l, last_term=last)
        else:
            streak = 0
    raise ConvergenceError(
        f"series did not converge within {max_terms} terms "
        f"(last term {last:.3e})", best=total)
