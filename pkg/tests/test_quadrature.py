"""Closed-form corpus and behavioural checks for the adaptive integrators.

Every integral here has an exact value (gamma/zeta closed forms or
elementary antiderivatives), so the tests check three things at once:
accuracy at the requested tolerance, honesty of the returned error
estimate, and bitwise determinism of repeated evaluation.
"""

import math

import numpy as np
import pytest
from scipy import integrate as scipy_integrate

from casimir.constants import ZETA3
from casimir.quadrature import (
    ConvergenceError,
    QuadratureSpec,
    integrate_interval,
    integrate_semi_infinite,
    sum_until_converged,
)

EULER_GAMMA = 0.5772156649015328606


# ----------------------------------------------------------------------
# Semi-infinite corpus: (name, integrand, lower, sqrt_lower, exact)
# ----------------------------------------------------------------------

def _bose(power):
    def f(y):
        return y ** power / np.expm1(y)
    return f


def _log_bose(power):
    def f(y):
        # y^power * ln(1 - e^-y); endpoint-safe via log(-expm1).
        return y ** power * np.log(-np.expm1(-y))
    return f


SEMI_INFINITE_CASES = [
    ("exp", lambda y: np.exp(-y), 0.0, False, 1.0),
    ("y_exp", lambda y: y * np.exp(-y), 0.0, False, 1.0),
    ("y2_exp", lambda y: y * y * np.exp(-y), 0.0, False, 2.0),
    ("y5_exp", lambda y: y ** 5 * np.exp(-y), 0.0, False, 120.0),
    ("shifted_exp", lambda y: np.exp(-y), 3.0, False, math.exp(-3.0)),
    ("bose_1", _bose(1), 0.0, False, math.pi ** 2 / 6.0),
    ("bose_2", _bose(2), 0.0, False, 2.0 * ZETA3),
    ("bose_3", _bose(3), 0.0, False, math.pi ** 4 / 15.0),
    ("log_bose_1", _log_bose(1), 0.0, True, -ZETA3),
    ("log_bose_2", _log_bose(2), 0.0, True, -math.pi ** 4 / 45.0),
    ("sqrt_exp", lambda y: np.sqrt(y) * np.exp(-y), 0.0, True,
     math.sqrt(math.pi) / 2.0),
    ("y15_exp", lambda y: y ** 1.5 * np.exp(-y), 0.0, True,
     0.75 * math.sqrt(math.pi)),
    ("gauss", lambda y: np.exp(-y * y), 0.0, False,
     math.sqrt(math.pi) / 2.0),
    ("lorentz_exp", lambda y: np.exp(-y) / (1.0 + y * y), 0.0, False,
     0.6214496242358276),  # scipy.integrate.quad reference
]


@pytest.mark.parametrize(
    "name,f,lower,sqrt_lower,exact",
    SEMI_INFINITE_CASES,
    ids=[case[0] for case in SEMI_INFINITE_CASES])
def test_semi_infinite_corpus(name, f, lower, sqrt_lower, exact):
    spec = QuadratureSpec(rel_tol=1e-12)
    res = integrate_semi_infinite(f, lower, spec, sqrt_lower=sqrt_lower)
    assert res.value == pytest.approx(exact, rel=1e-10)


@pytest.mark.parametrize(
    "name,f,lower,sqrt_lower,exact",
    SEMI_INFINITE_CASES,
    ids=[case[0] for case in SEMI_INFINITE_CASES])
def test_error_estimate_is_honest(name, f, lower, sqrt_lower, exact):
    # The true error must not exceed a small multiple of the estimate
    # (plus an absolute floor for roundoff on O(100) values).
    spec = QuadratureSpec(rel_tol=1e-10)
    res = integrate_semi_infinite(f, lower, spec, sqrt_lower=sqrt_lower)
    true_err = abs(res.value - exact)
    floor = 1e-14 * max(1.0, abs(exact))
    assert true_err <= 3.0 * float(res.err_estimate) + floor


def test_log_endpoint_with_substitution():
    # int_0^inf ln(y) e^-y dy = -euler_gamma; the substitution makes the
    # logarithmic endpoint integrable to near full precision.
    def f(y):
        return np.where(y > 0.0, np.log(np.maximum(y, 1e-300)), 0.0) \
            * np.exp(-y)

    res = integrate_semi_infinite(f, 0.0, QuadratureSpec(rel_tol=1e-12),
                                  sqrt_lower=True)
    assert res.value == pytest.approx(-EULER_GAMMA, abs=3e-9)


def test_vector_integrand_matches_scalar_rows():
    spec = QuadratureSpec(rel_tol=1e-12)

    def rows(y):
        return np.stack([np.exp(-y), y * np.exp(-y), y * y / np.expm1(y)])

    res = integrate_semi_infinite(rows, 0.0, spec)
    values = np.asarray(res.value)
    assert values.shape == (3,)
    assert values[0] == pytest.approx(1.0, rel=1e-10)
    assert values[1] == pytest.approx(1.0, rel=1e-10)
    assert values[2] == pytest.approx(2.0 * ZETA3, rel=1e-10)
    assert np.asarray(res.err_estimate).shape == (3,)


def test_interval_elementary():
    spec = QuadratureSpec(rel_tol=1e-12)
    res = integrate_interval(lambda x: np.sin(x), 0.0, math.pi, spec)
    assert res.value == pytest.approx(2.0, rel=1e-12)
    res = integrate_interval(lambda x: 1.0 / x, 1.0, math.e, spec)
    assert res.value == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("degree", [0, 5, 12, 20])
def test_interval_polynomial_exactness(degree):
    # The 15-point Kronrod rule is exact through degree 22, so low-degree
    # monomials come back at machine precision with the initial panels.
    res = integrate_interval(lambda x, d=degree: x ** d, 0.0, 1.0,
                             QuadratureSpec(rel_tol=1e-12))
    assert res.value == pytest.approx(1.0 / (degree + 1), rel=5e-15)


def test_interval_weight_sum():
    # Integrating the constant 1 over [-1, 1] exercises the weight sum.
    res = integrate_interval(lambda x: np.ones_like(x), -1.0, 1.0,
                             QuadratureSpec(rel_tol=1e-12))
    assert res.value == pytest.approx(2.0, rel=1e-15)


def test_matches_scipy_quad_on_nontrivial_integrand():
    def f(y):
        return y * y * np.exp(-y) / (1.0 + y * y)

    res = integrate_semi_infinite(f, 0.0, QuadratureSpec(rel_tol=1e-12))
    ref, _ = scipy_integrate.quad(lambda y: y * y * math.exp(-y)
                                  / (1.0 + y * y), 0.0, np.inf)
    assert res.value == pytest.approx(ref, rel=1e-10)


def test_tolerance_scaling():
    exact = math.pi ** 4 / 15.0
    loose = integrate_semi_infinite(_bose(3), 0.0,
                                    QuadratureSpec(rel_tol=1e-6))
    tight = integrate_semi_infinite(_bose(3), 0.0,
                                    QuadratureSpec(rel_tol=1e-12))
    assert abs(loose.value - exact) <= 1e-5 * exact
    assert abs(tight.value - exact) <= 1e-10 * exact
    assert abs(tight.value - exact) <= abs(loose.value - exact) + 1e-13
    assert tight.neval >= loose.neval


def test_bitwise_determinism():
    spec = QuadratureSpec(rel_tol=1e-10)
    first = integrate_semi_infinite(_bose(2), 0.0, spec)
    second = integrate_semi_infinite(_bose(2), 0.0, spec)
    assert first.value == second.value
    assert first.neval == second.neval


def test_diagnostics_are_populated():
    res = integrate_semi_infinite(_bose(2), 0.0, QuadratureSpec())
    assert res.n_panels >= 8
    # neval counts every 15-point panel evaluation, including parents
    # that were later bisected, so it is at least 15 * final panel count.
    assert res.neval >= 15 * res.n_panels
    assert res.neval % 15 == 0


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(rel_tol=1e-15)
    with pytest.raises(ValueError):
        QuadratureSpec(rel_tol=0.1)
    with pytest.raises(ValueError):
        QuadratureSpec(abs_tol=-1.0)
    with pytest.raises(ValueError):
        QuadratureSpec(max_panels=2)
    with pytest.raises(ValueError):
        QuadratureSpec(tail_length=0.0)
    with pytest.raises(ValueError):
        integrate_semi_infinite(_bose(1), -0.5)


# ----------------------------------------------------------------------
# Series summation
# ----------------------------------------------------------------------

def test_series_zeta4():
    # A pure power-law tail is the worst case for a term-size stop rule:
    # stopping when terms fall below 1e-12 of the total still leaves a
    # truncation remainder ~ l_stop/3 times the last term (~3e-10 here).
    # The physical series have exponentially damped tails and do better.
    res = sum_until_converged(lambda l: 1.0 / l ** 4)
    assert res.value == pytest.approx(math.pi ** 4 / 90.0, rel=1e-9)


def test_series_geometric():
    res = sum_until_converged(lambda l: 0.5 ** l)
    assert res.value == pytest.approx(1.0, rel=1e-12)
    assert res.n_terms < 100


def test_series_start_index():
    res = sum_until_converged(lambda l: 0.5 ** l, start=0)
    assert res.value == pytest.approx(2.0, rel=1e-12)


def test_series_alternating():
    res = sum_until_converged(lambda l: (-1.0) ** (l + 1) / l ** 3)
    assert res.value == pytest.approx(0.75 * ZETA3, rel=1e-9)


def test_series_cap_raises_with_partial_sum():
    with pytest.raises(ConvergenceError) as excinfo:
        sum_until_converged(lambda l: 1.0 / l, max_terms=1000)
    partial = excinfo.value.best
    assert partial == pytest.approx(sum(1.0 / l for l in range(1, 1001)),
                                    rel=1e-12)
