import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fraclap.gegenbauer import (
    GegenbauerCoeffs,
    differentiate_coeffs,
    forward_transform,
)
from fraclap.quadrature import gauss_jacobi
from fraclap.sobolev_metrics import (
    ConvergenceReport,
    coefficient_decay_check,
    error_between,
    fit_order,
    hrs_norm,
    is_super_algebraic,
    make_report,
)
from fraclap.specfun import DomainError

IV = (-1.0, 1.0)


def coeffs(vec, s=0.5, interval=IV):
    return GegenbauerCoeffs(s, interval, np.asarray(vec, dtype=float))


def test_hrs_norm_examples():
    c = coeffs([3.0, 4.0])
    assert hrs_norm(c, 0.0) == pytest.approx(5.0, rel=1e-14)
    e3 = coeffs([0.0, 0.0, 0.0, 1.0])
    assert hrs_norm(e3, 1.0) == pytest.approx(math.sqrt(10.0), rel=1e-14)
    assert hrs_norm(e3, 2.0) == pytest.approx(10.0, rel=1e-14)
    both = coeffs([1.0, 0.0, 0.0, 1.0])
    assert hrs_norm(both, 1.0) == pytest.approx(math.sqrt(11.0), rel=1e-14)
    with pytest.raises(DomainError):
        hrs_norm(c, -1.0)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.floats(min_value=-10, max_value=10), min_size=1, max_size=20),
    st.floats(min_value=0, max_value=3),
    st.floats(min_value=0, max_value=3),
)
def test_hrs_norm_monotone_in_r(vec, r1, r2):
    c = coeffs(vec)
    lo, hi = sorted((r1, r2))
    assert hrs_norm(c, lo) <= hrs_norm(c, hi) + 1e-12


def test_error_between():
    c1 = coeffs([1.0, 2.0])
    assert error_between(c1, c1, 0.0) == 0.0
    z = coeffs([0.0])
    assert error_between(c1, z, 1.5) == pytest.approx(hrs_norm(c1, 1.5), rel=1e-14)
    e5 = coeffs([0, 0, 0, 0, 0, 1.0])
    short = coeffs([0.0, 0.0])
    assert error_between(e5, short, 0.0) == pytest.approx(1.0, rel=1e-14)
    with pytest.raises(ValueError):
        error_between(c1, coeffs([1.0], s=0.3), 0.0)
    with pytest.raises(ValueError):
        error_between(c1, coeffs([1.0], interval=(0.0, 1.0)), 0.0)


def test_fit_order_exact_power_laws():
    ns = np.array([8, 16, 32, 64, 128])
    assert fit_order(ns, ns**-1.5) == pytest.approx(1.5, abs=1e-10)
    assert fit_order(ns, 3.0 * ns**-2.0) == pytest.approx(2.0, abs=1e-10)
    with pytest.raises(ValueError):
        fit_order(ns[:2], [1.0, 0.5])
    with pytest.raises(ValueError):
        fit_order(ns, np.ones(5))


def test_fit_order_recovers_noisy_exponent():
    rng = np.random.default_rng(2)
    ns = 2 ** np.arange(3, 13)  # three decades
    errs = 5.0 * ns**-1.7 * np.exp(0.02 * rng.standard_normal(ns.size))
    assert fit_order(ns, errs) == pytest.approx(1.7, abs=0.05)


def test_super_algebraic_detection():
    ns = 2 ** np.arange(3, 10)
    assert is_super_algebraic(ns, 2.0**-ns)
    assert not is_super_algebraic(ns, ns**-2.0)


def test_decay_check_spike():
    vec = np.zeros(20)
    vec[10] = 1.0
    diag = coefficient_decay_check(coeffs(vec))
    assert diag.flag == "no-fit" and diag.exponent is None


def test_decay_check_spectrally_exact():
    # transform of a degree-5 polynomial at high resolution: tail is noise
    s = 0.4
    n = 40
    rule = gauss_jacobi(n, s)
    vals = np.polynomial.polynomial.polyval(rule.nodes, np.array([1.0, -1, 0.5, 0, 2, 0.3]))
    c = forward_transform(vals, rule, s)
    diag = coefficient_decay_check(c)
    assert diag.flag == "spectrally-exact"


@pytest.mark.parametrize("s", [0.25, 0.5, 0.75])
def test_decay_of_absx_coefficients(s):
    n = 256
    rule = gauss_jacobi(n, s)
    c = forward_transform(np.abs(rule.nodes), rule, s)
    diag = coefficient_decay_check(c)
    assert diag.flag == "ok"
    assert diag.exponent >= 1.3


def test_decay_check_requires_length():
    with pytest.raises(ValueError):
        coefficient_decay_check(coeffs(np.ones(8)))


def test_norm_equivalence_first_order():
    # sum |v_j|^2 (1+j^2) compares against ||v||^2 + ||v'||^2 within a
    # moderate constant, stable when the resolution doubles
    s = 0.3
    f = lambda t: np.exp(t) * np.cos(2.0 * t)
    ratios = []
    for n in (24, 48):
        rule = gauss_jacobi(n, s)
        c = forward_transform(f(rule.nodes), rule, s)
        dc = differentiate_coeffs(c, 1)
        lhs = hrs_norm(c, 1.0) ** 2
        rhs = hrs_norm(c, 0.0) ** 2 + float(np.sum(dc.coeffs**2))
        ratios.append(lhs / rhs)
    for r in ratios:
        assert 0.25 <= r <= 4.0
    assert ratios[0] == pytest.approx(ratios[1], rel=1e-6)


def test_report_assembly():
    rows = [(8, 1e-2, 2e-2, 0.1), (16, 2.5e-3, 8e-3, 0.2), (32, 6e-4, 3e-3, 0.4)]
    rep = make_report(0.5, ((-1.0, 1.0),), "absx", rows, 64)
    assert rep.rows[0][0] == 8
    assert rep.order_l2 == pytest.approx(2.0, abs=0.1)
    assert not rep.super_algebraic
    with pytest.raises(ValueError):
        ConvergenceReport(0.5, ((-1.0, 1.0),), "absx", ((16, 1e-3, 1e-3, 0.1), (8, 1e-2, 1e-2, 0.1)), 64)
