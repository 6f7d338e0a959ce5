import math

import numpy as np
import pytest
import scipy.special
from hypothesis import given, strategies as st

from oscquad import bernoulli as bn
from oscquad.exceptions import DegreeOverflowError
from oscquad.functions import adaptive_integrate, make_bernoulli, reference_integral


@pytest.mark.parametrize("m,x,expected", [(0, 0.7, 1.0), (1, 0.25, -0.25), (2, 0.0, 1 / 12)])
def test_bernoulli_eval_examples(m, x, expected):
    assert bn.bernoulli_eval(m, x) == pytest.approx(expected, abs=1e-15)


def test_fourier_partial_examples():
    assert abs(bn.bernoulli_fourier_partial(2, 0.0, 10 ** 5) - 1 / 12) < 1e-6
    assert abs(bn.bernoulli_fourier_partial(1, 0.5, 10 ** 4)) < 1e-4
    assert abs(bn.bernoulli_fourier_partial(3, 0.3, 10 ** 3) - bn.bernoulli_eval(3, 0.3)) < 1e-7


def test_degree_cap():
    with pytest.raises(DegreeOverflowError):
        bn.bernoulli_eval(bn.MAX_DEGREE + 1, 0.5)


def test_exponential_integrals():
    assert bn.osc_integral_exponential(3, 3) == 1
    assert bn.osc_integral_exponential(3, 5) == 0
    assert bn.osc_integral_exponential(0, 0) == 1


def test_bernoulli_integral_examples():
    assert bn.osc_integral_bernoulli(0, 4) == 0
    assert bn.osc_integral_bernoulli(1, 1) == pytest.approx(1j / (2 * math.pi), abs=1e-16)
    assert bn.osc_integral_bernoulli(1, 2) == pytest.approx(1 / (4 * math.pi ** 2), abs=1e-16)


@pytest.mark.parametrize("k", [k for k in range(-5, 6) if k])
@pytest.mark.parametrize("m", range(1, 9))
def test_bernoulli_integral_vs_quadrature(k, m):
    ref = reference_integral(make_bernoulli(m), k).value
    assert abs(ref - bn.osc_integral_bernoulli(k, m)) < 1e-11


def test_centered_monomial_examples():
    assert bn.osc_integral_centered_monomial(0, 0) == pytest.approx(1)
    assert abs(bn.osc_integral_centered_monomial(0, 1)) < 1e-16
    ref = adaptive_integrate(lambda x: (x - 0.5) ** 3 / 6 * np.exp(-4j * np.pi * x), 0, 1,
                             tol=1e-14, max_width=1 / 8).value
    assert abs(ref - bn.osc_integral_centered_monomial(2, 3)) < 1e-12


@given(st.integers(0, 30))
def test_boundary_jump(m):
    jump = bn.bernoulli_eval(m, 1.0) - bn.bernoulli_eval(m, 0.0)
    assert jump == pytest.approx(1.0 if m == 1 else 0.0, abs=1e-13)


@given(st.integers(1, 30), st.integers(0, 30))
def test_derivative_chain(m, ell):
    ell = min(ell, m)
    c = bn.bernoulli_coefficients(m)
    d = np.polynomial.polynomial.polyder(c, ell) if ell else c
    np.testing.assert_allclose(d, bn.bernoulli_coefficients(m - ell), rtol=1e-12, atol=0)


@given(st.integers(1, 40))
def test_zero_mean(m):
    c = bn.bernoulli_coefficients(m)
    assert abs(sum(c[p] / (p + 1) for p in range(m + 1))) < 1e-14


@pytest.mark.parametrize("m", range(1, 15))
def test_even_values_vs_scipy_zeta(m):
    identity = 2 * (-1) ** (m + 1) * scipy.special.zeta(2 * m) / (2 * math.pi) ** (2 * m)
    assert abs(bn.bernoulli_number(2 * m) - identity) < 1e-12
    assert bn.bernoulli_number(2 * m + 1) == 0


def test_zeta_examples():
    assert bn.zeta_even(2) == pytest.approx(math.pi ** 2 / 6, rel=1e-15)
    assert bn.zeta_even(4) == pytest.approx(math.pi ** 4 / 90, rel=1e-15)
    direct = float(np.sum(np.arange(1, 10 ** 6 + 1, dtype=float) ** -3.0)) + 0.5e-12
    assert abs(bn.zeta(3) - direct) < 1e-12


@given(st.floats(1.05, 30.0), st.floats(0.1, 50.0))
def test_hurwitz_vs_scipy(x, q):
    ours = bn.hurwitz_zeta(x, q)
    ref = scipy.special.zeta(x, q)
    assert ours == pytest.approx(ref, rel=1e-12)


@given(st.integers(-50, 50), st.integers(0, 40))
def test_two_pi_ik_power_matches_complex_pow(k, m):
    if k == 0:
        return
    z = (2j * math.pi * k) ** m
    assert bn.two_pi_ik_power(k, m) == pytest.approx(z, rel=1e-12)
