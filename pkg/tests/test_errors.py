import math

import numpy as np
import pytest
import scipy.special
from hypothesis import given, strategies as st

from oscquad import errors as ea
from oscquad.adversary import lower_bound_constant
from oscquad.exceptions import InvalidBudgetError, PreconditionError

TWO_PI = 2 * math.pi


def test_initial_error_examples():
    assert ea.initial_error(1, 1, True).value == pytest.approx(1 / TWO_PI, rel=1e-15)
    assert ea.initial_error(1, 1, False).value == pytest.approx(math.sqrt(2) / TWO_PI, rel=1e-15)
    assert ea.initial_error(1, 1, False).value == pytest.approx(0.2250791, abs=1e-7)
    for s in (1, 3, math.inf):
        for periodic in (True, False):
            assert ea.initial_error(0, s, periodic).value == 1


def test_beta_formula_vs_direct_sum():
    # beta^2 = 1 + sum_{l=1}^{s-1} x^-2l + ... from the representer expansion
    for k in (1, 2, 7):
        for s in (2, 3, 5):
            x = TWO_PI * k
            beta2 = sum(x ** (-2 * l) for l in range(s - 1)) + 2 * x ** (2 - 2 * s)
            assert ea.initial_error(k, s, False).beta == pytest.approx(math.sqrt(beta2), rel=1e-14)


def test_qmc_examples():
    assert ea.qmc_worst_case_error(1, 0, 1).value == pytest.approx(1 / math.sqrt(12), rel=1e-14)
    expected = math.sqrt(1 + (2 * math.pi ** 2 / 6 - 1) / (4 * math.pi ** 2))
    assert ea.qmc_worst_case_error(1, 1, 1).value == pytest.approx(expected, rel=1e-13)


def _qmc_scipy(n, k, s):
    # independent route: a finite head plus scipy Hurwitz zeta tails
    J = 50 + abs(k)
    total = 0.0
    for j in range(1, J + 1):
        for m in (j * n + k, j * n - k):
            total += 1.0 / max(1.0, (TWO_PI * abs(m)) ** (2 * s))
    c = TWO_PI ** (-2 * s) * n ** (-2 * s)
    total += c * (scipy.special.zeta(2 * s, J + 1 + k / n) + scipy.special.zeta(2 * s, J + 1 - k / n))
    return math.sqrt(total)


@given(st.integers(1, 40), st.integers(-10, 10), st.integers(1, 4))
def test_qmc_vs_scipy_route(n, k, s):
    rep = ea.qmc_worst_case_error(n, k, s)
    assert rep.kind == "exact"
    assert rep.value == pytest.approx(_qmc_scipy(n, k, s), rel=1e-12)
    assert rep.tail_bound <= 1e-13 * rep.value


def test_damping_examples():
    a, rep = ea.optimal_damping(1, 1, 1)
    assert a == pytest.approx(0.0233818, abs=1e-7)
    e0 = ea.initial_error(1, 1, True).value
    eq = ea.qmc_worst_case_error(1, 1, 1).value
    assert rep.value == pytest.approx(e0 * eq / math.hypot(e0, eq), rel=1e-14)
    assert rep.value == pytest.approx(0.1572825, abs=1e-6)
    assert ea.optimal_damping(5000, 3, 2)[0] > 0.999


@given(st.integers(1, 20), st.integers(-5, 5), st.integers(1, 3), st.floats(0, 1.5))
def test_damping_optimality(n, k, s, a):
    _, rep = ea.optimal_damping(n, k, s)
    assert ea.damped_error(n, k, s, a) >= rep.value - 1e-15


def test_modified_qmc_examples():
    assert ea.modified_qmc_error(3, 2, 1).value == pytest.approx(1 / (4 * math.pi), rel=1e-15)
    v = ea.modified_qmc_error(4, 2, 1).value
    assert v == pytest.approx(ea.qmc_worst_case_error(4, 2, 1).value)
    assert v <= 2 / TWO_PI * 1 / (4 - 2)
    assert ea.modified_qmc_error(0, 0, 2).value == 1


@given(st.integers(0, 300), st.integers(-20, 20), st.integers(1, 4))
def test_modified_qmc_uniform_bound(n, k, s):
    if n + abs(k) == 0:
        return
    assert ea.modified_qmc_error(n, k, s).value <= ea.modified_qmc_bound(n, k, s).value


def test_minimal_error_examples():
    _, c1 = lower_bound_constant(1)
    lo, up = ea.minimal_error_bounds(10, 0, 1, True)
    assert lo.value == pytest.approx(c1 / 10)
    assert lo.value == pytest.approx(1.187e-3, abs=1e-6)
    assert up.value == pytest.approx(3 / TWO_PI * 2 / 10)
    exact = ea.modified_qmc_error(10, 0, 1).value
    assert lo.value <= exact <= up.value
    # the certified periodizer tail bound at n = 2s
    assert ea.tay_per_error_bound(4, 5, 2) <= (3 / TWO_PI) ** 2 * 2 / 6 ** 2
    assert ea.minimal_error_bounds(4, 5, 2, False)[1].value == pytest.approx(0.01267, abs=1e-5)
    assert ea.minimal_error_bounds(0, 3, 2, True)[1].value == ea.initial_error(3, 2, True).value
    assert ea.minimal_error_bounds(3, 0, 2, False)[1].value == ea.taylor_error_bound(2)


@given(st.integers(1, 200), st.integers(-20, 20), st.integers(1, 4), st.booleans())
def test_sandwich_consistency(n, k, s, periodic):
    lo, up = ea.minimal_error_bounds(n, k, s, periodic)
    assert lo.value <= up.value


def test_asymptotic_constants():
    assert ea.asymptotic_qmc_constant(1) == pytest.approx(1 / (2 * math.sqrt(3)), rel=1e-14)
    assert ea.asymptotic_qmc_constant(2) == pytest.approx(math.sqrt(2 * math.pi ** 4 / 90) / (4 * math.pi ** 2))
    for s in (1, 2, 3):
        v = 1000 ** s * ea.qmc_worst_case_error(1000, 1, s).value
        assert v == pytest.approx(ea.asymptotic_qmc_constant(s), rel=0.01)


def test_per_bounds():
    assert ea.per_error_bound(2, 3, 2) == pytest.approx((TWO_PI * 3) ** -1)
    with pytest.raises(InvalidBudgetError):
        ea.per_error_bound(3, 3, 2)
    with pytest.raises(InvalidBudgetError):
        ea.tay_per_error_bound(4, 0, 3)
    assert ea.tay_per_error_bound(2, 0, 3) == pytest.approx(0.25)


def test_complexity_examples():
    c = ea.complexity(0.1, 2, 1, "abs", True)
    assert (c.lower, c.upper, c.achieved, c.zero_case) == (0, 0, 0, True)
    assert ea.complexity(0.1, 1, 1, "nor", True).upper == 42
    for k in (100, 10 ** 3, 10 ** 4, 10 ** 5):
        assert ea.complexity(0.01, k, 2, "nor", False).achieved <= 4
    with pytest.raises(PreconditionError):
        ea.complexity(1.5, 1, 1)


def test_complexity_infty_examples():
    assert ea.complexity_infty(1e-6, 0).achieved == 8
    assert ea.complexity_infty(1e-6, 100).achieved == 5
    assert ea.complexity_infty(1e-6, 0).lower is None
    with pytest.raises(PreconditionError):
        ea.complexity_infty(0.1, 0)


@pytest.mark.parametrize("eps", [1e-2, 1e-4, 1e-6, 1e-9, 1e-12])
@pytest.mark.parametrize("k", [0, 1, 10, 1000])
def test_complexity_infty_upper_dominates(eps, k):
    c = ea.complexity_infty(eps, k)
    assert c.upper >= c.achieved


@given(st.sampled_from([1, 2, 3]), st.integers(0, 6), st.sampled_from(["abs", "nor"]),
       st.booleans(), st.floats(1e-4, 0.9), st.floats(1e-4, 0.9))
def test_complexity_monotone(s, k, crit, periodic, e1, e2):
    lo_eps, hi_eps = sorted((e1, e2))
    a = ea.complexity(lo_eps, k, s, crit, periodic)
    b = ea.complexity(hi_eps, k, s, crit, periodic)
    assert a.achieved >= b.achieved
    assert a.achieved >= a.lower and b.achieved >= b.lower


def test_zeta_reexports():
    assert ea.zeta(3.5) == pytest.approx(scipy.special.zeta(3.5), rel=1e-14)


def test_nonperiodic_nor_needs_large_k():
    # at k = 10 the periodizer bound (2 pi k)^-2 is still above eps * e0
    assert ea.complexity(0.01, 10, 2, "nor", False).achieved > 4
