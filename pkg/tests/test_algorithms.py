import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oscquad import errors as ea
from oscquad.algorithms import (EvaluationLog, algo_per, algo_tay_per, algorithm_weights,
                                auto_dispatch, damped_qmc, extremal_qmc_function,
                                integral_of_periodizer, integral_of_taylor, modified_qmc,
                                periodizer, qmc, taylor)
from oscquad.exceptions import InvalidBudgetError, ZeroFrequencyError
from oscquad.functions import (make_bernoulli, make_constant, make_exponential, make_polynomial,
                               make_sum, make_trig, reference_integral)
from oscquad.sobolev import norm_hs, periodic_norm_from_coeffs
from oscquad.verify import test_corpus as corpus_for

TWO_PI = 2 * math.pi
X2 = make_polynomial([0, 0, 1])


def test_qmc_examples():
    assert qmc(make_exponential(3), 2, 1).value == pytest.approx(1)
    assert abs(qmc(make_exponential(3), 5, 1).value) < 1e-15
    assert qmc(make_constant(1.0), 7, 0).value == pytest.approx(1)


@pytest.mark.parametrize("n", range(1, 11))
def test_aliasing_identity(n):
    for h in range(-20, 21):
        for k in range(-3, 4):
            v = qmc(make_exponential(h), n, k).value
            expected = 1.0 if (h - k) % n == 0 else 0.0
            assert abs(v - expected) < 1e-12


def test_damped_and_modified_examples():
    assert damped_qmc(X2, 4, 1, 0.0).value == 0
    assert damped_qmc(make_exponential(1), 1, 1, 0.0233818).value == pytest.approx(0.0233818)
    assert modified_qmc(X2, 3, 2).value == 0
    assert modified_qmc(make_exponential(1), 4, 2).value == qmc(make_exponential(1), 4, 2).value
    assert modified_qmc(X2, 0, 0).value == 0
    assert modified_qmc(X2, 0, 0).evaluations == 0


def test_periodizer_examples():
    p1 = periodizer(X2, 1)
    np.testing.assert_allclose(p1.jumps, [1.0])
    p2 = periodizer(X2, 2)
    np.testing.assert_allclose(p2.jumps, [1.0, 2.0])
    x = np.linspace(0, 1, 11)
    np.testing.assert_allclose(X2(x) - p2.eval(x), np.full(11, 1 / 3), atol=1e-15)
    assert np.all(periodizer(make_trig({1: 1.0, -2: 0.5}), 3).jumps == 0)
    val = integral_of_periodizer(p2, 1)
    assert val == pytest.approx(1 / (2 * math.pi ** 2) + 1j / TWO_PI, abs=1e-15)
    assert integral_of_periodizer(p2, 0) == 0
    assert integral_of_periodizer(periodizer(make_constant(2.0), 2), 5) == 0


def test_taylor_examples():
    T = taylor(X2, 1)
    assert integral_of_taylor(T, 0) == pytest.approx(0.25)
    assert abs(1 / 3 - 0.25) <= norm_hs(X2, 1)
    assert norm_hs(X2, 1) == pytest.approx(math.sqrt(13) / 3, rel=1e-12)
    assert abs(integral_of_taylor(taylor(make_constant(1.0), 1), 3)) < 1e-16
    assert abs(integral_of_taylor(taylor(make_bernoulli(1), 2), 0)) < 1e-16


def test_algo_per_examples():
    f = make_sum([make_exponential(1), make_bernoulli(1)])
    run = algo_per(f, 2, 1, 2)
    assert run.value == pytest.approx(1j / TWO_PI, abs=1e-15)
    with pytest.raises(ZeroFrequencyError):
        algo_per(X2, 2, 0, 2)
    with pytest.raises(InvalidBudgetError):
        algo_per(X2, 3, 1, 3)


@pytest.mark.parametrize("s,k", [(1, 1), (2, 2), (3, 1), (2, 3)])
def test_algo_per_on_periodic_is_modified_qmc(s, k):
    f = make_trig({k: 1.0, k + 3: 0.5, -1: 0.25j})
    for ell in range(2 * abs(k) - 1, 2 * abs(k) + 5):
        n = 2 * s + ell
        assert algo_per(f, n, k, s).value == pytest.approx(modified_qmc(f, ell + 1, k).value, abs=1e-13)


@given(st.lists(st.floats(-3, 3), min_size=1, max_size=7), st.integers(1, 4),
       st.integers(-6, 6).filter(bool), st.integers(0, 9))
def test_budget_honesty(coeffs, s, k, ell):
    f = make_polynomial(coeffs)
    n = 2 * s + ell
    run = algo_per(f, n, k, s)
    assert run.evaluations <= n
    assert run.log.max_order <= s - 1
    if ell == 0:
        assert run.evaluations == 2 * s
    for n in range(2, 2 * s + 1, 2):
        run = algo_per(f, n, k, s)
        assert run.evaluations == n and run.log.max_order == n // 2 - 1


def test_budget_audit_example(rng):
    f = make_polynomial(rng.normal(size=6))
    run = algo_per(f, 2 * 2 + 5, 3, 2)
    assert run.evaluations <= 9


def test_tay_per_examples():
    assert algo_tay_per(X2, 1, 0, 3).value == pytest.approx(0.25)
    assert algo_tay_per(X2, 6, 1, 3).value == pytest.approx(algo_per(X2, 6, 1, 3).value)
    with pytest.raises(InvalidBudgetError):
        algo_tay_per(X2, 4, 0, 3)
    # k = 0 with n >= 2s uses the periodizer plus modified QMC
    run = algo_tay_per(X2, 8, 0, 2)
    assert run.value == pytest.approx(1 / 3, abs=run.bound * norm_hs(X2, 2))


@pytest.mark.parametrize("s", [1, 2, 3])
def test_certified_bounds_hold(s):
    for f in corpus_for(3, n_poly=5, n_mixed=2):
        g = (1.0 / norm_hs(f, s)) * f
        for k in (0, 1, -3):
            ref = reference_integral(g, k).value
            for n in range(1, 2 * s + 8):
                if n <= s or n >= 2 * s:
                    run = algo_tay_per(g, n, k, s)
                    assert abs(ref - run.value) <= ea.tay_per_error_bound(n, k, s) + 1e-8
                if k and ((n % 2 == 0 and n <= 2 * s) or n >= 2 * s):
                    run = algo_per(g, n, k, s)
                    assert abs(ref - run.value) <= ea.per_error_bound(n, k, s) + 1e-8


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_periodization_contracts_norm(j):
    for f in corpus_for(0):
        p = periodizer(f, j).as_oracle()
        assert norm_hs(f - p, j) <= norm_hs(f, j) + 1e-8


def test_infinite_smoothness_branches():
    f = make_polynomial([1.0, 0.0, -1.0, 0.5])
    run = algo_tay_per(f, 4, 200, math.inf)
    assert run.params["branch"] == "periodizer"
    run = algo_tay_per(f, 4, 0, math.inf)
    assert run.params["branch"] == "taylor"
    assert abs(run.value - reference_integral(f, 0).value) <= run.bound * 2


def test_extremal_function():
    f = extremal_qmc_function(3, 1, 2, J=10 ** 4)
    assert periodic_norm_from_coeffs(f, 2) == pytest.approx(1.0, abs=1e-12)
    achieved = abs(f.coefficient(1) - qmc(f, 3, 1).value)
    assert achieved == pytest.approx(ea.qmc_worst_case_error(3, 1, 2).value, abs=1e-8)


def test_auto_dispatch():
    f = make_polynomial([1.0, 2.0, 3.0])
    run = auto_dispatch(f, 4, 50, 2)
    per_b, tay_b = ea.per_error_bound(4, 50, 2), ea.taylor_error_bound(2)
    assert run.algorithm == ("auto:per" if per_b < tay_b else "auto:tayper")
    assert auto_dispatch(f, 3, 0, 4).params["branch"] == "taylor"
    g = make_trig({1: 1.0, 4: 0.5})
    assert auto_dispatch(g, 6, 1, 2).algorithm == "auto:star"


@pytest.mark.parametrize("s", range(1, 11))
@pytest.mark.parametrize("k", [1, 2, 5])
def test_stability_weights(s, k):
    w = algorithm_weights(algo_per, make_constant(1.0), 2 * s + 2 * k + 3, k, s)
    assert sum(abs(c) for *_, c in w) < 4


def test_weights_reproduce_rule(rng):
    f = make_polynomial(rng.normal(size=5))
    w = algorithm_weights(algo_per, f, 9, 2, 3)
    value = sum(c * f.eval(o, x) for o, x, c in w)
    assert value == pytest.approx(algo_per(f, 9, 2, 3).value, abs=1e-13)


def test_derivative_free_variant():
    f = make_polynomial([0.3, -1.0, 2.0, 0.5])
    run = algo_per(f, 10, 2, 2, derivative_free=True)
    assert run.bound is None and run.params["certified"] is False
    assert run.log.max_order == 0
    exact = algo_per(f, 10, 2, 2).value
    gaps = [abs(algo_per(f, 10, 2, 2, derivative_free=True, fd_step=h).value - exact)
            for h in (0.02, 0.01, 0.005)]
    # two-point one-sided stencil for f': first-order convergence
    assert 1.8 <= gaps[0] / gaps[1] <= 2.2 and 1.8 <= gaps[1] / gaps[2] <= 2.2


def test_evaluation_log_memoizes():
    log = EvaluationLog(X2)
    log.value(0, 1.0)
    log.value(0, 1.0)
    log.values(0, np.array([0.5, 1.0]))
    assert len(log) == 2
