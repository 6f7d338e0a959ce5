"""Quadrature rules for ``I_k(f) = int_0^1 f(x) exp(-2 pi i k x) dx``.

Every rule reads its integrand only through an :class:`EvaluationLog`, which
memoises oracle calls and records each distinct ``(order, x)`` used.  The log
length is therefore the information cost of the run.

Rules:

* ``qmc``: equal weights on the nodes ``j/n``;
* ``damped_qmc``: ``a`` times the QMC value;
* ``modified_qmc``: zero for ``n < max(1, 2|k|)``, QMC otherwise;
* ``algo_per``: subtract the Bernoulli periodizer built from endpoint jumps,
  integrate it exactly, and apply ``modified_qmc`` to the periodic rest;
* ``algo_tay_per``: Taylor expansion at ``1/2`` for small budgets,
  ``algo_per`` for large ones.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .bernoulli import (bernoulli_eval, osc_integral_centered_monomial, TWO_PI,
                        _inv_two_pi_ik_power)
from .errors import (_qmc_weight, initial_error, per_error_bound,
                     qmc_worst_case_error, tay_per_error_bound, taylor_error_bound)
from .exceptions import InvalidBudgetError, PreconditionError, ZeroFrequencyError
from .functions import FunctionOracle, TrigPolynomial

__all__ = [
    "EvaluationLog",
    "AlgorithmRun",
    "PeriodizerPolynomial",
    "TaylorPolynomial",
    "qmc",
    "damped_qmc",
    "modified_qmc",
    "periodizer",
    "integral_of_periodizer",
    "taylor",
    "integral_of_taylor",
    "algo_per",
    "algo_tay_per",
    "extremal_qmc_function",
    "auto_dispatch",
    "algorithm_weights",
]


class EvaluationLog:
    """Memoising view of an oracle that records every distinct query."""

    def __init__(self, f):
        self.f = f
        self.entries = []
        self._cache = {}

    def __len__(self):
        return len(self.entries)

    @property
    def max_order(self):
        return max((e[0] for e in self.entries), default=-1)

    @property
    def nodes(self):
        return [e[1] for e in self.entries]

    def value(self, order, x):
        key = (int(order), float(x))
        if key not in self._cache:
            v = complex(self.f.eval(key[0], key[1]))
            self._cache[key] = v
            self.entries.append((key[0], key[1], v))
        return self._cache[key]

    def values(self, order, xs):
        xs = np.asarray(xs, dtype=float)
        missing = [x for x in xs.tolist() if (int(order), x) not in self._cache]
        if missing:
            fresh = np.atleast_1d(self.f.eval(order, np.array(missing)))
            for x, v in zip(missing, fresh):
                if (int(order), x) not in self._cache:
                    self._cache[(int(order), x)] = complex(v)
                    self.entries.append((int(order), x, complex(v)))
        return np.array([self._cache[(int(order), x)] for x in xs.tolist()])


@dataclass
class AlgorithmRun:
    value: complex
    log: EvaluationLog
    algorithm: str
    params: dict = field(default_factory=dict)
    bound: float = None

    @property
    def evaluations(self):
        return len(self.log)


def _session(f, log):
    if log is None:
        return EvaluationLog(f)
    return log


def _qmc_value(values, n, k):
    j = np.arange(1, n + 1)
    phase = np.exp(-2j * np.pi * np.mod(k * j, n) / n)
    return complex(np.mean(values * phase))


def qmc(f, n, k, log=None):
    """``(1/n) sum_{j=1}^n f(j/n) exp(-2 pi i k j/n)``."""
    n, k = int(n), int(k)
    if n < 1:
        raise InvalidBudgetError("QMC needs n >= 1")
    log = _session(f, log)
    nodes = np.arange(1, n + 1) / n
    value = _qmc_value(log.values(0, nodes), n, k)
    return AlgorithmRun(value, log, "qmc", {"n": n, "k": k})


def damped_qmc(f, n, k, a, log=None):
    run = qmc(f, n, k, log)
    run.value = a * run.value
    run.algorithm = "damped"
    run.params["a"] = a
    return run


def modified_qmc(f, n, k, log=None):
    """Zero for ``n == 0`` or ``n < 2|k|``, otherwise QMC."""
    n, k = int(n), int(k)
    if n < 0:
        raise InvalidBudgetError("budget must be >= 0")
    if n == 0 or n < 2 * abs(k):
        return AlgorithmRun(0j, _session(f, log), "star", {"n": n, "k": k, "branch": "zero"})
    run = qmc(f, n, k, log)
    run.algorithm = "star"
    run.params["branch"] = "qmc"
    return run


# ---------------------------------------------------------------------------
# periodization

@dataclass
class PeriodizerPolynomial:
    """``p(x) = sum_{m<j} d_m B*_{m+1}(x)`` with ``d_m = f^(m)(1) - f^(m)(0)``."""

    j: int
    jumps: np.ndarray

    def eval(self, x, order=0):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        for m, d in enumerate(self.jumps):
            deg = m + 1 - order
            if deg >= 0 and d != 0:
                out = out + d * bernoulli_eval(deg, x)
        return out

    def as_oracle(self):
        return FunctionOracle(lambda order, x: self.eval(x, order),
                              label=f"periodizer(j={self.j})")


def _jumps(log, j):
    return np.array([log.value(m, 1.0) - log.value(m, 0.0) for m in range(j)],
                    dtype=complex)


def periodizer(f, j, log=None):
    """Periodizer from the ``2j`` endpoint values ``f^(m)(0), f^(m)(1)``, ``m < j``."""
    j = int(j)
    if j < 1:
        raise PreconditionError("periodizer order must be >= 1")
    log = _session(f, log)
    return PeriodizerPolynomial(j, _jumps(log, j))


def integral_of_periodizer(p, k):
    """``I_k(p) = -sum_l d_l / (2 pi i k)^(l+1)``; zero for ``k = 0``."""
    k = int(k)
    if k == 0:
        return 0j
    return complex(-sum(d * _inv_two_pi_ik_power(k, ell + 1)
                        for ell, d in enumerate(p.jumps)))


# ---------------------------------------------------------------------------
# Taylor expansion at 1/2

@dataclass
class TaylorPolynomial:
    """``T(x) = sum_{l<n} f^(l)(1/2) (x - 1/2)^l / l!``."""

    n: int
    derivatives: np.ndarray

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        for ell, c in enumerate(self.derivatives):
            out = out + c * (x - 0.5) ** ell / math.factorial(ell)
        return out


def taylor(f, n, log=None):
    n = int(n)
    if n < 1:
        raise InvalidBudgetError("Taylor budget must be >= 1")
    log = _session(f, log)
    derivs = np.array([log.value(ell, 0.5) for ell in range(n)], dtype=complex)
    return TaylorPolynomial(n, derivs)


def integral_of_taylor(T, k):
    """Exact ``I_k(T)`` from the centred-monomial integrals."""
    return complex(sum(c * osc_integral_centered_monomial(k, ell)
                       for ell, c in enumerate(T.derivatives)))


# ---------------------------------------------------------------------------
# derivative-free endpoint data

def _one_sided_weights(m_max, h):
    # rows: weights w[m, i] with f^(m)(0) ~ sum_i w[m, i] f(i h), i = 0..m_max
    nodes = np.arange(m_max + 1) * h
    V = np.vander(nodes, m_max + 1, increasing=True)         # V[i, p] = (i h)^p
    inv = np.linalg.inv(V)                                   # coefficients of interpolant
    fact = np.array([math.factorial(m) for m in range(m_max + 1)], dtype=float)
    return fact[:, None] * inv


def _fd_jumps(log, j, step):
    w = _one_sided_weights(j - 1, step)
    left = log.values(0, np.arange(j) * step)
    right = log.values(0, 1.0 - np.arange(j) * step)
    sign = np.array([(-1.0) ** m for m in range(j)])
    d_left = w @ left
    d_right = sign * (w @ right)
    return d_right - d_left


def _per(f, n, k, s, log, derivative_free=False, fd_step=None):
    s = int(s)
    log = _session(f, log)
    if n % 2 == 0 and 2 <= n < 2 * s:
        j = n // 2
        if derivative_free:
            p = PeriodizerPolynomial(j, _fd_jumps(log, j, fd_step or 0.05 / s))
        else:
            p = periodizer(f, j, log)
        return integral_of_periodizer(p, k), {"branch": "periodizer", "j": j}
    if n >= 2 * s:
        ell = n - 2 * s
        if derivative_free:
            p = PeriodizerPolynomial(s, _fd_jumps(log, s, fd_step or 0.05 / s))
        else:
            p = periodizer(f, s, log)
        value = integral_of_periodizer(p, k)
        m = ell + 1
        if m >= 2 * abs(k):
            nodes = np.arange(1, m + 1) / m
            g = log.values(0, nodes) - p.eval(nodes)
            value += _qmc_value(g, m, k)
            branch = "periodizer+qmc"
        else:
            branch = "periodizer+zero"
        return value, {"branch": branch, "j": s, "ell": ell}
    raise InvalidBudgetError(
        f"periodizing rule undefined for n={n}, s={s} (needs even n in [2, 2s) or n >= 2s)")


def algo_per(f, n, k, s, log=None, derivative_free=False, fd_step=None):
    """Periodize, integrate the periodizer exactly and apply ``modified_qmc`` to the rest.

    With ``derivative_free=True`` the endpoint derivatives are replaced by
    one-sided interpolation stencils of function values.  That variant is not
    certified and reports ``bound=None``.
    """
    n, k = int(n), int(k)
    if k == 0:
        raise ZeroFrequencyError("periodizing rule is defined for k != 0 only")
    if s == math.inf:
        if n % 2 or n < 2:
            raise InvalidBudgetError("for s = inf the periodizing rule needs even n >= 2")
        s_eff = n // 2 + 1
        bound = (TWO_PI * abs(k)) ** (-n / 2)
    else:
        s_eff = int(s)
        bound = None if derivative_free else _per_bound_or_none(n, k, s_eff)
    log = _session(f, log)
    value, info = _per(f, n, k, s_eff, log, derivative_free, fd_step)
    params = {"n": n, "k": k, "s": s, **info}
    if derivative_free:
        params["certified"] = False
        bound = None
    return AlgorithmRun(value, log, "per", params, bound)


def _per_bound_or_none(n, k, s):
    try:
        return per_error_bound(n, k, s)
    except InvalidBudgetError:
        return None


def algo_tay_per(f, n, k, s, branch="auto", log=None):
    """Taylor rule for ``n <= s``, periodizing rule for ``n >= 2s``.

    For finite ``s`` the budgets ``s < n < 2s`` are rejected.  For
    ``s = inf`` the Taylor branch works for every ``n`` and the periodizer
    branch for even ``n`` with ``k != 0``; ``branch="auto"`` takes the one
    with the smaller bound.
    """
    n, k = int(n), int(k)
    if n < 1:
        raise InvalidBudgetError("budget must be >= 1")
    log = _session(f, log)
    if s == math.inf:
        if branch == "auto":
            branch = "taylor"
            if k != 0 and n % 2 == 0 and (TWO_PI * abs(k)) ** (-n / 2) < taylor_error_bound(n):
                branch = "per"
        if branch == "per":
            run = algo_per(f, n, k, s, log)
            run.algorithm = "tayper"
            run.params["branch"] = "periodizer"
            return run
        if branch != "taylor":
            raise PreconditionError(f"unknown branch {branch!r}")
        T = taylor(f, n, log)
        return AlgorithmRun(integral_of_taylor(T, k), log, "tayper",
                            {"n": n, "k": k, "s": s, "branch": "taylor"},
                            taylor_error_bound(n))
    s = int(s)
    if n <= s:
        T = taylor(f, n, log)
        return AlgorithmRun(integral_of_taylor(T, k), log, "tayper",
                            {"n": n, "k": k, "s": s, "branch": "taylor"},
                            taylor_error_bound(n))
    if n < 2 * s:
        raise InvalidBudgetError(f"undefined for n in [{s + 1}, {2 * s - 1}]")
    value, info = _per(f, n, k, s, log)
    return AlgorithmRun(value, log, "tayper", {"n": n, "k": k, "s": s, **info},
                        tay_per_error_bound(n, k, s))


def extremal_qmc_function(n, k, s, J=10 ** 4):
    """Unit-norm trigonometric polynomial on which QMC errs the most.

    Coefficients ``c / a_h`` on the aliased frequencies ``h = k + j n``,
    ``0 < |j| <= J``, with ``c`` fixing the periodic ``H^s`` norm to one.
    """
    if J < 1:
        raise PreconditionError("J must be >= 1")
    j = np.concatenate([np.arange(-J, 0), np.arange(1, J + 1)])
    h = k + j * n
    inv_a = _qmc_weight(h, s)
    c = 1.0 / math.sqrt(float(np.sum(inv_a)))
    return TrigPolynomial({int(hh): c * w for hh, w in zip(h, inv_a)})


def auto_dispatch(f, n, k, s, log=None):
    """Run the applicable rule with the smallest certified bound.

    Candidates are ``modified_qmc`` (periodic input only), ``algo_per`` (with
    ``n - 1`` for odd ``n < 2s``) and ``algo_tay_per``.
    """
    n, k = int(n), int(k)
    cands = []
    if f.periodic and s != math.inf:
        if n == 0 or n < 2 * abs(k):
            b = initial_error(k, s, True).value
        else:
            b = qmc_worst_case_error(n, k, s).value
        cands.append((b, "star", n))
    if k != 0:
        m = n
        if s != math.inf and m < 2 * s and m % 2:
            m -= 1
        if s == math.inf and m % 2:
            m -= 1
        if m >= 2:
            b = (TWO_PI * abs(k)) ** (-m / 2) if s == math.inf else _per_bound_or_none(m, k, s)
            if b is not None:
                cands.append((b, "per", m))
    if n >= 1:
        if s == math.inf or n <= s or n >= 2 * s:
            cands.append((tay_per_error_bound(n, k, s), "tayper", n))
        elif s != math.inf:
            cands.append((taylor_error_bound(s), "tayper", int(s)))
    if not cands:
        return AlgorithmRun(0j, _session(f, log), "auto:zero", {"n": n, "k": k, "s": s},
                            initial_error(k, s, f.periodic).value)
    bound, name, m = min(cands, key=lambda c: c[0])
    if name == "star":
        run = modified_qmc(f, m, k, log)
    elif name == "per":
        run = algo_per(f, m, k, s, log)
    else:
        run = algo_tay_per(f, m, k, s, log=log)
    run.algorithm = f"auto:{name}"
    run.params["n_requested"] = n
    run.bound = bound
    return run


class _Probe(FunctionOracle):
    # returns 1 at one (order, x) pair and 0 elsewhere
    def __init__(self, order, x):
        super().__init__(label=f"probe({order},{x})")
        self._order, self._x = order, x

    def _eval(self, order, x):
        if order != self._order:
            return np.zeros(x.shape)
        return (x == self._x).astype(float)


def algorithm_weights(run_fn, f, *args, **kwargs):
    """Weights of a linear rule, recovered by replaying it on unit data.

    ``run_fn(f, *args, **kwargs)`` must return an :class:`AlgorithmRun`.
    Returns ``[(order, x, weight)]`` in evaluation order.
    """
    base = run_fn(f, *args, **kwargs)
    out = []
    for order, x, _ in base.log.entries:
        w = run_fn(_Probe(order, x), *args, **kwargs).value
        out.append((order, x, complex(w)))
    return out
